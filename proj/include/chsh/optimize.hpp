#pragma once

// Numerical oracle for the CHSH maximum: multistart Nelder-Mead over the
// eight spherical angles of (a, a', b, b').

#include <array>
#include <cstdint>
#include <functional>

#include "chsh/bell.hpp"
#include "chsh/states.hpp"

namespace chsh {

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 2000;  // per restart
  double ftol = 1e-12;   // simplex function-value spread
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for non-positive fields.
  void validate() const;
};

struct OptResult {
  double best_value = 0.0;
  MeasurementScheme scheme;
  int restarts_used = 0;
  bool converged = false;  // true if at least one restart met ftol
};

/// (polar, azimuth) for a, a', b, b' in that order.
using Angles = std::array<double, 8>;

struct LocalSearchResult {
  double value = 0.0;
  Angles angles{};
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(const Angles&)>;

/// Maximizes `objective` by simplex descent on its negation. Stops when the
/// spread of function values across the simplex falls below cfg.ftol or
/// after cfg.max_iters iterations.
LocalSearchResult local_search(const Objective& objective, const Angles& start,
                               const OptimizerConfig& cfg);

MeasurementScheme scheme_from_angles(const Angles& angles);

/// Best |Tr(rho B)| over restarts. Restarts 0..3 start from fixed x-z plane
/// schemes, the rest from rng_substream(cfg.seed, k). Ties keep the lowest
/// restart index.
OptResult maximize_chsh(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

}  // namespace chsh
