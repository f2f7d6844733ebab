#include "chsh/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace chsh {

namespace {

constexpr int kDim = 8;
constexpr double kInitialStep = 0.5;
constexpr double kPolishStep = 0.05;
constexpr int kPolishRounds = 3;

struct Vertex {
  Angles x;
  double f;  // negated objective
};

// Adaptive coefficients (Gao & Han) for an n-dimensional simplex.
constexpr double kReflect = 1.0;
constexpr double kExpand = 1.0 + 2.0 / kDim;
constexpr double kContract = 0.75 - 1.0 / (2.0 * kDim);
constexpr double kShrink = 1.0 - 1.0 / kDim;

Angles affine(const Angles& base, const Angles& toward, double t) {
  Angles out;
  for (int i = 0; i < kDim; ++i) out[i] = base[i] + t * (toward[i] - base[i]);
  return out;
}

struct SimplexRun {
  Vertex best;
  int iterations = 0;
  bool converged = false;
};

SimplexRun run_simplex(const Objective& objective, const Angles& start, double step, int budget,
                       double ftol) {
  auto eval = [&](const Angles& x) { return Vertex{x, -objective(x)}; };

  std::array<Vertex, kDim + 1> simplex;
  simplex[0] = eval(start);
  for (int i = 0; i < kDim; ++i) {
    Angles x = start;
    x[i] += step;
    simplex[i + 1] = eval(x);
  }
  auto by_value = [](const Vertex& l, const Vertex& r) { return l.f < r.f; };

  SimplexRun run;
  for (;;) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().f - simplex.front().f < ftol) {
      run.converged = true;
      break;
    }
    if (run.iterations == budget) break;
    ++run.iterations;

    Angles centroid{};
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i) centroid[i] += simplex[k].x[i] / kDim;

    Vertex& worst = simplex.back();
    const Vertex reflected = eval(affine(centroid, worst.x, -kReflect));
    if (reflected.f < simplex.front().f) {
      const Vertex expanded = eval(affine(centroid, worst.x, -kReflect * kExpand));
      worst = expanded.f < reflected.f ? expanded : reflected;
      continue;
    }
    if (reflected.f < simplex[kDim - 1].f) {
      worst = reflected;
      continue;
    }
    const bool outside = reflected.f < worst.f;
    const Vertex contracted = outside ? eval(affine(centroid, reflected.x, kContract))
                                      : eval(affine(centroid, worst.x, kContract));
    if (contracted.f < (outside ? reflected.f : worst.f)) {
      worst = contracted;
      continue;
    }
    for (int k = 1; k <= kDim; ++k) simplex[k] = eval(affine(simplex[0].x, simplex[k].x, kShrink));
  }
  run.best = simplex.front();
  return run;
}

// x-z plane configurations: standard CHSH axes, the singlet optimum, and two
// aligned product settings.
Angles fixed_start(int k) {
  constexpr double pi = std::numbers::pi;
  switch (k) {
    case 0: return {0.0, 0.0, pi / 2, 0.0, pi / 4, 0.0, pi / 4, pi};
    case 1: return {0.0, 0.0, pi / 2, 0.0, 3 * pi / 4, pi, 3 * pi / 4, 0.0};
    case 2: return {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    default: return {0.0, 0.0, pi / 2, 0.0, pi / 2, 0.0, 0.0, 0.0};
  }
}

Angles random_start(std::uint64_t seed, int k) {
  SeededRng rng = rng_substream(seed, static_cast<std::uint64_t>(k));
  Angles x;
  for (int i = 0; i < kDim; i += 2) {
    x[i] = std::numbers::pi * rng.uniform();
    x[i + 1] = 2.0 * std::numbers::pi * rng.uniform();
  }
  return x;
}

BlochVector bloch_from_angles(double polar, double azimuth) {
  return BlochVector::normalized(
      {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)});
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(ftol > 0.0)) throw std::invalid_argument("ftol must be positive");
}

MeasurementScheme scheme_from_angles(const Angles& x) {
  return {bloch_from_angles(x[0], x[1]), bloch_from_angles(x[2], x[3]),
          bloch_from_angles(x[4], x[5]), bloch_from_angles(x[6], x[7])};
}

LocalSearchResult local_search(const Objective& objective, const Angles& start,
                               const OptimizerConfig& cfg) {
  cfg.validate();
  SimplexRun run = run_simplex(objective, start, kInitialStep, cfg.max_iters, cfg.ftol);
  int used = run.iterations;

  // A collapsed simplex can stall away from the optimum; rebuild it around
  // the incumbent until a round stops improving.
  for (int round = 0; round < kPolishRounds && run.converged && used < cfg.max_iters; ++round) {
    const SimplexRun polish =
        run_simplex(objective, run.best.x, kPolishStep, cfg.max_iters - used, cfg.ftol);
    used += polish.iterations;
    const bool improved = polish.best.f < run.best.f - cfg.ftol;
    if (polish.best.f < run.best.f) run.best = polish.best;
    run.converged = polish.converged;
    if (!improved) break;
  }
  return {-run.best.f, run.best.x, used, run.converged};
}

OptResult maximize_chsh(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  cfg.validate();
  const Objective objective = [&rho](const Angles& x) {
    return std::abs(chsh_value(scheme_from_angles(x), rho));
  };

  OptResult best{-1.0, scheme_from_angles(fixed_start(0)), 0, false};
  Angles best_angles{};
  for (int k = 0; k < cfg.restarts; ++k) {
    const Angles start = k < 4 ? fixed_start(k) : random_start(cfg.seed, k);
    const LocalSearchResult local = local_search(objective, start, cfg);
    best.converged = best.converged || local.converged;
    if (local.value > best.best_value) {
      best.best_value = local.value;
      best_angles = local.angles;
    }
  }
  best.scheme = scheme_from_angles(best_angles);
  best.best_value = std::abs(chsh_value(best.scheme, rho));
  best.restarts_used = cfg.restarts;
  return best;
}

}  // namespace chsh
