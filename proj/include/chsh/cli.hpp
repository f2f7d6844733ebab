#pragma once

// Command-line front end and the state/CSV file formats it reads and writes.
//
// State files are JSON:
//   {"kind": "pure", "amplitudes": [[re, im], x4]}             basis |00>,|01>,|10>,|11>
//   {"kind": "density", "matrix": [[[re, im], x4], x4]}        row-major

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chsh/bell.hpp"
#include "chsh/states.hpp"

namespace chsh::cli {

/// Unreadable or unparseable input (exit code 1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitUsage = 64;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one command. `args` excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

enum class StateKind { Pure, Density };

struct StateFile {
  StateKind kind = StateKind::Pure;
  std::optional<PureState> pure;
  std::optional<DensityMatrix> density;

  DensityMatrix as_density() const;
};

/// Throws InputError on malformed JSON or schema, ValidationError when the
/// numbers do not describe a valid state.
StateFile parse_state_json(const std::string& text);
StateFile read_state_file(const std::filesystem::path& path);

std::string to_json(const PureState& psi);
std::string to_json(const DensityMatrix& rho);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct SweepRow {
  double theta = 0.0;
  double bound = 0.0;
  double entropy = 0.0;
};

/// steps + 1 equally spaced angles over [0, pi].
std::vector<SweepRow> sweep_rows(int steps);
/// Header `theta,bound,entropy`, LF line endings.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

/// Fixed notation with nine digits after the decimal point; never "-0".
std::string format_number(double x);

}  // namespace chsh::cli
