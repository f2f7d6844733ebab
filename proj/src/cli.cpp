#include "chsh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chsh/optimize.hpp"

namespace chsh::cli {

namespace {

using nlohmann::json;

Complex parse_pair(const json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw InputError("expected a [re, im] number pair");
  }
  const double re = pair[0].get<double>();
  const double im = pair[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw InputError("non-finite number");
  return {re, im};
}

json pair_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::string format_complex(const Complex& z) {
  std::string re = format_number(z.real());
  std::string im = format_number(std::abs(z.imag()));
  const bool negative = z.imag() < 0.0 && im != format_number(0.0);
  return re + (negative ? "-" : "+") + im + "i";
}

std::string format_vec(const BlochVector& v) {
  return format_number(v.x()) + " " + format_number(v.y()) + " " + format_number(v.z());
}

void print_scheme(std::ostream& out, const MeasurementScheme& s) {
  out << "a " << format_vec(s.a) << "\n";
  out << "a_prime " << format_vec(s.a_prime) << "\n";
  out << "b " << format_vec(s.b) << "\n";
  out << "b_prime " << format_vec(s.b_prime) << "\n";
}

void print_unitary(std::ostream& out, const std::string& name, const LocalUnitary& u) {
  for (int r = 0; r < 2; ++r) {
    out << name << "[" << r << "] " << format_complex(u.matrix()(r, 0)) << " "
        << format_complex(u.matrix()(r, 1)) << "\n";
  }
  out << name << " angles alpha " << format_number(u.alpha()) << " beta "
      << format_number(u.beta()) << " gamma " << format_number(u.gamma()) << " delta "
      << format_number(u.delta()) << "\n";
}

const PureState& require_pure(const StateFile& file) {
  if (file.kind != StateKind::Pure) throw ValidationError("command requires a pure state file");
  return *file.pure;
}

// Runs one named property check for `verify`.
struct PropertyReport {
  std::ostream& out;
  bool all_passed = true;

  void check(const std::string& name, double worst, double tol) {
    const bool ok = worst <= tol;
    all_passed = all_passed && ok;
    char line[160];
    std::snprintf(line, sizeof line, "%s %s worst %.3e tol %.1e\n", ok ? "PASS" : "FAIL",
                  name.c_str(), worst, tol);
    out << line;
  }
};

int run_verify(std::ostream& out, std::uint64_t seed, int trials) {
  PropertyReport report{out};
  constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

  {
    SeededRng rng = rng_substream(seed, 0);
    double identity = 0.0;
    double spectrum = 0.0;
    for (int i = 0; i < trials; ++i) {
      const MeasurementScheme s = random_scheme(rng);
      const SmallMatrix op = bell_operator(s);
      identity = std::max(
          identity, (op * op - 4.0 * SmallMatrix::identity(4) + commutator_product(s)).max_abs());
      const BellSpectrum closed = bell_spectrum(s);
      const HermitianEigen eig = hermitian_eigen(op);
      for (int k = 0; k < 4; ++k) {
        spectrum = std::max(spectrum, std::abs(eig.values[3 - k] - closed.eigenvalues[k]));
      }
    }
    report.check("bell-square-identity", identity, 1e-12);
    report.check("bell-spectrum-closed-form", spectrum, 1e-10);
  }
  {
    SeededRng rng = rng_substream(seed, 1);
    double excess = 0.0;
    for (int i = 0; i < trials; ++i) {
      const MeasurementScheme s = random_scheme(rng);
      const DensityMatrix rho = random_density(rng, 1 + i % 4);
      const double value = std::abs(chsh_value(s, rho));
      const double bound = landau_bound(s, rho);
      excess = std::max({excess, value - bound, bound - kTsirelson});
    }
    report.check("tsirelson-landau", std::max(0.0, excess), 1e-9);
  }
  {
    SeededRng rng = rng_substream(seed, 2);
    double fidelity_gap = 0.0;
    double concurrence_gap = 0.0;
    double horodecki_gap = 0.0;
    double optimal_gap = 0.0;
    for (int i = 0; i < trials; ++i) {
      const PureState psi = random_pure(rng);
      const SchmidtForm form = schmidt_decompose(psi);
      const PureState mapped = apply_local(form.u_a.matrix(), form.u_b.matrix(), psi);
      fidelity_gap = std::max(fidelity_gap, 1.0 - fidelity(mapped, canonical_state(form.theta, 0.0)));
      concurrence_gap = std::max(concurrence_gap, std::abs(concurrence(psi) - std::sin(form.theta)));
      const double analytic = analytic_max_violation(form.theta);
      horodecki_gap =
          std::max(horodecki_gap, std::abs(horodecki_max_violation(psi.projector()) - analytic));
      optimal_gap = std::max(optimal_gap, std::abs(optimal_settings_for(psi).achieved_value - analytic));
    }
    report.check("schmidt-round-trip", fidelity_gap, 1e-12);
    report.check("concurrence-sin-theta", concurrence_gap, 1e-10);
    report.check("horodecki-pure-closed-form", horodecki_gap, 1e-10);
    report.check("optimal-settings", optimal_gap, 1e-9);
  }
  {
    const int oracle_trials = std::min(trials, 5);
    OptimizerConfig cfg;
    cfg.seed = seed;
    SeededRng rng = rng_substream(seed, 3);
    double pure_gap = 0.0;
    double mixed_gap = 0.0;
    for (int i = 0; i < oracle_trials; ++i) {
      const PureState psi = random_pure(rng);
      pure_gap = std::max(pure_gap, std::abs(maximize_chsh(psi.projector(), cfg).best_value -
                                             max_violation_pure(psi)));
      const DensityMatrix rho = random_density(rng, 1 + i % 4);
      mixed_gap = std::max(mixed_gap, std::abs(maximize_chsh(rho, cfg).best_value -
                                               horodecki_max_violation(rho)));
    }
    report.check("oracle-agreement-pure", pure_gap, 1e-4);
    report.check("oracle-agreement-mixed", mixed_gap, 1e-3);
  }
  return report.all_passed ? kExitOk : kExitValidation;
}

std::string scan_mixed_csv(std::uint64_t seed, int count, std::optional<int> rank,
                           std::string& footer) {
  std::ostringstream csv;
  csv << "index,rank,purity,max_violation\n";
  double best = -1.0;
  double best_purity = 0.0;
  int best_index = -1;
  for (int i = 0; i < count; ++i) {
    SeededRng rng = rng_substream(seed, static_cast<std::uint64_t>(i));
    const int r = rank ? *rank : 1 + static_cast<int>(rng.next_u64() % 4);
    const DensityMatrix rho = random_density(rng, r);
    const double p = purity(rho);
    const double v = horodecki_max_violation(rho);
    csv << i << "," << r << "," << format_number(p) << "," << format_number(v) << "\n";
    if (v > best) {
      best = v;
      best_purity = p;
      best_index = i;
    }
  }
  footer = "# max " + format_number(best) + " purity " + format_number(best_purity) + " index " +
           std::to_string(best_index);
  csv << footer << "\n";
  return csv.str();
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

DensityMatrix StateFile::as_density() const {
  return kind == StateKind::Pure ? pure->projector() : *density;
}

StateFile parse_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw InputError("state file needs a string \"kind\" field");
  }
  const std::string kind = doc["kind"].get<std::string>();
  StateFile out;
  if (kind == "pure") {
    const json& amps = doc.value("amplitudes", json());
    if (!amps.is_array() || amps.size() != 4) throw InputError("\"amplitudes\" must hold 4 pairs");
    Amplitudes a;
    for (int i = 0; i < 4; ++i) a[i] = parse_pair(amps[i]);
    out.kind = StateKind::Pure;
    out.pure = PureState::from_amplitudes(a);
  } else if (kind == "density") {
    const json& rows = doc.value("matrix", json());
    if (!rows.is_array() || rows.size() != 4) throw InputError("\"matrix\" must hold 4 rows");
    SmallMatrix m(4);
    for (int r = 0; r < 4; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 4) throw InputError("matrix rows must hold 4 pairs");
      for (int c = 0; c < 4; ++c) m(r, c) = parse_pair(rows[r][c]);
    }
    out.kind = StateKind::Density;
    out.density = DensityMatrix::from_matrix(m);
  } else {
    throw InputError("unknown state kind \"" + kind + "\"");
  }
  return out;
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_json(buffer.str());
}

std::string to_json(const PureState& psi) {
  json amps = json::array();
  for (const Complex& z : psi.amplitudes()) amps.push_back(pair_json(z));
  return json{{"kind", "pure"}, {"amplitudes", amps}}.dump() + "\n";
}

std::string to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(pair_json(rho(r, c)));
    rows.push_back(row);
  }
  return json{{"kind", "density"}, {"matrix", rows}}.dump() + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

std::vector<SweepRow> sweep_rows(int steps) {
  if (steps < 1) throw DomainError("steps must be >= 1");
  std::vector<SweepRow> rows;
  rows.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    const double theta = std::numbers::pi * k / steps;
    // Both curves are symmetric about pi/2; evaluating the mirrored half at
    // its reflection keeps the table exactly symmetric.
    const int folded = std::min(k, steps - k);
    const double eval_at = std::numbers::pi * folded / steps;
    rows.push_back({theta, analytic_max_violation(eval_at), entanglement_entropy(eval_at)});
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string csv = "theta,bound,entropy\n";
  for (const SweepRow& row : rows) {
    csv += format_number(row.theta) + "," + format_number(row.bound) + "," +
           format_number(row.entropy) + "\n";
  }
  return csv;
}

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"Maximal CHSH violation analysis for two-qubit states", "chsh"};
  app.require_subcommand(1);

  double theta = 0.0;
  std::string in_path;
  std::string out_path;
  int restarts = 32;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  int steps = 0;
  int count = 0;
  int rank = 0;
  int trials = 100;

  auto* analytic = app.add_subcommand("analytic", "Closed-form bound and entanglement for theta");
  analytic->add_option("--theta", theta, "Schmidt angle in radians")->required();

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt angle and local unitaries of a pure state");
  schmidt->add_option("--in", in_path, "Pure state file")->required();

  auto* maximize = app.add_subcommand("maximize", "Numerical CHSH maximum over all settings");
  maximize->add_option("--in", in_path, "State file")->required();
  maximize->add_option("--restarts", restarts, "Multistart count")->check(CLI::PositiveNumber);
  maximize->add_option("--max-iters", max_iters, "Simplex iterations per restart")
      ->check(CLI::PositiveNumber);
  maximize->add_option("--seed", seed, "Seed for random restarts");

  auto* optimal = app.add_subcommand("optimal", "Constructed optimal settings for a pure state");
  optimal->add_option("--in", in_path, "Pure state file")->required();

  auto* horodecki = app.add_subcommand("horodecki", "Horodecki M and maximal CHSH value");
  horodecki->add_option("--in", in_path, "State file")->required();

  auto* sweep = app.add_subcommand("sweep", "Bound and entropy over theta in [0, pi] as CSV");
  sweep->add_option("--steps", steps, "Number of intervals")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV output path")->required();

  auto* scan = app.add_subcommand("scan-mixed", "Horodecki value over random density matrices");
  scan->add_option("--count", count, "Number of samples")->required()->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed, "Ensemble seed")->required();
  scan->add_option("--rank", rank, "Ginibre rank (default: drawn from 1..4 per sample)")
      ->check(CLI::Range(1, 4));
  scan->add_option("--out", out_path, "CSV output path")->required();

  auto* verify = app.add_subcommand("verify", "Run the invariant checks");
  verify->add_option("--seed", seed, "Seed")->required();
  verify->add_option("--trials", trials, "Random trials per property")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage{"chsh"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_storage) argv.push_back(s.data());

  CommandResult result;
  std::ostringstream out;
  std::ostringstream err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    if (code != 0) {
      result.err += app.help();
      result.exit_code = kExitUsage;
    }
    return result;
  }

  try {
    int code = kExitOk;
    if (*analytic) {
      out << "bound " << format_number(analytic_max_violation(theta)) << ", entropy "
          << format_number(entanglement_entropy(theta)) << "\n";
    } else if (*schmidt) {
      const PureState& psi = require_pure(read_state_file(in_path));
      const SchmidtForm form = schmidt_decompose(psi);
      out << "theta " << format_number(form.theta) << "\n";
      out << "chi " << format_number(form.chi) << "\n";
      print_unitary(out, "u_a", form.u_a);
      print_unitary(out, "u_b", form.u_b);
    } else if (*maximize) {
      const DensityMatrix rho = read_state_file(in_path).as_density();
      OptimizerConfig cfg;
      cfg.restarts = restarts;
      cfg.max_iters = max_iters;
      cfg.seed = seed;
      const OptResult res = maximize_chsh(rho, cfg);
      out << "value " << format_number(res.best_value) << "\n";
      print_scheme(out, res.scheme);
      out << "restarts " << res.restarts_used << "\n";
      out << "converged " << (res.converged ? "true" : "false") << "\n";
      if (!res.converged) {
        err << "error: no restart met the convergence tolerance\n";
        code = kExitNoConvergence;
      }
    } else if (*optimal) {
      const PureState& psi = require_pure(read_state_file(in_path));
      const OptimalSettings settings = optimal_settings_for(psi);
      const double bound = max_violation_pure(psi);
      out << "lambda " << format_number(settings.lambda) << "\n";
      out << "achieved " << format_number(settings.achieved_value) << "\n";
      out << "analytic " << format_number(bound) << "\n";
      out << "residual " << format_number(std::abs(settings.achieved_value - bound)) << "\n";
      print_scheme(out, settings.scheme);
    } else if (*horodecki) {
      const DensityMatrix rho = read_state_file(in_path).as_density();
      const double m = horodecki_M(rho);
      out << "M " << format_number(m) << ", max " << format_number(2.0 * std::sqrt(m))
          << ", purity " << format_number(purity(rho)) << "\n";
    } else if (*sweep) {
      const auto rows = sweep_rows(steps);
      write_text_file(out_path, format_sweep_csv(rows));
      out << "wrote " << rows.size() << " rows to " << out_path << "\n";
    } else if (*scan) {
      std::string footer;
      const std::optional<int> fixed_rank = scan->count("--rank") ? std::optional<int>(rank)
                                                                  : std::nullopt;
      write_text_file(out_path, scan_mixed_csv(seed, count, fixed_rank, footer));
      out << footer << "\n";
    } else if (*verify) {
      code = run_verify(out, seed, trials);
    }
    result.exit_code = code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitInput;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitNoConvergence;
  } catch (const std::invalid_argument& e) {
    // ValidationError, NotUnit, NotHermitian, NotSymmetric
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitInput;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace chsh::cli
