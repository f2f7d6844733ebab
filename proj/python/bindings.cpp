// Python bindings. Pure states are sequences of four complex amplitudes,
// density matrices are 4x4 nested sequences of complex numbers, Bloch
// vectors are 3-tuples. Validation errors surface as ValueError.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "chsh/bell.hpp"
#include "chsh/cli.hpp"
#include "chsh/optimize.hpp"
#include "chsh/states.hpp"

namespace py = pybind11;

namespace {

using chsh::Complex;
using ComplexRows = std::vector<std::vector<Complex>>;

chsh::PureState to_pure(const std::array<Complex, 4>& amplitudes) {
  return chsh::PureState::from_amplitudes(amplitudes);
}

chsh::SmallMatrix to_matrix(const ComplexRows& rows) {
  const int dim = static_cast<int>(rows.size());
  if (dim < 2 || dim > chsh::SmallMatrix::kMaxDim) throw chsh::ValidationError("bad matrix size");
  chsh::SmallMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    if (static_cast<int>(rows[r].size()) != dim) throw chsh::ValidationError("matrix is not square");
    for (int c = 0; c < dim; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ComplexRows from_matrix(const chsh::SmallMatrix& m) {
  ComplexRows rows(m.dim(), std::vector<Complex>(m.dim()));
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) rows[r][c] = m(r, c);
  return rows;
}

chsh::DensityMatrix to_density(const ComplexRows& rows) {
  return chsh::DensityMatrix::from_matrix(to_matrix(rows));
}

chsh::MeasurementScheme to_scheme(const std::array<chsh::Vec3, 4>& v) {
  return {chsh::BlochVector(v[0]), chsh::BlochVector(v[1]), chsh::BlochVector(v[2]),
          chsh::BlochVector(v[3])};
}

py::dict scheme_dict(const chsh::MeasurementScheme& s) {
  py::dict d;
  d["a"] = s.a.vec();
  d["a_prime"] = s.a_prime.vec();
  d["b"] = s.b.vec();
  d["b_prime"] = s.b_prime.vec();
  return d;
}

py::dict unitary_dict(const chsh::LocalUnitary& u) {
  py::dict d;
  d["alpha"] = u.alpha();
  d["beta"] = u.beta();
  d["gamma"] = u.gamma();
  d["delta"] = u.delta();
  d["matrix"] = from_matrix(u.matrix());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CHSH bounds for two-qubit states";

  py::register_exception<chsh::NoConvergence>(m, "NoConvergence", PyExc_RuntimeError);

  m.def("canonical_state",
        [](double theta, double chi) { return chsh::canonical_state(theta, chi).amplitudes(); },
        py::arg("theta"), py::arg("chi") = 0.0);
  m.def("schmidt_decompose", [](const std::array<Complex, 4>& psi) {
    const chsh::SchmidtForm f = chsh::schmidt_decompose(to_pure(psi));
    py::dict d;
    d["theta"] = f.theta;
    d["chi"] = f.chi;
    d["u_a"] = unitary_dict(f.u_a);
    d["u_b"] = unitary_dict(f.u_b);
    return d;
  });
  m.def("entanglement_entropy", &chsh::entanglement_entropy, py::arg("theta"));
  m.def("concurrence", [](const std::array<Complex, 4>& psi) { return chsh::concurrence(to_pure(psi)); });
  m.def("purity", [](const ComplexRows& rho) { return chsh::purity(to_density(rho)); });
  m.def("projector",
        [](const std::array<Complex, 4>& psi) { return from_matrix(to_pure(psi).projector().matrix()); });
  m.def("correlation_matrix",
        [](const ComplexRows& rho) { return chsh::correlation_matrix(to_density(rho)).t; });
  m.def("random_pure", [](std::uint64_t seed) {
    chsh::SeededRng rng(seed);
    return chsh::random_pure(rng).amplitudes();
  }, py::arg("seed"));
  m.def("random_density", [](std::uint64_t seed, int rank) {
    chsh::SeededRng rng(seed);
    return from_matrix(chsh::random_density(rng, rank).matrix());
  }, py::arg("seed"), py::arg("rank"));

  m.def("analytic_max_violation", &chsh::analytic_max_violation, py::arg("theta"));
  m.def("max_violation_pure",
        [](const std::array<Complex, 4>& psi) { return chsh::max_violation_pure(to_pure(psi)); });
  m.def("horodecki_M", [](const ComplexRows& rho) { return chsh::horodecki_M(to_density(rho)); });
  m.def("horodecki_max_violation",
        [](const ComplexRows& rho) { return chsh::horodecki_max_violation(to_density(rho)); });
  m.def("chsh_value", [](const std::array<chsh::Vec3, 4>& scheme, const ComplexRows& rho) {
    return chsh::chsh_value(to_scheme(scheme), to_density(rho));
  }, py::arg("scheme"), py::arg("rho"));
  m.def("bell_operator", [](const std::array<chsh::Vec3, 4>& scheme) {
    return from_matrix(chsh::bell_operator(to_scheme(scheme)));
  });
  m.def("bell_spectrum", [](const std::array<chsh::Vec3, 4>& scheme) {
    const chsh::BellSpectrum s = chsh::bell_spectrum(to_scheme(scheme));
    py::dict d;
    d["sin_x"] = s.sin_x;
    d["eigenvalues"] = s.eigenvalues;
    d["eigenvectors"] = from_matrix(s.eigenvectors);
    d["square_identity_residual"] = s.square_identity_residual;
    return d;
  });
  m.def("optimal_settings_for", [](const std::array<Complex, 4>& psi) {
    const chsh::OptimalSettings o = chsh::optimal_settings_for(to_pure(psi));
    py::dict d = scheme_dict(o.scheme);
    d["lambda"] = o.lambda;
    d["achieved_value"] = o.achieved_value;
    return d;
  });
  m.def("maximize_chsh",
        [](const ComplexRows& rho, int restarts, int max_iters, double ftol, std::uint64_t seed) {
          chsh::OptimizerConfig cfg;
          cfg.restarts = restarts;
          cfg.max_iters = max_iters;
          cfg.ftol = ftol;
          cfg.seed = seed;
          const chsh::DensityMatrix state = to_density(rho);
          const chsh::OptResult r = [&] {
            py::gil_scoped_release release;
            return chsh::maximize_chsh(state, cfg);
          }();
          py::dict d = scheme_dict(r.scheme);
          d["best_value"] = r.best_value;
          d["restarts_used"] = r.restarts_used;
          d["converged"] = r.converged;
          return d;
        },
        py::arg("rho"), py::arg("restarts") = 32, py::arg("max_iters") = 2000,
        py::arg("ftol") = 1e-12, py::arg("seed") = 0);

  m.def("run_command", [](const std::vector<std::string>& args) {
    const chsh::cli::CommandResult r = chsh::cli::run_command(args);
    return py::make_tuple(r.exit_code, r.out, r.err);
  }, "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
