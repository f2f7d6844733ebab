#include "chsh/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace chsh {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kDensityTol = 1e-10;

double squared_norm(const Amplitudes& amps) {
  double sum = 0.0;
  for (const Complex& z : amps) sum += std::norm(z);
  return sum;
}

void check_finite(const Amplitudes& amps) {
  for (const Complex& z : amps) make_complex(z.real(), z.imag());
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
}

// -p log2 p with the 0 log 0 = 0 convention.
double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

PureState PureState::from_amplitudes(const Amplitudes& amplitudes) {
  check_finite(amplitudes);
  const double n = std::sqrt(squared_norm(amplitudes));
  if (std::abs(n - 1.0) > kNormTol) {
    throw ValidationError("state is not normalized (norm " + std::to_string(n) + ")");
  }
  return PureState(amplitudes);
}

PureState PureState::normalized(const Amplitudes& amplitudes) {
  check_finite(amplitudes);
  const double n = std::sqrt(squared_norm(amplitudes));
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  Amplitudes out = amplitudes;
  for (Complex& z : out) z /= n;
  return PureState(out);
}

DensityMatrix PureState::projector() const {
  SmallMatrix m(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_matrix(const SmallMatrix& m) {
  if (m.dim() != 4) throw ValidationError("density matrix must be 4x4");
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) make_complex(m(r, c).real(), m(r, c).imag());
  const double herm = m.hermitian_residual();
  if (herm > kDensityTol) {
    throw ValidationError("density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kDensityTol) {
    throw ValidationError("density matrix trace is not 1 (got " + std::to_string(tr.real()) + ")");
  }
  const double smallest = hermitian_eigen(m).values.front();
  if (smallest < -kDensityTol) {
    throw ValidationError("density matrix is not positive semidefinite (eigenvalue " +
                          std::to_string(smallest) + ")");
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
  SmallMatrix m = SmallMatrix::identity(4);
  m *= 0.25;
  return DensityMatrix(m);
}

LocalUnitary::LocalUnitary(double alpha, double beta, double gamma, double delta)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta) {
  const Complex global = std::polar(1.0, -alpha);
  const double c = std::cos(gamma / 2.0);
  const double s = std::sin(gamma / 2.0);
  matrix_(0, 0) = global * std::polar(c, -(beta + delta) / 2.0);
  matrix_(0, 1) = -global * std::polar(s, (-beta + delta) / 2.0);
  matrix_(1, 0) = global * std::polar(s, (beta - delta) / 2.0);
  matrix_(1, 1) = global * std::polar(c, (beta + delta) / 2.0);
}

LocalUnitary LocalUnitary::from_angles(double alpha, double beta, double gamma, double delta) {
  for (double x : {alpha, beta, gamma, delta}) {
    if (!std::isfinite(x)) throw ValidationError("unitary angles must be finite");
  }
  return LocalUnitary(alpha, beta, gamma, delta);
}

LocalUnitary LocalUnitary::from_matrix(const SmallMatrix& u) {
  if (u.dim() != 2) throw ValidationError("local unitary must be 2x2");
  if (u.unitary_residual() > 1e-10) throw ValidationError("matrix is not unitary");

  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const double alpha = -std::arg(det) / 2.0;
  // w = e^{i alpha} u is special unitary: [[p, -conj(q)], [q, conj(p)]].
  const Complex w00 = std::polar(1.0, alpha) * u(0, 0);
  const Complex w10 = std::polar(1.0, alpha) * u(1, 0);
  const double gamma = 2.0 * std::atan2(std::abs(w10), std::abs(w00));

  const bool has_cos = std::abs(w00) > 1e-12;
  const bool has_sin = std::abs(w10) > 1e-12;
  const double sum = has_cos ? -2.0 * std::arg(w00) : 0.0;   // beta + delta
  const double diff = has_sin ? 2.0 * std::arg(w10) : 0.0;   // beta - delta
  LocalUnitary out(alpha, (sum + diff) / 2.0, gamma, (sum - diff) / 2.0);

  if ((out.matrix_ - u).max_abs() > 1e-10) {
    throw ValidationError("unitary parameter recovery failed");
  }
  return out;
}

PureState canonical_state(double theta, double chi) {
  check_theta(theta);
  return PureState::from_amplitudes(
      {0.0, std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), chi), 0.0});
}

SchmidtForm schmidt_decompose(const PureState& psi) {
  // Coefficient matrix C[i][j] = <ij|psi> = sum_k s_k u_k(i) conj(v_k(j)).
  const SmallMatrix coeffs(2, {psi[0], psi[1], psi[2], psi[3]});
  const Svd2 svd = svd2_complex(coeffs);

  // u_a maps u_k -> |k>; u_b maps conj(v_1) -> |1> and conj(v_2) -> |0>,
  // giving s_1 |01> + s_2 |10>.
  const SmallMatrix u_a = svd.u.adjoint();
  SmallMatrix u_b(2);
  for (int c = 0; c < 2; ++c) {
    u_b(1, c) = svd.v(c, 0);
    u_b(0, c) = svd.v(c, 1);
  }

  SchmidtForm form{2.0 * std::atan2(svd.s[1], svd.s[0]), 0.0, LocalUnitary::from_matrix(u_a),
                   LocalUnitary::from_matrix(u_b)};
  return form;
}

double entanglement_entropy(double theta) {
  check_theta(theta);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return entropy_term(c * c) + entropy_term(s * s);
}

double concurrence(const PureState& psi) {
  // sigma_y (x) sigma_y maps (x00, x01, x10, x11) -> (-x11, x10, x01, -x00).
  const Complex overlap = 2.0 * (psi[1] * psi[2] - psi[0] * psi[3]);
  return std::abs(overlap);
}

SmallMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  SmallMatrix out(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < 2; ++k) {
        acc += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double sum = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) sum += std::norm(rho(r, c));
  return sum;
}

PureState random_pure(SeededRng& rng) {
  Amplitudes amps;
  for (Complex& z : amps) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    z = {re, im};
  }
  return PureState::normalized(amps);
}

DensityMatrix random_density(SeededRng& rng, int rank) {
  if (rank < 1 || rank > 4) {
    throw DomainError("rank must be in 1..4, got " + std::to_string(rank));
  }
  std::array<std::array<Complex, 4>, 4> g{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < rank; ++k) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g[i][k] = {re, im};
    }
  }
  SmallMatrix m(4);
  double tr = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < rank; ++k) acc += g[i][k] * std::conj(g[j][k]);
      m(i, j) = acc;
    }
    tr += m(i, i).real();
  }
  m *= 1.0 / tr;
  // Exact Hermiticity and a real diagonal.
  for (int i = 0; i < 4; ++i) {
    m(i, i) = m(i, i).real();
    for (int j = i + 1; j < 4; ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix::from_matrix(m);
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  CorrelationMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.t[i][j] = trace_of_product(rho.matrix(), kron(pauli(i), pauli(j))).real();
    }
  }
  return out;
}

double fidelity(const PureState& phi, const PureState& psi) {
  Complex overlap = 0.0;
  for (int i = 0; i < 4; ++i) overlap += std::conj(phi[i]) * psi[i];
  return std::norm(overlap);
}

PureState apply_local(const SmallMatrix& u_a, const SmallMatrix& u_b, const PureState& psi) {
  const auto out = kron(u_a, u_b).apply(psi.amplitudes());
  return PureState::normalized({out[0], out[1], out[2], out[3]});
}

}  // namespace chsh
