#include "chsh/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace chsh {

namespace {

constexpr double kUnitTol = 1e-12;

SmallMatrix bloch_dot_sigma(const Vec3& v) {
  return pauli_x() * v[0] + pauli_y() * v[1] + pauli_z() * v[2];
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z) : v_{x, y, z} {
  const double n = norm(v_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTol) {
    throw NotUnit("Bloch vector must have unit norm, got " + std::to_string(n));
  }
}

BlochVector BlochVector::normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw NotUnit("cannot normalize a zero Bloch vector");
  return BlochVector(v[0] / n, v[1] / n, v[2] / n);
}

Observable observable_from_bloch(const BlochVector& v) { return {v, bloch_dot_sigma(v.vec())}; }

SmallMatrix bell_operator(const MeasurementScheme& s) {
  const SmallMatrix a = bloch_dot_sigma(s.a.vec());
  const SmallMatrix a_prime = bloch_dot_sigma(s.a_prime.vec());
  const SmallMatrix b = bloch_dot_sigma(s.b.vec());
  const SmallMatrix b_prime = bloch_dot_sigma(s.b_prime.vec());
  return kron(a, b + b_prime) + kron(a_prime, b - b_prime);
}

SmallMatrix commutator_product(const MeasurementScheme& s) {
  const SmallMatrix a = bloch_dot_sigma(s.a.vec());
  const SmallMatrix a_prime = bloch_dot_sigma(s.a_prime.vec());
  const SmallMatrix b = bloch_dot_sigma(s.b.vec());
  const SmallMatrix b_prime = bloch_dot_sigma(s.b_prime.vec());
  return kron(commutator(a, a_prime), commutator(b, b_prime));
}

double chsh_value(const MeasurementScheme& s, const DensityMatrix& rho) {
  return trace_of_product(rho.matrix(), bell_operator(s)).real();
}

double chsh_value(const MeasurementScheme& s, const PureState& psi) {
  const auto image = bell_operator(s).apply(psi.amplitudes());
  Complex acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += std::conj(psi[i]) * image[i];
  return acc.real();
}

BellSpectrum bell_spectrum(const MeasurementScheme& s) {
  const SmallMatrix op = bell_operator(s);

  BellSpectrum out;
  out.sin_x = std::clamp(
      norm(cross(s.a.vec(), s.a_prime.vec())) * norm(cross(s.b.vec(), s.b_prime.vec())), 0.0, 1.0);
  const double hi = 2.0 * std::sqrt(1.0 + out.sin_x);
  const double lo = 2.0 * std::sqrt(1.0 - out.sin_x);
  out.eigenvalues = {hi, lo, -lo, -hi};

  out.square_identity_residual =
      (op * op - 4.0 * SmallMatrix::identity(4) + commutator_product(s)).max_abs();
  if (out.square_identity_residual > 1e-10) {
    throw std::logic_error("Bell operator square identity violated");
  }

  const HermitianEigen eig = hermitian_eigen(op);
  for (int k = 0; k < 4; ++k) {
    const int src = 3 - k;  // ascending -> descending
    // Squares are compared since sqrt(1 - sin x) is ill-conditioned near 1.
    const double numeric = eig.values[src];
    const double closed = out.eigenvalues[k];
    if (std::abs(numeric * numeric - closed * closed) > 1e-10 ||
        (std::abs(closed) > 1e-6 && std::signbit(numeric) != std::signbit(closed))) {
      throw std::logic_error("Bell spectrum disagrees with closed form");
    }
    for (int r = 0; r < 4; ++r) out.eigenvectors(r, k) = eig.vectors(r, src);
  }
  return out;
}

std::array<Amplitudes, 4> eta_basis() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {{{h, 0.0, 0.0, h}, {-h, 0.0, 0.0, h}, {0.0, -h, h, 0.0}, {0.0, h, h, 0.0}}};
}

double landau_bound(const MeasurementScheme& s, const DensityMatrix& rho) {
  const double correlator = trace_of_product(rho.matrix(), commutator_product(s)).real();
  return std::sqrt(4.0 + std::abs(correlator));
}

double analytic_max_violation(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  const double s = std::sin(theta);
  return 2.0 * std::sqrt(1.0 + s * s);
}

double max_violation_pure(const PureState& psi) {
  return analytic_max_violation(schmidt_decompose(psi).theta);
}

BlochVector conjugate_bloch(const SmallMatrix& u, const BlochVector& n) {
  const SmallMatrix m = u.adjoint() * bloch_dot_sigma(n.vec()) * u;
  Vec3 v{};
  for (int i = 0; i < 3; ++i) v[i] = 0.5 * (pauli(i) * m).trace().real();
  return BlochVector::normalized(v);
}

OptimalSettings optimal_settings_for(const PureState& psi) {
  const SchmidtForm form = schmidt_decompose(psi);
  const double sin_theta = std::sin(form.theta);
  const double lambda = std::atan(sin_theta);

  // In the Schmidt frame T = diag(sin theta, sin theta, -1): Alice measures
  // along the two dominant correlation axes z and x, Bob along
  // cos(lambda) (T^T z) +- sin(lambda) (T^T x) / |T^T x|.
  const BlochVector z(0.0, 0.0, 1.0);
  MeasurementScheme frame{z, BlochVector(1.0, 0.0, 0.0),
                          BlochVector(std::sin(lambda), 0.0, -std::cos(lambda)),
                          BlochVector(-std::sin(lambda), 0.0, -std::cos(lambda))};
  if (sin_theta <= 1e-12) {
    // Product state: one perfectly anticorrelated axis gives the classical 2.
    frame = {z, z, -z, -z};
  }

  const SmallMatrix& u_a = form.u_a.matrix();
  const SmallMatrix& u_b = form.u_b.matrix();
  MeasurementScheme lab{conjugate_bloch(u_a, frame.a), conjugate_bloch(u_a, frame.a_prime),
                        conjugate_bloch(u_b, frame.b), conjugate_bloch(u_b, frame.b_prime)};

  OptimalSettings out{lab, lambda, 0.0};
  out.achieved_value = chsh_value(lab, psi);
  return out;
}

double horodecki_M(const DensityMatrix& rho) {
  const CorrelationMatrix corr = correlation_matrix(rho);
  RealMatrix3 gram{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += corr.t[k][i] * corr.t[k][j];
      gram[i][j] = acc;
    }
  }
  // Symmetrize exactly before the eigen call.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) gram[j][i] = gram[i][j];
  const auto eig = sym3_eigen_desc(gram);
  return std::max(0.0, eig[0] + eig[1]);
}

MeasurementScheme random_scheme(SeededRng& rng) {
  auto draw = [&rng] {
    Vec3 v;
    for (double& x : v) x = rng.gaussian();
    return BlochVector::normalized(v);
  };
  BlochVector a = draw();
  BlochVector a_prime = draw();
  BlochVector b = draw();
  BlochVector b_prime = draw();
  return {a, a_prime, b, b_prime};
}

double horodecki_max_violation(const DensityMatrix& rho) { return 2.0 * std::sqrt(horodecki_M(rho)); }

}  // namespace chsh
