#pragma once

// CHSH Bell operator B = A (x) (B + B') + A' (x) (B - B') for traceless spin
// observables, its spectrum and bounds, the closed-form maximal violation for
// pure states and the Horodecki value for mixed states.

#include <array>

#include "chsh/numerics.hpp"
#include "chsh/states.hpp"

namespace chsh {

/// Unit vector on the Bloch sphere.
class BlochVector {
 public:
  /// Throws NotUnit unless |(x, y, z)| = 1 within 1e-12.
  BlochVector(double x, double y, double z);
  explicit BlochVector(const Vec3& v) : BlochVector(v[0], v[1], v[2]) {}
  /// Rescales a nonzero vector to unit length.
  static BlochVector normalized(const Vec3& v);

  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  double z() const { return v_[2]; }
  const Vec3& vec() const { return v_; }

  BlochVector operator-() const { return BlochVector(-v_[0], -v_[1], -v_[2]); }

 private:
  Vec3 v_;
};

struct Observable {
  BlochVector bloch;
  SmallMatrix matrix{2};  // bloch . sigma
};

struct MeasurementScheme {
  BlochVector a, a_prime, b, b_prime;
};

struct BellSpectrum {
  double sin_x = 0.0;  // |a x a'| |b x b'|
  /// +2sqrt(1+sin x), +2sqrt(1-sin x), -2sqrt(1-sin x), -2sqrt(1+sin x)
  std::array<double, 4> eigenvalues{};
  /// Column k is the eigenvector for eigenvalues[k].
  SmallMatrix eigenvectors{4};
  /// max |B^2 - 4I + [A,A'] (x) [B,B']|
  double square_identity_residual = 0.0;
};

struct OptimalSettings {
  MeasurementScheme scheme;
  double lambda = 0.0;  // tan(lambda) = sin(theta)
  double achieved_value = 0.0;
};

Observable observable_from_bloch(const BlochVector& v);

SmallMatrix bell_operator(const MeasurementScheme& s);

/// [A, A'] (x) [B, B']
SmallMatrix commutator_product(const MeasurementScheme& s);

/// Tr(rho B)
double chsh_value(const MeasurementScheme& s, const DensityMatrix& rho);
double chsh_value(const MeasurementScheme& s, const PureState& psi);

/// Closed-form eigenvalues paired with numerically computed eigenvectors.
/// Throws std::logic_error if B^2 departs from 4I - [A,A'] (x) [B,B'] by
/// more than 1e-10 or the numerical spectrum disagrees with the closed form.
BellSpectrum bell_spectrum(const MeasurementScheme& s);

/// Bell-like basis (1,0,0,1)/sqrt2, (-1,0,0,1)/sqrt2, (0,-1,1,0)/sqrt2,
/// (0,1,1,0)/sqrt2 spanning the two invariant subspaces of the rotated
/// Bell operator.
std::array<Amplitudes, 4> eta_basis();

/// sqrt(4 + |Tr(rho [A,A'] (x) [B,B'])|)
double landau_bound(const MeasurementScheme& s, const DensityMatrix& rho);

/// 2 sqrt(1 + sin^2 theta); theta in [0, pi].
double analytic_max_violation(double theta);

double max_violation_pure(const PureState& psi);

/// Measurement scheme reaching analytic_max_violation for psi.
OptimalSettings optimal_settings_for(const PureState& psi);

/// Sum of the two largest eigenvalues of T^T T.
double horodecki_M(const DensityMatrix& rho);

/// 2 sqrt(M): the maximal CHSH value attainable on rho.
double horodecki_max_violation(const DensityMatrix& rho);

/// Four independent uniformly distributed Bloch vectors.
MeasurementScheme random_scheme(SeededRng& rng);

/// Bloch vector of u^dagger (n . sigma) u.
BlochVector conjugate_bloch(const SmallMatrix& u, const BlochVector& n);

}  // namespace chsh
