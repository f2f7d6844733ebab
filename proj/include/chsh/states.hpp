#pragma once

// Two-qubit states. Basis order is |00>, |01>, |10>, |11> with qubit a as
// the left tensor factor.

#include "chsh/numerics.hpp"
#include "chsh/rng.hpp"

namespace chsh {

class DensityMatrix;

/// Normalized two-qubit state vector.
class PureState {
 public:
  /// Throws ValidationError unless the norm is 1 within 1e-12.
  static PureState from_amplitudes(const Amplitudes& amplitudes);
  /// Rescales to unit norm; throws ValidationError for a zero vector.
  static PureState normalized(const Amplitudes& amplitudes);

  const Amplitudes& amplitudes() const { return amplitudes_; }
  const Complex& operator[](int i) const { return amplitudes_[i]; }

  DensityMatrix projector() const;

 private:
  explicit PureState(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {}
  Amplitudes amplitudes_;
};

/// 4x4 Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), trace (1e-10) and eigenvalues >= -1e-10.
  /// Throws ValidationError on failure.
  static DensityMatrix from_matrix(const SmallMatrix& m);

  const SmallMatrix& matrix() const { return matrix_; }
  const Complex& operator()(int r, int c) const { return matrix_(r, c); }

  static DensityMatrix maximally_mixed();

 private:
  friend class PureState;
  explicit DensityMatrix(const SmallMatrix& m) : matrix_(m) {}
  SmallMatrix matrix_;
};

/// Single-qubit unitary
///   U = e^{-i alpha} [[e^{-i(beta+delta)/2} cos(gamma/2), -e^{-i(beta-delta)/2} sin(gamma/2)],
///                     [e^{ i(beta-delta)/2} sin(gamma/2),  e^{ i(beta+delta)/2} cos(gamma/2)]].
class LocalUnitary {
 public:
  static LocalUnitary from_angles(double alpha, double beta, double gamma, double delta);

  /// Recovers (alpha, beta, gamma, delta) with gamma in [0, pi]. Where the
  /// (beta, delta) split is not determined the free combination is zeroed:
  /// beta = delta at gamma = 0 and beta = -delta at gamma = pi.
  /// Throws ValidationError if `u` is not a 2x2 unitary within 1e-10.
  static LocalUnitary from_matrix(const SmallMatrix& u);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double delta() const { return delta_; }
  const SmallMatrix& matrix() const { return matrix_; }

 private:
  LocalUnitary(double alpha, double beta, double gamma, double delta);
  double alpha_, beta_, gamma_, delta_;
  SmallMatrix matrix_{2};
};

/// (u_a (x) u_b) psi == canonical_state(theta, chi) up to a global phase.
struct SchmidtForm {
  double theta = 0.0;  // [0, pi/2]
  double chi = 0.0;    // always 0 in decomposition output
  LocalUnitary u_a;
  LocalUnitary u_b;
};

/// t[i][j] = Tr(rho sigma_i (x) sigma_j), i, j over x, y, z.
struct CorrelationMatrix {
  RealMatrix3 t{};
  double operator()(int i, int j) const { return t[i][j]; }
};

enum class Subsystem { A, B };

/// cos(theta/2)|01> + e^{i chi} sin(theta/2)|10>; theta in [0, pi].
PureState canonical_state(double theta, double chi);

SchmidtForm schmidt_decompose(const PureState& psi);

/// Von Neumann entropy (bits) of either reduced state of canonical_state(theta, .).
double entanglement_entropy(double theta);

/// |<psi*| sigma_y (x) sigma_y |psi>|
double concurrence(const PureState& psi);

/// Reduced 2x2 density matrix of the kept qubit.
SmallMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Tr(rho^2)
double purity(const DensityMatrix& rho);

/// Haar-random state from four complex gaussians.
PureState random_pure(SeededRng& rng);

/// G G^dagger / Tr(G G^dagger) with G a 4 x rank complex Ginibre matrix.
DensityMatrix random_density(SeededRng& rng, int rank);

CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// |<phi|psi>|^2
double fidelity(const PureState& phi, const PureState& psi);

/// (u_a (x) u_b) psi
PureState apply_local(const SmallMatrix& u_a, const SmallMatrix& u_b, const PureState& psi);

}  // namespace chsh
