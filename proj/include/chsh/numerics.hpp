#pragma once

// Small dense complex linear algebra for two-qubit work: matrices of
// dimension 2..4, a cyclic Jacobi eigensolver, a 2x2 complex SVD and a
// 3x3 real symmetric eigensolver.

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace chsh {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using RealMatrix3 = std::array<std::array<double, 3>, 3>;
using Amplitudes = std::array<Complex, 4>;

// Error taxonomy shared by all modules.
struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotUnit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builds a complex scalar, rejecting NaN and infinite components.
Complex make_complex(double re, double im = 0.0);

/// Dense complex matrix with dimension fixed at construction (2, 3 or 4).
/// Entries are stored row-major in a fixed 4x4 buffer.
class SmallMatrix {
 public:
  static constexpr int kMaxDim = 4;

  explicit SmallMatrix(int dim);
  /// Row-major entries; the list must hold exactly dim*dim values.
  SmallMatrix(int dim, std::initializer_list<Complex> entries);

  static SmallMatrix identity(int dim);
  static SmallMatrix diagonal(std::span<const double> values);

  int dim() const { return dim_; }

  Complex& operator()(int row, int col) { return data_[row * kMaxDim + col]; }
  const Complex& operator()(int row, int col) const {
    return data_[row * kMaxDim + col];
  }

  SmallMatrix adjoint() const;
  SmallMatrix transpose() const;
  SmallMatrix conj() const;
  Complex trace() const;

  /// Largest entry modulus.
  double max_abs() const;
  double frobenius() const;

  /// max |H_ij - conj(H_ji)|
  double hermitian_residual() const;
  /// max |U^dagger U - I|_ij
  double unitary_residual() const;
  bool is_hermitian(double tol = 1e-12) const { return hermitian_residual() <= tol; }
  bool is_unitary(double tol = 1e-12) const { return unitary_residual() <= tol; }

  /// Column `col` as a vector of length dim.
  std::vector<Complex> column(int col) const;
  std::vector<Complex> apply(std::span<const Complex> v) const;

  SmallMatrix& operator+=(const SmallMatrix& rhs);
  SmallMatrix& operator-=(const SmallMatrix& rhs);
  SmallMatrix& operator*=(Complex scale);

  friend SmallMatrix operator+(SmallMatrix lhs, const SmallMatrix& rhs) { return lhs += rhs; }
  friend SmallMatrix operator-(SmallMatrix lhs, const SmallMatrix& rhs) { return lhs -= rhs; }
  friend SmallMatrix operator*(SmallMatrix lhs, Complex scale) { return lhs *= scale; }
  friend SmallMatrix operator*(Complex scale, SmallMatrix rhs) { return rhs *= scale; }
  friend SmallMatrix operator*(const SmallMatrix& lhs, const SmallMatrix& rhs);

 private:
  int dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Kronecker product of two 2x2 matrices; the left factor acts on qubit a.
SmallMatrix kron(const SmallMatrix& left, const SmallMatrix& right);

/// Tr(lhs * rhs) without forming the product.
Complex trace_of_product(const SmallMatrix& lhs, const SmallMatrix& rhs);

/// Commutator lhs*rhs - rhs*lhs.
SmallMatrix commutator(const SmallMatrix& lhs, const SmallMatrix& rhs);

SmallMatrix pauli_x();
SmallMatrix pauli_y();
SmallMatrix pauli_z();
/// 0 -> x, 1 -> y, 2 -> z.
SmallMatrix pauli(int axis);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  SmallMatrix vectors;         // eigenvector k is column k
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization. Throws NotHermitian when the symmetry
/// residual exceeds 1e-10 and NoConvergence after 100 sweeps.
HermitianEigen hermitian_eigen(const SmallMatrix& h);

struct Svd2 {
  SmallMatrix u{2};
  std::array<double, 2> s{};  // descending, nonnegative
  SmallMatrix v{2};
};

/// C = U diag(s) V^dagger for a 2x2 complex C. The first entry of each
/// column of V with modulus above 1e-12 is real and nonnegative.
Svd2 svd2_complex(const SmallMatrix& c);

/// Eigenvalues of a real symmetric 3x3 matrix in descending order.
/// Throws NotSymmetric when |S_ij - S_ji| > 1e-12.
std::array<double, 3> sym3_eigen_desc(const RealMatrix3& s);

// Real 3-vector helpers.
Vec3 cross(const Vec3& a, const Vec3& b);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

}  // namespace chsh
