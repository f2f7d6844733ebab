#include "chsh/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace chsh {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiTol = 1e-13;
constexpr int kMaxSweeps = 100;

void check_dim(int dim) {
  if (dim < 2 || dim > SmallMatrix::kMaxDim) {
    throw std::invalid_argument("matrix dimension must be 2, 3 or 4, got " +
                                std::to_string(dim));
  }
}

double off_diagonal_norm(const SmallMatrix& a) {
  double sum = 0.0;
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

// Multiplies the column so that its first entry of modulus > 1e-12 is real
// and nonnegative.
void canonicalize_column_phase(SmallMatrix& m, int col) {
  for (int r = 0; r < m.dim(); ++r) {
    const double mag = std::abs(m(r, col));
    if (mag > 1e-12) {
      const Complex phase = std::conj(m(r, col)) / mag;
      for (int k = 0; k < m.dim(); ++k) m(k, col) *= phase;
      m(r, col) = Complex(std::abs(m(r, col)), 0.0);
      return;
    }
  }
}

}  // namespace

Complex make_complex(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw std::invalid_argument("complex components must be finite");
  }
  return {re, im};
}

SmallMatrix::SmallMatrix(int dim) : dim_(dim) { check_dim(dim); }

SmallMatrix::SmallMatrix(int dim, std::initializer_list<Complex> entries) : dim_(dim) {
  check_dim(dim);
  if (static_cast<int>(entries.size()) != dim * dim) {
    throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries");
  }
  int idx = 0;
  for (const Complex& z : entries) {
    (*this)(idx / dim, idx % dim) = make_complex(z.real(), z.imag());
    ++idx;
  }
}

SmallMatrix SmallMatrix::identity(int dim) {
  SmallMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::diagonal(std::span<const double> values) {
  SmallMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[i];
  return m;
}

SmallMatrix SmallMatrix::adjoint() const {
  SmallMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

SmallMatrix SmallMatrix::transpose() const {
  SmallMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = (*this)(c, r);
  return out;
}

SmallMatrix SmallMatrix::conj() const {
  SmallMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(r, c));
  return out;
}

Complex SmallMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SmallMatrix::max_abs() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
  return m;
}

double SmallMatrix::frobenius() const {
  double sum = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) sum += std::norm((*this)(r, c));
  return std::sqrt(sum);
}

double SmallMatrix::hermitian_residual() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double SmallMatrix::unitary_residual() const {
  return (adjoint() * (*this) - identity(dim_)).max_abs();
}

std::vector<Complex> SmallMatrix::column(int col) const {
  std::vector<Complex> v(dim_);
  for (int r = 0; r < dim_; ++r) v[r] = (*this)(r, col);
  return v;
}

std::vector<Complex> SmallMatrix::apply(std::span<const Complex> v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw std::invalid_argument("vector length does not match matrix dimension");
  }
  std::vector<Complex> out(dim_);
  for (int r = 0; r < dim_; ++r) {
    Complex acc = 0.0;
    for (int c = 0; c < dim_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

SmallMatrix& SmallMatrix::operator+=(const SmallMatrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) += rhs(r, c);
  return *this;
}

SmallMatrix& SmallMatrix::operator-=(const SmallMatrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) -= rhs(r, c);
  return *this;
}

SmallMatrix& SmallMatrix::operator*=(Complex scale) {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) *= scale;
  return *this;
}

SmallMatrix operator*(const SmallMatrix& lhs, const SmallMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  SmallMatrix out(lhs.dim_);
  for (int r = 0; r < lhs.dim_; ++r) {
    for (int c = 0; c < lhs.dim_; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < lhs.dim_; ++k) acc += lhs(r, k) * rhs(k, c);
      out(r, c) = acc;
    }
  }
  return out;
}

SmallMatrix kron(const SmallMatrix& left, const SmallMatrix& right) {
  if (left.dim() != 2 || right.dim() != 2) {
    throw std::invalid_argument("kron expects two 2x2 factors");
  }
  SmallMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = left(i, j) * right(k, l);
  return out;
}

Complex trace_of_product(const SmallMatrix& lhs, const SmallMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch");
  Complex acc = 0.0;
  for (int r = 0; r < lhs.dim(); ++r)
    for (int c = 0; c < lhs.dim(); ++c) acc += lhs(r, c) * rhs(c, r);
  return acc;
}

SmallMatrix commutator(const SmallMatrix& lhs, const SmallMatrix& rhs) {
  return lhs * rhs - rhs * lhs;
}

SmallMatrix pauli_x() { return SmallMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
SmallMatrix pauli_y() {
  return SmallMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
}
SmallMatrix pauli_z() { return SmallMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

SmallMatrix pauli(int axis) {
  switch (axis) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    case 2: return pauli_z();
    default: throw std::invalid_argument("pauli axis must be 0, 1 or 2");
  }
}

HermitianEigen hermitian_eigen(const SmallMatrix& h) {
  const double residual = h.hermitian_residual();
  if (residual > kHermitianTol) {
    throw NotHermitian("matrix is not Hermitian (residual " + std::to_string(residual) + ")");
  }
  const int n = h.dim();
  SmallMatrix a = h;
  SmallMatrix v = SmallMatrix::identity(n);
  const double threshold = kJacobiTol * std::max(1.0, h.frobenius());

  int sweep = 0;
  while (off_diagonal_norm(a) >= threshold) {
    if (sweep == kMaxSweeps) {
      throw NoConvergence("Jacobi eigensolver exceeded " + std::to_string(kMaxSweeps) + " sweeps");
    }
    ++sweep;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b < 1e-300) continue;
        // Phase rotation makes a(p,q) real, then a real Jacobi rotation
        // annihilates it.
        const Complex phase = std::conj(a(p, q)) / b;  // e^{-i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        SmallMatrix g = SmallMatrix::identity(n);
        g(p, p) = c;
        g(p, q) = s;
        g(q, p) = -s * phase;
        g(q, q) = c * phase;

        a = g.adjoint() * a * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = v * g;
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out{std::vector<double>(n), SmallMatrix(n), sweep};
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

Svd2 svd2_complex(const SmallMatrix& c) {
  if (c.dim() != 2) throw std::invalid_argument("svd2_complex expects a 2x2 matrix");

  const HermitianEigen gram = hermitian_eigen(c.adjoint() * c);
  Svd2 out;
  // Largest eigenvalue of C^dagger C first.
  for (int r = 0; r < 2; ++r) {
    out.v(r, 0) = gram.vectors(r, 1);
    out.v(r, 1) = gram.vectors(r, 0);
  }
  canonicalize_column_phase(out.v, 0);
  canonicalize_column_phase(out.v, 1);

  const auto w1 = c.apply(out.v.column(0));
  const auto w2 = c.apply(out.v.column(1));
  const double s1 = std::hypot(std::abs(w1[0]), std::abs(w1[1]));

  if (s1 < 1e-14) {
    out.u = SmallMatrix::identity(2);
    out.s = {s1, std::hypot(std::abs(w2[0]), std::abs(w2[1]))};
    return out;
  }

  const Complex u1[2] = {w1[0] / s1, w1[1] / s1};
  // Second left vector completed by orthogonality; C v2 only fixes its phase.
  const Complex perp[2] = {-std::conj(u1[1]), std::conj(u1[0])};
  const Complex proj = std::conj(perp[0]) * w2[0] + std::conj(perp[1]) * w2[1];
  const double s2 = std::abs(proj);
  const Complex phase = s2 > 1e-300 ? proj / s2 : Complex(1.0, 0.0);

  out.u(0, 0) = u1[0];
  out.u(1, 0) = u1[1];
  out.u(0, 1) = perp[0] * phase;
  out.u(1, 1) = perp[1] * phase;
  out.s = {s1, s2};

  if (s2 > s1) {
    // Rounding can invert a near-degenerate pair.
    for (int r = 0; r < 2; ++r) {
      std::swap(out.u(r, 0), out.u(r, 1));
      std::swap(out.v(r, 0), out.v(r, 1));
    }
    std::swap(out.s[0], out.s[1]);
  }
  return out;
}

std::array<double, 3> sym3_eigen_desc(const RealMatrix3& s) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(s[i][j] - s[j][i]) > 1e-12) {
        throw NotSymmetric("matrix is not symmetric");
      }
    }
  }
  RealMatrix3 a = s;
  double scale = 0.0;
  for (const auto& row : a)
    for (double x : row) scale += x * x;
  const double threshold = kJacobiTol * std::max(1.0, std::sqrt(scale));

  auto off = [&a] {
    return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
  };

  int sweep = 0;
  while (off() >= threshold) {
    if (sweep++ == kMaxSweeps) throw NoConvergence("sym3 Jacobi did not converge");
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        // A <- R^T A R with R = rotation in the (p, q) plane.
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
        a[p][q] = 0.0;
        a[q][p] = 0.0;
      }
    }
  }
  std::array<double, 3> values{a[0][0], a[1][1], a[2][2]};
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace chsh
