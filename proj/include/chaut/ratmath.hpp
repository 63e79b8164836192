#pragma once

// Exact scalars, dense integer/rational matrices and homogeneous coordinates.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <utility>

#include "chaut/error.hpp"

namespace chaut {

namespace bmp = boost::multiprecision;

using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using IntRow = RowVector<Integer>;
using RatMatrix = Matrix<Rational>;
/// A point of the cube (or any rational point of Q^d).
using Point = Vector<Rational>;

/// Primitive integer vector on the ray through (p, 1). The last entry is den(p).
struct HomogPoint {
  IntVector coords;

  const Integer& denominator() const { return coords(coords.size() - 1); }
  bool operator==(const HomogPoint& other) const { return coords == other.coords; }
};

// ---------------------------------------------------------------------------
// Scalars

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline bool is_integral(const Rational& r) { return bmp::denominator(r) == 1; }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

inline int sign(const Integer& z) { return z.sign(); }
inline int sign(const Rational& r) { return r.sign(); }

// ---------------------------------------------------------------------------
// Points and homogeneous coordinates

/// Lexicographic order on points of equal length.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const;
};

Point make_point(std::initializer_list<Rational> coords);

HomogPoint primitive_homogeneous(const Point& p);
Integer denominator(const Point& p);

/// The point on the ray of `v`. Throws NonPositiveDenominator when the last entry is <= 0.
Point dehomogenize(const IntVector& v);

/// Divides out the gcd of the entries.
IntVector make_primitive(IntVector v);

/// (p, 1) as a rational vector.
Vector<Rational> lift(const Point& p);

// ---------------------------------------------------------------------------
// Exact linear algebra, templated on the scalar.

/// Determinant by Bareiss fraction-free elimination. Exact over Z and Q.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> a = m;
  Scalar sgn(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return Scalar(0);
      a.row(k).swap(a.row(r));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sgn * a(n - 1, n - 1);
}

inline Integer int_det(const IntMatrix& m) { return determinant(m); }

/// Gauss-Jordan inverse over Q. Throws SingularMatrix.
template <typename Derived>
RatMatrix inverse_exact(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  }
  const Eigen::Index n = m.rows();
  RatMatrix a = m.template cast<Rational>();
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index r = k;
    while (r < n && a(r, k) == 0) ++r;
    if (r == n) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
    if (r != k) {
      a.row(k).swap(a.row(r));
      inv.row(k).swap(inv.row(r));
    }
    const Rational pivot = a(k, k);
    a.row(k) /= pivot;
    inv.row(k) /= pivot;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational factor = a(i, k);
      a.row(i) -= factor * a.row(k);
      inv.row(i) -= factor * inv.row(k);
    }
  }
  return inv;
}

/// Rank over Q.
template <typename Derived>
Eigen::Index rank_exact(const Eigen::MatrixBase<Derived>& m) {
  RatMatrix a = m.template cast<Rational>();
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Eigen::Index r = rank;
    while (r < a.rows() && a(r, col) == 0) ++r;
    if (r == a.rows()) continue;
    a.row(rank).swap(a.row(r));
    for (Eigen::Index i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Rational factor = a(i, col) / a(rank, col);
      a.row(i) -= factor * a.row(rank);
    }
    ++rank;
  }
  return rank;
}

/// Solves A * x = b over Q for nonsingular square A.
Vector<Rational> solve_exact(const RatMatrix& a, const Vector<Rational>& b);

/// Returns the integer matrix A with A * B = C. Throws SingularMatrix or NotIntegral.
IntMatrix solve_right(const IntMatrix& c, const IntMatrix& b);

/// Exact inverse of a matrix with determinant +-1. Throws NotUnimodular.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Throws NotIntegral if some entry has a nontrivial denominator.
IntMatrix to_integer(const RatMatrix& m);

}  // namespace chaut
