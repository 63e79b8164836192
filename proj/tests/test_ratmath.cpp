#include <doctest.h>

#include "support.hpp"

using namespace chaut;
using namespace chaut::testing;

namespace {

// Laplace expansion along the first row; independent of the Bareiss code.
Integer cofactor_det(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Integer s(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      for (Eigen::Index c = 0, k = 0; c < n; ++c) {
        if (c != j) minor(r - 1, k++) = m(r, c);
      }
    }
    const Integer term = m(0, j) * cofactor_det(minor);
    s += (j % 2 == 0) ? term : Integer(-term);
  }
  return s;
}

IntMatrix random_matrix(std::mt19937_64& rng, int n, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = d(rng);
  }
  return m;
}

// Product of random elementary matrices: always unimodular.
IntMatrix random_unimodular(std::mt19937_64& rng, int n) {
  IntMatrix m = IntMatrix::Identity(n, n);
  std::uniform_int_distribution<int> idx(0, n - 1), k(-3, 3);
  for (int s = 0; s < 12; ++s) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    m.row(i) += Integer(k(rng)) * m.row(j);
  }
  return m;
}

const IntMatrix kA1 = imat({{4, 1, -1}, {2, 2, -1}, {7, 3, -2}});

}  // namespace

TEST_CASE("rationals are stored reduced") {
  CHECK(parse_rational("-10/4") == q(-5, 2));
  CHECK(bmp::denominator(parse_rational("-10/4")) == 2);
  CHECK(to_string(parse_rational("6/3")) == "2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("primitive homogeneous coordinates") {
  const auto h = primitive_homogeneous(pt({q(1, 2)}));
  CHECK(h.coords(0) == 1);
  CHECK(h.coords(1) == 2);
  CHECK(h.denominator() == 2);
  const auto a = primitive_homogeneous(pt({q(1, 3), q(1, 2)}));
  CHECK(a.coords(0) == 2);
  CHECK(a.coords(1) == 3);
  CHECK(a.denominator() == 6);
  const auto b = primitive_homogeneous(pt({q(1, 3), q(1, 3)}));
  CHECK(b.coords(0) == 1);
  CHECK(b.coords(1) == 1);
  CHECK(b.coords(2) == 3);
  CHECK(primitive_homogeneous(pt({q(0), q(1)})).denominator() == 1);
}

TEST_CASE("primitive coordinates are coprime with positive last entry") {
  std::mt19937_64 rng(7);
  for (int s = 0; s < 500; ++s) {
    const Point p = random_rational_point(rng, 1 + s % 3, 60);
    const IntVector v = primitive_homogeneous(p).coords;
    Integer g(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
    CHECK(g == 1);
    CHECK(v(v.size() - 1) > 0);
    CHECK(dehomogenize(v) == p);
  }
}

TEST_CASE("dehomogenize rejects non-positive last coordinates") {
  IntVector v(2);
  v << 1, 0;
  CHECK_THROWS_AS(dehomogenize(v), Error);
  v << 1, -2;
  try {
    dehomogenize(v);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveDenominator);
  }
}

TEST_CASE("determinants") {
  CHECK(int_det(IntMatrix::Identity(3, 3)) == 1);
  CHECK(int_det(kA1) == 1);
  CHECK(cofactor_det(kA1) == 1);
  CHECK(int_det(imat({{0, 1}, {1, 1}})) == -1);
  CHECK_THROWS_AS(int_det(imat({{1, 2, 3}, {4, 5, 6}})), Error);
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int s = 0; s < 200; ++s) {
    const IntMatrix m = random_matrix(rng, 1 + s % 5, 9);
    CHECK(int_det(m) == cofactor_det(m));
  }
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(12);
  for (int s = 0; s < 100; ++s) {
    const int n = 2 + s % 4;
    const IntMatrix a = random_matrix(rng, n, 6);
    const IntMatrix b = random_matrix(rng, n, 6);
    CHECK(int_det(IntMatrix(a * b)) == int_det(a) * int_det(b));
  }
}

TEST_CASE("solve_right") {
  const IntMatrix b = imat({{0, 1, 1}, {1, 2, 1}, {1, 5, 3}});
  const IntMatrix c = imat({{0, 1, 2}, {1, 1, 1}, {1, 3, 4}});
  CHECK(solve_right(b, b) == IntMatrix::Identity(3, 3));
  CHECK(solve_right(c, b) == kA1);
  try {
    solve_right(IntMatrix::Identity(3, 3), IntMatrix(2 * IntMatrix::Identity(3, 3)));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIntegral);
  }
  try {
    solve_right(c, imat({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("solve_right reproduces C") {
  std::mt19937_64 rng(13);
  for (int s = 0; s < 100; ++s) {
    const int n = 2 + s % 3;
    const IntMatrix b = random_unimodular(rng, n);
    const IntMatrix c = random_matrix(rng, n, 5);
    CHECK(IntMatrix(solve_right(c, b) * b) == c);
  }
}

TEST_CASE("unimodular inverse") {
  CHECK(unimodular_inverse(IntMatrix::Identity(3, 3)) == IntMatrix::Identity(3, 3));
  CHECK(unimodular_inverse(imat({{0, 1}, {1, 1}})) == imat({{-1, 1}, {1, 0}}));
  CHECK(IntMatrix(kA1 * unimodular_inverse(kA1)) == IntMatrix::Identity(3, 3));
  try {
    unimodular_inverse(imat({{2, 0}, {0, 1}}));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnimodular);
  }
  std::mt19937_64 rng(14);
  for (int s = 0; s < 50; ++s) {
    const IntMatrix a = random_unimodular(rng, 2 + s % 4);
    CHECK(unimodular_inverse(unimodular_inverse(a)) == a);
  }
}

TEST_CASE("rank") {
  CHECK(rank_exact(imat({{1, 2}, {2, 4}}).cast<Rational>()) == 1);
  CHECK(rank_exact(kA1.cast<Rational>()) == 3);
}
