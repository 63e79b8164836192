#include "chaut/ratmath.hpp"

#include <cctype>

namespace chaut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfCone: return "OutOfCone";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::InvalidIso: return "InvalidIso";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::TrivialEndomorphism: return "TrivialEndomorphism";
    case ErrorCode::NotStrongUnit: return "NotStrongUnit";
    case ErrorCode::NonPositiveDenominator: return "NonPositiveDenominator";
    case ErrorCode::MixedOrientation: return "MixedOrientation";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::C1Violation: return "C1Violation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  return Rational(num, den);
}

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error(ErrorCode::ParseError, "empty integer: '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw Error(ErrorCode::ParseError, "malformed integer: '" + std::string(text) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Rational& r) { return r.str(); }
std::string to_string(const Integer& z) { return z.str(); }

Integer gcd(const Integer& a, const Integer& b) { return bmp::gcd(a, b); }
Integer lcm(const Integer& a, const Integer& b) { return bmp::lcm(a, b); }

bool PointLess::operator()(const Point& a, const Point& b) const {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

Point make_point(std::initializer_list<Rational> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) p(i++) = c;
  return p;
}

Integer denominator(const Point& p) {
  Integer den(1);
  for (Eigen::Index i = 0; i < p.size(); ++i) den = lcm(den, bmp::denominator(p(i)));
  return den;
}

HomogPoint primitive_homogeneous(const Point& p) {
  const Integer den = denominator(p);
  IntVector v(p.size() + 1);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    v(i) = bmp::numerator(p(i)) * (den / bmp::denominator(p(i)));
  }
  v(p.size()) = den;
  return HomogPoint{std::move(v)};
}

Point dehomogenize(const IntVector& v) {
  const Eigen::Index d = v.size() - 1;
  if (v(d) <= 0) {
    throw Error(ErrorCode::NonPositiveDenominator,
                "homogeneous image has non-positive last coordinate " + v(d).str());
  }
  Point p(d);
  for (Eigen::Index i = 0; i < d; ++i) p(i) = Rational(v(i), v(d));
  return p;
}

IntVector make_primitive(IntVector v) {
  Integer g(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  if (g > 1) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) /= g;
  }
  return v;
}

Vector<Rational> lift(const Point& p) {
  Vector<Rational> v(p.size() + 1);
  v.head(p.size()) = p;
  v(p.size()) = 1;
  return v;
}

Vector<Rational> solve_exact(const RatMatrix& a, const Vector<Rational>& b) {
  return inverse_exact(a) * b;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) {
        throw Error(ErrorCode::NotIntegral, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                ") is " + to_string(m(i, j)));
      }
      out(i, j) = bmp::numerator(m(i, j));
    }
  }
  return out;
}

IntMatrix solve_right(const IntMatrix& c, const IntMatrix& b) {
  if (b.rows() != b.cols() || c.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_right: incompatible shapes");
  }
  if (int_det(b) == 0) throw Error(ErrorCode::SingularMatrix, "solve_right: B is singular");
  const RatMatrix a = c.cast<Rational>() * inverse_exact(b);
  return to_integer(a);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const Integer det = int_det(a);
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::NotUnimodular, "determinant is " + det.str());
  }
  return to_integer(inverse_exact(a));
}

}  // namespace chaut
