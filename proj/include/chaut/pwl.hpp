#pragma once

// Continuous piecewise affine functions with integer coefficients on the
// cube: the l-group G_n, whose positive cone is the free cancellative hoop
// on n generators.

#include <set>
#include <vector>

#include "chaut/geometry.hpp"

namespace chaut {

/// One integer row (a_1, ..., a_{n-1}, a_n) per top cell of a complex
/// covering [0,1]^{n-1}; on that cell the value is a_1 x_1 + ... + a_n.
class PWLFunction {
 public:
  PWLFunction(int n, ComplexPtr complex, IntMatrix rows);

  /// A single affine row on the whole cube; n is the row length.
  static PWLFunction affine(const IntRow& row);
  static PWLFunction constant(int n, long value);

  int n() const { return n_; }
  const CellularComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const IntMatrix& rows() const { return rows_; }
  IntRow row(std::size_t cell) const { return rows_.row(static_cast<Eigen::Index>(cell)); }

  /// Value of the affine piece of a cell at p (p need not lie in the cell).
  Rational value_on(std::size_t cell, const Point& p) const;

  /// Adjacent rows agree at every shared vertex.
  bool is_continuous() const;
  /// Minimum over all vertices of the complex is >= 0.
  bool in_positive_cone() const;

 private:
  int n_;
  ComplexPtr complex_;
  IntMatrix rows_;
};

Rational eval(const PWLFunction& f, const Point& p);

struct GeneratorSet {
  /// x_1, ..., x_n (0-based here): the projections and x_n = 1l - (x_1 v ... v x_{n-1}).
  std::vector<PWLFunction> x;
  PWLFunction unit;
};

GeneratorSet generators(int n);

enum class HoopOp { Add, TruncSub, Join, Meet, NatScale };

PWLFunction add(const PWLFunction& f, const PWLFunction& g);
/// l-group difference; leaves the positive cone in general.
PWLFunction sub(const PWLFunction& f, const PWLFunction& g);
/// 0 v (f - g).
PWLFunction trunc_sub(const PWLFunction& f, const PWLFunction& g);
PWLFunction join(const PWLFunction& f, const PWLFunction& g);
PWLFunction meet(const PWLFunction& f, const PWLFunction& g);
PWLFunction scale(const Integer& k, const PWLFunction& f);

/// `k` is only read by NatScale, which ignores g.
PWLFunction hoop_op(HoopOp op, const PWLFunction& f, const PWLFunction& g, long k = 1);

inline PWLFunction operator+(const PWLFunction& f, const PWLFunction& g) { return add(f, g); }
inline PWLFunction operator-(const PWLFunction& f, const PWLFunction& g) { return sub(f, g); }

struct StrongUnitResult {
  bool strong_unit = false;
  Rational min_value;
};

/// An affine function on a compact cell attains its minimum at a vertex.
StrongUnitResult is_strong_unit(const PWLFunction& f);

bool equals(const PWLFunction& f, const PWLFunction& g);

/// Merges adjacent cells with equal rows when the union is convex (ambient
/// dimension <= 2; higher dimensions are returned unchanged).
PWLFunction coalesce(const PWLFunction& f);

/// Both functions restricted to one complex on which each is affine.
struct CommonPieces {
  ComplexPtr complex;
  IntMatrix rows_f;
  IntMatrix rows_g;
};

CommonPieces common_pieces(const PWLFunction& f, const PWLFunction& g);

/// { g(p) * den(p) : p rational in the cube, den(p) <= bound }.
std::set<Integer> unit_value_spectrum(const PWLFunction& g, int bound);

}  // namespace chaut
