#include <algorithm>
#include <map>

#include "chaut/pwl.hpp"

namespace chaut {

namespace {

Rational row_value(const IntMatrix& rows, Eigen::Index cell, const Point& p) {
  const Eigen::Index d = p.size();
  Rational s(rows(cell, d));
  for (Eigen::Index i = 0; i < d; ++i) {
    if (rows(cell, i) != 0) s += Rational(rows(cell, i)) * p(i);
  }
  return s;
}

IntMatrix gather(const IntMatrix& rows, const std::vector<std::size_t>& parent) {
  IntMatrix out(static_cast<Eigen::Index>(parent.size()), rows.cols());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows.row(static_cast<Eigen::Index>(parent[i]));
  }
  return out;
}

void require_same_n(const PWLFunction& f, const PWLFunction& g) {
  if (f.n() != g.n()) throw Error(ErrorCode::DimensionMismatch, "functions over different generator counts");
}

enum class Pick { Larger, Smaller, PositivePart };

// Slices the common complex along the zero set of f - g and picks rows per piece.
PWLFunction sliced(const PWLFunction& f, const PWLFunction& g, Pick pick) {
  require_same_n(f, g);
  const CommonPieces common = common_pieces(f, g);
  const IntMatrix diff = common.rows_f - common.rows_g;
  std::vector<std::optional<HomogForm>> cuts;
  for (Eigen::Index i = 0; i < diff.rows(); ++i) cuts.emplace_back(HomogForm(diff.row(i).transpose()));
  Slicing s = slice(*common.complex, cuts);
  IntMatrix rows(static_cast<Eigen::Index>(s.parent.size()), f.n());
  for (std::size_t i = 0; i < s.parent.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(s.parent[i]);
    const bool f_above = s.side[i] >= 0;
    IntRow chosen;
    switch (pick) {
      case Pick::Larger: chosen = f_above ? common.rows_f.row(r) : common.rows_g.row(r); break;
      case Pick::Smaller: chosen = f_above ? common.rows_g.row(r) : common.rows_f.row(r); break;
      case Pick::PositivePart: chosen = f_above ? IntRow(diff.row(r)) : IntRow(IntRow::Zero(f.n())); break;
    }
    rows.row(static_cast<Eigen::Index>(i)) = chosen;
  }
  return PWLFunction(f.n(), std::make_shared<const CellularComplex>(std::move(s.complex)), std::move(rows));
}

}  // namespace

PWLFunction::PWLFunction(int n, ComplexPtr complex, IntMatrix rows)
    : n_(n), complex_(std::move(complex)), rows_(std::move(rows)) {
  if (n_ < 2 || complex_->ambient_dim() != n_ - 1) {
    throw Error(ErrorCode::DimensionMismatch, "complex dimension must be n - 1");
  }
  if (rows_.cols() != n_ || static_cast<std::size_t>(rows_.rows()) != complex_->num_top()) {
    throw Error(ErrorCode::DimensionMismatch, "need one row of length n per top cell");
  }
}

PWLFunction PWLFunction::affine(const IntRow& row) {
  const int n = static_cast<int>(row.size());
  IntMatrix rows(1, n);
  rows.row(0) = row;
  return PWLFunction(n, std::make_shared<const CellularComplex>(CellularComplex::cube(n - 1)), rows);
}

PWLFunction PWLFunction::constant(int n, long value) {
  IntRow row = IntRow::Zero(n);
  row(n - 1) = value;
  return affine(row);
}

Rational PWLFunction::value_on(std::size_t cell, const Point& p) const {
  return row_value(rows_, static_cast<Eigen::Index>(cell), p);
}

bool PWLFunction::is_continuous() const {
  const auto& verts = complex_->vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const auto& tops = complex_->tops_containing(static_cast<int>(v));
    for (std::size_t k = 1; k < tops.size(); ++k) {
      if (value_on(tops[k], verts[v]) != value_on(tops[0], verts[v])) return false;
    }
  }
  return true;
}

bool PWLFunction::in_positive_cone() const { return is_strong_unit(*this).min_value >= 0; }

Rational eval(const PWLFunction& f, const Point& p) { return f.value_on(locate(f.complex(), p), p); }

GeneratorSet generators(int n) {
  if (n < 2) throw Error(ErrorCode::Unsupported, "generators need n >= 2");
  const int d = n - 1;
  auto cube = std::make_shared<const CellularComplex>(CellularComplex::cube(d));
  GeneratorSet gens{{}, PWLFunction::constant(n, 1)};
  for (int i = 0; i < d; ++i) {
    IntMatrix rows = IntMatrix::Zero(1, n);
    rows(0, i) = 1;
    gens.x.emplace_back(n, cube, rows);
  }
  // x_n = 1 - x_i on the region where x_i is the largest coordinate.
  std::vector<Polytope> regions;
  IntMatrix rows = IntMatrix::Zero(d, n);
  for (int i = 0; i < d; ++i) {
    Polytope region = Polytope::cube(d);
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      HomogForm h = HomogForm::Zero(n);
      h(i) = 1;
      h(j) = -1;
      region = clip(region, h);
    }
    regions.push_back(std::move(region));
    rows(i, i) = -1;
    rows(i, d) = 1;
  }
  gens.x.emplace_back(n, std::make_shared<const CellularComplex>(CellularComplex::from_polytopes(d, regions)),
                      rows);
  return gens;
}

CommonPieces common_pieces(const PWLFunction& f, const PWLFunction& g) {
  require_same_n(f, g);
  if (f.complex_ptr() == g.complex_ptr()) return {f.complex_ptr(), f.rows(), g.rows()};
  Overlay ov = overlay(f.complex(), g.complex());
  IntMatrix rf = gather(f.rows(), ov.parent_a);
  IntMatrix rg = gather(g.rows(), ov.parent_b);
  return {std::make_shared<const CellularComplex>(std::move(ov.complex)), std::move(rf), std::move(rg)};
}

PWLFunction add(const PWLFunction& f, const PWLFunction& g) {
  const CommonPieces c = common_pieces(f, g);
  return PWLFunction(f.n(), c.complex, c.rows_f + c.rows_g);
}

PWLFunction sub(const PWLFunction& f, const PWLFunction& g) {
  const CommonPieces c = common_pieces(f, g);
  return PWLFunction(f.n(), c.complex, c.rows_f - c.rows_g);
}

PWLFunction trunc_sub(const PWLFunction& f, const PWLFunction& g) { return sliced(f, g, Pick::PositivePart); }
PWLFunction join(const PWLFunction& f, const PWLFunction& g) { return sliced(f, g, Pick::Larger); }
PWLFunction meet(const PWLFunction& f, const PWLFunction& g) { return sliced(f, g, Pick::Smaller); }

PWLFunction scale(const Integer& k, const PWLFunction& f) {
  IntMatrix rows = f.rows();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) *= k;
  }
  return PWLFunction(f.n(), f.complex_ptr(), std::move(rows));
}

PWLFunction hoop_op(HoopOp op, const PWLFunction& f, const PWLFunction& g, long k) {
  switch (op) {
    case HoopOp::Add: return add(f, g);
    case HoopOp::TruncSub: return trunc_sub(f, g);
    case HoopOp::Join: return join(f, g);
    case HoopOp::Meet: return meet(f, g);
    case HoopOp::NatScale:
      if (k < 0) throw Error(ErrorCode::Unsupported, "natural scaling needs k >= 0");
      return scale(Integer(k), f);
  }
  throw Error(ErrorCode::Unsupported, "unknown hoop operation");
}

StrongUnitResult is_strong_unit(const PWLFunction& f) {
  const auto& c = f.complex();
  std::optional<Rational> lowest;
  for (std::size_t t = 0; t < c.num_top(); ++t) {
    for (int id : c.top_cell(t)) {
      const Rational v = f.value_on(t, c.vertices()[id]);
      if (!lowest || v < *lowest) lowest = v;
    }
  }
  return {*lowest > 0, *lowest};
}

bool equals(const PWLFunction& f, const PWLFunction& g) {
  if (f.n() != g.n()) return false;
  const CommonPieces c = common_pieces(f, g);
  return c.rows_f == c.rows_g;
}

PWLFunction coalesce(const PWLFunction& f) {
  const CellularComplex& c = f.complex();
  const int d = c.ambient_dim();
  if (d > 2 || c.num_top() < 2) return f;

  struct Piece {
    Polytope poly;
    IntRow row;
    Rational volume;
    bool alive = true;
  };
  std::vector<Piece> pieces;
  for (std::size_t t = 0; t < c.num_top(); ++t) {
    pieces.push_back({c.top_polytope(t), f.row(t), c.top_polytope(t).volume(), true});
  }
  std::map<Point, std::set<std::size_t>, PointLess> users;
  for (std::size_t t = 0; t < pieces.size(); ++t) {
    for (const auto& v : pieces[t].poly.vertices()) users[v].insert(t);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < pieces.size(); ++a) {
      if (!pieces[a].alive) continue;
      std::map<std::size_t, int> shared;
      for (const auto& v : pieces[a].poly.vertices()) {
        for (std::size_t b : users[v]) {
          if (b != a) ++shared[b];
        }
      }
      for (const auto& [b, count] : shared) {
        if (count < d || !pieces[b].alive || pieces[b].row != pieces[a].row) continue;
        std::vector<Point> pts = pieces[a].poly.vertices();
        pts.insert(pts.end(), pieces[b].poly.vertices().begin(), pieces[b].poly.vertices().end());
        Polytope merged = Polytope::hull(pts, d);
        const Rational vol = pieces[a].volume + pieces[b].volume;
        if (merged.volume() != vol) continue;
        bool safe = true;
        std::vector<Point> dropped;
        for (const auto& p : pts) {
          const auto& mv = merged.vertices();
          if (std::find(mv.begin(), mv.end(), p) != mv.end()) continue;
          for (std::size_t u : users[p]) safe &= (u == a || u == b);
          dropped.push_back(p);
        }
        if (!safe) continue;
        for (const auto& v : pieces[b].poly.vertices()) users[v].erase(b);
        for (const auto& v : pieces[a].poly.vertices()) users[v].erase(a);
        for (const auto& v : merged.vertices()) users[v].insert(a);
        pieces[a].poly = std::move(merged);
        pieces[a].volume = vol;
        pieces[b].alive = false;
        changed = true;
        break;
      }
    }
  }

  std::vector<Polytope> cells;
  std::vector<IntRow> rows;
  for (auto& p : pieces) {
    if (!p.alive) continue;
    cells.push_back(std::move(p.poly));
    rows.push_back(p.row);
  }
  IntMatrix out(static_cast<Eigen::Index>(rows.size()), f.n());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i];
  return PWLFunction(f.n(), std::make_shared<const CellularComplex>(CellularComplex::from_polytopes(d, cells)),
                     std::move(out));
}

std::set<Integer> unit_value_spectrum(const PWLFunction& g, int bound) {
  if (bound < 1) throw Error(ErrorCode::Unsupported, "bound must be >= 1");
  if (!is_strong_unit(g).strong_unit) throw Error(ErrorCode::NotStrongUnit, "spectrum of a non strong unit");
  const int d = g.n() - 1;
  std::set<Integer> out;
  IntVector coords(d + 1);
  // all primitive vectors (a_1, ..., a_d, b) with 0 <= a_i <= b <= bound
  for (int b = 1; b <= bound; ++b) {
    coords(d) = b;
    std::vector<int> a(d, 0);
    while (true) {
      Integer gval(b);
      for (int i = 0; i < d; ++i) gval = gcd(gval, Integer(a[i]));
      if (gval == 1) {
        for (int i = 0; i < d; ++i) coords(i) = a[i];
        const Point p = dehomogenize(coords);
        const Rational m = eval(g, p) * Rational(b);
        out.insert(bmp::numerator(m));
      }
      int i = 0;
      while (i < d && a[i] == b) a[i++] = 0;
      if (i == d) break;
      ++a[i];
    }
  }
  return out;
}

}  // namespace chaut
