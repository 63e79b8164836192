#include <algorithm>
#include <random>

#include "chaut/autmap.hpp"

namespace chaut {

namespace {

std::string describe(const Point& p) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += to_string(p(i));
  }
  return s + ")";
}

IntMatrix identity_matrix(int n) { return IntMatrix::Identity(n, n); }

IntVector image_of_vertex(const PiecewiseFractionalMap& map, std::size_t cell, const Point& v) {
  return map.matrix(cell) * primitive_homogeneous(v).coords;
}

// Source cell c of s, clipped to the preimage of target cell k.
struct PulledCells {
  std::vector<Polytope> cells;
  std::vector<std::size_t> source_parent;
  std::vector<std::size_t> target_parent;
};

PulledCells pull_through(const PiecewiseFractionalMap& s, const CellularComplex& target) {
  const int d = s.n() - 1;
  if (target.ambient_dim() != d) throw Error(ErrorCode::DimensionMismatch, "complex dimension mismatch");
  PulledCells out;
  for (std::size_t c = 0; c < s.source().num_top(); ++c) {
    const Polytope& cell = s.source().top_polytope(c);
    const IntMatrix at = s.matrix(c).transpose();
    std::vector<Point> images;
    for (const auto& v : cell.vertices()) images.push_back(dehomogenize(image_of_vertex(s, c, v)));
    const Polytope image = Polytope::hull(images, d);
    for (std::size_t k = 0; k < target.num_top(); ++k) {
      const Polytope& tk = target.top_polytope(k);
      if (!image.boxes_overlap(tk)) continue;
      Polytope piece = cell;
      for (const auto& h : tk.facets()) {
        piece = clip(piece, HomogForm(at * h));
        if (piece.empty() || !piece.full_dimensional()) break;
      }
      if (piece.empty() || !piece.full_dimensional()) continue;
      out.cells.push_back(std::move(piece));
      out.source_parent.push_back(c);
      out.target_parent.push_back(k);
    }
  }
  return out;
}

std::vector<Point> interior_samples(const Polytope& cell) {
  // d+1 affinely independent interior points: a shrunken copy of one simplex.
  const auto simplex = triangulate(cell).front();
  const int d = cell.ambient_dim();
  Point c = Point::Zero(d);
  for (int id : simplex) c += cell.vertices()[id];
  c /= Rational(static_cast<long>(simplex.size()));
  std::vector<Point> pts;
  for (int id : simplex) pts.push_back((c * Rational(2) + cell.vertices()[id]) / Rational(3));
  return pts;
}

}  // namespace

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Preserving: return "preserving";
    case Orientation::Reversing: return "reversing";
    case Orientation::Mixed: return "mixed";
  }
  return "mixed";
}

PiecewiseFractionalMap::PiecewiseFractionalMap(int n, ComplexPtr source, std::vector<IntMatrix> matrices,
                                               std::optional<std::vector<PWLFunction>> generator_images)
    : n_(n), source_(std::move(source)), matrices_(std::move(matrices)), images_(std::move(generator_images)) {
  if (n_ < 2 || source_->ambient_dim() != n_ - 1) {
    throw Error(ErrorCode::DimensionMismatch, "source complex must have dimension n - 1");
  }
  if (matrices_.size() != source_->num_top()) {
    throw Error(ErrorCode::DimensionMismatch, "need one matrix per top cell");
  }
  for (const auto& m : matrices_) {
    if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorCode::DimensionMismatch, "matrices must be n x n");
  }
}

PiecewiseFractionalMap identity_map(int n) {
  return PiecewiseFractionalMap(n, std::make_shared<const CellularComplex>(CellularComplex::cube(n - 1)),
                                {identity_matrix(n)});
}

PiecewiseFractionalMap from_generator_images(const std::vector<PWLFunction>& images) {
  const int n = static_cast<int>(images.size());
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "need n >= 2 generator images");
  for (const auto& f : images) {
    if (f.n() != n) throw Error(ErrorCode::DimensionMismatch, "generator image over the wrong n");
    if (!f.in_positive_cone()) throw Error(ErrorCode::OutOfCone, "generator image is not in the positive cone");
  }
  PWLFunction top = images[0];
  for (int i = 1; i + 1 < n; ++i) top = join(top, images[i]);
  const PWLFunction sharp = add(images[n - 1], top);
  if (!is_strong_unit(sharp).strong_unit) {
    throw Error(ErrorCode::TrivialEndomorphism, "f_sharp vanishes somewhere on the cube");
  }

  // Refine until every f_1 ... f_{n-1}, f_sharp is affine on each cell.
  std::vector<PWLFunction> parts(images.begin(), images.end() - 1);
  parts.push_back(sharp);
  ComplexPtr complex = parts[0].complex_ptr();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].complex_ptr() != complex) {
      complex = std::make_shared<const CellularComplex>(common_refinement(*complex, parts[i].complex()));
    }
  }
  std::vector<IntMatrix> matrices;
  for (std::size_t c = 0; c < complex->num_top(); ++c) {
    const Point inner = complex->top_polytope(c).centroid();
    IntMatrix a(n, n);
    for (int t = 0; t < n; ++t) {
      const PWLFunction& f = parts[t];
      a.row(t) = f.row(locate(f.complex(), inner));
    }
    matrices.push_back(std::move(a));
  }
  return PiecewiseFractionalMap(n, complex, std::move(matrices), images);
}

void check_iso(const CombinatorialIso& iso) {
  const auto& src = *iso.source;
  const auto& tgt = *iso.target;
  if (src.ambient_dim() != tgt.ambient_dim()) throw Error(ErrorCode::InvalidIso, "complexes differ in dimension");
  if (iso.vertex_map.size() != src.vertices().size() || src.vertices().size() != tgt.vertices().size()) {
    throw Error(ErrorCode::InvalidIso, "vertex counts do not match");
  }
  std::vector<bool> hit(tgt.vertices().size(), false);
  for (int v : iso.vertex_map) {
    if (v < 0 || v >= static_cast<int>(hit.size()) || hit[v]) {
      throw Error(ErrorCode::InvalidIso, "vertex map is not a bijection");
    }
    hit[v] = true;
  }
  if (src.num_top() != tgt.num_top()) throw Error(ErrorCode::InvalidIso, "top cell counts differ");
  std::set<std::vector<int>> target_tops;
  for (std::size_t t = 0; t < tgt.num_top(); ++t) {
    auto ids = tgt.top_cell(t);
    std::sort(ids.begin(), ids.end());
    target_tops.insert(ids);
  }
  for (std::size_t s = 0; s < src.num_top(); ++s) {
    std::vector<int> ids;
    for (int v : src.top_cell(s)) ids.push_back(iso.vertex_map[v]);
    std::sort(ids.begin(), ids.end());
    if (!target_tops.count(ids)) {
      throw Error(ErrorCode::InvalidIso, "top cell " + std::to_string(s) + " is not sent to a top cell");
    }
  }
}

MapValidation validate_automorphism(const PiecewiseFractionalMap& map) {
  MapValidation out;
  const auto& src = map.source();
  const int d = src.ambient_dim();

  std::vector<int> dets;
  for (std::size_t c = 0; c < src.num_top(); ++c) {
    const Integer det = int_det(map.matrix(c));
    if (det != 1 && det != -1) {
      out.failures.push_back("cell " + std::to_string(c) + ": det = " + det.str());
      dets.push_back(0);
    } else {
      dets.push_back(det == 1 ? 1 : -1);
    }
  }
  const bool same_sign = std::all_of(dets.begin(), dets.end(), [&](int s) { return s == dets.front(); });
  if (!same_sign && out.failures.empty()) out.failures.push_back("cell determinants have mixed signs");

  std::vector<Point> images(src.vertices().size());
  for (std::size_t v = 0; v < src.vertices().size(); ++v) {
    const auto& tops = src.tops_containing(static_cast<int>(v));
    if (tops.empty()) continue;
    const IntVector first = image_of_vertex(map, tops[0], src.vertices()[v]);
    if (first(d) <= 0) {
      out.failures.push_back("vertex " + describe(src.vertices()[v]) + " has non-positive image denominator");
      continue;
    }
    for (std::size_t k = 1; k < tops.size(); ++k) {
      if (image_of_vertex(map, tops[k], src.vertices()[v]) != first) {
        out.failures.push_back("cells " + std::to_string(tops[0]) + " and " + std::to_string(tops[k]) +
                               " disagree at vertex " + describe(src.vertices()[v]));
      }
    }
    images[v] = dehomogenize(first);
  }
  if (!out.failures.empty()) return out;

  std::vector<std::vector<int>> tops;
  for (std::size_t c = 0; c < src.num_top(); ++c) tops.push_back(src.top_cell(c));
  std::set<Point, PointLess> distinct(images.begin(), images.end());
  if (distinct.size() != images.size()) {
    out.failures.push_back("two vertices have the same image");
    return out;
  }
  auto image = std::make_shared<const CellularComplex>(CellularComplex::from_cells(d, images, tops));
  const ValidationReport report = validate_complex(*image, true);
  for (const auto& v : report.violations) out.failures.push_back("image complex: " + v.kind + " " + v.detail);
  if (!out.failures.empty()) return out;

  AutomorphismCert cert;
  cert.det_per_cell = dets;
  cert.image_complex = image;
  cert.bijective = true;
  cert.orientation = dets.front() == 1 ? Orientation::Preserving : Orientation::Reversing;
  out.cert = std::move(cert);
  return out;
}

AutomorphismCert certify(const PiecewiseFractionalMap& map) {
  MapValidation v = validate_automorphism(map);
  if (!v.ok()) throw Error(ErrorCode::InvalidMap, v.failures.front());
  return *v.cert;
}

CertifiedMap from_combinatorial_iso(const CombinatorialIso& iso) {
  check_iso(iso);
  for (const auto* c : {iso.source.get(), iso.target.get()}) {
    const UnimodularityResult u = is_unimodular(*c);
    if (!u.unimodular) throw Error(ErrorCode::NotUnimodular, u.witness);
  }
  const auto& src = *iso.source;
  const auto& tgt = *iso.target;
  const int n = src.ambient_dim() + 1;
  std::vector<IntMatrix> matrices;
  for (std::size_t t = 0; t < src.num_top(); ++t) {
    const IntMatrix b = vertex_matrix(src, t);
    IntMatrix c(n, n);
    const auto& ids = src.top_cell(t);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      c.col(static_cast<Eigen::Index>(j)) = primitive_homogeneous(tgt.vertices()[iso.vertex_map[ids[j]]]).coords;
    }
    matrices.push_back(solve_right(c, b));
  }
  PiecewiseFractionalMap map(n, iso.source, std::move(matrices));
  AutomorphismCert cert = certify(map);
  return {std::move(map), std::move(cert)};
}

IntVector apply_homogeneous(const PiecewiseFractionalMap& map, const Point& p) {
  const std::size_t cell = locate(map.source(), p);
  IntVector v = map.matrix(cell) * primitive_homogeneous(p).coords;
  if (v(map.n() - 1) <= 0) {
    throw Error(ErrorCode::NonPositiveDenominator, "image of " + describe(p) + " has last coordinate " +
                                                       v(map.n() - 1).str());
  }
  return v;
}

Point apply(const PiecewiseFractionalMap& map, const Point& p) { return dehomogenize(apply_homogeneous(map, p)); }

Rational f_sharp_at(const PiecewiseFractionalMap& map, std::size_t cell, const Point& p) {
  const IntMatrix& a = map.matrix(cell);
  const int d = map.n() - 1;
  Rational s(a(d, d));
  for (int j = 0; j < d; ++j) s += Rational(a(d, j)) * p(j);
  return s;
}

PiecewiseFractionalMap compose(const PiecewiseFractionalMap& s, const PiecewiseFractionalMap& t) {
  if (s.n() != t.n()) throw Error(ErrorCode::DimensionMismatch, "compose: different n");
  PulledCells pulled = pull_through(s, t.source());
  std::vector<IntMatrix> matrices;
  for (std::size_t i = 0; i < pulled.cells.size(); ++i) {
    matrices.push_back(t.matrix(pulled.target_parent[i]) * s.matrix(pulled.source_parent[i]));
  }
  auto complex = std::make_shared<const CellularComplex>(CellularComplex::from_polytopes(s.n() - 1, pulled.cells));
  return PiecewiseFractionalMap(s.n(), complex, std::move(matrices));
}

PiecewiseFractionalMap invert(const PiecewiseFractionalMap& s) {
  const AutomorphismCert cert = certify(s);
  std::vector<IntMatrix> matrices;
  for (const auto& a : s.matrices()) matrices.push_back(unimodular_inverse(a));
  return PiecewiseFractionalMap(s.n(), cert.image_complex, std::move(matrices));
}

PWLFunction pullback(const PiecewiseFractionalMap& map, const PWLFunction& f) {
  if (f.n() != map.n()) throw Error(ErrorCode::DimensionMismatch, "pullback: different n");
  PulledCells pulled = pull_through(map, f.complex());
  IntMatrix rows(static_cast<Eigen::Index>(pulled.cells.size()), map.n());
  for (std::size_t i = 0; i < pulled.cells.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) = f.row(pulled.target_parent[i]) * map.matrix(pulled.source_parent[i]);
  }
  auto complex = std::make_shared<const CellularComplex>(CellularComplex::from_polytopes(map.n() - 1, pulled.cells));
  return PWLFunction(map.n(), complex, std::move(rows));
}

namespace {

std::size_t interior_cell(const PiecewiseFractionalMap& map, const Point& p) {
  const auto& src = map.source();
  if (p.size() != src.ambient_dim() || !in_cube(p)) {
    throw Error(ErrorCode::OutOfDomain, "point " + describe(p) + " is outside the cube");
  }
  for (std::size_t c = 0; c < src.num_top(); ++c) {
    if (src.top_polytope(c).contains_interior(p)) return c;
  }
  throw Error(ErrorCode::OnBoundary, "point " + describe(p) + " is not interior to a top cell");
}

}  // namespace

RatMatrix jacobian_matrix(const PiecewiseFractionalMap& map, const Point& p) {
  const std::size_t cell = interior_cell(map, p);
  const IntMatrix& a = map.matrix(cell);
  const int d = map.n() - 1;
  const Vector<Rational> x = lift(p);
  const RatMatrix ar = a.cast<Rational>();
  const Rational den = ar.row(d).dot(x);
  RatMatrix j(d, d);
  for (int i = 0; i < d; ++i) {
    const Rational num = ar.row(i).dot(x);
    for (int k = 0; k < d; ++k) j(i, k) = (ar(i, k) * den - num * ar(d, k)) / (den * den);
  }
  return j;
}

Rational jacobian_det(const PiecewiseFractionalMap& map, const Point& p) {
  const Rational symbolic = determinant(jacobian_matrix(map, p));
  const std::size_t cell = interior_cell(map, p);
  const Rational sharp = f_sharp_at(map, cell, p);
  Rational power(1);
  for (int i = 0; i < map.n(); ++i) power *= sharp;
  const Rational closed = Rational(int_det(map.matrix(cell))) / power;
  if (symbolic != closed) {
    throw Error(ErrorCode::EquivalenceViolation, "Jacobian " + to_string(symbolic) + " differs from det(A)/f^n = " +
                                                     to_string(closed) + " at " + describe(p));
  }
  return symbolic;
}

bool UnitFixingReport::all_true() const {
  return fixes_unit.holds && keeps_denominators.holds && keeps_vertex_dens.holds && last_rows_trivial.holds &&
         unit_jacobian.holds;
}

bool UnitFixingReport::all_false() const {
  return !fixes_unit.holds && !keeps_denominators.holds && !keeps_vertex_dens.holds && !last_rows_trivial.holds &&
         !unit_jacobian.holds;
}

UnitFixingReport unit_fixing_report(const PiecewiseFractionalMap& map, std::uint64_t seed, int samples,
                                    int max_den) {
  certify(map);
  const int n = map.n();
  const int d = n - 1;
  const auto& src = map.source();
  UnitFixingReport r;

  {
    const PWLFunction unit = PWLFunction::constant(n, 1);
    const PWLFunction image = pullback(map, unit);
    r.fixes_unit.holds = equals(image, unit);
    if (!r.fixes_unit.holds) {
      for (const auto& v : image.complex().vertices()) {
        const Rational val = eval(image, v);
        if (val != 1) {
          r.fixes_unit.witness = "sigma(1l)" + describe(v) + " = " + to_string(val);
          break;
        }
      }
    }
  }

  auto den_witness = [&](const Point& p, ConditionResult& out) {
    const Integer before = denominator(p);
    const Integer after = apply_homogeneous(map, p)(d);
    if (before != after) {
      out.holds = false;
      out.witness = "den" + describe(p) + " = " + before.str() + " but den(S" + describe(p) + ") = den" +
                    describe(apply(map, p)) + " = " + after.str();
      return false;
    }
    return true;
  };

  {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> den_dist(1, max_den);
    r.keeps_denominators.holds = true;
    for (int s = 0; s < samples; ++s) {
      const int b = den_dist(rng);
      std::uniform_int_distribution<int> num_dist(0, b);
      Point p(d);
      for (int i = 0; i < d; ++i) p(i) = Rational(num_dist(rng), b);
      if (!den_witness(p, r.keeps_denominators)) break;
    }
  }

  r.keeps_vertex_dens.holds = true;
  for (const auto& v : src.vertices()) {
    if (!den_witness(v, r.keeps_vertex_dens)) break;
  }

  r.last_rows_trivial.holds = true;
  for (std::size_t c = 0; c < src.num_top(); ++c) {
    const IntMatrix& a = map.matrix(c);
    bool trivial = a(d, d) == 1;
    for (int j = 0; j < d; ++j) trivial &= a(d, j) == 0;
    if (!trivial) {
      r.last_rows_trivial.holds = false;
      std::string row;
      for (int j = 0; j < n; ++j) row += (j ? " " : "") + a(d, j).str();
      r.last_rows_trivial.witness = "cell " + std::to_string(c) + " has last row (" + row + ")";
      break;
    }
  }

  // |J| is f_sharp^{-n} with f_sharp affine and positive on the cell, so
  // |J| = 1 on the cell iff it holds at d+1 affinely independent points.
  r.unit_jacobian.holds = true;
  for (std::size_t c = 0; c < src.num_top() && r.unit_jacobian.holds; ++c) {
    for (const auto& p : interior_samples(src.top_polytope(c))) {
      const Rational j = bmp::abs(jacobian_det(map, p));
      if (j != 1) {
        r.unit_jacobian.holds = false;
        r.unit_jacobian.witness = "|J" + describe(p) + "| = " + to_string(j);
        break;
      }
    }
  }

  if (!r.all_true() && !r.all_false()) {
    throw Error(ErrorCode::EquivalenceViolation, "unit-fixing conditions disagree");
  }
  return r;
}

Orientation orientation(const PiecewiseFractionalMap& map) {
  int common = 0;
  for (const auto& a : map.matrices()) {
    const int s = sign(int_det(a));
    if (s == 0 || (common != 0 && s != common)) {
      throw Error(ErrorCode::MixedOrientation, "cells disagree in orientation");
    }
    common = s;
  }
  return common > 0 ? Orientation::Preserving : Orientation::Reversing;
}

PiecewiseFractionalMap swap_generators(int n, int i, int j) {
  if (n < 2 || i < 1 || j < 1 || i > n || j > n || i == j) {
    throw Error(ErrorCode::Unsupported, "swap_generators needs distinct 1 <= i, j <= n");
  }
  if (i < n && j < n) {
    IntMatrix p = identity_matrix(n);
    p.row(i - 1).swap(p.row(j - 1));
    return PiecewiseFractionalMap(n, std::make_shared<const CellularComplex>(CellularComplex::cube(n - 1)), {p});
  }
  GeneratorSet gens = generators(n);
  std::swap(gens.x[i - 1], gens.x[j - 1]);
  return from_generator_images(gens.x);
}

}  // namespace chaut
