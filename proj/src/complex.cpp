#include <algorithm>
#include <sstream>

#include "chaut/geometry.hpp"

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

}  // namespace

bool in_cube(const Point& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < 0 || p(i) > 1) return false;
  }
  return true;
}

CellularComplex CellularComplex::from_cells(int ambient_dim, std::vector<Point> vertices,
                                            std::vector<std::vector<int>> top_cells) {
  if (ambient_dim < 1) throw Error(ErrorCode::InvalidComplex, "ambient dimension must be >= 1");
  CellularComplex c;
  c.ambient_dim_ = ambient_dim;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].size() != ambient_dim) {
      throw Error(ErrorCode::InvalidComplex, "vertex " + std::to_string(i) + " has wrong dimension");
    }
    c.vertex_index_.emplace(vertices[i], static_cast<int>(i));
  }
  c.vertices_ = std::move(vertices);
  for (const auto& cell : top_cells) {
    if (cell.empty()) throw Error(ErrorCode::InvalidComplex, "empty top cell");
    std::vector<Point> pts;
    for (int id : cell) {
      if (id < 0 || id >= static_cast<int>(c.vertices_.size())) {
        throw Error(ErrorCode::InvalidComplex, "vertex id " + std::to_string(id) + " out of range");
      }
      pts.push_back(c.vertices_[id]);
    }
    c.polytopes_.push_back(Polytope::hull(std::move(pts), ambient_dim));
  }
  c.top_cells_ = std::move(top_cells);
  c.build_lattice();
  return c;
}

CellularComplex CellularComplex::from_polytopes(int ambient_dim, const std::vector<Polytope>& cells) {
  CellularComplex c;
  c.ambient_dim_ = ambient_dim;
  for (const auto& p : cells) {
    std::vector<int> ids;
    for (const auto& v : p.vertices()) {
      auto [it, inserted] = c.vertex_index_.emplace(v, static_cast<int>(c.vertices_.size()));
      if (inserted) c.vertices_.push_back(v);
      ids.push_back(it->second);
    }
    c.top_cells_.push_back(std::move(ids));
  }
  c.polytopes_ = cells;
  c.build_lattice();
  return c;
}

CellularComplex CellularComplex::cube(int ambient_dim) {
  return from_polytopes(ambient_dim, {Polytope::cube(ambient_dim)});
}

void CellularComplex::build_lattice() {
  std::set<std::vector<int>> all;
  std::set<std::pair<std::vector<int>, std::vector<int>>> covers;
  std::map<std::vector<int>, int> dims;
  top_faces_.assign(polytopes_.size(), {});
  vertex_tops_.assign(vertices_.size(), {});
  for (std::size_t t = 0; t < polytopes_.size(); ++t) {
    for (int id : top_cells_[t]) {
      auto& tops = vertex_tops_[id];
      if (tops.empty() || tops.back() != t) tops.push_back(t);
    }
    const Polytope& p = polytopes_[t];
    if (p.empty()) continue;
    std::vector<int> local_to_global;
    for (const auto& v : p.vertices()) local_to_global.push_back(vertex_index_.at(v));
    if (!p.full_dimensional()) {
      std::vector<int> ids = local_to_global;
      std::sort(ids.begin(), ids.end());
      dims[ids] = p.dim();
      all.insert(ids);
      top_faces_[t].insert(ids);
      continue;
    }
    std::vector<std::vector<int>> global;
    for (std::size_t f = 0; f < p.faces().size(); ++f) {
      std::vector<int> ids;
      for (int local : p.faces()[f]) ids.push_back(local_to_global[local]);
      std::sort(ids.begin(), ids.end());
      dims[ids] = p.face_dims()[f];
      all.insert(ids);
      top_faces_[t].insert(ids);
      global.push_back(std::move(ids));
    }
    for (std::size_t a = 0; a < global.size(); ++a) {
      for (std::size_t b = 0; b < global.size(); ++b) {
        if (p.face_dims()[b] != p.face_dims()[a] + 1) continue;
        if (std::includes(global[b].begin(), global[b].end(), global[a].begin(), global[a].end())) {
          covers.emplace(global[a], global[b]);
        }
      }
    }
  }
  std::vector<Face> cells;
  for (const auto& ids : all) cells.push_back(Face{dims[ids], ids});
  std::sort(cells.begin(), cells.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  cells_ = std::move(cells);
  cell_index_.clear();
  for (std::size_t i = 0; i < cells_.size(); ++i) cell_index_[cells_[i].vertices] = static_cast<int>(i);
  incidence_.clear();
  for (const auto& [face, coface] : covers) incidence_.emplace_back(cell_index_[face], cell_index_[coface]);
  std::sort(incidence_.begin(), incidence_.end());
}

std::optional<int> CellularComplex::find_cell(const std::vector<int>& sorted_ids) const {
  auto it = cell_index_.find(sorted_ids);
  if (it == cell_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> CellularComplex::find_vertex(const Point& p) const {
  auto it = vertex_index_.find(p);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

bool CellularComplex::is_face_of_top(const std::vector<int>& sorted_ids, std::size_t top) const {
  return top_faces_[top].count(sorted_ids) > 0;
}

std::size_t locate(const CellularComplex& complex, const Point& p) {
  if (p.size() != complex.ambient_dim() || !in_cube(p)) {
    throw Error(ErrorCode::OutOfDomain, "point " + describe(p) + " is outside the cube");
  }
  for (std::size_t i = 0; i < complex.num_top(); ++i) {
    const Polytope& cell = complex.top_polytope(i);
    if (!cell.full_dimensional()) continue;
    bool inside = true;
    for (Eigen::Index k = 0; k < p.size() && inside; ++k) {
      inside = !(p(k) < cell.lower()(k) || cell.upper()(k) < p(k));
    }
    if (inside && cell.contains(p)) return i;
  }
  throw Error(ErrorCode::OutOfDomain, "point " + describe(p) + " is not covered by the complex");
}

IntMatrix vertex_matrix(const CellularComplex& complex, std::size_t top) {
  const auto& ids = complex.top_cell(top);
  const int n = complex.ambient_dim() + 1;
  IntMatrix m(n, static_cast<Eigen::Index>(ids.size()));
  for (std::size_t j = 0; j < ids.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = primitive_homogeneous(complex.vertices()[ids[j]]).coords;
  }
  return m;
}

UnimodularityResult is_unimodular(const CellularComplex& complex) {
  const int d = complex.ambient_dim();
  for (std::size_t i = 0; i < complex.num_top(); ++i) {
    const auto& ids = complex.top_cell(i);
    const Polytope& p = complex.top_polytope(i);
    if (static_cast<int>(ids.size()) != d + 1 || !p.full_dimensional() ||
        p.vertices().size() != ids.size()) {
      return {false, i, "non-simplex cell " + std::to_string(i)};
    }
    const Integer det = int_det(vertex_matrix(complex, i));
    if (det != 1 && det != -1) {
      return {false, i, "cell " + std::to_string(i) + " has vertex determinant " + det.str()};
    }
  }
  return {true, std::nullopt, ""};
}

bool ValidationReport::has(const std::string& kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_complex(const CellularComplex& complex, bool covers_cube) {
  ValidationReport report;
  auto add = [&](std::string kind, std::string detail) {
    report.violations.push_back({std::move(kind), std::move(detail)});
  };
  const int d = complex.ambient_dim();
  const auto& verts = complex.vertices();

  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (!in_cube(verts[i])) add("outside_cube", "vertex " + std::to_string(i) + " " + describe(verts[i]));
    auto id = complex.find_vertex(verts[i]);
    if (id && *id != static_cast<int>(i)) {
      add("duplicate_vertex", "vertices " + std::to_string(*id) + " and " + std::to_string(i));
    }
  }

  std::vector<bool> usable(complex.num_top(), false);
  for (std::size_t t = 0; t < complex.num_top(); ++t) {
    const auto& ids = complex.top_cell(t);
    const Polytope& p = complex.top_polytope(t);
    if (!p.full_dimensional()) {
      add("degenerate_cell", "top cell " + std::to_string(t) + " has dimension " + std::to_string(p.dim()));
      continue;
    }
    std::vector<int> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        p.vertices().size() != ids.size()) {
      add("redundant_vertex", "top cell " + std::to_string(t) + " lists non-extreme or repeated vertices");
    }
    usable[t] = true;
  }

  // Every cell is generated from a top cell's own face lattice, so closure
  // under faces holds by construction; check that the pieces fit together.
  for (std::size_t a = 0; a < complex.num_top(); ++a) {
    if (!usable[a]) continue;
    const Polytope& pa = complex.top_polytope(a);
    for (std::size_t b = a + 1; b < complex.num_top(); ++b) {
      if (!usable[b]) continue;
      const Polytope& pb = complex.top_polytope(b);
      if (!pa.boxes_overlap(pb)) continue;
      const Polytope meet = intersect(pa, pb);
      if (meet.empty()) continue;
      const std::string pair = std::to_string(a) + " and " + std::to_string(b);
      if (meet.dim() == d) {
        add("overlap", "top cells " + pair + " have intersecting interiors");
        continue;
      }
      std::vector<int> ids;
      bool all_vertices = true;
      for (const auto& v : meet.vertices()) {
        auto id = complex.find_vertex(v);
        if (!id) {
          all_vertices = false;
          break;
        }
        ids.push_back(*id);
      }
      std::sort(ids.begin(), ids.end());
      if (!all_vertices || !complex.is_face_of_top(ids, a) || !complex.is_face_of_top(ids, b)) {
        add("bad_intersection", "top cells " + pair + " do not meet in a common face");
      }
    }
  }

  if (covers_cube) {
    Rational total(0);
    for (std::size_t t = 0; t < complex.num_top(); ++t) {
      if (usable[t]) total += complex.top_polytope(t).volume();
    }
    if (total != 1) add("coverage", "top cells have total volume " + to_string(total) + ", expected 1");
  }
  return report;
}

Overlay overlay(const CellularComplex& a, const CellularComplex& b) {
  const int d = a.ambient_dim();
  if (b.ambient_dim() != d) throw Error(ErrorCode::DimensionMismatch, "overlay of complexes of different dimension");
  std::vector<Polytope> cells;
  Overlay out;
  for (std::size_t i = 0; i < a.num_top(); ++i) {
    const Polytope& pa = a.top_polytope(i);
    for (std::size_t j = 0; j < b.num_top(); ++j) {
      const Polytope& pb = b.top_polytope(j);
      if (!pa.boxes_overlap(pb)) continue;
      Polytope meet = intersect(pa, pb);
      if (!meet.full_dimensional()) continue;
      cells.push_back(std::move(meet));
      out.parent_a.push_back(i);
      out.parent_b.push_back(j);
    }
  }
  out.complex = CellularComplex::from_polytopes(d, cells);
  return out;
}

CellularComplex common_refinement(const CellularComplex& a, const CellularComplex& b) {
  return overlay(a, b).complex;
}

Slicing slice(const CellularComplex& complex, const std::vector<std::optional<HomogForm>>& cuts) {
  const int d = complex.ambient_dim();
  Slicing out;
  std::vector<Polytope> cells;
  for (std::size_t i = 0; i < complex.num_top(); ++i) {
    const Polytope& p = complex.top_polytope(i);
    const auto& cut = cuts[i];
    int side = 0;
    bool split = false;
    if (cut && !cut->isZero()) {
      bool pos = false, neg = false;
      for (const auto& v : p.vertices()) {
        const int s = sign(evaluate(*cut, v));
        pos |= s > 0;
        neg |= s < 0;
      }
      split = pos && neg;
      side = neg ? -1 : (pos ? 1 : 0);
    }
    if (!split) {
      cells.push_back(p);
      out.parent.push_back(i);
      out.side.push_back(side);
      continue;
    }
    cells.push_back(clip(p, *cut));
    out.parent.push_back(i);
    out.side.push_back(1);
    cells.push_back(clip(p, HomogForm(-*cut)));
    out.parent.push_back(i);
    out.side.push_back(-1);
  }
  out.complex = CellularComplex::from_polytopes(d, cells);
  return out;
}

bool same_top_cells(const CellularComplex& a, const CellularComplex& b) {
  auto key = [](const CellularComplex& c) {
    std::vector<std::vector<Point>> cells;
    for (std::size_t i = 0; i < c.num_top(); ++i) {
      auto vs = c.top_polytope(i).vertices();
      std::sort(vs.begin(), vs.end(), PointLess{});
      cells.push_back(std::move(vs));
    }
    std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), PointLess{});
    });
    return cells;
  };
  if (a.ambient_dim() != b.ambient_dim() || a.num_top() != b.num_top()) return false;
  return key(a) == key(b);
}

}  // namespace chaut
