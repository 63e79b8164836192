#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "chaut/geometry.hpp"

namespace chaut {

namespace {

// Integer primitive multiple of a rational form.
HomogForm integral_form(const Vector<Rational>& form) {
  Integer den(1);
  for (Eigen::Index i = 0; i < form.size(); ++i) den = lcm(den, bmp::denominator(form(i)));
  HomogForm h(form.size());
  for (Eigen::Index i = 0; i < form.size(); ++i) {
    h(i) = bmp::numerator(form(i)) * (den / bmp::denominator(form(i)));
  }
  return make_primitive(std::move(h));
}

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

void dedupe(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), PointLess{});
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return a == b; }),
            pts.end());
}

// Andrew's monotone chain on sorted, deduplicated points; drops collinear points.
std::vector<Point> hull2(const std::vector<Point>& pts) {
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Normal form through d points given by primitive homogeneous coordinates
// (rows of m, d x (d+1)), by generalized cross product. Zero if dependent.
HomogForm form_through(const IntMatrix& m) {
  const Eigen::Index cols = m.cols();
  HomogForm h(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    IntMatrix minor(m.rows(), cols - 1);
    for (Eigen::Index c = 0, k = 0; c < cols; ++c) {
      if (c == j) continue;
      minor.col(k++) = m.col(c);
    }
    h(j) = (j % 2 == 0 ? 1 : -1) * int_det(minor);
  }
  return make_primitive(std::move(h));
}

template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Brute-force facets of a full-dimensional point set in dimension d.
std::vector<HomogForm> brute_facets(const std::vector<Point>& pts, int d) {
  std::vector<HomogForm> out;
  std::set<std::vector<std::string>> seen;
  std::vector<IntVector> homog;
  for (const auto& p : pts) homog.push_back(primitive_homogeneous(p).coords);
  for_each_subset(static_cast<int>(pts.size()), d, [&](const std::vector<int>& idx) {
    IntMatrix m(d, d + 1);
    for (int r = 0; r < d; ++r) m.row(r) = homog[idx[r]].transpose();
    HomogForm h = form_through(m);
    if (h.isZero()) return;
    bool pos = false, neg = false;
    for (const auto& v : homog) {
      const int s = sign(Integer(h.dot(v)));
      pos |= s > 0;
      neg |= s < 0;
    }
    if (pos && neg) return;
    if (neg) h = -h;
    std::vector<std::string> key;
    for (Eigen::Index i = 0; i < h.size(); ++i) key.push_back(h(i).str());
    if (seen.insert(key).second) out.push_back(h);
  });
  return out;
}

std::vector<Point> enumerate_vertices(const std::vector<HomogForm>& forms, int d) {
  std::vector<Point> out;
  for_each_subset(static_cast<int>(forms.size()), d, [&](const std::vector<int>& idx) {
    RatMatrix a(d, d);
    Vector<Rational> b(d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) a(r, c) = Rational(forms[idx[r]](c));
      b(r) = -Rational(forms[idx[r]](d));
    }
    if (determinant(a) == 0) return;
    Point x = solve_exact(a, b);
    for (const auto& h : forms) {
      if (evaluate(h, x) < 0) return;
    }
    out.push_back(std::move(x));
  });
  return out;
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

Rational evaluate(const HomogForm& h, const Point& p) {
  Rational s(h(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (h(i) != 0) s += Rational(h(i)) * p(i);
  }
  return s;
}

int affine_dimension(const std::vector<Point>& points) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  RatMatrix diffs(static_cast<Eigen::Index>(points.size() - 1), points[0].size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.row(static_cast<Eigen::Index>(i - 1)) = (points[i] - points[0]).transpose();
  }
  return static_cast<int>(rank_exact(diffs));
}

Polytope Polytope::hull(std::vector<Point> points, int ambient_dim) {
  Polytope p;
  p.ambient_dim_ = ambient_dim;
  dedupe(points);
  if (points.empty()) {
    p.dim_ = -1;
    return p;
  }
  if (ambient_dim == 1) {
    if (points.size() > 1) points = {points.front(), points.back()};
    p.vertices_ = std::move(points);
  } else if (ambient_dim == 2) {
    p.vertices_ = hull2(points);
    if (p.vertices_.size() < 3 && points.size() > 1) {
      // collinear: lexicographic extremes are the segment ends
      p.vertices_ = {points.front(), points.back()};
    }
  } else {
    const int dim = affine_dimension(points);
    if (dim == ambient_dim) {
      p.facets_ = brute_facets(points, ambient_dim);
      for (const auto& v : points) {
        std::vector<HomogForm> tight;
        for (const auto& h : p.facets_) {
          if (evaluate(h, v) == 0) tight.push_back(h);
        }
        if (static_cast<int>(tight.size()) < ambient_dim) continue;
        IntMatrix normals(static_cast<Eigen::Index>(tight.size()), ambient_dim);
        for (std::size_t r = 0; r < tight.size(); ++r) {
          normals.row(static_cast<Eigen::Index>(r)) = tight[r].head(ambient_dim).transpose();
        }
        if (rank_exact(normals) == ambient_dim) p.vertices_.push_back(v);
      }
    } else {
      // lower-dimensional in d >= 3: extreme points are not reduced
      p.vertices_ = std::move(points);
    }
  }
  p.finish();
  return p;
}

Polytope Polytope::cube(int ambient_dim) {
  std::vector<Point> corners;
  for (int mask = 0; mask < (1 << ambient_dim); ++mask) {
    Point c(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) c(i) = (mask >> i) & 1;
    corners.push_back(c);
  }
  return hull(std::move(corners), ambient_dim);
}

void Polytope::finish() {
  dim_ = affine_dimension(vertices_);
  const int d = ambient_dim_;
  lower_ = vertices_.front();
  upper_ = vertices_.front();
  for (const auto& v : vertices_) {
    for (int i = 0; i < d; ++i) {
      if (v(i) < lower_(i)) lower_(i) = v(i);
      if (upper_(i) < v(i)) upper_(i) = v(i);
    }
  }
  if (dim_ != d) return;

  if (d == 1) {
    facets_ = {integral_form(make_point({Rational(1), -vertices_[0](0)})),
               integral_form(make_point({Rational(-1), vertices_[1](0)}))};
  } else if (d == 2) {
    facets_.clear();
    const std::size_t k = vertices_.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Point& a = vertices_[i];
      const Point& b = vertices_[(i + 1) % k];
      Vector<Rational> f(3);
      f(0) = -(b(1) - a(1));
      f(1) = b(0) - a(0);
      f(2) = (b(1) - a(1)) * a(0) - (b(0) - a(0)) * a(1);
      facets_.push_back(integral_form(f));
    }
  }

  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  for (const auto& h : facets_) {
    std::vector<int> on;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (evaluate(h, vertices_[i]) == 0) on.push_back(static_cast<int>(i));
    }
    if (found.insert(on).second) frontier.push_back(on);
  }
  std::vector<std::vector<int>> all(frontier.begin(), frontier.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& a : frontier) {
      for (const auto& b : all) {
        std::vector<int> meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
        if (!meet.empty() && found.insert(meet).second) next.push_back(meet);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<int> whole(vertices_.size());
  std::iota(whole.begin(), whole.end(), 0);
  all.push_back(whole);

  std::vector<std::pair<int, std::vector<int>>> sorted;
  for (auto& f : all) {
    std::vector<Point> pts;
    for (int i : f) pts.push_back(vertices_[i]);
    sorted.emplace_back(affine_dimension(pts), std::move(f));
  }
  std::sort(sorted.begin(), sorted.end());
  faces_.clear();
  face_dims_.clear();
  for (auto& [dim, f] : sorted) {
    face_dims_.push_back(dim);
    faces_.push_back(std::move(f));
  }
}

bool Polytope::contains(const Point& p) const {
  if (!full_dimensional()) {
    throw Error(ErrorCode::Unsupported, "point containment needs a full-dimensional cell");
  }
  for (const auto& h : facets_) {
    if (evaluate(h, p) < 0) return false;
  }
  return true;
}

bool Polytope::contains_interior(const Point& p) const {
  if (!full_dimensional()) return false;
  for (const auto& h : facets_) {
    if (evaluate(h, p) <= 0) return false;
  }
  return true;
}

bool Polytope::boxes_overlap(const Polytope& other) const {
  for (int i = 0; i < ambient_dim_; ++i) {
    if (upper_(i) < other.lower_(i) || other.upper_(i) < lower_(i)) return false;
  }
  return true;
}

Point Polytope::centroid() const {
  Point c = Point::Zero(ambient_dim_);
  for (const auto& v : vertices_) c += v;
  return c / Rational(static_cast<long>(vertices_.size()));
}

std::vector<std::vector<int>> triangulate(const Polytope& p) {
  if (!p.full_dimensional()) {
    throw Error(ErrorCode::Unsupported, "triangulate needs a full-dimensional polytope");
  }
  const auto& faces = p.faces();
  const auto& dims = p.face_dims();
  // pulling triangulation from the lowest vertex, face by face
  std::function<std::vector<std::vector<int>>(std::size_t)> rec = [&](std::size_t f) {
    std::vector<std::vector<int>> out;
    if (dims[f] == 0) {
      out.push_back({faces[f][0]});
      return out;
    }
    const int apex = faces[f][0];
    for (std::size_t g = 0; g < faces.size(); ++g) {
      if (dims[g] != dims[f] - 1 || !is_subset(faces[g], faces[f])) continue;
      if (std::binary_search(faces[g].begin(), faces[g].end(), apex)) continue;
      for (auto s : rec(g)) {
        s.push_back(apex);
        out.push_back(std::move(s));
      }
    }
    return out;
  };
  return rec(faces.size() - 1);
}

Rational Polytope::volume() const {
  if (!full_dimensional()) return Rational(0);
  const int d = ambient_dim_;
  Rational total(0);
  Integer factorial(1);
  for (int i = 2; i <= d; ++i) factorial *= i;
  for (const auto& s : triangulate(*this)) {
    RatMatrix m(d, d);
    for (int i = 0; i < d; ++i) m.col(i) = vertices_[s[i + 1]] - vertices_[s[0]];
    total += bmp::abs(determinant(m));
  }
  return total / Rational(factorial);
}

Polytope clip(const Polytope& p, const HomogForm& h) {
  if (p.empty()) return p;
  const int d = p.ambient_dim();
  const auto& vs = p.vertices();
  std::vector<Rational> s;
  s.reserve(vs.size());
  bool any_neg = false;
  for (const auto& v : vs) {
    s.push_back(evaluate(h, v));
    any_neg |= s.back() < 0;
  }
  if (!any_neg) return p;

  if (d <= 2) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (s[i] >= 0) pts.push_back(vs[i]);
    }
    const std::size_t k = vs.size();
    const std::size_t edges = k < 2 ? 0 : (k == 2 ? 1 : k);
    for (std::size_t i = 0; i < edges; ++i) {
      const std::size_t j = (i + 1) % k;
      if ((s[i] < 0 && s[j] > 0) || (s[i] > 0 && s[j] < 0)) {
        const Rational t = s[i] / (s[i] - s[j]);
        pts.push_back(vs[i] + (vs[j] - vs[i]) * t);
      }
    }
    return Polytope::hull(std::move(pts), d);
  }

  if (!p.full_dimensional()) {
    throw Error(ErrorCode::Unsupported, "clipping a lower-dimensional cell in dimension >= 3");
  }
  std::vector<HomogForm> forms = p.facets();
  forms.push_back(h);
  return Polytope::hull(enumerate_vertices(forms, d), d);
}

Polytope intersect(const Polytope& a, const Polytope& b) {
  const int d = a.ambient_dim();
  if (a.empty() || b.empty() || !a.boxes_overlap(b)) return Polytope::hull({}, d);
  if (d == 1) {
    const Rational lo = std::max(a.lower()(0), b.lower()(0));
    const Rational hi = std::min(a.upper()(0), b.upper()(0));
    if (hi < lo) return Polytope::hull({}, d);
    return Polytope::hull({make_point({lo}), make_point({hi})}, d);
  }
  if (d == 2) {
    const Polytope* base = &a;
    const Polytope* cutter = &b;
    if (!cutter->full_dimensional()) std::swap(base, cutter);
    if (!cutter->full_dimensional()) {
      throw Error(ErrorCode::Unsupported, "intersection of two lower-dimensional cells");
    }
    Polytope out = *base;
    for (const auto& h : cutter->facets()) {
      out = clip(out, h);
      if (out.empty()) break;
    }
    return out;
  }
  if (!a.full_dimensional() || !b.full_dimensional()) {
    throw Error(ErrorCode::Unsupported, "intersection of lower-dimensional cells in dimension >= 3");
  }
  std::vector<HomogForm> forms = a.facets();
  forms.insert(forms.end(), b.facets().begin(), b.facets().end());
  return Polytope::hull(enumerate_vertices(forms, d), d);
}

}  // namespace chaut
