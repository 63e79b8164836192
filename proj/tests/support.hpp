#pragma once

#include <random>
#include <string>

#include "chaut/dynamics.hpp"

namespace chaut::testing {

inline Rational q(long a, long b = 1) { return Rational(a, b); }
inline Point pt(std::initializer_list<Rational> c) { return make_point(c); }

inline IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline IntRow irow(std::initializer_list<long> r) { return imat({r}).row(0); }

inline ComplexPtr share(CellularComplex c) { return std::make_shared<const CellularComplex>(std::move(c)); }

/// Subdivision of [0,1] at the given points, cells in increasing order.
inline ComplexPtr interval_complex(const std::vector<Rational>& xs) {
  std::vector<Point> vs;
  std::vector<std::vector<int>> cells;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vs.push_back(pt({xs[i]}));
    if (i) cells.push_back({static_cast<int>(i - 1), static_cast<int>(i)});
  }
  return share(CellularComplex::from_cells(1, vs, cells));
}

/// Random Farey partition of [0,1] with `count` vertices, by mediant insertion.
inline std::vector<Rational> random_farey(std::mt19937_64& rng, int count) {
  std::vector<std::pair<long, long>> v{{0, 1}, {1, 1}};
  while (static_cast<int>(v.size()) < count) {
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 2);
    const std::size_t i = pick(rng);
    v.insert(v.begin() + static_cast<long>(i) + 1, {v[i].first + v[i + 1].first, v[i].second + v[i + 1].second});
  }
  std::vector<Rational> out;
  for (auto [a, b] : v) out.push_back(Rational(a, b));
  return out;
}

/// Combinatorial isomorphism between two Farey partitions with the same vertex count.
inline CombinatorialIso farey_iso(const std::vector<Rational>& from, const std::vector<Rational>& to, bool reverse) {
  CombinatorialIso iso{interval_complex(from), interval_complex(to), {}};
  const int k = static_cast<int>(from.size());
  for (int i = 0; i < k; ++i) iso.vertex_map.push_back(reverse ? k - 1 - i : i);
  return iso;
}

/// A random certified n = 2 automorphism on 3..8 vertices.
inline CertifiedMap random_interval_automorphism(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(3, 8);
  const int k = size(rng);
  const auto a = random_farey(rng, k);
  const auto b = random_farey(rng, k);
  return from_combinatorial_iso(farey_iso(a, b, std::bernoulli_distribution(0.3)(rng)));
}

/// The reflection x -> 1 - x realized on a random Farey partition.
inline CertifiedMap farey_reflection(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 8);
  const auto a = random_farey(rng, size(rng));
  std::vector<Rational> b;
  for (auto it = a.rbegin(); it != a.rend(); ++it) b.push_back(1 - *it);
  return from_combinatorial_iso(farey_iso(a, b, true));
}

/// Unimodular triangulations of the square: six triangles, corners fixed.
/// Inner vertices 4 and 5 are (1/3,1/3), (1/5,2/5) in the source and (1/2,1/4), (1/3,1/3) in the target.
inline CombinatorialIso square_iso() {
  const std::vector<std::vector<int>> tops{{3, 5, 4}, {0, 1, 4}, {1, 3, 4}, {3, 0, 5}, {0, 4, 5}, {1, 2, 3}};
  const std::vector<Point> corners{pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})};
  auto src = corners;
  src.push_back(pt({q(1, 3), q(1, 3)}));
  src.push_back(pt({q(1, 5), q(2, 5)}));
  auto tgt = corners;
  tgt.push_back(pt({q(1, 2), q(1, 4)}));
  tgt.push_back(pt({q(1, 3), q(1, 3)}));
  return {share(CellularComplex::from_cells(2, src, tops)), share(CellularComplex::from_cells(2, tgt, tops)),
          {0, 1, 2, 3, 4, 5}};
}

inline CombinatorialIso interval_iso() {
  return farey_iso({q(0), q(1, 2), q(2, 3), q(1)}, {q(0), q(1, 3), q(1, 2), q(1)}, false);
}

inline PiecewiseFractionalMap single_cell_map(const IntMatrix& a) {
  const int n = static_cast<int>(a.rows());
  return PiecewiseFractionalMap(n, share(CellularComplex::cube(n - 1)), {a});
}

/// (x, y) -> (1 - y, x).
inline PiecewiseFractionalMap square_rotation() { return single_cell_map(imat({{0, -1, 1}, {1, 0, 0}, {0, 0, 1}})); }

/// Rational point with denominator at most max_den in the cube.
inline Point random_rational_point(std::mt19937_64& rng, int dim, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int b = den(rng);
  std::uniform_int_distribution<int> num(0, b);
  Point p(dim);
  for (int i = 0; i < dim; ++i) p(i) = Rational(num(rng), b);
  return p;
}

/// Grid points k / (m - 1) on [0,1] or the square, about `count` in total.
inline std::vector<Point> rational_grid(int dim, int count) {
  std::vector<Point> out;
  if (dim == 1) {
    for (int k = 0; k < count; ++k) out.push_back(pt({q(k, count - 1)}));
  } else {
    int m = 2;
    while ((m + 1) * (m + 1) <= count) ++m;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) out.push_back(pt({q(i, m - 1), q(j, m - 1)}));
    }
  }
  return out;
}

/// Random term built from generators with +, -., v, ^.
inline PWLFunction random_term(std::mt19937_64& rng, const GeneratorSet& g, int depth) {
  std::uniform_int_distribution<int> leaf(0, static_cast<int>(g.x.size()) - 1);
  if (depth == 0) return g.x[leaf(rng)];
  std::uniform_int_distribution<int> op(0, 4);
  const int which = op(rng);
  if (which == 4) return g.x[leaf(rng)];
  const PWLFunction a = random_term(rng, g, depth - 1);
  const PWLFunction b = random_term(rng, g, depth - 1);
  switch (which) {
    case 0: return add(a, b);
    case 1: return trunc_sub(a, b);
    case 2: return join(a, b);
    default: return meet(a, b);
  }
}

}  // namespace chaut::testing
