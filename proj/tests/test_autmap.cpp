#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace chaut;
using namespace chaut::testing;

namespace {

/// Pointwise agreement of two maps at every grid point.
bool agree_on(const PiecewiseFractionalMap& s, const PiecewiseFractionalMap& t, const std::vector<Point>& grid) {
  for (const auto& p : grid) {
    if (apply(s, p) != apply(t, p)) return false;
  }
  return true;
}

PWLFunction random_strong_unit(std::mt19937_64& rng, int n) {
  const GeneratorSet g = generators(n);
  return add(g.unit, random_term(rng, g, 2));
}

}  // namespace

TEST_CASE("maps from generator images") {
  const auto g2 = generators(2);
  const PiecewiseFractionalMap id = from_generator_images(g2.x);
  for (const auto& p : rational_grid(1, 20)) CHECK(apply(id, p) == p);

  const PWLFunction low = meet(g2.x[0], g2.x[1]);
  const PiecewiseFractionalMap s = from_generator_images({low, trunc_sub(join(g2.x[0], g2.x[1]), low)});
  CHECK(apply(s, pt({q(1, 4)})) == pt({q(1, 3)}));
  CHECK(apply(s, pt({q(1, 2)})) == pt({q(1)}));
  CHECK(s.generator_images().has_value());

  const PiecewiseFractionalMap refl = from_generator_images({g2.x[1], g2.x[0]});
  for (std::size_t c = 0; c < refl.source().num_top(); ++c) CHECK(refl.matrix(c) == imat({{-1, 1}, {0, 1}}));
  CHECK(orientation(refl) == Orientation::Reversing);

  try {
    from_generator_images({g2.x[0], g2.x[0]});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrivialEndomorphism);
  }
}

TEST_CASE("triangulated square automorphism") {
  const CombinatorialIso iso = square_iso();
  const CertifiedMap m = from_combinatorial_iso(iso);
  const std::size_t c1 = 0;  // cell <p4, p6, p5> in 1-based vertex names
  const IntMatrix a1 = imat({{4, 1, -1}, {2, 2, -1}, {7, 3, -2}});
  CHECK(m.map.matrix(c1) == a1);
  for (int d : m.cert.det_per_cell) CHECK(d == 1);
  CHECK(m.cert.orientation == Orientation::Preserving);

  const GeneratorSet g = generators(3);
  const PWLFunction f1 = pullback(m.map, g.x[0]);
  const PWLFunction f2 = pullback(m.map, g.x[1]);
  const PWLFunction fs = pullback(m.map, g.unit);
  const Point inner = pt({q(1, 3), q(1, 3)});
  const Point c = m.map.source().top_polytope(c1).centroid();
  CHECK(eval(f1, c) == 4 * c(0) + c(1) - 1);
  CHECK(eval(f2, c) == 2 * c(0) + 2 * c(1) - 1);
  CHECK(eval(fs, c) == 7 * c(0) + 3 * c(1) - 2);
  CHECK(apply(m.map, inner) == pt({q(1, 2), q(1, 4)}));

  // Matrices reproduce every target vertex from its source vertex.
  for (std::size_t i = 0; i < iso.source->vertices().size(); ++i) {
    CHECK(apply(m.map, iso.source->vertices()[i]) == iso.target->vertices()[iso.vertex_map[i]]);
  }
}

TEST_CASE("Farey interval automorphism") {
  const CertifiedMap m = from_combinatorial_iso(interval_iso());
  REQUIRE(m.map.source().num_top() == 3);
  CHECK(m.map.matrix(0) == imat({{1, 0}, {1, 1}}));
  CHECK(m.map.matrix(1) == imat({{-1, 1}, {-5, 4}}));
  CHECK(m.map.matrix(2) == imat({{2, -1}, {1, 0}}));
  CHECK(m.cert.orientation == Orientation::Preserving);
  CHECK(apply(m.map, pt({q(1, 2)})) == pt({q(1, 3)}));
  CHECK(apply(m.map, apply(m.map, pt({q(1, 2)}))) == pt({q(1, 4)}));

  const PiecewiseFractionalMap inv = invert(m.map);
  for (Rational x : {q(0), q(1, 3), q(1, 2), q(1)}) CHECK(apply(m.map, apply(inv, pt({x}))) == pt({x}));
  std::vector<Rational> breaks;
  for (const auto& v : inv.source().vertices()) breaks.push_back(v(0));
  std::sort(breaks.begin(), breaks.end());
  CHECK(breaks == std::vector<Rational>{q(0), q(1, 3), q(1, 2), q(1)});

  const GeneratorSet g = generators(2);
  const PWLFunction one = pullback(m.map, g.unit);
  const PWLFunction x1 = pullback(m.map, g.x[0]);
  for (Rational x : {q(1, 5), q(3, 5), q(4, 5)}) {
    const Point p = pt({x});
    const Rational u = x <= q(1, 2) ? x + 1 : x <= q(2, 3) ? -5 * x + 4 : x;
    const Rational v = x <= q(1, 2) ? x : x <= q(2, 3) ? 1 - x : 2 * x - 1;
    CHECK(eval(one, p) == u);
    CHECK(eval(x1, p) == v);
  }
}

TEST_CASE("invalid maps are rejected") {
  const MapValidation v = validate_automorphism(single_cell_map(imat({{2, 0}, {0, 1}})));
  CHECK_FALSE(v.ok());
  CHECK_FALSE(v.failures.empty());
  CHECK_THROWS_AS(certify(single_cell_map(imat({{2, 0}, {0, 1}}))), Error);
  CHECK(validate_automorphism(identity_map(3)).ok());
  CHECK(validate_automorphism(square_rotation()).ok());
}

TEST_CASE("Jacobian") {
  const CertifiedMap m = from_combinatorial_iso(interval_iso());
  CHECK(jacobian_det(m.map, pt({q(1, 4)})) == q(16, 25));
  CHECK(jacobian_det(m.map, pt({q(3, 5)})) == 1 / ((-5 * q(3, 5) + 4) * (-5 * q(3, 5) + 4)));
  try {
    jacobian_det(m.map, pt({q(1, 2)}));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OnBoundary);
  }

  // Central differences in exact arithmetic against the symbolic matrix.
  const CertifiedMap sq = from_combinatorial_iso(square_iso());
  const Point c = sq.map.source().top_polytope(0).centroid();
  const RatMatrix j = jacobian_matrix(sq.map, c);
  const Rational h(1, 1000000);
  for (int k = 0; k < 2; ++k) {
    Point plus = c, minus = c;
    plus(k) += h;
    minus(k) -= h;
    const Point diff = (apply(sq.map, plus) - apply(sq.map, minus)) / (2 * h);
    for (int i = 0; i < 2; ++i) CHECK(std::abs((diff(i) - j(i, k)).convert_to<double>()) < 1e-9);
  }
  CHECK(jacobian_det(sq.map, c) == j.determinant());
}

TEST_CASE("orientation and swaps") {
  CHECK(orientation(identity_map(2)) == Orientation::Preserving);
  CHECK(orientation(from_combinatorial_iso(square_iso()).map) == Orientation::Preserving);
  CHECK(orientation(swap_generators(2, 1, 2)) == Orientation::Reversing);
  const PiecewiseFractionalMap sw = swap_generators(3, 1, 2);
  CHECK(sw.matrix(0) == imat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  CHECK(orientation(sw) == Orientation::Reversing);
  CHECK(apply(sw, pt({q(1, 5), q(3, 7)})) == pt({q(3, 7), q(1, 5)}));
  CHECK(validate_automorphism(swap_generators(3, 2, 3)).ok());
  CHECK_THROWS_AS(swap_generators(3, 1, 1), Error);

  const PiecewiseFractionalMap mixed(2, interval_complex({q(0), q(1, 2), q(1)}),
                                     {imat({{1, 0}, {0, 1}}), imat({{-1, 1}, {0, 1}})});
  try {
    orientation(mixed);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MixedOrientation);
  }
}

TEST_CASE("unit-fixing report") {
  const UnitFixingReport id = unit_fixing_report(identity_map(2));
  CHECK(id.all_true());
  CHECK(unit_fixing_report(swap_generators(3, 1, 2)).all_true());
  CHECK(unit_fixing_report(square_rotation()).all_true());

  const UnitFixingReport far = unit_fixing_report(from_combinatorial_iso(interval_iso()).map);
  CHECK(far.all_false());
  CHECK(far.keeps_vertex_dens.witness == "den(1/2) = 2 but den(S(1/2)) = den(1/3) = 3");

  CHECK(unit_fixing_report(from_combinatorial_iso(square_iso()).map).all_false());
  CHECK(unit_fixing_report(identity_map(2), 1).all_true());
}

TEST_CASE("denominator transport") {
  std::mt19937_64 rng(7);
  for (int s = 0; s < 20; ++s) {
    const CertifiedMap m = random_interval_automorphism(rng);
    for (int k = 0; k < 20; ++k) {
      const Point p = random_rational_point(rng, 1, 40);
      CHECK(primitive_homogeneous(apply(m.map, p)).coords == apply_homogeneous(m.map, p));
    }
  }
  const CertifiedMap sq = from_combinatorial_iso(square_iso());
  for (const auto& p : rational_grid(2, 49)) {
    CHECK(primitive_homogeneous(apply(sq.map, p)).coords == apply_homogeneous(sq.map, p));
  }
}

TEST_CASE("round trip through certification") {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 30; ++s) {
    const CertifiedMap m = random_interval_automorphism(rng);
    const MapValidation v = validate_automorphism(m.map);
    REQUIRE(v.ok());
    CHECK(v.cert->det_per_cell == m.cert.det_per_cell);
  }
}

TEST_CASE("pullback keeps strong units") {
  std::mt19937_64 rng(9);
  for (int s = 0; s < 15; ++s) {
    const CertifiedMap m = random_interval_automorphism(rng);
    const PWLFunction u = random_strong_unit(rng, 2);
    REQUIRE(is_strong_unit(u).strong_unit);
    CHECK(is_strong_unit(pullback(m.map, u)).strong_unit);
  }
  const CertifiedMap sq = from_combinatorial_iso(square_iso());
  for (int s = 0; s < 5; ++s) CHECK(is_strong_unit(pullback(sq.map, random_strong_unit(rng, 3))).strong_unit);
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(10);
  const auto grid = rational_grid(1, 100);
  const PiecewiseFractionalMap id = identity_map(2);
  for (int s = 0; s < 10; ++s) {
    const CertifiedMap r = random_interval_automorphism(rng);
    const CertifiedMap a = random_interval_automorphism(rng);
    const CertifiedMap b = random_interval_automorphism(rng);
    CHECK(agree_on(compose(compose(r.map, a.map), b.map), compose(r.map, compose(a.map, b.map)), grid));
    CHECK(agree_on(compose(a.map, invert(a.map)), id, grid));
    CHECK(agree_on(compose(invert(a.map), a.map), id, grid));
    for (const auto& p : grid) CHECK(apply(compose(a.map, b.map), p) == apply(b.map, apply(a.map, p)));
  }
  const CertifiedMap sq = from_combinatorial_iso(square_iso());
  CHECK(agree_on(compose(sq.map, invert(sq.map)), identity_map(3), rational_grid(2, 100)));
}

TEST_CASE("contravariance") {
  std::mt19937_64 rng(11);
  const auto grid = rational_grid(1, 60);
  const GeneratorSet g = generators(2);
  for (int s = 0; s < 8; ++s) {
    const CertifiedMap sm = random_interval_automorphism(rng);
    const CertifiedMap tm = random_interval_automorphism(rng);
    // sigma(tau(x_i)) defines sigma o tau; its dual must be T o S.
    std::vector<PWLFunction> images;
    for (const auto& x : g.x) images.push_back(pullback(sm.map, pullback(tm.map, x)));
    const PiecewiseFractionalMap dual = from_generator_images(images);
    CHECK(agree_on(dual, compose(sm.map, tm.map), grid));
    const PWLFunction f = random_strong_unit(rng, 2);
    CHECK(equals(pullback(compose(sm.map, tm.map), f), pullback(sm.map, pullback(tm.map, f))));
  }
}

TEST_CASE("pullback distinguishes maps") {
  std::mt19937_64 rng(12);
  const GeneratorSet g = generators(2);
  const auto grid = rational_grid(1, 50);
  for (int s = 0; s < 15; ++s) {
    const CertifiedMap a = random_interval_automorphism(rng);
    const CertifiedMap b = random_interval_automorphism(rng);
    const bool same_pullback = equals(pullback(a.map, g.x[0]), pullback(b.map, g.x[0])) &&
                               equals(pullback(a.map, g.x[1]), pullback(b.map, g.x[1]));
    CHECK(same_pullback == agree_on(a.map, b.map, grid));
  }
  const CertifiedMap a = from_combinatorial_iso(interval_iso());
  CHECK(equals(pullback(identity_map(2), g.x[0]), g.x[0]));
  CHECK_FALSE(equals(pullback(a.map, g.x[0]), g.x[0]));
}
