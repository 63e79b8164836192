#include <algorithm>
#include <cmath>
#include <random>

#include "chaut/dynamics.hpp"

namespace chaut {

namespace {

double to_double(const Integer& z) { return z.convert_to<double>(); }
double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

FloatMap::FloatMap(const PiecewiseFractionalMap& map) : dim_(map.n() - 1) {
  const auto& src = map.source();
  for (std::size_t c = 0; c < src.num_top(); ++c) {
    const Polytope& cell = src.top_polytope(c);
    std::vector<std::vector<double>> forms;
    for (const auto& h : cell.facets()) {
      std::vector<double> f(h.size());
      for (Eigen::Index i = 0; i < h.size(); ++i) f[i] = to_double(h(i));
      forms.push_back(std::move(f));
    }
    facets_.push_back(std::move(forms));
    std::vector<double> lo(dim_), hi(dim_);
    for (int i = 0; i < dim_; ++i) {
      lo[i] = to_double(cell.lower()(i));
      hi[i] = to_double(cell.upper()(i));
    }
    lower_.push_back(std::move(lo));
    upper_.push_back(std::move(hi));
    const IntMatrix& a = map.matrix(c);
    std::vector<std::vector<double>> m(a.rows(), std::vector<double>(a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) m[i][j] = to_double(a(i, j));
    }
    matrices_.push_back(std::move(m));
  }
}

std::size_t FloatMap::locate(const FPoint& p) const {
  std::size_t best = 0;
  double best_slack = -INFINITY;
  for (std::size_t c = 0; c < facets_.size(); ++c) {
    double slack = INFINITY;
    for (int i = 0; i < dim_; ++i) {
      slack = std::min({slack, p[i] - lower_[c][i], upper_[c][i] - p[i]});
    }
    for (const auto& f : facets_[c]) {
      double v = f[dim_];
      for (int i = 0; i < dim_; ++i) v += f[i] * p[i];
      slack = std::min(slack, v);
    }
    if (slack >= 0) return c;
    if (slack > best_slack) {
      best_slack = slack;
      best = c;
    }
  }
  return best;
}

FPoint FloatMap::operator()(const FPoint& p) const {
  const auto& a = matrices_[locate(p)];
  std::vector<double> v(dim_ + 1, 0.0);
  for (int i = 0; i <= dim_; ++i) {
    v[i] = a[i][dim_];
    for (int j = 0; j < dim_; ++j) v[i] += a[i][j] * p[j];
  }
  if (!(v[dim_] > 0)) throw Error(ErrorCode::NonPositiveDenominator, "float image has non-positive denominator");
  FPoint out(dim_);
  for (int i = 0; i < dim_; ++i) {
    const double x = v[i] / v[dim_];
    if (x < -kClampTolerance || x > 1 + kClampTolerance || std::isnan(x)) {
      throw Error(ErrorCode::OutOfDomain, "float orbit left the cube: " + std::to_string(x));
    }
    out[i] = std::clamp(x, 0.0, 1.0);
  }
  return out;
}

FPoint to_floats(const Point& p) {
  FPoint out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = to_double(p(i));
  return out;
}

FPoint random_point(std::uint64_t seed, int dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FPoint p(dim);
  for (auto& x : p) x = u(rng);
  return p;
}

OrbitRecord orbit(const PiecewiseFractionalMap& map, const Point& p0, std::size_t steps, Mode mode) {
  if (mode == Mode::Float) return orbit(FloatMap(map), to_floats(p0), steps);
  OrbitRecord r;
  r.mode = Mode::Exact;
  r.exact.reserve(steps + 1);
  r.exact.push_back(p0);
  for (std::size_t k = 0; k < steps; ++k) r.exact.push_back(apply(map, r.exact.back()));
  return r;
}

OrbitRecord orbit(const FloatMap& map, const FPoint& p0, std::size_t steps) {
  if (static_cast<int>(p0.size()) != map.dim()) throw Error(ErrorCode::DimensionMismatch, "start point dimension");
  for (double x : p0) {
    if (!(x >= 0 && x <= 1)) throw Error(ErrorCode::OutOfDomain, "start point outside the cube");
  }
  OrbitRecord r;
  r.mode = Mode::Float;
  r.approx.reserve(steps + 1);
  r.approx.push_back(p0);
  for (std::size_t k = 0; k < steps; ++k) r.approx.push_back(map(r.approx.back()));
  return r;
}

EmpiricalMeasure empty_measure(int dim, int bins) {
  if (dim < 1 || bins < 1) throw Error(ErrorCode::Unsupported, "need dim >= 1 and bins >= 1");
  EmpiricalMeasure m;
  m.dim = dim;
  m.bins = bins;
  std::size_t cells = 1;
  for (int i = 0; i < dim; ++i) cells *= static_cast<std::size_t>(bins);
  m.counts.assign(cells, 0);
  return m;
}

void add_sample(EmpiricalMeasure& m, const FPoint& p) {
  std::size_t index = 0;
  for (int i = 0; i < m.dim; ++i) {
    const int b = std::clamp(static_cast<int>(std::floor(p[i] * m.bins)), 0, m.bins - 1);
    index = index * static_cast<std::size_t>(m.bins) + static_cast<std::size_t>(b);
  }
  ++m.counts[index];
  ++m.total;
}

double EmpiricalMeasure::corner_mass() const {
  std::set<std::size_t> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    std::size_t index = 0;
    for (int i = 0; i < dim; ++i) {
      const std::size_t b = (mask >> (dim - 1 - i)) & 1 ? static_cast<std::size_t>(bins - 1) : 0;
      index = index * static_cast<std::size_t>(bins) + b;
    }
    corners.insert(index);
  }
  double s = 0;
  for (std::size_t c : corners) s += mass(c);
  return s;
}

EmpiricalMeasure birkhoff_histogram(const FloatMap& map, const FPoint& p0, std::size_t steps, int bins,
                                    std::size_t burn_in) {
  EmpiricalMeasure m = empty_measure(map.dim(), bins);
  FPoint p = p0;
  for (std::size_t k = 0; k < burn_in; ++k) p = map(p);
  for (std::size_t k = 0; k < steps; ++k) {
    add_sample(m, p);
    p = map(p);
  }
  return m;
}

EmpiricalMeasure pushforward_histogram(const FloatMap& map, std::size_t starts, std::size_t steps,
                                       std::uint64_t seed, int bins) {
  EmpiricalMeasure m = empty_measure(map.dim(), bins);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FPoint p(map.dim());
  for (std::size_t s = 0; s < starts; ++s) {
    for (auto& x : p) x = u(rng);
    for (std::size_t k = 0; k < steps; ++k) p = map(p);
    add_sample(m, p);
  }
  return m;
}

double total_variation(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.counts.size() != b.counts.size()) throw Error(ErrorCode::DimensionMismatch, "histograms differ in shape");
  double s = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) s += std::abs(a.mass(i) - b.mass(i));
  return s / 2;
}

double distance_to_uniform(const EmpiricalMeasure& m) {
  const double u = 1.0 / static_cast<double>(m.counts.size());
  double s = 0;
  for (std::size_t i = 0; i < m.counts.size(); ++i) s += std::abs(m.mass(i) - u);
  return s / 2;
}

bool is_dirac_limit(const EmpiricalMeasure& m) { return m.corner_mass() >= 0.99; }

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Ergodic: return "ergodic";
    case Regime::DenseNoAcim: return "dense, no a.c.i.m.";
    case Regime::AttractedToZero: return "attracted to 0";
  }
  return "";
}

Rational two_branch_closed_form(const Rational& q, const Rational& x) {
  const Rational y = x <= Rational(1, 2) ? x : Rational(1) - x;
  return y / ((Rational(1) - 2 * q) * y + q);
}

TwoBranch two_branch_map(long a, long b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::Unsupported, "a and b must be positive");
  const GeneratorSet gens = generators(2);
  const PWLFunction& x1 = gens.x[0];
  const PWLFunction& x2 = gens.x[1];
  const PWLFunction low = meet(x1, x2);
  const PWLFunction f1 = scale(Integer(b), low);
  const PWLFunction f2 = scale(Integer(a), trunc_sub(join(x1, x2), low));
  PiecewiseFractionalMap map = from_generator_images({f1, f2});
  const Rational q(a, b);
  constexpr int kSamples = 128;
  for (int k = 0; k <= kSamples; ++k) {
    const Rational x(k, kSamples);
    const Point p = make_point({x});
    if (apply(map, p)(0) != two_branch_closed_form(q, x)) {
      throw Error(ErrorCode::InvalidMap, "map disagrees with the closed form at " + to_string(x));
    }
  }
  const Regime regime = q < 1 ? Regime::Ergodic : (q == 1 ? Regime::DenseNoAcim : Regime::AttractedToZero);
  return {std::move(map), q, regime};
}

std::vector<C1Point> c1_profile(const PiecewiseFractionalMap& map) {
  if (map.n() != 2) throw Error(ErrorCode::Unsupported, "c1_profile needs n = 2");
  const AutomorphismCert cert = certify(map);
  const int sign = cert.orientation == Orientation::Preserving ? 1 : -1;
  const PWLFunction sharp = pullback(map, PWLFunction::constant(2, 1));
  const auto& src = map.source();

  // derivative of (a x + b) / (c x + d) on one cell
  auto derivative = [&](std::size_t cell, const Rational& x) {
    const IntMatrix& m = map.matrix(cell);
    const Rational den = Rational(m(1, 0)) * x + Rational(m(1, 1));
    const Rational num = Rational(m(0, 0)) * x + Rational(m(0, 1));
    return (Rational(m(0, 0)) * den - num * Rational(m(1, 0))) / (den * den);
  };

  std::vector<Rational> points;
  for (const auto& v : src.vertices()) points.push_back(v(0));
  std::sort(points.begin(), points.end());
  std::vector<C1Point> out;
  for (const auto& x : points) {
    C1Point c{x, std::nullopt, std::nullopt};
    for (std::size_t t = 0; t < src.num_top(); ++t) {
      const Polytope& cell = src.top_polytope(t);
      if (cell.upper()(0) == x) c.left = derivative(t, x);
      if (cell.lower()(0) == x) c.right = derivative(t, x);
    }
    const Rational fs = eval(sharp, make_point({x}));
    const Rational expected = Rational(sign) / (fs * fs);
    for (const auto& side : {c.left, c.right}) {
      if (side && *side != expected) {
        throw Error(ErrorCode::C1Violation, "derivative " + to_string(*side) + " at " + to_string(x) +
                                                " differs from " + to_string(expected));
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

UnitOrbit unit_orbit(const PiecewiseFractionalMap& map, int k) {
  if (k < 0) throw Error(ErrorCode::Unsupported, "k must be >= 0");
  certify(map);
  UnitOrbit out;
  out.units.push_back(PWLFunction::constant(map.n(), 1));
  for (int i = 0; i < k; ++i) {
    PWLFunction next = coalesce(pullback(map, out.units.back()));
    if (!is_strong_unit(next).strong_unit) {
      throw Error(ErrorCode::NotStrongUnit, "sigma^" + std::to_string(i + 1) + "(1l) is not a strong unit");
    }
    out.units.push_back(std::move(next));
  }
  out.pairwise_distinct = true;
  for (std::size_t i = 0; i < out.units.size() && out.pairwise_distinct; ++i) {
    for (std::size_t j = i + 1; j < out.units.size(); ++j) {
      if (equals(out.units[i], out.units[j])) {
        out.pairwise_distinct = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace chaut
