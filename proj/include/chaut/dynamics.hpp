#pragma once

// Orbits of dual maps, empirical measures, the two-branch family S_q and
// the C^1 profile of interval automorphisms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaut/autmap.hpp"

namespace chaut {

enum class Mode { Exact, Float };

using FPoint = std::vector<double>;

/// Double-precision evaluator of a map: facet forms and matrices as doubles.
class FloatMap {
 public:
  explicit FloatMap(const PiecewiseFractionalMap& map);

  int dim() const { return dim_; }
  /// Clamps to the cube when the image leaves it by at most 1e-12; aborts
  /// with OutOfDomain on larger excursions.
  FPoint operator()(const FPoint& p) const;

 private:
  std::size_t locate(const FPoint& p) const;

  int dim_;
  std::vector<std::vector<std::vector<double>>> facets_;
  std::vector<std::vector<double>> lower_, upper_;
  std::vector<std::vector<std::vector<double>>> matrices_;
};

inline constexpr double kClampTolerance = 1e-12;

struct OrbitRecord {
  Mode mode = Mode::Exact;
  std::vector<Point> exact;
  std::vector<FPoint> approx;
  std::uint64_t seed = 0;

  std::size_t size() const { return mode == Mode::Exact ? exact.size() : approx.size(); }
};

/// N + 1 points starting at p0.
OrbitRecord orbit(const PiecewiseFractionalMap& map, const Point& p0, std::size_t steps, Mode mode);
OrbitRecord orbit(const FloatMap& map, const FPoint& p0, std::size_t steps);

FPoint to_floats(const Point& p);
/// Uniform point of the cube.
FPoint random_point(std::uint64_t seed, int dim);

struct EmpiricalMeasure {
  int dim = 1;
  int bins = 1;
  /// Row-major over dim axes, bins^dim entries.
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  double mass(std::size_t bin) const { return total ? static_cast<double>(counts[bin]) / total : 0.0; }
  /// Fraction of the mass sitting in bins that touch a vertex of the cube.
  double corner_mass() const;
  /// Mass of the bin containing the origin.
  double origin_mass() const { return mass(0); }
};

EmpiricalMeasure empty_measure(int dim, int bins);
void add_sample(EmpiricalMeasure& m, const FPoint& p);

inline constexpr std::size_t kDefaultSteps = 1000000;
inline constexpr std::size_t kDefaultBurnIn = 1000;
inline constexpr int kDefaultBins = 50;

EmpiricalMeasure birkhoff_histogram(const FloatMap& map, const FPoint& p0, std::size_t steps = kDefaultSteps,
                                    int bins = kDefaultBins, std::size_t burn_in = kDefaultBurnIn);

/// Image of `starts` uniform random points after `steps` iterations each.
EmpiricalMeasure pushforward_histogram(const FloatMap& map, std::size_t starts, std::size_t steps,
                                       std::uint64_t seed, int bins = kDefaultBins);

double total_variation(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// TV distance from the uniform distribution over the bins.
double distance_to_uniform(const EmpiricalMeasure& m);

/// At least 99% of the mass in corner bins (the two boundary bins in dimension 1).
bool is_dirac_limit(const EmpiricalMeasure& m);

enum class Regime { Ergodic, DenseNoAcim, AttractedToZero };

std::string_view to_string(Regime r);

struct TwoBranch {
  PiecewiseFractionalMap map;
  Rational q;
  Regime regime;
};

/// x / ((1 - 2q) x + q) on [0, 1/2], the mirror branch on (1/2, 1].
Rational two_branch_closed_form(const Rational& q, const Rational& x);

/// Images f_1 = b (x_1 ^ x_2), f_2 = a ((x_1 v x_2) -. (x_1 ^ x_2)); checked
/// against the closed form before returning.
TwoBranch two_branch_map(long a, long b);

struct C1Point {
  Rational breakpoint;
  std::optional<Rational> left;
  std::optional<Rational> right;
};

/// One-sided derivatives at every vertex of the source complex of an n = 2
/// automorphism. Throws C1Violation when they differ or miss +-f_sharp^{-2}.
std::vector<C1Point> c1_profile(const PiecewiseFractionalMap& map);

struct UnitOrbit {
  std::vector<PWLFunction> units;
  bool pairwise_distinct = false;
};

/// sigma^0(1l), ..., sigma^k(1l).
UnitOrbit unit_orbit(const PiecewiseFractionalMap& map, int k);

}  // namespace chaut
