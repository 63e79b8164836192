#pragma once

// Dual maps of endomorphisms of the free cancellative hoop: one integer
// n x n matrix per top cell of a complex on the cube, acting on primitive
// homogeneous coordinates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaut/pwl.hpp"

namespace chaut {

enum class Orientation { Preserving, Reversing, Mixed };

std::string_view to_string(Orientation o);

class PiecewiseFractionalMap {
 public:
  PiecewiseFractionalMap(int n, ComplexPtr source, std::vector<IntMatrix> matrices,
                         std::optional<std::vector<PWLFunction>> generator_images = std::nullopt);

  int n() const { return n_; }
  const CellularComplex& source() const { return *source_; }
  const ComplexPtr& source_ptr() const { return source_; }
  const std::vector<IntMatrix>& matrices() const { return matrices_; }
  const IntMatrix& matrix(std::size_t cell) const { return matrices_[cell]; }
  /// Set when the map was built from generator images; S alone does not
  /// determine the endomorphism.
  const std::optional<std::vector<PWLFunction>>& generator_images() const { return images_; }

 private:
  int n_;
  ComplexPtr source_;
  std::vector<IntMatrix> matrices_;
  std::optional<std::vector<PWLFunction>> images_;
};

PiecewiseFractionalMap identity_map(int n);

/// f_sharp = f_n + (f_1 v ... v f_{n-1}) must be a strong unit (TrivialEndomorphism otherwise).
PiecewiseFractionalMap from_generator_images(const std::vector<PWLFunction>& images);

struct CombinatorialIso {
  ComplexPtr source;
  ComplexPtr target;
  /// vertex_map[i] is the target vertex id of source vertex i.
  std::vector<int> vertex_map;
};

/// Bijection on vertices that sends top simplices onto top simplices. Throws InvalidIso.
void check_iso(const CombinatorialIso& iso);

struct AutomorphismCert {
  std::vector<int> det_per_cell;
  ComplexPtr image_complex;
  bool bijective = false;
  Orientation orientation = Orientation::Preserving;
};

struct MapValidation {
  std::optional<AutomorphismCert> cert;
  std::vector<std::string> failures;

  bool ok() const { return cert.has_value(); }
};

MapValidation validate_automorphism(const PiecewiseFractionalMap& map);
/// validate_automorphism, throwing InvalidMap with the first failure.
AutomorphismCert certify(const PiecewiseFractionalMap& map);

struct CertifiedMap {
  PiecewiseFractionalMap map;
  AutomorphismCert cert;
};

CertifiedMap from_combinatorial_iso(const CombinatorialIso& iso);

/// A * pi(p) for the lowest-id source cell containing p. Throws NonPositiveDenominator.
IntVector apply_homogeneous(const PiecewiseFractionalMap& map, const Point& p);
Point apply(const PiecewiseFractionalMap& map, const Point& p);

/// f_sharp(p): the last row of the cell's matrix against (p, 1).
Rational f_sharp_at(const PiecewiseFractionalMap& map, std::size_t cell, const Point& p);

/// T o S: S is applied first.
PiecewiseFractionalMap compose(const PiecewiseFractionalMap& s, const PiecewiseFractionalMap& t);
PiecewiseFractionalMap invert(const PiecewiseFractionalMap& s);

/// sigma(f) = f_sharp * (f o S).
PWLFunction pullback(const PiecewiseFractionalMap& map, const PWLFunction& f);

/// Jacobian matrix of S at an interior point, by differentiating A x / (a_n . x).
RatMatrix jacobian_matrix(const PiecewiseFractionalMap& map, const Point& p);
/// det J(p), checked against det(A) / f_sharp(p)^n. Throws OnBoundary.
Rational jacobian_det(const PiecewiseFractionalMap& map, const Point& p);

struct ConditionResult {
  bool holds = false;
  std::string witness;  // first counterexample when !holds
};

struct UnitFixingReport {
  ConditionResult fixes_unit;          // sigma(1l) = 1l
  ConditionResult keeps_denominators;  // den(S(p)) = den(p) on a random sample
  ConditionResult keeps_vertex_dens;   // the same at every vertex
  ConditionResult last_rows_trivial;   // every last row is (0 ... 0 1)
  ConditionResult unit_jacobian;       // |J| = 1 on every top cell

  bool all_true() const;
  bool all_false() const;
};

constexpr std::uint64_t kDefaultReportSeed = 20240601;

/// Throws EquivalenceViolation if the five answers disagree.
UnitFixingReport unit_fixing_report(const PiecewiseFractionalMap& map, std::uint64_t seed = kDefaultReportSeed,
                                    int samples = 200, int max_den = 50);

/// Common sign of the cell determinants. Throws MixedOrientation.
Orientation orientation(const PiecewiseFractionalMap& map);

/// Dual of x_i <-> x_j, 1-based.
PiecewiseFractionalMap swap_generators(int n, int i, int j);

}  // namespace chaut
