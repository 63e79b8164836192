#include <algorithm>
#include <numeric>

#include "chaut/geometry.hpp"

namespace chaut {

Vector<Rational> xy_transform(const Vector<Rational>& u, CoordChange direction) {
  const Eigen::Index n = u.size();
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "xy_transform needs n >= 2");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (u(i) < 0) throw Error(ErrorCode::OutOfCone, "negative coordinate");
  }
  Rational top = u(0);
  for (Eigen::Index i = 1; i + 1 < n; ++i) top = std::max(top, u(i));
  Vector<Rational> out = u;
  if (direction == CoordChange::XtoY) {
    out(n - 1) = u(n - 1) + top;
  } else {
    out(n - 1) = u(n - 1) - top;
    if (out(n - 1) < 0) throw Error(ErrorCode::OutOfCone, "point is outside the cone P");
  }
  return out;
}

bool is_unimodular(const Fan& fan) {
  return std::all_of(fan.cones.begin(), fan.cones.end(), [](const IntMatrix& g) {
    if (g.rows() != g.cols()) return false;
    const Integer det = int_det(g);
    return det == 1 || det == -1;
  });
}

DeltaSigma build_delta_sigma(int n, int bound) {
  if (n < 2 || n > bound) {
    throw Error(ErrorCode::Unsupported, "n = " + std::to_string(n) + " is outside [2, " +
                                            std::to_string(bound) + "]");
  }
  // Upper triangle of ones above a zero diagonal in the first n-1 rows.
  IntMatrix base = IntMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = i + 1; j < n; ++j) base(i, j) = 1;
  }
  IntMatrix n_template = base;
  IntMatrix m_template = base;
  for (int j = 0; j < n; ++j) n_template(n - 1, j) = 1;
  m_template(n - 1, 0) = 1;

  DeltaSigma ds;
  ds.n = n;
  ds.delta.n = n;
  ds.sigma.n = n;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    IntMatrix nr = n_template;
    IntMatrix mr = m_template;
    for (int i = 0; i + 1 < n; ++i) {
      nr.row(perm[i]) = n_template.row(i);
      mr.row(perm[i]) = m_template.row(i);
    }
    ds.permutations.push_back(perm);
    ds.phi.push_back(to_integer(mr.cast<Rational>() * inverse_exact(nr)));
    ds.n_matrices.push_back(nr);
    ds.m_matrices.push_back(mr);
    ds.delta.cones.push_back(nr);
    ds.sigma.cones.push_back(mr);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!is_unimodular(ds.delta) || !is_unimodular(ds.sigma)) {
    throw Error(ErrorCode::NotUnimodular, "fan generators are not unimodular");
  }
  return ds;
}

Vector<Rational> apply_phi(const DeltaSigma& ds, const Vector<Rational>& u) {
  if (u.size() != ds.n) throw Error(ErrorCode::DimensionMismatch, "apply_phi: wrong dimension");
  for (std::size_t r = 0; r < ds.n_matrices.size(); ++r) {
    const Vector<Rational> alpha = inverse_exact(ds.n_matrices[r]) * u;
    bool inside = true;
    for (Eigen::Index i = 0; i < alpha.size() && inside; ++i) inside = alpha(i) >= 0;
    if (inside) return ds.phi[r].cast<Rational>() * u;
  }
  throw Error(ErrorCode::OutOfCone, "point is outside the cone P");
}

}  // namespace chaut
