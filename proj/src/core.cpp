#include "hoffman/core.hpp"

#include <algorithm>
#include <cmath>

namespace hoffman {

namespace {

void check_dims(const FiniteSystem& sys, const Rhs& b, const Vector& x) {
  b.check_matches(sys);
  if (x.size() != sys.dimension())
    throw DimensionMismatch("point has length " + std::to_string(x.size()) +
                            ", expected " + std::to_string(sys.dimension()));
}

}  // namespace

double residual(const FiniteSystem& sys, const Rhs& b, const Vector& x) {
  check_dims(sys, b, x);
  return (sys.row_matrix() * x - b.b).maxCoeff();
}

ModulusValue rhs_distance(const FiniteSystem& sys, const Rhs& b, const Vector& x) {
  return ModulusValue::of(std::max(0.0, residual(sys, b, x)));
}

double activity_scale(const FiniteSystem& sys, const Rhs& b, const Vector& x) {
  double s = 1.0;
  if (b.b.size() > 0) s = std::max(s, b.b.lpNorm<Eigen::Infinity>());
  return std::max(s, norm_of(x, sys.norm()));
}

IndexSubset active_set(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                       double tol_active) {
  check_dims(sys, b, x);
  const double scale = activity_scale(sys, b, x);
  const Vector r = sys.row_matrix() * x - b.b;
  if (r.maxCoeff() > tol_active * scale)
    throw InfeasiblePoint("active_set requires a feasible point (residual " +
                          std::to_string(r.maxCoeff()) + ")");
  IndexSubset out;
  for (int t = 0; t < sys.row_count(); ++t)
    if (std::abs(r[t]) <= tol_active * scale) out.indices.push_back(t);
  return out;
}

IndexSubset argmax_set(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                       double tol_active) {
  check_dims(sys, b, x);
  const double scale = activity_scale(sys, b, x);
  const Vector r = sys.row_matrix() * x - b.b;
  const double f = r.maxCoeff();
  IndexSubset out;
  for (int t = 0; t < sys.row_count(); ++t)
    if (f - r[t] <= tol_active * scale) out.indices.push_back(t);
  return out;
}

}  // namespace hoffman
