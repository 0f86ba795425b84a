#include "hoffman/hoffman_global.hpp"

#include <cmath>

namespace hoffman {

namespace {

// Relative threshold below which a hull distance counts as "0 in conv".
constexpr double kZeroDistRel = 1e-10;

double subset_scale(const FiniteSystem& sys, const std::vector<int>& J,
                    NormKind dn) {
  double s = 0.0;
  for (int t : J) s = std::max(s, norm_of(sys.row(t).a, dn));
  return s;
}

}  // namespace

GlobalHoffmanReport hof_global(const FiniteSystem& sys, long long cap,
                               double tol_rank) {
  const NormKind dn = sys.dual_norm();
  GlobalHoffmanReport rep;
  rep.value = ModulusValue::of(0.0);

  double best = 0.0;
  std::vector<int> bestJ;
  Vector best_weights;
  Vector best_point;

  std::vector<Vector> pts;
  for_each_independent_subset(sys, cap, tol_rank, [&](const std::vector<int>& J) {
    if (J.empty()) return;
    double dist;
    Vector weights;
    Vector point;
    if (J.size() == 1) {
      point = sys.row(J[0]).a;
      dist = norm_of(point, dn);
      weights = Vector::Ones(1);
    } else if (J.size() == 2) {
      auto [d, l] = segment_dual_min(sys.row(J[0]).a, sys.row(J[1]).a, dn);
      dist = d;
      weights = Vector(2);
      weights << 1.0 - l, l;
      point = (1.0 - l) * sys.row(J[0]).a + l * sys.row(J[1]).a;
    } else {
      pts.clear();
      for (int t : J) pts.push_back(sys.row(t).a);
      HullDistanceResult h = dual_distance_to_hull(pts, sys.norm());
      dist = h.distance.value();
      weights = h.weights;
      point = h.point;
    }
    if (dist <= kZeroDistRel * subset_scale(sys, J, dn)) return;
    const double v = 1.0 / dist;
    if (v > best) {
      best = v;
      bestJ = J;
      best_weights = weights;
      best_point = point;
    }
  });

  rep.value = ModulusValue::of(best);
  rep.route_values["independent_subsets"] = best;
  rep.attaining = IndexSubset(bestJ);
  if (!bestJ.empty()) {
    rep.attaining.certificate = best_weights;
    const double pnorm = norm_of(best_point, dn);
    rep.dual_certificate = Vector::Zero(sys.row_count());
    for (std::size_t i = 0; i < bestJ.size(); ++i)
      rep.dual_certificate[bestJ[i]] = best_weights[i] / pnorm;
  } else {
    rep.dual_certificate = Vector::Zero(sys.row_count());
  }
  return rep;
}

ModulusValue hof_global_exhaustive(const FiniteSystem& sys) {
  const int m = sys.row_count();
  if (m > 24)
    throw SizeLimitExceeded("exhaustive route limited to 24 rows");
  const NormKind dn = sys.dual_norm();

  double best = 0.0;  // sup of the empty collection
  std::vector<Vector> pts;
  std::vector<int> J;
  for (unsigned long long mask = 1; mask < (1ull << m); ++mask) {
    pts.clear();
    J.clear();
    for (int t = 0; t < m; ++t)
      if (mask & (1ull << t)) {
        pts.push_back(sys.row(t).a);
        J.push_back(t);
      }
    double dist;
    if (pts.size() == 1)
      dist = norm_of(pts[0], dn);
    else if (pts.size() == 2)
      dist = segment_dual_min(pts[0], pts[1], dn).first;
    else
      dist = dual_distance_to_hull(pts, sys.norm()).distance.value();
    if (dist <= kZeroDistRel * subset_scale(sys, J, dn)) continue;
    best = std::max(best, 1.0 / dist);
  }
  return ModulusValue::of(best);
}

GridGlobalReport hof_global_grid(const ContinuousSystem& csys,
                                 double grid_step, long long cap) {
  if (!(grid_step > 0.0)) throw ValidationError("grid step must be positive");
  auto [sys, b] = discretize(csys, GridSpec{grid_step});
  GridGlobalReport out;
  out.grid_step = grid_step;
  out.row_count = sys.row_count();
  out.report = hof_global(sys, cap);
  return out;
}

}  // namespace hoffman
