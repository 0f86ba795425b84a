#include "hoffman/calmness.hpp"

#include <algorithm>
#include <cmath>

#include "hoffman/core.hpp"

namespace hoffman {

DFamily d_family(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                 const Tolerances& tols, long long cap) {
  DFamily fam;
  fam.point = x;
  fam.active = active_set(sys, b, x, tols.tol_active);

  std::vector<int> nonzero;
  for (int t : fam.active.indices)
    if (!sys.is_zero_row(t)) nonzero.push_back(t);
  const int k = static_cast<int>(nonzero.size());
  if (k > cap)
    throw SizeLimitExceeded("active set too large for D-family enumeration (" +
                            std::to_string(k) + " nonzero rows)");

  for (unsigned long long mask = 0; mask < (1ull << k); ++mask) {
    IndexSubset D;
    for (int i = 0; i < k; ++i)
      if (mask & (1ull << i)) D.indices.push_back(nonzero[i]);
    auto witness = strict_system_witness(sys, fam.active, D, tols.tol_strict);
    if (witness) {
      D.certificate = *witness;
      fam.members.push_back(std::move(D));
    }
  }
  std::sort(fam.members.begin(), fam.members.end(),
            [](const IndexSubset& a, const IndexSubset& c) {
              return a.indices < c.indices;
            });
  return fam;
}

CalmnessReport clm_at(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                      const Tolerances& tols) {
  CalmnessReport rep;
  rep.family = d_family(sys, b, x, tols);
  double best = 0.0;
  rep.attaining = IndexSubset{};  // the empty member contributes 0
  for (const auto& D : rep.family.members) {
    if (D.empty()) continue;
    std::vector<Vector> pts;
    for (int t : D.indices) pts.push_back(sys.row(t).a);
    rep.end_set_hulls.push_back(pts);
    HullDistanceResult h = dual_distance_to_hull(pts, sys.norm());
    const double dist = h.distance.value();
    if (dist <= 0.0)
      throw NumericalFailure("D-family member with zero hull distance");
    const double v = 1.0 / dist;
    if (v > best) {
      best = v;
      rep.attaining = D;
    }
  }
  rep.value = ModulusValue::of(best);
  return rep;
}

std::vector<std::vector<Vector>> end_set_finite(const FiniteSystem& sys,
                                                const Rhs& b, const Vector& x,
                                                const Tolerances& tols) {
  std::vector<std::vector<Vector>> hulls;
  for (const auto& D : d_family(sys, b, x, tols).members) {
    if (D.empty()) continue;
    std::vector<Vector> pts;
    for (int t : D.indices) pts.push_back(sys.row(t).a);
    hulls.push_back(std::move(pts));
  }
  return hulls;
}

std::optional<double> outside_point_value(const FiniteSystem& sys, const Rhs& b,
                                          const Vector& x,
                                          const Tolerances& tols,
                                          double tie_rel) {
  const Vector r = sys.row_matrix() * x - b.b;
  const double f = r.maxCoeff();
  if (f <= 0.0) return std::nullopt;

  std::vector<int> loose;
  for (int t = 0; t < sys.row_count(); ++t)
    if (f - r[t] <= tie_rel * f) loose.push_back(t);

  std::vector<int> J;
  if (loose.size() > 1) {
    // Snap onto the tie manifold: least-norm correction making all loose
    // rows attain the common value f, so the evaluated point is a genuine
    // outside point with that exact argmax set.
    Matrix A(loose.size(), sys.dimension());
    Vector rhs(loose.size());
    for (std::size_t i = 0; i < loose.size(); ++i) {
      A.row(i) = sys.row(loose[i]).a.transpose();
      rhs[i] = f - r[loose[i]];
    }
    Vector delta = A.completeOrthogonalDecomposition().solve(rhs);
    const Vector xs = x + delta;
    const Vector rs = sys.row_matrix() * xs - b.b;
    const double fs = rs.maxCoeff();
    bool ok = fs > 0.0 && (A * delta - rhs).lpNorm<Eigen::Infinity>() <=
                              1e-9 * std::max(1.0, std::abs(f));
    if (ok) {
      for (int t = 0; t < sys.row_count(); ++t) {
        const bool in_loose =
            std::binary_search(loose.begin(), loose.end(), t);
        if (!in_loose && fs - rs[t] <= 0.25 * tie_rel * f) {
          ok = false;
          break;
        }
      }
    }
    if (ok) J = loose;
  }
  if (J.empty()) {
    const double scale = activity_scale(sys, b, x);
    for (int t = 0; t < sys.row_count(); ++t)
      if (f - r[t] <= tols.tol_active * scale) J.push_back(t);
  }

  std::vector<Vector> pts;
  for (int t : J) pts.push_back(sys.row(t).a);
  HullDistanceResult h = dual_distance_to_hull(pts, sys.norm());
  const double dist = h.distance.value();
  if (dist <= 0.0) return std::nullopt;  // cannot certify, skip the sample
  return 1.0 / dist;
}

namespace {

SamplingEstimate run_sampling(
    const std::vector<Vector>& samples,
    const std::function<std::optional<double>(const Vector&)>& value_at) {
  SamplingEstimate est;
  double run = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto v = value_at(samples[i]);
    if (!v) continue;
    ++est.used;
    run = std::max(run, *v);
    est.trail.push_back({static_cast<int>(i), *v, run});
  }
  est.estimate = ModulusValue::of(run);
  est.empty_sampler = est.used == 0;
  return est;
}

}  // namespace

SamplingEstimate clm_sampling(const FiniteSystem& sys, const Rhs& b,
                              const std::vector<Vector>& samples,
                              const Tolerances& tols, double tie_rel) {
  return run_sampling(samples, [&](const Vector& x) {
    return outside_point_value(sys, b, x, tols, tie_rel);
  });
}

SamplingEstimate clm_sampling(const ContinuousSystem& csys,
                              const std::vector<Vector>& samples,
                              const Tolerances& tols) {
  return run_sampling(samples, [&](const Vector& x) -> std::optional<double> {
    const double f = csys.residual(x);
    if (f <= 0.0) return std::nullopt;
    const double scale = std::max({1.0, std::abs(f), x.norm()});
    auto pts = csys.argmax_points(x, tols.tol_active * scale);
    HullDistanceResult h = dual_distance_to_hull(pts, csys.norm);
    const double dist = h.distance.value();
    if (dist <= 0.0) return std::nullopt;
    return 1.0 / dist;
  });
}

std::vector<Vector> radial_sequence(const Vector& xbar, int count,
                                    std::uint64_t seed, double radius0,
                                    double shrink) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> out;
  double radius = radius0;
  for (int i = 0; i < count; ++i) {
    Vector u(xbar.size());
    for (int j = 0; j < u.size(); ++j) u[j] = gauss(rng);
    const double nn = u.norm();
    if (nn > 0) u /= nn;
    out.push_back(xbar + radius * u);
    radius *= shrink;
  }
  return out;
}

}  // namespace hoffman
