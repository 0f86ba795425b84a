#include "hoffman/semilocal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hoffman/core.hpp"
#include "hoffman/lp.hpp"

namespace hoffman {

SemiLocalReport hof_at(const FiniteSystem& sys, const Rhs& b, long long cap,
                       const Tolerances& tols) {
  SemiLocalReport rep;
  auto vertices = enumerate_vertices(sys, b, cap, tols);
  double best = -1.0;
  for (const auto& v : vertices) {
    CalmnessReport cr = clm_at(sys, b, v, tols);
    const double val = cr.value.value();
    if (val > best) {
      best = val;
      rep.attaining_point = v;
    }
    rep.candidates.emplace_back(v, std::move(cr));
  }
  rep.value = ModulusValue::of(std::max(best, 0.0));
  return rep;
}

SamplingEstimate hof_at_sampling(const FiniteSystem& sys, const Rhs& b,
                                 const Sampler& sampler, int count,
                                 std::uint64_t seed, const Tolerances& tols,
                                 double tie_rel) {
  std::mt19937_64 rng(seed);
  SamplingEstimate est;
  double run = 0.0;
  for (int i = 0; i < count; ++i) {
    const Vector x = sampler(rng);
    auto v = outside_point_value(sys, b, x, tols, tie_rel);
    if (!v) continue;
    ++est.used;
    run = std::max(run, *v);
    est.trail.push_back({i, *v, run});
  }
  est.estimate = ModulusValue::of(run);
  est.empty_sampler = est.used == 0;
  return est;
}

SamplingEstimate mc_ratio_sup(const FiniteSystem& sys, const Rhs& b,
                              const Sampler& sampler, int count,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SamplingEstimate est;
  double run = 0.0;
  for (int i = 0; i < count; ++i) {
    const Vector x = sampler(rng);
    const double denom = residual(sys, b, x);
    if (denom <= 0.0) continue;  // feasible sample: 0/0 := 0
    ProjectionResult pr = project_to_polyhedron(sys, b, x);
    if (pr.distance.is_infinite())
      throw Infeasible("mc_ratio_sup requires a consistent right-hand side");
    ++est.used;
    run = std::max(run, pr.distance.value() / denom);
    est.trail.push_back({i, pr.distance.value() / denom, run});
  }
  est.estimate = ModulusValue::of(run);
  est.empty_sampler = est.used == 0;
  return est;
}

Sampler uniform_box_sampler(int n, double radius, Vector center) {
  if (center.size() == 0) center = Vector::Zero(n);
  return [n, radius, center](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-radius, radius);
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = center[i] + u(rng);
    return x;
  };
}

Sampler anchored_mixture_sampler(int n, double radius,
                                 std::vector<Vector> anchors) {
  return [n, radius, anchors](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (anchors.empty() || coin(rng) < 0.35) {
      std::uniform_real_distribution<double> u(-radius, radius);
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = u(rng);
      return x;
    }
    std::uniform_int_distribution<std::size_t> pick(0, anchors.size() - 1);
    const Vector& v = anchors[pick(rng)];
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector u(n);
    for (int i = 0; i < n; ++i) u[i] = gauss(rng);
    const double nn = u.norm();
    if (nn > 0) u /= nn;
    std::uniform_real_distribution<double> logr(-6.0, 0.0);
    const double rho = radius * std::pow(10.0, logr(rng));
    return Vector(v + rho * u);
  };
}

namespace {

std::string point_str(const Vector& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}

// A recession direction of F (A d <= 0, |d|_inf <= 1) maximizing c'd, or
// empty when none exceeds the tolerance.
Vector recession_direction(const FiniteSystem& sys, const Vector& c) {
  LpProblem lp;
  lp.objective = c;
  for (int t = 0; t < sys.row_count(); ++t)
    lp.ineq.emplace_back(sys.row(t).a, 0.0);
  lp.lower.assign(sys.dimension(), -1.0);
  lp.upper.assign(sys.dimension(), 1.0);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal || sol.value < 1e-7)
    return Vector();
  return sol.point;
}

// Chebyshev-style interior point over the nonzero rows, or empty.
Vector interior_point(const FiniteSystem& sys, const Rhs& b) {
  const int n = sys.dimension();
  LpProblem lp;
  lp.objective = Vector::Zero(n + 1);
  lp.objective[n] = 1.0;
  bool any = false;
  for (int t = 0; t < sys.row_count(); ++t) {
    if (sys.is_zero_row(t)) continue;
    any = true;
    Vector row = Vector::Zero(n + 1);
    row.head(n) = sys.row(t).a;
    row[n] = norm_of(sys.row(t).a, NormKind::L2);
    lp.ineq.emplace_back(row, b.b[t]);
  }
  if (!any) return Vector::Zero(n);  // F is the whole space
  Vector cap_row = Vector::Zero(n + 1);
  cap_row[n] = 1.0;
  lp.ineq.emplace_back(cap_row, 1.0);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal || sol.value < 1e-7)
    return Vector();
  return Vector(sol.point.head(n));
}

}  // namespace

ChainCheckReport chain_check(const FiniteSystem& sys, const Rhs& b,
                             int boundary_count, int mc_count,
                             std::uint64_t seed, const Tolerances& tols) {
  ChainCheckReport rep;
  SemiLocalReport hof = hof_at(sys, b, kDefaultSubsetCap, tols);
  rep.hof_value = hof.value.value();

  std::vector<Vector> vertices;
  for (const auto& [v, cr] : hof.candidates) vertices.push_back(v);

  // (b) the extreme-point maximum attains the reported value by construction.
  double vmax = 0.0;
  for (const auto& [v, cr] : hof.candidates)
    vmax = std::max(vmax, cr.value.value());
  if (vmax != rep.hof_value)
    throw ChainViolation("extreme-point maximum does not attain Hof F(b)");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = sys.dimension();
  const Matrix& A = sys.row_matrix();

  // (a) boundary samples: convex combinations of the extreme points plus a
  // random recession component, pushed to the boundary along a random ray.
  for (int i = 0; i < boundary_count; ++i) {
    Vector z = Vector::Zero(n);
    double wsum = 0.0;
    for (const auto& v : vertices) {
      const double w = -std::log(std::max(unit(rng), 1e-300));
      z += w * v;
      wsum += w;
    }
    if (wsum > 0) z /= wsum;
    if (unit(rng) < 0.3) {
      Vector c(n);
      for (int j = 0; j < n; ++j) c[j] = gauss(rng);
      Vector ray = recession_direction(sys, c);
      if (ray.size() > 0) z += 3.0 * unit(rng) * ray;
    }

    Vector xb;
    for (int attempt = 0; attempt < 8 && xb.size() == 0; ++attempt) {
      Vector u(n);
      for (int j = 0; j < n; ++j) u[j] = gauss(rng);
      if (u.norm() == 0) continue;
      u /= u.norm();
      double alpha = std::numeric_limits<double>::infinity();
      for (int t = 0; t < sys.row_count(); ++t) {
        const double au = A.row(t).dot(u);
        if (au > 1e-12) {
          const double slack = std::max(b.b[t] - A.row(t).dot(z), 0.0);
          alpha = std::min(alpha, slack / au);
        }
      }
      if (std::isfinite(alpha)) xb = z + alpha * u;
    }
    if (xb.size() == 0) continue;
    ++rep.boundary_samples;

    CalmnessReport cr = clm_at(sys, b, xb, tols);
    rep.max_boundary_clm = std::max(rep.max_boundary_clm, cr.value.value());
    if (cr.value.value() > rep.hof_value + 1e-8)
      throw ChainViolation("boundary point " + point_str(xb) +
                           " has calmness above Hof F(b)");
  }

  // (c) ratio supremum stays below Hof F(b).
  double radius = 1.0;
  for (const auto& v : vertices) radius = std::max(radius, 2.0 * v.norm());
  SamplingEstimate mc = mc_ratio_sup(
      sys, b, anchored_mixture_sampler(n, radius, vertices), mc_count, seed + 1);
  rep.mc_estimate = mc.estimate.value();
  if (rep.mc_estimate > rep.hof_value + 1e-8)
    throw ChainViolation("ratio supremum exceeds Hof F(b)");

  // (d) interior points have zero calmness.
  Vector zin = interior_point(sys, b);
  if (zin.size() > 0) {
    rep.has_interior = true;
    rep.interior_clm = clm_at(sys, b, zin, tols).value.value();
    if (rep.interior_clm != 0.0)
      throw ChainViolation("interior point " + point_str(zin) +
                           " has nonzero calmness");
  }

  rep.passed = true;
  return rep;
}

}  // namespace hoffman
