#include "hoffman/geometry.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hoffman/core.hpp"

namespace hoffman {

namespace {

double point_scale(const std::vector<Vector>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return s;
}

// Evaluate the dual norm along the segment p + l*(q-p).
double seg_norm(const Vector& p, const Vector& d, double l, NormKind dn) {
  return norm_of(p + l * d, dn);
}

}  // namespace

std::pair<double, double> segment_dual_min(const Vector& p, const Vector& q,
                                           NormKind dual_norm) {
  const Vector d = q - p;
  const double dd = d.squaredNorm();
  if (dual_norm == NormKind::L2) {
    double l = dd > 0.0 ? std::clamp(-p.dot(d) / dd, 0.0, 1.0) : 0.0;
    return {seg_norm(p, d, l, dual_norm), l};
  }
  // Piecewise-linear convex objective: the minimum sits at an endpoint, at a
  // coordinate zero-crossing, or (for LInf) where two coordinates swap lead.
  std::vector<double> cand{0.0, 1.0};
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i)
    if (std::abs(d[i]) > 0.0) cand.push_back(-p[i] / d[i]);
  if (dual_norm == NormKind::LInf) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double den1 = d[i] - d[j];
        if (std::abs(den1) > 0.0) cand.push_back((p[j] - p[i]) / den1);
        const double den2 = d[i] + d[j];
        if (std::abs(den2) > 0.0) cand.push_back(-(p[i] + p[j]) / den2);
      }
  }
  double best_l = 0.0, best_v = std::numeric_limits<double>::infinity();
  std::sort(cand.begin(), cand.end());
  for (double l : cand) {
    if (l < 0.0 || l > 1.0) continue;
    const double v = seg_norm(p, d, l, dual_norm);
    if (v < best_v) {
      best_v = v;
      best_l = l;
    }
  }
  return {best_v, best_l};
}

std::pair<double, Vector> wolfe_min_norm(const std::vector<Vector>& points,
                                         double tol) {
  const int m = static_cast<int>(points.size());
  if (m == 0) throw ValidationError("wolfe_min_norm needs at least one point");
  const int n = static_cast<int>(points[0].size());
  const double scale = point_scale(points);
  Vector w = Vector::Zero(m);

  if (scale == 0.0) {  // every point is the origin
    w[0] = 1.0;
    return {0.0, w};
  }

  // Start from the point of smallest Euclidean norm.
  int start = 0;
  for (int j = 1; j < m; ++j)
    if (points[j].squaredNorm() < points[start].squaredNorm()) start = j;
  std::vector<int> corral{start};
  w[start] = 1.0;
  Vector x = points[start];

  const double zero2 = 1e-28 * scale * scale;
  const int max_major = 16 * m + 64;
  bool stalled = false;

  for (int major = 0; major < max_major && !stalled; ++major) {
    const double xx = x.squaredNorm();
    if (xx <= zero2) break;
    int jstar = 0;
    double best = points[0].dot(x);
    for (int j = 1; j < m; ++j) {
      const double v = points[j].dot(x);
      if (v < best) {
        best = v;
        jstar = j;
      }
    }
    if (xx - best <= tol * xx) break;
    if (std::find(corral.begin(), corral.end(), jstar) != corral.end()) break;
    corral.push_back(jstar);

    // Minor cycle: affine minimizer over the corral, stepping back to the
    // hull boundary whenever a coefficient leaves the simplex.
    for (int minor = 0; minor < 4 * m + 16; ++minor) {
      const int k = static_cast<int>(corral.size());
      Matrix M = Matrix::Zero(k + 1, k + 1);
      for (int a = 0; a < k; ++a)
        for (int c = 0; c < k; ++c)
          M(a, c) = points[corral[a]].dot(points[corral[c]]);
      M.block(0, k, k, 1).setOnes();
      M.block(k, 0, 1, k).setOnes();
      Vector rhsv = Vector::Zero(k + 1);
      rhsv[k] = 1.0;
      Vector alpha_full =
          M.completeOrthogonalDecomposition().solve(rhsv);
      Vector alpha = alpha_full.head(k);
      const double asum = alpha.sum();
      if (std::abs(asum - 1.0) > 1e-6) {  // inconsistent affine system
        corral.pop_back();
        stalled = true;
        break;
      }
      alpha /= asum;

      double amin = alpha.minCoeff();
      if (amin > 1e-14) {
        Vector wnew = Vector::Zero(m);
        for (int a = 0; a < k; ++a) wnew[corral[a]] = alpha[a];
        w = wnew;
        x = Vector::Zero(n);
        for (int a = 0; a < k; ++a) x += alpha[a] * points[corral[a]];
        break;
      }
      // Step from w toward alpha until the first coefficient hits zero.
      double theta = 1.0;
      for (int a = 0; a < k; ++a) {
        const double wa = w[corral[a]];
        if (alpha[a] < wa)
          theta = std::min(theta, wa / (wa - alpha[a]));
      }
      theta = std::clamp(theta, 0.0, 1.0);
      Vector wnew = Vector::Zero(m);
      for (int a = 0; a < k; ++a)
        wnew[corral[a]] = (1.0 - theta) * w[corral[a]] + theta * alpha[a];
      // Remove zeroed points from the corral.
      std::vector<int> next;
      for (int a = 0; a < k; ++a)
        if (wnew[corral[a]] > 1e-14)
          next.push_back(corral[a]);
        else
          wnew[corral[a]] = 0.0;
      if (next.empty()) next.push_back(corral[0]);
      const double s = wnew.sum();
      wnew /= s;
      w = wnew;
      corral = next;
      x = Vector::Zero(n);
      for (int t = 0; t < m; ++t)
        if (w[t] > 0.0) x += w[t] * points[t];
    }
  }

  double dist = x.norm();
  if (dist * dist <= zero2) dist = 0.0;
  return {dist, w};
}

bool origin_in_hull_lp(const std::vector<Vector>& points) {
  if (points.empty()) return false;
  const int m = static_cast<int>(points.size());
  const int n = static_cast<int>(points[0].size());
  const double scale = std::max(point_scale(points), 1e-300);

  LpProblem lp;
  lp.objective = Vector::Zero(m);
  for (int i = 0; i < n; ++i) {
    Vector row(m);
    for (int t = 0; t < m; ++t) row[t] = points[t][i] / scale;
    lp.eq.emplace_back(row, 0.0);
  }
  lp.eq.emplace_back(Vector::Ones(m), 1.0);
  lp.lower.assign(m, 0.0);
  return solve_lp(lp).status == LpSolution::Status::Optimal;
}

namespace {

HullDistanceResult hull_distance_lp(const std::vector<Vector>& points,
                                    NormKind dn) {
  const int m = static_cast<int>(points.size());
  const int n = static_cast<int>(points[0].size());
  // Variables: lambda (m), then u (n for L1 dual, 1 for LInf dual).
  const int nu = dn == NormKind::L1 ? n : 1;
  LpProblem lp;
  lp.objective = Vector::Zero(m + nu);
  for (int i = 0; i < nu; ++i) lp.objective[m + i] = -1.0;
  lp.eq.emplace_back(
      (Vector(m + nu) << Vector::Ones(m), Vector::Zero(nu)).finished(), 1.0);
  for (int i = 0; i < n; ++i) {
    Vector pos = Vector::Zero(m + nu), neg = Vector::Zero(m + nu);
    for (int t = 0; t < m; ++t) {
      pos[t] = points[t][i];
      neg[t] = -points[t][i];
    }
    const int ucol = m + (dn == NormKind::L1 ? i : 0);
    pos[ucol] = -1.0;
    neg[ucol] = -1.0;
    lp.ineq.emplace_back(pos, 0.0);
    lp.ineq.emplace_back(neg, 0.0);
  }
  lp.lower.assign(m + nu, 0.0);

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal)
    throw NumericalFailure("hull distance LP did not solve");

  Vector lambda = sol.point.head(m).cwiseMax(0.0);
  const double s = lambda.sum();
  if (s <= 0.0) throw NumericalFailure("hull distance LP returned zero weights");
  lambda /= s;
  Vector pt = Vector::Zero(n);
  for (int t = 0; t < m; ++t) pt += lambda[t] * points[t];
  HullDistanceResult r;
  r.weights = lambda;
  r.point = pt;
  r.distance = ModulusValue::of(norm_of(pt, dn));
  return r;
}

}  // namespace

HullDistanceResult dual_distance_to_hull(const std::vector<Vector>& points,
                                         NormKind norm) {
  HullDistanceResult r;
  if (points.empty()) {
    r.distance = ModulusValue::infinity();
    return r;
  }
  const NormKind dn = dual(norm);
  const int m = static_cast<int>(points.size());
  if (m == 1) {
    r.weights = Vector::Ones(1);
    r.point = points[0];
    r.distance = ModulusValue::of(norm_of(points[0], dn));
    return r;
  }
  if (m == 2) {
    auto [dist, l] = segment_dual_min(points[0], points[1], dn);
    r.weights = Vector(2);
    r.weights << 1.0 - l, l;
    r.point = (1.0 - l) * points[0] + l * points[1];
    r.distance = ModulusValue::of(dist);
    return r;
  }
  if (dn == NormKind::L2) {
    auto [dist, w] = wolfe_min_norm(points);
    r.weights = w;
    r.point = Vector::Zero(points[0].size());
    for (int t = 0; t < m; ++t)
      if (w[t] > 0.0) r.point += w[t] * points[t];
    r.distance = ModulusValue::of(dist);
    return r;
  }
  return hull_distance_lp(points, dn);
}

std::optional<StrictSlack> strict_system_slack(const FiniteSystem& sys,
                                               const IndexSubset& Tx,
                                               const IndexSubset& D,
                                               double tol_strict) {
  Tx.validate(sys.row_count());
  D.validate(sys.row_count());
  for (int t : D.indices)
    if (!Tx.contains(t))
      throw ValidationError("D must be a subset of the active set");

  const int n = sys.dimension();
  std::vector<int> strict_rows;
  for (int t : Tx.indices)
    if (!D.contains(t)) strict_rows.push_back(t);

  if (D.empty() && strict_rows.empty())
    return StrictSlack{1.0, Vector::Zero(n)};

  if (strict_rows.empty()) {
    // Pure equality block: least-squares solvability decides consistency.
    Matrix A(D.size(), n);
    for (std::size_t i = 0; i < D.size(); ++i)
      A.row(i) = sys.row(D.indices[i]).a.transpose();
    Vector ones = Vector::Ones(D.size());
    Vector d = A.completeOrthogonalDecomposition().solve(ones);
    if ((A * d - ones).lpNorm<Eigen::Infinity>() < tol_strict)
      return StrictSlack{1.0, d};
    return std::nullopt;
  }

  // maximize s  s.t.  a_t'd = 1 (D),  a_t'd + s <= 1 (Tx \ D),  s <= 1.
  LpProblem lp;
  lp.objective = Vector::Zero(n + 1);
  lp.objective[n] = 1.0;
  for (int t : D.indices) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = sys.row(t).a;
    lp.eq.emplace_back(row, 1.0);
  }
  for (int t : strict_rows) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = sys.row(t).a;
    row[n] = 1.0;
    lp.ineq.emplace_back(row, 1.0);
  }
  {
    Vector row = Vector::Zero(n + 1);
    row[n] = 1.0;
    lp.ineq.emplace_back(row, 1.0);
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal) return std::nullopt;
  if (sol.value <= tol_strict) return std::nullopt;
  return StrictSlack{sol.value, Vector(sol.point.head(n))};
}

std::optional<Vector> strict_system_witness(const FiniteSystem& sys,
                                            const IndexSubset& Tx,
                                            const IndexSubset& D,
                                            double tol_strict) {
  auto s = strict_system_slack(sys, Tx, D, tol_strict);
  if (!s) return std::nullopt;
  return s->witness;
}

namespace {

// Smallest uniform constraint relaxation making the system solvable: the
// optimal xi of min xi s.t. A z - xi <= b, xi >= 0. Zero iff F(b) nonempty.
double infeasibility_floor(const FiniteSystem& sys, const Rhs& b) {
  const int n = sys.dimension();
  const int m = sys.row_count();
  LpProblem lp;
  lp.objective = Vector::Zero(n + 1);
  lp.objective[n] = -1.0;
  for (int t = 0; t < m; ++t) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = sys.row(t).a;
    row[n] = -1.0;
    lp.ineq.emplace_back(row, b.b[t]);
  }
  lp.lower.assign(n + 1, std::nullopt);
  lp.lower[n] = 0.0;
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal)
    throw NumericalFailure("feasibility LP did not solve");
  return std::max(0.0, -sol.value);
}

}  // namespace

bool system_feasible(const FiniteSystem& sys, const Rhs& b, double tol) {
  b.check_matches(sys);
  const double scale = std::max(1.0, b.b.lpNorm<Eigen::Infinity>());
  return infeasibility_floor(sys, b) <= tol * scale;
}

namespace {

// Lawson-Hanson nonnegative least squares: min ||E u - f|| over u >= 0.
// Finite termination; the workhorse behind the L2 projection.
Vector nnls(const Matrix& E, const Vector& f) {
  const int m = static_cast<int>(E.cols());
  Vector u = Vector::Zero(m);
  std::vector<bool> passive(m, false);
  const double tol = 1e-13 * std::max(1.0, E.cwiseAbs().maxCoeff()) *
                     std::max(1.0, f.cwiseAbs().maxCoeff());
  const int max_outer = 4 * m + 32;
  for (int outer = 0; outer < max_outer; ++outer) {
    const Vector w = E.transpose() * (f - E * u);
    int enter = -1;
    double best = tol;
    for (int t = 0; t < m; ++t)
      if (!passive[t] && w[t] > best) {
        best = w[t];
        enter = t;
      }
    if (enter < 0) return u;
    passive[enter] = true;

    for (int inner = 0; inner < 4 * m + 32; ++inner) {
      std::vector<int> P;
      for (int t = 0; t < m; ++t)
        if (passive[t]) P.push_back(t);
      Matrix Ep(E.rows(), P.size());
      for (std::size_t i = 0; i < P.size(); ++i) Ep.col(i) = E.col(P[i]);
      Vector s = Ep.colPivHouseholderQr().solve(f);

      double smin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < s.size(); ++i) smin = std::min(smin, s[i]);
      if (smin > 1e-12) {
        u.setZero();
        for (std::size_t i = 0; i < P.size(); ++i) u[P[i]] = s[i];
        break;
      }
      double alpha = 1.0;
      for (std::size_t i = 0; i < P.size(); ++i)
        if (s[i] <= 1e-12) {
          const double ui = u[P[i]];
          if (ui - s[i] > 0) alpha = std::min(alpha, ui / (ui - s[i]));
        }
      for (std::size_t i = 0; i < P.size(); ++i) {
        u[P[i]] += alpha * (s[i] - u[P[i]]);
        if (u[P[i]] <= 1e-14) {
          u[P[i]] = 0.0;
          passive[P[i]] = false;
        }
      }
    }
  }
  return u;
}

// Least distance programming (Lawson-Hanson): min ||w|| s.t. G w >= h,
// via one NNLS solve on the stacked matrix [G', h']'. `xi_floor` is the
// system's own infeasibility floor; no point can have a smaller residual.
ProjectionResult project_l2(const FiniteSystem& sys, const Rhs& b,
                            const Vector& x, const Tolerances& tols,
                            double xi_floor) {
  const int n = sys.dimension();
  const int m = sys.row_count();
  const Matrix& A = sys.row_matrix();

  // w = z - x must satisfy (-A) w >= A x - b. Columns are normalized: that
  // only reparameterizes the nonnegative cone, and keeps the stacked system
  // well scaled for distant query points.
  Matrix E(n + 1, m);
  E.topRows(n) = -A.transpose();
  E.row(n) = (A * x - b.b).transpose();
  for (int t = 0; t < m; ++t) {
    const double c = E.col(t).norm();
    if (c > 0) E.col(t) /= c;
  }
  Vector f = Vector::Zero(n + 1);
  f[n] = 1.0;

  const Vector u = nnls(E, f);
  const Vector r = E * u - f;
  if (std::abs(r[n]) <= 1e-12)
    throw NumericalFailure("projection LDP reports an empty polyhedron");
  Vector w(n);
  for (int j = 0; j < n; ++j) w[j] = -r[j] / r[n];

  ProjectionResult out;
  out.nearest = x + w;
  // A few correction sweeps soak up the residual noise that the r[n]
  // division amplifies for far-away query points.
  for (int sweep = 0; sweep < 16; ++sweep) {
    const Vector res = A * out.nearest - b.b;
    int worst;
    const double v = res.maxCoeff(&worst);
    if (v <= 0.0) break;
    const double nn = A.row(worst).squaredNorm();
    if (nn <= 0.0) break;
    out.nearest -= (v / nn) * A.row(worst).transpose();
  }
  out.distance = ModulusValue::of((out.nearest - x).norm());

  // KKT verification: feasibility of the reported point, plus stationarity
  // x - z in cone{a_t active} checked through a second small NNLS solve.
  if (residual(sys, b, out.nearest) >
      xi_floor + tols.tol_feas * activity_scale(sys, b, out.nearest))
    throw NumericalFailure("projection KKT verification failed (feasibility)");
  const Vector res = A * out.nearest - b.b;
  std::vector<int> act;
  for (int t = 0; t < m; ++t)
    if (res[t] >= -1e-7 * activity_scale(sys, b, out.nearest))
      act.push_back(t);
  Matrix Aact(n, act.size());
  for (std::size_t i = 0; i < act.size(); ++i)
    Aact.col(i) = A.row(act[i]).transpose();
  const Vector grad = x - out.nearest;
  Vector mu = act.empty() ? Vector() : nnls(Aact, grad);
  Vector defect = grad;
  if (!act.empty()) defect -= Aact * mu;
  if (defect.norm() > 1e-6 * (1.0 + x.norm()))
    throw NumericalFailure("projection KKT verification failed (stationarity)");
  return out;
}

ProjectionResult project_lp(const FiniteSystem& sys, const Rhs& b,
                            const Vector& x, NormKind norm) {
  const int n = sys.dimension();
  const int m = sys.row_count();
  const int nu = norm == NormKind::L1 ? n : 1;
  LpProblem lp;
  lp.objective = Vector::Zero(n + nu);
  for (int i = 0; i < nu; ++i) lp.objective[n + i] = -1.0;
  for (int t = 0; t < m; ++t) {
    Vector row = Vector::Zero(n + nu);
    row.head(n) = sys.row(t).a;
    lp.ineq.emplace_back(row, b.b[t]);
  }
  for (int i = 0; i < n; ++i) {
    const int ucol = n + (norm == NormKind::L1 ? i : 0);
    Vector pos = Vector::Zero(n + nu), neg = Vector::Zero(n + nu);
    pos[i] = 1.0;
    pos[ucol] = -1.0;
    neg[i] = -1.0;
    neg[ucol] = -1.0;
    lp.ineq.emplace_back(pos, x[i]);
    lp.ineq.emplace_back(neg, -x[i]);
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status == LpSolution::Status::Infeasible) {
    ProjectionResult r;
    r.distance = ModulusValue::infinity();
    return r;
  }
  if (sol.status != LpSolution::Status::Optimal)
    throw NumericalFailure("projection LP did not solve");
  ProjectionResult r;
  r.nearest = sol.point.head(n);
  r.distance = ModulusValue::of(norm_of(x - r.nearest, norm));
  return r;
}

}  // namespace

ProjectionResult project_to_polyhedron(const FiniteSystem& sys, const Rhs& b,
                                       const Vector& x) {
  b.check_matches(sys);
  if (x.size() != sys.dimension())
    throw DimensionMismatch("projection point dimension mismatch");
  Tolerances tols;
  if (residual(sys, b, x) <= 0.0) {
    ProjectionResult r;
    r.nearest = x;
    r.distance = ModulusValue::of(0.0);
    return r;
  }
  const double xi = infeasibility_floor(sys, b);
  if (xi > tols.tol_feas * std::max(1.0, b.b.lpNorm<Eigen::Infinity>())) {
    ProjectionResult r;
    r.distance = ModulusValue::infinity();
    return r;
  }
  if (sys.norm() == NormKind::L2) return project_l2(sys, b, x, tols, xi);
  return project_lp(sys, b, x, sys.norm());
}

RowSpace rank_and_rowspace(const FiniteSystem& sys, double tol_rank) {
  Eigen::JacobiSVD<Matrix> svd(sys.row_matrix(), Eigen::ComputeThinV);
  RowSpace rs;
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) {
    rs.basis = Matrix::Zero(sys.dimension(), 0);
    return rs;
  }
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol_rank * sv[0]) ++rs.rank;
  rs.basis = svd.matrixV().leftCols(rs.rank);
  return rs;
}

namespace {

// C(m, r) with early exit above `cap`; returns cap+1 on overflow.
long long binomial_capped(int m, int r, long long cap) {
  if (r < 0 || r > m) return 0;
  r = std::min(r, m - r);
  long long c = 1;
  for (int i = 1; i <= r; ++i) {
    c = c * (m - r + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

bool subset_independent(const Matrix& A, const std::vector<int>& J,
                        double sigma_floor) {
  const int r = static_cast<int>(J.size());
  if (r == 0) return true;
  if (r == 1) return A.row(J[0]).norm() > sigma_floor;
  if (r == 2) {
    const double g11 = A.row(J[0]).squaredNorm();
    const double g22 = A.row(J[1]).squaredNorm();
    const double g12 = A.row(J[0]).dot(A.row(J[1]));
    const double tr = g11 + g22;
    const double det = std::max(g11 * g22 - g12 * g12, 0.0);
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    const double lmin = 0.5 * (tr - disc);
    return lmin > sigma_floor * sigma_floor;
  }
  Matrix S(r, A.cols());
  for (int i = 0; i < r; ++i) S.row(i) = A.row(J[i]);
  Eigen::JacobiSVD<Matrix> svd(S);
  return svd.singularValues()(r - 1) > sigma_floor;
}

}  // namespace

void for_each_independent_subset(
    const FiniteSystem& sys, long long cap, double tol_rank,
    const std::function<void(const std::vector<int>&)>& fn) {
  const Matrix& A = sys.row_matrix();
  Eigen::JacobiSVD<Matrix> svd(A);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol_rank * smax) ++r;

  const int m = sys.row_count();
  if (binomial_capped(m, r, cap) > cap)
    throw SizeLimitExceeded("independent-subset enumeration above cap");
  if (r == 0) {
    fn({});
    return;
  }
  const double sigma_floor = tol_rank * smax;

  std::vector<int> J(r);
  std::iota(J.begin(), J.end(), 0);
  while (true) {
    if (subset_independent(A, J, sigma_floor)) fn(J);
    int i = r - 1;
    while (i >= 0 && J[i] == m - r + i) --i;
    if (i < 0) break;
    ++J[i];
    for (int k = i + 1; k < r; ++k) J[k] = J[k - 1] + 1;
  }
}

std::vector<IndexSubset> enumerate_independent_subsets(const FiniteSystem& sys,
                                                       long long cap,
                                                       double tol_rank) {
  std::vector<IndexSubset> out;
  for_each_independent_subset(sys, cap, tol_rank,
                              [&](const std::vector<int>& J) {
                                out.emplace_back(J);
                              });
  return out;
}

std::vector<Vector> enumerate_vertices(const FiniteSystem& sys, const Rhs& b,
                                       long long cap, const Tolerances& tols) {
  b.check_matches(sys);
  if (!system_feasible(sys, b, tols.tol_feas))
    throw Infeasible("F(b) is empty; no vertices to enumerate");

  const RowSpace rs = rank_and_rowspace(sys, tols.tol_rank);
  const int n = sys.dimension();
  const int r = rs.rank;
  if (r == 0) return {Vector::Zero(n)};

  const Matrix R = sys.row_matrix() * rs.basis;  // m x r reduced rows
  const int m = sys.row_count();
  if (binomial_capped(m, r, cap) > cap)
    throw SizeLimitExceeded("vertex enumeration above cap");
  Eigen::JacobiSVD<Matrix> svd(R);
  const double smax_r = svd.singularValues()(0);
  const double bscale = std::max(1.0, b.b.lpNorm<Eigen::Infinity>());

  std::vector<Vector> reduced;
  std::vector<int> J(r);
  std::iota(J.begin(), J.end(), 0);
  while (true) {
    Matrix Rj(r, r);
    Vector bj(r);
    for (int i = 0; i < r; ++i) {
      Rj.row(i) = R.row(J[i]);
      bj[i] = b.b[J[i]];
    }
    Eigen::JacobiSVD<Matrix> sub(Rj, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (sub.singularValues()(r - 1) > tols.tol_rank * smax_r) {
      Vector y = sub.solve(bj);
      const double scale = std::max(bscale, y.norm());
      if (((R * y - b.b).array() <= tols.tol_feas * scale).all()) {
        bool dup = false;
        for (const auto& z : reduced)
          if ((z - y).norm() <= tols.dedupe * std::max(1.0, y.norm())) {
            dup = true;
            break;
          }
        if (!dup) reduced.push_back(y);
      }
    }
    int i = r - 1;
    while (i >= 0 && J[i] == m - r + i) --i;
    if (i < 0) break;
    ++J[i];
    for (int k = i + 1; k < r; ++k) J[k] = J[k - 1] + 1;
  }

  std::vector<Vector> out;
  out.reserve(reduced.size());
  for (const auto& y : reduced) out.push_back(rs.basis * y);
  std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& c) {
    for (int i = 0; i < a.size(); ++i)
      if (a[i] != c[i]) return a[i] < c[i];
    return false;
  });
  return out;
}

}  // namespace hoffman
