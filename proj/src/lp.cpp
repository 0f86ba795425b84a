#include "hoffman/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hoffman {

void LpProblem::validate() const {
  const int nv = n();
  if (nv <= 0) throw ValidationError("LP needs at least one variable");
  if (!objective.allFinite()) throw ValidationError("LP objective not finite");
  auto check_rows = [&](const std::vector<std::pair<Vector, double>>& rows) {
    for (const auto& [a, r] : rows) {
      if (a.size() != nv) throw DimensionMismatch("LP row length mismatch");
      if (!a.allFinite() || !std::isfinite(r))
        throw ValidationError("LP row not finite");
    }
  };
  check_rows(eq);
  check_rows(ineq);
  if (!lower.empty() && static_cast<int>(lower.size()) != nv)
    throw DimensionMismatch("LP lower bounds size mismatch");
  if (!upper.empty() && static_cast<int>(upper.size()) != nv)
    throw DimensionMismatch("LP upper bounds size mismatch");
}

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau simplex core, minimizing. Bland's rule throughout: entering column
// is the lowest eligible index, leaving row breaks ratio ties by the lowest
// basic-variable index. `allowed` masks columns that may enter.
struct Tableau {
  Matrix T;                // (m+1) x (ncols+1); last row costs, last col rhs
  std::vector<int> basis;  // size m
  int m, ncols;

  double& rhs(int i) { return T(i, ncols); }
  double& cost(int j) { return T(m, j); }

  void pivot(int pr, int pc) {
    T.row(pr) /= T(pr, pc);
    for (int i = 0; i <= m; ++i) {
      if (i == pr) continue;
      const double f = T(i, pc);
      if (f != 0.0) T.row(i) -= f * T.row(pr);
    }
    basis[pr] = pc;
  }

  // Returns Optimal or Unbounded; on Unbounded, `ray_col` is the entering
  // column with no positive pivot.
  enum class Result { Optimal, Unbounded };
  Result run(const std::vector<bool>& allowed, double cost_eps, int& ray_col) {
    const int max_iter = 20000 + 200 * (m + ncols);
    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!allowed[j]) continue;
        if (T(m, j) < -cost_eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Result::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double piv = T(i, enter);
        if (piv <= kPivotEps) continue;
        const double ratio = std::max(T(i, ncols), 0.0) / piv;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) {
        ray_col = enter;
        return Result::Unbounded;
      }
      pivot(leave, enter);
    }
    throw NumericalFailure("simplex iteration limit exceeded");
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  p.validate();
  const int nv = p.n();

  // Collect rows: equalities first, then inequalities, then bound rows.
  std::vector<Vector> rows;
  std::vector<double> rhs;
  std::vector<bool> is_eq;
  for (const auto& [a, r] : p.eq) {
    rows.push_back(a);
    rhs.push_back(r);
    is_eq.push_back(true);
  }
  auto push_ineq = [&](const Vector& a, double r) {
    rows.push_back(a);
    rhs.push_back(r);
    is_eq.push_back(false);
  };
  for (const auto& [a, r] : p.ineq) push_ineq(a, r);
  for (int j = 0; j < nv && !p.lower.empty(); ++j)
    if (p.lower[j]) {
      Vector a = Vector::Zero(nv);
      a[j] = -1.0;
      push_ineq(a, -*p.lower[j]);
    }
  for (int j = 0; j < nv && !p.upper.empty(); ++j)
    if (p.upper[j]) {
      Vector a = Vector::Zero(nv);
      a[j] = 1.0;
      push_ineq(a, *p.upper[j]);
    }

  const int m = static_cast<int>(rows.size());
  const int n_eq = static_cast<int>(p.eq.size());
  if (m == 0) {
    // No constraints at all: bounded only if the objective vanishes.
    LpSolution s;
    if (p.objective.isZero(0.0)) {
      s.status = LpSolution::Status::Optimal;
      s.value = 0.0;
      s.point = Vector::Zero(nv);
      s.certificate = Vector();
    } else {
      s.status = LpSolution::Status::Unbounded;
      s.certificate = p.objective;
    }
    return s;
  }

  // Standard form: z = pos - neg, slack per inequality, artificial per row
  // that cannot start with a basic slack (equalities and negated rows).
  const int n_split = 2 * nv;
  int n_slack = 0;
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (!is_eq[i]) slack_col[i] = n_split + n_slack++;

  std::vector<bool> negated(m, false);
  for (int i = 0; i < m; ++i) negated[i] = rhs[i] < 0.0;

  std::vector<int> art_col(m, -1);
  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (is_eq[i] || negated[i]) art_col[i] = n_split + n_slack + n_art++;

  const int ncols = n_split + n_slack + n_art;
  Tableau tab;
  tab.m = m;
  tab.ncols = ncols;
  tab.T = Matrix::Zero(m + 1, ncols + 1);
  tab.basis.assign(m, -1);

  double scale_b = 1.0;
  for (int i = 0; i < m; ++i) {
    const double sgn = negated[i] ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) {
      tab.T(i, 2 * j) = sgn * rows[i][j];
      tab.T(i, 2 * j + 1) = -sgn * rows[i][j];
    }
    if (slack_col[i] >= 0) tab.T(i, slack_col[i]) = sgn;
    if (art_col[i] >= 0) tab.T(i, art_col[i]) = 1.0;
    tab.rhs(i) = sgn * rhs[i];
    scale_b = std::max(scale_b, std::abs(rhs[i]));
    tab.basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
  }

  std::vector<bool> allowed(ncols, true);
  int ray_col = -1;

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) tab.cost(art_col[i]) = 1.0;
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) tab.T.row(m) -= tab.T.row(i);

    if (tab.run(allowed, 1e-9, ray_col) != Tableau::Result::Optimal)
      throw NumericalFailure("phase-1 simplex reported unbounded");
    double phase1 = 0.0;
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0 && tab.basis[i] == art_col[i])
        phase1 += std::max(tab.rhs(i), 0.0);
    phase1 = std::max(phase1, -tab.T(m, ncols));
    if (phase1 > 1e-8 * scale_b) {
      LpSolution s;
      s.status = LpSolution::Status::Infeasible;
      s.value = phase1;
      return s;
    }
    // Drive remaining artificials out of the basis where possible,
    // pivoting on the largest-magnitude structural entry of the row.
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0 || tab.basis[i] != art_col[i]) continue;
      int pc = -1;
      double best = 1e-9;
      for (int j = 0; j < n_split + n_slack; ++j)
        if (std::abs(tab.T(i, j)) > best) {
          best = std::abs(tab.T(i, j));
          pc = j;
        }
      if (pc >= 0) tab.pivot(i, pc);
      // Otherwise the row is redundant; the artificial stays basic at zero.
    }
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) allowed[art_col[i]] = false;
  }

  // Phase 2: minimize -objective over split variables.
  tab.T.row(m).setZero();
  for (int j = 0; j < nv; ++j) {
    tab.cost(2 * j) = -p.objective[j];
    tab.cost(2 * j + 1) = p.objective[j];
  }
  for (int i = 0; i < m; ++i) {
    const double c = tab.cost(tab.basis[i]);
    if (c != 0.0) tab.T.row(m) -= c * tab.T.row(i);
  }
  const double cost_eps =
      1e-9 * (1.0 + p.objective.cwiseAbs().maxCoeff());

  LpSolution out;
  if (tab.run(allowed, cost_eps, ray_col) == Tableau::Result::Unbounded) {
    out.status = LpSolution::Status::Unbounded;
    Vector dir = Vector::Zero(ncols);
    dir[ray_col] = 1.0;
    for (int i = 0; i < tab.m; ++i) dir[tab.basis[i]] = -tab.T(i, ray_col);
    Vector ray = Vector::Zero(nv);
    for (int j = 0; j < nv; ++j) ray[j] = dir[2 * j] - dir[2 * j + 1];
    out.certificate = ray;
    return out;
  }

  Vector std_point = Vector::Zero(ncols);
  for (int i = 0; i < m; ++i) std_point[tab.basis[i]] = std::max(tab.rhs(i), 0.0);
  out.point = Vector::Zero(nv);
  for (int j = 0; j < nv; ++j)
    out.point[j] = std_point[2 * j] - std_point[2 * j + 1];
  out.value = p.objective.dot(out.point);
  out.status = LpSolution::Status::Optimal;

  // Duals read off the initial identity columns (slack or artificial);
  // negated rows flip the dual sign back to the caller's orientation.
  out.certificate = Vector::Zero(m);
  for (int i = 0; i < m; ++i) {
    const int id_col = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    const double y_tab = -tab.cost(id_col);
    out.certificate[i] = negated[i] ? -y_tab : y_tab;
  }
  return out;
}

}  // namespace hoffman
