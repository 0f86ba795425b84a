#ifndef HOFFMAN_TESTS_SUPPORT_HPP
#define HOFFMAN_TESTS_SUPPORT_HPP

#include <optional>
#include <random>

#include "hoffman/core.hpp"
#include "hoffman/geometry.hpp"
#include "hoffman/lp.hpp"

namespace hoffman::testsupport {

// A boundary pair (x1, x2) with T(x1) strictly inside T(x2): x2 is a vertex
// and x1 slides along the edge released by dropping one of its active rows.
inline std::optional<std::pair<Vector, Vector>> nested_pair(
    const FiniteSystem& sys, const Rhs& b, std::mt19937_64& rng) {
  std::vector<Vector> verts;
  try {
    verts = enumerate_vertices(sys, b);
  } catch (const Infeasible&) {
    return std::nullopt;
  }
  const int n = sys.dimension();
  std::shuffle(verts.begin(), verts.end(), rng);
  for (const Vector& v : verts) {
    IndexSubset T;
    try {
      T = active_set(sys, b, v);
    } catch (const InfeasiblePoint&) {
      continue;
    }
    if (T.size() < 2) continue;
    std::vector<int> order = T.indices;
    std::shuffle(order.begin(), order.end(), rng);
    for (int drop : order) {
      LpProblem lp;
      lp.objective = Vector::Zero(n);
      for (int t : T.indices)
        if (t != drop) lp.eq.emplace_back(sys.row(t).a, 0.0);
      lp.ineq.emplace_back(sys.row(drop).a, -1.0);
      lp.lower.assign(n, -100.0);
      lp.upper.assign(n, 100.0);
      LpSolution sol = solve_lp(lp);
      if (sol.status != LpSolution::Status::Optimal) continue;
      const Vector d = sol.point;

      double step = 0.5;
      for (int t = 0; t < sys.row_count(); ++t) {
        if (T.contains(t)) continue;
        const double ad = sys.row(t).a.dot(d);
        if (ad <= 1e-12) continue;
        const double slack = b.b[t] - sys.row(t).a.dot(v);
        step = std::min(step, 0.5 * slack / ad);
      }
      if (step < 1e-6) continue;
      Vector x1 = v + step * d;
      if (residual(sys, b, x1) > 0.0) continue;
      IndexSubset T1;
      try {
        T1 = active_set(sys, b, x1);
      } catch (const InfeasiblePoint&) {
        continue;
      }
      std::vector<int> expected;
      for (int t : T.indices)
        if (t != drop) expected.push_back(t);
      if (T1.indices != expected) continue;
      return std::make_pair(x1, v);
    }
  }
  return std::nullopt;
}

}  // namespace hoffman::testsupport

#endif  // HOFFMAN_TESTS_SUPPORT_HPP
