#ifndef HOFFMAN_LP_HPP
#define HOFFMAN_LP_HPP

#include "hoffman/types.hpp"

namespace hoffman {

/// maximize objective' z  subject to  eq rows (= rhs), ineq rows (<= rhs)
/// and optional per-variable bounds. Variables are free unless bounded.
struct LpProblem {
  Vector objective;
  std::vector<std::pair<Vector, double>> eq;
  std::vector<std::pair<Vector, double>> ineq;
  std::vector<std::optional<double>> lower;  // empty or size n
  std::vector<std::optional<double>> upper;

  int n() const { return static_cast<int>(objective.size()); }
  void validate() const;
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double value = 0.0;
  Vector point;        // primal point (Optimal) or empty
  Vector certificate;  // duals per row, eq first (Optimal); ray (Unbounded)
};

/// Dense two-phase simplex with Bland's rule. Deterministic for fixed input.
LpSolution solve_lp(const LpProblem& p);

}  // namespace hoffman

#endif  // HOFFMAN_LP_HPP
