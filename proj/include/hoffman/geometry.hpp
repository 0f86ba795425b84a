#ifndef HOFFMAN_GEOMETRY_HPP
#define HOFFMAN_GEOMETRY_HPP

#include <functional>

#include "hoffman/lp.hpp"
#include "hoffman/types.hpp"

namespace hoffman {

// ---------------------------------------------------------------------------
// Distance from the origin to a convex hull, measured in the dual norm.
// ---------------------------------------------------------------------------

struct HullDistanceResult {
  ModulusValue distance;  // +infinity for the empty point set
  Vector weights;         // simplex coefficients attaining the minimum
  Vector point;           // sum_i weights[i] * points[i]
};

/// min over the simplex of || sum lambda_t p_t || in dual(norm).
/// L2 uses Wolfe's minimum-norm-point algorithm, L1/LInf an LP; one- and
/// two-point hulls are solved in closed form.
HullDistanceResult dual_distance_to_hull(const std::vector<Vector>& points,
                                         NormKind norm);

/// Fast path for a segment hull {(1-l)p + l q}: returns (distance, lambda).
std::pair<double, double> segment_dual_min(const Vector& p, const Vector& q,
                                           NormKind dual_norm);

/// Minimum of ||.||_2 over conv(points); weights returned per point.
std::pair<double, Vector> wolfe_min_norm(const std::vector<Vector>& points,
                                         double tol = 1e-12);

/// LP feasibility check for 0 in conv(points); used as the independent
/// cross-check for distance == 0.
bool origin_in_hull_lp(const std::vector<Vector>& points);

// ---------------------------------------------------------------------------
// Strict linear systems defining the D(x) family.
// ---------------------------------------------------------------------------

/// Witness d for { a_t'd = 1 (t in D), a_t'd < 1 (t in Tx \ D) }, or absent
/// when the strict system is inconsistent. Solved as: maximize s subject to
/// a_t'd = 1 on D, a_t'd + s <= 1 on Tx \ D, s <= 1; consistent iff the
/// optimum exceeds tol_strict. With Tx == D the equality block is solved by
/// least squares and consistency means residual < tol_strict.
std::optional<Vector> strict_system_witness(const FiniteSystem& sys,
                                            const IndexSubset& Tx,
                                            const IndexSubset& D,
                                            double tol_strict = Tolerances{}.tol_strict);

struct StrictSlack {
  double slack;  // optimal s of the witness LP (capped at 1)
  Vector witness;
};

/// Same consistency test, additionally reporting the optimal slack. The
/// witness norm can blow up while the slack stays at the cap; the ratio
/// slack / max(1, ||d||_inf) is the scale-free margin of the strict system.
std::optional<StrictSlack> strict_system_slack(const FiniteSystem& sys,
                                               const IndexSubset& Tx,
                                               const IndexSubset& D,
                                               double tol_strict = Tolerances{}.tol_strict);

// ---------------------------------------------------------------------------
// Projection onto the polyhedron {z : a_t'z <= b_t}.
// ---------------------------------------------------------------------------

struct ProjectionResult {
  ModulusValue distance;  // +infinity when the polyhedron is empty
  Vector nearest;         // empty when infeasible
};

/// Distance in sys.norm from x to F(b). L2 runs an active-set quadratic
/// solve with a KKT check; L1/LInf reformulate as LPs.
ProjectionResult project_to_polyhedron(const FiniteSystem& sys, const Rhs& b,
                                       const Vector& x);

// ---------------------------------------------------------------------------
// Row-space utilities and enumerations.
// ---------------------------------------------------------------------------

struct RowSpace {
  int rank = 0;
  Matrix basis;  // n x rank, orthonormal columns spanning span{a_t}
};

RowSpace rank_and_rowspace(const FiniteSystem& sys,
                           double tol_rank = Tolerances{}.tol_rank);

constexpr long long kDefaultSubsetCap = 10'000'000;

/// All subsets J of size rank(A) with linearly independent rows, in
/// lexicographic order. Throws SizeLimitExceeded when the number of
/// candidate subsets exceeds `cap`.
std::vector<IndexSubset> enumerate_independent_subsets(
    const FiniteSystem& sys, long long cap = kDefaultSubsetCap,
    double tol_rank = Tolerances{}.tol_rank);

/// Streaming form of the above; `fn` receives each subset's indices.
void for_each_independent_subset(
    const FiniteSystem& sys, long long cap, double tol_rank,
    const std::function<void(const std::vector<int>&)>& fn);

/// E(b) = extr(F(b) ∩ span{a_t}): reduce to row-space coordinates, solve all
/// invertible r x r subsystems, keep feasible solutions, deduplicate.
/// Nonempty whenever F(b) is; sorted lexicographically by coordinates.
std::vector<Vector> enumerate_vertices(const FiniteSystem& sys, const Rhs& b,
                                       long long cap = kDefaultSubsetCap,
                                       const Tolerances& tols = {});

/// Phase-1 style emptiness test for F(b).
bool system_feasible(const FiniteSystem& sys, const Rhs& b,
                     double tol = Tolerances{}.tol_feas);

}  // namespace hoffman

#endif  // HOFFMAN_GEOMETRY_HPP
