#ifndef HOFFMAN_HOFFMAN_GLOBAL_HPP
#define HOFFMAN_HOFFMAN_GLOBAL_HPP

#include <map>

#include "hoffman/continuous.hpp"
#include "hoffman/geometry.hpp"
#include "hoffman/types.hpp"

namespace hoffman {

struct GlobalHoffmanReport {
  ModulusValue value;
  IndexSubset attaining;            // certificate holds the hull weights
  Vector dual_certificate;          // y >= 0 supported on `attaining`
  std::map<std::string, double> route_values;
};

/// Hof F for a finite system: max over all independent row subsets J with
/// rank A_J = rank A of d_*(0, conv{a_t, t in J})^{-1}. The dual certificate
/// is y = lambda / ||A' lambda||_* built from the attaining subset, so that
/// ||A'y||_* = 1 and ||y||_1 equals the value.
GlobalHoffmanReport hof_global(const FiniteSystem& sys,
                               long long cap = kDefaultSubsetCap,
                               double tol_rank = Tolerances{}.tol_rank);

/// Brute-force route over all 2^m subsets (m <= 24): max over J with
/// 0 not in conv{a_t, t in J} of the inverse hull distance; sup of the
/// empty collection is 0.
ModulusValue hof_global_exhaustive(const FiniteSystem& sys);

struct GridGlobalReport {
  double grid_step;
  int row_count;
  GlobalHoffmanReport report;
};

/// hof_global of the grid discretization of a continuous system; a lower
/// approximation of the continuous supremum (no extrapolation attempted).
GridGlobalReport hof_global_grid(const ContinuousSystem& csys, double grid_step,
                                 long long cap = kDefaultSubsetCap);

}  // namespace hoffman

#endif  // HOFFMAN_HOFFMAN_GLOBAL_HPP
