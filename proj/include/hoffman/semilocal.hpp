#ifndef HOFFMAN_SEMILOCAL_HPP
#define HOFFMAN_SEMILOCAL_HPP

#include <functional>
#include <random>

#include "hoffman/calmness.hpp"
#include "hoffman/geometry.hpp"

namespace hoffman {

using Sampler = std::function<Vector(std::mt19937_64&)>;

struct SemiLocalReport {
  ModulusValue value;
  std::vector<std::pair<Vector, CalmnessReport>> candidates;  // per extreme point
  Vector attaining_point;
  std::optional<double> sampling_outside;  // outside-point route lower bound
  std::optional<double> sampling_ratio;    // ratio-supremum route lower bound
};

/// Hof F(b) = max over E(b) of clm F(b, x). E(b) is nonempty whenever F(b)
/// is, so the maximum is well defined; throws Infeasible otherwise.
SemiLocalReport hof_at(const FiniteSystem& sys, const Rhs& b,
                       long long cap = kDefaultSubsetCap,
                       const Tolerances& tols = {});

/// Running max of d_*(0, conv{a_t, t in J(x)})^{-1} over sampled points with
/// positive residual; a lower bound for Hof F(b).
SamplingEstimate hof_at_sampling(const FiniteSystem& sys, const Rhs& b,
                                 const Sampler& sampler, int count,
                                 std::uint64_t seed,
                                 const Tolerances& tols = {},
                                 double tie_rel = 1e-3);

/// Running max of d(x, F(b)) / d(b, F^{-1}(x)) over sampled points, skipping
/// feasible samples (the 0/0 := 0 convention). Deterministic for fixed seed.
SamplingEstimate mc_ratio_sup(const FiniteSystem& sys, const Rhs& b,
                              const Sampler& sampler, int count,
                              std::uint64_t seed);

/// Uniform sampler on the hypercube of half-width `radius` around `center`
/// (the origin when `center` is empty).
Sampler uniform_box_sampler(int n, double radius, Vector center = {});

/// Mixture sampler: uniform box draws plus log-radius perturbations around
/// the given anchor points; tailored to chase ratio suprema near vertices.
Sampler anchored_mixture_sampler(int n, double radius,
                                 std::vector<Vector> anchors);

struct ChainCheckReport {
  double hof_value = 0.0;
  double max_boundary_clm = 0.0;
  double mc_estimate = 0.0;
  double interior_clm = 0.0;
  bool has_interior = false;
  int boundary_samples = 0;
  bool passed = false;
};

/// Cross-checks at one right-hand side: boundary calmness never exceeds
/// Hof F(b), the extreme-point maximum attains it, the ratio supremum stays
/// below it, and interior points have zero calmness. Throws ChainViolation
/// with the offending sample on failure.
ChainCheckReport chain_check(const FiniteSystem& sys, const Rhs& b,
                             int boundary_count, int mc_count,
                             std::uint64_t seed,
                             const Tolerances& tols = {});

}  // namespace hoffman

#endif  // HOFFMAN_SEMILOCAL_HPP
