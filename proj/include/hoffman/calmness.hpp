#ifndef HOFFMAN_CALMNESS_HPP
#define HOFFMAN_CALMNESS_HPP

#include <random>

#include "hoffman/continuous.hpp"
#include "hoffman/geometry.hpp"
#include "hoffman/types.hpp"

namespace hoffman {

/// The family D(x): subsets D of the active set whose coefficient vectors
/// lie on a hyperplane {a : a'd = 1} leaving the remaining active vectors
/// and the origin strictly below. Zero rows never qualify for membership;
/// the empty set always belongs (witness d = 0).
struct DFamily {
  Vector point;
  IndexSubset active;
  std::vector<IndexSubset> members;  // lexicographic; certificates = witnesses
};

DFamily d_family(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                 const Tolerances& tols = {}, long long cap = 24);

struct CalmnessReport {
  ModulusValue value;
  IndexSubset attaining;
  DFamily family;
  std::vector<std::vector<Vector>> end_set_hulls;  // one vertex list per D
};

/// clm F(b, x) = max over the D-family of d_*(0, conv{a_t, t in D})^{-1}.
/// Zero for Slater points. Exact for finite polyhedral data; for grid
/// discretizations this is the formula value of the discretized system.
CalmnessReport clm_at(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                      const Tolerances& tols = {});

/// The hull list {conv{a_t, t in D} : D in D(x), D nonempty}; their union is
/// the end set of the subdifferential in the finite case.
std::vector<std::vector<Vector>> end_set_finite(const FiniteSystem& sys,
                                                const Rhs& b, const Vector& x,
                                                const Tolerances& tols = {});

// ---------------------------------------------------------------------------
// Outside-point limsup estimator (points sampled along a sequence -> x).
// ---------------------------------------------------------------------------

struct SamplingTrailEntry {
  int index;
  double value;
  double running_max;
};

struct SamplingEstimate {
  ModulusValue estimate;  // running max; 0 when no usable sample
  std::vector<SamplingTrailEntry> trail;
  int used = 0;
  bool empty_sampler = false;
};

/// Value of d_*(0, conv{a_t, t in J(x)})^{-1} at one infeasible point.
/// `tie_rel` widens the argmax set to residuals within tie_rel * f(x) and
/// snaps the point onto the exact tie manifold before evaluating, so every
/// reported value is attained at a genuine outside point.
std::optional<double> outside_point_value(const FiniteSystem& sys, const Rhs& b,
                                          const Vector& x,
                                          const Tolerances& tols = {},
                                          double tie_rel = 1e-3);

SamplingEstimate clm_sampling(const FiniteSystem& sys, const Rhs& b,
                              const std::vector<Vector>& samples,
                              const Tolerances& tols = {},
                              double tie_rel = 1e-3);

SamplingEstimate clm_sampling(const ContinuousSystem& csys,
                              const std::vector<Vector>& samples,
                              const Tolerances& tols = {});

/// Default sampler for clm_sampling: radially shrinking random perturbations
/// around xbar, radii radius0 * shrink^k.
std::vector<Vector> radial_sequence(const Vector& xbar, int count,
                                    std::uint64_t seed, double radius0 = 1.0,
                                    double shrink = 0.7);

}  // namespace hoffman

#endif  // HOFFMAN_CALMNESS_HPP
