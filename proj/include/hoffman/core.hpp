#ifndef HOFFMAN_CORE_HPP
#define HOFFMAN_CORE_HPP

#include "hoffman/types.hpp"

namespace hoffman {

/// f_b(x) = max_t (a_t' x - b_t). Negative at Slater points.
double residual(const FiniteSystem& sys, const Rhs& b, const Vector& x);

/// [f_b(x)]_+ , the sup-norm distance from b to the set of right-hand sides
/// that make x feasible. Zero exactly when x is feasible.
ModulusValue rhs_distance(const FiniteSystem& sys, const Rhs& b, const Vector& x);

/// Activity scale used by all relative thresholds: max(1, ||b||_inf, ||x||).
double activity_scale(const FiniteSystem& sys, const Rhs& b, const Vector& x);

/// T(x): rows with |a_t' x - b_t| <= tol_active * scale, for a feasible x.
/// Throws InfeasiblePoint when f_b(x) exceeds the tolerance.
IndexSubset active_set(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                       double tol_active = Tolerances{}.tol_active);

/// J_b(x): rows attaining the residual maximum within tol_active * scale.
/// Defined for any x, feasible or not; never empty.
IndexSubset argmax_set(const FiniteSystem& sys, const Rhs& b, const Vector& x,
                       double tol_active = Tolerances{}.tol_active);

}  // namespace hoffman

#endif  // HOFFMAN_CORE_HPP
