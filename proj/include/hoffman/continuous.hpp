#ifndef HOFFMAN_CONTINUOUS_HPP
#define HOFFMAN_CONTINUOUS_HPP

#include <functional>

#include "hoffman/types.hpp"

namespace hoffman {

/// One interval piece of the index set: t in [lo, hi] with coefficient and
/// right-hand-side functions of t.
struct Segment {
  double lo, hi;
  std::function<Vector(double)> coeff;
  std::function<double(double)> rhs;
};

struct ExtraRow {
  std::string label;
  Vector a;
  double b;
};

/// sigma(b) over T = union of intervals plus finitely many extra indices.
struct ContinuousSystem {
  int n = 0;
  std::vector<Segment> segments;
  std::vector<ExtraRow> extra_rows;
  NormKind norm = NormKind::L2;

  void validate() const;
  /// sup over T of a_t'x - b_t, maximized over each interval by scan plus
  /// golden-section refinement; exact over the extra rows.
  double residual(const Vector& x, int scan_points = 4097) const;
  /// Points a_t attaining the residual maximum within tol (absolute).
  std::vector<Vector> argmax_points(const Vector& x, double tol,
                                    int scan_points = 4097) const;
};

struct GridSpec {
  double step = 0.1;  // endpoints are always included
};

/// Finite subsystem sampled at grid nodes lo, lo+step, ..., hi plus the
/// extra rows; labels encode the t values.
std::pair<FiniteSystem, Rhs> discretize(const ContinuousSystem& csys,
                                        const GridSpec& g);

/// Built-in worked systems: "example-4-3" and "example-4-9".
ContinuousSystem builtin_system(const std::string& name);

/// Segment backed by tabulated samples with linear interpolation; samples
/// are (t, a_1..a_n, b) rows sorted by t.
Segment tabulated_segment(const std::vector<std::vector<double>>& samples,
                          int n);

}  // namespace hoffman

#endif  // HOFFMAN_CONTINUOUS_HPP
