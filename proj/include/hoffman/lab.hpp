#ifndef HOFFMAN_LAB_HPP
#define HOFFMAN_LAB_HPP

#include <functional>
#include <random>

#include "hoffman/types.hpp"

namespace hoffman {

/// A multifunction M : Y =) X probed through finite samples. Y and X are
/// finite-dimensional normed spaces (or the real line, as size-1 vectors).
/// The evaluator must be deterministic; `level` hints how far to extend
/// samples of unbounded image sets.
struct SampledMultifunction {
  Vector ybar;
  std::function<std::vector<Vector>(const Vector& y, int level)> evaluator;
  std::function<double(const Vector& y1, const Vector& y2)> dist_y;
  std::function<double(const Vector& x1, const Vector& x2)> dist_x;
  std::function<double(const Vector& x)> dist_to_image_bar;  // d(x, M(ybar))
  /// A point y with d(y, ybar) <= radius inside the declared domain.
  std::function<Vector(double radius, std::mt19937_64&)> y_sampler;
  double global_radius = 2.0;  // sampling range for the unrestricted moduli
};

struct LabSchedules {
  int levels = 14;
  double y_radius0 = 1.0;
  double y_shrink = 0.25;
  double eps0 = 0.5;
  double eps_shrink = 0.5;
  double clm_window0 = 2.0;
  int y_per_level = 48;
  int global_per_level = 24;
  double cap = 1e6;
  std::uint64_t seed = 20240;
  int clm_points = 6;
  int tail_levels = 3;  // limsup proxy: max over this many finest levels
};

struct ModulusEstimate {
  ModulusValue value;            // +infinity when diverged
  bool diverged = false;         // finest-level max exceeded the cap
  std::vector<double> level_max; // per refinement level
  std::vector<int> level_pairs;  // sample counts per level
  double comparable() const {
    return diverged ? std::numeric_limits<double>::infinity()
                    : value.as_double();
  }
};

struct ModuliEstimates {
  std::vector<std::pair<Vector, ModulusEstimate>> clm_per_point;
  ModulusEstimate sup_clm;
  ModulusEstimate uclm;        // Cor 3.4(ii) form: x in an eps-enlargement
  ModulusEstimate uclm_local;  // Def 3.1 form: additionally y near ybar
  ModulusEstimate lipusc;
  ModulusEstimate hof;
};

/// One-sided (lower) estimates of the four moduli via running maxima of
/// d(x, M(ybar)) / d(y, ybar) over scheduled sample pools. Divergence is
/// declared, never proven: the finest level exceeded the cap.
ModuliEstimates estimate_moduli(const SampledMultifunction& m,
                                const LabSchedules& s = {});

/// Named fixtures: "staircase" (branch truncation R, default 1e3), "step",
/// "interval", "truncated-halfline".
SampledMultifunction fixture(const std::string& name, double ybar,
                             double R = 1e3);

/// M(y) = [lo(y), hi(y)], the y-slices of a convex polygon given by its
/// vertices; a convex-graph multifunction with closed images.
SampledMultifunction polygon_multifunction(
    const std::vector<std::pair<double, double>>& polygon_vertices,
    double ybar);

/// M(y) = { c_i + s_i y + k_i |y - ybar| }: a finite piecewise-affine family
/// for randomized chain-inequality tests.
SampledMultifunction piecewise_affine_multifunction(int branches,
                                                    double ybar,
                                                    std::uint64_t seed);

/// The feasible set mapping b -> F(b) of a finite system as a sampled
/// multifunction (Y = R^m with the sup norm, X = R^n with the system norm).
SampledMultifunction system_multifunction(const FiniteSystem& sys,
                                          const Rhs& bbar);

}  // namespace hoffman

#endif  // HOFFMAN_LAB_HPP
