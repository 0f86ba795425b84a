#include "hoffman/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hoffman {

void ContinuousSystem::validate() const {
  if (n <= 0) throw ValidationError("continuous system needs positive dimension");
  if (segments.empty() && extra_rows.empty())
    throw ValidationError("continuous system needs at least one index");
  for (const auto& s : segments) {
    if (!(s.lo < s.hi)) throw ValidationError("segment needs lo < hi");
    if (!s.coeff || !s.rhs) throw ValidationError("segment functions missing");
  }
  for (const auto& e : extra_rows)
    if (e.a.size() != n) throw DimensionMismatch("extra row dimension mismatch");
}

namespace {

// Golden-section maximization of g on [lo, hi], assuming a bracketed peak.
double golden_max(const std::function<double(double)>& g, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 120 && (b - a) > 1e-13 * (1.0 + std::abs(b)); ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double ContinuousSystem::residual(const Vector& x, int scan_points) const {
  if (x.size() != n) throw DimensionMismatch("point dimension mismatch");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : extra_rows) best = std::max(best, e.a.dot(x) - e.b);
  for (const auto& s : segments) {
    auto g = [&](double t) { return s.coeff(t).dot(x) - s.rhs(t); };
    const double h = (s.hi - s.lo) / (scan_points - 1);
    double prev2 = g(s.lo), prev1 = g(s.lo + h);
    best = std::max({best, prev2, prev1});
    for (int i = 2; i < scan_points; ++i) {
      const double ti = s.lo + i * h;
      const double gi = g(ti);
      best = std::max(best, gi);
      if (prev1 >= prev2 && prev1 >= gi) {
        const double tstar = golden_max(g, ti - 2 * h, ti);
        best = std::max(best, g(tstar));
      }
      prev2 = prev1;
      prev1 = gi;
    }
    best = std::max(best, g(golden_max(g, s.lo, s.lo + 2 * h)));
    best = std::max(best, g(golden_max(g, s.hi - 2 * h, s.hi)));
  }
  return best;
}

std::vector<Vector> ContinuousSystem::argmax_points(const Vector& x, double tol,
                                                    int scan_points) const {
  const double f = residual(x, scan_points);
  std::vector<Vector> out;
  std::vector<double> arg_ts;
  for (const auto& s : segments) {
    auto g = [&](double t) { return s.coeff(t).dot(x) - s.rhs(t); };
    const double h = (s.hi - s.lo) / (scan_points - 1);
    double prev2 = g(s.lo), prev1 = g(s.lo + h);
    auto consider = [&](double t, double val) {
      if (f - val <= tol) {
        for (double u : arg_ts)
          if (std::abs(u - t) <= 4 * h) return;
        arg_ts.push_back(t);
        out.push_back(s.coeff(t));
      }
    };
    consider(s.lo, prev2);
    consider(s.lo + h, prev1);
    for (int i = 2; i < scan_points; ++i) {
      const double ti = s.lo + i * h;
      const double gi = g(ti);
      if (prev1 >= prev2 && prev1 >= gi) {
        const double tstar = golden_max(g, ti - 2 * h, ti);
        consider(tstar, g(tstar));
      }
      consider(ti, gi);
      prev2 = prev1;
      prev1 = gi;
    }
    const double tlo = golden_max(g, s.lo, s.lo + 2 * h);
    consider(tlo, g(tlo));
    const double thi = golden_max(g, s.hi - 2 * h, s.hi);
    consider(thi, g(thi));
  }
  for (const auto& e : extra_rows)
    if (f - (e.a.dot(x) - e.b) <= tol) out.push_back(e.a);
  return out;
}

std::pair<FiniteSystem, Rhs> discretize(const ContinuousSystem& csys,
                                        const GridSpec& g) {
  csys.validate();
  if (!(g.step > 0.0)) throw ValidationError("grid step must be positive");
  std::vector<SystemRow> rows;
  std::vector<double> rhs;
  char buf[64];
  for (std::size_t si = 0; si < csys.segments.size(); ++si) {
    const auto& s = csys.segments[si];
    if (g.step > s.hi - s.lo)
      throw ValidationError("grid step exceeds segment length");
    std::vector<double> nodes;
    const long long kmax =
        static_cast<long long>(std::floor((s.hi - s.lo) / g.step + 1e-9));
    for (long long k = 0; k <= kmax; ++k) nodes.push_back(s.lo + k * g.step);
    if (nodes.back() < s.hi - 1e-9 * g.step)
      nodes.push_back(s.hi);
    else
      nodes.back() = s.hi;
    for (double t : nodes) {
      std::snprintf(buf, sizeof(buf), "t=%.12g", t);
      std::string label = buf;
      if (csys.segments.size() > 1) label += "#" + std::to_string(si);
      rows.push_back({label, s.coeff(t)});
      rhs.push_back(s.rhs(t));
    }
  }
  for (const auto& e : csys.extra_rows) {
    rows.push_back({e.label, e.a});
    rhs.push_back(e.b);
  }
  Vector b(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) b[i] = rhs[i];
  return {FiniteSystem(csys.n, std::move(rows), csys.norm), Rhs(b)};
}

ContinuousSystem builtin_system(const std::string& name) {
  ContinuousSystem cs;
  cs.n = 2;
  cs.norm = NormKind::L2;
  if (name == "example-4-3") {
    Segment s;
    s.lo = 0.0;
    s.hi = M_PI;
    s.coeff = [](double t) {
      Vector a(2);
      a << t * std::cos(t), t * std::sin(t);
      return a;
    };
    s.rhs = [](double t) { return t; };
    cs.segments.push_back(std::move(s));
    cs.extra_rows.push_back({"t=4", (Vector(2) << 1.0, 0.0).finished(), 1.0});
    cs.extra_rows.push_back({"t=5", (Vector(2) << -1.0, -1.0).finished(), 1.0});
    return cs;
  }
  if (name == "example-4-9") {
    Segment s;
    s.lo = 0.0;
    s.hi = M_PI / 2.0;
    s.coeff = [](double t) {
      Vector a(2);
      a << 1.0 + t * std::cos(t), t * std::sin(t);
      return a;
    };
    s.rhs = [](double) { return 0.0; };
    cs.segments.push_back(std::move(s));
    return cs;
  }
  throw UnknownBuiltin("unknown builtin system '" + name + "'");
}

Segment tabulated_segment(const std::vector<std::vector<double>>& samples,
                          int n) {
  if (samples.size() < 2) throw ValidationError("tabulated segment needs >= 2 samples");
  for (const auto& row : samples)
    if (static_cast<int>(row.size()) != n + 2)
      throw ValidationError("tabulated sample row must be (t, a_1..a_n, b)");
  auto sorted = samples;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  Segment s;
  s.lo = sorted.front()[0];
  s.hi = sorted.back()[0];
  auto interp = [sorted, n](double t) {
    auto it = std::lower_bound(
        sorted.begin(), sorted.end(), t,
        [](const std::vector<double>& row, double val) { return row[0] < val; });
    if (it == sorted.begin()) ++it;
    if (it == sorted.end()) --it;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo[0]) / (hi[0] - lo[0]);
    std::vector<double> out(n + 1);
    for (int i = 0; i < n + 1; ++i)
      out[i] = (1.0 - w) * lo[1 + i] + w * hi[1 + i];
    return out;
  };
  s.coeff = [interp, n](double t) {
    auto v = interp(t);
    Vector a(n);
    for (int i = 0; i < n; ++i) a[i] = v[i];
    return a;
  };
  s.rhs = [interp, n](double t) { return interp(t)[n]; };
  return s;
}

}  // namespace hoffman
