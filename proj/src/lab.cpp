#include "hoffman/lab.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "hoffman/geometry.hpp"

namespace hoffman {

namespace {

Vector scalar(double v) {
  Vector x(1);
  x[0] = v;
  return x;
}

double abs_dist(const Vector& a, const Vector& b) { return (a - b).norm(); }

// Tail maximum over the finest levels that saw at least one pair.
// Divergence is declared when the cap is exceeded at two successive
// refinements (never proven: the report keeps the level trail).
ModulusEstimate finish_estimate(std::vector<double> level_max,
                                std::vector<int> level_pairs, double cap,
                                int tail) {
  ModulusEstimate e;
  e.level_max = std::move(level_max);
  e.level_pairs = std::move(level_pairs);
  double v = 0.0;
  int taken = 0;
  for (int k = static_cast<int>(e.level_max.size()) - 1;
       k >= 0 && taken < tail; --k) {
    if (e.level_pairs[k] == 0) continue;
    v = std::max(v, e.level_max[k]);
    ++taken;
  }
  double prev = 0.0;
  for (std::size_t k = 0; k < e.level_max.size(); ++k) {
    if (e.level_pairs[k] == 0) continue;
    if (prev > cap && e.level_max[k] > cap) e.diverged = true;
    prev = e.level_max[k];
  }
  e.value = e.diverged ? ModulusValue::infinity() : ModulusValue::of(v);
  return e;
}

}  // namespace

ModuliEstimates estimate_moduli(const SampledMultifunction& m,
                                const LabSchedules& s) {
  std::mt19937_64 rng(s.seed);
  const int L = s.levels;

  std::vector<double> rho(L), eps(L), win(L);
  for (int k = 0; k < L; ++k) {
    rho[k] = s.y_radius0 * std::pow(s.y_shrink, k);
    eps[k] = s.eps0 * std::pow(s.eps_shrink, k);
    win[k] = s.clm_window0 * std::pow(s.y_shrink, k);
  }

  // Calmness base points: a deterministic spread of M(ybar).
  std::vector<Vector> xbars;
  {
    auto pts = m.evaluator(m.ybar, L / 2);
    std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
      for (int i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
      return false;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vector& a, const Vector& b) {
                            return (a - b).norm() == 0.0;
                          }),
              pts.end());
    const int take = std::min<int>(s.clm_points, static_cast<int>(pts.size()));
    for (int i = 0; i < take; ++i) {
      const std::size_t idx =
          take == 1 ? 0 : i * (pts.size() - 1) / (take - 1);
      xbars.push_back(pts[idx]);
    }
  }

  std::vector<double> hof_max(L, 0.0), lip_max(L, 0.0), uclm_max(L, 0.0),
      uclm_loc_max(L, 0.0);
  std::vector<int> hof_cnt(L, 0), lip_cnt(L, 0), uclm_cnt(L, 0),
      uclm_loc_cnt(L, 0);
  std::vector<std::vector<double>> clm_max(xbars.size(),
                                           std::vector<double>(L, 0.0));
  std::vector<std::vector<int>> clm_cnt(xbars.size(), std::vector<int>(L, 0));

  auto feed_pair = [&](const Vector& y, const Vector& x, int level) {
    const double dy = m.dist_y(y, m.ybar);
    if (dy <= 0.0) return;
    const double num = m.dist_to_image_bar(x);
    const double ratio = num / dy;
    hof_max[level] = std::max(hof_max[level], ratio);
    ++hof_cnt[level];
    for (int k = 0; k < L; ++k) {
      if (num <= eps[k] && dy <= s.y_radius0) {
        uclm_max[k] = std::max(uclm_max[k], ratio);
        ++uclm_cnt[k];
        if (dy <= rho[k]) {
          uclm_loc_max[k] = std::max(uclm_loc_max[k], ratio);
          ++uclm_loc_cnt[k];
        }
      }
      if (dy <= rho[k]) {
        lip_max[k] = std::max(lip_max[k], ratio);
        ++lip_cnt[k];
        for (std::size_t j = 0; j < xbars.size(); ++j)
          if (m.dist_x(x, xbars[j]) <= win[k]) {
            clm_max[j][k] = std::max(clm_max[j][k], ratio);
            ++clm_cnt[j][k];
          }
      }
    }
  };

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < L; ++k) {
    for (int i = 0; i < s.y_per_level; ++i) {
      // Half the draws sit exactly on the level radius so piecewise-affine
      // ratios are captured without interpolation bias.
      const double r =
          (i % 2 == 0) ? rho[k]
                       : rho[k] * std::pow(10.0, -3.0 * unit(rng));
      const Vector y = m.y_sampler(r, rng);
      for (const Vector& x : m.evaluator(y, k)) feed_pair(y, x, k);
    }
    for (int i = 0; i < s.global_per_level; ++i) {
      const Vector y = m.y_sampler(m.global_radius * unit(rng), rng);
      for (const Vector& x : m.evaluator(y, k)) feed_pair(y, x, k);
    }
    // Probes far below the eps level, so the per-eps suprema are chased
    // deep enough to hit the divergence cap when they are unbounded.
    for (int j = 1; j <= 7; ++j) {
      const Vector y = m.y_sampler(eps[k] * std::pow(10.0, -j), rng);
      for (const Vector& x : m.evaluator(y, k)) feed_pair(y, x, k);
    }
  }

  ModuliEstimates out;
  // Hof is a global supremum: a plain running max over everything sampled.
  {
    std::vector<double> run(L, 0.0);
    double acc = 0.0;
    for (int k = 0; k < L; ++k) {
      acc = std::max(acc, hof_max[k]);
      run[k] = acc;
    }
    out.hof = finish_estimate(run, hof_cnt, s.cap, 1);
  }
  out.lipusc = finish_estimate(lip_max, lip_cnt, s.cap, s.tail_levels);
  out.uclm = finish_estimate(uclm_max, uclm_cnt, s.cap, s.tail_levels);
  out.uclm_local =
      finish_estimate(uclm_loc_max, uclm_loc_cnt, s.cap, s.tail_levels);
  double sup_clm = 0.0;
  bool sup_div = false;
  std::vector<double> sup_levels(L, 0.0);
  std::vector<int> sup_cnt(L, 0);
  for (std::size_t j = 0; j < xbars.size(); ++j) {
    ModulusEstimate ej =
        finish_estimate(clm_max[j], clm_cnt[j], s.cap, s.tail_levels);
    for (int k = 0; k < L; ++k) {
      sup_levels[k] = std::max(sup_levels[k], clm_max[j][k]);
      sup_cnt[k] += clm_cnt[j][k];
    }
    sup_div = sup_div || ej.diverged;
    if (!ej.diverged) sup_clm = std::max(sup_clm, ej.value.value());
    out.clm_per_point.emplace_back(xbars[j], std::move(ej));
  }
  out.sup_clm = finish_estimate(sup_levels, sup_cnt, s.cap, s.tail_levels);
  if (sup_div) {
    out.sup_clm.diverged = true;
    out.sup_clm.value = ModulusValue::infinity();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

SampledMultifunction fixture(const std::string& name, double ybar, double R) {
  SampledMultifunction m;
  m.ybar = scalar(ybar);
  m.dist_y = abs_dist;
  m.dist_x = abs_dist;

  if (name == "staircase") {
    // M(y) = { h_r(y) : r in N, r <= R } with h_r(y) = r + y for y <= 1/r
    // and r + 1/r + r(y - 1/r) beyond the kink. Branches are sampled
    // lazily: a fixed head plus ladders around the kink index 1/|y|.
    const double Rcap = R;
    auto h = [](double r, double y) {
      return y <= 1.0 / r ? r + y : r + 1.0 / r + r * (y - 1.0 / r);
    };
    m.evaluator = [Rcap, h](const Vector& yv, int) {
      const double y = yv[0];
      std::set<long long> branches;
      for (long long r = 1; r <= std::min(64.0, Rcap); ++r)
        branches.insert(r);
      if (y > 0.0) {
        // Branches whose post-kink value sits c above the step, for a
        // geometric ladder of c: r solves r*y - 1 + 1/r = c.
        for (int j = 0; j <= 40; ++j) {
          const double c = 0.75 * std::pow(2.0, -j);
          const double r = (1.0 + c) / y;
          if (r < 1.0 || r > Rcap || r > 4e9) continue;
          const long long rr = static_cast<long long>(std::llround(r));
          for (long long d = -1; d <= 1; ++d)
            if (rr + d >= 1 && rr + d <= Rcap) branches.insert(rr + d);
        }
        const double rk = 1.0 / y;
        if (rk >= 1.0 && rk <= std::min(Rcap, 4e9))
          for (long long d = -2; d <= 2; ++d) {
            const long long rr = static_cast<long long>(std::llround(rk)) + d;
            if (rr >= 1 && rr <= Rcap) branches.insert(rr);
          }
      }
      std::vector<Vector> out;
      out.reserve(branches.size());
      for (long long r : branches) out.push_back(scalar(h(double(r), y)));
      return out;
    };
    m.dist_to_image_bar = [Rcap](const Vector& xv) {
      const double x = xv[0];  // M(0) = {1, ..., R}
      if (x <= 1.0) return 1.0 - x;
      if (x >= Rcap) return x - std::floor(Rcap);
      const double r = std::round(x);
      return std::abs(x - r);
    };
    m.y_sampler = [](double radius, std::mt19937_64& rng) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      return scalar(radius * u(rng));
    };
    m.global_radius = 1.0;
    return m;
  }

  if (name == "step") {
    m.evaluator = [](const Vector& yv, int) {
      return std::vector<Vector>{scalar(yv[0] > 0.0 ? 1.0 : 0.0)};
    };
    const double top = ybar > 0.0 ? 1.0 : 0.0;
    m.dist_to_image_bar = [top](const Vector& xv) {
      return std::abs(xv[0] - top);
    };
    m.y_sampler = [ybar](double radius, std::mt19937_64& rng) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      return scalar(ybar + radius * u(rng));
    };
    m.global_radius = 2.0;
    return m;
  }

  if (name == "interval") {
    // M(y) = [0,1] for y < 0 and [0, inf) for y >= 0.
    m.evaluator = [](const Vector& yv, int level) {
      std::vector<Vector> out;
      const double hi = yv[0] < 0.0 ? 1.0 : 10.0 * std::pow(4.0, level);
      for (int i = 0; i <= 16; ++i) out.push_back(scalar(hi * i / 16.0));
      return out;
    };
    if (ybar < 0.0)
      m.dist_to_image_bar = [](const Vector& xv) {
        return std::max({0.0, xv[0] - 1.0, -xv[0]});
      };
    else
      m.dist_to_image_bar = [](const Vector& xv) {
        return std::max(0.0, -xv[0]);
      };
    m.y_sampler = [ybar](double radius, std::mt19937_64& rng) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      return scalar(ybar + radius * u(rng));
    };
    m.global_radius = 3.0;
    return m;
  }

  if (name == "truncated-halfline") {
    // M(y) = ]-inf, y] for y < 0 and ]-inf, 0] for y >= 0; sampled down to
    // a fixed depth below the top endpoint.
    m.evaluator = [](const Vector& yv, int) {
      const double top = std::min(yv[0], 0.0);
      std::vector<Vector> out;
      out.push_back(scalar(top));
      for (int j = 0; j <= 12; ++j)
        out.push_back(scalar(top - std::pow(2.0, j - 6)));
      return out;
    };
    const double top_bar = std::min(ybar, 0.0);
    m.dist_to_image_bar = [top_bar](const Vector& xv) {
      return std::max(0.0, xv[0] - top_bar);
    };
    m.y_sampler = [ybar](double radius, std::mt19937_64& rng) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      return scalar(ybar + radius * u(rng));
    };
    m.global_radius = 2.0;
    return m;
  }

  throw UnknownFixture("unknown fixture '" + name + "'");
}

SampledMultifunction polygon_multifunction(
    const std::vector<std::pair<double, double>>& polygon_vertices,
    double ybar) {
  if (polygon_vertices.size() < 3)
    throw ValidationError("polygon needs at least 3 vertices");
  auto verts = polygon_vertices;  // convex hull assumed; sort for slicing
  double ymin = verts[0].first, ymax = verts[0].first;
  for (const auto& [y, x] : verts) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (!(ymin < ybar && ybar < ymax))
    throw ValidationError("ybar must lie strictly inside the polygon's y-range");

  auto slice = [verts](double y) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [y1, x1] = verts[i];
      const auto& [y2, x2] = verts[(i + 1) % n];
      if (std::abs(y1 - y) <= 0.0) {
        lo = std::min(lo, x1);
        hi = std::max(hi, x1);
      }
      if ((y1 < y && y2 > y) || (y2 < y && y1 > y)) {
        const double w = (y - y1) / (y2 - y1);
        const double x = x1 + w * (x2 - x1);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    return std::make_pair(lo, hi);
  };

  SampledMultifunction m;
  m.ybar = scalar(ybar);
  m.dist_y = abs_dist;
  m.dist_x = abs_dist;
  m.evaluator = [slice](const Vector& yv, int) {
    auto [lo, hi] = slice(yv[0]);
    std::vector<Vector> out;
    if (!(lo <= hi)) return out;
    for (int i = 0; i <= 8; ++i) out.push_back(scalar(lo + (hi - lo) * i / 8.0));
    return out;
  };
  auto [lob, hib] = slice(ybar);
  m.dist_to_image_bar = [lob = lob, hib = hib](const Vector& xv) {
    return std::max({0.0, xv[0] - hib, lob - xv[0]});
  };
  m.y_sampler = [ybar, ymin, ymax](double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double y =
        std::clamp(ybar + radius * u(rng), ymin + 1e-12, ymax - 1e-12);
    return scalar(y);
  };
  m.global_radius = std::max(ymax - ybar, ybar - ymin);
  return m;
}

SampledMultifunction piecewise_affine_multifunction(int branches, double ybar,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> c(branches), sl(branches), kk(branches);
  for (int i = 0; i < branches; ++i) {
    c[i] = u(rng);
    sl[i] = u(rng);
    kk[i] = u(rng);
  }
  SampledMultifunction m;
  m.ybar = scalar(ybar);
  m.dist_y = abs_dist;
  m.dist_x = abs_dist;
  m.evaluator = [c, sl, kk, ybar](const Vector& yv, int) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < c.size(); ++i)
      out.push_back(scalar(c[i] + sl[i] * yv[0] + kk[i] * std::abs(yv[0] - ybar)));
    return out;
  };
  m.dist_to_image_bar = [c, sl, ybar](const Vector& xv) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i)
      d = std::min(d, std::abs(xv[0] - (c[i] + sl[i] * ybar)));
    return d;
  };
  m.y_sampler = [ybar](double radius, std::mt19937_64& rng2) {
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    return scalar(ybar + radius * uu(rng2));
  };
  m.global_radius = 2.0;
  return m;
}

SampledMultifunction system_multifunction(const FiniteSystem& sys,
                                          const Rhs& bbar) {
  bbar.check_matches(sys);
  const int mrows = sys.row_count();
  auto sys_ptr = std::make_shared<FiniteSystem>(sys);
  auto bbar_copy = bbar;

  SampledMultifunction m;
  m.ybar = bbar.b;
  m.dist_y = [](const Vector& y1, const Vector& y2) {
    return (y1 - y2).lpNorm<Eigen::Infinity>();
  };
  m.dist_x = [norm = sys.norm()](const Vector& x1, const Vector& x2) {
    return norm_of(x1 - x2, norm);
  };
  m.evaluator = [sys_ptr](const Vector& y, int) {
    std::vector<Vector> out;
    Rhs b(y);
    if (!system_feasible(*sys_ptr, b)) return out;
    auto verts = enumerate_vertices(*sys_ptr, b);
    out = verts;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        out.push_back(0.5 * (verts[i] + verts[j]));
    return out;
  };
  m.dist_to_image_bar = [sys_ptr, bbar_copy](const Vector& x) {
    return project_to_polyhedron(*sys_ptr, bbar_copy, x).distance.value();
  };
  m.y_sampler = [mrows, bb = bbar.b](double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector y(mrows);
    if (u(rng) < 0.0) {
      // Sign-pattern corners of the sup-norm ball realize the extreme
      // excess ratios exactly at every radius.
      std::uniform_int_distribution<int> tri(-1, 1);
      for (int i = 0; i < mrows; ++i) y[i] = bb[i] + radius * tri(rng);
    } else {
      for (int i = 0; i < mrows; ++i) y[i] = bb[i] + radius * u(rng);
    }
    return y;
  };
  m.global_radius = 1.0;
  return m;
}

}  // namespace hoffman
