// Acceptance suite: one check per shipped guarantee, each printing a
// [PASS]/[FAIL] line. Run all or a single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hoffman/calmness.hpp"
#include "hoffman/cli.hpp"
#include "hoffman/continuous.hpp"
#include "hoffman/core.hpp"
#include "hoffman/geometry.hpp"
#include "hoffman/hoffman_global.hpp"
#include "hoffman/lab.hpp"
#include "hoffman/semilocal.hpp"
#include "support.hpp"

using namespace hoffman;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

FiniteSystem box_system() {
  return FiniteSystem(2,
                      {{"x1<=1", vec2(1, 0)},
                       {"-x1<=1", vec2(-1, 0)},
                       {"x2<=1", vec2(0, 1)},
                       {"-x2<=1", vec2(0, -1)}},
                      NormKind::L2);
}

FiniteSystem random_system(std::mt19937_64& rng, int nmax, int mmax,
                           NormKind norm) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % nmax);
  const int m = 1 + static_cast<int>(rng() % mmax);
  std::vector<SystemRow> rows;
  for (int t = 0; t < m; ++t) {
    Vector a(n);
    for (int j = 0; j < n; ++j) a[j] = u(rng);
    rows.push_back({"r" + std::to_string(t), a});
  }
  return FiniteSystem(n, rows, norm);
}

FiniteSystem random_feasible(std::mt19937_64& rng, Rhs& b_out) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 2 + static_cast<int>(rng() % 2);
  const int m = n + 1 + static_cast<int>(rng() % (7 - n));
  std::vector<SystemRow> rows;
  Vector b(m);
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0[j] = u(rng);
  for (int t = 0; t < m; ++t) {
    Vector a(n);
    for (int j = 0; j < n; ++j) a[j] = u(rng);
    rows.push_back({"r" + std::to_string(t), a});
    b[t] = a.dot(x0) + ((t % 2 == 0) ? 0.0 : 0.4 + 0.5 * (u(rng) + 1.0));
  }
  b_out = Rhs(b);
  return FiniteSystem(n, rows, NormKind::L2);
}

struct Criterion {
  int id;
  const char* summary;
  std::function<bool(std::ostream&)> run;
};

// --------------------------------------------------------------------------
// 1. Example 4.3 calmness value sqrt(5) at x2 = (1,-2), grid step <= 0.1.
// --------------------------------------------------------------------------
bool criterion1(std::ostream& os) {
  const auto t0 = Clock::now();
  auto [sys, b] = discretize(builtin_system("example-4-3"), GridSpec{0.1});
  CalmnessReport rep = clm_at(sys, b, vec2(1, -2));
  const double elapsed = seconds_since(t0);
  const double want = std::sqrt(5.0);
  const double got = rep.value.value();
  const double rel = std::abs(got - want) / want;
  os << "    clm = " << got << " (sqrt5 = " << want << ", rel err " << rel
     << "), " << elapsed << " s\n";
  return rel <= 1e-6 && elapsed < 1.0;
}

// --------------------------------------------------------------------------
// 2. Example 4.3 infinite calmness at x1 = (1,0): the outside-point
//    estimator along the published sequence x_r = (1+1/r)(cos 1/r, sin 1/r)
//    must be strictly increasing with estimate(1e4) >= 5 estimate(1e2).
// --------------------------------------------------------------------------
bool criterion2(std::ostream& os) {
  const auto t0 = Clock::now();
  ContinuousSystem cs = builtin_system("example-4-3");
  std::vector<Vector> samples;
  for (double r : {10.0, 100.0, 1000.0, 10000.0}) {
    const double s = 1.0 / r;
    samples.push_back((1.0 + s) * vec2(std::cos(s), std::sin(s)));
  }
  SamplingEstimate est = clm_sampling(cs, samples);
  const double elapsed = seconds_since(t0);
  bool ok = est.used == 4 && elapsed < 5.0;
  os << "    estimates along the published sequence:";
  for (const auto& e : est.trail) os << " " << e.value;
  os << "  (" << elapsed << " s)\n";
  for (std::size_t i = 1; i + 0 < est.trail.size() && ok; ++i)
    if (!(est.trail[i].value > est.trail[i - 1].value)) ok = false;
  if (est.trail.size() == 4 &&
      !(est.trail[3].value >= 5.0 * est.trail[1].value))
    ok = false;

  if (!ok) {
    // The residual argmax along this sequence is the row x1 <= 1 (its
    // residual ~1/r dominates the interval maximum ~0.6 r^{-3/2}), so the
    // formula value stays at 1/||(1,0)|| = 1. Divergence does show along
    // arcs that keep that row slack; reported here for observability.
    std::vector<Vector> tang;
    for (double r : {10.0, 100.0, 1000.0, 10000.0}) {
      const double th = std::sqrt(3.0 / r);
      tang.push_back((1.0 + 1.0 / r) * vec2(std::cos(th), std::sin(th)));
    }
    SamplingEstimate alt = clm_sampling(cs, tang);
    os << "    note: argmax along the published sequence is the row x1<=1 "
          "(residual 1/r beats the interval max ~0.61 r^-1.5 for r >= 10)\n"
       << "    supplementary tangential arc (1+1/r)(cos sqrt(3/r), sin "
          "sqrt(3/r)):";
    for (const auto& e : alt.trail) os << " " << e.value;
    os << "  -> diverges as expected for clm = +inf\n";
  }
  return ok;
}

// --------------------------------------------------------------------------
// 3. Route agreement: eq (1) = eq (2) and the eq (3) certificate, on 200
//    random systems across all three norms, 1e-8 relative, < 60 s.
// --------------------------------------------------------------------------
bool criterion3(std::ostream& os) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260810);
  const NormKind norms[3] = {NormKind::L1, NormKind::L2, NormKind::LInf};
  int failures = 0;
  double worst_rel = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    FiniteSystem sys = random_system(rng, 4, 10, norms[inst % 3]);
    GlobalHoffmanReport rep = hof_global(sys);
    ModulusValue ex = hof_global_exhaustive(sys);
    const double v2 = rep.value.value();
    const double v1 = ex.value();
    const double rel = std::abs(v1 - v2) / std::max({1.0, v1, v2});
    worst_rel = std::max(worst_rel, rel);
    bool ok = rel <= 1e-8;
    if (v2 > 0.0) {
      const Vector& y = rep.dual_certificate;
      const double aty = norm_of(sys.row_matrix().transpose() * y,
                                 sys.dual_norm());
      ok = ok && std::abs(aty - 1.0) <= 1e-8;
      ok = ok && std::abs(y.lpNorm<1>() - v2) <= 1e-6;
      ok = ok && y.minCoeff() >= -1e-12;
    }
    if (!ok) ++failures;
  }
  const double elapsed = seconds_since(t0);
  os << "    200 instances, worst relative route gap " << worst_rel << ", "
     << failures << " failures, " << elapsed << " s\n";
  return failures == 0 && elapsed < 60.0;
}

// --------------------------------------------------------------------------
// 4. Thm 3.10 / Thm 4.6 consistency on 100 random feasible pairs: boundary
//    calmness below hof_at, extreme-point max attains it, ratio supremum
//    below it with gap <= 10% on at least 90 instances.
// --------------------------------------------------------------------------
bool criterion4(std::ostream& os) {
  std::mt19937_64 rng(424242);
  const auto t0 = Clock::now();
  int close_enough = 0;
  int hard_failures = 0;
  for (int inst = 0; inst < 100; ++inst) {
    Rhs b;
    FiniteSystem sys = random_feasible(rng, b);
    SemiLocalReport hof = hof_at(sys, b);
    const double hv = hof.value.value();

    double vmax = 0.0;
    for (const auto& [v, cr] : hof.candidates)
      vmax = std::max(vmax, cr.value.value());
    if (vmax != hv) {
      ++hard_failures;
      continue;
    }

    bool chain_ok = true;
    double mc_val = 0.0;
    try {
      ChainCheckReport chain =
          chain_check(sys, b, 1000, 10000, 1000 + inst);
      mc_val = chain.mc_estimate;
      chain_ok = chain.passed && chain.max_boundary_clm <= hv + 1e-8 &&
                 mc_val <= hv + 1e-8;
    } catch (const ChainViolation& e) {
      os << "    chain violation on instance " << inst << ": " << e.what()
         << "\n";
      chain_ok = false;
    }
    if (!chain_ok) {
      ++hard_failures;
      continue;
    }
    if (hv == 0.0 || mc_val >= 0.9 * hv) ++close_enough;
  }
  const double elapsed = seconds_since(t0);
  os << "    100 instances, " << hard_failures << " violations, gap <= 10% on "
     << close_enough << " instances, " << elapsed << " s\n";
  return hard_failures == 0 && close_enough >= 90;
}

// --------------------------------------------------------------------------
// 5. Box benchmark: hof_global = hof_at(1,1,1,1) = sqrt2 within 1e-9 and the
//    ratio supremum with 1e5 samples, seed 1, radius 3 in [1.36, sqrt2+1e-9].
// --------------------------------------------------------------------------
bool criterion5(std::ostream& os) {
  FiniteSystem sys = box_system();
  Rhs b((Vector(4) << 1, 1, 1, 1).finished());
  const double s2 = std::sqrt(2.0);
  const double g = hof_global(sys).value.value();
  const double a = hof_at(sys, b).value.value();
  SamplingEstimate mc =
      mc_ratio_sup(sys, b, uniform_box_sampler(2, 3.0), 100000, 1);
  const double m = mc.estimate.value();
  os << "    hof_global = " << g << ", hof_at = " << a << ", mc_ratio_sup = "
     << m << "\n";
  return std::abs(g - s2) <= 1e-9 && std::abs(a - s2) <= 1e-9 && m >= 1.36 &&
         m <= s2 + 1e-9;
}

// --------------------------------------------------------------------------
// 6. Monotonicity (Prop 4.2(ii), Prop 4.8) on 100 constructed nested pairs.
// --------------------------------------------------------------------------
bool criterion6(std::ostream& os) {
  std::mt19937_64 rng(606060);
  int built = 0, ok = 0, attempts = 0;
  while (built < 100 && attempts < 4000) {
    ++attempts;
    Rhs b;
    FiniteSystem sys = random_feasible(rng, b);
    auto pair = testsupport::nested_pair(sys, b, rng);
    if (!pair) continue;
    ++built;
    const auto& [x1, x2] = *pair;
    DFamily f1 = d_family(sys, b, x1);
    DFamily f2 = d_family(sys, b, x2);
    bool inst_ok = true;
    for (const auto& D : f1.members) {
      bool found = false;
      for (const auto& E : f2.members)
        found = found || E.indices == D.indices;
      inst_ok = inst_ok && found;
    }
    inst_ok = inst_ok && clm_at(sys, b, x1).value.value() <=
                             clm_at(sys, b, x2).value.value() + 1e-8;
    if (inst_ok) ++ok;
  }
  os << "    " << built << " nested pairs constructed (" << attempts
     << " attempts), inclusion and ordering held on " << ok << "\n";
  return built == 100 && ok == 100;
}

// --------------------------------------------------------------------------
// 7. Section 3 fixtures: moduli estimates reproduce the counterexamples.
// --------------------------------------------------------------------------
bool criterion7(std::ostream& os) {
  bool ok = true;

  ModuliEstimates st = estimate_moduli(fixture("staircase", 0.0, 1e10));
  os << "    staircase: sup_clm = " << st.sup_clm.comparable()
     << ", uclm diverged = " << st.uclm.diverged << "\n";
  ok = ok && !st.sup_clm.diverged &&
       std::abs(st.sup_clm.value.value() - 1.0) <= 0.05 && st.uclm.diverged;

  ModuliEstimates sp = estimate_moduli(fixture("step", 0.0));
  os << "    step: uclm = " << sp.uclm.comparable()
     << ", lipusc diverged = " << sp.lipusc.diverged << "\n";
  ok = ok && !sp.uclm.diverged && sp.uclm.value.value() <= 0.05 &&
       sp.lipusc.diverged;

  ModuliEstimates iv = estimate_moduli(fixture("interval", -1.0));
  os << "    interval: lipusc = " << iv.lipusc.comparable()
     << ", hof diverged = " << iv.hof.diverged << "\n";
  ok = ok && !iv.lipusc.diverged && iv.lipusc.value.value() <= 0.05 &&
       iv.hof.diverged;

  ModuliEstimates lo = estimate_moduli(fixture("truncated-halfline", -0.5));
  ModuliEstimates hi = estimate_moduli(fixture("truncated-halfline", 0.5));
  os << "    truncated-halfline: hof(-0.5) = " << lo.hof.comparable()
     << ", hof(+0.5) = " << hi.hof.comparable() << "\n";
  ok = ok && !lo.hof.diverged &&
       std::abs(lo.hof.value.value() - 1.0) <= 0.05 && !hi.hof.diverged &&
       hi.hof.value.value() <= 0.05;
  return ok;
}

// --------------------------------------------------------------------------
// 8. Divergence signature of the grid-discretized global constant.
// --------------------------------------------------------------------------
bool criterion8(std::ostream& os) {
  ContinuousSystem cs = builtin_system("example-4-3");
  bool ok = true;
  double elapsed_finest = 0.0;
  const double steps[3] = {0.1, 0.01, 0.001};
  const double bounds[3] = {10.0, 100.0, 1000.0};
  for (int i = 0; i < 3; ++i) {
    const auto t0 = Clock::now();
    GridGlobalReport rep = hof_global_grid(cs, steps[i]);
    const double el = seconds_since(t0);
    if (i == 2) elapsed_finest = el;
    os << "    step " << steps[i] << ": rows = " << rep.row_count
       << ", value = " << rep.report.value.value() << " (>= " << bounds[i]
       << "), " << el << " s\n";
    ok = ok && rep.report.value.value() >= bounds[i];
  }
  return ok && elapsed_finest < 30.0;
}

// --------------------------------------------------------------------------
// 9. Section 4.1 identity: b^J from the attaining subset reproduces the
//    global constant as a semi-local one, attained at the origin.
// --------------------------------------------------------------------------
bool criterion9(std::ostream& os) {
  std::mt19937_64 rng(909090);
  int checked = 0, ok = 0;
  while (checked < 50) {
    FiniteSystem sys = random_system(rng, 3, 8, NormKind::L2);
    GlobalHoffmanReport grep = hof_global(sys);
    if (grep.attaining.empty()) continue;
    ++checked;
    Vector bJ = Vector::Ones(sys.row_count());
    for (int t : grep.attaining.indices) bJ[t] = 0.0;
    Rhs b(bJ);
    const double gv = grep.value.value();
    const double av = hof_at(sys, b).value.value();
    const double cv = clm_at(sys, b, Vector::Zero(sys.dimension())).value.value();
    const double scale = std::max(1.0, gv);
    if (std::abs(av - gv) <= 1e-8 * scale && std::abs(cv - gv) <= 1e-8 * scale)
      ++ok;
  }
  os << "    50 instances, identity held on " << ok << "\n";
  return ok == 50;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

  const Criterion criteria[] = {
      {1, "example 4.3 calmness sqrt(5) at (1,-2)", criterion1},
      {2, "example 4.3 diverging estimator at x1 along the published sequence",
       criterion2},
      {3, "global-constant route agreement with dual certificates", criterion3},
      {4, "semi-local consistency: boundary calmness and ratio supremum",
       criterion4},
      {5, "box benchmark: sqrt(2) by every route", criterion5},
      {6, "D-family and calmness monotonicity on nested pairs", criterion6},
      {7, "generic-multifunction fixtures reproduce the counterexamples",
       criterion7},
      {8, "grid divergence signature of the global constant", criterion8},
      {9, "b^J construction attains the global constant", criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail << "    exception: " << e.what() << "\n";
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
              << c.summary << "\n"
              << detail.str();
    if (!ok) ++failures;
  }
  if (only == 0)
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) +
                                      " criterion(s) failed")
              << "\n";
  return failures == 0 ? 0 : 1;
}
