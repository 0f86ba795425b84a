#include <doctest.h>

#include <cmath>
#include <random>

#include "hoffman/hoffman_global.hpp"

using namespace hoffman;

namespace {

Vector vec(std::initializer_list<double> vals) {
  Vector v(vals.size());
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

FiniteSystem box(NormKind k = NormKind::L2) {
  return FiniteSystem(2,
                      {{"x1<=1", vec({1, 0})},
                       {"-x1<=1", vec({-1, 0})},
                       {"x2<=1", vec({0, 1})},
                       {"-x2<=1", vec({0, -1})}},
                      k);
}

FiniteSystem random_system(std::mt19937_64& rng, int max_n, int max_m,
                           NormKind norm) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % max_n);
  const int m = 1 + static_cast<int>(rng() % max_m);
  std::vector<SystemRow> rows;
  for (int t = 0; t < m; ++t) {
    Vector a(n);
    for (int j = 0; j < n; ++j) a[j] = u(rng);
    rows.push_back({"r" + std::to_string(t), a});
  }
  return FiniteSystem(n, rows, norm);
}

void check_certificate(const FiniteSystem& sys, const GlobalHoffmanReport& rep) {
  const Vector& y = rep.dual_certificate;
  REQUIRE(y.size() == sys.row_count());
  CHECK(y.minCoeff() >= -1e-12);
  Vector aty = sys.row_matrix().transpose() * y;
  CHECK(norm_of(aty, sys.dual_norm()) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(y.lpNorm<1>() ==
        doctest::Approx(rep.value.value()).epsilon(1e-6));
  // Support rows are the attaining subset (linearly independent by route).
  for (int t = 0; t < sys.row_count(); ++t)
    if (y[t] > 1e-12) CHECK(rep.attaining.contains(t));
}

}  // namespace

TEST_CASE("hof_global: single row {x<=0}") {
  FiniteSystem one(1, {{"x<=0", vec({1})}}, NormKind::L2);
  auto rep = hof_global(one);
  CHECK(rep.value.value() == doctest::Approx(1.0));
  check_certificate(one, rep);
}

TEST_CASE("hof_global: box is sqrt(2), certificate valid") {
  auto rep = hof_global(box());
  CHECK(rep.value.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.attaining.size() == 2);
  check_certificate(box(), rep);
  // Exhaustive oracle agrees.
  CHECK(hof_global_exhaustive(box()).value() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hof_global: opposite rows give 1") {
  FiniteSystem sys(2, {{"a", vec({1, 0})}, {"b", vec({-1, 0})}}, NormKind::L2);
  auto rep = hof_global(sys);
  CHECK(rep.value.value() == doctest::Approx(1.0));
  // Exhaustive route: singletons give 1, the pair contains the origin.
  CHECK(hof_global_exhaustive(sys).value() == doctest::Approx(1.0));
}

TEST_CASE("route agreement on random systems, all norms") {
  std::mt19937_64 rng(41);
  for (NormKind norm : {NormKind::L1, NormKind::L2, NormKind::LInf}) {
    for (int inst = 0; inst < 25; ++inst) {
      FiniteSystem sys = random_system(rng, 4, 10, norm);
      auto rep = hof_global(sys);
      auto ex = hof_global_exhaustive(sys);
      const double scale = std::max({1.0, rep.value.value(), ex.value()});
      CHECK(std::abs(rep.value.value() - ex.value()) <= 1e-8 * scale);
      if (rep.value.value() > 0) check_certificate(sys, rep);
    }
  }
}

TEST_CASE("appending a duplicate row never changes hof_global") {
  std::mt19937_64 rng(43);
  for (int inst = 0; inst < 15; ++inst) {
    FiniteSystem sys = random_system(rng, 3, 6, NormKind::L2);
    auto rows = sys.rows();
    rows.push_back({"dup", rows[rng() % rows.size()].a});
    FiniteSystem sys2(sys.dimension(), rows, sys.norm());
    CHECK(hof_global(sys).value.value() ==
          doctest::Approx(hof_global(sys2).value.value()).epsilon(1e-10));
  }
}

TEST_CASE("scale covariance: scaling rows by c divides the constant by c") {
  std::mt19937_64 rng(47);
  for (double c : {0.25, 4.0}) {
    for (int inst = 0; inst < 10; ++inst) {
      FiniteSystem sys = random_system(rng, 3, 6, NormKind::L2);
      std::vector<SystemRow> scaled;
      for (const auto& r : sys.rows()) scaled.push_back({r.label, c * r.a});
      FiniteSystem sys2(sys.dimension(), scaled, sys.norm());
      const double v1 = hof_global(sys).value.value();
      const double v2 = hof_global(sys2).value.value();
      CHECK(v2 == doctest::Approx(v1 / c).epsilon(1e-9));
    }
  }
}

TEST_CASE("exhaustive route row cap") {
  std::vector<SystemRow> rows;
  for (int t = 0; t < 25; ++t) {
    Vector a(2);
    a << std::cos(0.1 * t), std::sin(0.1 * t);
    rows.push_back({"r" + std::to_string(t), a});
  }
  CHECK_THROWS_AS(hof_global_exhaustive(FiniteSystem(2, rows, NormKind::L2)),
                  SizeLimitExceeded);
}

TEST_CASE("all-zero rows give value 0 (sup of empty collection)") {
  FiniteSystem sys(2, {{"z1", vec({0, 0})}, {"z2", vec({0, 0})}}, NormKind::L2);
  auto rep = hof_global(sys);
  CHECK(rep.value.value() == 0.0);
  CHECK(rep.attaining.empty());
  CHECK(hof_global_exhaustive(sys).value() == 0.0);
}

TEST_CASE("grid route on example 4.3 grows like the singleton bound") {
  ContinuousSystem cs = builtin_system("example-4-3");
  // The smallest positive node t has ||a_t||_2 = t, so the value is at
  // least 1/step; the pair route typically exceeds it.
  auto g1 = hof_global_grid(cs, 0.1);
  CHECK(g1.report.value.value() >= 10.0);
  auto g2 = hof_global_grid(cs, 0.01);
  CHECK(g2.report.value.value() >= 100.0);
  CHECK(g2.report.value.value() > g1.report.value.value());
}

TEST_CASE("grid route on a constant system is 1 at any step") {
  ContinuousSystem cs;
  cs.n = 2;
  cs.norm = NormKind::L2;
  Segment s;
  s.lo = 0.0;
  s.hi = 1.0;
  s.coeff = [](double) { return (Vector(2) << 1.0, 0.0).finished(); };
  s.rhs = [](double) { return 0.0; };
  cs.segments.push_back(s);
  for (double step : {0.5, 0.1, 0.037})
    CHECK(hof_global_grid(cs, step).report.value.value() ==
          doctest::Approx(1.0));
}
