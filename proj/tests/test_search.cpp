#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <certlab/fraccert.hpp>
#include <certlab/function.hpp>
#include <certlab/measures.hpp>
#include <certlab/recurrence.hpp>
#include <certlab/search.hpp>
#include <cmath>

using namespace certlab;

TEST_CASE("growth constant of the width-29 window recurrence") {
  RecurrenceSpec r = window_recurrence(29, 13, 16);
  CHECK(r.c0 == 17);
  CHECK(r.c1 == 26);
  CHECK(r.bs == 17);
  CHECK(r.a == 13);
  CHECK(r.b == 13);
  CHECK(r.alpha == 17);
  CHECK(r.beta == 17);
  GrowthResult g = growth_constant(r);
  CHECK(g.converged);
  // dominant root of x^2 = 13x + 13*17
  double root = (13.0 + std::sqrt(1053.0)) / 2.0;
  CHECK(std::abs(g.ratio - root) < 1e-6);
  CHECK(std::abs(g.ratio - 22.725) < 1e-3);

  Exponents e = separation_exponents(r);
  CHECK(std::abs(e.rc_vs_c - 0.907) < 1e-3);
  CHECK(std::abs(e.c_vs_qc - 2.205) < 2e-3);
}

TEST_CASE("uniform-base recurrence exponents") {
  RecurrenceSpec h;
  h.c0 = h.c1 = 5;
  h.bs = 4;
  h.a = 5;
  h.b = 0;
  h.alpha = h.beta = 5;
  h.fc = Rat(9, 2);
  GrowthResult g = growth_constant(h);
  CHECK(g.converged);
  CHECK(g.ratio == doctest::Approx(5.0).epsilon(1e-9));
  Exponents e = separation_exponents(h);
  CHECK(std::abs(e.rc_vs_c - std::log(4.0) / std::log(5.0)) < 1e-9);
  CHECK(std::abs(e.rc_vs_c - 0.861) < 1e-3);
  CHECK(std::abs(e.bs_vs_fc - 0.922) < 1e-3);

  RecurrenceSpec bad;
  bad.c0 = bad.c1 = 1;
  bad.bs = 1;
  bad.a = 0;
  bad.b = 0;
  bad.alpha = bad.beta = 1;
  CHECK_THROWS(growth_constant(bad, 200, 1e-6));
}

TEST_CASE("window search reproduces the known optimum") {
  WindowSearchResult r = window_search(32);
  REQUIRE(!r.ranked.empty());
  const WindowEntry& top = r.ranked.front();
  CHECK(top.n == 29);
  CHECK(top.a == 13);
  CHECK(top.b == 16);
  CHECK(std::abs(top.exponent - 0.907) < 1e-3);
  CHECK(top.c0 == 17);
  CHECK(top.c1 == 26);
  CHECK(top.bs0 == 17);
  CHECK(top.bs1 == 17);

  // deterministic output
  WindowSearchResult again = window_search(32);
  REQUIRE(again.ranked.size() == r.ranked.size());
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    CHECK(again.ranked[i].n == r.ranked[i].n);
    CHECK(again.ranked[i].a == r.ranked[i].a);
    CHECK(again.ranked[i].b == r.ranked[i].b);
  }

  // tiny ranges produce nothing with a genuine separation (exponent < 1)
  WindowSearchResult tiny = window_search(2);
  for (const auto& e : tiny.ranked) CHECK(e.exponent >= 0.999);
}

TEST_CASE("small-range window search matches exhaustive enumeration") {
  WindowSearchResult r = window_search(5);
  // verify each entry's measures against the dense engines
  for (const auto& e : r.ranked) {
    Function f = Function::weight_window(e.n, e.a, e.b);
    Function dense = Function::dense(e.n, f.dense_expansion());
    SideMax c = certificate_complexity_max(dense);
    SideMax b = block_sensitivity_max(dense);
    CHECK(c.zero_side == e.c0);
    CHECK(c.one_side == e.c1);
    CHECK(b.zero_side == e.bs0);
    CHECK(b.one_side == e.bs1);
  }
}

TEST_CASE("uniform measure check rejects easy candidates") {
  auto c0 = uniform_measure_check(Function::constant(6, Val::zero));
  CHECK(!c0.ok);
  CHECK(c0.cert == 0);

  auto cp = uniform_measure_check(Function::parity(6));
  CHECK(!cp.ok);  // C^X = 6 everywhere

  CHECK_THROWS(uniform_measure_check(Function::or_fn(5)));
}

TEST_CASE("uniform measure search finds a candidate") {
  auto found = uniform_measure_search(400000, /*seed=*/20250810);
  REQUIRE(found.has_value());
  auto check = uniform_measure_check(*found);
  CHECK(check.ok);
  // the found candidate feeds the FC pipeline
  FcMax fc = fc_max(*found);
  CHECK(fc.overall >= Rat(4));
  CHECK(fc.overall <= Rat(5));
}
