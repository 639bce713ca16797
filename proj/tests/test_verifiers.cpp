#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <certlab/fraccert.hpp>
#include <certlab/function.hpp>
#include <certlab/measures.hpp>
#include <certlab/verifiers.hpp>
#include <cmath>

using namespace certlab;

namespace {

Function random_dense(int n, Rng& rng) {
  std::vector<Val> t(1ull << n);
  for (auto& v : t) v = to_val(static_cast<int>(rng() & 1));
  return Function::dense(n, std::move(t));
}

}  // namespace

TEST_CASE("nonadaptive runs") {
  Input x = Input::from_bits("0000");
  VerifierSpec all{x, std::vector<Rat>(4, Rat(1))};
  VerifierSpec none{x, std::vector<Rat>(4, Rat(0))};
  Input y = Input::from_bits("0100");
  for (std::uint64_t s = 0; s < 50; ++s) {
    CHECK(run_nonadaptive(all, y, s).rejected);         // queries everything
    CHECK(!run_nonadaptive(none, y, s).rejected);       // queries nothing
    CHECK(run_nonadaptive(none, y, s).queried_mask == 0);
    CHECK(!run_nonadaptive(all, x, s).rejected);        // no disagreement exists
  }
}

TEST_CASE("scaled verifier rejects disagreeing inputs with rate >= 1 - e^-2") {
  Function th = Function::threshold_sqrt(16);
  Input x = Input::zeros(16);
  auto sol = solve_cert_lp(build_cert_lp(th, x));
  VerifierSpec v = scaled_verifier(x, sol.lambda);

  // a disagreeing input of weight 4
  Input y = Input::from_index(0xf, 16);
  long trials = 100000, rejects = 0;
  for (long t = 0; t < trials; ++t)
    if (run_nonadaptive(v, y, derive_seed(17, t)).rejected) ++rejects;
  double rate = static_cast<double>(rejects) / trials;
  double target = 1.0 - std::exp(-2.0);
  double sigma3 = 3.0 * std::sqrt(target * (1 - target) / trials);
  CHECK(rate >= target - sigma3);
}

TEST_CASE("adaptive-to-nonadaptive conversion, exact traversal") {
  Input x = Input::from_bits("0000");

  // deterministic "query position 1 once": T = 2, 8 repetitions each hitting
  // position 1 with probability 1/2
  AdaptiveVerifier v1{{{Rat(1), {0}}}};
  CHECK(v1.expected_queries() == 1);
  VerifierSpec s1 = adaptive_to_nonadaptive(v1, x);
  CHECK(s1.lambda[0] == 1 - Rat(Int(1), Int(256)));  // 1 - (1/2)^8
  for (int i = 1; i < 4; ++i) CHECK(s1.lambda[i] == 0);
  Rat sum(0);
  for (auto& l : s1.lambda) sum += l;
  CHECK(sum <= 8);  // 4T

  // uniform over "query position 1" / "query position 2"
  AdaptiveVerifier v2{{{Rat(1, 2), {0}}, {Rat(1, 2), {1}}}};
  VerifierSpec s2 = adaptive_to_nonadaptive(v2, x);
  CHECK(s2.lambda[0] == s2.lambda[1]);
  CHECK(s2.lambda[0] > 0);
  CHECK(s2.lambda[0] < 1);
  CHECK(s2.lambda[0] == 1 - Rat(Int(6561), Int(65536)));  // 1 - (3/4)^8
  Rat sum2 = s2.lambda[0] + s2.lambda[1];
  CHECK(sum2 <= 8);

  // a longer mixed family: the lambda mass never exceeds 4T
  AdaptiveVerifier v3{{{Rat(1, 4), {0, 1, 2}}, {Rat(1, 4), {2, 3}}, {Rat(1, 2), {1}}}};
  VerifierSpec s3 = adaptive_to_nonadaptive(v3, x);
  Rat bound = 4 * rat_ceil(2 * v3.expected_queries());
  Rat total(0);
  for (auto& l : s3.lambda) total += l;
  CHECK(total <= bound);

  // Monte Carlo agrees with the exact traversal within its half-width
  auto mc = adaptive_to_nonadaptive_mc(v3, x, 40000, 5);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(to_double(mc.spec.lambda[i]) - to_double(s3.lambda[i])) <= mc.half_width);
}

TEST_CASE("one-sided transform") {
  Function f = Function::or_fn(4);
  Input x = Input::from_bits("0000");
  std::vector<Input> bad;
  for (std::uint64_t i = 1; i < 16; ++i) bad.push_back(Input::from_index(i, 4));

  // verifier querying each position with probability q, rejecting with
  // noise eps0 when no disagreement was seen
  double q = 0.7, noise = 0.1;
  RandomizedVerifier v = [&, q, noise](const Input& y, Rng& rng) {
    GenericRun r;
    for (int i = 0; i < 4; ++i)
      if (chance(rng, q) && y[i] != x[i]) r.found_disagreement = true;
    r.rejected = r.found_disagreement || chance(rng, noise);
    return r;
  };

  long trials = 60000;
  ErrorRates rates = measure_error_rates(v, x, bad, trials, 7);
  CHECK(rates.eps0 == doctest::Approx(noise).epsilon(0.15));
  CHECK(!rates.vacuous);

  RandomizedVerifier star = one_sided_transform(v);
  // never rejects the claimed input
  Rng rng = make_rng(3);
  for (int t = 0; t < 20000; ++t) CHECK(!star(x, rng).rejected);
  // rejects every bad input at least at the guaranteed rate, within 3 sigma
  double bound = one_sided_rejection_bound(rates.eps0, rates.eps1);
  for (const Input& y : bad) {
    long rej = 0;
    for (long t = 0; t < trials; ++t)
      if (star(y, rng).rejected) ++rej;
    double rate = static_cast<double>(rej) / trials;
    CHECK(rate >= bound - 3.0 * std::sqrt(0.25 / trials));
  }

  // an always-accepting verifier has eps1 = 1: flagged vacuous
  RandomizedVerifier accepts = [](const Input&, Rng&) { return GenericRun{false, false}; };
  ErrorRates vac = measure_error_rates(accepts, x, bad, 2000, 11);
  CHECK(vac.vacuous);
  CHECK(one_sided_rejection_bound(vac.eps0, vac.eps1) == 0.0);
}

TEST_CASE("recursive child sampler") {
  Function base = Function::weight_window(5, 2, 3);
  std::vector<Rat> p = optimal_child_table(base).first;

  // one level: the sampler returns a position of the base function
  Input x1 = Input::from_index(0b00011, 5);
  for (std::uint64_t s = 0; s < 40; ++s) {
    int leaf = recursive_child_sampler(base, p, x1, s);
    CHECK(leaf >= 0);
    CHECK(leaf < 5);
  }

  // two levels: a leaf of the 25-variable tree, consistent with the class
  // chosen at the top level
  Input x2 = Input::from_index(0b00001'00001'00011'00011'00011, 25);
  for (std::uint64_t s = 0; s < 200; ++s) {
    int leaf = recursive_child_sampler(base, p, x2, s);
    CHECK(leaf >= 0);
    CHECK(leaf < 25);
  }

  // p[0] = 0 means a claimed-0 child is always chosen at weight 0
  std::vector<Rat> p0(6, Rat(0));
  for (std::uint64_t s = 0; s < 20; ++s) {
    int leaf = recursive_child_sampler(base, p0, Input::zeros(5), s);
    CHECK(leaf < 5);
  }
  CHECK_THROWS(recursive_child_sampler(base, p, Input::zeros(24), 1));  // not 5^t long
}

TEST_CASE("child hit minimax") {
  // the published choice table for the width-29 window construction
  Function g1 = Function::weight_window(29, 13, 16);
  std::vector<Rat> table(30, Rat(0));
  for (int k = 17; k <= 29; ++k) table[k] = 1;
  table[13] = Rat(13, 17);
  table[14] = Rat(7, 12);
  table[15] = Rat(5, 12);
  table[16] = Rat(4, 17);
  auto mm = child_hit_minimax(g1, table);
  CHECK(!mm.vacuous);
  CHECK(mm.value >= Rat(1, 17));

  // the optimizer can only do at least as well
  auto [opt, val] = optimal_child_table(g1);
  CHECK(val >= mm.value);
  CHECK(child_hit_minimax(g1, opt).value == val);

  // small window: optimizer value matches a direct re-evaluation
  Function w = Function::weight_window(5, 2, 3);
  auto [wt, wv] = optimal_child_table(w);
  CHECK(child_hit_minimax(w, wt).value == wv);
  CHECK(wv > 0);

  // constant base: vacuous, value 1 by convention
  auto cm = child_hit_minimax(Function::constant(4, Val::one), std::vector<Rat>(5, Rat(1)));
  CHECK(cm.vacuous);
  CHECK(cm.value == 1);
}

TEST_CASE("zero-error evaluation is exactly correct") {
  // all total functions on up to 3 variables, every input, many seeds
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t tables = 1ull << (1ull << n);
    for (std::uint64_t t = 0; t < tables; ++t) {
      std::vector<Val> tab(1ull << n);
      for (std::uint64_t i = 0; i < tab.size(); ++i) tab[i] = to_val((t >> i) & 1);
      Function f = Function::dense(n, tab);
      FcCache cache;
      int seeds = (n == 3) ? 20 : 100;
      for (std::uint64_t y = 0; y < (1ull << n); ++y) {
        for (int s = 0; s < seeds; ++s) {
          auto r = zero_error_eval(f, Input::from_index(y, n), derive_seed(t, y * 1000 + s), &cache);
          CHECK(r.value == f.value_at(y));
          CHECK(r.distinct_queries <= n);
        }
      }
    }
  }
}

TEST_CASE("zero-error examples and query accounting") {
  Function or4 = Function::or_fn(4);
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto r = zero_error_eval(or4, Input::from_bits("0000"), s);
    CHECK(r.value == Val::zero);
    CHECK(r.distinct_queries == 4);  // the FC primal at 0^4 is all-ones
  }
  Function and4 = Function::and_fn(4);
  for (std::uint64_t s = 0; s < 20; ++s)
    CHECK(zero_error_eval(and4, Input::from_bits("1111"), s).value == Val::one);

  // transcript lines: position, value, restriction hash
  std::string transcript;
  zero_error_eval(or4, Input::from_bits("0101"), 3, nullptr, &transcript);
  CHECK(!transcript.empty());
  CHECK(std::count(transcript.begin(), transcript.end(), '\n') >= 1);
}

TEST_CASE("zero-error on random functions, with the mean-query budget") {
  Rng rng = make_rng(100);
  for (int n : {6, 8}) {
    Function f = random_dense(n, rng);
    FcCache cache;
    long trials = 300, total_queries = 0;
    for (long t = 0; t < trials; ++t) {
      Input y = Input::from_index(rng() & nbits_mask(n), n);
      auto r = zero_error_eval(f, y, derive_seed(55, t), &cache);
      REQUIRE(r.value == f.value_at(y.index()));
      total_queries += r.distinct_queries;
    }
    // loose sanity: never more than n distinct queries per run
    CHECK(total_queries <= trials * n);
  }
}
