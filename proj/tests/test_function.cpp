#include <bit>
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <certlab/function.hpp>
#include <certlab/measures.hpp>
#include <certlab/rng.hpp>

using namespace certlab;

namespace {

// the wrapped 3x3 perimeter example on the 5x5 grid, rows top to bottom,
// position p = row*5 + col + 1
const char* kGrid5 =
    "00000"
    "00000"
    "10011"
    "10010"
    "10011";

Function random_dense(int n, Rng& rng) {
  std::vector<Val> t(1ull << n);
  for (auto& v : t) v = to_val(static_cast<int>(rng() & 1));
  return Function::dense(n, std::move(t));
}

}  // namespace

TEST_CASE("evaluate basics") {
  Function f = Function::or_fn(4);
  CHECK(f.evaluate(Input::from_bits("0000")) == Val::zero);
  CHECK(f.evaluate(Input::from_bits("0100")) == Val::one);

  Function g1 = Function::weight_window(29, 13, 16);
  Input w14 = Input::from_index((1ull << 14) - 1, 29);
  CHECK(w14.weight() == 14);
  CHECK(g1.evaluate(w14) == Val::one);
  for (int w = 0; w <= 29; ++w) {
    Input x = Input::from_index((1ull << w) - 1, 29);
    CHECK((g1.evaluate(x) == Val::one) == (13 <= w && w <= 16));
  }

  Function lat = Function::lattice(5, 3);
  CHECK(lat.evaluate(Input::from_bits(kGrid5)) == Val::one);
  CHECK(lat.evaluate(Input::zeros(25)) == Val::zero);
  CHECK(lat.evaluate(Input::from_bits("1111111111111111111111111")) == Val::one);

  CHECK_THROWS(f.evaluate(Input::from_bits("000")));  // length mismatch
}

TEST_CASE("flip_block") {
  Input x = Input::from_bits("0000");
  CHECK(flip_block(x, 0b101).bits() == "1010");  // B = {1,3}, position 1 = LSB
  CHECK(flip_block(x, 0) == x);
  CHECK(flip_block(Input::from_bits("111"), 0b111).bits() == "000");
  Rng rng = make_rng(11);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng() % 16);
    Input y = Input::from_index(rng() & nbits_mask(n), n);
    std::uint64_t b = rng() & nbits_mask(n);
    CHECK(flip_block(flip_block(y, b), b) == y);  // involution
  }
  CHECK_THROWS(flip_block(Input::from_bits("00"), 0b100));
}

TEST_CASE("restrict") {
  Function or2 = Function::or_fn(2);
  Function r1 = or2.restrict({{0, 1}});
  CHECK(r1.n() == 1);
  CHECK(r1.evaluate(Input::from_bits("0")) == Val::one);
  CHECK(r1.evaluate(Input::from_bits("1")) == Val::one);
  Function r0 = or2.restrict({{0, 0}});
  CHECK(r0.evaluate(Input::from_bits("0")) == Val::zero);
  CHECK(r0.evaluate(Input::from_bits("1")) == Val::one);

  // window(5,2,3) with x1 := 1 has profile v[w] = [w+1 in [2,3]] on 4 vars
  Function w = Function::weight_window(5, 2, 3);
  Function wr = w.restrict({{0, 1}});
  REQUIRE(wr.kind() == Function::Kind::symmetric);
  for (int v = 0; v <= 4; ++v)
    CHECK((wr.profile()[v] == Val::one) == (2 <= v + 1 && v + 1 <= 3));
  // dense-expansion oracle
  auto dense = w.dense_expansion();
  for (std::uint64_t sub = 0; sub < 16; ++sub) {
    std::uint64_t full = 1 | (sub << 1);
    CHECK(wr.value_at(sub) == dense[full]);
  }

  CHECK_THROWS(or2.restrict({{2, 0}}));
  CHECK_THROWS(or2.restrict({{0, 0}, {0, 1}}));  // duplicate position
}

TEST_CASE("restrict agrees with evaluation on extended inputs, exhaustive n=8") {
  Rng rng = make_rng(5);
  Function f = random_dense(8, rng);
  // each position: assigned-0, assigned-1, free-0, free-1
  for (std::uint64_t code = 0; code < (1ull << 16); ++code) {
    std::vector<std::pair<int, std::uint32_t>> assignment;
    std::uint64_t full = 0;
    std::vector<int> free_pos;
    for (int i = 0; i < 8; ++i) {
      int c = (code >> (2 * i)) & 3;
      if (c == 0) assignment.push_back({i, 0});
      else if (c == 1) {
        assignment.push_back({i, 1});
        full |= 1ull << i;
      } else {
        free_pos.push_back(i);
        if (c == 3) full |= 1ull << i;
      }
    }
    Function sub = f.restrict(assignment);
    std::uint64_t sub_idx = 0;
    for (std::size_t j = 0; j < free_pos.size(); ++j)
      if (full & (1ull << free_pos[j])) sub_idx |= 1ull << j;
    CHECK(sub.value_at(sub_idx) == f.value_at(full));
  }
}

TEST_CASE("families") {
  Function th = Function::threshold_sqrt(16);
  CHECK(th.profile()[3] == Val::zero);
  CHECK(th.profile()[4] == Val::one);

  CHECK_THROWS(Function::weight_window(5, 3, 2));
  CHECK_THROWS(Function::lattice(3, 4));
  CHECK_THROWS(Function::collision(3));

  Function col = Function::collision(4);
  CHECK(col.alphabet() == 16);
  CHECK(col.evaluate(Input({0, 1, 2, 3})) == Val::zero);   // one-to-one
  CHECK(col.evaluate(Input({4, 4, 8, 8})) == Val::one);    // two-to-one
  CHECK(col.evaluate(Input({0, 0, 0, 1})) == Val::undef);  // promise violated
  // every enumerated domain point evaluates consistently
  long count = 0;
  col.for_each_defined([&](std::uint64_t idx, Val v) {
    ++count;
    CHECK(col.evaluate(Input::from_packed(idx, 4, 16)) == v);
  });
  CHECK(count == 16 * 15 * 14 * 13 + 120 * 6);
}

TEST_CASE("compose") {
  Function g1 = Function::weight_window(5, 2, 3);
  Function c1 = Function::compose_levels(g1, g1, 1);
  for (std::uint64_t x = 0; x < 32; ++x) CHECK(c1.value_at(x) == g1.value_at(x));

  Function c = Function::compose_levels(Function::or_fn(2), Function::and_fn(2), 2);
  REQUIRE(c.n() == 4);
  for (std::uint64_t x = 0; x < 16; ++x) {
    bool and1 = (x & 3) == 3, and2 = (x >> 2) == 3;
    CHECK((c.value_at(x) == Val::one) == (and1 || and2));
  }

  // structured evaluation matches dense expansion (2-level window tree)
  Function w2 = Function::compose_levels(g1, g1, 2);
  REQUIRE(w2.n() == 25);
  Rng rng = make_rng(7);
  for (int t = 0; t < 5000; ++t) {
    std::uint64_t x = rng() & nbits_mask(25);
    int outer = 0;
    for (int c5 = 0; c5 < 5; ++c5) {
      int w = std::popcount((x >> (5 * c5)) & 31ull);
      outer += (2 <= w && w <= 3);
    }
    Val expect = to_val(2 <= outer && outer <= 3);
    CHECK(w2.value_at(x) == expect);
  }
}

TEST_CASE("structured kinds match dense expansion") {
  std::vector<Function> fns = {
      Function::weight_window(8, 3, 5), Function::lattice(4, 2),
      Function::compose_levels(Function::or_fn(3), Function::parity(3), 2),
      Function::threshold_sqrt(9)};
  for (const auto& f : fns) {
    auto table = f.dense_expansion();
    for (std::uint64_t x = 0; x < table.size(); ++x) CHECK(f.value_at(x) == table[x]);
  }
}

TEST_CASE("parse and serialize") {
  Function f = Function::parse("n=2\ntt=0111");
  CHECK(f.value_at(0) == Val::zero);
  CHECK(f.value_at(1) == Val::one);
  CHECK(f.value_at(2) == Val::one);
  CHECK(f.value_at(3) == Val::one);

  Function p = Function::parse("n=1\ntt=0*");
  CHECK(p.value_at(0) == Val::zero);
  CHECK(p.value_at(1) == Val::undef);
  CHECK(!p.total());

  CHECK_THROWS(Function::parse("n=2\ntt=011"));
  CHECK_THROWS(Function::parse("n=2\ntt=01x1"));
  CHECK_THROWS(Function::parse("n=25\ntt=01"));

  for (const char* spec : {"ctor=window(29,13,16)", "ctor=threshold(16)", "ctor=lattice(8,2)",
                           "ctor=or(4)", "ctor=compose(window(29,13,16),2)", "ctor=collision(4)"}) {
    Function g = Function::parse(spec);
    Function round = Function::parse(g.serialize());
    CHECK(round.n() == g.n());
    CHECK(round.serialize() == g.serialize());
  }
  CHECK(Function::parse("ctor=compose(window(29,13,16),2)").n() == 841);
  CHECK_THROWS(Function::parse("n=5\nctor=window(29,13,16)"));  // n mismatch
}

TEST_CASE("serialize-parse round trip, exhaustive dense n<=4") {
  for (int n = 0; n <= 4; ++n) {
    std::uint64_t tables = 1ull << (1ull << n);
    std::uint64_t step = (n == 4) ? 1 : 1;  // all 65536 at n=4
    for (std::uint64_t t = 0; t < tables; t += step) {
      std::vector<Val> tab(1ull << n);
      for (std::uint64_t i = 0; i < tab.size(); ++i) tab[i] = to_val((t >> i) & 1);
      Function f = Function::dense(n, tab);
      Function g = Function::parse(f.serialize());
      CHECK(g.dense_expansion() == tab);
    }
  }
}

TEST_CASE("symmetric evaluation depends only on weight") {
  Function g1 = Function::weight_window(13, 5, 8);
  Rng rng = make_rng(3);
  for (int t = 0; t < 1000; ++t) {
    std::uint64_t x = rng() & nbits_mask(13);
    // value equals value at the sorted (prefix-ones) input of equal weight
    int w = std::popcount(x);
    CHECK(g1.value_at(x) == g1.value_at((1ull << w) - 1));
  }
}
