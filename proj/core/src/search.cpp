#include "certlab/search.hpp"

#include <algorithm>
#include <stdexcept>

#include "certlab/measures.hpp"
#include "certlab/rng.hpp"

namespace certlab {

RecurrenceSpec window_recurrence(int n, int a, int b) {
  if (a == 0 && b == n) throw std::invalid_argument("window_recurrence: constant window");
  Function f = Function::weight_window(n, a, b);
  SideMax c, bs;
  for (int w = 0; w <= n; ++w) {
    SymMeasures m = symmetric_measures(f, w);
    if (a <= w && w <= b) {
      c.one_side = std::max(c.one_side, m.cert);
      bs.one_side = std::max(bs.one_side, m.bs);
    } else {
      c.zero_side = std::max(c.zero_side, m.cert);
      bs.zero_side = std::max(bs.zero_side, m.bs);
    }
  }
  RecurrenceSpec r;
  r.c0 = c.zero_side;
  r.c1 = c.one_side;
  r.bs = std::min(bs.zero_side, bs.one_side);  // conservative when sides differ
  // a 1-certificate fixes a ones and n-b zeros; a 0-certificate fixes either
  // n-a+1 zeros (below the window) or b+1 ones (above it); a boundary window
  // has only one 0-side branch
  r.a = a;
  r.b = n - b;
  r.alpha = (a == 0) ? 0 : n - a + 1;
  r.beta = (b == n) ? 0 : b + 1;
  return r;
}

WindowSearchResult window_search(int n_max) {
  if (n_max > 64) throw std::invalid_argument("window_search: n_max <= 64");
  WindowSearchResult out;
  for (int n = 1; n <= n_max; ++n) {
    for (int a = 0; a <= n; ++a) {
      for (int b = a; b <= n; ++b) {
        if (a == 0 && b == n) continue;  // constant 1
        Function f = Function::weight_window(n, a, b);
        WindowEntry e;
        e.n = n;
        e.a = a;
        e.b = b;
        SideMax bs;
        for (int w = 0; w <= n; ++w) {
          SymMeasures m = symmetric_measures(f, w);
          if (a <= w && w <= b) {
            e.c1 = std::max(e.c1, m.cert);
            bs.one_side = std::max(bs.one_side, m.bs);
          } else {
            e.c0 = std::max(e.c0, m.cert);
            bs.zero_side = std::max(bs.zero_side, m.bs);
          }
        }
        e.bs0 = bs.zero_side;
        e.bs1 = bs.one_side;
        int bs_eff = std::min(e.bs0, e.bs1);
        if (bs_eff < 2 || e.c0 < 1 || e.c1 < 1) continue;  // no growing separation
        RecurrenceSpec r;
        r.c0 = e.c0;
        r.c1 = e.c1;
        r.bs = bs_eff;
        r.a = a;
        r.b = n - b;
        r.alpha = (a == 0) ? 0 : n - a + 1;
        r.beta = (b == n) ? 0 : b + 1;
        GrowthResult g = growth_constant(r);
        if (!g.converged || g.ratio <= 1) continue;
        e.ratio = g.ratio;
        e.exponent = separation_exponents(r).rc_vs_c;
        e.proven = (e.bs0 == e.bs1);
        (e.proven ? out.ranked : out.unproven).push_back(e);
      }
    }
  }
  auto order = [](const WindowEntry& x, const WindowEntry& y) {
    if (x.exponent != y.exponent) return x.exponent < y.exponent;
    if (x.n != y.n) return x.n < y.n;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  };
  std::sort(out.ranked.begin(), out.ranked.end(), order);
  std::sort(out.unproven.begin(), out.unproven.end(), order);
  return out;
}

UniformCheck uniform_measure_check(const Function& f) {
  if (f.n() != 6 || !f.total() || !f.boolean())
    throw std::invalid_argument("uniform_measure_check: total Boolean on 6 variables");
  UniformCheck out;
  for (std::uint64_t xi = 0; xi < 64; ++xi) {
    Input x = Input::from_index(xi, 6);
    int c = certificate_complexity(f, x).size;
    int b = block_sensitivity(f, x).count;
    if (c != 5 || b != 4) {
      out.ok = false;
      out.witness = x;
      out.cert = c;
      out.bs = b;
      return out;
    }
  }
  out.ok = true;
  return out;
}

namespace {

int uniform_violations(const std::vector<Val>& table, int abort_above) {
  Function f = Function::dense(6, table);
  int bad = 0;
  for (std::uint64_t xi = 0; xi < 64; ++xi) {
    Input x = Input::from_index(xi, 6);
    int c = certificate_complexity(f, x).size;
    int b = block_sensitivity(f, x).count;
    if (c != 5 || b != 4) ++bad;
    if (bad > abort_above) return bad;
  }
  return bad;
}

}  // namespace

std::optional<Function> uniform_measure_search(long budget, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<Val> cur(64);
  long used = 0;
  while (used < budget) {
    // fresh random start
    for (auto& v : cur) v = to_val(static_cast<int>(rng() & 1));
    int cost = uniform_violations(cur, 64);
    ++used;
    int stall = 0;
    while (used < budget && cost > 0 && stall < 400) {
      int pos = static_cast<int>(rng() % 64);
      cur[pos] = to_val(cur[pos] == Val::one ? 0 : 1);
      int cand = uniform_violations(cur, cost + 1);
      ++used;
      if (cand <= cost) {
        stall = (cand < cost) ? 0 : stall + 1;
        cost = cand;
      } else {
        cur[pos] = to_val(cur[pos] == Val::one ? 0 : 1);  // undo
        ++stall;
      }
    }
    if (cost == 0) return Function::dense(6, cur);
  }
  return std::nullopt;
}

}  // namespace certlab
