#include "certlab/measures.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "certlab/rational.hpp"

namespace certlab {

namespace {

bool is_symmetric_total(const Function& f) {
  return f.kind() == Function::Kind::symmetric && f.total() && f.boolean();
}

bool is_lattice_at_zero(const Function& f, const Input& x) {
  if (f.kind() != Function::Kind::lattice) return false;
  for (int i = 0; i < x.size(); ++i)
    if (x[i]) return false;
  return true;
}

// Perimeter masks of all side^2 wrapped squares.
std::vector<std::uint64_t> lattice_square_masks(int side, int square) {
  std::vector<std::uint64_t> masks;
  masks.reserve(side * side);
  for (int r0 = 0; r0 < side; ++r0) {
    for (int c0 = 0; c0 < side; ++c0) {
      std::uint64_t m = 0;
      for (int i = 0; i < square; ++i) {
        for (int j = 0; j < square; ++j) {
          if (i != 0 && i != square - 1 && j != 0 && j != square - 1) continue;
          m |= 1ull << (((r0 + i) % side) * side + (c0 + j) % side);
        }
      }
      masks.push_back(m);
    }
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

std::vector<std::uint64_t> generic_rows(const Function& f, const Input& x) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) throw std::invalid_argument("X is outside Dom(f)");
  std::vector<std::uint64_t> rows;
  if (f.boolean() && f.n() <= 64) {
    std::uint64_t xi = x.index();
    f.for_each_defined([&](std::uint64_t idx, Val v) {
      if (v != fx) rows.push_back(idx ^ xi);
    });
  } else {
    int n = f.n();
    f.for_each_defined([&](std::uint64_t idx, Val v) {
      if (v == fx) return;
      Input y = Input::from_packed(idx, n, f.alphabet());
      std::uint64_t m = 0;
      for (int i = 0; i < n; ++i)
        if (y[i] != x[i]) m |= 1ull << i;
      rows.push_back(m);
    });
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

}  // namespace

std::vector<std::uint64_t> disagreement_rows(const Function& f, const Input& x) {
  if (is_lattice_at_zero(f, x))
    return lattice_square_masks(f.lattice_side(), f.lattice_square());
  return generic_rows(f, x);
}

std::vector<std::uint64_t> antichain_rows(std::vector<std::uint64_t> rows) {
  std::sort(rows.begin(), rows.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<std::uint64_t> kept;
  for (std::uint64_t r : rows) {
    bool dominated = false;
    for (std::uint64_t k : kept) {
      if ((k & r) == k) { dominated = true; break; }
    }
    if (!dominated) kept.push_back(r);
  }
  return kept;
}

namespace {

struct HittingSolver {
  const std::vector<std::uint64_t>& rows;
  int best;
  std::uint64_t best_set = 0;

  // Lower bound: size of a greedy disjoint subfamily of unhit rows.
  int disjoint_bound(std::uint64_t chosen) const {
    std::uint64_t used = 0;
    int cnt = 0;
    for (std::uint64_t r : rows) {
      if (r & chosen) continue;
      if (r & used) continue;
      used |= r;
      ++cnt;
    }
    return cnt;
  }

  void dfs(std::uint64_t chosen, int count) {
    std::uint64_t pick = 0;
    int pick_size = 99;
    for (std::uint64_t r : rows) {
      if (r & chosen) continue;
      int sz = std::popcount(r);
      if (sz < pick_size) { pick_size = sz; pick = r; }
    }
    if (!pick) {
      if (count < best) { best = count; best_set = chosen; }
      return;
    }
    if (count + disjoint_bound(chosen) >= best) return;
    while (pick) {
      std::uint64_t bit = pick & (~pick + 1);
      dfs(chosen | bit, count + 1);
      pick ^= bit;
    }
  }
};

struct PackingSolver {
  const std::vector<std::uint64_t>& rows;  // sorted by (popcount, value)
  int best = 0;
  std::vector<int> best_pick, cur;

  void dfs(std::size_t from, std::uint64_t used, int count, int free_bits) {
    if (count > best) { best = count; best_pick = cur; }
    if (from >= rows.size()) return;
    int min_size = std::popcount(rows[from]);  // smallest among remaining
    int ub = count + std::min<int>(static_cast<int>(rows.size() - from), free_bits / min_size);
    if (ub <= best) return;
    for (std::size_t i = from; i < rows.size(); ++i) {
      if (rows[i] & used) continue;
      int sz = std::popcount(rows[i]);
      if (count + std::min<int>(static_cast<int>(rows.size() - i), free_bits / sz) <= best) break;
      cur.push_back(static_cast<int>(i));
      dfs(i + 1, used | rows[i], count + 1, free_bits - sz);
      cur.pop_back();
    }
  }
};

}  // namespace

int min_hitting_set(const std::vector<std::uint64_t>& rows, int n, std::uint64_t* witness) {
  if (rows.empty()) {
    if (witness) *witness = 0;
    return 0;
  }
  for (std::uint64_t r : rows)
    if (!r) throw std::invalid_argument("min_hitting_set: empty row");
  // Greedy cover for the initial upper bound.
  std::uint64_t greedy = 0;
  {
    std::vector<std::uint64_t> unhit = rows;
    while (!unhit.empty()) {
      int best_cover = -1, best_bit = 0;
      for (int i = 0; i < n; ++i) {
        std::uint64_t bit = 1ull << i;
        int cover = 0;
        for (std::uint64_t r : unhit)
          if (r & bit) ++cover;
        if (cover > best_cover) { best_cover = cover; best_bit = i; }
      }
      std::uint64_t bit = 1ull << best_bit;
      greedy |= bit;
      std::erase_if(unhit, [&](std::uint64_t r) { return (r & bit) != 0; });
    }
  }
  HittingSolver solver{rows, std::popcount(greedy), greedy};
  solver.dfs(0, 0);
  if (witness) *witness = solver.best_set;
  return solver.best;
}

int max_disjoint_packing(const std::vector<std::uint64_t>& rows, int n,
                         std::vector<std::uint64_t>* witness) {
  std::vector<std::uint64_t> sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  PackingSolver solver{sorted};
  solver.dfs(0, 0, 0, n);
  if (witness) {
    witness->clear();
    for (int i : solver.best_pick) witness->push_back(sorted[i]);
  }
  return solver.best;
}

bool verify_certificate(const Function& f, const Input& x, std::uint64_t positions) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) return false;
  for (std::uint64_t r : disagreement_rows(f, x))
    if (!(r & positions)) return false;
  return true;
}

bool verify_block_family(const Function& f, const Input& x,
                         const std::vector<std::uint64_t>& blocks) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) return false;
  std::uint64_t used = 0;
  for (std::uint64_t b : blocks) {
    if (!b || (b & used)) return false;
    used |= b;
    Val v = f.evaluate(flip_block(x, b));
    if (v == Val::undef || v == fx) return false;
  }
  return true;
}

namespace {

// reach[L] = largest R >= L with the profile constant on [L, R].
std::vector<int> profile_reach(const std::vector<Val>& v) {
  int n = static_cast<int>(v.size()) - 1;
  std::vector<int> reach(n + 1);
  reach[n] = n;
  for (int L = n - 1; L >= 0; --L) reach[L] = (v[L] == v[L + 1]) ? reach[L + 1] : L;
  return reach;
}

struct SymCert {
  int size;
  int s0, s1;
};

SymCert symmetric_cert(const std::vector<Val>& v, int n, int w) {
  auto reach = profile_reach(v);
  SymCert best{n + 1, -1, -1};
  for (int s1 = 0; s1 <= w; ++s1) {
    if (reach[s1] < w) continue;  // profile changes before reaching weight w
    int s0 = n - reach[s1];
    if (s0 > n - w) continue;
    if (s1 + s0 < best.size) best = {s1 + s0, s0, s1};
  }
  return best;
}

// Valid displacement pairs (a zeros flipped, b ones flipped) that change the
// value at weight w, reduced to the antichain of the valid set.
std::vector<std::pair<int, int>> minimal_displacements(const std::vector<Val>& v, int n, int w) {
  std::vector<std::pair<int, int>> valid;
  for (int a = 0; a <= n - w; ++a) {
    for (int b = 0; b <= w; ++b) {
      if (a == 0 && b == 0) continue;
      Val t = v[w + a - b];
      if (t != Val::undef && t != v[w]) valid.emplace_back(a, b);
    }
  }
  std::vector<std::pair<int, int>> minimal;
  for (auto& p : valid) {
    bool dominated = false;
    for (auto& q : valid) {
      if (q != p && q.first <= p.first && q.second <= p.second) { dominated = true; break; }
    }
    if (!dominated) minimal.push_back(p);
  }
  return minimal;
}

int symmetric_bs(const std::vector<Val>& v, int n, int w) {
  auto pairs = minimal_displacements(v, n, w);
  if (pairs.empty()) return 0;
  int Z = n - w, O = w;
  std::vector<std::vector<int>> dp(Z + 1, std::vector<int>(O + 1, 0));
  for (int a = 0; a <= Z; ++a) {
    for (int b = 0; b <= O; ++b) {
      for (auto& [da, db] : pairs) {
        if (da <= a && db <= b) {
          int cand = dp[a - da][b - db] + 1;
          if (cand > dp[a][b]) dp[a][b] = cand;
        }
      }
    }
  }
  return dp[Z][O];
}

}  // namespace

SymMeasures symmetric_measures(const Function& f, int weight) {
  if (!is_symmetric_total(f)) throw std::invalid_argument("symmetric_measures: need total symmetric f");
  if (weight < 0 || weight > f.n()) throw std::invalid_argument("symmetric_measures: bad weight");
  const auto& v = f.profile();
  SymMeasures m;
  m.cert = symmetric_cert(v, f.n(), weight).size;
  m.bs = symmetric_bs(v, f.n(), weight);
  return m;
}

std::vector<std::pair<int, int>> symmetric_minimal_displacements(const Function& f, int weight) {
  if (!is_symmetric_total(f))
    throw std::invalid_argument("symmetric_minimal_displacements: need total symmetric f");
  return minimal_displacements(f.profile(), f.n(), weight);
}

CertResult certificate_complexity(const Function& f, const Input& x) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) throw std::invalid_argument("certificate_complexity: X outside Dom(f)");

  if (is_symmetric_total(f)) {
    int w = x.weight();
    SymCert c = symmetric_cert(f.profile(), f.n(), w);
    // witness: first s1 one-positions and first s0 zero-positions
    CertResult res;
    res.size = c.size;
    int need1 = c.s1, need0 = c.s0;
    for (int i = 0; i < f.n() && (need1 || need0); ++i) {
      if (x.bit(i) && need1) { res.witness |= 1ull << i; --need1; }
      if (!x.bit(i) && need0) { res.witness |= 1ull << i; --need0; }
    }
    return res;
  }

  auto rows = antichain_rows(disagreement_rows(f, x));
  CertResult res;
  res.size = min_hitting_set(rows, f.n(), &res.witness);
  if (f.domain_enumerable() && !verify_certificate(f, x, res.witness))
    throw std::logic_error("certificate witness failed re-verification");
  return res;
}

SideMax certificate_complexity_max(const Function& f) {
  SideMax m;
  if (is_symmetric_total(f)) {
    for (int w = 0; w <= f.n(); ++w) {
      int c = symmetric_cert(f.profile(), f.n(), w).size;
      if (f.profile()[w] == Val::one) m.one_side = std::max(m.one_side, c);
      else m.zero_side = std::max(m.zero_side, c);
    }
    m.overall = std::max(m.zero_side, m.one_side);
    return m;
  }
  int n = f.n();
  f.for_each_defined([&](std::uint64_t idx, Val v) {
    Input x = f.boolean() ? Input::from_index(idx, n) : Input::from_packed(idx, n, f.alphabet());
    int c = certificate_complexity(f, x).size;
    if (v == Val::one) m.one_side = std::max(m.one_side, c);
    else m.zero_side = std::max(m.zero_side, c);
  });
  m.overall = std::max(m.zero_side, m.one_side);
  return m;
}

namespace {

void emit_subsets(const std::vector<int>& pool, int take, std::uint64_t acc, std::size_t from,
                  std::vector<std::uint64_t>& out) {
  if (take == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i + take <= pool.size(); ++i)
    emit_subsets(pool, take - 1, acc | (1ull << pool[i]), i + 1, out);
}

}  // namespace

std::vector<std::uint64_t> minimal_blocks(const Function& f, const Input& x) {
  if (!f.boolean()) throw std::invalid_argument("minimal_blocks: Boolean alphabet required");
  if (is_symmetric_total(f)) {
    // a block flipping a zeros and b ones is sensitive iff the displacement
    // changes the profile value, and minimal iff the displacement is minimal
    int w = x.weight();
    std::vector<int> zeros, ones;
    for (int i = 0; i < f.n(); ++i) (x.bit(i) ? ones : zeros).push_back(i);
    std::vector<std::uint64_t> out;
    double count = 0;
    auto displacements = symmetric_minimal_displacements(f, w);
    for (auto& [a, b] : displacements) {
      count += to_double(binomial(static_cast<int>(zeros.size()), a) *
                         binomial(static_cast<int>(ones.size()), b));
      if (count > 2e6) throw std::invalid_argument("minimal_blocks: too many blocks to enumerate");
    }
    for (auto& [a, b] : displacements) {
      std::vector<std::uint64_t> zsets, osets;
      emit_subsets(zeros, a, 0, 0, zsets);
      emit_subsets(ones, b, 0, 0, osets);
      for (auto zm : zsets)
        for (auto om : osets) out.push_back(zm | om);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // Minimal sensitive blocks are exactly the minimal disagreement sets:
  // flipping B lands in Dom with a different value iff B is such a set.
  return antichain_rows(disagreement_rows(f, x));
}

BsResult block_sensitivity(const Function& f, const Input& x) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) throw std::invalid_argument("block_sensitivity: X outside Dom(f)");

  if (is_symmetric_total(f)) {
    // Count via the closed form; materialize a witness family greedily.
    int w = x.weight();
    const auto& v = f.profile();
    int n = f.n();
    BsResult res;
    res.count = symmetric_bs(v, n, w);
    // reconstruct: DP again with choice tracking over (zeros, ones) budgets
    auto pairs = minimal_displacements(v, n, w);
    int Z = n - w, O = w;
    std::vector<std::vector<int>> dp(Z + 1, std::vector<int>(O + 1, 0));
    std::vector<std::vector<std::pair<int, int>>> choice(
        Z + 1, std::vector<std::pair<int, int>>(O + 1, {-1, -1}));
    for (int a = 0; a <= Z; ++a)
      for (int b = 0; b <= O; ++b)
        for (auto& [da, db] : pairs)
          if (da <= a && db <= b && dp[a - da][b - db] + 1 > dp[a][b]) {
            dp[a][b] = dp[a - da][b - db] + 1;
            choice[a][b] = {da, db};
          }
    std::vector<int> zeros, ones;
    for (int i = 0; i < n; ++i) (x.bit(i) ? ones : zeros).push_back(i);
    std::size_t zi = 0, oi = 0;
    int a = Z, b = O;
    while (choice[a][b].first >= 0) {
      auto [da, db] = choice[a][b];
      std::uint64_t blk = 0;
      for (int t = 0; t < da; ++t) blk |= 1ull << zeros[zi++];
      for (int t = 0; t < db; ++t) blk |= 1ull << ones[oi++];
      res.blocks.push_back(blk);
      a -= da;
      b -= db;
    }
    if (static_cast<int>(res.blocks.size()) != res.count ||
        !verify_block_family(f, x, res.blocks))
      throw std::logic_error("symmetric block family failed re-verification");
    return res;
  }

  auto blocks = minimal_blocks(f, x);
  BsResult res;
  res.count = max_disjoint_packing(blocks, f.n(), &res.blocks);
  if (!verify_block_family(f, x, res.blocks))
    throw std::logic_error("block family failed re-verification");
  return res;
}

SideMax block_sensitivity_max(const Function& f) {
  SideMax m;
  if (is_symmetric_total(f)) {
    for (int w = 0; w <= f.n(); ++w) {
      int b = symmetric_bs(f.profile(), f.n(), w);
      if (f.profile()[w] == Val::one) m.one_side = std::max(m.one_side, b);
      else m.zero_side = std::max(m.zero_side, b);
    }
    m.overall = std::max(m.zero_side, m.one_side);
    return m;
  }
  int n = f.n();
  f.for_each_defined([&](std::uint64_t idx, Val v) {
    Input x = f.boolean() ? Input::from_index(idx, n) : Input::from_packed(idx, n, f.alphabet());
    int b = block_sensitivity(f, x).count;
    if (v == Val::one) m.one_side = std::max(m.one_side, b);
    else m.zero_side = std::max(m.zero_side, b);
  });
  m.overall = std::max(m.zero_side, m.one_side);
  return m;
}

std::vector<Input> neighborhood(const Function& f, const Input& x) {
  std::vector<Input> out;
  out.push_back(x);
  for (std::uint64_t b : minimal_blocks(f, x)) out.push_back(flip_block(x, b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

int dt_depth_rec(int n, std::vector<std::uint64_t> bits, DtMemo& memo) {
  std::uint64_t size = 1ull << n;
  // constant check
  bool all0 = true, all1 = true;
  for (std::uint64_t i = 0; i < size; ++i) {
    bool b = (bits[i >> 6] >> (i & 63)) & 1;
    all0 &= !b;
    all1 &= b;
  }
  if (all0 || all1) return 0;

  DtMemo::Key key{n, bits};
  auto it = memo.table.find(key);
  if (it != memo.table.end()) return it->second;

  int best = n;
  for (int i = 0; i < n && best > 1; ++i) {
    int worst = 0;
    for (int b = 0; b < 2 && worst < best; ++b) {
      // restriction x_i := b
      std::uint64_t half = size >> 1;
      std::vector<std::uint64_t> sub((half + 63) / 64, 0);
      for (std::uint64_t j = 0; j < half; ++j) {
        std::uint64_t low = j & ((1ull << i) - 1);
        std::uint64_t high = (j >> i) << (i + 1);
        std::uint64_t idx = high | (static_cast<std::uint64_t>(b) << i) | low;
        if ((bits[idx >> 6] >> (idx & 63)) & 1) sub[j >> 6] |= 1ull << (j & 63);
      }
      worst = std::max(worst, dt_depth_rec(n - 1, std::move(sub), memo));
    }
    best = std::min(best, 1 + worst);
  }
  memo.table.emplace(std::move(key), best);
  return best;
}

}  // namespace

int decision_tree_depth(const Function& f, DtMemo* memo) {
  if (!f.total() || !f.boolean()) throw std::invalid_argument("decision_tree_depth: total Boolean only");
  if (f.n() > 16) throw std::invalid_argument("decision_tree_depth: n <= 16");
  auto table = f.dense_expansion();
  std::uint64_t size = table.size();
  std::vector<std::uint64_t> bits((size + 63) / 64, 0);
  for (std::uint64_t i = 0; i < size; ++i)
    if (table[i] == Val::one) bits[i >> 6] |= 1ull << (i & 63);
  DtMemo local;
  return dt_depth_rec(f.n(), std::move(bits), memo ? *memo : local);
}

SideMax composed_symmetric_cert_max(const Function& base) {
  if (!is_symmetric_total(base)) throw std::invalid_argument("composed_symmetric_cert_max: symmetric base");
  int k = base.n();
  const auto& v = base.profile();
  // per-weight certify cost of one child
  std::vector<int> child_cost(k + 1);
  for (int w = 0; w <= k; ++w) child_cost[w] = symmetric_cert(v, k, w).size;
  auto reach = profile_reach(v);

  SideMax m;
  // enumerate multisets of child weights
  std::vector<int> counts(k + 1, 0);
  std::vector<int> stack;
  std::function<void()> walk = [&]() {
    if (static_cast<int>(stack.size()) == k) {
      std::vector<int> cost1, cost0;
      int outer_w = 0;
      for (int w : stack) {
        if (v[w] == Val::one) { cost1.push_back(child_cost[w]); ++outer_w; }
        else cost0.push_back(child_cost[w]);
      }
      std::sort(cost1.begin(), cost1.end());
      std::sort(cost0.begin(), cost0.end());
      std::partial_sum(cost1.begin(), cost1.end(), cost1.begin());
      std::partial_sum(cost0.begin(), cost0.end(), cost0.begin());
      auto prefix = [](const std::vector<int>& p, int s) { return s == 0 ? 0 : p[s - 1]; };
      int best = -1;
      for (int s1 = 0; s1 <= outer_w; ++s1) {
        if (reach[s1] < outer_w) continue;
        int s0 = k - reach[s1];
        if (s0 > k - outer_w) continue;
        int cost = prefix(cost1, s1) + prefix(cost0, s0);
        if (best < 0 || cost < best) best = cost;
      }
      if (best >= 0) {
        if (v[outer_w] == Val::one) m.one_side = std::max(m.one_side, best);
        else m.zero_side = std::max(m.zero_side, best);
      }
      return;
    }
    int lo = stack.empty() ? 0 : stack.back();  // nondecreasing = multisets
    for (int w = lo; w <= k; ++w) {
      stack.push_back(w);
      walk();
      stack.pop_back();
    }
  };
  walk();
  m.overall = std::max(m.zero_side, m.one_side);
  return m;
}

}  // namespace certlab
