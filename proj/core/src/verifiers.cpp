#include "certlab/verifiers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "certlab/measures.hpp"

namespace certlab {

VerifierSpec scaled_verifier(const Input& x, const std::vector<Rat>& lambda_star) {
  VerifierSpec v;
  v.claimed = x;
  v.lambda.reserve(lambda_star.size());
  for (const Rat& l : lambda_star) v.lambda.push_back(std::min(Rat(1), Rat(2 * l)));
  return v;
}

NonadaptiveRun run_nonadaptive(const VerifierSpec& v, const Input& y, std::uint64_t seed) {
  if (y.size() != v.claimed.size() || v.lambda.size() != static_cast<std::size_t>(y.size()))
    throw std::invalid_argument("run_nonadaptive: size mismatch");
  Rng rng = make_rng(seed);
  NonadaptiveRun run;
  for (int i = 0; i < y.size(); ++i) {
    if (!chance(rng, to_double(v.lambda[i]))) continue;
    run.queried_mask |= 1ull << i;
    if (y[i] != v.claimed[i]) run.rejected = true;
  }
  return run;
}

Rat AdaptiveVerifier::expected_queries() const {
  Rat s(0);
  for (auto& [p, seq] : trees) s += p * Rat(static_cast<long>(seq.size()));
  return s;
}

namespace {

long ceil_to_long(const Rat& r) { return static_cast<long>(rat_ceil(r)); }

}  // namespace

VerifierSpec adaptive_to_nonadaptive(const AdaptiveVerifier& v, const Input& x) {
  Rat total(0);
  for (auto& [p, seq] : v.trees) total += p;
  if (total != 1) throw std::invalid_argument("adaptive_to_nonadaptive: probabilities must sum to 1");
  long T = std::max<long>(1, ceil_to_long(2 * v.expected_queries()));
  long reps = 4 * T;
  int n = x.size();
  // q_i = P[one repetition queries position i]; on a Y that agrees so far,
  // the t-th query of a sequence is simply its t-th entry.
  std::vector<Rat> q(n, Rat(0));
  for (auto& [p, seq] : v.trees) {
    long upto = std::min<long>(T, static_cast<long>(seq.size()));
    for (long t = 0; t < upto; ++t) {
      int pos = seq[t];
      if (pos < 0 || pos >= n) throw std::invalid_argument("adaptive_to_nonadaptive: bad position");
      q[pos] += p / T;
    }
  }
  VerifierSpec out;
  out.claimed = x;
  out.lambda.resize(n);
  for (int i = 0; i < n; ++i) {
    // 1 - (1 - q_i)^reps, exact
    Rat miss(1);
    Rat base = 1 - q[i];
    for (long r = 0; r < reps; ++r) miss *= base;
    out.lambda[i] = 1 - miss;
  }
  return out;
}

McConversion adaptive_to_nonadaptive_mc(const AdaptiveVerifier& v, const Input& x, long trials,
                                        std::uint64_t seed) {
  long T = std::max<long>(1, ceil_to_long(2 * v.expected_queries()));
  long reps = 4 * T;
  int n = x.size();
  Rng rng = make_rng(seed);
  std::vector<double> cum;
  for (auto& [p, seq] : v.trees) cum.push_back((cum.empty() ? 0.0 : cum.back()) + to_double(p));
  std::vector<long> hits(n, 0);
  for (long trial = 0; trial < trials; ++trial) {
    std::uint64_t seen = 0;
    for (long r = 0; r < reps; ++r) {
      double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      std::size_t ti = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
      if (ti >= v.trees.size()) ti = v.trees.size() - 1;
      const auto& seq = v.trees[ti].second;
      long t = std::uniform_int_distribution<long>(0, T - 1)(rng);
      if (t < static_cast<long>(seq.size())) seen |= 1ull << seq[t];
    }
    for (int i = 0; i < n; ++i)
      if (seen & (1ull << i)) ++hits[i];
  }
  McConversion out;
  out.trials = trials;
  out.spec.claimed = x;
  out.spec.lambda.resize(n);
  for (int i = 0; i < n; ++i) {
    // store the empirical estimate as an exact fraction hits/trials
    out.spec.lambda[i] = Rat(hits[i], trials);
  }
  out.half_width = 3.0 * std::sqrt(0.25 / static_cast<double>(trials));
  return out;
}

RandomizedVerifier one_sided_transform(const RandomizedVerifier& v) {
  return [v](const Input& y, Rng& rng) -> GenericRun {
    GenericRun r = v(y, rng);
    r.rejected = r.found_disagreement;
    return r;
  };
}

ErrorRates measure_error_rates(const RandomizedVerifier& v, const Input& x,
                               const std::vector<Input>& bad, long trials, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  long rej_x = 0;
  for (long t = 0; t < trials; ++t)
    if (v(x, rng).rejected) ++rej_x;
  ErrorRates rates;
  rates.eps0 = static_cast<double>(rej_x) / trials;
  for (const Input& y : bad) {
    long acc = 0;
    for (long t = 0; t < trials; ++t)
      if (!v(y, rng).rejected) ++acc;
    rates.eps1 = std::max(rates.eps1, static_cast<double>(acc) / trials);
  }
  rates.vacuous = rates.eps1 >= 1.0;
  return rates;
}

double one_sided_rejection_bound(double eps0, double eps1) {
  if (eps1 >= 1.0) return 0.0;
  return (1.0 - eps1) * (1.0 - 2.0 * eps0 / (1.0 - eps1));
}

namespace {

// claimed value of the uniform composition block, via the symmetric profile
int block_value(const Function& base, const Input& x, int lo, int len) {
  int k = base.n();
  if (len == k) {
    int w = 0;
    for (int i = 0; i < k; ++i) w += x[lo + i];
    return base.profile()[w] == Val::one ? 1 : 0;
  }
  int child = len / k;
  int w = 0;
  for (int c = 0; c < k; ++c) w += block_value(base, x, lo + c * child, child);
  return base.profile()[w] == Val::one ? 1 : 0;
}

int sample_rec(const Function& base, const std::vector<Rat>& p, const Input& x, int lo, int len,
               Rng& rng) {
  int k = base.n();
  std::vector<int> vals(k);
  int child = len / k;
  for (int c = 0; c < k; ++c)
    vals[c] = (len == k) ? static_cast<int>(x[lo + c]) : block_value(base, x, lo + c * child, child);
  int K = 0;
  for (int c = 0; c < k; ++c) K += vals[c];
  bool pick_ones = chance(rng, to_double(p[K]));
  std::vector<int> cls;
  for (int c = 0; c < k; ++c)
    if (vals[c] == (pick_ones ? 1 : 0)) cls.push_back(c);
  if (cls.empty())
    throw std::invalid_argument("recursive_child_sampler: p forces an empty child class");
  int c = cls[std::uniform_int_distribution<std::size_t>(0, cls.size() - 1)(rng)];
  if (len == k) return lo + c;
  return sample_rec(base, p, x, lo + c * child, child, rng);
}

}  // namespace

int recursive_child_sampler(const Function& base, const std::vector<Rat>& p_table, const Input& x,
                            std::uint64_t seed) {
  if (base.kind() != Function::Kind::symmetric || !base.total() || !base.boolean())
    throw std::invalid_argument("recursive_child_sampler: base must be total symmetric");
  int k = base.n();
  if (static_cast<int>(p_table.size()) != k + 1)
    throw std::invalid_argument("recursive_child_sampler: p table needs k+1 entries");
  long long len = x.size();
  while (len > k) {
    if (len % k) throw std::invalid_argument("recursive_child_sampler: input is not base.n()^t long");
    len /= k;
  }
  if (len != k) throw std::invalid_argument("recursive_child_sampler: input is not base.n()^t long");
  Rng rng = make_rng(seed);
  return sample_rec(base, p_table, x, 0, x.size(), rng);
}

ChildMinimax child_hit_minimax(const Function& base, const std::vector<Rat>& p_table) {
  if (base.kind() != Function::Kind::symmetric || !base.total() || !base.boolean())
    throw std::invalid_argument("child_hit_minimax: base must be total symmetric");
  int k = base.n();
  if (static_cast<int>(p_table.size()) != k + 1)
    throw std::invalid_argument("child_hit_minimax: p table needs k+1 entries");
  const auto& v = base.profile();
  bool any = false;
  Rat best(0);
  for (int K = 0; K <= k; ++K) {
    // m1 claimed-1 children actually 0, m0 claimed-0 children actually 1
    for (int m1 = 0; m1 <= K; ++m1) {
      for (int m0 = 0; m0 <= k - K; ++m0) {
        int true_w = K - m1 + m0;
        if (v[true_w] == v[K]) continue;
        Rat hit(0);
        if (K > 0) hit += p_table[K] * Rat(m1, K);
        else if (p_table[K] > 0)
          throw std::invalid_argument("child_hit_minimax: p[0] > 0 with no claimed-1 children");
        if (K < k) hit += (1 - p_table[K]) * Rat(m0, k - K);
        else if (p_table[K] < 1)
          throw std::invalid_argument("child_hit_minimax: p[k] < 1 with no claimed-0 children");
        if (!any || hit < best) { best = hit; any = true; }
      }
    }
  }
  if (!any) return {Rat(1), true};
  return {best, false};
}

std::pair<std::vector<Rat>, Rat> optimal_child_table(const Function& base) {
  int k = base.n();
  const auto& v = base.profile();
  std::vector<Rat> table(k + 1, Rat(0));
  Rat overall(1);
  bool overall_any = false;
  for (int K = 0; K <= k; ++K) {
    // scenario lines hit(p) = A*p + B*(1-p)
    std::vector<std::pair<Rat, Rat>> lines;
    for (int m1 = 0; m1 <= K; ++m1) {
      for (int m0 = 0; m0 <= k - K; ++m0) {
        int true_w = K - m1 + m0;
        if (v[true_w] == v[K]) continue;
        Rat A = (K > 0) ? Rat(m1, K) : Rat(0);
        Rat B = (K < k) ? Rat(m0, k - K) : Rat(0);
        lines.emplace_back(A, B);
      }
    }
    if (lines.empty()) {
      table[K] = (K == k) ? Rat(1) : Rat(0);
      continue;
    }
    // candidate p values: 0, 1, pairwise intersections of scenario lines;
    // forced endpoints at K = 0 (p = 0) and K = k (p = 1)
    std::vector<Rat> candidates;
    if (K == 0) candidates = {Rat(0)};
    else if (K == k) candidates = {Rat(1)};
    else {
      candidates = {Rat(0), Rat(1)};
      for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          // A1 p + B1 (1-p) = A2 p + B2 (1-p)
          Rat da = lines[i].first - lines[j].first;
          Rat db = lines[i].second - lines[j].second;
          if (da == db) continue;
          Rat p = db / (db - da);
          if (p >= 0 && p <= 1) candidates.push_back(p);
        }
      }
    }
    bool any = false;
    Rat best_val(0), best_p(0);
    for (const Rat& p : candidates) {
      Rat worst(0);
      bool first = true;
      for (auto& [A, B] : lines) {
        Rat h = A * p + B * (1 - p);
        if (first || h < worst) { worst = h; first = false; }
      }
      if (!any || worst > best_val) { best_val = worst; best_p = p; any = true; }
    }
    table[K] = best_p;
    if (!overall_any || best_val < overall) { overall = best_val; overall_any = true; }
  }
  if (!overall_any) overall = Rat(1);
  return {table, overall};
}

namespace {

std::uint64_t fnv64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t w : {a, b}) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace

ZeroErrorResult zero_error_eval(const Function& f, const Input& y, std::uint64_t seed,
                                FcCache* cache, std::string* transcript) {
  if (!f.total() || !f.boolean()) throw std::invalid_argument("zero_error_eval: total Boolean only");
  if (f.n() > 16) throw std::invalid_argument("zero_error_eval: n <= 16");
  int n = f.n();
  std::uint64_t size = 1ull << n;
  std::vector<Val> table = f.dense_expansion();
  std::uint64_t yi = y.index();

  Rng rng = make_rng(seed);
  std::uint64_t assigned_mask = 0;  // positions already queried
  ZeroErrorResult res;

  for (;;) {
    if (res.iterations > 1000000) throw std::logic_error("zero_error_eval: iteration guard tripped");
    std::uint64_t free_mask = ~assigned_mask & nbits_mask(n);
    int freec = std::popcount(free_mask);
    std::vector<int> free_pos;
    for (int i = 0; i < n; ++i)
      if (free_mask & (1ull << i)) free_pos.push_back(i);
    std::uint64_t base_idx = yi & assigned_mask;

    // scan the restriction for constancy and the lex-least 0-input
    bool seen0 = false, seen1 = false;
    std::uint64_t first0 = 0;
    for (std::uint64_t sub = 0; sub < (1ull << freec); ++sub) {
      std::uint64_t idx = base_idx;
      for (int j = 0; j < freec; ++j)
        if (sub & (1ull << j)) idx |= 1ull << free_pos[j];
      if (table[idx] == Val::one) {
        seen1 = true;
      } else if (!seen0) {
        seen0 = true;
        first0 = sub;
      }
      if (seen0 && seen1) break;
    }
    if (!seen0 || !seen1) {
      res.value = seen1 ? Val::one : Val::zero;
      return res;
    }

    // FC-optimal verifier for the lex-least 0-input of the restriction
    const std::vector<Rat>* lambda = nullptr;
    FcCache local;
    FcCache& c = cache ? *cache : local;
    auto key = std::make_pair(free_mask, base_idx);
    auto it = c.map.find(key);
    if (it == c.map.end() || it->second.x_prime != first0) {
      // rows of the restricted LP at first0, over free positions
      std::vector<std::uint64_t> rows;
      for (std::uint64_t sub = 0; sub < (1ull << freec); ++sub) {
        std::uint64_t idx = base_idx;
        for (int j = 0; j < freec; ++j)
          if (sub & (1ull << j)) idx |= 1ull << free_pos[j];
        if (table[idx] == Val::one) rows.push_back(sub ^ first0);
      }
      rows = antichain_rows(std::move(rows));
      LpResult lp = solve_covering_lp(rows, freec);
      FcCache::Entry e;
      e.x_prime = first0;
      e.lambda = std::move(lp.lambda);
      it = c.map.insert_or_assign(key, std::move(e)).first;
    }
    lambda = &it->second.lambda;

    // draw I: include free position j with probability min(1, 2*lambda_j)
    std::uint64_t newly = 0;
    for (int j = 0; j < freec; ++j) {
      Rat p = std::min(Rat(1), Rat(2 * (*lambda)[j]));
      if (chance(rng, to_double(p))) newly |= 1ull << free_pos[j];
    }
    ++res.iterations;
    if (newly) {
      assigned_mask |= newly;
      res.distinct_queries = std::popcount(assigned_mask);
      if (transcript) {
        for (int i = 0; i < n; ++i) {
          if (newly & (1ull << i)) {
            std::uint64_t h = fnv64(~assigned_mask & nbits_mask(n), yi & assigned_mask);
            *transcript += std::to_string(i + 1) + "\t" + std::to_string((yi >> i) & 1) + "\t" +
                           std::to_string(h) + "\n";
          }
        }
      }
    }
  }
}

}  // namespace certlab
