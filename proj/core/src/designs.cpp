#include "certlab/designs.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace certlab {

namespace {

std::uint64_t sample_subset(int universe, int n, Rng& rng) {
  // partial Fisher-Yates over element indices
  std::vector<int> elems(universe);
  for (int i = 0; i < universe; ++i) elems[i] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> d(i, universe - 1);
    std::swap(elems[i], elems[d(rng)]);
    mask |= 1ull << elems[i];
  }
  return mask;
}

}  // namespace

BuildResult build_design(int n, const Rat& gamma, int target_m, std::uint64_t seed,
                         long retry_budget) {
  if (gamma <= 1) throw std::invalid_argument("build_design: gamma > 1 required");
  Int u_big = rat_ceil(gamma * n);
  if (u_big > 64) throw std::invalid_argument("build_design: universe exceeds cap of 64");
  int universe = static_cast<int>(u_big);
  if (n < 1 || n > universe) throw std::invalid_argument("build_design: bad n");
  int bound = static_cast<int>(rat_ceil(Rat(n) / gamma));

  BuildResult out;
  out.design.universe = universe;
  out.design.gamma = gamma;
  out.design.n = n;
  out.design.bound = bound;

  Rng rng = make_rng(seed);
  auto& sets = out.design.sets;
  for (long t = 0; t < retry_budget && static_cast<int>(sets.size()) < target_m; ++t) {
    ++out.attempts;
    std::uint64_t cand = sample_subset(universe, n, rng);
    bool ok = true;
    for (std::uint64_t s : sets) {
      if (std::popcount(s & cand) > bound || s == cand) { ok = false; break; }
    }
    if (ok) sets.push_back(cand);
  }
  out.design.m = static_cast<int>(sets.size());
  out.reached_target = out.design.m >= target_m;
  return out;
}

DesignVerify verify_design(const SetDesign& d) {
  DesignVerify v;
  for (int i = 0; i < d.m; ++i) {
    if (std::popcount(d.sets[i]) != d.n || (d.universe < 64 && (d.sets[i] >> d.universe))) {
      v.ok = false;
      v.bad_i = v.bad_j = i;
      return v;
    }
    for (int j = i + 1; j < d.m; ++j) {
      if (std::popcount(d.sets[i] & d.sets[j]) > d.bound || d.sets[i] == d.sets[j]) {
        v.ok = false;
        v.bad_i = i;
        v.bad_j = j;
        return v;
      }
    }
  }
  return v;
}

Function design_to_symmetric_partial(const SetDesign& d, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != d.m)
    throw std::invalid_argument("design_to_symmetric_partial: labels size mismatch");
  for (int i = 0; i < d.m; ++i)
    for (int j = i + 1; j < d.m; ++j)
      if (d.sets[i] == d.sets[j])
        throw std::invalid_argument("design_to_symmetric_partial: duplicate sets");
  auto design = std::make_shared<const SetDesign>(d);
  std::map<std::uint64_t, Val> value_of;
  for (int j = 0; j < d.m; ++j) value_of[d.sets[j]] = to_val(labels[j]);
  int n = d.n, universe = d.universe;
  auto eval = [value_of, n, universe](const Input& y) -> Val {
    if (y.size() != n) throw std::invalid_argument("design function: wrong input length");
    std::uint64_t mask = 0;
    for (int i = 0; i < n; ++i) {
      if (y[i] >= static_cast<std::uint32_t>(universe)) return Val::undef;
      mask |= 1ull << y[i];
    }
    if (std::popcount(mask) != n) return Val::undef;  // repeated symbol
    auto it = value_of.find(mask);
    return it == value_of.end() ? Val::undef : it->second;
  };
  Function f = Function::promise(n, universe, std::move(eval));
  return attach_design(std::move(f), design, labels);
}

std::vector<int> random_labels(int m, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<int> labels(m);
  for (auto& b : labels) b = static_cast<int>(rng() & 1);
  return labels;
}

namespace {

int hamming(const Input& a, const Input& b) {
  int d = 0;
  for (int i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

}  // namespace

DisagreementBound min_pairwise_disagreement(const Function& f, int sample_budget,
                                            std::uint64_t seed) {
  if (auto d = f.design()) {
    const auto& labels = f.design_labels();
    if (d->m < 2) throw std::invalid_argument("min_pairwise_disagreement: fewer than 2 classes");
    bool two_classes = false;
    for (int j = 1; j < d->m; ++j)
      if (labels[j] != labels[0]) two_classes = true;
    if (!two_classes)
      throw std::invalid_argument("min_pairwise_disagreement: fewer than 2 value classes");
    // an ordering of S_i can agree with an ordering of S_j on at most
    // |S_i ∩ S_j| positions, and that many agreements are achievable
    int max_inter = 0;
    for (int i = 0; i < d->m; ++i)
      for (int j = i + 1; j < d->m; ++j)
        if (labels[i] != labels[j])
          max_inter = std::max(max_inter, std::popcount(d->sets[i] & d->sets[j]));
    return {d->n - max_inter, true};
  }

  if (f.domain_enumerable()) {
    std::vector<Input> zeros, ones;
    int n = f.n();
    f.for_each_defined([&](std::uint64_t idx, Val v) {
      Input y = f.boolean() ? Input::from_index(idx, n) : Input::from_packed(idx, n, f.alphabet());
      (v == Val::one ? ones : zeros).push_back(std::move(y));
    });
    if (zeros.empty() || ones.empty())
      throw std::invalid_argument("min_pairwise_disagreement: fewer than 2 value classes");
    int best = n;
    for (const auto& a : zeros)
      for (const auto& b : ones)
        best = std::min(best, hamming(a, b));
    return {best, true};
  }

  // sampled minimum (an upper bound on the true minimum distance)
  Rng rng = make_rng(seed);
  int best = f.n();
  bool saw_pair = false;
  std::vector<Input> zeros, ones;
  for (int t = 0; t < sample_budget; ++t) {
    Input y = sample_domain_point(f, rng);
    Val v = f.evaluate(y);
    if (v == Val::undef) continue;
    auto& mine = (v == Val::one) ? ones : zeros;
    auto& other = (v == Val::one) ? zeros : ones;
    for (const auto& o : other) {
      best = std::min(best, hamming(y, o));
      saw_pair = true;
    }
    if (mine.size() < 256) mine.push_back(std::move(y));
  }
  if (!saw_pair) throw std::invalid_argument("min_pairwise_disagreement: no cross pair sampled");
  return {best, false};
}

Input sample_domain_point(const Function& f, Rng& rng) {
  if (auto d = f.design()) {
    std::uniform_int_distribution<int> pick(0, d->m - 1);
    std::uint64_t mask = d->sets[pick(rng)];
    std::vector<std::uint32_t> symbols;
    for (int e = 0; e < d->universe; ++e)
      if (mask & (1ull << e)) symbols.push_back(e);
    std::shuffle(symbols.begin(), symbols.end(), rng);
    return Input(std::move(symbols));
  }
  if (f.collision_n() > 0) {
    int n = f.collision_n();
    int alphabet = n * n;
    std::vector<std::uint32_t> vals;
    if (rng() & 1) {
      // one-to-one: n distinct symbols
      std::vector<std::uint32_t> pool(alphabet);
      for (int i = 0; i < alphabet; ++i) pool[i] = i;
      for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> d2(i, alphabet - 1);
        std::swap(pool[i], pool[d2(rng)]);
        vals.push_back(pool[i]);
      }
    } else {
      // two-to-one: n/2 distinct symbols, each twice
      std::vector<std::uint32_t> pool(alphabet);
      for (int i = 0; i < alphabet; ++i) pool[i] = i;
      for (int i = 0; i < n / 2; ++i) {
        std::uniform_int_distribution<int> d2(i, alphabet - 1);
        std::swap(pool[i], pool[d2(rng)]);
        vals.push_back(pool[i]);
        vals.push_back(pool[i]);
      }
      std::shuffle(vals.begin(), vals.end(), rng);
    }
    return Input(std::move(vals));
  }
  if (f.domain_enumerable()) {
    std::vector<std::uint64_t> idxs;
    f.for_each_defined([&](std::uint64_t idx, Val) { idxs.push_back(idx); });
    std::uniform_int_distribution<std::size_t> pick(0, idxs.size() - 1);
    std::uint64_t idx = idxs[pick(rng)];
    return f.boolean() ? Input::from_index(idx, f.n()) : Input::from_packed(idx, f.n(), f.alphabet());
  }
  throw std::invalid_argument("sample_domain_point: unsupported function kind");
}

std::string design_to_text(const SetDesign& d) {
  std::ostringstream os;
  os << d.universe << " " << rat_str(d.gamma) << " " << d.n << " " << d.m << "\n";
  for (std::uint64_t s : d.sets) {
    bool first = true;
    for (int e = 0; e < d.universe; ++e) {
      if (s & (1ull << e)) {
        if (!first) os << " ";
        os << (e + 1);
        first = false;
      }
    }
    os << "\n";
  }
  return os.str();
}

namespace {

Rat parse_gamma(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash != std::string::npos)
    return Rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
  auto dot = tok.find('.');
  if (dot != std::string::npos) {
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    Int den = 1;
    for (std::size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
    return Rat(Int(digits), den);
  }
  return Rat(Int(tok));
}

}  // namespace

SetDesign design_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  SetDesign d;
  std::string gamma_tok;
  if (!(is >> d.universe >> gamma_tok >> d.n >> d.m))
    throw std::invalid_argument("design_from_text: bad header");
  d.gamma = parse_gamma(gamma_tok);
  if (d.universe < 1 || d.universe > 64) throw std::invalid_argument("design_from_text: bad universe");
  d.bound = static_cast<int>(rat_ceil(Rat(d.n) / d.gamma));
  for (int j = 0; j < d.m; ++j) {
    std::uint64_t mask = 0;
    for (int t = 0; t < d.n; ++t) {
      int e;
      if (!(is >> e) || e < 1 || e > d.universe)
        throw std::invalid_argument("design_from_text: bad element");
      mask |= 1ull << (e - 1);
    }
    d.sets.push_back(mask);
  }
  return d;
}

}  // namespace certlab
