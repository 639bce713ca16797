#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "certlab/fraccert.hpp"
#include "certlab/function.hpp"
#include "certlab/input.hpp"
#include "certlab/rational.hpp"
#include "certlab/rng.hpp"

namespace certlab {

// Nonadaptive randomized verifier for a claimed input: queries position i
// with independent probability lambda[i] and rejects iff it sees a
// disagreement with the claimed input.
struct VerifierSpec {
  Input claimed;
  std::vector<Rat> lambda;
};

// lambda' = min(1, 2*lambda): turns "expected disagreement mass >= 1" into
// rejection probability >= 1 - e^-2 on every disagreeing input.
VerifierSpec scaled_verifier(const Input& x, const std::vector<Rat>& lambda_star);

struct NonadaptiveRun {
  bool rejected = false;
  std::uint64_t queried_mask = 0;
};
NonadaptiveRun run_nonadaptive(const VerifierSpec& v, const Input& y, std::uint64_t seed);

// A distribution over deterministic verifiers. Each deterministic verifier
// rejects exactly on the first disagreement, so it is an ordered query list.
struct AdaptiveVerifier {
  std::vector<std::pair<Rat, std::vector<int>>> trees;  // (probability, 0-based query order)
  Rat expected_queries() const;
};

// Nonadaptive conversion: T = ceil(2 * E[queries]); each of 4T independent
// repetitions picks t uniform in {1..T} and simulates the t-th query under
// assumed prior agreement; lambda_i = P[position i queried at least once].
// Exact by tree traversal.
VerifierSpec adaptive_to_nonadaptive(const AdaptiveVerifier& v, const Input& x);

// Monte Carlo variant for verifier families too large to traverse; the
// reported half-width is the 3-sigma binomial bound on each lambda_i.
struct McConversion {
  VerifierSpec spec;
  long trials = 0;
  double half_width = 0;
};
McConversion adaptive_to_nonadaptive_mc(const AdaptiveVerifier& v, const Input& x, long trials,
                                        std::uint64_t seed);

// Generic simulable randomized verifier, for the one-sided transform.
struct GenericRun {
  bool rejected = false;
  bool found_disagreement = false;
};
using RandomizedVerifier = std::function<GenericRun(const Input& y, Rng&)>;

// One-sided transform: rejects exactly when the run found a disagreement
// with the claimed input. Never rejects Y = X.
RandomizedVerifier one_sided_transform(const RandomizedVerifier& v);

struct ErrorRates {
  double eps0 = 0;  // P[reject | Y = X]
  double eps1 = 0;  // max over bad Y of P[accept | Y]
  bool vacuous = false;  // eps1 >= 1: the one-sided bound says nothing
};
ErrorRates measure_error_rates(const RandomizedVerifier& v, const Input& x,
                               const std::vector<Input>& bad, long trials, std::uint64_t seed);
// (1 - eps1) * (1 - 2*eps0 / (1 - eps1)), the guaranteed bad-input rejection
// probability of the transformed verifier.
double one_sided_rejection_bound(double eps0, double eps1);

// Recursive uniform-composition verifier: at each level, with probability
// p[K] pick a child whose claimed value is 1 (uniformly), else a claimed-0
// child, where K = number of claimed-1 children; descend to a leaf position.
// x.size() must be base.n()^t. Returns the 0-based leaf index.
int recursive_child_sampler(const Function& base, const std::vector<Rat>& p_table,
                            const Input& x, std::uint64_t seed);

// Exact worst case, over claimed profiles K and true child-value profiles
// with a different base value, of the probability that the sampled child's
// claimed and true values differ.
struct ChildMinimax {
  Rat value;
  bool vacuous = false;  // no disagreeing profile exists (constant base)
};
ChildMinimax child_hit_minimax(const Function& base, const std::vector<Rat>& p_table);
// Optimal p table (per-K minimax over the scenario lines) and its value.
std::pair<std::vector<Rat>, Rat> optimal_child_table(const Function& base);

// Zero-error evaluator: repeatedly pick the lexicographically least 0-input
// of the current restriction, query each free position with probability
// min(1, 2*lambda*), restrict to the observed values, until constant.
struct ZeroErrorResult {
  Val value = Val::undef;
  int distinct_queries = 0;
  int iterations = 0;
};

// Memo of FC-optimal verifiers per restriction, reusable across runs on one
// function. Keyed by (free mask, assigned values); single-writer use.
class FcCache {
 public:
  struct Entry {
    std::uint64_t x_prime;  // packed over free positions
    std::vector<Rat> lambda;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ull ^ k.second);
    }
  };
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Entry, PairHash> map;
};

ZeroErrorResult zero_error_eval(const Function& f, const Input& y, std::uint64_t seed,
                                FcCache* cache = nullptr, std::string* transcript = nullptr);

}  // namespace certlab
