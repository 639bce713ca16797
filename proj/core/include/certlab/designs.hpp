#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "certlab/function.hpp"
#include "certlab/input.hpp"
#include "certlab/rational.hpp"
#include "certlab/rng.hpp"

namespace certlab {

// A family of n-element subsets of {1..universe} with a certified pairwise
// intersection bound. Sets are bitmasks (bit e = element e+1); universe <= 64.
struct SetDesign {
  int universe = 0;
  Rat gamma;
  int n = 0;
  int m = 0;
  int bound = 0;  // |Si ∩ Sj| <= bound for i != j, verified exhaustively
  std::vector<std::uint64_t> sets;
};

struct BuildResult {
  SetDesign design;
  bool reached_target = false;
  long attempts = 0;
};

// Randomized greedy: sample uniform n-subsets of {1..ceil(gamma*n)}, keep
// those whose intersection with every kept set is <= ceil(n/gamma), until
// target_m sets are kept or the retry budget runs out.
BuildResult build_design(int n, const Rat& gamma, int target_m, std::uint64_t seed,
                         long retry_budget = 200000);

struct DesignVerify {
  bool ok = true;
  int bad_i = -1, bad_j = -1;
};
DesignVerify verify_design(const SetDesign& d);

// Promise function whose domain is every ordering (distinct entries) of each
// design set; the value of all orderings of S_j is labels[j]. Symmetric by
// construction.
Function design_to_symmetric_partial(const SetDesign& d, const std::vector<int>& labels);

std::vector<int> random_labels(int m, std::uint64_t seed);

struct DisagreementBound {
  int bound = 0;
  bool exact = false;
};
// Minimum Hamming disagreement between domain points with different values.
// Exact for design functions (n - max intersection) and for enumerated
// promise domains; sampled minimum otherwise.
DisagreementBound min_pairwise_disagreement(const Function& f, int sample_budget,
                                            std::uint64_t seed);

// Uniform-ish random domain point for promise functions (design orderings,
// collision instances, enumerated domains).
Input sample_domain_point(const Function& f, Rng& rng);

std::string design_to_text(const SetDesign& d);
SetDesign design_from_text(std::string_view text);

}  // namespace certlab
