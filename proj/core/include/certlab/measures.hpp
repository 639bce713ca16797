#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "certlab/function.hpp"
#include "certlab/input.hpp"

namespace certlab {

inline std::uint64_t nbits_mask(int n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

// Disagreement sets {i : y_i != x_i} over all Y in Dom(f) with f(Y) != f(X),
// deduplicated, as 0-based position masks. Requires an enumerable domain or
// a structured fast path (symmetric, lattice at the all-zeros input).
std::vector<std::uint64_t> disagreement_rows(const Function& f, const Input& x);

// Keeps only inclusion-minimal sets (an antichain). Supersets carry implied
// constraints for both the hitting-set and LP views.
std::vector<std::uint64_t> antichain_rows(std::vector<std::uint64_t> rows);

// Exact minimum hitting set / maximum disjoint packing over an antichain of
// nonempty sets. Branch and bound; deterministic exploration order.
int min_hitting_set(const std::vector<std::uint64_t>& rows, int n, std::uint64_t* witness);
int max_disjoint_packing(const std::vector<std::uint64_t>& rows, int n,
                         std::vector<std::uint64_t>* witness);

struct CertResult {
  int size = 0;
  std::uint64_t witness = 0;  // position mask
};
struct BsResult {
  int count = 0;
  std::vector<std::uint64_t> blocks;
};
// Per-value maxima: value-0 side, value-1 side, overall.
struct SideMax {
  int zero_side = 0, one_side = 0, overall = 0;
};

CertResult certificate_complexity(const Function& f, const Input& x);
SideMax certificate_complexity_max(const Function& f);

std::vector<std::uint64_t> minimal_blocks(const Function& f, const Input& x);
BsResult block_sensitivity(const Function& f, const Input& x);
SideMax block_sensitivity_max(const Function& f);

// {X} together with X^(B) for every minimal block B.
std::vector<Input> neighborhood(const Function& f, const Input& x);

// Witness re-verification against the full domain.
bool verify_certificate(const Function& f, const Input& x, std::uint64_t positions);
bool verify_block_family(const Function& f, const Input& x,
                         const std::vector<std::uint64_t>& blocks);

// Memo for decision-tree depth, shareable across calls (keyed by restriction
// truth table). Single-writer use.
class DtMemo {
 public:
  struct Key {
    int n;
    std::vector<std::uint64_t> bits;
    bool operator==(const Key& o) const { return n == o.n && bits == o.bits; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<int>()(k.n);
      for (auto w : k.bits) h = h * 0x9e3779b97f4a7c15ull + std::hash<std::uint64_t>()(w);
      return h;
    }
  };
  std::unordered_map<Key, int, KeyHash> table;
};

// D(f) by memoized recursion over restrictions. Total Boolean f, n <= 16.
int decision_tree_depth(const Function& f, DtMemo* memo = nullptr);

struct SymMeasures {
  int cert = 0;
  int bs = 0;
};
// Closed-form C^X and bs^X for total symmetric functions at a given Hamming
// weight. Matches the generic engines (property-tested).
SymMeasures symmetric_measures(const Function& f, int weight);

// Achievable disagreement profiles (a zeros flipped, b ones flipped) that
// change a total symmetric function's value at the given weight, reduced to
// the antichain of the valid set.
std::vector<std::pair<int, int>> symmetric_minimal_displacements(const Function& f, int weight);

// Exact global C0/C1 for the uniform two-level composition base∘base of a
// total symmetric Boolean base, via weight-class DP.
SideMax composed_symmetric_cert_max(const Function& base);

}  // namespace certlab
