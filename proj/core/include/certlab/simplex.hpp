#pragma once

#include <cstdint>
#include <vector>

#include "certlab/rational.hpp"

namespace certlab {

// Exact solution of the covering/packing LP pair attached to a set system:
//
//   covering (primal):  min sum(lambda_i)  s.t. for every row R: sum_{i in R} lambda_i >= 1,
//                       lambda >= 0
//   packing  (dual):    max sum(mu_R)      s.t. for every position i: sum_{R ∋ i} mu_R <= 1,
//                       mu >= 0
//
// One exact-rational primal simplex run on the packing form yields both
// optimal solutions (the covering optimum appears as the slack reduced
// costs). Bland's rule throughout, so no cycling.
struct LpResult {
  Rat value;
  std::vector<Rat> lambda;  // size n
  std::vector<Rat> mu;      // size rows.size()
};

LpResult solve_covering_lp(const std::vector<std::uint64_t>& rows, int n);

}  // namespace certlab
