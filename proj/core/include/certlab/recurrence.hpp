#pragma once

#include <optional>
#include <vector>

#include "certlab/rational.hpp"

namespace certlab {

// Growth model for uniformly composed families:
//   C1_t = a*C1_{t-1} + b*C0_{t-1}
//   C0_t = max(alpha*C0_{t-1}, beta*C1_{t-1})
//   bs_t = bs^t
// The common single-coefficient form has alpha == beta == k.
struct RecurrenceSpec {
  Int c0 = 0, c1 = 0, bs = 0;
  std::optional<Rat> fc;  // base FC, when known (drives the bs-vs-FC exponent)
  Int a = 0, b = 0;
  Int alpha = 0, beta = 0;
};

struct GrowthResult {
  double ratio = 0;
  bool converged = false;
};
// Iterates in big integers and returns the converged consecutive ratio of
// max(C0_t, C1_t).
GrowthResult growth_constant(const RecurrenceSpec& r, int steps = 200, double tol = 1e-6);

struct Exponents {
  double rc_vs_c = 0;   // ln(bs) / ln(growth ratio)
  double c_vs_qc = 0;   // 2 / rc_vs_c
  double bs_vs_fc = 0;  // ln(bs) / ln(fc), 0 when fc unset
};
Exponents separation_exponents(const RecurrenceSpec& r);

}  // namespace certlab
