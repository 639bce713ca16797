#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "certlab/function.hpp"
#include "certlab/input.hpp"
#include "certlab/rational.hpp"
#include "certlab/simplex.hpp"

namespace certlab {

// The LP for fractional certificate complexity at a claimed input: rows are
// the minimal disagreement sets of Y in Dom(f) with f(Y) != f(X).
struct CertificateLP {
  Input x;
  int n = 0;
  std::vector<std::uint64_t> rows;  // antichain
};

struct LPSolution {
  Rat value;                // FC^X
  std::vector<Rat> lambda;  // primal, per position
  std::vector<Rat> mu;      // dual, per row
};

CertificateLP build_cert_lp(const Function& f, const Input& x);

// Exact optimum; primal = dual asserted with equality.
LPSolution solve_cert_lp(const CertificateLP& lp);
inline LPSolution solve_primal(const CertificateLP& lp) { return solve_cert_lp(lp); }
inline LPSolution solve_dual(const CertificateLP& lp) { return solve_cert_lp(lp); }

// Reduced two-variable LP for total symmetric functions: minimize
// (n-w)*lam0 + w*lam1 over the achievable disagreement profiles.
Rat fc_symmetric(const Function& f, int weight);

// FC^X with the symmetric fast path when applicable.
Rat fc_value(const Function& f, const Input& x);
// max over Dom(f); per-value maxima as with C and bs.
struct FcMax {
  Rat zero_side, one_side, overall;
};
FcMax fc_max(const Function& f);

// sqrt(FC) with an exact-perfect-square fast path.
double qc_estimate(const Rat& fc);

// Certified FC bounds for promise functions whose domain may be too large to
// enumerate. The primal candidate is checked on enumerated or structurally
// bounded constraints (exact for design-based functions and enumerated
// promises, sampled otherwise); the dual candidate is checked exactly.
struct FcBounds {
  Rat upper, lower;
  bool upper_ok = false, lower_ok = false;
  bool upper_exact = false;  // constraint check covered all of Dom
  std::string violation;     // description of a violated constraint, if any
};
FcBounds fc_bounds_promise(const Function& f, const Input& x,
                           const std::vector<Rat>& lambda,
                           const std::vector<std::pair<Input, Rat>>& mu,
                           int sample_budget = 0, std::uint64_t seed = 0);

}  // namespace certlab
