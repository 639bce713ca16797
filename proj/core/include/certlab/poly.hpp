#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "certlab/function.hpp"
#include "certlab/input.hpp"
#include "certlab/rational.hpp"
#include "certlab/rng.hpp"

namespace certlab {

// Exact-rational multilinear polynomial over Boolean variables; monomials are
// variable masks, zero coefficients are not stored.
struct MultilinearPoly {
  int n = 0;
  std::map<std::uint64_t, Rat> coeffs;

  bool zero() const { return coeffs.empty(); }
  int degree() const;
  Rat evaluate_point(std::uint64_t point_mask) const;  // at a 0/1 point
};

// Unique multilinear p with p(X) = f(X) at every point. Total Boolean f,
// n <= 20; coefficients are integers for 0/1-valued f.
MultilinearPoly mobius_transform(const Function& f);
int poly_degree(const Function& f);

// Monomials not strictly contained in another monomial's variable set.
std::vector<std::uint64_t> maxonomials(const MultilinearPoly& p);

// omega(A) = sum over A of deg(M)!, exact big integer (0! = 1 for the
// constant monomial, per the literal definition).
Int omega_weight(const std::vector<std::uint64_t>& monomials);

// p(X) != 0 iff f(X) = 1 at every point; exact check.
bool nondeterministically_represents(const MultilinearPoly& p, const Function& f);

struct NdegResult {
  int degree = 0;
  MultilinearPoly witness;           // populated on the exact route
  bool degenerate = false;           // f identically 0: degree 0 with the zero polynomial
  bool witness_exact = false;        // witness verified exactly at every point
  bool minimality_certified = true;  // infeasibility at degree-1 established exactly
  bool feasibility_probabilistic = false;  // degree chosen via modular evidence only
};

// Minimum degree of a nondeterministic representation. Exact rational kernel
// computation up to exact_cap variables (with a verified witness); beyond
// that a multi-modular route computes the value, certifying kernel-trivial
// degrees exactly (a full-column-rank minor mod p is nonsingular over Q) and
// flagging the rest. n <= 12.
NdegResult ndeg(const Function& f, int exact_cap = 9);

// Lemma: if p nondeterministically represents f, M is a maxonomial and
// f(X) = 0, some B inside vars(M) has f(X^(B)) = 1. Exhaustive search in
// ascending mask order; throws on exhaustion (which would refute the lemma).
std::uint64_t nisan_smolensky_block(const Function& f, const MultilinearPoly& p,
                                    std::uint64_t maxonomial, const Input& x0);

struct ShrinkRule {
  // Marginal shrink probability must be >= 1/2; the default is a fair coin.
  std::function<bool(Rng&, std::uint64_t mono, int iteration)> shrink;
  // Replacement of degree deg(M)-1; the default drops the highest index.
  std::function<std::uint64_t(Rng&, std::uint64_t mono, int iteration)> target;
};

struct ShrinkTrace {
  std::vector<Int> omegas;  // omega of the nonconstant monomial set, index 0 = initial
  int iterations = 0;
  bool completed = false;
};

// Repeatedly shrinks every maxonomial with probability >= 1/2 until no
// nonconstant monomial remains.
ShrinkTrace shrink_simulation(const MultilinearPoly& p, std::uint64_t seed,
                              const ShrinkRule* rule = nullptr, int max_iterations = 1000000);

// log_{4e/(4e-1)}(2 n^deg deg!)
double shrink_iteration_bound(int n, int deg);

}  // namespace certlab
