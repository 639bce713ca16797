#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "certlab/fraccert.hpp"
#include "certlab/function.hpp"
#include "certlab/input.hpp"
#include "certlab/rational.hpp"

namespace certlab {

// Weighted Grover instance: num_states basis states split into copies[i]
// states per position, copies proportional to lambda_i within rounding;
// marked states are the copies of positions where y differs from x.
struct GroverInstance {
  int num_states = 0;
  std::vector<int> copies;
  std::vector<char> marked_position;
  int marked_count() const;
};

// copies_i = max(1, round(N*lambda_i/S)) adjusted to sum N by largest
// remainder. N defaults to n^2.
GroverInstance make_grover_instance(const std::vector<Rat>& lambda, const Input& x, const Input& y,
                                    int num_states = 0);

// Statevector pieces, exposed so tests can check norm preservation.
std::vector<char> grover_marked_states(const GroverInstance& g);
std::vector<double> grover_initial_state(const GroverInstance& g);
void grover_iterate(const std::vector<char>& marked, std::vector<double>& amps);
double grover_success(const std::vector<char>& marked, const std::vector<double>& amps);

// Probability mass on marked states after k exact Grover iterations from the
// uniform state.
double grover_simulate(const GroverInstance& g, int iterations);
// Success at every k in 0..k_max, one simulation pass.
std::vector<double> grover_success_curve(const GroverInstance& g, int k_max);
// sin^2((2k+1) asin(sqrt(M/N)))
double grover_closed_form(int num_states, int marked, int k);
// ceil(pi/4 * sqrt(N/M))
int grover_iteration_budget(int num_states, int min_marked);

// Two-sided adversary quantity for the star relation {(X,Y) : Y in the
// weighted family}, with beta(X) = 1. bound = sqrt(1/(delta0*delta1)).
struct AdversaryResult {
  Rat delta_x;        // max_i sum of beta over Y differing at i
  Rat delta_y;        // 1 (the X side)
  Rat inv_product;    // 1/(delta0*delta1), exact
  double bound = 0;   // sqrt of inv_product
  bool vacuous = false;
};
AdversaryResult adversary_bound(const Input& x, const std::vector<std::pair<Input, Rat>>& beta);
// beta = mu*/FC from an optimal dual solution; exactly realizes bound^2 = FC.
AdversaryResult adversary_from_dual(const Function& f, const CertificateLP& lp,
                                    const LPSolution& sol);

// Branch states for the conditional-rotation exactifier: final verifier
// states sum_z alpha_z |z>(beta_z|0> + gamma_z|1>) on the claimed input and
// on a disagreeing one. The two runs share the branch register distribution.
struct BranchPair {
  std::vector<std::complex<double>> alpha;    // shared first register
  std::vector<std::complex<double>> beta_x, gamma_x;
  std::vector<std::complex<double>> beta_y, gamma_y;
};

struct RotationOutcome {
  double accept_x = 0;  // exactly 1 up to float error
  double accept_y = 0;  // <= 2(eps0 + eps1)
};
// Applies the per-branch rotation built from the claimed input's branch
// amplitudes to both runs' answer registers.
RotationOutcome exactify_rotation(const BranchPair& p);

// Delta(N, d) = sum_{i=0..d} C(N, i), exact.
Int delta_count(int N, int d);
// Largest T with 2T * Delta(ceil(n log2 n), 2T) * ceil(n log2 n)^2 < 2^(n/3),
// compared exactly by cubing. 0 when even T = 1 crosses the threshold.
int symthm_bound(int n);

}  // namespace certlab
