#include "certlab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace certlab {

int GroverInstance::marked_count() const {
  int m = 0;
  for (std::size_t i = 0; i < copies.size(); ++i)
    if (marked_position[i]) m += copies[i];
  return m;
}

GroverInstance make_grover_instance(const std::vector<Rat>& lambda, const Input& x, const Input& y,
                                    int num_states) {
  int n = x.size();
  if (y.size() != n || static_cast<int>(lambda.size()) != n)
    throw std::invalid_argument("make_grover_instance: size mismatch");
  if (num_states <= 0) num_states = n * n;
  Rat S(0);
  for (const Rat& l : lambda) {
    if (l < 0) throw std::invalid_argument("make_grover_instance: negative weight");
    S += l;
  }
  if (S == 0) throw std::invalid_argument("make_grover_instance: zero verifier weight");
  int positive = 0;
  for (const Rat& l : lambda) positive += (l > 0);
  if (positive > num_states)
    throw std::invalid_argument("make_grover_instance: fewer states than weighted positions");

  GroverInstance g;
  g.num_states = num_states;
  g.copies.assign(n, 0);
  g.marked_position.assign(n, 0);
  std::vector<Rat> target(n, Rat(0));
  int total = 0;
  for (int i = 0; i < n; ++i) {
    if (lambda[i] == 0) continue;
    target[i] = Rat(num_states) * lambda[i] / S;
    Int rounded = rat_ceil(target[i] - Rat(1, 2));  // round half up
    int c = std::max(1, static_cast<int>(rounded));
    g.copies[i] = c;
    total += c;
  }
  // largest-remainder adjustment toward sum == num_states
  while (total != num_states) {
    int pick = -1;
    Rat best(0);
    for (int i = 0; i < n; ++i) {
      if (lambda[i] == 0) continue;
      if (total > num_states) {
        if (g.copies[i] <= 1) continue;
        Rat over = Rat(g.copies[i]) - target[i];
        if (pick < 0 || over > best) { pick = i; best = over; }
      } else {
        Rat under = target[i] - Rat(g.copies[i]);
        if (pick < 0 || under > best) { pick = i; best = under; }
      }
    }
    if (pick < 0) throw std::logic_error("make_grover_instance: cannot balance copies");
    g.copies[pick] += (total > num_states) ? -1 : 1;
    total += (total > num_states) ? -1 : 1;
  }
  for (int i = 0; i < n; ++i) g.marked_position[i] = (x[i] != y[i]);
  return g;
}

std::vector<char> grover_marked_states(const GroverInstance& g) {
  std::vector<char> marked;
  marked.reserve(g.num_states);
  for (std::size_t i = 0; i < g.copies.size(); ++i)
    for (int c = 0; c < g.copies[i]; ++c) marked.push_back(g.marked_position[i]);
  marked.resize(g.num_states, 0);
  return marked;
}

std::vector<double> grover_initial_state(const GroverInstance& g) {
  return std::vector<double>(g.num_states, 1.0 / std::sqrt(static_cast<double>(g.num_states)));
}

void grover_iterate(const std::vector<char>& marked, std::vector<double>& amps) {
  // phase oracle on marked states, then reflection about the mean
  double sum = 0;
  for (std::size_t s = 0; s < amps.size(); ++s) {
    if (marked[s]) amps[s] = -amps[s];
    sum += amps[s];
  }
  double mean = sum / static_cast<double>(amps.size());
  for (auto& a : amps) a = 2 * mean - a;
}

double grover_success(const std::vector<char>& marked, const std::vector<double>& amps) {
  double p = 0;
  for (std::size_t s = 0; s < amps.size(); ++s)
    if (marked[s]) p += amps[s] * amps[s];
  return p;
}

double grover_simulate(const GroverInstance& g, int iterations) {
  auto marked = grover_marked_states(g);
  auto amps = grover_initial_state(g);
  for (int k = 0; k < iterations; ++k) grover_iterate(marked, amps);
  return grover_success(marked, amps);
}

std::vector<double> grover_success_curve(const GroverInstance& g, int k_max) {
  auto marked = grover_marked_states(g);
  auto amps = grover_initial_state(g);
  std::vector<double> out;
  out.reserve(k_max + 1);
  out.push_back(grover_success(marked, amps));
  for (int k = 1; k <= k_max; ++k) {
    grover_iterate(marked, amps);
    out.push_back(grover_success(marked, amps));
  }
  return out;
}

double grover_closed_form(int num_states, int marked, int k) {
  if (marked == 0) return 0.0;
  double theta = std::asin(std::sqrt(static_cast<double>(marked) / num_states));
  double s = std::sin((2.0 * k + 1.0) * theta);
  return s * s;
}

int grover_iteration_budget(int num_states, int min_marked) {
  if (min_marked <= 0) throw std::invalid_argument("grover_iteration_budget: marked count >= 1");
  double v = std::ceil((std::acos(-1.0) / 4.0) *
                       std::sqrt(static_cast<double>(num_states) / min_marked));
  return static_cast<int>(v);
}

AdversaryResult adversary_bound(const Input& x, const std::vector<std::pair<Input, Rat>>& beta) {
  AdversaryResult out;
  if (beta.empty()) {
    out.vacuous = true;
    return out;
  }
  Rat total(0);
  for (auto& [y, b] : beta) {
    if (b < 0) throw std::invalid_argument("adversary_bound: negative weight");
    total += b;
  }
  if (total < 1) throw std::invalid_argument("adversary_bound: sum of beta must be >= 1");
  int n = x.size();
  Rat delta(0);
  for (int i = 0; i < n; ++i) {
    Rat col(0);
    for (auto& [y, b] : beta)
      if (y[i] != x[i]) col += b;
    delta = std::max(delta, col);
  }
  if (delta == 0) throw std::invalid_argument("adversary_bound: no disagreement in the family");
  out.delta_x = delta;
  out.delta_y = 1;
  out.inv_product = 1 / (out.delta_x * out.delta_y);
  out.bound = qc_estimate(out.inv_product);
  return out;
}

AdversaryResult adversary_from_dual(const Function& f, const CertificateLP& lp,
                                    const LPSolution& sol) {
  if (!f.boolean()) throw std::invalid_argument("adversary_from_dual: Boolean functions only");
  if (sol.value == 0) {
    AdversaryResult out;
    out.vacuous = true;
    return out;
  }
  std::vector<std::pair<Input, Rat>> beta;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    if (sol.mu[r] == 0) continue;
    Input y = flip_block(lp.x, lp.rows[r]);
    Val vy = f.evaluate(y);
    Val vx = f.evaluate(lp.x);
    if (vy == Val::undef || vy == vx)
      throw std::logic_error("adversary_from_dual: dual weight on a non-disagreeing input");
    beta.emplace_back(std::move(y), sol.mu[r] / sol.value);
  }
  return adversary_bound(lp.x, beta);
}

RotationOutcome exactify_rotation(const BranchPair& p) {
  std::size_t z = p.alpha.size();
  if (p.beta_x.size() != z || p.gamma_x.size() != z || p.beta_y.size() != z ||
      p.gamma_y.size() != z)
    throw std::invalid_argument("exactify_rotation: branch count mismatch");
  double norm_a = 0;
  for (auto& a : p.alpha) norm_a += std::norm(a);
  if (std::abs(norm_a - 1.0) > 1e-9)
    throw std::invalid_argument("exactify_rotation: first register not normalized");
  RotationOutcome out;
  for (std::size_t i = 0; i < z; ++i) {
    double nx = std::norm(p.beta_x[i]) + std::norm(p.gamma_x[i]);
    double ny = std::norm(p.beta_y[i]) + std::norm(p.gamma_y[i]);
    if (std::abs(nx - 1.0) > 1e-9 || std::abs(ny - 1.0) > 1e-9)
      throw std::invalid_argument("exactify_rotation: unnormalized branch");
    // unitary sending (beta_x, gamma_x) to (0, 1); second row conjugated so
    // the accept amplitude is the inner product with the claimed branch
    auto rot_accept = [&](const std::complex<double>& b, const std::complex<double>& g) {
      return std::conj(p.beta_x[i]) * b + std::conj(p.gamma_x[i]) * g;
    };
    double w = std::norm(p.alpha[i]);
    out.accept_x += w * std::norm(rot_accept(p.beta_x[i], p.gamma_x[i]));
    out.accept_y += w * std::norm(rot_accept(p.beta_y[i], p.gamma_y[i]));
  }
  return out;
}

Int delta_count(int N, int d) {
  if (d < 0 || d > N) throw std::invalid_argument("delta_count: need 0 <= d <= N");
  Int s = 0;
  for (int i = 0; i <= d; ++i) s += binomial(N, i);
  return s;
}

int symthm_bound(int n) {
  if (n < 2) throw std::invalid_argument("symthm_bound: n >= 2");
  int N = static_cast<int>(std::ceil(n * std::log2(static_cast<double>(n)) - 1e-9));
  Int rhs = Int(1) << n;  // (2^(n/3))^3
  int best = 0;
  for (int T = 1; 2 * T <= N; ++T) {
    Int lhs = Int(2 * T) * delta_count(N, 2 * T) * Int(N) * Int(N);
    if (lhs * lhs * lhs < rhs) best = T;
    else break;
  }
  return best;
}

}  // namespace certlab
