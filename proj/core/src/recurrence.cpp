#include "certlab/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace certlab {

GrowthResult growth_constant(const RecurrenceSpec& r, int steps, double tol) {
  // alpha or beta may be 0 (a missing 0-certificate branch), not both
  if (r.a < 0 || r.b < 0 || r.alpha < 0 || r.beta < 0 || std::max(r.alpha, r.beta) <= 0 ||
      r.c0 <= 0 || r.c1 <= 0)
    throw std::invalid_argument("growth_constant: positive coefficients required");
  Int c0 = r.c0, c1 = r.c1;
  GrowthResult out;
  double prev_ratio = 0;
  int stable = 0;
  for (int t = 1; t <= steps; ++t) {
    Int n1 = r.a * c1 + r.b * c0;
    Int n0 = std::max(r.alpha * c0, r.beta * c1);
    Int prev = std::max(c0, c1);
    c0 = n0;
    c1 = n1;
    Int cur = std::max(c0, c1);
    double ratio = to_double(Rat(cur, prev));
    if (t > 1 && std::abs(ratio - prev_ratio) < tol) {
      if (++stable >= 3) {
        out.ratio = ratio;
        out.converged = true;
        return out;
      }
    } else {
      stable = 0;
    }
    prev_ratio = ratio;
    out.ratio = ratio;
  }
  out.converged = false;  // oscillating max or too-slow convergence
  return out;
}

Exponents separation_exponents(const RecurrenceSpec& r) {
  GrowthResult g = growth_constant(r);
  if (!g.converged) throw std::runtime_error("separation_exponents: growth did not converge");
  Exponents e;
  e.rc_vs_c = std::log(to_double(r.bs)) / std::log(g.ratio);
  e.c_vs_qc = 2.0 / e.rc_vs_c;
  if (r.fc && *r.fc > 1)
    e.bs_vs_fc = std::log(to_double(r.bs)) / std::log(to_double(*r.fc));
  return e;
}

}  // namespace certlab
