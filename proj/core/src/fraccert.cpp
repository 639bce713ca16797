#include "certlab/fraccert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "certlab/designs.hpp"
#include "certlab/measures.hpp"
#include "certlab/rng.hpp"

namespace certlab {

CertificateLP build_cert_lp(const Function& f, const Input& x) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) throw std::invalid_argument("build_cert_lp: X outside Dom(f)");
  CertificateLP lp;
  lp.x = x;
  lp.n = f.n();
  lp.rows = antichain_rows(disagreement_rows(f, x));
  return lp;
}

LPSolution solve_cert_lp(const CertificateLP& lp) {
  LpResult r = solve_covering_lp(lp.rows, lp.n);
  return LPSolution{r.value, std::move(r.lambda), std::move(r.mu)};
}

Rat fc_symmetric(const Function& f, int weight) {
  auto pairs = symmetric_minimal_displacements(f, weight);
  if (pairs.empty()) return Rat(0);
  int n = f.n(), w = weight;
  Rat c0(n - w), c1(w);

  std::vector<std::pair<Rat, Rat>> candidates;  // (lam0, lam1) vertices
  for (auto& [a, b] : pairs) {
    if (a > 0) candidates.emplace_back(Rat(1, a), Rat(0));
    if (b > 0) candidates.emplace_back(Rat(0), Rat(1, b));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      long ap = pairs[p].first, bp = pairs[p].second;
      long aq = pairs[q].first, bq = pairs[q].second;
      long det = ap * bq - aq * bp;
      if (det == 0) continue;
      Rat l0 = Rat(bq - bp) / det, l1 = Rat(ap - aq) / det;
      candidates.emplace_back(l0, l1);
    }
  }
  bool found = false;
  Rat best(0);
  for (auto& [l0, l1] : candidates) {
    if (l0 < 0 || l1 < 0) continue;
    bool ok = true;
    for (auto& [a, b] : pairs) {
      if (Rat(a) * l0 + Rat(b) * l1 < 1) { ok = false; break; }
    }
    if (!ok) continue;
    Rat obj = c0 * l0 + c1 * l1;
    if (!found || obj < best) { best = obj; found = true; }
  }
  if (!found) throw std::logic_error("fc_symmetric: no feasible vertex");
  return best;
}

Rat fc_value(const Function& f, const Input& x) {
  if (f.kind() == Function::Kind::symmetric && f.total() && f.boolean())
    return fc_symmetric(f, x.weight());
  return solve_cert_lp(build_cert_lp(f, x)).value;
}

FcMax fc_max(const Function& f) {
  FcMax m{Rat(0), Rat(0), Rat(0)};
  if (f.kind() == Function::Kind::symmetric && f.total() && f.boolean()) {
    for (int w = 0; w <= f.n(); ++w) {
      Rat v = fc_symmetric(f, w);
      if (f.profile()[w] == Val::one) m.one_side = std::max(m.one_side, v);
      else m.zero_side = std::max(m.zero_side, v);
    }
    m.overall = std::max(m.zero_side, m.one_side);
    return m;
  }
  int n = f.n();
  f.for_each_defined([&](std::uint64_t idx, Val v) {
    Input x = f.boolean() ? Input::from_index(idx, n) : Input::from_packed(idx, n, f.alphabet());
    Rat fc = solve_cert_lp(build_cert_lp(f, x)).value;
    if (v == Val::one) m.one_side = std::max(m.one_side, fc);
    else m.zero_side = std::max(m.zero_side, fc);
  });
  m.overall = std::max(m.zero_side, m.one_side);
  return m;
}

double qc_estimate(const Rat& fc) {
  if (fc < 0) throw std::invalid_argument("qc_estimate: negative input");
  Rat root;
  if (exact_sqrt(fc, &root)) return to_double(root);
  return std::sqrt(to_double(fc));
}

namespace {

Rat row_lambda_sum(const Input& x, const Input& y, const std::vector<Rat>& lambda) {
  Rat s(0);
  for (int i = 0; i < x.size(); ++i)
    if (y[i] != x[i]) s += lambda[i];
  return s;
}

}  // namespace

FcBounds fc_bounds_promise(const Function& f, const Input& x,
                           const std::vector<Rat>& lambda,
                           const std::vector<std::pair<Input, Rat>>& mu,
                           int sample_budget, std::uint64_t seed) {
  Val fx = f.evaluate(x);
  if (fx == Val::undef) throw std::invalid_argument("fc_bounds_promise: X outside Dom(f)");
  FcBounds out;

  // ---- primal candidate: FC <= sum(lambda) if every disagreeing Y has
  // lambda-mass >= 1 on its disagreement set
  if (!lambda.empty()) {
    if (static_cast<int>(lambda.size()) != f.n())
      throw std::invalid_argument("fc_bounds_promise: lambda size mismatch");
    Rat total(0), min_l = lambda[0];
    bool nonneg = true;
    for (auto& l : lambda) {
      if (l < 0) nonneg = false;
      total += l;
      min_l = std::min(min_l, l);
    }
    bool feasible = nonneg;
    bool exact = false;
    if (feasible && f.domain_enumerable()) {
      int n = f.n();
      f.for_each_defined([&](std::uint64_t idx, Val v) {
        if (v == fx || !feasible) return;
        Input y = f.boolean() ? Input::from_index(idx, n) : Input::from_packed(idx, n, f.alphabet());
        if (row_lambda_sum(x, y, lambda) < 1) {
          feasible = false;
          out.violation = "primal constraint violated at packed input " + std::to_string(idx);
        }
      });
      exact = feasible;
    } else if (feasible && f.design()) {
      // orderings of distinct sets agree on at most |Si ∩ Sj| positions
      auto dr = min_pairwise_disagreement(f, 0, 0);
      if (Rat(dr.bound) * min_l >= 1) {
        exact = true;
      } else {
        feasible = false;
        out.violation = "design distance bound insufficient for this lambda";
      }
    } else if (feasible) {
      Rng rng = make_rng(seed);
      int n = f.n();
      for (int t = 0; t < sample_budget && feasible; ++t) {
        Input y = sample_domain_point(f, rng);
        Val v = f.evaluate(y);
        if (v == Val::undef || v == fx) continue;
        if (row_lambda_sum(x, y, lambda) < 1) {
          feasible = false;
          out.violation = "primal constraint violated at a sampled input";
        }
      }
      (void)n;
    }
    out.upper_ok = feasible;
    out.upper_exact = exact;
    if (feasible) out.upper = total;
  }

  // ---- dual candidate: FC >= sum(mu) if weights sit on genuine disagreeing
  // inputs and every position's load is <= 1 (checked exactly)
  if (!mu.empty()) {
    bool ok = true;
    Rat total(0);
    for (auto& [y, w] : mu) {
      if (w < 0) { ok = false; out.violation = "negative dual weight"; break; }
      Val v = f.evaluate(y);
      if (v == Val::undef || v == fx) {
        ok = false;
        out.violation = "dual weight on a non-disagreeing input";
        break;
      }
      total += w;
    }
    if (ok) {
      for (int i = 0; i < f.n() && ok; ++i) {
        Rat load(0);
        for (auto& [y, w] : mu)
          if (y[i] != x[i]) load += w;
        if (load > 1) {
          ok = false;
          out.violation = "dual column load > 1 at position " + std::to_string(i + 1);
        }
      }
    }
    out.lower_ok = ok;
    if (ok) out.lower = total;
  }
  return out;
}

}  // namespace certlab
