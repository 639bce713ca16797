#include "certlab/poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace certlab {

int MultilinearPoly::degree() const {
  int d = 0;
  for (auto& [m, c] : coeffs) d = std::max(d, std::popcount(m));
  return d;
}

Rat MultilinearPoly::evaluate_point(std::uint64_t point_mask) const {
  Rat s(0);
  for (auto& [m, c] : coeffs)
    if ((m & point_mask) == m) s += c;
  return s;
}

MultilinearPoly mobius_transform(const Function& f) {
  if (!f.total() || !f.boolean()) throw std::invalid_argument("mobius_transform: total Boolean only");
  if (f.n() > 20) throw std::invalid_argument("mobius_transform: n <= 20");
  int n = f.n();
  std::uint64_t size = 1ull << n;
  std::vector<long long> a(size);
  for (std::uint64_t i = 0; i < size; ++i) a[i] = (f.value_at(i) == Val::one) ? 1 : 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t bit = 1ull << i;
    for (std::uint64_t mask = 0; mask < size; ++mask)
      if (mask & bit) a[mask] -= a[mask ^ bit];
  }
  MultilinearPoly p;
  p.n = n;
  for (std::uint64_t mask = 0; mask < size; ++mask)
    if (a[mask]) p.coeffs.emplace(mask, Rat(a[mask]));
  return p;
}

int poly_degree(const Function& f) { return mobius_transform(f).degree(); }

std::vector<std::uint64_t> maxonomials(const MultilinearPoly& p) {
  if (p.zero()) throw std::invalid_argument("maxonomials: zero polynomial");
  std::vector<std::uint64_t> monos;
  monos.reserve(p.coeffs.size());
  for (auto& [m, c] : p.coeffs) monos.push_back(m);
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : monos) {
    bool covered = false;
    for (std::uint64_t o : monos) {
      if (o != m && (o & m) == m) { covered = true; break; }
    }
    if (!covered) out.push_back(m);
  }
  return out;
}

Int omega_weight(const std::vector<std::uint64_t>& monomials) {
  Int w = 0;
  for (std::uint64_t m : monomials) w += factorial(std::popcount(m));
  return w;
}

bool nondeterministically_represents(const MultilinearPoly& p, const Function& f) {
  if (!f.total() || !f.boolean() || p.n != f.n()) return false;
  std::uint64_t size = 1ull << f.n();
  for (std::uint64_t x = 0; x < size; ++x) {
    bool nonzero = p.evaluate_point(x) != 0;
    if (nonzero != (f.value_at(x) == Val::one)) return false;
  }
  return true;
}

namespace {

// monomial masks sorted by (degree, mask); boundaries[d] = #masks of degree <= d
std::vector<std::uint64_t> degree_ordered_masks(int n, std::vector<std::size_t>& boundaries) {
  std::vector<std::uint64_t> masks(1ull << n);
  for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  boundaries.assign(n + 1, 0);
  for (std::size_t i = 0; i < masks.size(); ++i) boundaries[std::popcount(masks[i])] = i + 1;
  for (int d = 1; d <= n; ++d) boundaries[d] = std::max(boundaries[d], boundaries[d - 1]);
  return masks;
}

// ---------- exact rational route ----------

struct ExactKernel {
  // reduced row echelon basis of polynomials of degree <= d vanishing on the
  // zero set, as coefficient vectors over the degree-ordered masks
  std::vector<std::vector<Rat>> basis;  // kernel basis vectors, length = #cols
};

// RREF of the evaluation matrix (rows = zero inputs, cols = monomials),
// then kernel basis from the free columns.
ExactKernel exact_kernel(const std::vector<std::uint64_t>& zeros,
                         const std::vector<std::uint64_t>& masks, std::size_t ncols) {
  std::size_t nrows = zeros.size();
  std::vector<std::vector<Rat>> m(nrows, std::vector<Rat>(ncols));
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c)
      m[r][c] = ((masks[c] & zeros[r]) == masks[c]) ? 1 : 0;

  std::vector<int> pivot_of_col(ncols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t sel = rank;
    while (sel < nrows && m[sel][c] == 0) ++sel;
    if (sel == nrows) continue;
    std::swap(m[rank], m[sel]);
    Rat inv = m[rank][c];
    for (std::size_t j = c; j < ncols; ++j) m[rank][j] /= inv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat factor = m[r][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (m[rank][j] != 0) m[r][j] -= factor * m[rank][j];
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }

  ExactKernel out;
  for (std::size_t fc = 0; fc < ncols; ++fc) {
    if (pivot_of_col[fc] >= 0) continue;
    std::vector<Rat> v(ncols, Rat(0));
    v[fc] = 1;
    for (std::size_t c = 0; c < ncols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -m[pivot_of_col[c]][fc];
    out.basis.push_back(std::move(v));
  }
  return out;
}

// ---------- modular route (31-bit Mersenne prime) ----------

constexpr std::uint32_t kP = 2147483647u;  // 2^31 - 1

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t x = static_cast<std::uint64_t>(a) * b;
  x = (x >> 31) + (x & kP);
  if (x >= kP) x -= kP;
  return static_cast<std::uint32_t>(x);
}
inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b) {
  return a >= b ? a - b : a + kP - b;
}
std::uint32_t mod_pow(std::uint32_t b, std::uint64_t e) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, b);
    b = mod_mul(b, b);
    e >>= 1;
  }
  return r;
}
inline std::uint32_t mod_inv(std::uint32_t a) { return mod_pow(a, kP - 2); }

struct ModRref {
  std::size_t ncols = 0;
  std::vector<std::vector<std::uint32_t>> rows;  // reduced pivot rows
  std::vector<int> pivot_of_col;                 // -1 if free
  std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan over GF(p), columns processed left to right so that the
// echelon restricted to any column prefix is the echelon of the submatrix.
ModRref mod_rref(const std::vector<std::uint64_t>& zeros,
                 const std::vector<std::uint64_t>& masks, std::size_t ncols) {
  std::size_t nrows = zeros.size();
  std::vector<std::vector<std::uint32_t>> m(nrows, std::vector<std::uint32_t>(ncols));
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c)
      m[r][c] = ((masks[c] & zeros[r]) == masks[c]) ? 1u : 0u;

  ModRref out;
  out.ncols = ncols;
  out.pivot_of_col.assign(ncols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t sel = rank;
    while (sel < nrows && m[sel][c] == 0) ++sel;
    if (sel == nrows) continue;
    std::swap(m[rank], m[sel]);
    std::uint32_t inv = mod_inv(m[rank][c]);
    for (std::size_t j = c; j < ncols; ++j)
      if (m[rank][j]) m[rank][j] = mod_mul(m[rank][j], inv);
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      std::uint32_t f = m[r][c];
      const auto& prow = m[rank];
      auto& row = m[r];
      for (std::size_t j = c; j < ncols; ++j)
        if (prow[j]) row[j] = mod_sub(row[j], mod_mul(f, prow[j]));
    }
    out.pivot_of_col[c] = static_cast<int>(rank);
    out.pivot_cols.push_back(c);
    ++rank;
  }
  m.resize(rank);
  out.rows = std::move(m);
  return out;
}

}  // namespace

NdegResult ndeg(const Function& f, int exact_cap) {
  if (!f.total() || !f.boolean()) throw std::invalid_argument("ndeg: total Boolean only");
  if (f.n() > 12) throw std::invalid_argument("ndeg: n <= 12");
  int n = f.n();
  std::uint64_t size = 1ull << n;
  std::vector<std::uint64_t> zeros, ones;
  for (std::uint64_t x = 0; x < size; ++x)
    (f.value_at(x) == Val::one ? ones : zeros).push_back(x);

  NdegResult res;
  if (ones.empty()) {
    // no polynomial can be nonzero nowhere except the zero polynomial
    res.degree = 0;
    res.degenerate = true;
    res.witness = MultilinearPoly{n, {}};
    res.witness_exact = true;
    return res;
  }
  if (zeros.empty()) {
    res.degree = 0;
    res.witness = MultilinearPoly{n, {{0, Rat(1)}}};
    res.witness_exact = true;
    return res;
  }

  std::vector<std::size_t> boundaries;
  auto masks = degree_ordered_masks(n, boundaries);

  if (n <= exact_cap) {
    for (int d = 0; d <= n; ++d) {
      auto kernel = exact_kernel(zeros, masks, boundaries[d]);
      if (kernel.basis.empty()) continue;  // full column rank: K_d = {0}
      // value of every basis element at every 1-input
      std::size_t kdim = kernel.basis.size();
      std::vector<std::vector<Rat>> vals(ones.size(), std::vector<Rat>(kdim, Rat(0)));
      bool feasible = true;
      for (std::size_t xi = 0; xi < ones.size(); ++xi) {
        bool any = false;
        for (std::size_t j = 0; j < kdim; ++j) {
          Rat v(0);
          for (std::size_t c = 0; c < boundaries[d]; ++c)
            if (kernel.basis[j][c] != 0 && (masks[c] & ones[xi]) == masks[c])
              v += kernel.basis[j][c];
          vals[xi][j] = v;
          any = any || v != 0;
        }
        if (!any) { feasible = false; break; }
      }
      if (!feasible) continue;
      // deterministic generic combination: p_t = sum_j t^j b_j with the first
      // integer t making every 1-input evaluation nonzero
      long long limit = static_cast<long long>(kdim) * static_cast<long long>(ones.size()) + 2;
      for (long long t = 1; t <= limit; ++t) {
        bool ok = true;
        for (std::size_t xi = 0; xi < ones.size() && ok; ++xi) {
          Rat v(0), tp(1);
          for (std::size_t j = 0; j < kdim; ++j) {
            v += tp * vals[xi][j];
            tp *= t;
          }
          if (v == 0) ok = false;
        }
        if (!ok) continue;
        MultilinearPoly w;
        w.n = n;
        Rat tp(1);
        std::vector<Rat> combo(boundaries[d], Rat(0));
        for (std::size_t j = 0; j < kdim; ++j) {
          for (std::size_t c = 0; c < boundaries[d]; ++c)
            if (kernel.basis[j][c] != 0) combo[c] += tp * kernel.basis[j][c];
          tp *= t;
        }
        for (std::size_t c = 0; c < boundaries[d]; ++c)
          if (combo[c] != 0) w.coeffs.emplace(masks[c], combo[c]);
        if (!nondeterministically_represents(w, f))
          throw std::logic_error("ndeg: witness failed exact verification");
        res.degree = d;
        res.witness = std::move(w);
        res.witness_exact = true;
        return res;
      }
      throw std::logic_error("ndeg: generic combination scan exhausted");
    }
    throw std::logic_error("ndeg: no degree feasible");  // cannot happen (d = n always works)
  }

  // modular route: value only
  bool prior_infeasible_exact = true;
  for (int d = 0; d <= n; ++d) {
    auto rref = mod_rref(zeros, masks, boundaries[d]);
    std::size_t rank = rref.pivot_cols.size();
    if (rank == boundaries[d]) continue;  // full column rank mod p => K_d = {0} over Q, exact
    // kernel basis mod p from free columns
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < boundaries[d]; ++c)
      if (rref.pivot_of_col[c] < 0) free_cols.push_back(c);
    bool feasible = true;
    for (std::size_t xi = 0; xi < ones.size() && feasible; ++xi) {
      bool any = false;
      for (std::size_t j = 0; j < free_cols.size() && !any; ++j) {
        std::size_t fc = free_cols[j];
        // v[fc] = 1, v[pivot col c] = -rref.rows[pivot][fc]
        std::uint32_t v = ((masks[fc] & ones[xi]) == masks[fc]) ? 1u : 0u;
        for (std::size_t pi = 0; pi < rank; ++pi) {
          std::size_t pc = rref.pivot_cols[pi];
          if ((masks[pc] & ones[xi]) != masks[pc]) continue;
          std::uint32_t coef = rref.rows[pi][fc];
          if (coef) v = mod_sub(v, coef);
        }
        if (v) any = true;
      }
      if (!any) feasible = false;  // zero mod p for every basis vector
    }
    if (feasible) {
      res.degree = d;
      res.witness_exact = false;
      res.feasibility_probabilistic = true;
      // minimality is exact iff every smaller degree was ruled out by a full
      // column rank mod p (nonsingular minor over Z)
      res.minimality_certified = prior_infeasible_exact;
      return res;
    }
    // a 1-input whose functional vanished on the mod-p kernel: infeasibility
    // at this d is modular evidence only
    prior_infeasible_exact = false;
  }
  throw std::logic_error("ndeg: no degree feasible (modular route)");
}

std::uint64_t nisan_smolensky_block(const Function& f, const MultilinearPoly& p,
                                    std::uint64_t maxonomial, const Input& x0) {
  if (!nondeterministically_represents(p, f))
    throw std::invalid_argument("nisan_smolensky_block: p does not represent f");
  auto maxos = maxonomials(p);
  if (std::find(maxos.begin(), maxos.end(), maxonomial) == maxos.end())
    throw std::invalid_argument("nisan_smolensky_block: not a maxonomial");
  if (f.evaluate(x0) != Val::zero)
    throw std::invalid_argument("nisan_smolensky_block: f(X) must be 0");

  std::vector<int> bits;
  for (int i = 0; i < f.n(); ++i)
    if (maxonomial & (1ull << i)) bits.push_back(i);
  std::uint64_t xi = x0.index();
  for (std::uint64_t c = 1; c < (1ull << bits.size()); ++c) {
    std::uint64_t b = 0;
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (c & (1ull << j)) b |= 1ull << bits[j];
    if (f.value_at(xi ^ b) == Val::one) return b;
  }
  throw std::logic_error("nisan_smolensky_block: exhaustion (lemma would be falsified)");
}

ShrinkTrace shrink_simulation(const MultilinearPoly& p, std::uint64_t seed,
                              const ShrinkRule* rule, int max_iterations) {
  Rng rng = make_rng(seed);
  std::function<bool(Rng&, std::uint64_t, int)> do_shrink =
      [](Rng& r, std::uint64_t, int) { return (r() & 1) != 0; };
  std::function<std::uint64_t(Rng&, std::uint64_t, int)> pick_target =
      [](Rng&, std::uint64_t m, int) {
        // drop the largest variable index
        int hi = 63 - std::countl_zero(m);
        return m & ~(1ull << hi);
      };
  if (rule && rule->shrink) do_shrink = rule->shrink;
  if (rule && rule->target) pick_target = rule->target;

  std::set<std::uint64_t> s;
  for (auto& [m, c] : p.coeffs)
    if (m) s.insert(m);

  ShrinkTrace trace;
  std::vector<std::uint64_t> cur(s.begin(), s.end());
  trace.omegas.push_back(omega_weight(cur));
  while (!s.empty() && trace.iterations < max_iterations) {
    // maxonomials of the current set
    std::vector<std::uint64_t> monos(s.begin(), s.end());
    std::vector<std::uint64_t> maxos;
    for (std::uint64_t m : monos) {
      bool covered = false;
      for (std::uint64_t o : monos)
        if (o != m && (o & m) == m) { covered = true; break; }
      if (!covered) maxos.push_back(m);
    }
    for (std::uint64_t m : maxos) {
      if (!do_shrink(rng, m, trace.iterations)) continue;
      s.erase(m);
      std::uint64_t t = pick_target(rng, m, trace.iterations);
      if (std::popcount(t) != std::popcount(m) - 1)
        throw std::invalid_argument("shrink_simulation: target must drop exactly one degree");
      if (t) s.insert(t);
    }
    ++trace.iterations;
    cur.assign(s.begin(), s.end());
    trace.omegas.push_back(omega_weight(cur));
  }
  trace.completed = s.empty();
  return trace;
}

double shrink_iteration_bound(int n, int deg) {
  double base = 4 * std::exp(1.0);
  double denom = std::log(base / (base - 1));
  double numer = std::log(2.0) + deg * std::log(static_cast<double>(n)) + std::lgamma(deg + 1.0);
  return numer / denom;
}

}  // namespace certlab
