#include "certlab/simplex.hpp"

#include <stdexcept>

namespace certlab {

LpResult solve_covering_lp(const std::vector<std::uint64_t>& rows, int n) {
  const int R = static_cast<int>(rows.size());
  LpResult out;
  out.lambda.assign(n, Rat(0));
  out.mu.assign(R, Rat(0));
  if (R == 0) {
    out.value = 0;
    return out;
  }
  for (auto r : rows)
    if (!r) throw std::invalid_argument("solve_covering_lp: empty row");

  // packing tableau: n constraint rows, R structural + n slack columns + rhs
  const int cols = R + n + 1;
  std::vector<std::vector<Rat>> T(n, std::vector<Rat>(cols, Rat(0)));
  std::vector<Rat> z(cols, Rat(0));
  std::vector<int> basis(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < R; ++j)
      if (rows[j] & (1ull << i)) T[i][j] = 1;
    T[i][R + i] = 1;
    T[i][cols - 1] = 1;
    basis[i] = R + i;
  }
  for (int j = 0; j < R; ++j) z[j] = -1;  // maximize sum(mu)

  for (;;) {
    // Bland: smallest-index column with negative reduced cost
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j) {
      if (z[j] < 0) { enter = j; break; }
    }
    if (enter < 0) break;
    // ratio test, Bland tie-break on basic variable index
    int leave = -1;
    Rat best_ratio(0);
    for (int i = 0; i < n; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][cols - 1] / T[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("solve_covering_lp: unbounded packing LP");
    // pivot
    Rat piv = T[leave][enter];
    for (int j = 0; j < cols; ++j) T[leave][j] /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat factor = T[i][enter];
      for (int j = 0; j < cols; ++j)
        if (T[leave][j] != 0) T[i][j] -= factor * T[leave][j];
    }
    if (z[enter] != 0) {
      Rat factor = z[enter];
      for (int j = 0; j < cols; ++j)
        if (T[leave][j] != 0) z[j] -= factor * T[leave][j];
    }
    basis[leave] = enter;
  }

  out.value = z[cols - 1];
  for (int i = 0; i < n; ++i)
    if (basis[i] < R) out.mu[basis[i]] = T[i][cols - 1];
  for (int i = 0; i < n; ++i) out.lambda[i] = z[R + i];

  // exact re-verification of both sides and of strong duality
  Rat lam_sum(0), mu_sum(0);
  for (int i = 0; i < n; ++i) {
    if (out.lambda[i] < 0) throw std::logic_error("lp: negative lambda");
    lam_sum += out.lambda[i];
  }
  for (int j = 0; j < R; ++j) {
    if (out.mu[j] < 0) throw std::logic_error("lp: negative mu");
    mu_sum += out.mu[j];
    Rat row_sum(0);
    for (int i = 0; i < n; ++i)
      if (rows[j] & (1ull << i)) row_sum += out.lambda[i];
    if (row_sum < 1) throw std::logic_error("lp: covering constraint violated");
  }
  for (int i = 0; i < n; ++i) {
    Rat col_sum(0);
    for (int j = 0; j < R; ++j)
      if (rows[j] & (1ull << i)) col_sum += out.mu[j];
    if (col_sum > 1) throw std::logic_error("lp: packing constraint violated");
  }
  if (lam_sum != out.value || mu_sum != out.value)
    throw std::logic_error("lp: primal and dual objectives differ");
  return out;
}

}  // namespace certlab
