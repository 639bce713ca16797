#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "certlab/function.hpp"
#include "certlab/recurrence.hpp"

namespace certlab {

// Recurrence attached to a weight-window function, with the composition
// coefficients read off the window geometry and the base values from the
// symmetric closed forms.
RecurrenceSpec window_recurrence(int n, int a, int b);

struct WindowEntry {
  int n = 0, a = 0, b = 0;
  int c0 = 0, c1 = 0, bs0 = 0, bs1 = 0;
  double ratio = 0;
  double exponent = 0;  // ln(bs)/ln(ratio); conservative min(bs0,bs1) if unproven
  bool proven = false;  // bs0 == bs1, so bs_t = bs^t holds under composition
};

struct WindowSearchResult {
  std::vector<WindowEntry> ranked;    // bs0 == bs1 windows, ascending exponent
  std::vector<WindowEntry> unproven;  // the rest, conservative exponents, same order
};

// Sweeps every nonconstant window [a,b] on up to n_max variables.
// Deterministic ordering: (exponent, n, a, b).
WindowSearchResult window_search(int n_max);

// Uniform-measure candidates on 6 variables: C^X = 5 and bs^X = 4 at every
// input, verified with the exact engines.
struct UniformCheck {
  bool ok = false;
  Input witness;  // first violating input when !ok
  int cert = 0, bs = 0;
};
UniformCheck uniform_measure_check(const Function& f);

// Seeded bit-flip hill climbing over 6-variable truth tables, minimizing the
// number of violating inputs. budget counts candidate evaluations.
std::optional<Function> uniform_measure_search(long budget, std::uint64_t seed);

}  // namespace certlab
