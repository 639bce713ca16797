#include "certlab/rational.hpp"

namespace certlab {

Int factorial(int k) {
  Int r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

bool exact_sqrt(const Rat& r, Rat* out) {
  if (r < 0) return false;
  Int num = rat_num(r), den = rat_den(r);
  Int sn = boost::multiprecision::sqrt(num);
  Int sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  if (out) *out = Rat(sn, sd);
  return true;
}

}  // namespace certlab
