#pragma once

#include <string>
#include <boost/multiprecision/cpp_int.hpp>

namespace certlab {

// Exact arithmetic used throughout the measure and LP engines.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& i) { return i.convert_to<double>(); }

// Smallest integer >= r.
inline Int rat_ceil(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (q * rat_den(r) < rat_num(r)) ++q;
  return q;
}

// Prints "p" for integers and "p/q" otherwise.
inline std::string rat_str(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

Int factorial(int k);
Int binomial(int n, int k);

// Exact square root when r is a perfect square of a rational; empty otherwise.
bool exact_sqrt(const Rat& r, Rat* out);

}  // namespace certlab
