#pragma once
// Exact scalar layer: arbitrary-precision integers and reduced rationals,
// plus the canonical "p/q" rendering used by every serializer in the tree.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kuga {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

// Floor of an exact rational (cpp_int division truncates toward zero).
inline Int rat_floor(const Rat& r) {
  Int n = num(r), d = den(r);
  Int q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Fractional part in [0, 1).
inline Rat frac1(const Rat& r) { return r - Rat(rat_floor(r)); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline std::string int_str(const Int& n) { return n.str(); }

// Canonical rendering: "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rat(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational: " + s);
  }
}

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

// Multiplicative order of the root of unity e^{2 pi i r}; r must be reduced.
inline Int root_order(const Rat& r) { return den(frac1(r)); }

}  // namespace kuga
