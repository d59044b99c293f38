#pragma once
// Exact rational arithmetic for exponent geometry.  Exponents p live in
// [1, inf]; we store 1/p instead whenever possible so that infinity never
// needs a special value, but a distinguished Ext type is provided for the
// places (Lemma 2.1 data) where p itself is part of the interface.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace maxlab {

using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// Exponent in [1, inf]; `inf` has 1/p = 0.
struct ExtExp {
  bool is_inf = false;
  Rat value = 1;  // valid when !is_inf

  static ExtExp inf() { return ExtExp{true, 0}; }
  static ExtExp finite(const Rat& v) {
    if (v < 1) throw std::domain_error("exponent must be >= 1");
    return ExtExp{false, v};
  }
  Rat reciprocal() const { return is_inf ? Rat(0) : Rat(1) / value; }
};

// Parse "num/den" or "num"; used by JSON plumbing.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(s));
  boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw std::domain_error("rational with zero denominator: " + s);
  return Rat(num, den);
}

inline std::string rat_str(const Rat& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace maxlab
