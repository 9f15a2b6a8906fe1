// Exact arithmetic aliases and small number-theory helpers shared by all
// modules. Everything downstream computes over Int/Rat; doubles never enter
// any decision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace holefree {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow2(unsigned e) {
  Int r{1};
  r <<= e;
  return r;
}

// smallest k with 2^k >= v, for v >= 1
inline unsigned ceil_log2(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("ceil_log2: argument must be positive");
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < v) {
    ++k;
    if (k >= 64) throw std::overflow_error("ceil_log2: argument too large");
  }
  return k;
}

inline unsigned bit_length(const Int& v) {
  if (v <= 0) throw std::invalid_argument("bit_length: argument must be positive");
  return static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
}

// floor(sqrt(v)), exact
inline Int isqrt_floor(const Int& v) {
  if (v < 0) throw std::invalid_argument("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(v);
}

// smallest c >= 0 with c*c >= v
inline Int isqrt_ceil(const Int& v) {
  Int c = isqrt_floor(v);
  if (c * c < v) ++c;
  return c;
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int floor_rat(const Rat& r) {
  Int num = rat_num(r);
  Int den = rat_den(r);  // always > 0 in canonical form
  Int q = num / den;     // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

inline std::string int_str(const Int& v) { return v.str(); }

// rationals are serialized as "p/q" throughout
inline std::string rat_str(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Int parse_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_int: empty string");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("parse_int: no digits in '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("parse_int: bad character in '" + s + "'");
  return Int(s);
}

// accepts "p/q" or a plain integer "p"
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
  return Rat(num, den);
}

}  // namespace holefree
