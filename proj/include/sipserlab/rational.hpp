#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sipserlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "num/den" or a bare integer. Throws std::invalid_argument on junk.
inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact uint64 extraction for sampling; requires the value to fit.
inline std::uint64_t bigint_to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(UINT64_MAX)) throw std::domain_error("value does not fit in u64");
  return v.convert_to<std::uint64_t>();
}

}  // namespace sipserlab
