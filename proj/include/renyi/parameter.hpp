#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace renyi {

/// Raised for arguments outside an operation's domain (x outside [0,1],
/// N < 2, malformed digit sequences, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// 50 significant decimal digits; used for zeta values and normalizers.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// The integer parameter N >= 2 of the map R_N.
class Parameter {
 public:
  explicit Parameter(std::int64_t n) : n_(n) {
    if (n < 2) {
      throw DomainError("parameter N must be an integer >= 2, got " + std::to_string(n));
    }
  }

  std::int64_t value() const noexcept { return n_; }
  double as_double() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(Parameter, Parameter) = default;

 private:
  std::int64_t n_;
};

}  // namespace renyi
