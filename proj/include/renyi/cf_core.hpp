#pragma once

// Renyi-type continued fractions
//
//   x = 1 - N/(1 + a_1 - N/(1 + a_2 - N/(1 + a_3 - ...)))
//
// generated by R_N(x) = frac(N/(1 - x)), R_N(1) = 0, with digits
// a_n = floor(N/(1 - R_N^{n-1}(x))) >= N. Two arithmetic paths are
// provided: machine doubles (expand, orbit) and exact rationals
// (expand_exact), the latter serving as the rounding-free reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "renyi/parameter.hpp"

namespace renyi {

/// Largest digit the double path reports; beyond it floor(N/(1-x)) is not
/// resolvable in binary64.
inline constexpr std::uint64_t kMaxFloatDigit = std::uint64_t{1} << 53;

enum class DigitStatus {
  finite,
  infinite,  // x == 1, a_1(1) = infinity
  capped,    // N/(1-x) >= 2^53; value is kMaxFloatDigit
};

struct DigitResult {
  std::uint64_t value = 0;
  DigitStatus status = DigitStatus::finite;

  bool is_finite() const noexcept { return status == DigitStatus::finite; }
};

/// R_N(x) on [0,1]. Points where N/(1-x) is an integer map to exactly 0.
double renyi_map(Parameter n, double x);

/// a_1(x) = floor(N/(1-x)).
DigitResult digit(Parameter n, double x);

/// A finite digit string a_1..a_k with every a_i >= N.
class DigitSequence {
 public:
  explicit DigitSequence(Parameter n, std::vector<std::uint64_t> digits = {});

  Parameter parameter() const noexcept { return n_; }
  std::span<const std::uint64_t> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  std::uint64_t operator[](std::size_t k) const { return digits_.at(k); }

  DigitSequence prefix(std::size_t length) const;
  void push_back(std::uint64_t a);

  friend bool operator==(const DigitSequence&, const DigitSequence&) = default;

 private:
  Parameter n_;
  std::vector<std::uint64_t> digits_;
};

/// p_n/q_n, the value of the expansion truncated after n digits.
struct Convergent {
  std::size_t index = 0;
  BigInt p;
  BigInt q;

  Rational value() const { return Rational(p, q); }
};

/// x_0 = x, x_{k+1} = R_N(x_k), and the digits emitted along the way.
struct Orbit {
  Parameter n;
  std::vector<double> points;
  std::vector<std::uint64_t> digits;
  /// Stopped before the requested length because an iterate sat on 1.
  bool truncated = false;
  /// A digit hit kMaxFloatDigit; that digit is the last one emitted.
  bool precision_loss = false;
};

Orbit orbit(Parameter n, double x, std::size_t steps);

struct Expansion {
  DigitSequence digits;
  double remainder = 0.0;  // R_N^k(x) after the emitted digits
  bool truncated = false;
  bool precision_loss = false;
};

/// First `count` digits of x in binary64 arithmetic.
Expansion expand(Parameter n, double x, std::size_t count);

struct ExactExpansion {
  DigitSequence digits;
  Rational remainder;
};

/// First `count` digits of a rational x in [0,1), computed exactly.
ExactExpansion expand_exact(Parameter n, const Rational& x, std::size_t count);

/// (p_0, q_0) .. (p_k, q_k) by the three-term recurrences.
std::vector<Convergent> convergents(const DigitSequence& d);

/// Exact value of the finite continued fraction. Throws on an empty sequence.
Rational evaluate(const DigitSequence& d);

/// Parses "j/k" or an integer into an exact rational.
Rational parse_rational(std::string_view text);

}  // namespace renyi
