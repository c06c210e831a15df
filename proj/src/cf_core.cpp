#include "renyi/cf_core.hpp"

#include <limits>
#include <cmath>
#include <string>
#include <utility>

namespace renyi {
namespace {

void require_unit_interval(double x) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw DomainError("x must be a finite number in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

double renyi_map(Parameter n, double x) {
  require_unit_interval(x);
  if (x == 1.0) {
    return 0.0;
  }
  const double y = n.as_double() / (1.0 - x);
  // Exact for y >= 1, so the result is strictly below 1.
  return y - std::floor(y);
}

DigitResult digit(Parameter n, double x) {
  require_unit_interval(x);
  if (x == 1.0) {
    return {0, DigitStatus::infinite};
  }
  const double y = n.as_double() / (1.0 - x);
  if (y >= static_cast<double>(kMaxFloatDigit)) {
    return {kMaxFloatDigit, DigitStatus::capped};
  }
  return {static_cast<std::uint64_t>(std::floor(y)), DigitStatus::finite};
}

DigitSequence::DigitSequence(Parameter n, std::vector<std::uint64_t> digits)
    : n_(n), digits_(std::move(digits)) {
  for (auto a : digits_) {
    if (a < static_cast<std::uint64_t>(n_.value())) {
      throw DomainError("digit " + std::to_string(a) + " is below N = " +
                        std::to_string(n_.value()));
    }
  }
}

DigitSequence DigitSequence::prefix(std::size_t length) const {
  if (length > digits_.size()) {
    throw DomainError("prefix longer than the digit sequence");
  }
  return DigitSequence(n_, {digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(length)});
}

void DigitSequence::push_back(std::uint64_t a) {
  if (a < static_cast<std::uint64_t>(n_.value())) {
    throw DomainError("digit " + std::to_string(a) + " is below N = " + std::to_string(n_.value()));
  }
  digits_.push_back(a);
}

Orbit orbit(Parameter n, double x, std::size_t steps) {
  require_unit_interval(x);
  Orbit out{n, {x}, {}};
  out.points.reserve(steps + 1);
  out.digits.reserve(steps);
  double current = x;
  for (std::size_t k = 0; k < steps; ++k) {
    const DigitResult a = digit(n, current);
    if (a.status == DigitStatus::infinite) {
      out.truncated = true;
      break;
    }
    out.digits.push_back(a.value);
    current = renyi_map(n, current);
    out.points.push_back(current);
    if (a.status == DigitStatus::capped) {
      out.precision_loss = true;
      out.truncated = k + 1 < steps;
      break;
    }
  }
  return out;
}

Expansion expand(Parameter n, double x, std::size_t count) {
  Orbit o = orbit(n, x, count);
  return Expansion{DigitSequence(n, std::move(o.digits)), o.points.back(), o.truncated,
                   o.precision_loss};
}

ExactExpansion expand_exact(Parameter n, const Rational& x, std::size_t count) {
  if (x < 0 || x >= 1) {
    throw DomainError("exact expansion needs x in [0,1)");
  }
  const BigInt big_n = n.value();
  const BigInt digit_limit = std::numeric_limits<std::uint64_t>::max();
  DigitSequence digits(n);
  Rational current = x;
  for (std::size_t k = 0; k < count; ++k) {
    const Rational y = big_n / (1 - current);
    // floor of a positive rational
    const BigInt a = numerator(y) / denominator(y);
    if (a > digit_limit) {
      throw DomainError("digit exceeds 64 bits");
    }
    digits.push_back(static_cast<std::uint64_t>(a));
    current = y - a;
  }
  return {std::move(digits), current};
}

std::vector<Convergent> convergents(const DigitSequence& d) {
  const BigInt big_n = d.parameter().value();
  std::vector<Convergent> out;
  out.reserve(d.size() + 1);
  out.push_back({0, 1, 1});
  if (d.empty()) {
    return out;
  }
  out.push_back({1, 1 + BigInt(d[0]) - big_n, 1 + BigInt(d[0])});
  for (std::size_t k = 2; k <= d.size(); ++k) {
    const BigInt b = 1 + BigInt(d[k - 1]);
    const auto& prev = out[k - 1];
    const auto& prev2 = out[k - 2];
    out.push_back({k, b * prev.p - big_n * prev2.p, b * prev.q - big_n * prev2.q});
  }
  return out;
}

Rational evaluate(const DigitSequence& d) {
  if (d.empty()) {
    throw DomainError("cannot evaluate an empty digit sequence");
  }
  const Rational big_n = d.parameter().value();
  const auto digits = d.digits();
  Rational tail = 1 + Rational(digits.back());
  for (std::size_t k = digits.size() - 1; k-- > 0;) {
    tail = 1 + Rational(digits[k]) - big_n / tail;
  }
  return 1 - big_n / tail;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty() || part.find_first_not_of("+-0123456789") != std::string_view::npos) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    try {
      return BigInt(std::string(part));
    } catch (const std::exception&) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text));
  }
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw DomainError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

}  // namespace renyi
