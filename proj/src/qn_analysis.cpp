#include "renyi/qn_analysis.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/bernoulli.hpp>

namespace renyi {
namespace {

HighPrecision to_high(const Rational& r) {
  return HighPrecision(numerator(r)) / HighPrecision(denominator(r));
}

HighPrecision pow10(int exponent) { return boost::multiprecision::pow(HighPrecision(10), exponent); }

// Relative size of the rounding error of one HighPrecision operation.
const HighPrecision& unit_roundoff() {
  static const HighPrecision eps = std::numeric_limits<HighPrecision>::epsilon();
  return eps;
}

}  // namespace

ZetaValue hurwitz_zeta(int s, std::int64_t a, int precision, std::optional<std::int64_t> direct_terms) {
  if (s != 2 && s != 3) {
    throw DomainError("hurwitz_zeta supports s = 2 and s = 3 only, got s = " + std::to_string(s));
  }
  if (a < 1) {
    throw DomainError("hurwitz_zeta needs a >= 1");
  }
  if (precision < 1 || precision > kMaxPrecision) {
    throw DomainError("precision must be in [1, " + std::to_string(kMaxPrecision) + "] digits");
  }
  const std::int64_t explicit_terms = direct_terms.value_or(std::max<std::int64_t>(0, 20 - a));
  if (explicit_terms < 0) {
    throw DomainError("direct term count must be non-negative");
  }

  ZetaValue out;
  out.s = s;
  out.a = a;
  out.precision = precision;
  out.direct_terms = explicit_terms;

  HighPrecision sum = 0;
  for (std::int64_t i = a; i < a + explicit_terms; ++i) {
    const HighPrecision hi(i);
    sum += s == 2 ? 1 / (hi * hi) : 1 / (hi * hi * hi);
  }

  // Euler-Maclaurin tail at K:
  //   K^{1-s}/(s-1) + K^{-s}/2 + sum_j B_{2j}/(2j)! s(s+1)..(s+2j-2) K^{-s-2j+1}
  const HighPrecision k(a + explicit_terms);
  const HighPrecision k_pow_s = boost::multiprecision::pow(k, s);
  const HighPrecision lead = k / (k_pow_s * (s - 1));
  sum += lead + 1 / (2 * k_pow_s);
  const HighPrecision target = lead * pow10(-(precision + 2));
  const HighPrecision inv_k2 = 1 / (k * k);

  HighPrecision rising = s;                 // s (s+1) ... (s+2j-2)
  HighPrecision power = 1 / (k_pow_s * k);  // K^{-s-2j+1}
  HighPrecision factorial = 2;              // (2j)!
  HighPrecision previous = std::numeric_limits<HighPrecision>::max();
  HighPrecision omitted = 0;
  for (int j = 1;; ++j) {
    const HighPrecision term =
        boost::math::bernoulli_b2n<HighPrecision>(j) / factorial * rising * power;
    const HighPrecision magnitude = abs(term);
    if (magnitude < target || magnitude > previous || j > 60) {
      omitted = magnitude;
      break;
    }
    sum += term;
    previous = magnitude;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    power *= inv_k2;
    factorial *= (2 * j + 1) * (2 * j + 2);
  }

  out.value = sum;
  out.error_bound = omitted + HighPrecision(explicit_terms + 200) * unit_roundoff() * sum;
  return out;
}

QnBounds qn_bounds(Parameter n) {
  const BigInt big(n.value());
  QnBounds b;
  b.lower_exact = Rational(1, big * big * big) + Rational(1, 2 * big * (big + 1)) + Rational(1, 2 * big);
  b.upper_exact = Rational(1, 2 * big * (big - 1)) + Rational(1, big) - Rational(1, 2 * big + 1);
  b.lower = round_to_double(b.lower_exact);
  b.upper = round_to_double(b.upper_exact);
  return b;
}

QnCertificate qn_exact(Parameter n, int precision) {
  QnCertificate cert{n};
  cert.precision = precision;
  cert.zeta2 = hurwitz_zeta(2, n.value(), precision);
  cert.zeta3 = hurwitz_zeta(3, n.value(), precision);
  const HighPrecision big(n.value());
  cert.q = cert.zeta3.value + big * cert.zeta2.value - 1;
  cert.error_bound = cert.zeta3.error_bound + big * cert.zeta2.error_bound + 4 * unit_roundoff() * big;
  cert.bounds = qn_bounds(n);
  if (!(cert.q - cert.error_bound > to_high(cert.bounds.lower_exact)) ||
      !(cert.q + cert.error_bound < to_high(cert.bounds.upper_exact))) {
    throw std::logic_error("q_N = " + to_decimal_string(cert.q, 25) + " for N = " +
                           std::to_string(n.value()) + " escapes its closed-form bounds");
  }
  return cert;
}

QnSeries qn_series(Parameter n, std::int64_t terms) {
  if (terms < 1) {
    throw DomainError("qn_series needs at least one term");
  }
  const double big = n.as_double();
  double sum = 0.0;
  double compensation = 0.0;
  const std::int64_t last = n.value() + terms - 1;
  for (std::int64_t i = n.value(); i <= last; ++i) {
    const double di = static_cast<double>(i);
    const double di2 = di * di;
    const double term = 1.0 / (di2 * di) + big / (di2 * (di + 1.0));
    // Neumaier summation
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  QnSeries out;
  out.terms = terms;
  out.sum = sum + compensation;
  const double last_d = static_cast<double>(last);
  out.tail_bound = (1.0 + big) / (2.0 * last_d * last_d);
  // ~5 roundings per term, each relative to a positive term, plus the
  // compensated summation error.
  out.rounding_bound = 16.0 * std::numeric_limits<double>::epsilon() * out.sum;
  return out;
}

ZetaInequalities zeta_inequality_check(Parameter n, int precision) {
  const ZetaValue z2 = hurwitz_zeta(2, n.value(), precision);
  const ZetaValue z3 = hurwitz_zeta(3, n.value(), precision);
  const HighPrecision big(n.value());
  using boost::multiprecision::sqrt;

  ZetaInequalities out;
  out.zeta2_lower = z2.value - z2.error_bound >= 2 / (sqrt(4 * big * big + 1) - 1);
  out.zeta2_upper = z2.value + z2.error_bound < 1 / (big * big) + 2 / (2 * big + 1);
  out.zeta3_upper = z3.value + z3.error_bound < 1 / (2 * big * (sqrt(big * big + 1) - 1));
  out.zeta3_lower = z3.value - z3.error_bound > 1 / (big * big * big) + 1 / (2 * (big * big + big + HighPrecision(0.5)));
  return out;
}

std::vector<BoundTableRow> reproduce_table() {
  std::vector<BoundTableRow> rows;
  rows.reserve(kTableParameters.size());
  for (std::int64_t n : kTableParameters) {
    const QnBounds b = qn_bounds(Parameter(n));
    rows.push_back({n, b.lower, b.upper, shortest_decimal(b.lower), shortest_decimal(b.upper)});
  }
  return rows;
}

std::string shortest_decimal(double value) {
  char buffer[512];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("decimal rendering failed");
  }
  return std::string(buffer, result.ptr);
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("only finite doubles have an exact rational value");
  }
  int exponent = 0;
  const double fraction = std::frexp(value, &exponent);
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(fraction, 53));
  exponent -= 53;
  BigInt num(mantissa);
  if (exponent >= 0) {
    return Rational(num << exponent);
  }
  return Rational(num, BigInt(1) << -exponent);
}

double round_to_double(const Rational& r) {
  double d = r.convert_to<double>();
  auto distance = [&](double c) { return abs(r - exact_rational(c)); };
  auto is_even = [](double c) {
    int e = 0;
    return (static_cast<std::int64_t>(std::ldexp(std::frexp(c, &e), 53)) & 1) == 0;
  };
  for (;;) {
    const double up = std::nextafter(d, std::numeric_limits<double>::infinity());
    const double down = std::nextafter(d, -std::numeric_limits<double>::infinity());
    const Rational here = distance(d);
    if (distance(up) < here || (distance(up) == here && !is_even(d))) {
      d = up;
    } else if (distance(down) < here || (distance(down) == here && !is_even(d))) {
      d = down;
    } else {
      return d;
    }
  }
}

std::string to_decimal_string(const HighPrecision& value, int digits) {
  return value.str(digits, std::ios_base::fmtflags(0));
}

}  // namespace renyi
