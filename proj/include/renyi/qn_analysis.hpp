#pragma once

// The contraction constant
//
//   q_N = sum_{i>=N} (1/i^3 + N/(i^2 (i+1))) = zeta(3,N) + N zeta(2,N) - 1
//
// to high precision, together with its closed-form bounds
//
//   1/N^3 + 1/(2N(N+1)) + 1/(2N) < q_N < 1/(2N(N-1)) + 1/N - 1/(2N+1)
//
// and the four Hurwitz zeta estimates they are assembled from.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "renyi/parameter.hpp"

namespace renyi {

inline constexpr int kDefaultPrecision = 30;
/// Largest precision (significant digits) HighPrecision can honour.
inline constexpr int kMaxPrecision = 45;

/// Hurwitz zeta(s, a) = sum_{i>=a} i^{-s} with a rigorous error bound.
struct ZetaValue {
  int s = 0;
  std::int64_t a = 0;
  HighPrecision value;
  HighPrecision error_bound;
  int precision = 0;
  std::int64_t direct_terms = 0;  // summed explicitly before the tail
};

/// zeta(s, a) for s in {2, 3}: `direct_terms` explicit terms, then the
/// Euler-Maclaurin tail, extended until its terms drop below the target;
/// the first omitted term bounds the remainder because t^{-s} is
/// completely monotone. By default direct_terms = max(0, 20 - a).
ZetaValue hurwitz_zeta(int s, std::int64_t a, int precision = kDefaultPrecision,
                       std::optional<std::int64_t> direct_terms = std::nullopt);

struct QnBounds {
  Rational lower_exact;
  Rational upper_exact;
  double lower = 0.0;  // correctly rounded
  double upper = 0.0;
};

QnBounds qn_bounds(Parameter n);

struct QnCertificate {
  explicit QnCertificate(Parameter parameter) : n(parameter) {}

  Parameter n;
  HighPrecision q;
  HighPrecision error_bound;
  QnBounds bounds;
  ZetaValue zeta2;
  ZetaValue zeta3;
  int precision = 0;
};

/// q_N = zeta(3,N) + N zeta(2,N) - 1. Throws std::logic_error if the
/// value fails to sit strictly inside its closed-form bounds.
QnCertificate qn_exact(Parameter n, int precision = kDefaultPrecision);

struct QnSeries {
  std::int64_t terms = 0;
  double sum = 0.0;
  /// sum_{i > last} of the series, bounded by (1+N)/(2 last^2).
  double tail_bound = 0.0;
  /// Bound on the floating-point error of `sum`.
  double rounding_bound = 0.0;

  /// True when `q` is consistent with this partial sum: q in
  /// [sum - rounding, sum + tail + rounding].
  bool brackets(double q) const {
    return q >= sum - rounding_bound && q <= sum + tail_bound + rounding_bound;
  }
};

/// Partial sum of the defining series over i = N .. N+terms-1 (compensated
/// summation in increasing i).
QnSeries qn_series(Parameter n, std::int64_t terms);

struct ZetaInequalities {
  bool zeta2_lower = false;  // zeta(2,N) >= 2/(sqrt(4N^2+1) - 1)
  bool zeta2_upper = false;  // zeta(2,N) <  1/N^2 + 2/(2N+1)
  bool zeta3_upper = false;  // zeta(3,N) <  1/(2N(sqrt(N^2+1) - 1))
  bool zeta3_lower = false;  // zeta(3,N) >  1/N^3 + 1/(2(N^2+N+1/2))

  bool all() const { return zeta2_lower && zeta2_upper && zeta3_upper && zeta3_lower; }
};

/// Each inequality passes only if it holds with the zeta error bound taken
/// against it.
ZetaInequalities zeta_inequality_check(Parameter n, int precision = kDefaultPrecision);

struct BoundTableRow {
  std::int64_t n = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_text;
  std::string upper_text;
};

inline constexpr std::array<std::int64_t, 7> kTableParameters{2, 10, 100, 500, 1000, 5000, 10000};

/// Bounds for N in kTableParameters, rendered as shortest round-trip
/// fixed-notation decimals.
std::vector<BoundTableRow> reproduce_table();

struct PublishedBounds {
  std::int64_t n;
  std::string_view lower;
  std::string_view upper;
};

/// The published lower/upper bound strings for kTableParameters.
inline constexpr std::array<PublishedBounds, 7> kPublishedBounds{{
    {2, "0.4583333333333333", "0.55"},
    {10, "0.055545454545454544", "0.05793650793650794"},
    {100, "0.00505050495049505", "0.0050753806723955975"},
    {500, "0.001002004007984032", "0.001003003009015033"},
    {1000, "0.0005005005004995005", "0.0005007503755629693"},
    {5000, "0.00010002000400079984", "0.00010003000300090015"},
    {10000, "0.00005000500050004999", "0.000050007500375056254"},
}};

/// Shortest fixed-notation decimal that reads back as `value`.
std::string shortest_decimal(double value);

/// Nearest double to r, ties to even.
double round_to_double(const Rational& r);

/// The exact value of a finite double.
Rational exact_rational(double value);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal_string(const HighPrecision& value, int digits);

}  // namespace renyi
