#include "renyi/invariant_measure.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "renyi/transfer.hpp"

namespace renyi {
namespace {

void require_unit_interval(double x) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw DomainError("x must be a finite number in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

RhoMeasure::RhoMeasure(Parameter n) : n_(n) {
  // log(N/(N-1)) = log1p(1/(N-1)) keeps full precision for large N.
  const HighPrecision inv = HighPrecision(1) / HighPrecision(n.value() - 1);
  normalizer_ = static_cast<double>(HighPrecision(1) / boost::multiprecision::log1p(inv));
}

double RhoMeasure::cdf(double x) const {
  require_unit_interval(x);
  return std::log1p(x / (n_.as_double() - 1.0)) * normalizer_;
}

double RhoMeasure::interval(double a, double b) const {
  require_unit_interval(a);
  require_unit_interval(b);
  if (a > b) {
    throw DomainError("interval endpoints out of order");
  }
  return std::log1p((b - a) / (a + n_.as_double() - 1.0)) * normalizer_;
}

double RhoMeasure::density(double x) const {
  require_unit_interval(x);
  return normalizer_ / (x + n_.as_double() - 1.0);
}

double rho_preimage(const RhoMeasure& m, double a, double b, std::int64_t cutoff) {
  const Parameter n = m.parameter();
  if (a > b) {
    throw DomainError("interval endpoints out of order");
  }
  if (cutoff < n.value()) {
    throw DomainError("series cutoff must be >= N");
  }
  double sum = 0.0;
  for (std::int64_t i = n.value(); i <= cutoff; ++i) {
    sum += m.interval(branch_point(n, i, a), branch_point(n, i, b));
  }
  // rho of the remaining branches telescopes to log((b+I)/(a+I)).
  const double big_i = static_cast<double>(cutoff);
  return sum + std::log1p((b - a) / (a + big_i)) * m.normalizer();
}

}  // namespace renyi
