// Reference values computed independently of the library: plain series,
// closed forms in long double, and a fixed-step quadrature.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracle {

// sum_{i=n}^{n+terms-1} (1/i^3 + n/(i^2 (i+1))), summed from the small end
// in long double, plus the integral bound for what was left out.
struct Series {
  long double sum = 0;
  long double tail = 0;
};

inline Series qn_series(std::int64_t n, std::int64_t terms) {
  Series s;
  const long double nn = static_cast<long double>(n);
  for (std::int64_t k = n + terms - 1; k >= n; --k) {
    const long double i = static_cast<long double>(k);
    s.sum += 1.0L / (i * i * i) + nn / (i * i * (i + 1.0L));
  }
  // each omitted term is below (1+n)/i^3; integrate from the last summed index
  const long double last = static_cast<long double>(n + terms - 1);
  s.tail = (1.0L + nn) / (2.0L * last * last);
  return s;
}

inline double rho_cdf(std::int64_t n, double x) {
  const long double m = static_cast<long double>(n) - 1.0L;
  return static_cast<double>(std::log1p(static_cast<long double>(x) / m) / std::log1p(1.0L / m));
}

inline double rho_density(std::int64_t n, double x) {
  const long double m = static_cast<long double>(n) - 1.0L;
  return static_cast<double>(1.0L / ((static_cast<long double>(x) + m) * std::log1p(1.0L / m)));
}

// Composite Simpson on [a,b] with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const long double h = (static_cast<long double>(b) - a) / panels;
  long double acc = f(a) + f(b);
  for (int k = 1; k < panels; ++k) {
    acc += (k % 2 == 1 ? 4.0L : 2.0L) * f(static_cast<double>(a + k * h));
  }
  return static_cast<double>(acc * h / 3.0L);
}

}  // namespace oracle
