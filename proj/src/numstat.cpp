#include "regimelens/numstat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "regimelens/errors.hpp"

namespace regimelens {

DescriptiveStats describe(std::span<const double> values, MomentConvention conv) {
  const std::size_t n = values.size();
  if (n < 2) throw InsufficientDataError("describe needs at least 2 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value in describe input");
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  DescriptiveStats s;
  s.minimum = sorted.front();
  s.maximum = sorted.back();
  s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  double sum = 0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(n);

  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : sorted) {
    const double d = v - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double nd = static_cast<double>(n);
  s.std_dev = std::sqrt(m2 / (conv.unbiased_std ? nd - 1 : nd));
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (m2 > 0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  } else {
    s.moments_defined = false;
    s.skewness = std::numeric_limits<double>::quiet_NaN();
    s.kurtosis = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double reg_incomplete_beta(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw DomainError("incomplete beta: a,b must be positive");
  if (x < 0 || x > 1) throw DomainError("incomplete beta: x outside [0,1]");
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, std::int64_t df) {
  if (df < 1) throw DomainError("student_t_sf: df must be >= 1");
  if (std::isnan(t)) throw DomainError("student_t_sf: t must not be NaN");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;  // exact fits have unbounded t
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + t * t);
  return reg_incomplete_beta(nu / 2.0, 0.5, x);
}

double t_critical(double alpha, std::int64_t df) {
  if (df < 1) throw DomainError("t_critical: df must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("t_critical: alpha must lie strictly inside (0,1)");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_sf(hi, df) > alpha) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_sf(mid, df) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace regimelens
