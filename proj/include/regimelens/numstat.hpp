#pragma once

#include <cstdint>
#include <span>

namespace regimelens {

struct DescriptiveStats {
  double minimum = 0;
  double median = 0;
  double maximum = 0;
  double mean = 0;
  double std_dev = 0;   // sample (n-1) by default, see MomentConvention
  double skewness = 0;  // m3 / m2^{3/2}, n-denominator central moments
  double kurtosis = 0;  // m4 / m2^2, non-excess; Gaussian -> 3
  bool moments_defined = true;  // false when all values identical
};

struct MomentConvention {
  bool unbiased_std = true;  // n-1 denominator for std_dev
};

DescriptiveStats describe(std::span<const double> values,
                          MomentConvention conv = {});

// Two-sided tail probability P(|T| >= |t|) for Student-t with df degrees of
// freedom, via the regularized incomplete beta function.
double student_t_sf(double t, std::int64_t df);

// t* >= 0 with student_t_sf(t*, df) == alpha, alpha in (0,1).
double t_critical(double alpha, std::int64_t df);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double reg_incomplete_beta(double a, double b, double x);

}  // namespace regimelens
