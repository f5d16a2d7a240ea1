#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "regimelens/errors.hpp"
#include "regimelens/numstat.hpp"

using namespace regimelens;

TEST_CASE("describe: symmetric sequence") {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  const DescriptiveStats s = describe(v);
  CHECK(s.mean == doctest::Approx(3.0));
  CHECK(s.median == doctest::Approx(3.0));
  CHECK(s.minimum == 1.0);
  CHECK(s.maximum == 5.0);
  CHECK(s.std_dev == doctest::Approx(1.5811388300841898));
  CHECK(s.skewness == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("describe: even-length median is the midpoint average") {
  const std::vector<double> v = {4, 1, 3, 2};
  CHECK(describe(v).median == doctest::Approx(2.5));
}

TEST_CASE("describe: constant vector flags undefined moments") {
  const std::vector<double> v = {7, 7, 7, 7};
  const DescriptiveStats s = describe(v);
  CHECK(s.std_dev == 0.0);
  CHECK_FALSE(s.moments_defined);
  CHECK(std::isnan(s.skewness));
  CHECK(std::isnan(s.kurtosis));
}

TEST_CASE("describe: error paths") {
  CHECK_THROWS_AS(describe(std::vector<double>{1.0}), InsufficientDataError);
  const std::vector<double> bad = {1.0, std::nan("")};
  CHECK_THROWS_AS(describe(bad), ValidationError);
}

TEST_CASE("describe: gaussian sample kurtosis is near 3 (non-excess)") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0, 1);
  std::vector<double> v(20000);
  for (auto& x : v) x = gauss(rng);
  const DescriptiveStats s = describe(v);
  CHECK(s.kurtosis == doctest::Approx(3.0).epsilon(0.05));
  CHECK(s.skewness == doctest::Approx(0.0).epsilon(0.1));
}

TEST_CASE("describe: shift, scale and permutation properties") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(5, 2);
  std::vector<double> v(257);
  for (auto& x : v) x = gauss(rng);
  const DescriptiveStats base = describe(v);

  std::vector<double> shuffled = v;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const DescriptiveStats perm = describe(shuffled);
  CHECK(perm.mean == doctest::Approx(base.mean).epsilon(1e-12));
  CHECK(perm.std_dev == doctest::Approx(base.std_dev).epsilon(1e-12));
  CHECK(perm.median == base.median);

  const double shift = 13.75;
  std::vector<double> shifted = v;
  for (auto& x : shifted) x += shift;
  const DescriptiveStats sh = describe(shifted);
  CHECK(sh.mean == doctest::Approx(base.mean + shift).epsilon(1e-10));
  CHECK(sh.median == doctest::Approx(base.median + shift).epsilon(1e-10));
  CHECK(sh.minimum == doctest::Approx(base.minimum + shift).epsilon(1e-10));
  CHECK(sh.std_dev == doctest::Approx(base.std_dev).epsilon(1e-10));
  CHECK(sh.skewness == doctest::Approx(base.skewness).epsilon(1e-8));
  CHECK(sh.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-8));

  const double lambda = 3.5;
  std::vector<double> scaled = v;
  for (auto& x : scaled) x *= lambda;
  const DescriptiveStats sc = describe(scaled);
  CHECK(sc.mean == doctest::Approx(base.mean * lambda).epsilon(1e-10));
  CHECK(sc.std_dev == doctest::Approx(base.std_dev * lambda).epsilon(1e-10));
  CHECK(sc.maximum == doctest::Approx(base.maximum * lambda).epsilon(1e-10));
  CHECK(sc.skewness == doctest::Approx(base.skewness).epsilon(1e-10));
  CHECK(sc.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-10));
}

TEST_CASE("student_t_sf: trivial values") {
  CHECK(student_t_sf(0, 1) == doctest::Approx(1.0));
  CHECK(student_t_sf(0, 100) == doctest::Approx(1.0));
  // Normal limit.
  CHECK(student_t_sf(1.959964, 1000000) == doctest::Approx(0.05).epsilon(1e-4 / 0.05));
  CHECK_THROWS_AS(student_t_sf(1.0, 0), DomainError);
}

TEST_CASE("student_t_sf matches the quadrature oracle") {
  // t = 2.228, df = 10 is the classical 5% point.
  CHECK(student_t_sf(2.228, 10) == doctest::Approx(0.05).epsilon(2e-3));
  for (std::int64_t df : {1, 2, 5, 10, 30, 100, 1000}) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 2.228, 4.0, 8.0, 20.0}) {
      const double ref = oracles::t_sf_quadrature(t, df);
      CHECK(std::fabs(student_t_sf(t, df) - ref) < 1e-10);
    }
  }
}

TEST_CASE("student_t_sf is symmetric, strictly decreasing, in (0,1]") {
  for (std::int64_t df : {1, 5, 40}) {
    double prev = 1.0 + 1e-15;
    for (double t = 0; t <= 12.0; t += 0.25) {
      const double p = student_t_sf(t, df);
      CHECK(p == student_t_sf(-t, df));
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
      CHECK(p < prev + 1e-16);
      if (t > 0) CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("t_critical: domain and limits") {
  CHECK_THROWS_AS(t_critical(1.0, 10), DomainError);
  CHECK_THROWS_AS(t_critical(0.0, 10), DomainError);
  CHECK_THROWS_AS(t_critical(-0.5, 10), DomainError);
  CHECK(t_critical(0.05, 1000000) == doctest::Approx(1.95996).epsilon(1e-4));
}

TEST_CASE("t_critical inverts the quadrature oracle") {
  const double ref = oracles::t_critical_quadrature(0.05, 8);
  CHECK(t_critical(0.05, 8) == doctest::Approx(ref).epsilon(1e-8));
  CHECK(std::fabs(student_t_sf(t_critical(0.05, 8), 8) - 0.05) < 1e-10);
}

TEST_CASE("t_critical round-trips with student_t_sf") {
  for (std::int64_t df : {1, 3, 12, 60, 500}) {
    for (double t : {0.2, 0.9, 1.7, 3.3, 6.0}) {
      const double alpha = student_t_sf(t, df);
      CHECK(t_critical(alpha, df) == doctest::Approx(t).epsilon(1e-8));
    }
  }
}
