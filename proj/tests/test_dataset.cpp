#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "regimelens/design.hpp"
#include "regimelens/errors.hpp"
#include "regimelens/ols.hpp"
#include "regimelens/synth.hpp"

using namespace regimelens;

namespace {

MonthlySeries tiny_series(std::size_t n, AuctionMonth start = {2002, 1}) {
  std::vector<MonthlyRecord> records;
  AuctionMonth m = start;
  for (std::size_t i = 0; i < n; ++i) {
    MonthlyRecord r;
    r.date = m;
    r.p_mean = 30000 + 100.0 * static_cast<double>(i);
    r.p_min = 28000 + 90.0 * static_cast<double>(i);
    r.n_quota = 5000 + 10.0 * static_cast<double>(i);
    r.n_bidder = 9000 + 50.0 * static_cast<double>(i);
    records.push_back(r);
    m = m.next();
  }
  return MonthlySeries(std::move(records));
}

}  // namespace

TEST_CASE("month parsing and ordering") {
  const AuctionMonth m = parse_month("2004-05");
  CHECK(m.year == 2004);
  CHECK(m.month == 5);
  CHECK(m.str() == "2004-05");
  CHECK(parse_month("2007-12") < parse_month("2008-01"));
  CHECK(AuctionMonth{2007, 12}.next() == AuctionMonth{2008, 1});
  CHECK_THROWS_AS(parse_month("2004-13"), ParseError);
  CHECK_THROWS_AS(parse_month("200405"), ParseError);
  CHECK_THROWS_AS(parse_month("2004-5"), ParseError);
}

TEST_CASE("single-row csv") {
  const auto s = parse_csv_text(
      "date,p_mean,p_min,n_quota,n_bidder\n2002-01,14057,100,1400,3525\n");
  REQUIRE(s.size() == 1);
  CHECK(s[0].date == AuctionMonth{2002, 1});
  CHECK(s[0].p_mean == 14057);
  CHECK(s[0].n_bidder == 3525);
}

TEST_CASE("calendar gap is accepted and recorded") {
  const auto s = parse_csv_text(
      "date,p_mean,p_min,n_quota,n_bidder\n"
      "2008-01,23370,8100,8000,17178\n"
      "2008-03,24801,100,6000,20539\n");
  REQUIRE(s.size() == 2);
  const auto gaps = s.gaps();
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0] == AuctionMonth{2008, 2});
}

TEST_CASE("csv error paths") {
  CHECK_THROWS_AS(parse_csv_text("date,p_mean,p_min,n_quota,n_bidder\n"
                                 "2005-06,30000,28000,5000,9000\n"
                                 "2005-06,31000,29000,5100,9100\n"),
                  ValidationError);  // duplicate date
  CHECK_THROWS_AS(parse_csv_text("date,p_mean,p_min,n_quota,n_bidder\n"
                                 "2005-06,20000,28000,5000,9000\n"),
                  ValidationError);  // p_mean < p_min
  CHECK_THROWS_AS(parse_csv_text("date,p_mean,p_min,n_quota,n_bidder\n"
                                 "2005-06,abc,28000,5000,9000\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_csv_text("date,p_mean,p_min,n_quota\n"), ParseError);
  CHECK_THROWS_AS(parse_csv_text(""), ParseError);
  CHECK_THROWS_WITH_AS(parse_csv_text("date,p_mean,p_min,n_quota,n_bidder\n"
                                      "2005-06,30000\n"),
                       doctest::Contains("line 2"), ParseError);
}

TEST_CASE("csv round trip is field-exact") {
  std::mt19937_64 rng(7);
  GeneratorConfig cfg = reference_calendar_config();
  cfg.spec.terms = {Term::Intercept(), Term::Lagged(Variable::p_min, 1)};
  cfg.coefficients = {{Term::Intercept(), 1500.0},
                      {Term::Lagged(Variable::p_min, 1), 0.95}};
  cfg.noise_sd = 800;
  const MonthlySeries s = synthesize_series(cfg, 42);
  const MonthlySeries back = parse_csv_text(to_csv(s));
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back[i].date == s[i].date);
    CHECK(back[i].p_mean == s[i].p_mean);
    CHECK(back[i].p_min == s[i].p_min);
    CHECK(back[i].n_quota == s[i].n_quota);
    CHECK(back[i].n_bidder == s[i].n_bidder);
  }
}

TEST_CASE("term parsing round trip") {
  for (const std::string text :
       {"intercept", "lag(p_min,1)", "lag(n_quota,0)", "dummy(2008-01)", "dquota"}) {
    CHECK(parse_term(text).str() == text);
  }
  CHECK_THROWS_AS(parse_term("lag(p_min,-1)"), ParseError);
  CHECK_THROWS_AS(parse_term("banana"), ParseError);
}

TEST_CASE("design matrix: lag consumes one row") {
  const auto s = tiny_series(3);
  ModelSpec spec;
  spec.terms = {Term::Intercept(), Term::Lagged(Variable::p_min, 1)};
  const DesignMatrix d = design_matrix(s, spec, full_range(s));
  REQUIRE(d.X.rows() == 2);
  REQUIRE(d.X.cols() == 2);
  CHECK(d.X.col(0).isOnes());
  CHECK(d.X(0, 1) == s[0].p_min);
  CHECK(d.X(1, 1) == s[1].p_min);
  CHECK(d.y(0) == s[1].p_mean);
  CHECK(d.months.front() == s[1].date);
}

TEST_CASE("design matrix: lag alignment over a calendar gap") {
  // Reference calendar: the lag-1 predecessor of 2008-03 is 2008-01.
  GeneratorConfig cfg = reference_calendar_config();
  cfg.spec.terms = {Term::Intercept()};
  cfg.coefficients = {{Term::Intercept(), 30000.0}};
  const MonthlySeries s = synthesize_series(cfg, 3);
  const auto idx = s.index_of({2008, 3});
  REQUIRE(idx.has_value());
  ModelSpec spec;
  spec.terms = {Term::Intercept(), Term::Lagged(Variable::p_min, 1)};
  const DesignMatrix d = design_matrix(s, spec, full_range(s));
  CHECK(d.X(static_cast<Eigen::Index>(*idx) - 1, 1) ==
        s[*idx - 1].p_min);  // row for 2008-03 reads 2008-01
  CHECK(s[*idx - 1].date == AuctionMonth{2008, 1});
}

TEST_CASE("design matrix: constant dummy column sets the singular flag") {
  const auto s = tiny_series(12, {2005, 1});
  ModelSpec spec;
  spec.terms = {Term::Intercept(), Term::Lagged(Variable::p_min, 1),
                Term::Dummy({2008, 1})};
  const DesignMatrix d = design_matrix(s, spec, full_range(s));
  CHECK(d.X.col(2).isZero());
  REQUIRE(d.singular_dummies.size() == 1);
  CHECK(d.singular_dummies[0] == Term::Dummy({2008, 1}));
}

TEST_CASE("design matrix: dummy monotone and delta-quota telescopes") {
  GeneratorConfig cfg = reference_calendar_config();
  cfg.spec.terms = {Term::Intercept()};
  cfg.coefficients = {{Term::Intercept(), 30000.0}};
  cfg.noise_sd = 500;
  const MonthlySeries s = synthesize_series(cfg, 11);
  ModelSpec spec;
  spec.terms = {Term::Intercept(), Term::Dummy({2004, 5}), Term::DeltaQuota()};
  const DesignMatrix d = design_matrix(s, spec, full_range(s));
  double running = 0;
  for (Eigen::Index r = 0; r < d.X.rows(); ++r) {
    if (r > 0) CHECK(d.X(r, 1) >= d.X(r - 1, 1));  // dummy non-decreasing
    running += d.X(r, 2);
    // Hand-rolled difference oracle.
    const std::size_t i = static_cast<std::size_t>(r) + 1;
    CHECK(d.X(r, 2) == s[i].n_quota - s[i - 1].n_quota);
  }
  // Telescoping sum over the contiguous range.
  CHECK(running == doctest::Approx(s[s.size() - 1].n_quota - s[0].n_quota).epsilon(1e-12));
}

TEST_CASE("design matrix error paths") {
  const auto s = tiny_series(3);
  ModelSpec spec;
  spec.terms = {Term::Intercept(), Term::Lagged(Variable::p_min, 5)};
  CHECK_THROWS_AS(design_matrix(s, spec, full_range(s)), InsufficientDataError);
  ModelSpec dup;
  dup.terms = {Term::Intercept(), Term::Intercept()};
  CHECK_THROWS_AS(design_matrix(s, dup, full_range(s)), ValidationError);
}

TEST_CASE("synthesizer: determinism and invariants") {
  GeneratorConfig cfg = reference_calendar_config();
  cfg.spec = model_by_id("m2");
  cfg.coefficients = {{Term::Intercept(), 8584.0},
                      {Term::Lagged(Variable::p_min, 1), 0.814},
                      {Term::Lagged(Variable::n_quota, 0), -2.316},
                      {Term::Lagged(Variable::n_quota, 1), 2.277}};
  cfg.noise_sd = 2000;
  const MonthlySeries a = synthesize_series(cfg, 99);
  const MonthlySeries b = synthesize_series(cfg, 99);
  REQUIRE(a.size() == 95);
  CHECK(to_csv(a) == to_csv(b));
  const MonthlySeries c = synthesize_series(cfg, 100);
  CHECK(to_csv(a) != to_csv(c));
  for (const auto& r : a.records()) {
    CHECK(r.p_mean >= r.p_min);
    CHECK(r.p_min > 0);
  }
  CHECK(a.gaps() == std::vector<AuctionMonth>{{2008, 2}});
}

TEST_CASE("synthesizer: zero-noise data is recovered exactly") {
  GeneratorConfig cfg = reference_calendar_config();
  cfg.spec = model_by_id("m2");
  cfg.coefficients = {{Term::Intercept(), 8584.0},
                      {Term::Lagged(Variable::p_min, 1), 0.814},
                      {Term::Lagged(Variable::n_quota, 0), -2.316},
                      {Term::Lagged(Variable::n_quota, 1), 2.277}};
  cfg.noise_sd = 0;
  const MonthlySeries s = synthesize_series(cfg, 5);
  const FitResult fit = fit_model(s, cfg.spec);
  for (std::size_t i = 0; i < cfg.coefficients.size(); ++i) {
    const double truth = cfg.coefficients[i].second;
    CHECK(fit.coefficient(cfg.coefficients[i].first) ==
          doctest::Approx(truth).epsilon(1e-8));
  }
}

TEST_CASE("synthesizer: intercept break recovered via dummy, oracle-checked") {
  GeneratorConfig cfg = reference_calendar_config();
  cfg.spec = model_by_id("m6");
  cfg.coefficients = {{Term::Intercept(), 9000.0},
                      {Term::Lagged(Variable::p_min, 1), 0.8}};
  cfg.breaks = {{AuctionMonth{2008, 1}, Term::Intercept(), -3000.0}};
  cfg.noise_sd = 500;
  const MonthlySeries s = synthesize_series(cfg, 11);

  ModelSpec with_dummy = cfg.spec;
  with_dummy.terms.push_back(Term::Dummy({2008, 1}));
  const DesignMatrix d = design_matrix(s, with_dummy, full_range(s));
  const FitResult fit = fit_ols(d.X, d.y, d.terms);
  const auto beta = oracles::normal_equations_solve(d.X, d.y);
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    CHECK(fit.coefficients[static_cast<Eigen::Index>(i)] ==
          doctest::Approx(static_cast<double>(beta[i])).epsilon(1e-8));
  }
  const double d_hat = fit.coefficient(Term::Dummy({2008, 1}));
  const double d_se = fit.std_error(Term::Dummy({2008, 1}));
  CHECK(std::fabs(d_hat - (-3000.0)) < 4 * d_se);
}

TEST_CASE("synthesizer config errors") {
  CHECK_THROWS_AS(parse_generator_config("{\"length\":0}"), ConfigError);
  CHECK_THROWS_AS(parse_generator_config("{}"), ConfigError);
  CHECK_THROWS_AS(parse_generator_config("not json"), ConfigError);
  const GeneratorConfig c = parse_generator_config(
      "{\"length\":10,\"start\":\"2005-01\",\"noise_sd\":100,"
      "\"coefficients\":{\"intercept\":5000,\"lag(p_min,1)\":0.9}}");
  CHECK(c.length == 10);
  CHECK(c.spec.terms.size() == 2);
  CHECK(c.coefficients[1].second == 0.9);
}
