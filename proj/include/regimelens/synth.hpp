#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "regimelens/term.hpp"

namespace regimelens {

// Coefficient shift applied to `term` for months >= month.
struct BreakShift {
  AuctionMonth month;
  Term term;
  double delta = 0;
};

struct GeneratorConfig {
  std::size_t length = 95;
  AuctionMonth start{2002, 1};
  std::vector<AuctionMonth> skip;  // calendar months with no auction
  double noise_sd = 0;
  ModelSpec spec;  // generating process for p_mean
  std::vector<std::pair<Term, double>> coefficients;  // parallel to spec.terms
  std::vector<BreakShift> breaks;

  // Exogenous driver processes.
  double p_min_start = 30000;
  double p_min_walk_sd = 1500;
  double quota_base = 5600;
  double quota_season_amp = 1500;
  double quota_sd = 400;
  double bidder_base = 12000;
  double bidder_sd = 3000;
};

// Deterministic for a fixed seed. p_mean follows the generating spec plus
// Gaussian noise; records are clamped to satisfy the MonthlyRecord
// invariants (positive values, p_mean >= p_min).
MonthlySeries synthesize_series(const GeneratorConfig& config, std::uint64_t seed);

// JSON config file: length, start, skip, noise_sd, coefficients (term name ->
// value), breaks, and optional driver-process overrides.
GeneratorConfig load_generator_config(const std::string& path);
GeneratorConfig parse_generator_config(const std::string& json_text);

// Reference auction calendar: 95 events, 2002-01..2009-12, no 2008-02.
GeneratorConfig reference_calendar_config();

}  // namespace regimelens
