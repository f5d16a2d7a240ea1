#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "regimelens/ols.hpp"

namespace regimelens {

struct WindowConfig {
  std::size_t size = 24;  // auction events per calibration window
  ModelSpec spec;
  std::vector<double> significance_bands{0.001, 0.01, 0.05, 0.1};
  double conf_level = 0.95;
};

inline constexpr int kBandDropped = -1;  // dummy absent from the window's model

// Band index of a p-value within ordered thresholds: 0 = strongest.
int band_of(double p, const std::vector<double>& thresholds);

struct WindowFit {
  AuctionMonth end_month;    // the month whose preceding window was calibrated
  AuctionMonth window_start; // first month of the calibration window
  AuctionMonth window_last;  // last month of the calibration window
  std::optional<FitResult> fit;  // nullopt when the window fit is singular
  std::vector<Term> dropped_dummies;
};

struct WindowScanResult {
  WindowConfig config;
  std::vector<WindowFit> windows;                // one per eligible end month
  std::map<Term, std::vector<int>> band_series;  // kBandDropped for gaps
};

// True when the dummy event lies strictly inside [start, last].
bool dummy_in_window(AuctionMonth event, AuctionMonth start, AuctionMonth last);

WindowScanResult scan(const MonthlySeries& series, const WindowConfig& config);

// Per-window coefficient estimates; nullopt where the term was dropped or the
// window was singular.
std::map<Term, std::vector<std::pair<AuctionMonth, std::optional<double>>>>
coefficient_traces(const WindowScanResult& result, const std::vector<Term>& terms);

}  // namespace regimelens
