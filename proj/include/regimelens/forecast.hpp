#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regimelens/ols.hpp"

namespace regimelens {

struct PredictionRecord {
  AuctionMonth month;
  double predicted = 0;
  double actual = 0;
  double delta_p = 0;  // predicted - actual
  std::string model_id;
  std::size_t window_size = 0;
};

struct SkipRecord {
  AuctionMonth month;
  std::string model_id;
  std::size_t window_size = 0;
  std::string reason;
};

// Chooses the spec for one calibration window. `start`/`last` bound the
// window's months; dummy filtering runs afterwards regardless.
struct ModelRule {
  std::string id;
  std::function<ModelSpec(AuctionMonth start, AuctionMonth last)> spec_for_window;
};

// A fixed spec, independent of the window position.
ModelRule fixed_rule(const std::string& model_id);
// Regime-switching rule: reform-dummy model when January 2008 is interior,
// else the debate-dummy model when May 2004 is interior, else the plain
// lagged-minimum model. Both dummies enter when both events are interior.
ModelRule mixed_rule();
ModelRule rule_by_id(const std::string& id);  // "mixed" or any catalog id

// Calibrates on events [t-S, t-1] and extrapolates to event t.
// nullopt = singular window after dummy filtering (recorded as a skip).
std::optional<PredictionRecord> predict_one(const MonthlySeries& series,
                                            const ModelSpec& spec,
                                            std::size_t t, std::size_t window_size,
                                            const std::string& model_id = {});

struct SamplePartition {
  std::string label;  // A, B, B1, B2
  std::set<AuctionMonth> months;
};

// A = every event with a full preceding window; B = A minus the two failure
// months (2008-01, 2008-03); B1/B2 split B strictly before/after 2008-01.
std::map<std::string, SamplePartition> partition_months(const MonthlySeries& series,
                                                        std::size_t window_size);

struct ErrorTable {
  // (model_id, window_size) -> partition label -> mean |delta_p|
  std::map<std::pair<std::string, std::size_t>, std::map<std::string, double>> cells;
  std::map<std::pair<std::string, std::size_t>, std::map<std::string, std::size_t>> counts;
};

struct BacktestResult {
  std::vector<PredictionRecord> predictions;
  std::vector<SkipRecord> skips;
  ErrorTable errors;
};

BacktestResult backtest(const MonthlySeries& series,
                        const std::vector<ModelRule>& models,
                        const std::vector<std::size_t>& window_sizes);

}  // namespace regimelens
