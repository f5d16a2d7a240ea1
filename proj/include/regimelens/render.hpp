#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "regimelens/forecast.hpp"
#include "regimelens/numstat.hpp"
#include "regimelens/robust.hpp"
#include "regimelens/rolling.hpp"

namespace regimelens {

enum class OutputFormat { table, json, csv };
OutputFormat parse_format(const std::string& name);

// Descriptive-statistics table, one row per variable.
std::string render_stats_table(const MonthlySeries& series, OutputFormat fmt);
nlohmann::json stats_json(const MonthlySeries& series);

// Starred coefficient table (estimate, std error, t, p, stars).
std::string render_fit(const FitResult& fit, OutputFormat fmt);
nlohmann::json fit_json(const FitResult& fit);

std::string render_robust_fit(const RobustFitResult& fit, OutputFormat fmt);
nlohmann::json robust_fit_json(const RobustFitResult& fit);

std::string render_outliers(const OutlierReport& report, OutputFormat fmt);
nlohmann::json outlier_json(const OutlierReport& report);

// Long-format scan output: end_month, term, estimate, std_error, p_value, band.
std::string render_scan_csv(const WindowScanResult& result);
nlohmann::json scan_json(const WindowScanResult& result);

// Per-prediction stream: month, model, S, predicted, actual, delta_p.
std::string render_predictions_csv(const std::vector<PredictionRecord>& records);
// Mean |delta_p| per model/window/partition, integer RMB at serialization.
std::string render_error_table(const ErrorTable& table, OutputFormat fmt);
nlohmann::json error_table_json(const ErrorTable& table);

}  // namespace regimelens
