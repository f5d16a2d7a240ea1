#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "regimelens/design.hpp"
#include "regimelens/errors.hpp"
#include "regimelens/forecast.hpp"
#include "regimelens/ols.hpp"
#include "regimelens/render.hpp"
#include "regimelens/robust.hpp"
#include "regimelens/rolling.hpp"
#include "regimelens/synth.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace regimelens;
using nlohmann::json;

struct CommonOpts {
  std::string input;
  std::string format = "table";
  std::string manifest_out;
};

IndexRange range_from_flag(const MonthlySeries& series, const std::string& flag) {
  if (flag.empty()) return full_range(series);
  auto colon = flag.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("--range expects FROM:TO with YYYY-MM endpoints");
  }
  const AuctionMonth from = parse_month(flag.substr(0, colon));
  const AuctionMonth to = parse_month(flag.substr(colon + 1));
  if (to < from) throw ConfigError("--range: TO precedes FROM");
  IndexRange r{series.size(), 0};
  for (std::size_t i = 0; i < series.size(); ++i) {
    const AuctionMonth m = series[i].date;
    if (m < from || to < m) continue;
    r.lo = std::min(r.lo, i);
    r.hi = std::max(r.hi, i);
  }
  if (r.lo > r.hi) throw InsufficientDataError("--range contains no auction events");
  return r;
}

void write_manifest(const std::string& path, const std::string& command, json extra) {
  if (path.empty()) return;
  extra["command"] = command;
  extra["tool_version"] = kVersion;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write manifest '" + path + "'");
  out << extra.dump(2) << "\n";
}

int cmd_stats(const CommonOpts& opts) {
  const MonthlySeries series = load_csv(opts.input);
  std::cout << render_stats_table(series, parse_format(opts.format));
  write_manifest(opts.manifest_out, "stats", {{"input", opts.input}, {"format", opts.format}});
  return 0;
}

int cmd_fit(const CommonOpts& opts, const std::string& model_id,
            const std::string& range_flag, double alpha, double level) {
  const MonthlySeries series = load_csv(opts.input);
  const OutputFormat fmt = parse_format(opts.format);
  const ModelSpec spec = model_by_id(model_id);
  const IndexRange range = range_from_flag(series, range_flag);

  if (model_id == "robust-simple") {
    DesignMatrix d = design_matrix(series, spec, range);
    IrlsOptions irls;
    irls.conf_level = level;
    const RobustFitResult fit = fit_irls(d.X, d.y, d.terms, irls);
    std::cout << render_robust_fit(fit, fmt);
  } else {
    const FitResult fit = fit_model(series, spec, range, level);
    std::cout << render_fit(fit, fmt);
    if (alpha > 0) {
      DesignMatrix d = design_matrix(series, spec, range);
      const OutlierReport report = detect_outliers(fit, d.X, alpha);
      std::cout << render_outliers(report, fmt);
    }
  }
  write_manifest(opts.manifest_out, "fit",
                 {{"input", opts.input},
                  {"model", model_id},
                  {"range", range_flag},
                  {"alpha", alpha},
                  {"conf_level", level},
                  {"format", opts.format}});
  return 0;
}

int cmd_scan(const CommonOpts& opts, const std::string& model_id, std::size_t window) {
  const MonthlySeries series = load_csv(opts.input);
  WindowConfig config;
  config.size = window;
  config.spec = model_by_id(model_id);
  const WindowScanResult result = scan(series, config);
  if (parse_format(opts.format) == OutputFormat::json) {
    std::cout << scan_json(result).dump(2) << "\n";
  } else {
    std::cout << render_scan_csv(result);
  }
  write_manifest(opts.manifest_out, "scan",
                 {{"input", opts.input},
                  {"model", model_id},
                  {"window", window},
                  {"format", opts.format}});
  return 0;
}

int cmd_backtest(const CommonOpts& opts, const std::vector<std::string>& model_ids,
                 const std::vector<std::size_t>& windows,
                 const std::string& predictions_out) {
  const MonthlySeries series = load_csv(opts.input);
  std::vector<ModelRule> rules;
  for (const auto& id : model_ids) rules.push_back(rule_by_id(id));
  const BacktestResult result = backtest(series, rules, windows);
  std::cout << render_error_table(result.errors, parse_format(opts.format));
  if (!predictions_out.empty()) {
    std::ofstream out(predictions_out);
    if (!out) throw ConfigError("cannot write '" + predictions_out + "'");
    out << render_predictions_csv(result.predictions);
  }
  for (const auto& skip : result.skips) {
    std::cerr << "skipped " << skip.month.str() << " (" << skip.model_id << ", S="
              << skip.window_size << "): " << skip.reason << "\n";
  }
  write_manifest(opts.manifest_out, "backtest",
                 {{"input", opts.input},
                  {"models", model_ids},
                  {"windows", windows},
                  {"predictions_out", predictions_out},
                  {"format", opts.format}});
  return 0;
}

int cmd_synth(const std::string& config_path, std::uint64_t seed,
              const std::string& manifest_out) {
  const GeneratorConfig config = load_generator_config(config_path);
  const MonthlySeries series = synthesize_series(config, seed);
  std::cout << to_csv(series);
  write_manifest(manifest_out, "synth", {{"config", config_path}, {"seed", seed}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regimelens: auction-price regression and regime-change analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  std::string model_id = "m2";
  std::string range_flag;
  std::string predictions_out;
  std::string synth_config;
  double alpha = 0;
  double level = 0.95;
  std::size_t window = 24;
  std::vector<std::string> model_ids = {"mixed", "m2", "m6"};
  std::vector<std::size_t> windows = {24, 36};
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* sub, bool needs_input = true) {
    auto* in = sub->add_option("--input", opts.input, "input CSV path");
    if (needs_input) in->required();
    sub->add_option("--format", opts.format, "output format: table, json, csv");
    sub->add_option("--manifest-out", opts.manifest_out, "write a run manifest (JSON)");
  };

  auto* stats = app.add_subcommand("stats", "descriptive statistics per variable");
  add_common(stats);

  auto* fit = app.add_subcommand("fit", "calibrate one model and print inference");
  add_common(fit);
  fit->add_option("--model", model_id, "model id: m1..m6, m10, simple, robust-simple");
  fit->add_option("--range", range_flag, "restrict to FROM:TO (YYYY-MM)");
  fit->add_option("--alpha", alpha, "also run outlier detection at this level");
  fit->add_option("--level", level, "confidence level (default 0.95)");

  auto* scan_cmd = app.add_subcommand("scan", "rolling-window significance scan");
  add_common(scan_cmd);
  scan_cmd->add_option("--model", model_id, "model id");
  scan_cmd->add_option("--window", window, "window size S in auction events");

  auto* backtest_cmd =
      app.add_subcommand("backtest", "out-of-sample one-step prediction errors");
  add_common(backtest_cmd);
  backtest_cmd->add_option("--models", model_ids, "model rules (mixed or catalog ids)")
      ->delimiter(',');
  backtest_cmd->add_option("--windows", windows, "window sizes")->delimiter(',');
  backtest_cmd->add_option("--predictions-out", predictions_out,
                           "write the per-month prediction CSV here");

  auto* synth = app.add_subcommand("synth", "emit a synthetic series as CSV");
  synth->add_option("--config", synth_config, "generator config (JSON)")->required();
  synth->add_option("--seed", seed, "RNG seed");
  synth->add_option("--manifest-out", opts.manifest_out, "write a run manifest (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) return cmd_stats(opts);
    if (*fit) return cmd_fit(opts, model_id, range_flag, alpha, level);
    if (*scan_cmd) return cmd_scan(opts, model_id, window);
    if (*backtest_cmd) return cmd_backtest(opts, model_ids, windows, predictions_out);
    if (*synth) return cmd_synth(synth_config, seed, opts.manifest_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
