#include "regimelens/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "regimelens/errors.hpp"

namespace regimelens {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw ConfigError("unknown format '" + name + "' (valid: table json csv)");
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::vector<double> column(const MonthlySeries& series, Variable v) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& r : series.records()) out.push_back(r.value(v));
  return out;
}

constexpr Variable kVariables[] = {Variable::p_mean, Variable::p_min,
                                   Variable::n_quota, Variable::n_bidder};

}  // namespace

json stats_json(const MonthlySeries& series) {
  json out = json::array();
  for (Variable v : kVariables) {
    const DescriptiveStats s = describe(column(series, v));
    json row{{"variable", variable_name(v)}, {"minimum", s.minimum},
             {"median", s.median},           {"maximum", s.maximum},
             {"mean", s.mean},               {"std_dev", s.std_dev}};
    if (s.moments_defined) {
      row["skewness"] = s.skewness;
      row["kurtosis"] = s.kurtosis;
    } else {
      row["skewness"] = nullptr;
      row["kurtosis"] = nullptr;
    }
    out.push_back(row);
  }
  return out;
}

std::string render_stats_table(const MonthlySeries& series, OutputFormat format) {
  if (format == OutputFormat::json) return stats_json(series).dump(2) + "\n";
  std::ostringstream os;
  const char* sep = format == OutputFormat::csv ? "," : "  ";
  if (format == OutputFormat::csv) {
    os << "variable,minimum,median,maximum,mean,std_dev,skewness,kurtosis\n";
  } else {
    os << "variable " << sep << "  minimum" << sep << "   median" << sep
       << "  maximum" << sep << "     mean" << sep << " std_dev" << sep
       << "skewness" << sep << "kurtosis\n";
  }
  for (Variable v : kVariables) {
    const DescriptiveStats s = describe(column(series, v));
    if (format == OutputFormat::csv) {
      os << variable_name(v) << ',' << fmt("%.6g", s.minimum) << ',' << fmt("%.6g", s.median)
         << ',' << fmt("%.6g", s.maximum) << ',' << fmt("%.6g", s.mean) << ','
         << fmt("%.6g", s.std_dev) << ',' << fmt("%.4f", s.skewness) << ','
         << fmt("%.4f", s.kurtosis) << '\n';
    } else {
      char line[256];
      std::snprintf(line, sizeof(line),
                    "%-9s  %9.6g  %9.6g  %9.6g  %9.6g  %8.5g  %8.3f  %8.3f\n",
                    variable_name(v).c_str(), s.minimum, s.median, s.maximum, s.mean,
                    s.std_dev, s.skewness, s.kurtosis);
      os << line;
    }
  }
  return os.str();
}

json fit_json(const FitResult& fit) {
  json terms = json::array();
  for (std::size_t i = 0; i < fit.terms.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    terms.push_back({{"term", fit.terms[i].str()},
                     {"estimate", fit.coefficients[idx]},
                     {"std_error", fit.std_errors[idx]},
                     {"t_stat", fit.t_stats[idx]},
                     {"p_value", fit.p_values[idx]},
                     {"conf_low", fit.conf_intervals[i].first},
                     {"conf_high", fit.conf_intervals[i].second},
                     {"stars", significance_stars(fit.p_values[idx])}});
  }
  return json{{"terms", terms},
              {"r_squared", fit.r_squared},
              {"n_obs", fit.n_obs},
              {"df_resid", fit.df_resid},
              {"conf_level", fit.conf_level}};
}

std::string render_fit(const FitResult& fit, OutputFormat format) {
  if (format == OutputFormat::json) return fit_json(fit).dump(2) + "\n";
  std::ostringstream os;
  if (format == OutputFormat::csv) {
    os << "term,estimate,std_error,t_stat,p_value,stars\n";
    for (std::size_t i = 0; i < fit.terms.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      os << fit.terms[i].str() << ',' << fmt("%.10g", fit.coefficients[idx]) << ','
         << fmt("%.10g", fit.std_errors[idx]) << ',' << fmt("%.6g", fit.t_stats[idx])
         << ',' << fmt("%.6g", fit.p_values[idx]) << ','
         << significance_stars(fit.p_values[idx]) << '\n';
    }
    return os.str();
  }
  os << "term                estimate    std_error            t            p\n";
  for (std::size_t i = 0; i < fit.terms.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    char line[256];
    std::snprintf(line, sizeof(line), "%-16s %11.5g%s %12.5g %12.4f %12.4g\n",
                  fit.terms[i].str().c_str(), fit.coefficients[idx],
                  significance_stars(fit.p_values[idx]).c_str(), fit.std_errors[idx],
                  fit.t_stats[idx], fit.p_values[idx]);
    os << line;
  }
  os << "R-squared " << fmt("%.4f", fit.r_squared) << ", n = " << fit.n_obs
     << ", df = " << fit.df_resid << "\n";
  os << "stars: *** p<0.001, ** p<0.01, * p<0.1\n";
  return os.str();
}

json robust_fit_json(const RobustFitResult& fit) {
  json terms = json::array();
  for (std::size_t i = 0; i < fit.terms.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    terms.push_back({{"term", fit.terms[i].str()},
                     {"estimate", fit.coefficients[idx]},
                     {"std_error", fit.std_errors[idx]},
                     {"conf_low", fit.conf_intervals[i].first},
                     {"conf_high", fit.conf_intervals[i].second}});
  }
  json weights = json::array();
  for (Eigen::Index i = 0; i < fit.weights.size(); ++i) weights.push_back(fit.weights[i]);
  return json{{"terms", terms},
              {"weights", weights},
              {"iterations", fit.iterations},
              {"converged", fit.converged}};
}

std::string render_robust_fit(const RobustFitResult& fit, OutputFormat format) {
  if (format == OutputFormat::json) return robust_fit_json(fit).dump(2) + "\n";
  std::ostringstream os;
  os << "term                estimate    std_error     conf_low    conf_high\n";
  for (std::size_t i = 0; i < fit.terms.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    char line[256];
    std::snprintf(line, sizeof(line), "%-16s %11.5g %12.5g %12.5g %12.5g\n",
                  fit.terms[i].str().c_str(), fit.coefficients[idx], fit.std_errors[idx],
                  fit.conf_intervals[i].first, fit.conf_intervals[i].second);
    os << line;
  }
  os << "iterations " << fit.iterations << (fit.converged ? " (converged)" : " (max reached)")
     << "\n";
  os << "weights:";
  for (Eigen::Index i = 0; i < fit.weights.size(); ++i) os << ' ' << fmt("%.3f", fit.weights[i]);
  os << "\n";
  return os.str();
}

json outlier_json(const OutlierReport& report) {
  json flags = json::array();
  for (const auto& f : report.flagged) {
    flags.push_back({{"month", f.month.str()},
                     {"row", f.row},
                     {"studentized_residual", f.studentized_residual},
                     {"p_value", f.p_value}});
  }
  return json{{"alpha", report.alpha}, {"bonferroni", report.bonferroni}, {"flagged", flags}};
}

std::string render_outliers(const OutlierReport& report, OutputFormat format) {
  if (format == OutputFormat::json) return outlier_json(report).dump(2) + "\n";
  std::ostringstream os;
  os << "month     studentized      p_value\n";
  for (const auto& f : report.flagged) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-8s %12.4f %12.4g\n", f.month.str().c_str(),
                  f.studentized_residual, f.p_value);
    os << line;
  }
  if (report.flagged.empty()) os << "(no outliers at alpha " << report.alpha << ")\n";
  return os.str();
}

std::string render_scan_csv(const WindowScanResult& result) {
  std::ostringstream os;
  os << "end_month,term,estimate,std_error,p_value,band\n";
  for (const WindowFit& wf : result.windows) {
    for (const Term& term : result.config.spec.terms) {
      const bool dropped =
          std::find(wf.dropped_dummies.begin(), wf.dropped_dummies.end(), term) !=
          wf.dropped_dummies.end();
      os << wf.end_month.str() << ',' << term.str() << ',';
      if (wf.fit && !dropped) {
        const auto idx = static_cast<Eigen::Index>(wf.fit->index_of(term));
        os << fmt("%.10g", wf.fit->coefficients[idx]) << ','
           << fmt("%.10g", wf.fit->std_errors[idx]) << ','
           << fmt("%.10g", wf.fit->p_values[idx]) << ','
           << band_of(wf.fit->p_values[idx], result.config.significance_bands);
      } else {
        os << ",,," << kBandDropped;
      }
      os << '\n';
    }
  }
  return os.str();
}

json scan_json(const WindowScanResult& result) {
  json windows = json::array();
  for (const WindowFit& wf : result.windows) {
    json w{{"end_month", wf.end_month.str()},
           {"window_start", wf.window_start.str()},
           {"window_last", wf.window_last.str()},
           {"singular", !wf.fit.has_value()}};
    json dropped = json::array();
    for (const Term& t : wf.dropped_dummies) dropped.push_back(t.str());
    w["dropped_dummies"] = dropped;
    if (wf.fit) w["fit"] = fit_json(*wf.fit);
    windows.push_back(std::move(w));
  }
  return json{{"window_size", result.config.size}, {"windows", windows}};
}

std::string render_predictions_csv(const std::vector<PredictionRecord>& records) {
  std::ostringstream os;
  os << "month,model,window,predicted,actual,delta_p\n";
  for (const auto& r : records) {
    os << r.month.str() << ',' << r.model_id << ',' << r.window_size << ','
       << fmt("%.10g", r.predicted) << ',' << fmt("%.10g", r.actual) << ','
       << fmt("%.10g", r.delta_p) << '\n';
  }
  return os.str();
}

namespace {

const std::vector<std::string> kPartitionOrder = {"A", "B", "B1", "B2"};

}

json error_table_json(const ErrorTable& table) {
  json rows = json::array();
  for (const auto& [key, cells] : table.cells) {
    json row{{"model", key.first}, {"window", key.second}};
    for (const auto& label : kPartitionOrder) {
      auto it = cells.find(label);
      if (it != cells.end()) {
        row[label] = it->second;
        row[label + "_count"] = table.counts.at(key).at(label);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_error_table(const ErrorTable& table, OutputFormat format) {
  if (format == OutputFormat::json) return error_table_json(table).dump(2) + "\n";
  std::ostringstream os;
  if (format == OutputFormat::csv) {
    os << "model,window,partition,mean_abs_delta_p,count\n";
    for (const auto& [key, cells] : table.cells) {
      for (const auto& label : kPartitionOrder) {
        auto it = cells.find(label);
        if (it == cells.end()) continue;
        os << key.first << ',' << key.second << ',' << label << ','
           << fmt("%.10g", it->second) << ',' << table.counts.at(key).at(label) << '\n';
      }
    }
    return os.str();
  }
  os << "model     window         A         B        B1        B2\n";
  for (const auto& [key, cells] : table.cells) {
    char line[256];
    auto cell = [&](const std::string& label) {
      auto it = cells.find(label);
      return it == cells.end() ? 0.0 : it->second;
    };
    // Integer RMB at serialization only.
    std::snprintf(line, sizeof(line), "%-9s %6zu %9.0f %9.0f %9.0f %9.0f\n",
                  key.first.c_str(), key.second, std::round(cell("A")),
                  std::round(cell("B")), std::round(cell("B1")), std::round(cell("B2")));
    os << line;
  }
  return os.str();
}

}  // namespace regimelens
