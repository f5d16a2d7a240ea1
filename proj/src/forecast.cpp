#include "regimelens/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "regimelens/errors.hpp"
#include "regimelens/rolling.hpp"

namespace regimelens {

ModelRule fixed_rule(const std::string& model_id) {
  ModelSpec spec = model_by_id(model_id);
  return {model_id, [spec](AuctionMonth, AuctionMonth) { return spec; }};
}

ModelRule mixed_rule() {
  return {"mixed", [](AuctionMonth start, AuctionMonth last) {
            const bool reform = dummy_in_window(kReformMonth, start, last);
            const bool debate = dummy_in_window(kDebateMonth, start, last);
            if (reform && debate) {
              ModelSpec spec = model_by_id("m4");
              spec.terms.push_back(Term::Dummy(kDebateMonth));
              return spec;
            }
            if (reform) return model_by_id("m4");
            if (debate) return model_by_id("m5");
            return model_by_id("m6");
          }};
}

ModelRule rule_by_id(const std::string& id) {
  if (id == "mixed") return mixed_rule();
  return fixed_rule(id);
}

std::optional<PredictionRecord> predict_one(const MonthlySeries& series,
                                            const ModelSpec& spec, std::size_t t,
                                            std::size_t window_size,
                                            const std::string& model_id) {
  const std::size_t S = window_size;
  if (t < S || t >= series.size()) {
    throw InsufficientDataError("predict_one: month lacks a full preceding window");
  }
  const AuctionMonth start = series[t - S].date;
  const AuctionMonth last = series[t - 1].date;

  ModelSpec window_spec;
  window_spec.response = spec.response;
  for (const Term& term : spec.terms) {
    if (term.kind == Term::Kind::dummy && !dummy_in_window(term.event, start, last)) {
      continue;
    }
    window_spec.terms.push_back(term);
  }

  FitResult fit;
  try {
    DesignMatrix d = design_matrix(series, window_spec, {t - S, t - 1});
    if (!d.singular_dummies.empty()) {
      for (const Term& term : d.singular_dummies) std::erase(window_spec.terms, term);
      d = design_matrix(series, window_spec, {t - S, t - 1});
    }
    fit = fit_ols(d.X, d.y, d.terms);
  } catch (const SingularMatrixError&) {
    return std::nullopt;
  }

  double predicted = 0;
  for (std::size_t c = 0; c < fit.terms.size(); ++c) {
    predicted += fit.coefficients[static_cast<Eigen::Index>(c)] *
                 term_value(series, fit.terms[c], t);
  }

  PredictionRecord rec;
  rec.month = series[t].date;
  rec.predicted = predicted;
  rec.actual = series[t].value(spec.response);
  rec.delta_p = rec.predicted - rec.actual;
  rec.model_id = model_id;
  rec.window_size = S;
  return rec;
}

std::map<std::string, SamplePartition> partition_months(const MonthlySeries& series,
                                                        std::size_t window_size) {
  const AuctionMonth jan08{2008, 1};
  const AuctionMonth mar08{2008, 3};

  SamplePartition a{"A", {}}, b{"B", {}}, b1{"B1", {}}, b2{"B2", {}};
  for (std::size_t t = window_size; t < series.size(); ++t) {
    const AuctionMonth m = series[t].date;
    a.months.insert(m);
    if (m == jan08 || m == mar08) continue;
    b.months.insert(m);
    if (m < jan08) {
      b1.months.insert(m);
    } else {
      b2.months.insert(m);
    }
  }
  return {{"A", a}, {"B", b}, {"B1", b1}, {"B2", b2}};
}

BacktestResult backtest(const MonthlySeries& series,
                        const std::vector<ModelRule>& models,
                        const std::vector<std::size_t>& window_sizes) {
  BacktestResult result;
  for (std::size_t S : window_sizes) {
    if (series.size() <= S) {
      throw InsufficientDataError("series shorter than window size " + std::to_string(S));
    }
    const auto partitions = partition_months(series, S);
    for (const ModelRule& model : models) {
      std::map<std::string, double> sums;
      std::map<std::string, std::size_t> counts;
      for (std::size_t t = S; t < series.size(); ++t) {
        const AuctionMonth start = series[t - S].date;
        const AuctionMonth last = series[t - 1].date;
        const ModelSpec spec = model.spec_for_window(start, last);
        auto rec = predict_one(series, spec, t, S, model.id);
        if (!rec) {
          result.skips.push_back({series[t].date, model.id, S, "singular window"});
          continue;
        }
        result.predictions.push_back(*rec);
        for (const auto& [label, part] : partitions) {
          if (part.months.count(rec->month)) {
            sums[label] += std::fabs(rec->delta_p);
            counts[label] += 1;
          }
        }
      }
      auto& cells = result.errors.cells[{model.id, S}];
      auto& cell_counts = result.errors.counts[{model.id, S}];
      for (const auto& [label, part] : partitions) {
        cell_counts[label] = counts[label];
        cells[label] = counts[label] > 0 ? sums[label] / static_cast<double>(counts[label])
                                         : 0.0;
      }
    }
  }
  return result;
}

}  // namespace regimelens
