#include "regimelens/rolling.hpp"

#include <algorithm>

#include "regimelens/errors.hpp"

namespace regimelens {

int band_of(double p, const std::vector<double>& thresholds) {
  int band = 0;
  for (double th : thresholds) {
    if (p < th) return band;
    ++band;
  }
  return band;
}

bool dummy_in_window(AuctionMonth event, AuctionMonth start, AuctionMonth last) {
  return start < event && event < last;
}

WindowScanResult scan(const MonthlySeries& series, const WindowConfig& config) {
  config.spec.validate();
  const std::size_t S = config.size;
  const std::size_t min_len =
      config.spec.terms.size() + static_cast<std::size_t>(config.spec.max_min_index()) + 2;
  if (S < min_len) {
    throw ValidationError("window size " + std::to_string(S) +
                          " too small for the model (need >= " +
                          std::to_string(min_len) + ")");
  }
  if (series.size() <= S) {
    throw InsufficientDataError("series shorter than window size + 1");
  }

  WindowScanResult result;
  result.config = config;
  for (const Term& t : config.spec.terms) {
    result.band_series[t] = {};
  }

  for (std::size_t t = S; t < series.size(); ++t) {
    WindowFit wf;
    wf.end_month = series[t].date;
    wf.window_start = series[t - S].date;
    wf.window_last = series[t - 1].date;

    ModelSpec window_spec;
    window_spec.response = config.spec.response;
    for (const Term& term : config.spec.terms) {
      if (term.kind == Term::Kind::dummy &&
          !dummy_in_window(term.event, wf.window_start, wf.window_last)) {
        wf.dropped_dummies.push_back(term);
        continue;
      }
      window_spec.terms.push_back(term);
    }

    try {
      DesignMatrix d = design_matrix(series, window_spec, {t - S, t - 1});
      // Interior events can still yield a constant column across a gap.
      if (!d.singular_dummies.empty()) {
        for (const Term& term : d.singular_dummies) {
          wf.dropped_dummies.push_back(term);
          std::erase(window_spec.terms, term);
        }
        d = design_matrix(series, window_spec, {t - S, t - 1});
      }
      wf.fit = fit_ols(d.X, d.y, d.terms, config.conf_level);
      wf.fit->months = std::move(d.months);
    } catch (const SingularMatrixError&) {
      wf.fit.reset();
    }

    for (const Term& term : config.spec.terms) {
      int band = kBandDropped;
      if (wf.fit &&
          std::find(wf.dropped_dummies.begin(), wf.dropped_dummies.end(), term) ==
              wf.dropped_dummies.end()) {
        band = band_of(wf.fit->p_value(term), config.significance_bands);
      }
      result.band_series[term].push_back(band);
    }
    result.windows.push_back(std::move(wf));
  }
  return result;
}

std::map<Term, std::vector<std::pair<AuctionMonth, std::optional<double>>>>
coefficient_traces(const WindowScanResult& result, const std::vector<Term>& terms) {
  std::map<Term, std::vector<std::pair<AuctionMonth, std::optional<double>>>> traces;
  for (const Term& term : terms) {
    if (!result.config.spec.has_term(term)) {
      throw LookupError("term " + term.str() + " not in scanned model");
    }
    auto& trace = traces[term];
    for (const WindowFit& wf : result.windows) {
      std::optional<double> est;
      const bool dropped =
          std::find(wf.dropped_dummies.begin(), wf.dropped_dummies.end(), term) !=
          wf.dropped_dummies.end();
      if (wf.fit && !dropped) est = wf.fit->coefficient(term);
      trace.emplace_back(wf.end_month, est);
    }
  }
  return traces;
}

}  // namespace regimelens
