#include "regimelens/design.hpp"

#include <algorithm>

#include "regimelens/errors.hpp"

namespace regimelens {

IndexRange full_range(const MonthlySeries& series) {
  if (series.empty()) throw InsufficientDataError("empty series");
  return {0, series.size() - 1};
}

double term_value(const MonthlySeries& series, const Term& term, std::size_t i) {
  switch (term.kind) {
    case Term::Kind::intercept:
      return 1.0;
    case Term::Kind::lagged:
      return series[i - static_cast<std::size_t>(term.lag)].value(term.var);
    case Term::Kind::dummy:
      return series[i].date < term.event ? 0.0 : 1.0;
    case Term::Kind::delta_quota:
      return series[i].n_quota - series[i - 1].n_quota;
  }
  return 0.0;
}

DesignMatrix design_matrix(const MonthlySeries& series, const ModelSpec& spec,
                           IndexRange range) {
  spec.validate();
  if (spec.terms.empty()) throw ValidationError("model spec has no terms");
  if (range.hi >= series.size() || range.lo > range.hi) {
    throw InsufficientDataError("index range outside series");
  }
  const std::size_t first =
      std::max(range.lo, static_cast<std::size_t>(spec.max_min_index()));
  if (first > range.hi) {
    throw InsufficientDataError("range too small to satisfy lags");
  }
  const std::size_t n = range.hi - first + 1;
  const std::size_t k = spec.terms.size();

  DesignMatrix d;
  d.terms = spec.terms;
  d.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  d.y.resize(static_cast<Eigen::Index>(n));
  d.months.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = first + r;
    for (std::size_t c = 0; c < k; ++c) {
      d.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          term_value(series, spec.terms[c], i);
    }
    d.y[static_cast<Eigen::Index>(r)] = series[i].value(spec.response);
    d.months.push_back(series[i].date);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (spec.terms[c].kind != Term::Kind::dummy) continue;
    const auto col = d.X.col(static_cast<Eigen::Index>(c));
    if (col.maxCoeff() == col.minCoeff()) {
      d.singular_dummies.push_back(spec.terms[c]);
    }
  }
  return d;
}

}  // namespace regimelens
