#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "regimelens/term.hpp"

namespace regimelens {

// Inclusive interval of event indices.
struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

IndexRange full_range(const MonthlySeries& series);

struct DesignMatrix {
  Eigen::MatrixXd X;                   // rows = usable events, cols = spec terms
  Eigen::VectorXd y;                   // response per row
  std::vector<AuctionMonth> months;    // month label per row
  std::vector<Term> terms;             // column order
  std::vector<Term> singular_dummies;  // dummy columns constant over the range
};

// Regressor value of `term` at event index i (lags over event positions).
double term_value(const MonthlySeries& series, const Term& term, std::size_t i);

DesignMatrix design_matrix(const MonthlySeries& series, const ModelSpec& spec,
                           IndexRange range);

}  // namespace regimelens
