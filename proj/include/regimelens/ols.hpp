#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regimelens/design.hpp"
#include "regimelens/term.hpp"

namespace regimelens {

struct FitResult {
  std::vector<Term> terms;  // column order; parallel to the vectors below
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
  std::vector<std::pair<double, double>> conf_intervals;
  double conf_level = 0.95;
  double r_squared = 0;
  Eigen::VectorXd residuals;
  Eigen::VectorXd fitted;
  std::size_t n_obs = 0;
  std::size_t df_resid = 0;
  double sigma2 = 0;                  // RSS / df_resid
  Eigen::MatrixXd xtx_inverse;        // (X'X)^-1, for diagnostics
  std::vector<AuctionMonth> months;   // row labels when fit through fit_model

  std::size_t index_of(const Term& t) const;  // throws LookupError
  double coefficient(const Term& t) const { return coefficients[index_of(t)]; }
  double std_error(const Term& t) const { return std_errors[index_of(t)]; }
  double p_value(const Term& t) const { return p_values[index_of(t)]; }
};

FitResult fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::vector<Term> terms, double conf_level = 0.95);

FitResult fit_model(const MonthlySeries& series, const ModelSpec& spec,
                    IndexRange range, double conf_level = 0.95);
FitResult fit_model(const MonthlySeries& series, const ModelSpec& spec,
                    double conf_level = 0.95);

// Significance stars per the table caption convention: *** <0.001, ** <0.01,
// * <0.1 (no 0.05 star).
std::string significance_stars(double p);

}  // namespace regimelens
