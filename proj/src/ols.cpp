#include "regimelens/ols.hpp"

#include <algorithm>
#include <cmath>

#include "regimelens/errors.hpp"
#include "regimelens/numstat.hpp"

namespace regimelens {

std::size_t FitResult::index_of(const Term& t) const {
  auto it = std::find(terms.begin(), terms.end(), t);
  if (it == terms.end()) throw LookupError("term " + t.str() + " not in fit");
  return static_cast<std::size_t>(it - terms.begin());
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.1) return "*";
  return "";
}

FitResult fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::vector<Term> terms, double conf_level) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (static_cast<std::size_t>(k) != terms.size()) {
    throw ValidationError("term list does not match design matrix columns");
  }
  if (n <= k) {
    throw InsufficientDataError("fit_ols: need more observations than terms (" +
                                std::to_string(n) + " rows, " + std::to_string(k) +
                                " terms)");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  double max_diag = 0;
  for (Eigen::Index i = 0; i < k; ++i) max_diag = std::max(max_diag, std::fabs(R(i, i)));
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::fabs(R(i, i)) < 1e-10 * max_diag) {
      // Pivot order maps the deficient diagonal back to an original column.
      const Eigen::Index col = qr.colsPermutation().indices()[i];
      throw SingularMatrixError("rank-deficient design matrix: column " +
                                terms[static_cast<std::size_t>(col)].str());
    }
  }

  FitResult f;
  f.terms = std::move(terms);
  f.conf_level = conf_level;
  f.coefficients = qr.solve(y);
  f.fitted = X * f.coefficients;
  f.residuals = y - f.fitted;
  f.n_obs = static_cast<std::size_t>(n);
  f.df_resid = static_cast<std::size_t>(n - k);

  const double rss = f.residuals.squaredNorm();
  f.sigma2 = rss / static_cast<double>(f.df_resid);

  // (X'X)^-1 = P R^-1 R^-T P'
  const Eigen::MatrixXd r_inv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd perm = qr.colsPermutation();
  f.xtx_inverse = perm * (r_inv * r_inv.transpose()) * perm.transpose();

  const bool intercept =
      std::find_if(f.terms.begin(), f.terms.end(), [](const Term& t) {
        return t.kind == Term::Kind::intercept;
      }) != f.terms.end();
  double tss = 0;
  if (intercept) {
    const double ybar = y.mean();
    tss = (y.array() - ybar).square().sum();
  } else {
    tss = y.squaredNorm();
  }
  f.r_squared = tss > 0 ? 1.0 - rss / tss : 1.0;

  f.std_errors.resize(k);
  f.t_stats.resize(k);
  f.p_values.resize(k);
  f.conf_intervals.resize(static_cast<std::size_t>(k));
  const double t_crit = t_critical(1.0 - conf_level, static_cast<std::int64_t>(f.df_resid));
  for (Eigen::Index i = 0; i < k; ++i) {
    f.std_errors[i] = std::sqrt(f.sigma2 * f.xtx_inverse(i, i));
    f.t_stats[i] = (f.std_errors[i] == 0.0 && f.coefficients[i] == 0.0)
                       ? 0.0
                       : f.coefficients[i] / f.std_errors[i];
    f.p_values[i] = student_t_sf(f.t_stats[i], static_cast<std::int64_t>(f.df_resid));
    f.conf_intervals[static_cast<std::size_t>(i)] = {
        f.coefficients[i] - t_crit * f.std_errors[i],
        f.coefficients[i] + t_crit * f.std_errors[i]};
  }
  return f;
}

FitResult fit_model(const MonthlySeries& series, const ModelSpec& spec,
                    IndexRange range, double conf_level) {
  DesignMatrix d = design_matrix(series, spec, range);
  if (!d.singular_dummies.empty()) {
    throw SingularMatrixError("dummy " + d.singular_dummies.front().str() +
                              " is constant over the fitted range");
  }
  FitResult f = fit_ols(d.X, d.y, d.terms, conf_level);
  f.months = std::move(d.months);
  return f;
}

FitResult fit_model(const MonthlySeries& series, const ModelSpec& spec,
                    double conf_level) {
  return fit_model(series, spec, full_range(series), conf_level);
}

}  // namespace regimelens
