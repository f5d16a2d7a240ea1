#include "regimelens/robust.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "regimelens/errors.hpp"
#include "regimelens/numstat.hpp"

namespace regimelens {

namespace {

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// MAD/0.6745 scale; falls back to mean absolute residual when the MAD
// degenerates. Returns 0 only for an exact fit.
double robust_scale(const Eigen::VectorXd& r) {
  std::vector<double> abs_r(static_cast<std::size_t>(r.size()));
  const double med = median_of({r.data(), r.data() + r.size()});
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    abs_r[static_cast<std::size_t>(i)] = std::fabs(r[i] - med);
  }
  const double mad = median_of(abs_r);
  if (mad > 0) return mad / 0.6745;
  return r.cwiseAbs().mean();
}

Eigen::VectorXd solve_weighted(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& w) {
  const Eigen::VectorXd sw = w.cwiseSqrt();
  const Eigen::MatrixXd Xw = sw.asDiagonal() * X;
  const Eigen::VectorXd yw = sw.asDiagonal() * y;
  return Xw.colPivHouseholderQr().solve(yw);
}

}  // namespace

RobustFitResult fit_irls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         std::vector<Term> terms, IrlsOptions opts) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (n <= k) throw InsufficientDataError("fit_irls: fewer usable rows than terms");

  RobustFitResult out;
  out.terms = terms;

  const FitResult ols = fit_ols(X, y, terms, opts.conf_level);
  Eigen::VectorXd beta = ols.coefficients;
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd r = ols.residuals;

  const double y_scale = std::max(y.cwiseAbs().maxCoeff(), 1.0);
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    const double scale = robust_scale(r);
    if (scale <= 1e-12 * y_scale) {
      // Exact fit: nothing to reweight.
      w = Eigen::VectorXd::Ones(n);
      out.iterations = iter;
      out.converged = true;
      break;
    }
    const double cutoff = opts.tuning_constant * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = r[i] / cutoff;
      w[i] = std::fabs(u) < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
    }
    if (w.maxCoeff() == 0.0) throw Error("fit_irls: all observations rejected");

    const Eigen::VectorXd beta_next = solve_weighted(X, y, w);
    const double denom = std::max(beta.cwiseAbs().maxCoeff(), 1e-300);
    const double change = (beta_next - beta).cwiseAbs().maxCoeff() / denom;
    beta = beta_next;
    r = y - X * beta;
    out.iterations = iter;
    if (change <= opts.tolerance) {
      out.converged = true;
      break;
    }
  }
  // Report weights evaluated at the final residuals.
  const double final_scale = robust_scale(r);
  if (final_scale > 1e-12 * y_scale) {
    const double cutoff = opts.tuning_constant * final_scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = r[i] / cutoff;
      w[i] = std::fabs(u) < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
    }
  }
  out.coefficients = beta;
  out.weights = w;
  out.residuals = r;

  // Weighted covariance of the final iteration.
  const double wsum = w.sum();
  const double wrss = (w.array() * r.array().square()).sum();
  const double df = static_cast<double>(n - k);
  const double s2 = wrss / df * (static_cast<double>(n) / wsum);
  const Eigen::MatrixXd xtwx = X.transpose() * w.asDiagonal() * X;
  const Eigen::MatrixXd cov = s2 * xtwx.inverse();
  out.std_errors.resize(k);
  out.conf_intervals.resize(static_cast<std::size_t>(k));
  const double t_crit =
      t_critical(1.0 - opts.conf_level, static_cast<std::int64_t>(n - k));
  for (Eigen::Index i = 0; i < k; ++i) {
    out.std_errors[i] = std::sqrt(std::max(cov(i, i), 0.0));
    out.conf_intervals[static_cast<std::size_t>(i)] = {
        beta[i] - t_crit * out.std_errors[i], beta[i] + t_crit * out.std_errors[i]};
  }
  return out;
}

OutlierReport detect_outliers(const FitResult& fit, const Eigen::MatrixXd& X,
                              double alpha, bool bonferroni) {
  if (fit.df_resid < 2) {
    throw InsufficientDataError("detect_outliers: df_resid must be >= 2");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("detect_outliers: alpha must lie in (0,1)");
  }
  const Eigen::Index n = X.rows();
  if (static_cast<std::size_t>(n) != fit.n_obs) {
    throw ValidationError("detect_outliers: design matrix does not match fit");
  }

  OutlierReport report;
  report.alpha = alpha;
  report.bonferroni = bonferroni;
  report.studentized.resize(n);

  // Leverages via (X'X)^-1 stored on the fit.
  const Eigen::MatrixXd H = X * fit.xtx_inverse * X.transpose();
  const double rss = fit.residuals.squaredNorm();
  // Exact fits leave only floating-point noise in the residuals; studentizing
  // that noise would flag arbitrary rows.
  const double y_scale = (fit.fitted + fit.residuals).cwiseAbs().maxCoeff();
  if (std::sqrt(rss) <= 1e-12 * std::max(y_scale, 1.0)) {
    report.studentized.setZero();
    return report;
  }
  const double df_out = static_cast<double>(fit.df_resid) - 1.0;
  const double threshold = bonferroni ? alpha / static_cast<double>(n) : alpha;

  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = std::min(H(i, i), 1.0 - 1e-12);
    const double r = fit.residuals[i];
    const double r2_adj = r * r / (1.0 - h);
    // Leave-one-out residual variance.
    const double s2_i = std::max(rss - r2_adj, 0.0) / df_out;
    double rstar = 0;
    if (s2_i > 0) {
      rstar = r / (std::sqrt(s2_i) * std::sqrt(1.0 - h));
    } else if (std::fabs(r) > 0) {
      rstar = std::copysign(1e300, r);
    }
    report.studentized[i] = rstar;
    const double p =
        2.0 * student_t_sf(std::fabs(rstar), static_cast<std::int64_t>(fit.df_resid) - 1);
    if (p < threshold) {
      OutlierFlag flag;
      flag.row = static_cast<std::size_t>(i);
      if (!fit.months.empty()) flag.month = fit.months[static_cast<std::size_t>(i)];
      flag.studentized_residual = rstar;
      flag.p_value = p;
      report.flagged.push_back(flag);
    }
  }
  return report;
}

}  // namespace regimelens
