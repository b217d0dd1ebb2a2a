#pragma once

// Singular-spectrum derivative: embed the observations in a Hankel matrix whose
// rows are the (2n+1)-sample windows, split it into rank-1 components by SVD,
// keep the leading components up to a variance-explained target, and sum the
// least-squares line slopes of each window row across the kept components.
// Rows are not diagonal-averaged back into a series.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "lsderiv/error.hpp"
#include "lsderiv/estimate.hpp"
#include "lsderiv/regression.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

/// K x L matrix with rows [y_j .. y_{j+L-1}], K = length - L + 1.
inline Eigen::MatrixXd hankelize(std::span<const double> ys, std::size_t window) {
  if (window < 2) throw Error(ErrorCode::InvalidArgument, "Hankel window must be at least 2");
  if (window % 2 == 0) throw Error(ErrorCode::InvalidArgument, "Hankel window must be odd (2n+1)");
  if (window > ys.size()) {
    throw Error(ErrorCode::WindowTooLarge, "window " + std::to_string(window) + " exceeds series length " +
                                               std::to_string(ys.size()));
  }
  const auto rows = static_cast<Eigen::Index>(ys.size() - window + 1);
  const auto cols = static_cast<Eigen::Index>(window);
  Eigen::MatrixXd h(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) h(r, c) = ys[static_cast<std::size_t>(r + c)];
  return h;
}

/// Cumulative share of sum(sigma^2) carried by the leading singular values.
struct VarianceProfile {
  std::vector<double> cumulative;

  /// Smallest r with cumulative[r-1] >= target.
  std::size_t count_for(double target) const {
    for (std::size_t r = 0; r < cumulative.size(); ++r)
      if (cumulative[r] >= target) return r + 1;
    return cumulative.size();
  }
};

/// Singular values below this are treated as zero.
inline double rank_tolerance(const Eigen::VectorXd& sigma, Eigen::Index rows, Eigen::Index cols) {
  if (sigma.size() == 0) return 0.0;
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols)) * sigma(0);
}

inline VarianceProfile variance_profile(const Eigen::VectorXd& sigma, double zero_below = 0.0) {
  VarianceProfile profile;
  const auto m = static_cast<std::size_t>(sigma.size());
  profile.cumulative.assign(m, 1.0);
  double total = 0.0;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double s = sigma(static_cast<Eigen::Index>(k));
    if (s > zero_below) {
      total += s * s;
      rank = k + 1;
    }
  }
  if (total == 0.0) return profile;
  double partial = 0.0;
  for (std::size_t k = 0; k < rank; ++k) {
    const double s = sigma(static_cast<Eigen::Index>(k));
    partial += s * s;
    profile.cumulative[k] = partial / total;
  }
  return profile;
}

class SsaDecomposition {
 public:
  SsaDecomposition(std::span<const double> ys, std::size_t window, double variance_target)
      : hankel_(hankelize(ys, window)), variance_target_(variance_target) {
    if (!(variance_target > 0.0 && variance_target <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "variance target must lie in (0, 1]");
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(hankel_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw Error(ErrorCode::SvdFailure, "SVD of the Hankel matrix did not converge");
    u_ = svd.matrixU();
    v_ = svd.matrixV();
    sigma_ = svd.singularValues();
    if (!sigma_.allFinite() || !u_.allFinite() || !v_.allFinite()) {
      throw Error(ErrorCode::SvdFailure, "SVD of the Hankel matrix produced non-finite values");
    }
    profile_ = variance_profile(sigma_, rank_tolerance(sigma_, hankel_.rows(), hankel_.cols()));
    retained_ = profile_.count_for(variance_target_);
  }

  const Eigen::MatrixXd& hankel() const noexcept { return hankel_; }
  /// Non-increasing.
  const Eigen::VectorXd& singular_values() const noexcept { return sigma_; }
  const Eigen::MatrixXd& left_vectors() const noexcept { return u_; }
  const Eigen::MatrixXd& right_vectors() const noexcept { return v_; }
  const VarianceProfile& profile() const noexcept { return profile_; }
  double variance_target() const noexcept { return variance_target_; }

  std::size_t component_count() const noexcept { return static_cast<std::size_t>(sigma_.size()); }
  std::size_t retained_count() const noexcept { return retained_; }

  /// sigma_k * u_k v_k^T, built on demand.
  Eigen::MatrixXd component(std::size_t k) const {
    const auto i = static_cast<Eigen::Index>(k);
    return sigma_(i) * u_.col(i) * v_.col(i).transpose();
  }

 private:
  Eigen::MatrixXd hankel_;
  Eigen::MatrixXd u_;
  Eigen::MatrixXd v_;
  Eigen::VectorXd sigma_;
  VarianceProfile profile_;
  double variance_target_;
  std::size_t retained_ = 0;
};

inline SsaDecomposition decompose(std::span<const double> ys, std::size_t window, double variance_target) {
  return SsaDecomposition(ys, window, variance_target);
}

/// Row j of each kept component is regressed on x[j .. j+2n]; its slope is
/// added to the estimate at the window centre j+n.
inline DerivativeEstimate ssa_derivative(const Series& series, std::size_t n, double variance_target = 0.95) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "half-width n must be at least 1");
  detail::require_min_length(series, 2 * n + 1, "SSA derivative");
  const std::size_t len = series.size();
  const std::size_t width = 2 * n + 1;
  const SsaDecomposition dec(series.ys(), width, variance_target);

  DerivativeEstimate out{std::vector<double>(series.xs().begin(), series.xs().end()),
                         std::vector<double>(len, kUndefined), IndexRange{n, len - n}, Method::SSA, std::nullopt};
  std::fill(out.dys.begin() + static_cast<std::ptrdiff_t>(n), out.dys.end() - static_cast<std::ptrdiff_t>(n), 0.0);

  const auto rows = dec.hankel().rows();
  std::vector<double> row(width);
  // Components in descending singular value order.
  for (std::size_t k = 0; k < dec.retained_count(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double sigma = dec.singular_values()(kk);
    for (Eigen::Index j = 0; j < rows; ++j) {
      const double uj = sigma * dec.left_vectors()(j, kk);
      for (std::size_t c = 0; c < width; ++c) row[c] = uj * dec.right_vectors()(static_cast<Eigen::Index>(c), kk);
      const auto start = static_cast<std::size_t>(j);
      const Window w{series.xs().subspan(start, width), row};
      out.dys[start + n] += eval_poly_derivative(poly_fit(w, 1), 0.0);
    }
  }
  return out;
}

}  // namespace lsderiv
