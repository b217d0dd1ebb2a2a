#pragma once

// Polynomial least squares on a window of samples.
//
// Fits are computed on abscissae mapped to t = (x - center) / scale, with
// center the midpoint and scale the half-range of the window, and solved by
// Householder QR of the Vandermonde matrix in t. The fit keeps that local
// representation for evaluation; `coefficients` holds the same polynomial
// expanded in powers of x.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lsderiv/error.hpp"

namespace lsderiv {

inline constexpr int kMaxDegree = 15;

/// Non-owning view of the samples in one fitting window.
struct Window {
  std::span<const double> xs;
  std::span<const double> ys;

  std::size_t size() const noexcept { return xs.size(); }
};

struct PolyFit {
  /// c_0..c_d, ascending powers of x.
  std::vector<double> coefficients;
  int degree = 0;
  double fit_error = 0.0;

  // Local form: p(x) = sum_k local[k] * ((x - center) / scale)^k.
  double center = 0.0;
  double scale = 1.0;
  std::vector<double> local;

  /// A fit given directly by ascending-power coefficients.
  static PolyFit from_coefficients(std::vector<double> coeffs) {
    if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one coefficient");
    PolyFit fit;
    fit.degree = static_cast<int>(coeffs.size()) - 1;
    fit.local = coeffs;
    fit.coefficients = std::move(coeffs);
    return fit;
  }
};

namespace detail {

inline void check_window(const Window& w) {
  if (w.xs.size() != w.ys.size()) {
    throw Error(ErrorCode::InvalidArgument, "window has mismatched xs/ys lengths");
  }
}

inline bool has_duplicates(std::span<const double> xs) {
  if (std::is_sorted(xs.begin(), xs.end())) {
    return std::adjacent_find(xs.begin(), xs.end()) != xs.end();
  }
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

// Expand sum_k a_k ((x - c)/s)^k into powers of x.
inline std::vector<double> expand_local(const std::vector<double>& local, double center, double scale) {
  const std::size_t m = local.size();
  std::vector<double> out(m, 0.0);
  // Row k of Pascal's triangle times powers of (-c), built incrementally.
  std::vector<double> binom(m, 0.0);
  double inv_scale_pow = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    // binom[j] = C(k, j)
    for (std::size_t j = k; j > 0; --j) binom[j] += binom[j - 1];
    binom[0] = 1.0;
    double neg_c_pow = 1.0;  // (-c)^(k-j) for j = k, k-1, ..., 0
    for (std::size_t j = k + 1; j-- > 0;) {
      out[j] += local[k] * inv_scale_pow * binom[j] * neg_c_pow;
      neg_c_pow *= -center;
    }
    inv_scale_pow /= scale;
  }
  return out;
}

}  // namespace detail

/// Horner evaluation of the fitted polynomial.
inline double eval_poly(const PolyFit& fit, double x) {
  const double t = (x - fit.center) / fit.scale;
  double acc = 0.0;
  for (auto it = fit.local.rbegin(); it != fit.local.rend(); ++it) acc = acc * t + *it;
  return acc;
}

/// p'(x); zero for a constant.
inline double eval_poly_derivative(const PolyFit& fit, double x) {
  const double t = (x - fit.center) / fit.scale;
  double acc = 0.0;
  for (std::size_t k = fit.local.size(); k-- > 1;) acc = acc * t + static_cast<double>(k) * fit.local[k];
  return acc / fit.scale;
}

/// e = sqrt( sum_i (f(x_i) - y_i)^2 / (n - 1) ), n the window length.
inline double fit_error_of(const Window& window, const PolyFit& fit) {
  detail::check_window(window);
  const std::size_t n = window.size();
  if (n < 2) throw Error(ErrorCode::WindowTooSmall, "fit error needs at least 2 points");
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = eval_poly(fit, window.xs[i]) - window.ys[i];
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

/// Least-squares polynomial of the given degree through the window.
inline PolyFit poly_fit(const Window& window, int degree) {
  detail::check_window(window);
  const std::size_t n = window.size();
  if (n < 2) throw Error(ErrorCode::WindowTooSmall, "a fitting window needs at least 2 points");
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be non-negative");
  if (static_cast<std::size_t>(degree) >= n) {
    throw Error(ErrorCode::DegreeTooHigh, "degree " + std::to_string(degree) + " needs more than " +
                                              std::to_string(n) + " points");
  }
  if (degree > kMaxDegree) {
    throw Error(ErrorCode::DegreeTooHigh,
                "degree " + std::to_string(degree) + " exceeds the cap of " + std::to_string(kMaxDegree));
  }
  if (detail::has_duplicates(window.xs)) {
    throw Error(ErrorCode::DegenerateWindow, "window contains duplicate domain values");
  }

  const auto [lo, hi] = std::minmax_element(window.xs.begin(), window.xs.end());
  PolyFit fit;
  fit.degree = degree;
  fit.center = 0.5 * (*lo + *hi);
  fit.scale = 0.5 * (*hi - *lo);

  const auto cols = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd vander(static_cast<Eigen::Index>(n), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double t = (window.xs[i] - fit.center) / fit.scale;
    double p = 1.0;
    for (Eigen::Index k = 0; k < cols; ++k, p *= t) vander(row, k) = p;
    rhs(row) = window.ys[i];
  }
  const Eigen::VectorXd sol = vander.householderQr().solve(rhs);

  fit.local.assign(sol.data(), sol.data() + sol.size());
  fit.coefficients = detail::expand_local(fit.local, fit.center, fit.scale);
  fit.fit_error = fit_error_of(window, fit);
  return fit;
}

}  // namespace lsderiv
