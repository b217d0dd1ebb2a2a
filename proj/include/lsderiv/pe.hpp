#pragma once

// Polynomial Extrapolation: fit a polynomial to the 2n+1 samples around each
// point and take the derivative of that polynomial at the point itself.

#include <cstddef>
#include <string>
#include <vector>

#include "lsderiv/error.hpp"
#include "lsderiv/estimate.hpp"
#include "lsderiv/regression.hpp"
#include "lsderiv/savgol.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

namespace detail {

inline DerivativeEstimate empty_estimate(const Series& series, std::size_t n, Method method) {
  const std::size_t len = series.size();
  return DerivativeEstimate{std::vector<double>(series.xs().begin(), series.xs().end()),
                            std::vector<double>(len, kUndefined), IndexRange{n, len - n}, method,
                            std::nullopt};
}

template <class DegreeFor>
DerivativeEstimate windowed_slopes(const Series& series, std::size_t n, Method method, DegreeFor&& degree_for) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "half-width n must be at least 1");
  detail::require_min_length(series, 2 * n + 1, "windowed derivative");
  auto out = empty_estimate(series, n, method);
  const std::size_t width = 2 * n + 1;
  for (std::size_t i = n; i + n < series.size(); ++i) {
    const Window w{series.xs().subspan(i - n, width), series.ys().subspan(i - n, width)};
    const int degree = degree_for(i, w);
    out.dys[i] = eval_poly_derivative(poly_fit(w, degree), series.xs()[i]);
  }
  return out;
}

}  // namespace detail

inline DerivativeEstimate pe_derivative(const Series& series, std::size_t n, int degree) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  if (static_cast<std::size_t>(degree) > 2 * n) {
    throw Error(ErrorCode::DegreeTooHigh, "degree " + std::to_string(degree) + " exceeds 2n = " +
                                              std::to_string(2 * n));
  }
  return detail::windowed_slopes(series, n, Method::PE, [degree](std::size_t, const Window&) { return degree; });
}

/// PE with the degree of every window chosen by find_degree.
inline DerivativeEstimate pe_derivative_auto(const Series& series, std::size_t n, const DegreeFinderConfig& config) {
  config.validate();
  if (static_cast<std::size_t>(config.check) > 2 * n) {
    throw Error(ErrorCode::WindowTooSmall, "check=" + std::to_string(config.check) + " exceeds 2n = " +
                                               std::to_string(2 * n));
  }
  std::vector<int> degrees(series.size(), 0);
  auto out = detail::windowed_slopes(series, n, Method::PEAuto, [&](std::size_t i, const Window& w) {
    return degrees[i] = find_degree(w, config);
  });
  out.chosen_degrees = std::move(degrees);
  return out;
}

}  // namespace lsderiv
