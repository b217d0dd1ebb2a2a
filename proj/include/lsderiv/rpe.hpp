#pragma once

// Reverse Polynomial Extrapolation: differentiate with a symmetric quotient,
// then smooth the noisy slopes with degree-finder Savitzky-Golay passes.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "lsderiv/error.hpp"
#include "lsderiv/estimate.hpp"
#include "lsderiv/savgol.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

/// (y[i+1] - y[i-1]) / (x[i+1] - x[i-1]) on the interior; endpoints undefined.
inline DerivativeEstimate symmetric_quotient(const Series& series) {
  detail::require_min_length(series, 3, "symmetric quotient");
  const std::size_t len = series.size();
  const auto xs = series.xs();
  const auto ys = series.ys();
  DerivativeEstimate out{std::vector<double>(xs.begin(), xs.end()), std::vector<double>(len, kUndefined),
                         IndexRange{1, len - 1}, Method::RPE, std::nullopt};
  for (std::size_t i = 1; i + 1 < len; ++i) {
    const double dx = xs[i + 1] - xs[i - 1];
    if (dx == 0.0) {
      throw Error(ErrorCode::DegenerateWindow, "x[i+1] == x[i-1] at index " + std::to_string(i));
    }
    out.dys[i] = (ys[i + 1] - ys[i - 1]) / dx;
  }
  return out;
}

inline DerivativeEstimate rpe_derivative(const Series& series, std::size_t n, const DegreeFinderConfig& config,
                                         std::size_t passes = 2) {
  config.validate();
  if (passes > 0 && n < 1) throw Error(ErrorCode::InvalidArgument, "half-width n must be at least 1");
  detail::require_min_length(series, 2 * passes * n + 3, "reverse polynomial extrapolation");

  DerivativeEstimate out = symmetric_quotient(series);
  for (std::size_t pass = 0; pass < passes; ++pass) {
    // Smooth only the defined stretch, then place it back at its offset.
    const Series defined(std::vector<double>(out.xs.begin() + out.defined.begin, out.xs.begin() + out.defined.end),
                         std::vector<double>(out.dys.begin() + out.defined.begin, out.dys.begin() + out.defined.end));
    const Smoothed smoothed = savgol_smooth(defined, n, config);
    const std::size_t offset = out.defined.begin;
    std::fill(out.dys.begin(), out.dys.end(), kUndefined);
    for (std::size_t k = smoothed.defined.begin; k < smoothed.defined.end; ++k) out.dys[offset + k] = smoothed.ys[k];
    out.defined = out.defined.shrink(n);
  }
  return out;
}

}  // namespace lsderiv
