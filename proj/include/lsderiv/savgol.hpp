#pragma once

// Sliding-window Savitzky-Golay smoothing and the relative-error degree finder.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "lsderiv/error.hpp"
#include "lsderiv/regression.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

struct DegreeFinderConfig {
  /// Highest degree probed.
  int check = 6;
  /// Stop once error/newError - 1 drops below this.
  double epsilon = 0.01;
  /// Absolute fit-error floor; unset means 1e-10 * (1 + max|y|) of each window.
  std::optional<double> zero_tol;

  void validate() const {
    if (check < 1 || check > kMaxDegree) {
      throw Error(ErrorCode::InvalidArgument,
                  "check must lie in [1, " + std::to_string(kMaxDegree) + "], got " + std::to_string(check));
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    }
    if (zero_tol && !(*zero_tol > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "zero tolerance must be positive");
    }
  }
};

namespace detail {

inline double default_zero_tol(std::span<const double> ys) {
  double m = 0.0;
  for (double y : ys) m = std::max(m, std::abs(y));
  return 1e-10 * (1.0 + m);
}

}  // namespace detail

/// Picks a polynomial degree for the window by relative error improvement.
///
/// Starting from the linear fit error, degrees 2..check are tried in turn;
/// the first degree d whose error improves on d-1 by a ratio below epsilon
/// yields d-1. The comparison is signed, so a degree that makes the error
/// worse also stops the search. If no degree stops it, the answer is 1.
/// A fit error under the zero tolerance means the data is reproduced
/// exactly, and that degree is returned at once.
inline int find_degree(const Window& window, const DegreeFinderConfig& config) {
  config.validate();
  if (window.size() < static_cast<std::size_t>(config.check) + 1) {
    throw Error(ErrorCode::WindowTooSmall, "degree finder with check=" + std::to_string(config.check) +
                                               " needs at least " + std::to_string(config.check + 1) +
                                               " points, got " + std::to_string(window.size()));
  }
  const double zero_tol = config.zero_tol.value_or(detail::default_zero_tol(window.ys));

  double error = poly_fit(window, 1).fit_error;
  if (error < zero_tol) return 1;
  for (int d = 2; d <= config.check; ++d) {
    const double new_error = poly_fit(window, d).fit_error;
    if (new_error < zero_tol) return d;
    if (error / new_error - 1.0 < config.epsilon) return d - 1;
    error = new_error;
  }
  return 1;
}

struct FixedDegree {
  int degree = 2;
};

/// Either a fixed polynomial degree or a per-window degree finder.
using DegreeMode = std::variant<FixedDegree, DegreeFinderConfig>;

/// Replaces each y_i by the value at x_i of the polynomial fitted to the
/// 2n+1 samples centred on i. The first and last n outputs are undefined.
inline Smoothed savgol_smooth(const Series& series, std::size_t n, const DegreeMode& mode) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "half-width n must be at least 1");
  detail::require_min_length(series, 2 * n + 1, "smoothing");
  if (const auto* cfg = std::get_if<DegreeFinderConfig>(&mode)) cfg->validate();

  const std::size_t len = series.size();
  const std::size_t width = 2 * n + 1;
  Smoothed out{std::vector<double>(series.xs().begin(), series.xs().end()),
               std::vector<double>(len, kUndefined),
               IndexRange{n, len - n},
               std::vector<int>(len, 0)};

  for (std::size_t i = n; i + n < len; ++i) {
    const Window w{series.xs().subspan(i - n, width), series.ys().subspan(i - n, width)};
    const int degree = std::visit(
        [&](const auto& m) -> int {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, FixedDegree>) {
            return m.degree;
          } else {
            return find_degree(w, m);
          }
        },
        mode);
    out.ys[i] = eval_poly(poly_fit(w, degree), series.xs()[i]);
    out.degrees[i] = degree;
  }
  return out;
}

}  // namespace lsderiv
