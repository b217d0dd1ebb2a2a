#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsderiv/error.hpp"

namespace lsderiv {

/// Marker for samples inside the undefined margin of a windowed estimate.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

inline bool is_undefined(double v) noexcept { return std::isnan(v); }

/// Half-open index interval [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  constexpr std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
  constexpr bool empty() const noexcept { return size() == 0; }
  constexpr bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }

  /// The range left after dropping `margin` entries from each side.
  constexpr IndexRange shrink(std::size_t margin) const noexcept {
    if (size() <= 2 * margin) return {begin + margin, begin + margin};
    return {begin + margin, end - margin};
  }

  friend constexpr bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Paired samples (x, y) with strictly increasing x. Spacing need not be uniform.
class Series {
 public:
  Series() = default;

  Series(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size()) {
      throw Error(ErrorCode::InvalidArgument, "series has " + std::to_string(xs_.size()) +
                                                  " domain values but " + std::to_string(ys_.size()) +
                                                  " observations");
    }
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
        throw Error(ErrorCode::InvalidArgument, "non-finite sample at index " + std::to_string(i));
      }
      if (i > 0 && !(xs_[i] > xs_[i - 1])) {
        throw Error(ErrorCode::DegenerateWindow,
                    "domain values must be strictly increasing (index " + std::to_string(i) + ")");
      }
    }
  }

  std::size_t size() const noexcept { return xs_.size(); }
  bool empty() const noexcept { return xs_.empty(); }

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }

  /// Copy of the samples in [range.begin, range.end).
  Series slice(IndexRange range) const {
    return Series(std::vector<double>(xs_.begin() + range.begin, xs_.begin() + range.end),
                  std::vector<double>(ys_.begin() + range.begin, ys_.begin() + range.end));
  }

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Samples defined only on `defined`; entries outside it hold kUndefined.
struct Smoothed {
  std::vector<double> xs;
  std::vector<double> ys;
  IndexRange defined;
  /// Polynomial degree used per index, 0 outside `defined`.
  std::vector<int> degrees;
};

namespace detail {

inline void require_min_length(const Series& series, std::size_t min_len, const char* what) {
  if (series.size() < min_len) {
    throw Error(ErrorCode::SeriesTooShort, std::string(what) + " needs at least " +
                                               std::to_string(min_len) + " samples, got " +
                                               std::to_string(series.size()));
  }
}

}  // namespace detail

}  // namespace lsderiv
