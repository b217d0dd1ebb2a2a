#pragma once

// Synthetic test signals with analytic derivatives and seeded Gaussian noise.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lsderiv/error.hpp"
#include "lsderiv/estimate.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

/// Gaussian noise source: std::mt19937_64 seeded with the raw 64-bit seed,
/// 53-bit uniforms u in (0, 1], standard normals by the Box-Muller transform
/// (both outputs of each pair are used, cosine branch first). The engine's
/// output sequence is fixed by the C++ standard, so a seed reproduces the
/// same noise on every conforming platform up to libm rounding.
class NormalNoise {
 public:
  explicit NormalNoise(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace shape {

/// sin(2x) + cos(x/2) + 2 sin(x)
struct Sinmix {};

struct Linear {
  double slope = 1.0;
  double intercept = 0.0;
};

struct Constant {
  double value = 0.0;
};

struct Polynomial {
  /// Ascending powers.
  std::vector<double> coefficients;
};

/// Line of the given slope through (breakpoint, value_at_break) up to the
/// breakpoint, then the same line plus cubic * (x - breakpoint)^3.
struct Piecewise {
  double breakpoint = 0.0;
  double slope = 1.0;
  double value_at_break = 0.0;
  double cubic = 1.0;
};

}  // namespace shape

using Shape = std::variant<shape::Sinmix, shape::Linear, shape::Constant, shape::Polynomial, shape::Piecewise>;

struct SignalSpec {
  Shape shape = shape::Sinmix{};
  double xmin = 0.0;
  double xmax = 4.0 * std::numbers::pi;
  std::size_t count = 500;
  double noise_std = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (count < 3) throw Error(ErrorCode::InvalidSpec, "signal needs at least 3 samples");
    if (!(xmax > xmin)) throw Error(ErrorCode::InvalidSpec, "signal domain must satisfy xmax > xmin");
    if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
      throw Error(ErrorCode::InvalidSpec, "noise standard deviation must be finite and >= 0");
    }
    if (const auto* p = std::get_if<shape::Polynomial>(&shape); p && p->coefficients.empty()) {
      throw Error(ErrorCode::InvalidSpec, "polynomial signal needs at least one coefficient");
    }
  }
};

/// Default sinusoid-mix experiment: 500 points on [0, 4 pi].
inline SignalSpec sinmix_spec(double noise_std, std::uint64_t seed) {
  return SignalSpec{shape::Sinmix{}, 0.0, 4.0 * std::numbers::pi, 500, noise_std, seed};
}

/// Default linear experiment: y = x, 300 points on [0, 10].
inline SignalSpec linear_spec(double noise_std, std::uint64_t seed) {
  return SignalSpec{shape::Linear{1.0, 0.0}, 0.0, 10.0, 300, noise_std, seed};
}

struct Signal {
  Series series;
  std::vector<double> truth;
};

namespace detail {

struct ValueAndSlope {
  double value;
  double slope;
};

inline ValueAndSlope evaluate_shape(const Shape& s, double x) {
  struct Visitor {
    double x;
    ValueAndSlope operator()(const shape::Sinmix&) const {
      return {std::sin(2 * x) + std::cos(x / 2) + 2 * std::sin(x),
              2 * std::cos(2 * x) - 0.5 * std::sin(x / 2) + 2 * std::cos(x)};
    }
    ValueAndSlope operator()(const shape::Linear& l) const { return {l.slope * x + l.intercept, l.slope}; }
    ValueAndSlope operator()(const shape::Constant& c) const { return {c.value, 0.0}; }
    ValueAndSlope operator()(const shape::Polynomial& p) const {
      double v = 0.0;
      double d = 0.0;
      for (std::size_t k = p.coefficients.size(); k-- > 0;) {
        d = d * x + v;
        v = v * x + p.coefficients[k];
      }
      return {v, d};
    }
    ValueAndSlope operator()(const shape::Piecewise& p) const {
      const double dx = x - p.breakpoint;
      double v = p.value_at_break + p.slope * dx;
      double d = p.slope;
      if (dx > 0) {
        v += p.cubic * dx * dx * dx;
        d += 3 * p.cubic * dx * dx;
      }
      return {v, d};
    }
  };
  return std::visit(Visitor{x}, s);
}

}  // namespace detail

inline Signal generate(const SignalSpec& spec) {
  spec.validate();
  std::vector<double> xs(spec.count);
  std::vector<double> ys(spec.count);
  std::vector<double> truth(spec.count);
  const double step = (spec.xmax - spec.xmin) / static_cast<double>(spec.count - 1);
  NormalNoise noise(spec.seed);
  for (std::size_t i = 0; i < spec.count; ++i) {
    xs[i] = i + 1 == spec.count ? spec.xmax : spec.xmin + step * static_cast<double>(i);
    const auto [value, slope] = detail::evaluate_shape(spec.shape, xs[i]);
    ys[i] = value;
    truth[i] = slope;
    // Draw noise even when sigma is zero so the stream position is independent of sigma.
    ys[i] += spec.noise_std * noise();
  }
  return Signal{Series(std::move(xs), std::move(ys)), std::move(truth)};
}

/// sqrt( sum (estimate - truth)^2 / (m - 1) ) over the m defined samples.
inline double rmse_against_truth(const DerivativeEstimate& estimate, std::span<const double> truth) {
  if (truth.size() != estimate.dys.size()) {
    throw Error(ErrorCode::InvalidArgument, "estimate and truth lengths differ");
  }
  if (estimate.defined.size() < 2) {
    throw Error(ErrorCode::EmptyDefinedRange, "need at least 2 defined samples, got " +
                                                  std::to_string(estimate.defined.size()));
  }
  double ss = 0.0;
  for (std::size_t i = estimate.defined.begin; i < estimate.defined.end; ++i) {
    const double r = estimate.dys[i] - truth[i];
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(estimate.defined.size() - 1));
}

}  // namespace lsderiv
