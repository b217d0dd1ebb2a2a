#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lsderiv/savgol.hpp"
#include "lsderiv/signals.hpp"
#include "test_support.hpp"

using namespace lsderiv;
namespace lt = lsderiv::testing;

namespace {

// Replays the degree finder on oracle errors (orthogonal projection in long double).
int oracle_degree(const std::vector<double>& xs, const std::vector<double>& ys, int check, double eps) {
  double ymax = 0;
  for (double y : ys) ymax = std::max(ymax, std::abs(y));
  const double tol = 1e-10 * (1 + ymax);
  double err = lt::ls_error(xs, ys, 1);
  if (err < tol) return 1;
  for (int d = 2; d <= check; ++d) {
    const double ne = lt::ls_error(xs, ys, d);
    if (ne < tol) return d;
    if (err / ne - 1 < eps) return d - 1;
    err = ne;
  }
  return 1;
}

}  // namespace

TEST(FindDegree, ExactLineStopsAtOne) {
  std::vector<double> xs, ys;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(i);
    ys.push_back(2.0 * i + 1);
  }
  EXPECT_EQ(find_degree(Window{xs, ys}, DegreeFinderConfig{.check = 5}), 1);
}

TEST(FindDegree, ExactCubicReturnsThree) {
  std::vector<double> xs, ys;
  for (int i = 0; i < 12; ++i) {
    xs.push_back(i);
    ys.push_back(double(i) * i * i - i);
  }
  const int oracle = oracle_degree(xs, ys, 6, 0.01);
  EXPECT_EQ(oracle, 3);
  EXPECT_EQ(find_degree(Window{xs, ys}, DegreeFinderConfig{.check = 6}), oracle);
}

TEST(FindDegree, PureNoiseMostlyLinear) {
  // Wide window: the error drop from one extra degree on noise is about
  // chi2(1) / (2 m), far below 1% for m = 301.
  NormalNoise noise(99);
  const auto xs = lt::uniform_grid(0, 10, 301);
  std::vector<double> ys(xs.size());
  for (auto& y : ys) y = 25.0 * noise();
  EXPECT_EQ(find_degree(Window{xs, ys}, DegreeFinderConfig{.check = 6}), 1);
}

TEST(FindDegree, AgreesWithOracleOnRandomWindows) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto xs = lt::jittered_grid(rng, 15, 0.0, 0.5, 1.5);
    auto ys = lt::gaussian_values(rng, 15, 0.05);
    const double a = std::uniform_real_distribution<double>(-1, 1)(rng);
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += std::sin(a * xs[i]) + 0.01 * xs[i] * xs[i];
    const int got = find_degree(Window{xs, ys}, DegreeFinderConfig{.check = 6});
    EXPECT_GE(got, 1);
    EXPECT_LE(got, 6);
    EXPECT_EQ(got, oracle_degree(xs, ys, 6, 0.01)) << "trial " << trial;
  }
}

TEST(FindDegree, SignedComparisonStopsOnWorseError) {
  // Error that does not improve from 1 to 2 (odd data on a symmetric grid).
  const auto xs = lt::uniform_grid(-1, 1, 11);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(x * x * x);
  EXPECT_EQ(find_degree(Window{xs, ys}, DegreeFinderConfig{.check = 6}), 1);
}

TEST(FindDegree, ConfigAndWindowErrors) {
  const auto xs = lt::uniform_grid(0, 1, 5);
  for (auto cfg : {DegreeFinderConfig{.check = 0}, DegreeFinderConfig{.check = 16}, DegreeFinderConfig{.check = 3, .epsilon = 0.0}, DegreeFinderConfig{.check = 3, .epsilon = 1.0},
                   DegreeFinderConfig{3, 0.01, -1.0}}) {
    try {
      (void)find_degree(Window{xs, xs}, cfg);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
  }
  try {
    (void)find_degree(Window{xs, xs}, DegreeFinderConfig{.check = 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooSmall);
  }
}

TEST(SavgolSmooth, ReproducesParabola) {
  const auto xs = lt::uniform_grid(-2, 3, 21);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(x * x);
  const auto out = savgol_smooth(Series(xs, ys), 3, FixedDegree{2});
  EXPECT_EQ(out.defined, (IndexRange{3, 18}));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (out.defined.contains(i)) {
      EXPECT_NEAR(out.ys[i], ys[i], 1e-12);
      EXPECT_EQ(out.degrees[i], 2);
    } else {
      EXPECT_TRUE(is_undefined(out.ys[i]));
      EXPECT_EQ(out.degrees[i], 0);
    }
  }
}

TEST(SavgolSmooth, ConstantStaysConstant) {
  const auto xs = lt::uniform_grid(0, 1, 30);
  const std::vector<double> ys(30, 4.25);
  for (const DegreeMode mode : {DegreeMode{FixedDegree{3}}, DegreeMode{DegreeFinderConfig{}}}) {
    const auto out = savgol_smooth(Series(xs, ys), 7, mode);
    for (std::size_t i = out.defined.begin; i < out.defined.end; ++i) EXPECT_NEAR(out.ys[i], 4.25, 1e-12);
  }
}

TEST(SavgolSmooth, ReducesNoiseOnLine) {
  const auto xs = lt::uniform_grid(0, 10, 200);
  NormalNoise noise(2024);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = xs[i] + 0.5 * noise();
  const auto out = savgol_smooth(Series(xs, ys), 7, FixedDegree{1});
  std::vector<double> raw, smooth;
  for (std::size_t i = out.defined.begin; i < out.defined.end; ++i) {
    raw.push_back(ys[i] - xs[i]);
    smooth.push_back(out.ys[i] - xs[i]);
  }
  EXPECT_LT(lt::variance(smooth), lt::variance(raw));
}

TEST(SavgolSmooth, LinearInObservationsWithFixedDegree) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto xs = lt::jittered_grid(rng, 60);
    const auto y1 = lt::random_values(rng, 60);
    const auto y2 = lt::random_values(rng, 60);
    std::vector<double> mix(60);
    for (std::size_t i = 0; i < 60; ++i) mix[i] = 2.5 * y1[i] - 4.0 * y2[i];
    const int d = 1 + trial % 4;
    const auto s1 = savgol_smooth(Series(xs, y1), 5, FixedDegree{d});
    const auto s2 = savgol_smooth(Series(xs, y2), 5, FixedDegree{d});
    const auto sm = savgol_smooth(Series(xs, mix), 5, FixedDegree{d});
    std::vector<double> expected(60, kUndefined);
    for (std::size_t i = sm.defined.begin; i < sm.defined.end; ++i) expected[i] = 2.5 * s1.ys[i] - 4.0 * s2.ys[i];
    EXPECT_LE(lt::relative_diff(sm.ys, expected), 1e-9);
  }
}

TEST(SavgolSmooth, IdempotentOnPolynomialData) {
  const auto xs = lt::uniform_grid(0, 4, 40);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(1 - x + 0.3 * x * x * x);
  const auto once = savgol_smooth(Series(xs, ys), 4, FixedDegree{3});
  const Series defined = Series(xs, ys).slice(once.defined);
  const auto twice = savgol_smooth(Series(std::vector<double>(defined.xs().begin(), defined.xs().end()),
                                          std::vector<double>(once.ys.begin() + 4, once.ys.end() - 4)),
                                   4, FixedDegree{3});
  for (std::size_t k = twice.defined.begin; k < twice.defined.end; ++k) {
    EXPECT_NEAR(twice.ys[k], once.ys[k + 4], 1e-10);
    EXPECT_NEAR(once.ys[k + 4], ys[k + 4], 1e-10);
  }
}

TEST(SavgolSmooth, AutoDegreesWithinRange) {
  const auto sig = generate(sinmix_spec(0.1, 3));
  const DegreeFinderConfig cfg{5};
  const auto out = savgol_smooth(sig.series, 7, cfg);
  for (std::size_t i = out.defined.begin; i < out.defined.end; ++i) {
    EXPECT_GE(out.degrees[i], 1);
    EXPECT_LE(out.degrees[i], 5);
  }
}

TEST(SavgolSmooth, TooShort) {
  const auto xs = lt::uniform_grid(0, 1, 6);
  try {
    (void)savgol_smooth(Series(xs, xs), 3, FixedDegree{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
  }
}
