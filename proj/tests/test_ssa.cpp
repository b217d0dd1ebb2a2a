#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lsderiv/pe.hpp"
#include "lsderiv/signals.hpp"
#include "lsderiv/ssa.hpp"
#include "test_support.hpp"

using namespace lsderiv;
namespace lt = lsderiv::testing;

TEST(Hankelize, SmallExample) {
  const std::vector<double> ys{1, 2, 3, 4, 5};
  const auto h = hankelize(ys, 3);
  Eigen::MatrixXd expected(3, 3);
  expected << 1, 2, 3, 2, 3, 4, 3, 4, 5;
  EXPECT_EQ(h, expected);
}

TEST(Hankelize, SingleRowWhenWindowIsWholeSeries) {
  const std::vector<double> ys{4, -1, 0.5, 9, 2};
  const auto h = hankelize(ys, 5);
  ASSERT_EQ(h.rows(), 1);
  for (int c = 0; c < 5; ++c) EXPECT_EQ(h(0, c), ys[static_cast<std::size_t>(c)]);
}

TEST(Hankelize, ConstantIsRankOne) {
  const std::vector<double> ys(20, 2.5);
  const auto h = hankelize(ys, 7);
  EXPECT_TRUE((h.array() == 2.5).all());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
  EXPECT_EQ(svd.setThreshold(1e-12).rank(), 1);
}

TEST(Hankelize, AntiDiagonalsConstantExhaustive) {
  std::mt19937_64 rng(20);
  for (std::size_t len = 3; len <= 12; ++len) {
    const auto ys = lt::random_values(rng, len);
    for (std::size_t w = 3; w <= len; w += 2) {
      const auto h = hankelize(ys, w);
      ASSERT_EQ(static_cast<std::size_t>(h.rows()), len - w + 1);
      for (Eigen::Index r = 0; r < h.rows(); ++r)
        for (Eigen::Index c = 0; c < h.cols(); ++c) EXPECT_EQ(h(r, c), ys[static_cast<std::size_t>(r + c)]);
    }
  }
}

TEST(Hankelize, Errors) {
  const std::vector<double> ys{1, 2, 3};
  try {
    (void)hankelize(ys, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooLarge);
  }
  EXPECT_THROW((void)hankelize(ys, 2), Error);
}

TEST(VarianceProfile, CountFromSingularValues) {
  Eigen::VectorXd s(3);
  s << 10, 1, 0.1;
  const auto p = variance_profile(s);
  EXPECT_NEAR(p.cumulative[0], 100.0 / 101.01, 1e-15);
  EXPECT_DOUBLE_EQ(p.cumulative[2], 1.0);
  EXPECT_EQ(p.count_for(0.95), 1u);
  EXPECT_EQ(p.count_for(0.995), 2u);
  EXPECT_EQ(p.count_for(1.0), 3u);
}

TEST(Decompose, FullTargetKeepsEveryNonzeroComponent) {
  std::mt19937_64 rng(21);
  const auto ys = lt::random_values(rng, 40);
  const auto dec = decompose(ys, 9, 1.0);
  EXPECT_EQ(dec.retained_count(), 9u);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dec.hankel().rows(), dec.hankel().cols());
  for (std::size_t k = 0; k < dec.retained_count(); ++k) sum += dec.component(k);
  EXPECT_LE((sum - dec.hankel()).norm(), 1e-8 * dec.hankel().norm());
}

TEST(Decompose, NoiseFreeLinearHasRankAtMostTwo) {
  std::vector<double> ys;
  for (int i = 0; i < 60; ++i) ys.push_back(0.3 * i - 2);
  const auto h = hankelize(ys, 11);
  Eigen::JacobiSVD<Eigen::MatrixXd> oracle(h);
  const auto rank = static_cast<std::size_t>(oracle.setThreshold(1e-10).rank());
  EXPECT_LE(rank, 2u);
  for (double target : {0.5, 0.9, 0.95, 0.999, 1.0}) EXPECT_LE(decompose(ys, 11, target).retained_count(), rank);
}

TEST(Decompose, SingularValuesNonIncreasing) {
  std::mt19937_64 rng(22);
  const auto ys = lt::random_values(rng, 80);
  const auto dec = decompose(ys, 15, 0.9);
  const auto& s = dec.singular_values();
  for (Eigen::Index k = 1; k < s.size(); ++k) EXPECT_LE(s(k), s(k - 1));
  for (Eigen::Index k = 0; k < s.size(); ++k) EXPECT_GE(s(k), 0.0);
}

TEST(Decompose, RetainedCountIsMonotoneInTarget) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ys = lt::gaussian_values(rng, 100, 1.0);
    std::size_t prev = 0;
    for (double target = 0.05; target <= 1.0 + 1e-12; target += 0.05) {
      const auto r = decompose(ys, 15, std::min(target, 1.0)).retained_count();
      EXPECT_GE(r, prev);
      EXPECT_GE(r, 1u);
      prev = r;
    }
  }
}

TEST(Decompose, InvalidTarget) {
  const std::vector<double> ys(10, 1.0);
  EXPECT_THROW((void)decompose(ys, 3, 0.0), Error);
  EXPECT_THROW((void)decompose(ys, 3, 1.5), Error);
}

TEST(SsaDerivative, FullVarianceEqualsPeDegreeOne) {
  std::mt19937_64 rng(24);
  const auto xs = lt::jittered_grid(rng, 120, 5.0);
  auto ys = lt::gaussian_values(rng, 120, 0.3);
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += std::sin(0.1 * xs[i]);
  const Series s(xs, ys);
  const auto ssa = ssa_derivative(s, 6, 1.0);
  const auto pe = pe_derivative(s, 6, 1);
  EXPECT_EQ(ssa.defined, pe.defined);
  EXPECT_LE(lt::relative_diff(ssa.dys, pe.dys), 1e-8);
}

TEST(SsaDerivative, ConstantSeriesHasZeroSlope) {
  const auto xs = lt::uniform_grid(0, 3, 40);
  const std::vector<double> ys(40, -3.0);
  const auto est = ssa_derivative(Series(xs, ys), 7);
  EXPECT_EQ(est.method, Method::SSA);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (est.defined.contains(i)) {
      EXPECT_NEAR(est.dys[i], 0.0, 1e-12);
    } else {
      EXPECT_TRUE(is_undefined(est.dys[i]));
    }
  }
}

TEST(SsaDerivative, MarginMatchesPe) {
  const auto sig = generate(sinmix_spec(0.1, 1));
  const auto est = ssa_derivative(sig.series, 7);
  EXPECT_EQ(est.left_margin(), 7u);
  EXPECT_EQ(est.right_margin(), 7u);
}

TEST(SsaDerivative, Deterministic) {
  const auto sig = generate(sinmix_spec(0.1, 9));
  const auto a = ssa_derivative(sig.series, 7, 0.99);
  const auto b = ssa_derivative(sig.series, 7, 0.99);
  for (std::size_t i = a.defined.begin; i < a.defined.end; ++i) EXPECT_EQ(a.dys[i], b.dys[i]);
}

TEST(SsaDerivative, TooShort) {
  const auto xs = lt::uniform_grid(0, 1, 8);
  try {
    (void)ssa_derivative(Series(xs, xs), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
  }
}
