#include <gtest/gtest.h>

#include <cmath>

#include "rigidity/error.hpp"
#include "rigidity/witness.hpp"
#include "test_support.hpp"

namespace rigidity {
namespace {

// Central d-th difference of w at x with step h.
double central_difference(const WitnessFunction& w, double x, int d, double h) {
  double sum = 0;
  for (int j = 0; j <= d; ++j) {
    const double sign = j % 2 ? -1.0 : 1.0;
    sum += sign * testing::binom(d, j) * w(x + (0.5 * d - j) * h);
  }
  return sum / std::pow(h, d);
}

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

TEST(Smoothstep, MatchesClosedForm) {
  for (int d = 1; d <= 10; ++d) {
    const auto s = smoothstep(d);
    const auto expected = testing::smoothstep_closed_form(d);
    ASSERT_EQ(s.coefficients().size(), expected.size()) << "d=" << d;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(s.coefficients()[i], expected[i], 1e-9 * std::max(1.0, std::abs(expected[i])))
          << "d=" << d << " i=" << i;
    }
  }
}

TEST(Smoothstep, EndpointConditionsAndSymmetry) {
  for (int d = 1; d <= 8; ++d) {
    const auto s = smoothstep(d);
    // Evaluating at u = 1 sums large alternating coefficients.
    double mass = 0;
    for (double c : s.coefficients()) mass += std::abs(c);
    EXPECT_EQ(s(0.0), 0.0);
    EXPECT_NEAR(s(1.0), 1.0, 1e-14 * mass);
    EXPECT_NEAR(s(0.5), 0.5, 1e-14 * mass);
    for (int k = 1; k <= d; ++k) {
      EXPECT_EQ(s.derivative_at(0.0, k), 0.0);
      const double scale = mass * std::pow(2.0 * d + 1, k);
      EXPECT_NEAR(s.derivative_at(1.0, k), 0.0, 1e-14 * scale);
    }
    for (double u : {0.1, 0.27, 0.4}) EXPECT_NEAR(s(u) + s(1 - u), 1.0, 1e-10);
  }
  EXPECT_THROW(smoothstep(0), ParameterError);
}

TEST(Witness, TwoPointExample) {
  const std::vector<double> delta{0.0, 1.0};
  const auto w = build_witness(delta, 1, 1.0);
  ASSERT_EQ(w.pieces().size(), 3u);
  EXPECT_DOUBLE_EQ(w.pieces()[0].width(), 0.5);
  EXPECT_DOUBLE_EQ(w.pieces()[1].width(), 1.0);
  EXPECT_DOUBLE_EQ(w.pieces()[2].width(), 0.5);
  EXPECT_NEAR(measure_Rd(w, 1), 1.5, 1e-12);
}

TEST(Witness, ConstantWitnessHasZeroRd) {
  const std::vector<double> delta{0.3};
  const auto w = build_witness(delta, 3, 2.0);
  EXPECT_EQ(w.pieces().size(), 1u);
  EXPECT_EQ(measure_Rd(w, 3), 0.0);
  EXPECT_EQ(w(1.2), 0.3);
}

TEST(Witness, RdScalesLinearlyWithValues) {
  const std::vector<double> delta{0.0, 0.2, 0.9, 1.0};
  const auto base = measure_Rd(build_witness(delta, 3, 1.0), 3);
  for (double a : {0.5, 3.0, 17.0}) {
    std::vector<double> scaled;
    for (double v : delta) scaled.push_back(a * v);
    EXPECT_NEAR(measure_Rd(build_witness(scaled, 3, 1.0), 3), a * base, 1e-12 * a * base);
  }
}

TEST(Witness, CriticalValuesAreExactlyTheSet) {
  auto rng = testing::make_rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto delta = testing::random_points(rng, 2 + trial % 6, -2, 2);
    const int d = 1 + trial % 4;
    const auto w = build_witness(delta, d, 1.0);
    EXPECT_EQ(w.critical_values(), delta);
    // Dense scan: every value with |f'| < 1e-10 belongs to the set, and every
    // set element is attained at such a point.
    std::vector<bool> seen(delta.size(), false);
    const int samples = 20001;
    for (int i = 0; i < samples; ++i) {
      const double x = -1.0 + 2.0 * i / (samples - 1);
      if (std::abs(w.derivative(x, 1)) >= 1e-10) continue;
      const double v = w(x);
      bool member = false;
      for (std::size_t j = 0; j < delta.size(); ++j) {
        if (std::abs(v - delta[j]) <= 1e-12 * std::max(1.0, std::abs(delta[j]))) {
          member = true;
          seen[j] = true;
        }
      }
      EXPECT_TRUE(member) << "x=" << x << " f=" << v;
    }
    for (bool s : seen) EXPECT_TRUE(s);
  }
}

TEST(Witness, JunctionsAreCd) {
  auto rng = testing::make_rng(73);
  for (int d = 1; d <= 6; ++d) {
    const auto delta = testing::random_points(rng, 5, 0, 1);
    const auto w = build_witness(delta, d, 1.0);
    for (std::size_t i = 1; i < w.pieces().size(); ++i) {
      const double x = w.pieces()[i].start;
      for (int k = 0; k <= d; ++k) {
        const double left = w.piece_derivative(i - 1, x, k);
        const double right = w.piece_derivative(i, x, k);
        const double scale = std::max(1.0, std::max(std::abs(left), std::abs(right)));
        EXPECT_LE(std::abs(left - right), 1e-6 * scale) << "d=" << d << " k=" << k;
      }
    }
  }
}

TEST(Witness, FirstDerivativeMatchesFiniteDifferences) {
  const std::vector<double> delta{-0.5, 0.1, 0.3, 1.4};
  const auto w = build_witness(delta, 3, 1.0);
  auto f = [&](double x) { return w(x); };
  for (int i = 1; i < 200; ++i) {
    const double x = -0.99 + 1.98 * i / 200;
    const double fd = testing::fd4(f, x, 1e-4);
    EXPECT_NEAR(fd, w.derivative(x, 1), 1e-6 * std::max(1.0, std::abs(fd))) << x;
  }
}

TEST(Witness, MeasuredRdMatchesFiniteDifferences) {
  auto rng = testing::make_rng(79);
  for (int d = 1; d <= 4; ++d) {
    const auto delta = testing::random_points(rng, 4, 0, 1);
    const auto w = build_witness(delta, d, 1.0);
    double peak = 0;
    for (const auto& piece : w.pieces()) {
      if (piece.plateau) continue;
      const double h = 1e-3 * piece.width();
      for (int i = 0; i <= 2000; ++i) {
        const double x = piece.start + piece.width() * (0.001 + 0.998 * i / 2000);
        peak = std::max(peak, std::abs(central_difference(w, x, d, h)));
      }
    }
    const double fd_rd = peak / factorial(d);
    const double rd = measure_Rd(w, d);
    EXPECT_NEAR(fd_rd, rd, 0.01 * rd) << "d=" << d;
  }
}

TEST(Witness, RejectsBadInput) {
  const std::vector<double> unsorted{1.0, 0.0};
  EXPECT_THROW(build_witness(unsorted, 2, 1.0), ParameterError);
  EXPECT_THROW(build_witness(std::vector<double>{}, 2, 1.0), ParameterError);
  const std::vector<double> ok{0.0, 1.0};
  EXPECT_THROW(build_witness(ok, 2, 1.0, WitnessLayout{0.0}), ParameterError);
  EXPECT_THROW(measure_Rd(build_witness(ok, 2, 1.0), 3), ParameterError);
}

TEST(Witness, LayoutRatioControlsWidths) {
  const std::vector<double> delta{0, 1, 2};
  const auto w = build_witness(delta, 2, 1.0, WitnessLayout{1.0});
  for (const auto& piece : w.pieces()) EXPECT_NEAR(piece.width(), 0.4, 1e-15);
}

TEST(Sandwich, SevenPoints) {
  const std::vector<double> delta{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const auto s = sandwich_check(delta, ProblemParams::make(1, 1, 5, 1.0), LambdaProfile::zeros(1));
  EXPECT_TRUE(s.ok);
  EXPECT_NEAR(s.gamma, 0.05 * 16807.0 / 7776.0, 1e-7);
  EXPECT_GT(s.witness_Rd, s.gamma);
}

TEST(Sandwich, RandomSets) {
  auto rng = testing::make_rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 3;
    const auto delta = testing::random_points(rng, static_cast<std::size_t>(d + 2 + trial % 4), 0, 1);
    const auto s = sandwich_check(delta, ProblemParams::make(1, 1, d, 1.0), LambdaProfile::zeros(1));
    EXPECT_TRUE(s.ok) << "trial " << trial << " gamma=" << s.gamma << " Rd=" << s.witness_Rd;
    EXPECT_GT(s.gamma, 0.0);
  }
}

TEST(Sandwich, RequiresOneDimensionalZeroLambda) {
  const std::vector<double> delta{0.0, 1.0, 2.0};
  EXPECT_THROW(sandwich_check(delta, ProblemParams::make(1, 1, 1, 1.0), LambdaProfile({0.1})),
               ParameterError);
}

}  // namespace
}  // namespace rigidity
