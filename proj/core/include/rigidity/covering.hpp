#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rigidity/sets.hpp"

namespace rigidity {

/// Covering numbers use closed balls of radius epsilon; in R^1 a ball is an
/// interval of length 2 * epsilon and a point at distance exactly 2 * epsilon
/// from the anchor is covered.
using Count = std::uint64_t;

/// nu(epsilon) sampled on a decreasing epsilon grid.
struct CoveringCurve {
  std::vector<double> epsilons;
  std::vector<Count> counts;
  /// False when counts are box-count upper estimates (m >= 2 clouds).
  bool exact = true;
};

/// Minimal number of radius-epsilon closed intervals covering `sorted_points`.
/// Left-to-right greedy, which is optimal in one dimension.
Count covering_number_1d(std::span<const double> sorted_points, double epsilon);

/// Exact covering number of the full set {m^alpha : m >= 1} (closure includes 0).
/// Requires alpha < 0 and 0 < epsilon < 1.
Count covering_number_power(double alpha, double epsilon);

/// Covering number of the tail-completed truncation {m^alpha : m <= count} U [0, count^alpha].
Count covering_number_power_truncated(double alpha, std::uint64_t count, double epsilon);

/// Points and a solid interval [0, tail] covered together by the top-down greedy.
/// `points_desc` must be sorted in decreasing order.
Count covering_number_with_tail(std::span<const double> points_desc, double tail, double epsilon);

/// Upper estimate of M(epsilon, S) for a cloud in R^m: the number of occupied
/// grid cells of side 2 * epsilon / sqrt(m), each of which fits in one ball.
Count box_count_upper_estimate(std::span<const Point> points, double epsilon);

/// Exact covering number of a set for the m = 1 families; throws for m >= 2.
Count covering_number(const SetDescriptor& set, double epsilon);

/// Per-epsilon counts on a strictly decreasing positive grid. Exact for m = 1,
/// box-count estimates (exact = false) otherwise. Runs grid entries in parallel.
CoveringCurve covering_curve(const SetDescriptor& set, std::span<const double> eps_grid);

/// Exhaustive minimal cover for at most 12 points. Test oracle only.
Count brute_force_covering_oracle(std::span<const double> points, double epsilon);

/// Log-spaced decreasing grid from eps_max down to eps_min with the given density.
std::vector<double> log_grid(double eps_min, double eps_max, int points_per_decade);

/// Least-squares slope of log(count) against log(epsilon), skipping zero counts.
double loglog_slope(std::span<const double> epsilons, std::span<const Count> counts);

/// CSV with header "epsilon,count".
std::string to_csv(const CoveringCurve& curve);

}  // namespace rigidity
