#include "rigidity/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>

#include "rigidity/error.hpp"
#include "rigidity/parallel.hpp"

namespace rigidity {
namespace {

// Beyond this index consecutive terms of a power sequence are closer than
// double resolution; the remainder is covered as the solid interval it is
// numerically indistinguishable from.
constexpr double kExactIndexLimit = 4503599627370496.0;  // 2^52

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be a finite positive number");
  }
}

Count interval_count(double length, double epsilon) {
  const double q = std::ceil(length / (2.0 * epsilon));
  return std::max<Count>(1, static_cast<Count>(q));
}

// Smallest index k > current with k^alpha < lower (0 < lower < current^alpha).
double next_index_below(double alpha, double lower, double current) {
  const double guess = std::floor(std::pow(lower, 1.0 / alpha)) + 1.0;
  if (!(guess < kExactIndexLimit)) return std::numeric_limits<double>::infinity();
  double k = std::max(guess, current + 1.0);
  while (k > current + 1.0 && std::pow(k - 1.0, alpha) < lower) k -= 1.0;
  while (std::pow(k, alpha) >= lower) k += 1.0;
  return k;
}

// Top-down greedy over {m^alpha : m <= limit} U [0, limit^alpha].
Count greedy_power(double alpha, double limit, double epsilon) {
  Count count = 0;
  double index = 1.0;
  double top = 1.0;
  for (;;) {
    ++count;
    const double lower = top - 2.0 * epsilon;
    if (lower <= 0.0) return count;
    const double next = next_index_below(alpha, lower, index);
    if (next > limit) {
      // Every listed term is covered; what is left is the tail interval [0, lower).
      return count + interval_count(lower, epsilon);
    }
    index = next;
    top = std::pow(index, alpha);
  }
}

void check_power_args(double alpha, double epsilon) {
  if (!(alpha < 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("power sequence: alpha must be negative");
  }
  check_epsilon(epsilon);
  if (!(epsilon < 1.0)) {
    throw ParameterError("power sequence covering: epsilon must lie in (0, 1)");
  }
}

}  // namespace

Count covering_number_1d(std::span<const double> sorted_points, double epsilon) {
  if (sorted_points.empty()) {
    throw ParameterError("covering_number_1d: empty point list");
  }
  check_epsilon(epsilon);
  const double width = 2.0 * epsilon;
  Count count = 0;
  std::size_t i = 0;
  while (i < sorted_points.size()) {
    const double anchor = sorted_points[i];
    ++count;
    while (i < sorted_points.size() && sorted_points[i] - anchor <= width) ++i;
  }
  return count;
}

Count covering_number_power(double alpha, double epsilon) {
  check_power_args(alpha, epsilon);
  return greedy_power(alpha, kExactIndexLimit, epsilon);
}

Count covering_number_power_truncated(double alpha, std::uint64_t count, double epsilon) {
  check_power_args(alpha, epsilon);
  if (count < 2) {
    throw ParameterError("power sequence: count must be at least 2");
  }
  return greedy_power(alpha, std::min(static_cast<double>(count), kExactIndexLimit), epsilon);
}

Count covering_number_with_tail(std::span<const double> points_desc, double tail, double epsilon) {
  check_epsilon(epsilon);
  if (!(tail >= 0.0)) {
    throw ParameterError("covering_number_with_tail: tail must be nonnegative");
  }
  const double width = 2.0 * epsilon;
  Count count = 0;
  double lower = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  for (;;) {
    while (i < points_desc.size() && points_desc[i] >= lower) ++i;
    // Uncovered part of the tail: [0, tail] if untouched, else [0, lower).
    const bool tail_untouched = tail < lower;
    const bool tail_left = tail_untouched || lower > 0.0;
    const double tail_top = tail_untouched ? tail : lower;
    if (tail_left && (i == points_desc.size() || tail_top >= points_desc[i])) {
      return count + interval_count(tail_top, epsilon);
    }
    if (i == points_desc.size()) return count;
    ++count;
    lower = points_desc[i] - width;
  }
}

Count box_count_upper_estimate(std::span<const Point> points, double epsilon) {
  check_epsilon(epsilon);
  if (points.empty()) return 0;
  const std::size_t m = points.front().size();
  const double side = 2.0 * epsilon / std::sqrt(static_cast<double>(m));
  std::set<std::vector<long long>> cells;
  std::vector<long long> key(m);
  for (const auto& p : points) {
    for (std::size_t k = 0; k < m; ++k) {
      key[k] = static_cast<long long>(std::floor(p[k] / side));
    }
    cells.insert(key);
  }
  return cells.size();
}

Count covering_number(const SetDescriptor& set, double epsilon) {
  if (const auto* ps = std::get_if<PowerSequence>(&set.variant())) {
    // A radius of at least 1/2 covers the closure [0, 1] with one ball.
    if (epsilon >= 0.5) {
      check_epsilon(epsilon);
      return 1;
    }
    return ps->count ? covering_number_power_truncated(ps->alpha, *ps->count, epsilon)
                     : covering_number_power(ps->alpha, epsilon);
  }
  if (set.dimension() != 1) {
    throw ParameterError("exact covering numbers are available only for m = 1");
  }
  const auto values = set.values_1d();
  return covering_number_1d(values, epsilon);
}

CoveringCurve covering_curve(const SetDescriptor& set, std::span<const double> eps_grid) {
  if (eps_grid.empty()) {
    throw ParameterError("covering_curve: empty epsilon grid");
  }
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    check_epsilon(eps_grid[i]);
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) {
      throw ParameterError("covering_curve: epsilon grid must be strictly decreasing");
    }
  }
  CoveringCurve curve;
  curve.epsilons.assign(eps_grid.begin(), eps_grid.end());
  curve.counts.resize(eps_grid.size());
  curve.exact = set.is_power() || set.dimension() == 1;

  if (curve.exact) {
    // Sort once; covering_number would re-extract the values per entry.
    std::vector<double> values;
    if (!set.is_power()) values = set.values_1d();
    parallel_for(eps_grid.size(), [&](std::size_t i) {
      curve.counts[i] = set.is_power() ? covering_number(set, eps_grid[i])
                                       : covering_number_1d(values, eps_grid[i]);
    });
    for (std::size_t i = 1; i < curve.counts.size(); ++i) {
      if (curve.counts[i] < curve.counts[i - 1]) {
        throw NumericalError(fmt::format(
            "covering_curve: count decreased from {} to {} at epsilon {:.17g}",
            curve.counts[i - 1], curve.counts[i], curve.epsilons[i]));
      }
    }
  } else {
    const auto& pts = std::get_if<FinitePoints>(&set.variant())
                          ? std::get<FinitePoints>(set.variant()).points
                          : std::get<SampledCloud>(set.variant()).points;
    parallel_for(eps_grid.size(), [&](std::size_t i) {
      curve.counts[i] = box_count_upper_estimate(pts, eps_grid[i]);
    });
  }
  return curve;
}

Count brute_force_covering_oracle(std::span<const double> points, double epsilon) {
  if (points.empty()) {
    throw ParameterError("oracle: empty point list");
  }
  if (points.size() > 12) {
    throw ParameterError("oracle: at most 12 points");
  }
  check_epsilon(epsilon);
  // Any optimal cover can slide each interval right until its left end hits a
  // point, so candidates are [p_i, p_i + 2 epsilon].
  const std::size_t n = points.size();
  std::vector<unsigned> covers(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (points[j] >= points[i] && points[j] - points[i] <= 2.0 * epsilon) covers[i] |= 1u << j;
    }
  }
  const unsigned all = (1u << n) - 1u;
  Count best = n;
  for (unsigned subset = 1; subset <= all; ++subset) {
    const auto size = static_cast<Count>(__builtin_popcount(subset));
    if (size >= best) continue;
    unsigned covered = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (subset & (1u << i)) covered |= covers[i];
    }
    if (covered == all) best = size;
  }
  return best;
}

std::vector<double> log_grid(double eps_min, double eps_max, int points_per_decade) {
  if (!(eps_min > 0.0) || !(eps_max >= eps_min) || !std::isfinite(eps_max)) {
    throw ParameterError("log_grid: need 0 < eps_min <= eps_max");
  }
  if (points_per_decade < 1) {
    throw ParameterError("log_grid: points per decade must be positive");
  }
  if (eps_min == eps_max) return {eps_max};
  const double decades = std::log10(eps_max / eps_min);
  const auto steps = std::max(1L, std::lround(decades * points_per_decade));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) {
    grid.push_back(eps_max * std::pow(eps_min / eps_max, static_cast<double>(k) / steps));
  }
  grid.back() = eps_min;
  return grid;
}

double loglog_slope(std::span<const double> epsilons, std::span<const Count> counts) {
  if (epsilons.size() != counts.size()) {
    throw ParameterError("loglog_slope: size mismatch");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (counts[i] == 0) continue;
    const double x = std::log(epsilons[i]);
    const double y = std::log(static_cast<double>(counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

std::string to_csv(const CoveringCurve& curve) {
  std::string out = "epsilon,count\n";
  for (std::size_t i = 0; i < curve.epsilons.size(); ++i) {
    out += fmt::format("{:.17g},{}\n", curve.epsilons[i], curve.counts[i]);
  }
  return out;
}

}  // namespace rigidity
