#include "rigidity/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rigidity/error.hpp"

namespace rigidity {
namespace {

void check_points(const std::vector<Point>& points, const char* what) {
  if (points.empty()) {
    throw ParameterError(std::string(what) + ": point list is empty");
  }
  const std::size_t m = points.front().size();
  if (m == 0) {
    throw ParameterError(std::string(what) + ": points must have at least one coordinate");
  }
  for (const auto& p : points) {
    if (p.size() != m) {
      throw ParameterError(std::string(what) + ": points have inconsistent dimensions");
    }
    for (double x : p) {
      if (!std::isfinite(x)) {
        throw ParameterError(std::string(what) + ": non-finite coordinate");
      }
    }
  }
}

void sort_dedup(std::vector<Point>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

// Number of terms m^alpha >= cutoff, i.e. m <= cutoff^(1/alpha).
std::uint64_t terms_above(double alpha, double cutoff, std::uint64_t limit) {
  if (cutoff > 1.0) return 0;
  const double bound = std::pow(cutoff, 1.0 / alpha);
  if (!(bound < static_cast<double>(limit))) return limit;
  auto k = static_cast<std::uint64_t>(std::floor(bound));
  while (k + 1 <= limit && std::pow(static_cast<double>(k + 1), alpha) >= cutoff) ++k;
  while (k > 0 && std::pow(static_cast<double>(k), alpha) < cutoff) --k;
  return k;
}

}  // namespace

SetDescriptor SetDescriptor::finite(std::vector<Point> points) {
  check_points(points, "finite set");
  sort_dedup(points);
  return SetDescriptor(FinitePoints{std::move(points)});
}

SetDescriptor SetDescriptor::finite(const std::vector<double>& values) {
  std::vector<Point> points;
  points.reserve(values.size());
  for (double v : values) points.push_back(Point{v});
  return finite(std::move(points));
}

SetDescriptor SetDescriptor::power(double alpha, std::optional<std::uint64_t> count) {
  if (!(alpha < 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("power sequence: alpha must be a finite negative number");
  }
  if (count && *count < 2) {
    throw ParameterError("power sequence: count must be at least 2");
  }
  return SetDescriptor(PowerSequence{alpha, count});
}

SetDescriptor SetDescriptor::cloud(std::vector<Point> points) {
  check_points(points, "sampled cloud");
  sort_dedup(points);
  return SetDescriptor(SampledCloud{std::move(points)});
}

std::size_t SetDescriptor::dimension() const noexcept {
  if (const auto* f = std::get_if<FinitePoints>(&value_)) return f->points.front().size();
  if (const auto* c = std::get_if<SampledCloud>(&value_)) return c->points.front().size();
  return 1;
}

std::optional<std::size_t> SetDescriptor::cardinality() const noexcept {
  if (const auto* f = std::get_if<FinitePoints>(&value_)) return f->points.size();
  if (const auto* c = std::get_if<SampledCloud>(&value_)) return c->points.size();
  return std::nullopt;
}

std::vector<double> SetDescriptor::values_1d() const {
  if (is_power()) {
    throw ParameterError("power sequences have no finite value list");
  }
  if (dimension() != 1) {
    throw ParameterError("expected a one-dimensional set, got m = " + std::to_string(dimension()));
  }
  const auto& pts = is_finite() ? std::get<FinitePoints>(value_).points
                                : std::get<SampledCloud>(value_).points;
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p[0]);
  return out;  // already sorted: lexicographic order on 1-vectors
}

double SetDescriptor::diameter() const {
  if (is_power()) return 1.0;  // closure is {0} together with terms in (0, 1]
  const auto& pts = is_finite() ? std::get<FinitePoints>(value_).points
                                : std::get<SampledCloud>(value_).points;
  if (dimension() == 1) return pts.back()[0] - pts.front()[0];
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        const double t = pts[i][k] - pts[j][k];
        s += t * t;
      }
      best = std::max(best, s);
    }
  }
  return std::sqrt(best);
}

Materialized materialize(const SetDescriptor& s, double tail_cutoff) {
  if (!(tail_cutoff > 0.0)) {
    throw ParameterError("materialize: tail cutoff must be positive");
  }
  if (const auto* f = std::get_if<FinitePoints>(&s.variant())) return {f->points, std::nullopt};
  if (const auto* c = std::get_if<SampledCloud>(&s.variant())) return {c->points, std::nullopt};

  const auto& ps = std::get<PowerSequence>(s.variant());
  const std::uint64_t limit = ps.count.value_or(std::numeric_limits<std::uint64_t>::max());
  const std::uint64_t k = terms_above(ps.alpha, tail_cutoff, limit);
  if (k > kMaxMaterializedPoints) {
    throw ParameterError("materialize: cutoff would generate " + std::to_string(k) +
                         " points (limit 1e8)");
  }
  Materialized out;
  out.points.reserve(k + 1);
  for (std::uint64_t i = 1; i <= k; ++i) {
    out.points.push_back(Point{std::pow(static_cast<double>(i), ps.alpha)});
  }
  out.points.push_back(Point{tail_cutoff});
  out.tail_marker = tail_cutoff;
  return out;
}

double min_gap(const SetDescriptor& s) {
  if (s.is_power()) {
    throw ParameterError("min_gap: gaps of a power sequence accumulate at 0");
  }
  const auto v = s.values_1d();
  if (v.size() < 2) {
    throw ParameterError("min_gap: need at least two points");
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) gap = std::min(gap, v[i] - v[i - 1]);
  return gap;
}

}  // namespace rigidity
