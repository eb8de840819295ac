#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace rigidity {

/// A point in value space R^m.
using Point = std::vector<double>;

/// Hard cap on how many points a power sequence may materialize.
inline constexpr std::uint64_t kMaxMaterializedPoints = 100'000'000;

/// Finite point set; stored sorted lexicographically with exact duplicates removed.
struct FinitePoints {
  std::vector<Point> points;
};

/// The sequence {1, 2^alpha, 3^alpha, ...} with alpha < 0, accumulating at 0.
///
/// `count` truncates the sequence after N terms. The residual tail is the
/// interval [0, N^alpha], which covering routines treat as a solid interval.
/// Without a count the sequence is the full infinite set.
struct PowerSequence {
  double alpha = -1.0;
  std::optional<std::uint64_t> count;
};

/// Point cloud measured from a sampled map (provenance "extracted").
struct SampledCloud {
  std::vector<Point> points;
};

/// A value set Delta whose covering numbers drive the bounds.
///
/// Always constructed through the factories, which validate and normalize.
class SetDescriptor {
 public:
  using Variant = std::variant<FinitePoints, PowerSequence, SampledCloud>;

  static SetDescriptor finite(std::vector<Point> points);
  static SetDescriptor finite(const std::vector<double>& values);
  static SetDescriptor power(double alpha, std::optional<std::uint64_t> count = std::nullopt);
  static SetDescriptor cloud(std::vector<Point> points);

  const Variant& variant() const noexcept { return value_; }

  bool is_finite() const noexcept { return std::holds_alternative<FinitePoints>(value_); }
  bool is_power() const noexcept { return std::holds_alternative<PowerSequence>(value_); }
  bool is_cloud() const noexcept { return std::holds_alternative<SampledCloud>(value_); }

  /// Dimension m of the ambient value space.
  std::size_t dimension() const noexcept;

  /// Number of points, or nullopt for the (tail-completed) power sequence,
  /// which is infinite.
  std::optional<std::size_t> cardinality() const noexcept;

  /// Sorted coordinates of a one-dimensional finite set or cloud.
  /// Throws ParameterError for power sequences and m != 1.
  std::vector<double> values_1d() const;

  /// Largest distance between two points of the set (closure for power sequences).
  double diameter() const;

 private:
  explicit SetDescriptor(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

/// Result of materializing a set at a tail cutoff.
struct Materialized {
  std::vector<Point> points;
  /// Power sequences only: the cutoff below which terms were not listed.
  std::optional<double> tail_marker;
};

/// Lists the points of `s`. Finite sets and clouds come back as stored; a
/// power sequence yields every term >= tail_cutoff plus the cutoff itself as
/// the tail marker.
Materialized materialize(const SetDescriptor& s, double tail_cutoff);

/// Smallest distance between consecutive points of a one-dimensional set.
double min_gap(const SetDescriptor& s);

}  // namespace rigidity
