#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rigidity/bounds.hpp"
#include "rigidity/sets.hpp"

namespace rigidity {

/// Samples of a map f : [-r, r]^n -> R^m on a regular grid with
/// `nodes_per_axis` nodes per axis (n <= 3). Nodes are stored row-major with
/// the last axis fastest; each node holds m consecutive values.
class SampledMap {
 public:
  using Eval = std::function<void(std::span<const double> x, std::span<double> out)>;

  static SampledMap from_function(int n, int m, double r, std::size_t nodes_per_axis,
                                  const Eval& f);
  static SampledMap from_samples(int n, int m, double r, std::size_t nodes_per_axis,
                                 std::vector<double> values);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  double radius() const noexcept { return r_; }
  std::size_t nodes_per_axis() const noexcept { return per_axis_; }
  std::size_t node_count() const noexcept { return count_; }
  double step() const noexcept { return h_; }

  std::vector<std::size_t> multi_index(std::size_t node) const;
  std::size_t flat_index(std::span<const std::size_t> idx) const;
  std::vector<double> coordinates(std::size_t node) const;
  std::span<const double> value(std::size_t node) const;
  bool in_ball(std::size_t node) const;

 private:
  SampledMap(int n, int m, double r, std::size_t per_axis, std::vector<double> values);

  int n_;
  int m_;
  double r_;
  std::size_t per_axis_;
  std::size_t count_;
  double h_;
  std::vector<double> values_;
};

/// Grid step r/256 per axis for n <= 2 and r/64 for n = 3, as node counts.
std::size_t default_nodes_per_axis(int n);

enum class BoundaryPolicy {
  /// Boundary nodes are an error: central differences are unavailable.
  kError,
  /// Second-order one-sided differences at boundary nodes.
  kOneSided,
};

/// Central-difference Jacobian (m x n, row-major) at a grid node.
std::vector<double> jacobian(const SampledMap& map, std::size_t node,
                             BoundaryPolicy policy = BoundaryPolicy::kError);

/// Ascending singular values of the finite-difference Jacobian at `node`:
/// the semi-axes lambda_1(x) <= ... <= lambda_m(x) of df(x)(B^n).
std::vector<double> semi_axes(const SampledMap& map, std::size_t node,
                              BoundaryPolicy policy = BoundaryPolicy::kError);

/// Eigenvalues of a small symmetric matrix (row-major, size k x k), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t k);

struct CriticalOptions {
  BoundaryPolicy boundary = BoundaryPolicy::kOneSided;
  /// For n = m = 1: also keep the node of smaller |f'| in each grid cell where
  /// f' changes sign, so exact critical points between nodes are not lost.
  bool bracket_sign_changes = true;
};

struct NearCriticalSet {
  std::vector<std::size_t> nodes;
  std::vector<Point> values;
  /// FinitePoints for m = 1, SampledCloud otherwise; empty when no node qualifies.
  std::optional<SetDescriptor> delta;
  std::size_t bracketed = 0;
  double grid_step = 0.0;

  bool empty() const noexcept { return nodes.empty(); }
};

/// Nodes in the closed ball with lambda_i(x) <= lambda_i for every i, and their values.
NearCriticalSet near_critical_set(const SampledMap& map, const LambdaProfile& lambda,
                                  CriticalOptions options = {});

/// Taylor constant of a sampled n = 1 map from d-th order finite differences.
double measure_taylor_constant_fd(const SampledMap& map, int d);

enum class Regime { kAboveRd, kBelowRd };

struct ForwardRecord {
  double epsilon;
  Count measured;
  double bound;
  Regime regime;
  bool pass;
};

struct ForwardCheck {
  std::vector<ForwardRecord> records;
  double taylor_constant = 0.0;
  bool taylor_measured = false;
  /// Fitted d log M / d log epsilon; NaN when fewer than two nonzero counts.
  double slope = 0.0;
  /// -n/d, the exponent of the second-regime bound.
  double reference_slope = 0.0;
  bool delta_empty = false;
  double grid_step = 0.0;
  NearCriticalSet extracted;

  bool all_pass() const noexcept;
};

/// Compares exact covering numbers of the extracted near-critical values with
/// forward_upper_bound on every epsilon. Requires m = 1. R_d is measured by
/// finite differences when not supplied (n = 1 only).
ForwardCheck empirical_forward_check(const SampledMap& map, const LambdaProfile& lambda,
                                     const ProblemParams& p, std::span<const double> eps_grid,
                                     std::optional<double> taylor_constant = std::nullopt,
                                     CriticalOptions options = {});

std::string to_string(Regime r);

}  // namespace rigidity
