#include "rigidity/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "rigidity/covering.hpp"
#include "rigidity/error.hpp"
#include "rigidity/parallel.hpp"

namespace rigidity {
namespace {

std::size_t checked_count(int n, std::size_t per_axis) {
  std::size_t count = 1;
  for (int k = 0; k < n; ++k) count *= per_axis;
  return count;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

SampledMap::SampledMap(int n, int m, double r, std::size_t per_axis, std::vector<double> values)
    : n_(n), m_(m), r_(r), per_axis_(per_axis), count_(0), h_(0.0), values_(std::move(values)) {
  if (n < 1 || n > 3) throw ParameterError("sampled map: n must be 1, 2 or 3");
  if (m < 1 || m > n) throw ParameterError("sampled map: m must satisfy 1 <= m <= n");
  if (!(r > 0.0)) throw ParameterError("sampled map: radius must be positive");
  if (per_axis < 3) throw ParameterError("sampled map: need at least 3 nodes per axis");
  count_ = checked_count(n, per_axis);
  h_ = 2.0 * r / static_cast<double>(per_axis - 1);
  if (values_.size() != count_ * static_cast<std::size_t>(m)) {
    throw InputError(fmt::format("sampled map: expected {} values, got {}",
                                 count_ * static_cast<std::size_t>(m), values_.size()));
  }
}

SampledMap SampledMap::from_function(int n, int m, double r, std::size_t nodes_per_axis,
                                     const Eval& f) {
  if (n < 1 || n > 3 || m < 1 || nodes_per_axis < 3) {
    throw ParameterError("sampled map: invalid grid shape");
  }
  const std::size_t count = checked_count(n, nodes_per_axis);
  std::vector<double> values(count * static_cast<std::size_t>(m));
  const double h = 2.0 * r / static_cast<double>(nodes_per_axis - 1);
  parallel_for(count, [&](std::size_t node) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::size_t rest = node;
    for (int k = n - 1; k >= 0; --k) {
      x[static_cast<std::size_t>(k)] = -r + h * static_cast<double>(rest % nodes_per_axis);
      rest /= nodes_per_axis;
    }
    f(x, std::span<double>(values).subspan(node * static_cast<std::size_t>(m),
                                           static_cast<std::size_t>(m)));
  });
  return SampledMap(n, m, r, nodes_per_axis, std::move(values));
}

SampledMap SampledMap::from_samples(int n, int m, double r, std::size_t nodes_per_axis,
                                    std::vector<double> values) {
  return SampledMap(n, m, r, nodes_per_axis, std::move(values));
}

std::vector<std::size_t> SampledMap::multi_index(std::size_t node) const {
  std::vector<std::size_t> idx(static_cast<std::size_t>(n_));
  for (int k = n_ - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = node % per_axis_;
    node /= per_axis_;
  }
  return idx;
}

std::size_t SampledMap::flat_index(std::span<const std::size_t> idx) const {
  std::size_t node = 0;
  for (std::size_t i : idx) node = node * per_axis_ + i;
  return node;
}

std::vector<double> SampledMap::coordinates(std::size_t node) const {
  auto idx = multi_index(node);
  std::vector<double> x(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) x[k] = -r_ + h_ * static_cast<double>(idx[k]);
  return x;
}

std::span<const double> SampledMap::value(std::size_t node) const {
  return std::span<const double>(values_).subspan(node * static_cast<std::size_t>(m_),
                                                  static_cast<std::size_t>(m_));
}

bool SampledMap::in_ball(std::size_t node) const {
  if (n_ == 1) return true;
  double s = 0.0;
  for (double x : coordinates(node)) s += x * x;
  return s <= r_ * r_ * (1.0 + 1e-12);
}

std::size_t default_nodes_per_axis(int n) {
  return n <= 2 ? 513 : 129;
}

std::vector<double> jacobian(const SampledMap& map, std::size_t node, BoundaryPolicy policy) {
  const auto n = static_cast<std::size_t>(map.n());
  const auto m = static_cast<std::size_t>(map.m());
  const std::size_t last = map.nodes_per_axis() - 1;
  const double h = map.step();
  auto idx = map.multi_index(node);
  std::vector<double> jac(m * n);
  for (std::size_t axis = 0; axis < n; ++axis) {
    auto at = [&](std::ptrdiff_t offset) {
      auto shifted = idx;
      shifted[axis] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx[axis]) + offset);
      return map.value(map.flat_index(shifted));
    };
    const bool low = idx[axis] == 0;
    const bool high = idx[axis] == last;
    if ((low || high) && policy == BoundaryPolicy::kError) {
      throw ParameterError("semi_axes: boundary node has no central difference");
    }
    for (std::size_t k = 0; k < m; ++k) {
      double d = 0.0;
      if (low) {
        d = (-3.0 * at(0)[k] + 4.0 * at(1)[k] - at(2)[k]) / (2.0 * h);
      } else if (high) {
        d = (3.0 * at(0)[k] - 4.0 * at(-1)[k] + at(-2)[k]) / (2.0 * h);
      } else {
        d = (at(1)[k] - at(-1)[k]) / (2.0 * h);
      }
      jac[k * n + axis] = d;
    }
  }
  return jac;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t k) {
  if (a.size() != k * k) throw ParameterError("symmetric_eigenvalues: size mismatch");
  // Cyclic Jacobi rotations; k <= 3 here so convergence takes a handful of sweeps.
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) off += a[p * k + q] * a[p * k + q];
    }
    if (off == 0.0) break;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = a[p * k + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t j = 0; j < k; ++j) {
          const double apj = a[p * k + j];
          const double aqj = a[q * k + j];
          a[p * k + j] = c * apj - s * aqj;
          a[q * k + j] = s * apj + c * aqj;
        }
        for (std::size_t j = 0; j < k; ++j) {
          const double ajp = a[j * k + p];
          const double ajq = a[j * k + q];
          a[j * k + p] = c * ajp - s * ajq;
          a[j * k + q] = s * ajp + c * ajq;
        }
      }
    }
  }
  std::vector<double> eig(k);
  for (std::size_t i = 0; i < k; ++i) eig[i] = a[i * k + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> semi_axes(const SampledMap& map, std::size_t node, BoundaryPolicy policy) {
  const auto n = static_cast<std::size_t>(map.n());
  const auto m = static_cast<std::size_t>(map.m());
  const auto jac = jacobian(map, node, policy);
  if (m == 1) {
    double s = 0.0;
    for (double v : jac) s += v * v;
    return {std::sqrt(s)};
  }
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += jac[i * n + k] * jac[j * n + k];
      gram[i * m + j] = s;
    }
  }
  auto eig = symmetric_eigenvalues(std::move(gram), m);
  for (double& e : eig) e = std::sqrt(std::max(0.0, e));
  std::sort(eig.begin(), eig.end());
  return eig;
}

NearCriticalSet near_critical_set(const SampledMap& map, const LambdaProfile& lambda,
                                  CriticalOptions options) {
  if (lambda.size() != static_cast<std::size_t>(map.m())) {
    throw ParameterError(fmt::format("lambda profile has {} entries, map has m = {}",
                                     lambda.size(), map.m()));
  }
  const std::size_t count = map.node_count();
  std::vector<char> keep(count, 0);
  std::vector<double> slope_1d;
  const bool one_d = map.n() == 1 && map.m() == 1;
  if (one_d) slope_1d.resize(count);

  parallel_for(count, [&](std::size_t node) {
    if (!map.in_ball(node)) return;
    const auto axes = semi_axes(map, node, options.boundary);
    bool ok = true;
    for (std::size_t i = 0; i < axes.size(); ++i) ok = ok && axes[i] <= lambda.values()[i];
    keep[node] = ok ? 1 : 0;
    if (one_d) slope_1d[node] = jacobian(map, node, options.boundary)[0];
  });

  NearCriticalSet out;
  out.grid_step = map.step();
  if (one_d && options.bracket_sign_changes) {
    for (std::size_t i = 0; i + 1 < count; ++i) {
      const double a = slope_1d[i];
      const double b = slope_1d[i + 1];
      if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
        const std::size_t pick = std::abs(a) <= std::abs(b) ? i : i + 1;
        if (!keep[pick]) {
          keep[pick] = 1;
          ++out.bracketed;
        }
      }
    }
  }
  for (std::size_t node = 0; node < count; ++node) {
    if (!keep[node]) continue;
    out.nodes.push_back(node);
    const auto v = map.value(node);
    out.values.emplace_back(v.begin(), v.end());
  }
  if (!out.values.empty()) {
    out.delta = map.m() == 1 ? SetDescriptor::finite(out.values) : SetDescriptor::cloud(out.values);
  }
  return out;
}

double measure_taylor_constant_fd(const SampledMap& map, int d) {
  if (map.n() != 1) {
    throw ParameterError("finite-difference Taylor constant needs n = 1; supply R_d instead");
  }
  if (d < 1) throw ParameterError("d must be a positive integer");
  const std::size_t count = map.node_count();
  if (count <= static_cast<std::size_t>(d)) {
    throw ParameterError("grid too coarse for the requested derivative order");
  }
  std::vector<double> weights(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) weights[static_cast<std::size_t>(k)] = ((d - k) % 2 ? -1.0 : 1.0) * binomial(d, k);
  const double scale = std::pow(map.step(), d);
  double peak = 0.0;
  for (int comp = 0; comp < map.m(); ++comp) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(d) < count; ++i) {
      double s = 0.0;
      for (int k = 0; k <= d; ++k) s += weights[static_cast<std::size_t>(k)] * map.value(i + static_cast<std::size_t>(k))[static_cast<std::size_t>(comp)];
      peak = std::max(peak, std::abs(s) / scale);
    }
  }
  double factorial = 1.0;
  for (int i = 2; i <= d; ++i) factorial *= i;
  return peak * std::pow(map.radius(), d) / factorial;
}

bool ForwardCheck::all_pass() const noexcept {
  return std::all_of(records.begin(), records.end(), [](const ForwardRecord& r) { return r.pass; });
}

ForwardCheck empirical_forward_check(const SampledMap& map, const LambdaProfile& lambda,
                                     const ProblemParams& p, std::span<const double> eps_grid,
                                     std::optional<double> taylor_constant,
                                     CriticalOptions options) {
  if (p.m != 1 || map.m() != 1) {
    throw ParameterError("empirical_forward_check needs m = 1 (exact covering)");
  }
  if (p.n != map.n()) {
    throw ParameterError(fmt::format("params n = {} but map has n = {}", p.n, map.n()));
  }
  if (eps_grid.empty()) throw ParameterError("empirical_forward_check: empty epsilon grid");

  ForwardCheck out;
  out.grid_step = map.step();
  out.reference_slope = -static_cast<double>(p.n) / p.d;
  if (taylor_constant) {
    if (!(*taylor_constant >= 0.0)) throw ParameterError("R_d must be nonnegative");
    out.taylor_constant = *taylor_constant;
  } else {
    out.taylor_constant = measure_taylor_constant_fd(map, p.d);
    out.taylor_measured = true;
  }
  out.extracted = near_critical_set(map, lambda, options);
  out.delta_empty = out.extracted.empty();

  std::vector<Count> counts(eps_grid.size(), 0);
  if (!out.delta_empty) {
    const auto curve = covering_curve(*out.extracted.delta, eps_grid);
    counts = curve.counts;
  }
  out.records.reserve(eps_grid.size());
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const double eps = eps_grid[i];
    const double bound = forward_upper_bound(p, lambda, out.taylor_constant, eps);
    out.records.push_back({eps, counts[i], bound,
                           eps >= out.taylor_constant ? Regime::kAboveRd : Regime::kBelowRd,
                           static_cast<double>(counts[i]) <= bound});
  }
  out.slope = out.delta_empty ? std::numeric_limits<double>::quiet_NaN()
                              : loglog_slope(eps_grid, counts);
  return out;
}

std::string to_string(Regime r) {
  return r == Regime::kAboveRd ? "above_Rd" : "below_Rd";
}

}  // namespace rigidity
