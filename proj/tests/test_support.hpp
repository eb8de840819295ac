#pragma once

// Independent reference routines for tests. Nothing here calls the library
// code path it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace rigidity::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> random_points(std::mt19937_64& rng, std::size_t count, double lo,
                                         double hi) {
  std::vector<double> v(count);
  for (double& x : v) x = uniform(rng, lo, hi);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Top-down greedy written against a plain list (largest first) followed by
// the solid interval [0, tail]. Used to cross-check the index-based power
// sequence covering.
inline std::uint64_t naive_cover_desc_with_tail(const std::vector<double>& desc, double tail,
                                                double eps) {
  std::uint64_t count = 0;
  double covered_down_to = INFINITY;
  for (double p : desc) {
    if (p >= covered_down_to) continue;
    if (p <= tail) break;
    ++count;
    covered_down_to = p - 2 * eps;
  }
  // Anything left lies in [0, min(tail, covered_down_to)).
  const double top = std::min(tail, covered_down_to);
  if (top > 0 || (top == 0 && tail < covered_down_to)) {
    count += std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(top / (2 * eps))));
  }
  return count;
}

inline double binom(int n, int k) {
  double b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Closed-form smoothstep S_d(u) = u^{d+1} sum_{k=0}^{d} C(d+k, k) C(2d+1, d-k) (-u)^k,
// expanded to monomial coefficients.
inline std::vector<double> smoothstep_closed_form(int d) {
  std::vector<double> c(2 * d + 2, 0.0);
  for (int k = 0; k <= d; ++k) {
    c[d + 1 + k] = binom(d + k, k) * binom(2 * d + 1, d - k) * (k % 2 ? -1.0 : 1.0);
  }
  return c;
}

// Central-difference d-th derivative from samples of g (5-point for first order).
template <typename F>
double fd4(const F& g, double x, double h) {
  return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

}  // namespace rigidity::testing
