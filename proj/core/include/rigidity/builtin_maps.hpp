#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/critical.hpp"
#include "rigidity/polynomial.hpp"

namespace rigidity {

/// A named analytic test map with its Taylor constant where known in closed form.
struct BuiltinMap {
  std::string name;
  std::string description;
  int n = 1;
  int m = 1;
  SampledMap::Eval eval;
  /// R_d(f) on the ball of radius r, if exactly computable.
  std::function<std::optional<double>(int d, double r)> taylor_constant;

  SampledMap sample(double r, std::size_t nodes_per_axis) const;
};

/// Names accepted by builtin_map(), sorted.
std::vector<std::string> builtin_map_names();

/// Throws InputError for unknown names.
BuiltinMap builtin_map(const std::string& name);

/// Degree-`degree` polynomial with independent standard normal coefficients.
Polynomial random_polynomial(std::size_t degree, std::uint64_t seed);

/// Wraps a univariate polynomial as an n = m = 1 map with exact R_d.
BuiltinMap polynomial_map(std::string name, Polynomial p);

}  // namespace rigidity
