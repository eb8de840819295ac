#include "rigidity/builtin_maps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "rigidity/error.hpp"

namespace rigidity {
namespace {

constexpr std::uint64_t kPoly10Seed = 20240917;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::optional<double> no_closed_form(int, double) { return std::nullopt; }

std::map<std::string, std::function<BuiltinMap()>> registry() {
  std::map<std::string, std::function<BuiltinMap()>> r;
  r["parabola1d"] = [] { return polynomial_map("parabola1d", Polynomial({0.0, 0.0, 1.0})); };
  r["linear"] = [] { return polynomial_map("linear", Polynomial({0.0, 1.0})); };
  r["constant"] = [] { return polynomial_map("constant", Polynomial({0.5})); };
  r["poly10"] = [] { return polynomial_map("poly10", random_polynomial(10, kPoly10Seed)); };
  r["paraboloid2d"] = [] {
    BuiltinMap m;
    m.name = "paraboloid2d";
    m.description = "f(x, y) = x^2 + y^2";
    m.n = 2;
    m.m = 1;
    m.eval = [](std::span<const double> x, std::span<double> out) {
      out[0] = x[0] * x[0] + x[1] * x[1];
    };
    // Second derivative is 2 * identity; higher derivatives vanish.
    m.taylor_constant = [](int d, double r) -> std::optional<double> {
      if (d == 1) return 2.0 * r * r;
      if (d == 2) return r * r;
      return 0.0;
    };
    return m;
  };
  r["linear2d"] = [] {
    BuiltinMap m;
    m.name = "linear2d";
    m.description = "f(x, y) = (2x + y, x - y)";
    m.n = 2;
    m.m = 2;
    m.eval = [](std::span<const double> x, std::span<double> out) {
      out[0] = 2.0 * x[0] + x[1];
      out[1] = x[0] - x[1];
    };
    m.taylor_constant = no_closed_form;
    return m;
  };
  r["fold2d"] = [] {
    BuiltinMap m;
    m.name = "fold2d";
    m.description = "f(x, y) = (x, y^2)";
    m.n = 2;
    m.m = 2;
    m.eval = [](std::span<const double> x, std::span<double> out) {
      out[0] = x[0];
      out[1] = x[1] * x[1];
    };
    m.taylor_constant = no_closed_form;
    return m;
  };
  return r;
}

}  // namespace

SampledMap BuiltinMap::sample(double r, std::size_t nodes_per_axis) const {
  return SampledMap::from_function(n, m, r, nodes_per_axis, eval);
}

std::vector<std::string> builtin_map_names() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

BuiltinMap builtin_map(const std::string& name) {
  const auto reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw InputError("unknown built-in map '" + name + "'");
  return it->second();
}

Polynomial random_polynomial(std::size_t degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeffs(degree + 1);
  for (double& c : coeffs) c = normal(rng);
  if (coeffs.back() == 0.0) coeffs.back() = 1.0;
  return Polynomial(std::move(coeffs));
}

BuiltinMap polynomial_map(std::string name, Polynomial p) {
  BuiltinMap m;
  m.name = std::move(name);
  m.description = "univariate polynomial of degree " + std::to_string(p.degree());
  m.n = 1;
  m.m = 1;
  m.eval = [p](std::span<const double> x, std::span<double> out) { out[0] = p(x[0]); };
  m.taylor_constant = [p](int d, double r) -> std::optional<double> {
    if (d < 1) return std::nullopt;
    const Polynomial dp = p.derivative(static_cast<std::size_t>(d));
    if (dp.degree() == 0) return std::abs(dp(0.0)) * std::pow(r, d) / factorial(d);
    return max_abs_on_interval(dp, -r, r) * std::pow(r, d) / factorial(d);
  };
  return m;
}

}  // namespace rigidity
