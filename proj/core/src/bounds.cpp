#include "rigidity/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "rigidity/error.hpp"
#include "rigidity/parallel.hpp"

namespace rigidity {
namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxBisection = 200;
constexpr int kMaxDoublings = 1000;

void check_lambda(const ProblemParams& p, const LambdaProfile& lambda) {
  if (lambda.size() != static_cast<std::size_t>(p.m)) {
    throw ParameterError(fmt::format("lambda profile has {} entries, expected m = {}",
                                     lambda.size(), p.m));
  }
}

}  // namespace

ProblemParams ProblemParams::make(int n, int m, int d, double r, std::optional<double> c) {
  if (n < 1) throw ParameterError("n must be a positive integer");
  if (m < 1 || m > n) throw ParameterError("m must satisfy 1 <= m <= n");
  if (d < 1) throw ParameterError("d must be a positive integer");
  if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("r must be positive");
  ProblemParams p{n, m, d, r, 0.0};
  if (c) {
    if (!(*c > 0.0) || !std::isfinite(*c)) throw ParameterError("c must be positive");
    p.c = *c;
  } else if (n == 1) {
    p.c = d + 1.0;
  } else {
    throw ParameterError("c(n, d) has no default for n >= 2; supply it explicitly");
  }
  return p;
}

LambdaProfile::LambdaProfile(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    if (!(lambdas_[i] >= 0.0) || !std::isfinite(lambdas_[i])) {
      throw ParameterError("lambda thresholds must be finite and nonnegative");
    }
    if (i > 0 && lambdas_[i] < lambdas_[i - 1]) {
      throw ParameterError("lambda thresholds must be nondecreasing");
    }
  }
}

bool LambdaProfile::all_zero() const noexcept {
  return std::all_of(lambdas_.begin(), lambdas_.end(), [](double v) { return v == 0.0; });
}

double rhs_polynomial(const ProblemParams& p, const LambdaProfile& lambda, double epsilon,
                      double eta) {
  check_lambda(p, lambda);
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(eta >= 1.0)) throw ParameterError("eta must be at least 1");
  const double scale = p.r / epsilon;
  double weight = 1.0;  // lambda_0 * ... * lambda_i
  double sum = 0.0;
  for (int i = 0; i <= p.m; ++i) {
    if (i > 0) weight *= lambda.values()[i - 1];
    if (weight == 0.0) break;
    sum += weight * std::pow(scale, i) * std::pow(eta, static_cast<double>(p.n - i) / p.d);
  }
  return p.c * sum;
}

double forward_upper_bound(const ProblemParams& p, const LambdaProfile& lambda,
                           double taylor_constant, double epsilon) {
  if (!(taylor_constant >= 0.0)) throw ParameterError("R_d must be nonnegative");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  const double eta = epsilon >= taylor_constant ? 1.0 : taylor_constant / epsilon;
  return rhs_polynomial(p, lambda, epsilon, eta);
}

bool in_E(const ProblemParams& p, const LambdaProfile& lambda, Count nu, double epsilon) {
  if (nu < 1) throw ParameterError("nu must be at least 1");
  return static_cast<double>(nu) > rhs_polynomial(p, lambda, epsilon, 1.0);
}

double solve_eta(const ProblemParams& p, const LambdaProfile& lambda, Count nu, double epsilon) {
  const double target = static_cast<double>(nu);
  if (!in_E(p, lambda, nu, epsilon)) {
    throw ParameterError(fmt::format("solve_eta: epsilon {:.17g} with nu = {} is not in E",
                                     epsilon, nu));
  }
  auto f = [&](double eta) { return rhs_polynomial(p, lambda, epsilon, eta); };

  double lo = 1.0;
  double hi = 2.0;
  int doublings = 0;
  while (f(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > kMaxDoublings) {
      throw NumericalError("solve_eta: no bracket within 1000 doublings (degenerate parameters)");
    }
  }
  for (int it = 0; it < kMaxBisection && hi - lo > kRelTol * lo; ++it) {
    // Geometric midpoints while the bracket spans many octaves.
    const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double epsilon0(const SetDescriptor& set, const ProblemParams& p) {
  if (set.dimension() != 1) {
    throw ParameterError("epsilon0 needs an exactly coverable set (m = 1)");
  }
  const double threshold = p.c + 1.0;
  const auto card = set.cardinality();
  if (card && static_cast<double>(*card) < threshold) {
    throw ParameterError(fmt::format("epsilon0: set has {} points, needs at least c + 1 = {}",
                                     *card, threshold));
  }
  auto enough = [&](double eps) {
    return static_cast<double>(covering_number(set, eps)) >= threshold;
  };

  double hi = set.diameter();
  double lo = 0.0;
  if (card) {
    lo = min_gap(set) / 4.0;
  } else {
    lo = hi / 4.0;
    for (int k = 0; !enough(lo); ++k) {
      if (k > kMaxBisection) throw NumericalError("epsilon0: no epsilon reaches c + 1 balls");
      hi = lo;
      lo /= 2.0;
    }
  }
  for (int it = 0; it < kMaxBisection && hi - lo > kRelTol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (enough(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<double> default_eps_grid(const SetDescriptor& set) {
  constexpr double kFloor = 1e-6;
  const double top = set.diameter();
  if (!(top > kFloor)) return {kFloor};
  return log_grid(kFloor, top, 200);
}

double gamma_closed_form(double eps0, const ProblemParams& p) {
  if (!(eps0 > 0.0)) throw ParameterError("epsilon0 must be positive");
  return std::pow(1.0 + 1.0 / p.c, static_cast<double>(p.d) / p.n) * eps0;
}

BoundReport rigidity_bound(const ProblemParams& p, const LambdaProfile& lambda,
                           const SetDescriptor& set, std::span<const double> eps_grid) {
  check_lambda(p, lambda);
  if (eps_grid.empty()) throw ParameterError("rigidity_bound: empty epsilon grid");
  if (p.m != 1 || set.dimension() != 1) {
    throw ParameterError(
        "rigidity_bound needs exact covering numbers; only m = 1 sets qualify "
        "(box-count estimates are upper bounds and would be unsound here)");
  }
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))) {
      throw ParameterError("rigidity_bound: grid must be positive and strictly decreasing");
    }
  }

  BoundReport report;
  report.params = p;
  report.lambda = lambda;
  report.grid_size = eps_grid.size();

  const auto card = set.cardinality();
  if (!card || static_cast<double>(*card) >= p.c + 1.0) {
    report.epsilon0 = epsilon0(set, p);
    if (lambda.all_zero()) report.gamma_closed_form = gamma_closed_form(*report.epsilon0, p);
  }

  std::vector<double> probes(eps_grid.begin(), eps_grid.end());
  if (report.gamma_closed_form) probes.push_back(*report.epsilon0);
  std::sort(probes.begin(), probes.end(), std::greater<>());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  const CoveringCurve nu = covering_curve(set, probes);
  std::vector<std::optional<double>> etas(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    if (in_E(p, lambda, nu.counts[i], probes[i])) {
      etas[i] = solve_eta(p, lambda, nu.counts[i], probes[i]);
    }
  });

  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!etas[i]) continue;
    report.e_epsilons.push_back(probes[i]);
    report.eta_curve.push_back({probes[i], *etas[i], nu.counts[i]});
    const double product = probes[i] * *etas[i];
    if (product > report.gamma) {
      report.gamma = product;
      report.gamma_epsilon = probes[i];
    }
  }
  return report;
}

PowerClassification classify_power_sequence(double alpha, const ProblemParams& p) {
  if (!(alpha < 0.0)) throw ParameterError("alpha must be negative");
  const double exponent = 1.0 + p.d / (p.n * (alpha - 1.0));
  return {exponent, exponent < 0.0 ? Verdict::kExcluded : Verdict::kNotExcludedByThisBound};
}

double critical_point_rigidity_reduction(double zero_set_bound, int n) {
  if (!(zero_set_bound >= 0.0)) throw ParameterError("zero-set bound must be nonnegative");
  if (n < 1) throw ParameterError("n must be a positive integer");
  return zero_set_bound / std::sqrt(static_cast<double>(n));
}

std::string to_string(Verdict v) {
  return v == Verdict::kExcluded ? "Excluded" : "NotExcludedByThisBound";
}

}  // namespace rigidity
