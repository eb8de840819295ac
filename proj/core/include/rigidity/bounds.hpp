#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/covering.hpp"
#include "rigidity/sets.hpp"

namespace rigidity {

/// Dimensions and constants of a mapping f : B^n_r -> R^m of class C^d.
struct ProblemParams {
  int n = 1;
  int m = 1;
  int d = 1;
  double r = 1.0;
  /// Entropy constant c(n, d).
  double c = 2.0;

  /// Validates and fills the default c(1, d) = d + 1. For n >= 2 the constant
  /// has no known explicit value and must be supplied.
  static ProblemParams make(int n, int m, int d, double r, std::optional<double> c = std::nullopt);
};

/// Near-criticality thresholds (lambda_1, ..., lambda_m); lambda_0 = 1 is implied.
class LambdaProfile {
 public:
  LambdaProfile() = default;
  explicit LambdaProfile(std::vector<double> lambdas);

  static LambdaProfile zeros(int m) { return LambdaProfile(std::vector<double>(m, 0.0)); }

  const std::vector<double>& values() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  bool all_zero() const noexcept;

 private:
  std::vector<double> lambdas_;
};

/// c * sum_{i=0}^{m} (lambda_0 ... lambda_i) (r/epsilon)^i eta^{(n-i)/d}, where
/// eta is the ratio R_d(f) / epsilon.
double rhs_polynomial(const ProblemParams& p, const LambdaProfile& lambda, double epsilon,
                      double eta);

/// Upper bound on M(epsilon, Delta(f, Lambda)) for a map with Taylor constant
/// `taylor_constant`. Uses the eta = 1 form when epsilon >= R_d.
double forward_upper_bound(const ProblemParams& p, const LambdaProfile& lambda,
                           double taylor_constant, double epsilon);

/// True when nu(epsilon) strictly exceeds the degree-(d-1) baseline, which
/// forces epsilon <= R_d(f).
bool in_E(const ProblemParams& p, const LambdaProfile& lambda, Count nu, double epsilon);

/// Unique eta > 1 with rhs_polynomial(p, lambda, epsilon, eta) == nu.
/// Requires in_E; throws NumericalError when no bracket exists.
double solve_eta(const ProblemParams& p, const LambdaProfile& lambda, Count nu, double epsilon);

struct EtaPoint {
  double epsilon;
  double eta;
  Count nu;
};

struct BoundReport {
  ProblemParams params;
  LambdaProfile lambda;
  /// Probed epsilons (decreasing) that lie in E.
  std::vector<double> e_epsilons;
  std::vector<EtaPoint> eta_curve;
  /// Lower bound for R_d(f); 0 when E is empty on the probed epsilons.
  double gamma = 0.0;
  std::optional<double> gamma_epsilon;
  std::optional<double> epsilon0;
  std::optional<double> gamma_closed_form;
  std::size_t grid_size = 0;

  bool e_empty() const noexcept { return e_epsilons.empty(); }
};

/// gamma = max over probed epsilon in E of epsilon * eta(epsilon): every C^d
/// mapping whose Lambda-near-critical values equal `set` has R_d(f) >= gamma.
///
/// Probes every grid entry. When all lambdas vanish and |set| > c it also
/// probes epsilon0, the left limit of the last step where M >= c + 1, so the
/// result is never weaker than the closed form.
BoundReport rigidity_bound(const ProblemParams& p, const LambdaProfile& lambda,
                           const SetDescriptor& set, std::span<const double> eps_grid);

/// 200 log-spaced points per decade over [1e-6, diameter of set].
std::vector<double> default_eps_grid(const SetDescriptor& set);

/// Largest epsilon with M(epsilon, set) >= c + 1, by bisection (relative 1e-12).
/// The returned value satisfies the inequality. Requires |set| > c and m = 1.
double epsilon0(const SetDescriptor& set, const ProblemParams& p);

/// (1 + 1/c)^{d/n} * epsilon0.
double gamma_closed_form(double epsilon0, const ProblemParams& p);

enum class Verdict { kExcluded, kNotExcludedByThisBound };

struct PowerClassification {
  /// Exponent of epsilon in the lower bound R_d >= C epsilon^e.
  double exponent;
  Verdict verdict;
};

/// e = 1 + d / (n (alpha - 1)); the set {m^alpha} is excluded as a C^d
/// critical-value set when e < 0.
PowerClassification classify_power_sequence(double alpha, const ProblemParams& p);

/// Lower bound on the gradient-vanishing rigidity from a zero-set rigidity bound.
double critical_point_rigidity_reduction(double zero_set_bound, int n);

std::string to_string(Verdict v);

}  // namespace rigidity
