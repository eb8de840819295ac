#pragma once

#include <cstddef>
#include <vector>

namespace rigidity {

/// Dense univariate polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  double operator()(double x) const noexcept;

  /// k-th derivative as a new polynomial.
  Polynomial derivative(std::size_t k = 1) const;

  /// Evaluates the k-th derivative at x without building it.
  double derivative_at(double x, std::size_t k) const noexcept;

 private:
  std::vector<double> coeffs_;
};

/// Maximum of |p| on [a, b]: dense sampling with `samples` points, then each
/// sign change of p' between samples is refined by bisection.
double max_abs_on_interval(const Polynomial& p, double a, double b, std::size_t samples = 10000);

}  // namespace rigidity
