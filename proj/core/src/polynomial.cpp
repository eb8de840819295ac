#include "rigidity/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "rigidity/error.hpp"

namespace rigidity {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative(std::size_t k) const {
  if (k >= coeffs_.size()) return Polynomial({0.0});
  std::vector<double> out(coeffs_.size() - k);
  for (std::size_t i = k; i < coeffs_.size(); ++i) {
    double factor = 1.0;
    for (std::size_t j = 0; j < k; ++j) factor *= static_cast<double>(i - j);
    out[i - k] = coeffs_[i] * factor;
  }
  return Polynomial(std::move(out));
}

double Polynomial::derivative_at(double x, std::size_t k) const noexcept {
  if (k >= coeffs_.size()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > k;) {
    double factor = 1.0;
    for (std::size_t j = 0; j < k; ++j) factor *= static_cast<double>(i - j);
    acc = acc * x + coeffs_[i] * factor;
  }
  return acc;
}

double max_abs_on_interval(const Polynomial& p, double a, double b, std::size_t samples) {
  if (!(b > a)) throw ParameterError("max_abs_on_interval: need a < b");
  samples = std::max<std::size_t>(samples, 2);
  const Polynomial dp = p.derivative();
  const double step = (b - a) / static_cast<double>(samples - 1);
  double best = std::max(std::abs(p(a)), std::abs(p(b)));
  double x_prev = a;
  double d_prev = dp(a);
  for (std::size_t i = 1; i < samples; ++i) {
    const double x = i + 1 == samples ? b : a + step * static_cast<double>(i);
    const double dx = dp(x);
    best = std::max(best, std::abs(p(x)));
    if ((d_prev < 0.0 && dx > 0.0) || (d_prev > 0.0 && dx < 0.0)) {
      double lo = x_prev;
      double hi = x;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((dp(mid) > 0.0) == (d_prev > 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      best = std::max(best, std::abs(p(0.5 * (lo + hi))));
    }
    x_prev = x;
    d_prev = dx;
  }
  return best;
}

}  // namespace rigidity
