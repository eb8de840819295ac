#include "rigidity/witness.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <fmt/format.h>

#include "rigidity/error.hpp"

namespace rigidity {
namespace {

constexpr double kSandwichSlack = 1e-9;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// k! / (k - j)!, zero when j > k.
long double falling(int k, int j) {
  if (j > k) return 0.0L;
  long double f = 1.0L;
  for (int i = 0; i < j; ++i) f *= static_cast<long double>(k - i);
  return f;
}

}  // namespace

Polynomial smoothstep(int d) {
  if (d < 1) throw ParameterError("smoothstep: order must be at least 1");
  if (d > 10) {
    std::clog << "warning: smoothstep order " << d
              << " exceeds 10; the Hermite system is ill-conditioned\n";
  }
  // Conditions at 0 force a_0 = ... = a_d = 0. The conditions at 1 give a
  // (d+1)x(d+1) system for a_{d+1}, ..., a_{2d+1}:
  //   sum_k a_k k!/(k-j)! = [j == 0],  j = 0..d.
  const int size = d + 1;
  std::vector<std::vector<long double>> system(size, std::vector<long double>(size));
  std::vector<long double> rhs(size, 0.0L);
  for (int j = 0; j < size; ++j) {
    for (int col = 0; col < size; ++col) system[j][col] = falling(d + 1 + col, j);
  }
  rhs[0] = 1.0L;

  // LU with partial pivoting, then a few rounds of iterative refinement.
  auto lu = system;
  std::vector<int> perm(size);
  for (int i = 0; i < size; ++i) perm[i] = i;
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    for (int row = col + 1; row < size; ++row) {
      if (std::fabs(lu[row][col]) > std::fabs(lu[pivot][col])) pivot = row;
    }
    std::swap(lu[col], lu[pivot]);
    std::swap(perm[col], perm[pivot]);
    for (int row = col + 1; row < size; ++row) {
      lu[row][col] /= lu[col][col];
      for (int k = col + 1; k < size; ++k) lu[row][k] -= lu[row][col] * lu[col][k];
    }
  }
  auto solve = [&](const std::vector<long double>& b) {
    std::vector<long double> x(size);
    for (int i = 0; i < size; ++i) {
      x[i] = b[perm[i]];
      for (int k = 0; k < i; ++k) x[i] -= lu[i][k] * x[k];
    }
    for (int i = size - 1; i >= 0; --i) {
      for (int k = i + 1; k < size; ++k) x[i] -= lu[i][k] * x[k];
      x[i] /= lu[i][i];
    }
    return x;
  };
  auto x = solve(rhs);
  for (int iter = 0; iter < 4; ++iter) {
    std::vector<long double> residual(size);
    for (int j = 0; j < size; ++j) {
      long double acc = rhs[j];
      for (int col = 0; col < size; ++col) acc -= system[j][col] * x[col];
      residual[j] = acc;
    }
    const auto dx = solve(residual);
    for (int i = 0; i < size; ++i) x[i] += dx[i];
  }
  std::vector<double> coeffs(2 * d + 2, 0.0);
  for (int col = 0; col < size; ++col) coeffs[d + 1 + col] = static_cast<double>(x[col]);
  return Polynomial(std::move(coeffs));
}

WitnessFunction::WitnessFunction(double r, int order, std::vector<WitnessPiece> pieces)
    : r_(r), order_(order), pieces_(std::move(pieces)), step_(smoothstep(order)) {
  if (!(r > 0.0)) throw ParameterError("witness: radius must be positive");
  if (pieces_.empty()) throw ParameterError("witness: no pieces");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].end > pieces_[i].start)) {
      throw ParameterError("witness: pieces must have positive width");
    }
    if (i > 0 && pieces_[i].start != pieces_[i - 1].end) {
      throw ParameterError("witness: pieces must be contiguous");
    }
  }
}

std::vector<double> WitnessFunction::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].start);
  return out;
}

double WitnessFunction::piece_derivative(std::size_t i, double x, int k) const {
  const WitnessPiece& piece = pieces_.at(i);
  if (piece.plateau) return k == 0 ? piece.from : 0.0;
  const double h = piece.width();
  const double u = (x - piece.start) / h;
  const double jump = piece.to - piece.from;
  // s(u) = 1 - s(1 - u); evaluating near 0 avoids cancellation in the
  // large alternating coefficients.
  if (u > 0.5) {
    const double v = 1.0 - u;
    if (k == 0) return piece.to - jump * step_(v);
    const double sign = k % 2 ? 1.0 : -1.0;
    return sign * jump * step_.derivative_at(v, static_cast<std::size_t>(k)) / std::pow(h, k);
  }
  if (k == 0) return piece.from + jump * step_(u);
  return jump * step_.derivative_at(u, static_cast<std::size_t>(k)) / std::pow(h, k);
}

double WitnessFunction::derivative(double x, int k) const {
  if (k < 0) throw ParameterError("witness: negative derivative order");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const WitnessPiece& p) { return v < p.end; });
  const std::size_t i = it == pieces_.end() ? pieces_.size() - 1
                                            : static_cast<std::size_t>(it - pieces_.begin());
  return piece_derivative(i, x, k);
}

std::vector<double> WitnessFunction::critical_values() const {
  std::vector<double> out;
  for (const auto& p : pieces_) {
    if (p.plateau) out.push_back(p.from);
  }
  return out;
}

WitnessFunction build_witness(std::span<const double> delta, int d, double r,
                              WitnessLayout layout) {
  if (delta.empty()) throw ParameterError("build_witness: empty value set");
  if (!(layout.plateau_to_transition > 0.0)) {
    throw ParameterError("build_witness: plateau to transition ratio must be positive");
  }
  for (std::size_t i = 1; i < delta.size(); ++i) {
    if (!(delta[i] > delta[i - 1])) {
      throw ParameterError("build_witness: values must be sorted and distinct");
    }
  }
  const auto k = static_cast<double>(delta.size());
  const double plateau = 2.0 * r / (k + (k - 1.0) / layout.plateau_to_transition);
  const double transition = plateau / layout.plateau_to_transition;

  std::vector<WitnessPiece> pieces;
  double x = -r;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const bool last = i + 1 == delta.size();
    const double end = last ? r : x + plateau;
    pieces.push_back({x, end, true, delta[i], delta[i]});
    x = end;
    if (!last) {
      const double t_end = x + transition;
      pieces.push_back({x, t_end, false, delta[i], delta[i + 1]});
      x = t_end;
    }
  }
  return WitnessFunction(r, d, std::move(pieces));
}

double measure_Rd(const WitnessFunction& w, int d) {
  if (d < 1 || d > w.order()) {
    throw ParameterError(fmt::format("measure_Rd: order {} outside 1..{}", d, w.order()));
  }
  const double step_peak =
      max_abs_on_interval(w.step().derivative(static_cast<std::size_t>(d)), 0.0, 1.0, 10000);
  double peak = 0.0;
  for (const auto& piece : w.pieces()) {
    if (piece.plateau) continue;
    peak = std::max(peak, std::abs(piece.to - piece.from) / std::pow(piece.width(), d) * step_peak);
  }
  return peak * std::pow(w.radius(), d) / factorial(d);
}

SandwichResult sandwich_check(std::span<const double> delta, const ProblemParams& p,
                              const LambdaProfile& lambda, std::span<const double> eps_grid,
                              WitnessLayout layout) {
  if (p.n != 1 || p.m != 1) throw ParameterError("sandwich_check: needs n = m = 1");
  if (!lambda.all_zero()) throw ParameterError("sandwich_check: lambda must be zero");
  const auto set = SetDescriptor::finite(std::vector<double>(delta.begin(), delta.end()));
  const auto values = set.values_1d();

  SandwichResult out;
  out.report = rigidity_bound(p, lambda, set, eps_grid);
  out.gamma = out.report.gamma;
  out.witness_Rd = measure_Rd(build_witness(values, p.d, p.r, layout), p.d);
  out.ok = out.gamma <= out.witness_Rd + kSandwichSlack;
  return out;
}

SandwichResult sandwich_check(std::span<const double> delta, const ProblemParams& p,
                              const LambdaProfile& lambda) {
  const auto set = SetDescriptor::finite(std::vector<double>(delta.begin(), delta.end()));
  const auto grid = default_eps_grid(set);
  return sandwich_check(delta, p, lambda, grid);
}

}  // namespace rigidity
