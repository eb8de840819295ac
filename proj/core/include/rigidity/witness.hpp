#pragma once

#include <span>
#include <vector>

#include "rigidity/bounds.hpp"
#include "rigidity/polynomial.hpp"

namespace rigidity {

/// Degree-(2d+1) polynomial with s(0) = 0, s(1) = 1 and derivatives 1..d
/// vanishing at both ends.
Polynomial smoothstep(int d);

/// One segment of a witness on [start, end]: constant `from` when `plateau`,
/// otherwise from + (to - from) * s((x - start) / (end - start)).
struct WitnessPiece {
  double start;
  double end;
  bool plateau;
  double from;
  double to;

  double width() const noexcept { return end - start; }
};

/// A C^d staircase on [-r, r] whose interior critical values are exactly the
/// plateau values.
class WitnessFunction {
 public:
  WitnessFunction(double r, int order, std::vector<WitnessPiece> pieces);

  double radius() const noexcept { return r_; }
  int order() const noexcept { return order_; }
  const std::vector<WitnessPiece>& pieces() const noexcept { return pieces_; }
  const Polynomial& step() const noexcept { return step_; }

  /// Interior junctions between consecutive pieces.
  std::vector<double> breakpoints() const;

  /// k-th derivative at x in [-r, r].
  double derivative(double x, int k = 0) const;
  double operator()(double x) const { return derivative(x, 0); }

  /// k-th derivative of piece `i` evaluated at x, which may lie on the piece
  /// boundary. Used for one-sided limits at junctions.
  double piece_derivative(std::size_t i, double x, int k) const;

  /// The plateau values, i.e. the critical values by construction.
  std::vector<double> critical_values() const;

 private:
  double r_;
  int order_;
  std::vector<WitnessPiece> pieces_;
  Polynomial step_;
};

struct WitnessLayout {
  /// Plateau width divided by transition width.
  double plateau_to_transition = 0.5;
};

/// Monotone staircase through the sorted distinct values of `delta`: k equal
/// plateaus and k - 1 equal transitions filling [-r, r].
WitnessFunction build_witness(std::span<const double> delta, int d, double r,
                              WitnessLayout layout = {});

/// R_d = max |f^(d)| * r^d / d!, evaluated per transition piece.
double measure_Rd(const WitnessFunction& w, int d);

struct SandwichResult {
  double gamma = 0.0;
  double witness_Rd = 0.0;
  bool ok = false;
  BoundReport report;
};

/// Lower bound gamma from rigidity_bound next to R_d of an explicit witness with
/// the same critical values; ok iff gamma <= witness_Rd + 1e-9.
SandwichResult sandwich_check(std::span<const double> delta, const ProblemParams& p,
                              const LambdaProfile& lambda, std::span<const double> eps_grid,
                              WitnessLayout layout = {});

/// Same, with the default grid for the set.
SandwichResult sandwich_check(std::span<const double> delta, const ProblemParams& p,
                              const LambdaProfile& lambda);

}  // namespace rigidity
