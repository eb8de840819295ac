#pragma once

#include <string>
#include <string_view>

#include "rigidity/bounds.hpp"
#include "rigidity/critical.hpp"
#include "rigidity/sets.hpp"
#include "rigidity/witness.hpp"

namespace rigidity {

// Set descriptors:
//   {"type":"finite","points":[...]}
//   {"type":"power","alpha":-1.0,"count":100000}   (count optional: untruncated)
//   {"type":"cloud","points":[[...],...]}
// Points are arrays of m numbers; bare numbers are accepted for m = 1.
// Syntax and schema problems raise InputError, invalid values ParameterError.
SetDescriptor parse_set_descriptor(std::string_view json);
std::string to_json(const SetDescriptor& set);

/// {"gamma", "epsilon0", "gamma_closed_form", "eta_curve": [[eps, eta], ...], "params", ...}
std::string to_json(const BoundReport& report);
/// CSV "epsilon,eta,product".
std::string eta_curve_csv(const BoundReport& report);

std::string to_json(const PowerClassification& c, double alpha, const ProblemParams& p);

/// Piecewise-polynomial description: radius, order, smoothstep coefficients, pieces.
std::string to_json(const WitnessFunction& w);
/// CSV "x,f,f1,...,fd" on `samples` equally spaced points of [-r, r].
std::string witness_samples_csv(const WitnessFunction& w, std::size_t samples);

std::string to_json(const SandwichResult& s);

/// CSV "epsilon,measured,bound,regime,pass".
std::string forward_check_csv(const ForwardCheck& check);

/// Reads a grid dump with header "x1,...,xn,f1,...,fm" covering [-r, r]^n on a
/// regular grid. n and m come from the header; r from the extreme coordinates.
SampledMap parse_grid_csv(std::string_view csv);

}  // namespace rigidity
