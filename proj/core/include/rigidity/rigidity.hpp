#pragma once

#include "rigidity/bounds.hpp"
#include "rigidity/builtin_maps.hpp"
#include "rigidity/covering.hpp"
#include "rigidity/critical.hpp"
#include "rigidity/error.hpp"
#include "rigidity/parallel.hpp"
#include "rigidity/polynomial.hpp"
#include "rigidity/serialize.hpp"
#include "rigidity/sets.hpp"
#include "rigidity/witness.hpp"
