#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lpimod/syntax.hpp"

namespace lpimod {

// The stock systems: lambda-arrow, lambda-2, lambda-P, lambda-C, HOL,
// U-minus. Order is stable for listings.
const std::vector<std::pair<std::string, Specification>>& builtin_specs();
const Specification* find_builtin(const std::string& name);

}  // namespace lpimod
