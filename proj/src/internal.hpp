#pragma once

// Helpers shared between translation units of the library; not installed.

#include "steklov/mode_solver.hpp"

namespace steklov::detail {

void check_radial_problem(const ReducedModeProblem& problem);

}  // namespace steklov::detail
