#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpt/testspace.hpp"

namespace gpt {

/// Built-in models addressable by name from the CLI and tests:
///   firefly — the triangular three-chamber box, three overlapping tests
///   gbit    — two disjoint two-outcome tests, full square state space
///   square  — Example-style primed labels {x,x'},{y,y'}
///   pyramid — {{u,x,v},{v,y,w}}, the square-based pyramid
///   ds3     — rows and columns of 3×3, the Birkhoff polytope
std::optional<Model> fixture(const std::string& name);

std::vector<std::string> fixture_names();

}  // namespace gpt
