#pragma once

#include "flipdist/convex_core.hpp"

#include <string>

namespace flipdist::cli {

// Spine on a horizontal line; first triangulation's diagonals arc above, second's below.
std::string render_linear_svg(const Triangulation& above, const Triangulation& below);

}  // namespace flipdist::cli
