#pragma once

// Plain-text density matrix files: first line "n_a n_b"; each further line
// "i j re im" with 0-indexed row-major indices. Unlisted entries are zero,
// blank lines and '#' comments are skipped, and a repeated (i, j) entry
// overwrites the earlier value.

#include <filesystem>
#include <string>

#include "atlas/types.hpp"

namespace atlas {

// Looser than the construction tolerances: hand-written fixtures get
// symmetrized and renormalized, anything beyond these is rejected.
inline constexpr double kStateHermTol = 1e-8;
inline constexpr double kStateTraceTol = 1e-6;

DensityMatrix parse_state_text(const std::string& text);
DensityMatrix load_state_file(const std::filesystem::path& path);

std::string render_state_text(const DensityMatrix& rho);

}  // namespace atlas
