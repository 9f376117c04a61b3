#ifndef FEDLAB_LINALG_HPP
#define FEDLAB_LINALG_HPP

#include <optional>
#include <vector>

#include <fedlab/scalar.hpp>

namespace fedlab
{

using QMatrix = std::vector<std::vector<GaussQ>>;

// Exact Gauss-Jordan solve of A x = b; free variables are set to zero.
// Returns nullopt when the system is inconsistent.
std::optional<std::vector<GaussQ>> solve_exact(QMatrix a, std::vector<GaussQ> b);

QMatrix invert_exact(const QMatrix &a);

} // namespace fedlab

#endif
