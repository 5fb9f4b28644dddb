#pragma once

#include <string>
#include <vector>

#include "boxmesh/function.hpp"

namespace boxmesh {

/**
 * Registry of target functions with analytic derivatives and modulus.
 *
 *   quad-elliptic  sum x_i^2                              (k = d only)
 *   quad-saddle    sum_{i<k} x_i^2 - sum_{i>=k} x_i^2
 *   exp-elliptic   sum e^{x_i}                            (k = d only)
 *   exp-saddle     sum_{i<k} e^{x_i} - sum_{i>=k} e^{x_i}
 *   exp-steep      sum e^{2 x_i}                          (k = d only)
 *
 * Throws ArgumentError for unknown names or a signature the family cannot
 * carry.
 */
TargetFunction make_builtin(const std::string& name, Signature sig);

/// "one" (Omega = 1) or "linear" (Omega = 1 + x_1 / 2).
WeightFunction make_weight(const std::string& name);

std::vector<std::string> builtin_names();
std::vector<std::string> weight_names();

/// True when the family only exists with k = d.
bool builtin_is_definite(const std::string& name);

}  // namespace boxmesh
