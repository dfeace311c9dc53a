#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "zmc/core.hpp"

namespace zmc {

using Residuals = std::array<double, 6>;

/// Left-hand sides of the six constraint equations of the system selected by
/// constants.kcase (exponential, trigonometric or quadratic family).
Residuals residuals(const ConstantsTriple& constants);

/// max-norm of residuals().
double residual_norm(const ConstantsTriple& constants);

/// (B1, B2, B3) at (u, v, w = −u−v). With `domains` set, each of u, v, w must lie in
/// the corresponding interval or DomainError is thrown.
std::array<double, 3> residuals_secondary(const ConstantsTriple& constants, double u, double v,
                                          const std::optional<std::array<Interval, 3>>& domains = {});

/// Entries held fixed by solve_from_seed, in the flat order a1..c3.
using FreezeMask = std::array<bool, 9>;

/// Parses a comma separated list such as "b1,c3,b3".
FreezeMask parse_freeze(std::string_view spec);

struct SolveOptions {
    int max_iterations = 200;
    double tolerance = 1e-12;
};

/// Damped minimum-norm Newton on the free entries, starting from `seed`.
/// Requires at least three frozen entries (InvalidFreeze); throws NoConvergence when
/// the iteration budget runs out or the line search stalls.
ConstantsTriple solve_from_seed(const CaseK& kcase, const ConstantsTriple& seed, const FreezeMask& frozen,
                                const SolveOptions& options = {});

/// Constants of the dilated surface λ·S. K̃ = K/λ².
ConstantsTriple rescale(const ConstantsTriple& constants, double lambda);

}  // namespace zmc
