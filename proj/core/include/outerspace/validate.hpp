#pragma once

#include <string>
#include <vector>

#include "outerspace/experiments.hpp"

namespace outerspace {

// Frozen critical values and reference constants used by the checks.
inline constexpr double kChi2Crit99Dof001 = 134.64161685578915;  // dof=99, alpha=0.01
inline constexpr double kChi2Crit3Dof001 = 11.344866730144373;   // dof=3,  alpha=0.01
// Closed forms: mean distance of two uniform points on the unit square,
// (2 + sqrt 2 + 5 asinh 1) / 15, and on the side-2 flat torus,
// 2 * (sqrt 2 + asinh 1) / 6.
inline constexpr double kUnitSquareMeanDistance = 0.5214054331647207;
inline constexpr double kTorus2MeanDistance = 0.7651957164642127;

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string details;
};

/// The property suite behind the `validate` command: fair-mapping and torus
/// metric invariants, adjacency brute-force equivalence, traffic uniformity,
/// greedy loop-freedom/monotonicity, and the torus-vs-square symmetry
/// contrast. Deterministic under the seed.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

/// Chi-square statistic of observed counts against a uniform expectation.
double chi_square_uniform(std::span<const std::uint64_t> counts, std::uint64_t total);

}  // namespace outerspace
