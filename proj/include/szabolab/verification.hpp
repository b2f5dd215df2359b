#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "szabolab/catalog.hpp"
#include "szabolab/riemext.hpp"

namespace szabolab {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

/// Full battery of golden checks over the built-in connection corpus and the
/// generic families: displayed-component matches, constraint-system
/// comparisons, the two family equivalence/sufficiency results, product
/// stability, the cotangent-extension checks, and the operator identities
/// with numeric spot checks.
std::vector<CheckResult> run_verification_suite(std::uint64_t seed, int samples);

/// Exact evaluation of the operator at a random rational point and direction,
/// followed by root extraction from the (exact) characteristic polynomial of
/// the evaluated constant matrix. Nilpotent evaluations report exactly zero.
double max_abs_eigenvalue_at_random_point(const SzaboMatrix& s, Rng& rng);

}  // namespace szabolab
