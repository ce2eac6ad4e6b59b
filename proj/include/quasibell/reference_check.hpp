#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quasibell/exactla.hpp"

namespace quasibell {

/// Published structural facts about the fixed constraint matrix.
struct ReferenceFixtures {
    std::size_t rank = 0;
    RatVector kernel;                   // spans the right null space
    std::vector<RatVector> left_kernel; // spans the left null space
    RatMatrix pseudoinverse;            // 8 x 10
};

/// rank 7, kernel (-1,1,1,-1,1,-1,-1,1), three left-kernel vectors and the
/// 80 pseudoinverse entries, as printed.
ReferenceFixtures published_fixtures();

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;
    bool all_passed() const;
};

/// Recomputes rank, null space, left null space and pseudoinverse of the
/// constraint matrix from scratch and compares them with `fixtures`
/// (exact rational equality). Pseudoinverse mismatches are listed 1-based.
CheckReport run_reference_check(const ReferenceFixtures& fixtures = published_fixtures());

}  // namespace quasibell
