#pragma once

#include <cstddef>
#include <vector>

#include "majorize/experiment.hpp"

namespace majorize {

// Row `row` separates column k from column k2: u_row^(k) > 0, u_row^(k2) = 0.
// row is absent (npos) when no such row exists.
struct SupportEvidence {
    std::size_t k;
    std::size_t k2;
    std::size_t row;
    bool satisfied;
};

struct PowerUniversalReport {
    bool is_power_universal = false;
    Regime regime = Regime::Invalid;
    std::vector<SupportEvidence> witness_pairs;
};

inline constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

PowerUniversalReport classify_minimal(const Experiment& U, double tol = 1e-9);
PowerUniversalReport classify_dominating(const Experiment& U, double tol = 1e-9);

// Same question answered through the distinguished homomorphisms:
// Phi < 1 on the finite sub-family for the chosen regime.
bool homomorphism_criterion(const Experiment& U, bool dominating, double tie_tol = 1e-9);

}  // namespace majorize
