#pragma once

#include <optional>
#include <string>
#include <vector>

#include "majorize/experiment.hpp"
#include "majorize/feasibility.hpp"

namespace majorize {

// R = (1/(n+1)) (+)_{l=0..n} Q^{x l} x P^{x (n-l)}, blocks kept separately.
struct Catalyst {
    unsigned n = 0;
    std::vector<Experiment> blocks;  // block l, already scaled by 1/(n+1)
    Experiment experiment;
};

Catalyst build_catalyst(const Experiment& P, const Experiment& Q, unsigned n,
                        std::size_t row_cap = kDefaultRowCap);

enum class SearchKind { LargeSample, Catalytic };
const char* to_string(SearchKind k);

struct CatalystSearchResult {
    SearchKind kind = SearchKind::LargeSample;
    std::optional<unsigned> n_found;
    std::optional<StochasticMap> witness;
    double residual = 0.0;
    unsigned checked_up_to = 0;
    std::string notice;  // set when a row or variable cap stopped the sweep
};

struct SearchOptions {
    unsigned n_max = 8;
    std::size_t row_cap = kDefaultRowCap;
    LpOptions lp{};
};

// Smallest n in [1, n_max] with P^{x n} >= Q^{x n}.
CatalystSearchResult find_large_sample_n(const Experiment& P, const Experiment& Q,
                                         const SearchOptions& opt = {});
// Smallest n in [0, n_max] with R x P >= R x Q for R = build_catalyst(P, Q, n).
CatalystSearchResult find_catalytic_n(const Experiment& P, const Experiment& Q,
                                      const SearchOptions& opt = {});

struct PerturbedOutput {
    Experiment experiment;
    std::vector<double> l1_shift;  // ||q^(k) - q_eps^(k)||_1 per column
};

// Q_eps = (1 - eps/2) Q + (eps/2) W with every column of W equal to w.
// Without an anchor w is uniform over the rows of Q.
PerturbedOutput perturb_output(const Experiment& Q, double epsilon,
                               const std::optional<std::vector<double>>& anchor = std::nullopt);

// Anchor at the last column, which then stays exactly fixed.
PerturbedOutput perturb_output_anchored(const Experiment& Q, double epsilon);

}  // namespace majorize
