#pragma once

#include <cstddef>
#include <vector>

namespace majorize {

// Constraint matrix in compressed-column form.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<std::size_t> col_start{0};
    std::vector<std::size_t> row_index;
    std::vector<double> value;

    std::size_t cols() const { return col_start.size() - 1; }
    void push_column(const std::vector<std::pair<std::size_t, double>>& entries);
};

enum class PivotRule { Bland, Dantzig };

struct SimplexOptions {
    double reduced_cost_tol = 1e-11;
    double pivot_tol = 1e-9;
    // Dantzig falls back to Bland's rule while degenerate pivots stall.
    PivotRule rule = PivotRule::Dantzig;
    std::size_t refactor_every = 50;
    std::size_t max_pivots = 5'000'000;
};

struct Phase1Result {
    bool converged = false;
    double infeasibility = 0.0;  // sum of artificials at termination
    std::vector<double> x;       // structural variables
    std::size_t pivots = 0;
};

// Minimizes the sum of artificial variables for A x = b, x >= 0.
// Rows with negative b are negated internally.
Phase1Result solve_phase1(const SparseMatrix& A, std::vector<double> b,
                          const SimplexOptions& opt = {});

}  // namespace majorize
