#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "majorize/experiment.hpp"
#include "majorize/simplex.hpp"

namespace majorize {

enum class FeasibilityStatus { Feasible, Infeasible, InfeasibleNorm };

const char* to_string(FeasibilityStatus s);

// Column-stochastic m x n matrix kept in factored form
//   T(i, j) = weight[i] * core(out_class[i], in_class[j])
// where the core acts between classes of proportional rows. A plain
// dense matrix is the special case of singleton classes.
class StochasticMap {
public:
    StochasticMap() = default;
    StochasticMap(std::size_t m, std::size_t n, std::vector<std::size_t> in_class,
                  std::vector<std::size_t> out_class, std::vector<double> weight,
                  std::size_t core_rows, std::size_t core_cols, std::vector<double> core);
    static StochasticMap from_dense(const std::vector<std::vector<double>>& T);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const {
        return weight_[i] * core_[out_class_[i] * core_cols_ + in_class_[j]];
    }
    std::size_t core_rows() const { return core_rows_; }
    std::size_t core_cols() const { return core_cols_; }

    // Throws ResourceError when m * n exceeds max_entries.
    std::vector<std::vector<double>> dense(std::size_t max_entries = 4'000'000) const;

    // Image of P's rows in P's stored order, as an m x d row-major block.
    std::vector<double> apply(const Experiment& P) const;

    double column_sum_error() const;
    double min_entry() const;

private:
    std::size_t m_ = 0, n_ = 0;
    std::vector<std::size_t> in_class_, out_class_;
    std::vector<double> weight_;
    std::size_t core_rows_ = 0, core_cols_ = 0;
    std::vector<double> core_;
};

struct LpOptions {
    double tol = 1e-9;
    // Merge proportional rows before solving; exact for majorization.
    bool reduce = true;
    std::size_t max_variables = 4'000'000;
    SimplexOptions simplex{};
};

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::Infeasible;
    std::optional<StochasticMap> witness;
    double residual = 0.0;  // max of |TP - Q|, column-sum error, negativity
    double infeasibility = 0.0;
    std::size_t variables = 0;
    std::size_t pivots = 0;
    std::string message;

    bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

// Exact majorization P >= Q: a column-stochastic T with T p^(k) = q^(k).
FeasibilityResult majorizes(const Experiment& P, const Experiment& Q, const LpOptions& opt = {});

double witness_residual(const StochasticMap& T, const Experiment& P, const Experiment& Q);

// Lorenz-curve test p > q after zero padding; totals must agree within tol.
bool vector_majorizes(std::span<const double> p, std::span<const double> q, double tol = 1e-9);

}  // namespace majorize
