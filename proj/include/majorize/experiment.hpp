#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace majorize {

// Entries at or below this are zero for support purposes.
inline constexpr double kZeroFloor = 1e-300;

inline bool positive(double x) { return x > kZeroFloor; }

// Sorted, duplicate-free column or row indices (0-based).
using IndexSet = std::vector<std::size_t>;

IndexSet make_index_set(std::vector<std::size_t> idx);
bool is_subset(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);

// n x d nonnegative matrix, columns are (unnormalized) distributions.
// Always stored canonically: exact-zero rows dropped, rows sorted
// lexicographically descending. Two experiments that differ only by a
// row permutation therefore compare equal.
class Experiment {
public:
    Experiment() = default;

    static Experiment from_columns(const std::vector<std::vector<double>>& columns,
                                   std::vector<std::string> labels = {});
    static Experiment from_rows(std::size_t d, const std::vector<std::vector<double>>& rows,
                                std::vector<std::string> labels = {});
    // Row-major data, no validation of labels against d beyond size.
    static Experiment from_flat(std::size_t d, std::vector<double> data,
                                std::vector<std::string> labels = {});

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return d_; }
    bool empty() const { return n_ == 0; }

    double operator()(std::size_t i, std::size_t k) const { return data_[i * d_ + k]; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * d_, d_};
    }
    std::vector<double> column(std::size_t k) const;
    std::vector<std::vector<double>> columns() const;
    const std::vector<double>& data() const { return data_; }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

    // Labels are ignored by comparisons.
    bool operator==(const Experiment& o) const { return d_ == o.d_ && data_ == o.data_; }
    bool approx_equal(const Experiment& o, double tol) const;

private:
    void canonicalize();

    std::size_t d_ = 0;
    std::size_t n_ = 0;
    std::vector<double> data_;
    std::vector<std::string> labels_;
};

enum class Regime { EqualSupports, Dichotomy, DominatingColumn, MinimalRestrictions, Invalid };

const char* to_string(Regime r);
Regime regime_from_string(const std::string& s);

// Dominating-column tags: EqualSupports, Dichotomy, DominatingColumn.
bool is_dominating(Regime r);

IndexSet support(std::span<const double> v);
IndexSet column_support(const Experiment& P, std::size_t k);
// Rows where every column in C is positive.
IndexSet common_support(const Experiment& P, const IndexSet& C);

bool is_semiring_member(const Experiment& P);
bool is_dichotomy(const Experiment& P, double tol = 1e-9);
Regime classify_regime(const Experiment& P, double tol = 1e-9);

std::vector<double> column_norms(const Experiment& P);
bool unit_norm(const Experiment& P, double tol = 1e-9);
Experiment normalized(const Experiment& P);
Experiment scaled(const Experiment& P, double c);

// Zero outside S, no renormalization.
std::vector<double> restrict(std::span<const double> v, const IndexSet& S);

Experiment box_plus(const Experiment& P, const Experiment& Q);
Experiment box_times(const Experiment& P, const Experiment& Q);

inline constexpr std::size_t kDefaultRowCap = 20000;
Experiment tensor_power(const Experiment& P, unsigned m, std::size_t row_cap = kDefaultRowCap);
// One row of ones: the unit for box_times.
Experiment unit_experiment(std::size_t d);

}  // namespace majorize
