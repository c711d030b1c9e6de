#include "majorize/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorize/errors.hpp"

namespace majorize {

const char* to_string(FeasibilityStatus s) {
    switch (s) {
        case FeasibilityStatus::Feasible: return "FEASIBLE";
        case FeasibilityStatus::Infeasible: return "INFEASIBLE";
        case FeasibilityStatus::InfeasibleNorm: return "INFEASIBLE_NORM";
    }
    return "INFEASIBLE";
}

StochasticMap::StochasticMap(std::size_t m, std::size_t n, std::vector<std::size_t> in_class,
                             std::vector<std::size_t> out_class, std::vector<double> weight,
                             std::size_t core_rows, std::size_t core_cols, std::vector<double> core)
    : m_(m), n_(n), in_class_(std::move(in_class)), out_class_(std::move(out_class)),
      weight_(std::move(weight)), core_rows_(core_rows), core_cols_(core_cols),
      core_(std::move(core)) {
    if (in_class_.size() != n_ || out_class_.size() != m_ || weight_.size() != m_ ||
        core_.size() != core_rows_ * core_cols_)
        throw DimensionError("inconsistent stochastic map");
    for (auto c : in_class_)
        if (c >= core_cols_) throw DimensionError("input class out of range");
    for (auto c : out_class_)
        if (c >= core_rows_) throw DimensionError("output class out of range");
}

StochasticMap StochasticMap::from_dense(const std::vector<std::vector<double>>& T) {
    const std::size_t m = T.size();
    const std::size_t n = m ? T[0].size() : 0;
    std::vector<double> core;
    core.reserve(m * n);
    for (const auto& r : T) {
        if (r.size() != n) throw DimensionError("ragged matrix");
        core.insert(core.end(), r.begin(), r.end());
    }
    std::vector<std::size_t> in(n), out(m);
    std::iota(in.begin(), in.end(), 0);
    std::iota(out.begin(), out.end(), 0);
    return {m, n, std::move(in), std::move(out), std::vector<double>(m, 1.0), m, n, std::move(core)};
}

std::vector<std::vector<double>> StochasticMap::dense(std::size_t max_entries) const {
    if (m_ * n_ > max_entries)
        throw ResourceError("dense witness would have " + std::to_string(m_ * n_) + " entries");
    std::vector<std::vector<double>> T(m_, std::vector<double>(n_));
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) T[i][j] = (*this)(i, j);
    return T;
}

std::vector<double> StochasticMap::apply(const Experiment& P) const {
    if (P.rows() != n_) throw DimensionError("witness columns differ from experiment rows");
    const std::size_t d = P.cols();
    std::vector<double> merged(core_cols_ * d, 0.0);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < d; ++k) merged[in_class_[j] * d + k] += P(j, k);
    std::vector<double> img(core_rows_ * d, 0.0);
    for (std::size_t g = 0; g < core_rows_; ++g)
        for (std::size_t h = 0; h < core_cols_; ++h) {
            const double t = core_[g * core_cols_ + h];
            if (t == 0.0) continue;
            for (std::size_t k = 0; k < d; ++k) img[g * d + k] += t * merged[h * d + k];
        }
    std::vector<double> out(m_ * d);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t k = 0; k < d; ++k) out[i * d + k] = weight_[i] * img[out_class_[i] * d + k];
    return out;
}

double StochasticMap::column_sum_error() const {
    std::vector<double> class_weight(core_rows_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) class_weight[out_class_[i]] += weight_[i];
    std::vector<bool> used(core_cols_, false);
    for (auto c : in_class_) used[c] = true;
    double err = 0.0;
    for (std::size_t h = 0; h < core_cols_; ++h) {
        if (!used[h]) continue;
        double s = 0.0;
        for (std::size_t g = 0; g < core_rows_; ++g) s += class_weight[g] * core_[g * core_cols_ + h];
        err = std::max(err, std::abs(s - 1.0));
    }
    return err;
}

double StochasticMap::min_entry() const {
    double lo = 0.0;
    for (double c : core_) lo = std::min(lo, c);
    for (double w : weight_) lo = std::min(lo, w);
    return lo;
}

double witness_residual(const StochasticMap& T, const Experiment& P, const Experiment& Q) {
    if (T.rows() != Q.rows() || T.cols() != P.rows() || P.cols() != Q.cols())
        throw DimensionError("witness shape does not match experiments");
    auto img = T.apply(P);
    double r = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) r = std::max(r, std::abs(img[i] - Q.data()[i]));
    r = std::max(r, T.column_sum_error());
    r = std::max(r, -T.min_entry());
    return r;
}

namespace {

struct RowClasses {
    std::vector<std::size_t> of_row;
    std::vector<double> row_mass;
    std::vector<double> merged;  // count x d
    std::size_t count = 0;
};

// Groups rows that are positive multiples of one another (same zero
// pattern, normalized rows within 1e-12).
RowClasses group_rows(const Experiment& P, bool reduce) {
    const std::size_t n = P.rows(), d = P.cols();
    RowClasses rc;
    rc.of_row.resize(n);
    rc.row_mass.resize(n);
    std::vector<double> unit(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += P(i, k);
        rc.row_mass[i] = s;
        for (std::size_t k = 0; k < d; ++k) unit[i * d + k] = P(i, k) / s;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto pattern_less = [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < d; ++k) {
            const bool pa = positive(P(a, k)), pb = positive(P(b, k));
            if (pa != pb) return pa < pb;
        }
        return false;
    };
    auto same_class = [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < d; ++k) {
            if (positive(P(a, k)) != positive(P(b, k))) return false;
            if (std::abs(unit[a * d + k] - unit[b * d + k]) > 1e-12) return false;
        }
        return true;
    };
    if (reduce)
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pattern_less(a, b)) return true;
            if (pattern_less(b, a)) return false;
            return std::lexicographical_compare(unit.begin() + a * d, unit.begin() + (a + 1) * d,
                                                unit.begin() + b * d, unit.begin() + (b + 1) * d);
        });
    std::size_t prev = n;
    for (std::size_t i : order) {
        if (!(reduce && prev != n && same_class(prev, i))) {
            ++rc.count;
            rc.merged.resize(rc.count * d, 0.0);
            prev = i;
        }
        rc.of_row[i] = rc.count - 1;
        for (std::size_t k = 0; k < d; ++k) rc.merged[(rc.count - 1) * d + k] += P(i, k);
    }
    return rc;
}

}  // namespace

FeasibilityResult majorizes(const Experiment& P, const Experiment& Q, const LpOptions& opt) {
    if (P.cols() != Q.cols()) throw DimensionError("experiments have different column counts");
    const std::size_t d = P.cols();
    FeasibilityResult res;

    const auto np = column_norms(P), nq = column_norms(Q);
    for (std::size_t k = 0; k < d; ++k)
        if (std::abs(np[k] - nq[k]) > opt.tol) {
            res.status = FeasibilityStatus::InfeasibleNorm;
            res.message = "column " + std::to_string(k) + " norms differ";
            return res;
        }
    if (P.rows() == 0 || Q.rows() == 0) {
        // Both are zero experiments here since norms agree.
        res.status = (P.rows() == 0 && Q.rows() == 0) ? FeasibilityStatus::Feasible
                                                      : FeasibilityStatus::Infeasible;
        if (res.feasible())
            res.witness = StochasticMap(0, 0, {}, {}, {}, 0, 0, {});
        return res;
    }

    const RowClasses in = group_rows(P, opt.reduce);
    const RowClasses out = group_rows(Q, opt.reduce);
    const std::size_t n = in.count, m = out.count;
    res.variables = m * n;
    if (res.variables > opt.max_variables)
        throw ResourceError("LP would have " + std::to_string(res.variables) +
                            " variables, cap is " + std::to_string(opt.max_variables));

    // Rows 0..n-1: column sums of T. Then row n + k*m + g: (T P)_{g,k} = Q_{g,k},
    // scaled by the largest entry of column k of P.
    std::vector<double> scale(d, 1.0);
    for (std::size_t k = 0; k < d; ++k) {
        double mx = 0.0;
        for (std::size_t h = 0; h < n; ++h) mx = std::max(mx, in.merged[h * d + k]);
        if (mx > 0.0) scale[k] = 1.0 / mx;
    }
    SparseMatrix A;
    A.rows = n + d * m;
    std::vector<std::pair<std::size_t, double>> col;
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            col.clear();
            col.emplace_back(h, 1.0);
            for (std::size_t k = 0; k < d; ++k)
                col.emplace_back(n + k * m + g, in.merged[h * d + k] * scale[k]);
            A.push_column(col);
        }
    std::vector<double> b(A.rows, 1.0);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t g = 0; g < m; ++g) b[n + k * m + g] = out.merged[g * d + k] * scale[k];

    const Phase1Result lp = solve_phase1(A, std::move(b), opt.simplex);
    res.pivots = lp.pivots;
    res.infeasibility = lp.infeasibility;

    std::vector<double> core(m * n);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < n; ++h) core[g * n + h] = std::max(0.0, lp.x[g * n + h]);
    for (std::size_t h = 0; h < n; ++h) {
        double s = 0.0;
        for (std::size_t g = 0; g < m; ++g) s += core[g * n + h];
        if (s > 0.0)
            for (std::size_t g = 0; g < m; ++g) core[g * n + h] /= s;
    }
    std::vector<double> class_mass(m, 0.0);
    for (std::size_t i = 0; i < Q.rows(); ++i) class_mass[out.of_row[i]] += out.row_mass[i];
    std::vector<double> weight(Q.rows());
    for (std::size_t i = 0; i < Q.rows(); ++i) weight[i] = out.row_mass[i] / class_mass[out.of_row[i]];

    StochasticMap T(Q.rows(), P.rows(), in.of_row, out.of_row, std::move(weight), m, n, std::move(core));
    res.residual = witness_residual(T, P, Q);
    if (lp.converged && res.residual <= opt.tol) {
        res.status = FeasibilityStatus::Feasible;
        res.witness = std::move(T);
    } else {
        res.status = FeasibilityStatus::Infeasible;
        if (!lp.converged) res.message = "simplex stopped before reaching optimality";
    }
    return res;
}

bool vector_majorizes(std::span<const double> p, std::span<const double> q, double tol) {
    std::vector<double> a(p.begin(), p.end()), b(q.begin(), q.end());
    for (double x : a)
        if (std::isnan(x)) throw DomainError("NaN in vector");
    for (double x : b)
        if (std::isnan(x)) throw DomainError("NaN in vector");
    const std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += a[i];
        sb += b[i];
        if (sa < sb - tol) return false;
    }
    return std::abs(sa - sb) <= tol;
}

}  // namespace majorize
