#include "majorize/catalysis.hpp"

#include <cmath>
#include <stdexcept>

#include "majorize/errors.hpp"

namespace majorize {

const char* to_string(SearchKind k) { return k == SearchKind::LargeSample ? "LARGE_SAMPLE" : "CATALYTIC"; }

namespace {

void require_unit_pair(const Experiment& P, const Experiment& Q) {
    if (P.cols() != Q.cols()) throw DimensionError("experiments have different column counts");
    if (!unit_norm(P) || !unit_norm(Q)) throw NormMismatchError("columns must be unit norm");
}

double power_rows(std::size_t base, unsigned e) {
    double r = 1.0;
    for (unsigned i = 0; i < e; ++i) r *= static_cast<double>(base);
    return r;
}

}  // namespace

Catalyst build_catalyst(const Experiment& P, const Experiment& Q, unsigned n, std::size_t row_cap) {
    require_unit_pair(P, Q);
    double total = 0.0;
    for (unsigned l = 0; l <= n; ++l) total += power_rows(Q.rows(), l) * power_rows(P.rows(), n - l);
    if (total > static_cast<double>(row_cap))
        throw ResourceError("catalyst would have " + std::to_string(static_cast<long long>(total)) +
                            " rows, cap is " + std::to_string(row_cap));
    Catalyst cat;
    cat.n = n;
    const double w = 1.0 / static_cast<double>(n + 1);
    std::vector<double> data;
    for (unsigned l = 0; l <= n; ++l) {
        Experiment block = scaled(box_times(tensor_power(Q, l, row_cap), tensor_power(P, n - l, row_cap)), w);
        data.insert(data.end(), block.data().begin(), block.data().end());
        cat.blocks.push_back(std::move(block));
    }
    cat.experiment = Experiment::from_flat(P.cols(), std::move(data), P.labels());
    return cat;
}

CatalystSearchResult find_large_sample_n(const Experiment& P, const Experiment& Q, const SearchOptions& opt) {
    require_unit_pair(P, Q);
    CatalystSearchResult res;
    res.kind = SearchKind::LargeSample;
    for (unsigned n = 1; n <= opt.n_max; ++n) {
        try {
            const Experiment Pn = tensor_power(P, n, opt.row_cap);
            const Experiment Qn = tensor_power(Q, n, opt.row_cap);
            auto lp = majorizes(Pn, Qn, opt.lp);
            res.checked_up_to = n;
            if (lp.feasible()) {
                res.n_found = n;
                res.witness = std::move(lp.witness);
                res.residual = lp.residual;
                return res;
            }
        } catch (const ResourceError& e) {
            res.notice = "stopped at n = " + std::to_string(n) + ": " + e.what();
            return res;
        }
    }
    return res;
}

CatalystSearchResult find_catalytic_n(const Experiment& P, const Experiment& Q, const SearchOptions& opt) {
    require_unit_pair(P, Q);
    CatalystSearchResult res;
    res.kind = SearchKind::Catalytic;
    for (unsigned n = 0; n <= opt.n_max; ++n) {
        try {
            const Catalyst R = build_catalyst(P, Q, n, opt.row_cap);
            const Experiment RP = box_times(R.experiment, P);
            const Experiment RQ = box_times(R.experiment, Q);
            if (RP.rows() > opt.row_cap || RQ.rows() > opt.row_cap)
                throw ResourceError("catalysed experiment exceeds the row cap");
            auto lp = majorizes(RP, RQ, opt.lp);
            res.checked_up_to = n;
            if (lp.feasible()) {
                res.n_found = n;
                res.witness = std::move(lp.witness);
                res.residual = lp.residual;
                return res;
            }
        } catch (const ResourceError& e) {
            res.notice = "stopped at n = " + std::to_string(n) + ": " + e.what();
            return res;
        }
    }
    return res;
}

PerturbedOutput perturb_output(const Experiment& Q, double epsilon, const std::optional<std::vector<double>>& anchor) {
    if (std::isnan(epsilon) || !(epsilon > 0.0) || epsilon > 2.0)
        throw ParameterError("epsilon must lie in (0, 2]");
    if (!unit_norm(Q)) throw NormMismatchError("columns must be unit norm");
    const std::size_t m = Q.rows(), d = Q.cols();
    std::vector<double> w(m, 1.0 / static_cast<double>(m));
    if (anchor) {
        if (anchor->size() != m) throw DimensionError("anchor length differs from the row count");
        double s = 0.0;
        for (double x : *anchor) {
            if (std::isnan(x) || x < 0.0) throw DomainError("anchor entries must be nonnegative");
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-9) throw NormMismatchError("anchor must be a probability vector");
        if (is_dichotomy(Q)) {
            const auto w_supp = support(*anchor);
            if (!is_subset(column_support(Q, 1), w_supp)) throw ParameterError("anchor must dominate q2");
        }
        w = *anchor;
    }
    const double h = epsilon / 2.0;
    std::vector<double> data(m * d);
    PerturbedOutput out;
    out.l1_shift.assign(d, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const double q = Q(i, k);
            // written as a shift so that w_i == q leaves the entry untouched
            const double v = q + h * (w[i] - q);
            data[i * d + k] = v;
            out.l1_shift[k] += std::abs(v - q);
        }
    for (double s : out.l1_shift)
        if (s > epsilon * (1.0 + 1e-12)) throw std::logic_error("perturbation moved a column too far");
    out.experiment = Experiment::from_flat(d, std::move(data), Q.labels());
    return out;
}

PerturbedOutput perturb_output_anchored(const Experiment& Q, double epsilon) {
    return perturb_output(Q, epsilon, Q.column(Q.cols() - 1));
}

}  // namespace majorize
