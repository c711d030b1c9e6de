#include "majorize/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "majorize/errors.hpp"

namespace majorize {

IndexSet make_index_set(std::vector<std::size_t> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

void check_entry(double x) {
    if (std::isnan(x)) throw DomainError("experiment entry is NaN");
    if (!std::isfinite(x)) throw DomainError("experiment entry is not finite");
    if (x < 0.0) throw DomainError("experiment entry is negative");
}

std::vector<std::string> default_labels(std::size_t d) {
    std::vector<std::string> out;
    out.reserve(d);
    for (std::size_t k = 0; k < d; ++k) out.push_back("p" + std::to_string(k + 1));
    return out;
}

}  // namespace

Experiment Experiment::from_columns(const std::vector<std::vector<double>>& columns,
                                    std::vector<std::string> labels) {
    if (columns.empty()) throw DimensionError("experiment needs at least one column");
    const std::size_t n = columns.front().size();
    for (const auto& c : columns)
        if (c.size() != n) throw DimensionError("columns have different lengths");
    const std::size_t d = columns.size();
    std::vector<double> data(n * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < n; ++i) data[i * d + k] = columns[k][i];
    return from_flat(d, std::move(data), std::move(labels));
}

Experiment Experiment::from_rows(std::size_t d, const std::vector<std::vector<double>>& rows,
                                 std::vector<std::string> labels) {
    std::vector<double> data;
    data.reserve(rows.size() * d);
    for (const auto& r : rows) {
        if (r.size() != d) throw DimensionError("row length differs from d");
        data.insert(data.end(), r.begin(), r.end());
    }
    return from_flat(d, std::move(data), std::move(labels));
}

Experiment Experiment::from_flat(std::size_t d, std::vector<double> data,
                                 std::vector<std::string> labels) {
    if (d == 0) throw DimensionError("experiment needs at least one column");
    if (data.size() % d != 0) throw DimensionError("data size is not a multiple of d");
    for (double x : data) check_entry(x);
    Experiment e;
    e.d_ = d;
    e.n_ = data.size() / d;
    e.data_ = std::move(data);
    e.set_labels(std::move(labels));
    e.canonicalize();
    return e;
}

void Experiment::set_labels(std::vector<std::string> labels) {
    if (labels.empty()) labels = default_labels(d_);
    if (labels.size() != d_) throw DimensionError("label count differs from column count");
    labels_ = std::move(labels);
}

void Experiment::canonicalize() {
    std::vector<std::size_t> keep;
    keep.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        auto r = row(i);
        if (std::any_of(r.begin(), r.end(), [](double x) { return x != 0.0; })) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end(), [this](std::size_t a, std::size_t b) {
        auto ra = row(a), rb = row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end(),
                                            std::greater<>());
    });
    std::vector<double> out;
    out.reserve(keep.size() * d_);
    for (std::size_t i : keep) {
        auto r = row(i);
        out.insert(out.end(), r.begin(), r.end());
    }
    data_ = std::move(out);
    n_ = keep.size();
}

std::vector<double> Experiment::column(std::size_t k) const {
    if (k >= d_) throw DimensionError("column index out of range");
    std::vector<double> c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, k);
    return c;
}

std::vector<std::vector<double>> Experiment::columns() const {
    std::vector<std::vector<double>> out;
    for (std::size_t k = 0; k < d_; ++k) out.push_back(column(k));
    return out;
}

bool Experiment::approx_equal(const Experiment& o, double tol) const {
    if (d_ != o.d_ || n_ != o.n_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (std::abs(data_[i] - o.data_[i]) > tol) return false;
    return true;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::EqualSupports: return "EqualSupports";
        case Regime::Dichotomy: return "Dichotomy";
        case Regime::DominatingColumn: return "DominatingColumn";
        case Regime::MinimalRestrictions: return "MinimalRestrictions";
        case Regime::Invalid: return "Invalid";
    }
    return "Invalid";
}

Regime regime_from_string(const std::string& s) {
    for (Regime r : {Regime::EqualSupports, Regime::Dichotomy, Regime::DominatingColumn,
                     Regime::MinimalRestrictions, Regime::Invalid})
        if (s == to_string(r)) return r;
    throw ParameterError("unknown regime '" + s + "'");
}

bool is_dominating(Regime r) {
    return r == Regime::EqualSupports || r == Regime::Dichotomy || r == Regime::DominatingColumn;
}

IndexSet support(std::span<const double> v) {
    IndexSet s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (positive(v[i])) s.push_back(i);
    return s;
}

IndexSet column_support(const Experiment& P, std::size_t k) {
    IndexSet s;
    for (std::size_t i = 0; i < P.rows(); ++i)
        if (positive(P(i, k))) s.push_back(i);
    return s;
}

IndexSet common_support(const Experiment& P, const IndexSet& C) {
    IndexSet s;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        bool all = true;
        for (std::size_t k : C) all = all && positive(P(i, k));
        if (all) s.push_back(i);
    }
    return s;
}

bool is_semiring_member(const Experiment& P) {
    if (P.cols() == 0) return false;
    bool any_positive = false;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        auto r = P.row(i);
        if (std::all_of(r.begin(), r.end(), positive)) return true;
        any_positive = any_positive || std::any_of(r.begin(), r.end(), positive);
    }
    return !any_positive;
}

bool unit_norm(const Experiment& P, double tol) {
    for (double s : column_norms(P))
        if (std::abs(s - 1.0) > tol) return false;
    return true;
}

bool is_dichotomy(const Experiment& P, double tol) {
    return P.cols() == 2 && unit_norm(P, tol) &&
           is_subset(column_support(P, 0), column_support(P, 1)) && is_semiring_member(P);
}

Regime classify_regime(const Experiment& P, double tol) {
    if (!is_semiring_member(P)) return Regime::Invalid;
    const std::size_t d = P.cols();
    std::vector<IndexSet> supp;
    for (std::size_t k = 0; k < d; ++k) supp.push_back(column_support(P, k));
    if (std::all_of(supp.begin(), supp.end(), [&](const IndexSet& s) { return s == supp[0]; }))
        return Regime::EqualSupports;
    bool dominating = true;
    for (std::size_t k = 0; k + 1 < d; ++k) dominating = dominating && is_subset(supp[k], supp[d - 1]);
    if (!dominating) return Regime::MinimalRestrictions;
    if (d == 2 && unit_norm(P, tol)) return Regime::Dichotomy;
    return Regime::DominatingColumn;
}

std::vector<double> column_norms(const Experiment& P) {
    std::vector<double> s(P.cols(), 0.0);
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t k = 0; k < P.cols(); ++k) s[k] += P(i, k);
    return s;
}

Experiment normalized(const Experiment& P) {
    auto norms = column_norms(P);
    std::vector<double> data = P.data();
    const std::size_t d = P.cols();
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t k = 0; k < d; ++k)
            if (norms[k] > 0.0) data[i * d + k] /= norms[k];
    return Experiment::from_flat(d, std::move(data), P.labels());
}

Experiment scaled(const Experiment& P, double c) {
    if (std::isnan(c) || c < 0.0 || !std::isfinite(c)) throw DomainError("bad scale factor");
    std::vector<double> data = P.data();
    for (double& x : data) x *= c;
    return Experiment::from_flat(P.cols(), std::move(data), P.labels());
}

std::vector<double> restrict(std::span<const double> v, const IndexSet& S) {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i : S) {
        if (i >= v.size()) throw DimensionError("restriction index out of range");
        out[i] = v[i];
    }
    return out;
}

Experiment box_plus(const Experiment& P, const Experiment& Q) {
    if (P.cols() != Q.cols()) throw DimensionError("box_plus: column counts differ");
    std::vector<double> data = P.data();
    data.insert(data.end(), Q.data().begin(), Q.data().end());
    return Experiment::from_flat(P.cols(), std::move(data), P.labels());
}

Experiment box_times(const Experiment& P, const Experiment& Q) {
    if (P.cols() != Q.cols()) throw DimensionError("box_times: column counts differ");
    const std::size_t d = P.cols();
    std::vector<double> data;
    data.reserve(P.rows() * Q.rows() * d);
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < Q.rows(); ++j)
            for (std::size_t k = 0; k < d; ++k) data.push_back(P(i, k) * Q(j, k));
    return Experiment::from_flat(d, std::move(data), P.labels());
}

Experiment unit_experiment(std::size_t d) {
    return Experiment::from_flat(d, std::vector<double>(d, 1.0));
}

Experiment tensor_power(const Experiment& P, unsigned m, std::size_t row_cap) {
    double rows = 1.0;
    for (unsigned i = 0; i < m; ++i) rows *= static_cast<double>(P.rows());
    if (rows > static_cast<double>(row_cap))
        throw ResourceError("tensor power would have " + std::to_string(static_cast<long long>(rows)) +
                            " rows, cap is " + std::to_string(row_cap));
    Experiment out = unit_experiment(P.cols());
    out.set_labels(P.labels());
    for (unsigned i = 0; i < m; ++i) out = box_times(out, P);
    return out;
}

}  // namespace majorize
