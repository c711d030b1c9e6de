#include "majorize/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "majorize/errors.hpp"
#include "majorize/parallel.hpp"
#include "majorize/power_universal.hpp"

namespace majorize {

void GridSpec::validate() const {
    if (simplex_resolution < 2) throw ParameterError("grid resolution must be at least 2");
    if (!(alpha_max > 1.0) || std::isinf(alpha_max)) throw ParameterError("alpha_max must be a finite value above 1");
    if (!(tie_tol >= 0.0)) throw ParameterError("tie tolerance must be nonnegative");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Sufficient: return "SUFFICIENT";
        case Verdict::NecessaryFail: return "NECESSARY_FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

const char* to_string(RegimeChoice r) {
    switch (r) {
        case RegimeChoice::Minimal: return "minimal";
        case RegimeChoice::Dominating: return "dominating";
        case RegimeChoice::Dichotomy: return "dichotomy";
    }
    return "minimal";
}

RegimeChoice regime_choice_from_string(const std::string& s) {
    for (auto r : {RegimeChoice::Minimal, RegimeChoice::Dominating, RegimeChoice::Dichotomy})
        if (s == to_string(r)) return r;
    throw ParameterError("unknown regime '" + s + "' (expected minimal, dominating or dichotomy)");
}

namespace {

void compositions(std::size_t d, unsigned total, unsigned left, std::vector<unsigned>& cur,
                  std::vector<ParamPoint>& out) {
    if (cur.size() + 1 == d) {
        cur.push_back(left);
        ParamPoint p;
        bool interior = true;
        for (unsigned k : cur) {
            p.alpha.push_back(static_cast<double>(k) / static_cast<double>(total));
            interior = interior && k > 0;
        }
        cur.pop_back();
        p.region = interior ? Region::APlusInterior : Region::APlusFacet;
        p.C = alpha_support(p.alpha);
        out.push_back(std::move(p));
        return;
    }
    for (unsigned k = 0; k <= left; ++k) {
        cur.push_back(k);
        compositions(d, total, left - k, cur, out);
        cur.pop_back();
    }
}

using Task = std::function<Check()>;

bool check_less(const Check& a, const Check& b) {
    return std::tie(a.functional, a.alpha, a.C, a.condition) < std::tie(b.functional, b.alpha, b.C, b.condition);
}

void finalize(CertReport& rep, const std::vector<Task>& tasks) {
    rep.checks.assign(tasks.size(), Check{});
    parallel_for(tasks.size(), [&](std::size_t i) { rep.checks[i] = tasks[i](); });
    std::sort(rep.checks.begin(), rep.checks.end(), check_less);
    const double tol = rep.grid.tie_tol;
    bool violated = false, all_strict = true;
    for (auto& c : rep.checks) {
        if (std::isnan(c.margin)) throw DomainError("NaN margin");
        c.strict = c.margin > tol;
        violated = violated || c.margin < -tol;
        all_strict = all_strict && c.strict;
    }
    if (violated)
        rep.verdict = Verdict::NecessaryFail;
    else if (rep.asymptotic || all_strict)
        rep.verdict = Verdict::Sufficient;
    else
        rep.verdict = Verdict::Inconclusive;
}

void require_same_shape(const Experiment& P, const Experiment& Q, double tol) {
    if (P.cols() != Q.cols()) throw DimensionError("experiments have different column counts");
    const auto np = column_norms(P), nq = column_norms(Q);
    for (std::size_t k = 0; k < np.size(); ++k)
        if (std::abs(np[k] - nq[k]) > tol)
            throw NormMismatchError("column " + std::to_string(k) + " norms differ");
}

bool is_unit(const std::vector<double>& a, std::size_t& k) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 1.0) {
            ++ones;
            k = j;
        } else if (a[j] != 0.0) {
            return false;
        }
    }
    return ones == 1;
}

// All C with base ⊆ C ⊆ [d].
std::vector<IndexSet> supersets(const IndexSet& base, std::size_t d) {
    IndexSet rest;
    for (std::size_t k = 0; k < d; ++k)
        if (!std::binary_search(base.begin(), base.end(), k)) rest.push_back(k);
    std::vector<IndexSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
        IndexSet C = base;
        for (std::size_t j = 0; j < rest.size(); ++j)
            if (mask >> j & 1) C.push_back(rest[j]);
        out.push_back(make_index_set(std::move(C)));
    }
    return out;
}

Task phi_task(const Experiment& P, const Experiment& Q, std::vector<double> alpha, IndexSet C,
              std::string condition = {}) {
    return [&P, &Q, alpha = std::move(alpha), C = std::move(C), condition = std::move(condition)] {
        Check c{FunctionalId::PhiAC, alpha, C, condition};
        c.value_p = phi(P, alpha, C);
        c.value_q = phi(Q, alpha, C);
        c.margin = c.value_q - c.value_p;
        return c;
    };
}

// Reported on the divergence scale log(Phi) / (alpha - 1).
Task dc_task(const Experiment& P, const Experiment& Q, double alpha, std::size_t c, std::string condition) {
    return [&P, &Q, alpha, c, condition = std::move(condition)] {
        const std::size_t last = P.cols() - 1;
        Check ch{FunctionalId::PhiAlphaC_dc, {alpha}, {c, last}, condition};
        ch.value_p = log_phi_dc(P, alpha, c) / (alpha - 1.0);
        ch.value_q = log_phi_dc(Q, alpha, c) / (alpha - 1.0);
        ch.margin = extended_difference(ch.value_p, ch.value_q);
        return ch;
    };
}

Task tropical_task(const Experiment& P, const Experiment& Q, std::size_t c, std::string condition) {
    return [&P, &Q, c, condition = std::move(condition)] {
        const std::size_t last = P.cols() - 1;
        Check ch{FunctionalId::PhiTropC, {kInf}, {c, last}, condition};
        ch.value_p = std::log(phi_tropical(P, c));
        ch.value_q = std::log(phi_tropical(Q, c));
        ch.margin = extended_difference(ch.value_p, ch.value_q);
        return ch;
    };
}

Task kl_task(const Experiment& P, const Experiment& Q, std::size_t c, std::string condition) {
    return [&P, &Q, c, condition = std::move(condition)] {
        const std::size_t last = P.cols() - 1;
        Check ch{FunctionalId::Derivation_KL, {1.0}, {c, last}, condition};
        ch.value_p = derivation_kl(P, c);
        ch.value_q = derivation_kl(Q, c);
        ch.margin = extended_difference(ch.value_p, ch.value_q);
        return ch;
    };
}

// D_alpha(col a || col b) of P against the same for Q.
Task renyi_task(const Experiment& P, const Experiment& Q, double alpha, std::size_t a, std::size_t b) {
    return [&P, &Q, alpha, a, b] {
        Check ch{FunctionalId::RenyiAlpha, {alpha}, {a, b}, {}};
        ch.value_p = renyi(P.column(a), P.column(b), alpha);
        ch.value_q = renyi(Q.column(a), Q.column(b), alpha);
        ch.margin = extended_difference(ch.value_p, ch.value_q);
        return ch;
    };
}

// Named layout for three columns, last one dominating.
std::string d3_label(const std::vector<double>& a, const IndexSet& C) {
    const IndexSet all{0, 1, 2};
    if (a[0] > 0 && a[1] > 0 && a[2] > 0) return "multivariate-interior";
    if (a[1] == 0.0 && a[0] < 1.0) {
        if (C == IndexSet{0, 2}) return "renyi-p1-p3";
        if (C == all) return "restricted-p1-p3-on-supp-p2";
    }
    if (a[0] == 0.0 && a[1] < 1.0) {
        if (C == IndexSet{1, 2}) return "renyi-p2-p3";
        if (C == all) return "restricted-p2-p3-on-supp-p1";
    }
    if (a[2] == 0.0) return "renyi-p1-p2-edge";
    return {};
}

std::string d3_column_label(std::size_t d, std::size_t c) {
    if (d != 3) return {};
    return c == 0 ? "renyi-p1-p3" : "renyi-p2-p3";
}

std::vector<double> renyi_orders(const GridSpec& g, double lo, bool include_lo) {
    std::vector<double> out;
    const unsigned r = g.simplex_resolution;
    for (unsigned k = 0; k < r; ++k) {
        const double a = static_cast<double>(k) / r;
        if (a > lo || (include_lo && a == lo)) out.push_back(a);
    }
    out.push_back(1.0);
    for (double a : ray_grid(g)) out.push_back(a);
    if (g.include_infinity) out.push_back(kInf);
    return out;
}

bool strictly_inside(const Experiment& P) {
    const auto s1 = column_support(P, 0), s2 = column_support(P, 1);
    return is_subset(s1, s2) && s1.size() < s2.size();
}

bool full_second_column(const Experiment& P) {
    for (std::size_t i = 0; i < P.rows(); ++i)
        if (!positive(P(i, 1))) return false;
    return true;
}

}  // namespace

std::vector<ParamPoint> simplex_grid(std::size_t d, unsigned r) {
    if (d == 0) throw DimensionError("simplex grid needs d >= 1");
    if (r < 1) throw ParameterError("simplex grid needs r >= 1");
    std::vector<ParamPoint> out;
    std::vector<unsigned> cur;
    compositions(d, r, r, cur, out);
    return out;
}

std::vector<double> ray_grid(const GridSpec& g) {
    g.validate();
    const double steps_per_halving = g.simplex_resolution / 4.0;
    const auto count = static_cast<unsigned>(std::floor(10.0 * steps_per_halving));
    std::vector<double> out;
    for (unsigned i = 0; i <= count; ++i)
        out.push_back(1.0 + (g.alpha_max - 1.0) * std::exp2(-static_cast<double>(i) / steps_per_halving));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CertReport certify_minimal(const Experiment& P, const Experiment& Q, const GridSpec& g) {
    g.validate();
    require_same_shape(P, Q, g.tie_tol);
    if (classify_regime(P) == Regime::Invalid || classify_regime(Q) == Regime::Invalid)
        throw RegimeError("experiment is not in the semiring");
    CertReport rep{"certify_minimal", Regime::MinimalRestrictions, Verdict::Inconclusive, false, g, {}, {}};
    const std::size_t d = P.cols();
    std::vector<Task> tasks;
    for (const auto& pt : simplex_grid(d, g.simplex_resolution)) {
        std::size_t k = 0;
        const bool vertex = is_unit(pt.alpha, k);
        for (const auto& C : supersets(pt.C, d)) {
            if (vertex && C.size() == 1) continue;  // Phi^(k)
            tasks.push_back(phi_task(P, Q, pt.alpha, C));
        }
    }
    finalize(rep, tasks);
    return rep;
}

CertReport certify_minimal_asymptotic(const Experiment& P, const Experiment& Q, const GridSpec& g) {
    g.validate();
    require_same_shape(P, Q, g.tie_tol);
    if (classify_regime(Q) == Regime::Invalid) throw RegimeError("experiment is not in the semiring");
    if (!classify_minimal(P, g.tie_tol).is_power_universal)
        throw RegimeError("asymptotic certification needs a power universal P");
    CertReport rep{"certify_minimal_asymptotic", Regime::MinimalRestrictions, Verdict::Inconclusive, true, g, {}, {}};
    std::vector<Task> tasks;
    for (const auto& pt : simplex_grid(P.cols(), g.simplex_resolution)) {
        std::size_t k = 0;
        if (is_unit(pt.alpha, k)) continue;
        tasks.push_back(phi_task(P, Q, pt.alpha, pt.C));
    }
    finalize(rep, tasks);
    return rep;
}

CertReport certify_dominating(const Experiment& P, const Experiment& Q, const GridSpec& g) {
    g.validate();
    require_same_shape(P, Q, g.tie_tol);
    if (!is_dominating(classify_regime(P)) || !is_dominating(classify_regime(Q)))
        throw RegimeError("both experiments must be in the dominating-column regime");
    if (P.cols() < 2) throw DimensionError("dominating-column certification needs d >= 2");
    CertReport rep{"certify_dominating", Regime::DominatingColumn, Verdict::Inconclusive, false, g, {}, {}};
    const std::size_t d = P.cols(), last = d - 1;
    std::vector<Task> tasks;
    // C and C + {d} give the same functional here, so only C containing d is listed.
    for (const auto& pt : simplex_grid(d, g.simplex_resolution)) {
        std::size_t k = 0;
        const bool vertex = is_unit(pt.alpha, k);
        for (const auto& C : supersets(set_union(pt.C, {last}), d)) {
            if (vertex && k == last && C.size() == 1) continue;
            if (vertex && k != last && C == IndexSet{k, last}) continue;
            tasks.push_back(phi_task(P, Q, pt.alpha, C, d == 3 ? d3_label(pt.alpha, C) : std::string{}));
        }
    }
    for (std::size_t c = 0; c < last; ++c) {
        for (double a : ray_grid(g)) tasks.push_back(dc_task(P, Q, a, c, d3_column_label(d, c)));
        tasks.push_back(kl_task(P, Q, c, d3_column_label(d, c)));
        if (g.include_infinity) tasks.push_back(tropical_task(P, Q, c, d3_column_label(d, c)));
    }
    finalize(rep, tasks);
    return rep;
}

CertReport certify_dichotomy_exact(const Experiment& P, const Experiment& Q, const GridSpec& g) {
    g.validate();
    if (!is_dichotomy(P, g.tie_tol) || !is_dichotomy(Q, g.tie_tol))
        throw RegimeError("both experiments must be dichotomies");
    CertReport rep{"certify_dichotomy_exact", Regime::Dichotomy, Verdict::Inconclusive, false, g, {}, {}};
    std::vector<Task> tasks;
    for (double a : renyi_orders(g, 0.0, true)) tasks.push_back(renyi_task(P, Q, a, 0, 1));
    finalize(rep, tasks);
    return rep;
}

CertReport certify_dichotomy_asymptotic(const Experiment& P, const Experiment& Q, const GridSpec& g) {
    g.validate();
    if (!is_dichotomy(P, g.tie_tol) || !is_dichotomy(Q, g.tie_tol))
        throw RegimeError("both experiments must be dichotomies");
    if (!strictly_inside(P)) throw RegimeError("asymptotic certification needs supp p1 strictly inside supp p2");
    CertReport rep{"certify_dichotomy_asymptotic", Regime::Dichotomy, Verdict::Inconclusive, true, g, {}, {}};
    std::vector<Task> tasks;
    for (double a : renyi_orders(g, 0.0, false)) tasks.push_back(renyi_task(P, Q, a, 0, 1));
    finalize(rep, tasks);
    return rep;
}

CertReport certify_general_dichotomy_asymptotic(const Experiment& P, const Experiment& Q, const GridSpec& g) {
    g.validate();
    if (P.cols() != 2 || Q.cols() != 2) throw DimensionError("dichotomies have two columns");
    if (!unit_norm(P, g.tie_tol) || !unit_norm(Q, g.tie_tol)) throw NormMismatchError("columns must be unit norm");
    if (!full_second_column(P) || !full_second_column(Q))
        throw RegimeError("second columns must have full support");
    if (P.column(0) == P.column(1))
        throw ParameterError("p1 must differ from p2");
    if (strictly_inside(P)) {
        CertReport rep = certify_dichotomy_asymptotic(P, Q, g);
        rep.certifier = "certify_general_dichotomy_asymptotic";
        rep.reason = "supp p1 strictly inside supp p2; one-sided conditions for alpha > 0";
        return rep;
    }
    CertReport rep{"certify_general_dichotomy_asymptotic", Regime::Dichotomy, Verdict::Inconclusive, true, g, {}, {}};
    if (strictly_inside(Q)) {
        // Mass comparison at alpha = 0 already fails; kept as the single check.
        finalize(rep, {renyi_task(P, Q, 0.0, 0, 1)});
        rep.verdict = Verdict::NecessaryFail;
        rep.reason = "supp p1 = supp p2 but supp q1 is strictly inside supp q2";
        return rep;
    }
    std::vector<Task> tasks;
    for (double a : renyi_orders(g, 0.5, true)) {
        tasks.push_back(renyi_task(P, Q, a, 0, 1));
        tasks.push_back(renyi_task(P, Q, a, 1, 0));
    }
    finalize(rep, tasks);
    return rep;
}

RegimeChoice detect_pair_regime(const Experiment& P, const Experiment& Q, double tol) {
    const Regime rp = classify_regime(P, tol), rq = classify_regime(Q, tol);
    if (rp == Regime::Invalid || rq == Regime::Invalid) throw RegimeError("experiment is not in the semiring");
    if (is_dichotomy(P, tol) && is_dichotomy(Q, tol)) return RegimeChoice::Dichotomy;
    if (is_dominating(rp) && is_dominating(rq)) return RegimeChoice::Dominating;
    return RegimeChoice::Minimal;
}

CertReport certify_auto(const Experiment& P, const Experiment& Q, const GridSpec& g, bool asymptotic,
                        std::optional<RegimeChoice> declared) {
    const RegimeChoice detected = detect_pair_regime(P, Q, g.tie_tol);
    if (declared && *declared != detected)
        throw RegimeError(std::string("declared regime ") + to_string(*declared) + " but detected " +
                          to_string(detected));
    switch (detected) {
        case RegimeChoice::Dichotomy:
            if (!asymptotic) return certify_dichotomy_exact(P, Q, g);
            if (full_second_column(P) && full_second_column(Q) && !(P.column(0) == P.column(1)))
                return certify_general_dichotomy_asymptotic(P, Q, g);
            return certify_dichotomy_asymptotic(P, Q, g);
        case RegimeChoice::Dominating:
            if (asymptotic) throw RegimeError("no asymptotic certifier for the general dominating-column regime");
            return certify_dominating(P, Q, g);
        case RegimeChoice::Minimal:
            return asymptotic ? certify_minimal_asymptotic(P, Q, g) : certify_minimal(P, Q, g);
    }
    throw RegimeError("unreachable regime");
}

}  // namespace majorize
