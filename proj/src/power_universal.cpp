#include "majorize/power_universal.hpp"

#include "majorize/errors.hpp"
#include "majorize/monotones.hpp"

namespace majorize {

namespace {

void require_unit(const Experiment& U, double tol) {
    if (!unit_norm(U, tol)) throw NormMismatchError("power-universal test needs unit-norm columns");
}

SupportEvidence separate(const Experiment& U, std::size_t k, std::size_t k2) {
    for (std::size_t i = 0; i < U.rows(); ++i)
        if (positive(U(i, k)) && !positive(U(i, k2))) return {k, k2, i, true};
    return {k, k2, kNoRow, false};
}

std::vector<double> unit_alpha(std::size_t d, std::size_t k) {
    std::vector<double> a(d, 0.0);
    a[k] = 1.0;
    return a;
}

}  // namespace

PowerUniversalReport classify_minimal(const Experiment& U, double tol) {
    require_unit(U, tol);
    PowerUniversalReport rep;
    rep.regime = classify_regime(U, tol);
    if (rep.regime == Regime::Invalid) throw RegimeError("experiment is not in the semiring");
    rep.is_power_universal = true;
    const std::size_t d = U.cols();
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t k2 = 0; k2 < d; ++k2) {
            if (k == k2) continue;
            auto ev = separate(U, k, k2);
            rep.is_power_universal = rep.is_power_universal && ev.satisfied;
            rep.witness_pairs.push_back(ev);
        }
    return rep;
}

PowerUniversalReport classify_dominating(const Experiment& U, double tol) {
    require_unit(U, tol);
    PowerUniversalReport rep;
    rep.regime = classify_regime(U, tol);
    if (!is_dominating(rep.regime)) throw RegimeError("experiment is not in the dominating-column regime");
    rep.is_power_universal = true;
    const std::size_t d = U.cols();
    const std::size_t last = d - 1;
    for (std::size_t k = 0; k < last; ++k) {
        auto ev = separate(U, last, k);
        rep.is_power_universal = rep.is_power_universal && ev.satisfied;
        rep.witness_pairs.push_back(ev);
    }
    for (std::size_t k = 0; k < last; ++k)
        for (std::size_t k2 = 0; k2 < last; ++k2) {
            if (k == k2) continue;
            auto ev = separate(U, k, k2);
            rep.is_power_universal = rep.is_power_universal && ev.satisfied;
            rep.witness_pairs.push_back(ev);
        }
    return rep;
}

bool homomorphism_criterion(const Experiment& U, bool dominating, double tie_tol) {
    require_unit(U, tie_tol);
    const std::size_t d = U.cols();
    auto below_one = [&](std::size_t k, IndexSet C) {
        return phi(U, unit_alpha(d, k), make_index_set(std::move(C))) < 1.0 - tie_tol;
    };
    if (!dominating) {
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t k2 = 0; k2 < d; ++k2)
                if (k != k2 && !below_one(k, {k, k2})) return false;
        return true;
    }
    if (!is_dominating(classify_regime(U, tie_tol)))
        throw RegimeError("experiment is not in the dominating-column regime");
    const std::size_t last = d - 1;
    for (std::size_t k = 0; k < last; ++k)
        if (!below_one(last, {k, last})) return false;
    for (std::size_t k = 0; k < last; ++k)
        for (std::size_t k2 = 0; k2 < last; ++k2)
            if (k != k2 && !below_one(k, {k, k2, last})) return false;
    return true;
}

}  // namespace majorize
