#include "majorize/monotones.hpp"

#include <algorithm>
#include <cmath>

#include "majorize/errors.hpp"

namespace majorize {

const char* to_string(Region r) {
    switch (r) {
        case Region::APlusInterior: return "A_plus_interior";
        case Region::APlusFacet: return "A_plus_facet";
        case Region::AMinusRay: return "A_minus_ray";
        case Region::BTropical: return "B_tropical";
    }
    return "A_plus_interior";
}

const char* to_string(FunctionalId f) {
    switch (f) {
        case FunctionalId::PhiAC: return "PhiAC";
        case FunctionalId::PhiAlphaC_dc: return "PhiAlphaC_dc";
        case FunctionalId::PhiTropC: return "PhiTropC";
        case FunctionalId::PhiDegenerate_k: return "PhiDegenerate_k";
        case FunctionalId::RenyiAlpha: return "RenyiAlpha";
        case FunctionalId::MultivarD: return "MultivarD";
        case FunctionalId::TropicalD: return "TropicalD";
        case FunctionalId::Derivation_KL: return "Derivation_KL";
    }
    return "PhiAC";
}

const char* to_string(Direction d) {
    return d == Direction::LargerIsStronger ? "LARGER_IS_STRONGER" : "SMALLER_IS_STRONGER";
}

double extended_difference(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) throw DomainError("NaN in extended-real difference");
    if (std::isinf(a) && a == b) return 0.0;
    return a - b;
}

double log_margin(const MonotoneValue& p, const MonotoneValue& q) {
    return p.direction == Direction::LargerIsStronger ? extended_difference(p.log_value, q.log_value)
                                                      : extended_difference(q.log_value, p.log_value);
}

namespace {

// Streaming log-sum-exp. value() keeps exact small-integer sums exact.
struct LogSum {
    double m = -kInf;
    double s = 0.0;

    void add(double l) {
        if (l == -kInf) return;
        if (l == kInf) {
            m = kInf;
            s = 1.0;
            return;
        }
        if (m == kInf) return;
        if (l <= m) {
            s += std::exp(l - m);
        } else {
            s = s * std::exp(m - l) + 1.0;
            m = l;
        }
    }
    double log() const { return s > 0.0 ? m + std::log(s) : -kInf; }
    double value() const { return s > 0.0 ? std::exp(m) * s : 0.0; }
};

void check_vector(std::span<const double> v) {
    for (double x : v) {
        if (std::isnan(x)) throw DomainError("NaN entry");
        if (x < 0.0) throw DomainError("negative entry");
    }
}

void check_alpha(double alpha) {
    if (std::isnan(alpha)) throw DomainError("alpha is NaN");
    if (alpha < 0.0) throw ParameterError("alpha must be nonnegative");
}

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

void check_param_size(const Experiment& P, std::span<const double> alpha) {
    if (alpha.size() != P.cols()) throw DimensionError("parameter length differs from d");
    for (double a : alpha)
        if (!std::isfinite(a)) throw ParameterError("parameter entries must be finite");
}

bool is_unit_vector(std::span<const double> alpha, double tol) {
    std::size_t ones = 0;
    for (double a : alpha) {
        if (std::abs(a - 1.0) <= tol)
            ++ones;
        else if (std::abs(a) > tol)
            return false;
    }
    return ones == 1;
}

void require_dominating(const Experiment& P) {
    if (!is_dominating(classify_regime(P)))
        throw RegimeError("functional requires the dominating-column regime");
}

void check_column(const Experiment& P, std::size_t c) {
    if (P.cols() < 2 || c + 1 >= P.cols())
        throw ParameterError("column index must be below the dominating column");
}

}  // namespace

bool in_a_plus(std::span<const double> alpha, double tol) {
    return std::all_of(alpha.begin(), alpha.end(), [](double a) { return a >= 0.0; }) &&
           std::abs(sum(alpha) - 1.0) <= tol;
}

bool in_a_minus(std::span<const double> alpha, double tol) {
    const auto npos = std::count_if(alpha.begin(), alpha.end(), [](double a) { return a > 0.0; });
    return npos == 1 && std::abs(sum(alpha) - 1.0) <= tol;
}

bool in_b_minus(std::span<const double> beta, double tol) {
    const auto npos = std::count_if(beta.begin(), beta.end(), [](double b) { return b > 0.0; });
    return npos == 1 && std::abs(sum(beta)) <= tol;
}

IndexSet alpha_support(std::span<const double> alpha) {
    IndexSet s;
    for (std::size_t k = 0; k < alpha.size(); ++k)
        if (alpha[k] != 0.0) s.push_back(k);
    return s;
}

Region region_of(std::span<const double> alpha, double tol) {
    if (in_a_plus(alpha, tol))
        return std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > 0.0; })
                   ? Region::APlusInterior
                   : Region::APlusFacet;
    if (in_a_minus(alpha, tol)) return Region::AMinusRay;
    if (in_b_minus(alpha, tol)) return Region::BTropical;
    throw ParameterError("parameter lies in none of the known regions");
}

double renyi(std::span<const double> p, std::span<const double> q, double alpha) {
    if (p.size() != q.size()) throw DimensionError("renyi: vectors have different lengths");
    check_vector(p);
    check_vector(q);
    check_alpha(alpha);
    const std::size_t n = p.size();
    bool p_in_q = true, overlap = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (positive(p[i]) && !positive(q[i])) p_in_q = false;
        if (positive(p[i]) && positive(q[i])) overlap = true;
    }
    if (alpha < 1.0 && !overlap) return kInf;
    if (alpha >= 1.0 && !p_in_q) return kInf;

    if (alpha == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (positive(p[i]) && positive(q[i])) s += q[i];
        return -std::log(s);
    }
    if (alpha == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (positive(p[i])) s += p[i] * (std::log(p[i]) - std::log(q[i]));
        return s;
    }
    if (std::isinf(alpha)) {
        double m = -kInf;
        for (std::size_t i = 0; i < n; ++i)
            if (positive(p[i])) m = std::max(m, std::log(p[i]) - std::log(q[i]));
        return m;
    }
    LogSum ls;
    for (std::size_t i = 0; i < n; ++i)
        if (positive(p[i]) && positive(q[i]))
            ls.add(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
    return ls.log() / (alpha - 1.0);
}

double multivar_divergence(const Experiment& P, std::span<const double> alpha) {
    check_param_size(P, alpha);
    if (!(in_a_plus(alpha) || in_a_minus(alpha)))
        throw ParameterError("multivariate divergence needs alpha in A+ or A-");
    if (is_unit_vector(alpha, 1e-12)) throw ParameterError("alpha is a unit vector");
    const double amax = *std::max_element(alpha.begin(), alpha.end());
    LogSum ls;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        double l = 0.0;
        bool skip = false, blowup = false;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k] == 0.0) continue;
            const double x = P(i, k);
            if (!positive(x)) {
                if (alpha[k] > 0.0)
                    skip = true;
                else
                    blowup = true;
                continue;
            }
            l += alpha[k] * std::log(x);
        }
        if (skip) continue;
        ls.add(blowup ? kInf : l);
    }
    return ls.log() / (amax - 1.0);
}

double tropical_divergence(const Experiment& P, std::span<const double> beta) {
    check_param_size(P, beta);
    if (!in_b_minus(beta)) throw ParameterError("tropical divergence needs beta in B-");
    const double bmax = *std::max_element(beta.begin(), beta.end());
    double best = -kInf;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        double l = 0.0;
        bool ok = true;
        for (std::size_t k = 0; k < beta.size(); ++k) {
            if (beta[k] == 0.0) continue;
            if (!positive(P(i, k))) {
                ok = false;
                break;
            }
            l += beta[k] * std::log(P(i, k));
        }
        if (ok) best = std::max(best, l);
    }
    return best / bmax;
}

namespace {

LogSum phi_sum(const Experiment& P, std::span<const double> alpha, const IndexSet& C) {
    check_param_size(P, alpha);
    if (!in_a_plus(alpha)) throw ParameterError("phi needs alpha in A+");
    for (std::size_t c : C)
        if (c >= P.cols()) throw ParameterError("character index out of range");
    if (!is_subset(alpha_support(alpha), C)) throw ParameterError("supp(alpha) is not contained in C");
    LogSum ls;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        bool inside = true;
        for (std::size_t c : C) inside = inside && positive(P(i, c));
        if (!inside) continue;
        double l = 0.0;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            if (alpha[k] != 0.0) l += alpha[k] * std::log(P(i, k));
        ls.add(l);
    }
    return ls;
}

LogSum phi_dc_sum(const Experiment& P, double alpha, std::size_t c) {
    check_column(P, c);
    if (std::isnan(alpha) || !(alpha > 1.0) || std::isinf(alpha))
        throw ParameterError("phi_dc needs a finite alpha > 1");
    require_dominating(P);
    const std::size_t d = P.cols() - 1;
    LogSum ls;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        if (!positive(P(i, c))) continue;
        ls.add(alpha * std::log(P(i, c)) + (1.0 - alpha) * std::log(P(i, d)));
    }
    return ls;
}

}  // namespace

double phi(const Experiment& P, std::span<const double> alpha, const IndexSet& C) {
    return phi_sum(P, alpha, C).value();
}

double log_phi(const Experiment& P, std::span<const double> alpha, const IndexSet& C) {
    return phi_sum(P, alpha, C).log();
}

MonotoneValue phi_value(const Experiment& P, std::span<const double> alpha, const IndexSet& C) {
    return {FunctionalId::PhiAC, log_phi(P, alpha, C), Direction::SmallerIsStronger};
}

double phi_degenerate(const Experiment& P, std::size_t k) {
    if (k >= P.cols()) throw ParameterError("column index out of range");
    return column_norms(P)[k];
}

double phi_dc(const Experiment& P, double alpha, std::size_t c) {
    return phi_dc_sum(P, alpha, c).value();
}

double log_phi_dc(const Experiment& P, double alpha, std::size_t c) {
    return phi_dc_sum(P, alpha, c).log();
}

MonotoneValue phi_dc_value(const Experiment& P, double alpha, std::size_t c) {
    return {FunctionalId::PhiAlphaC_dc, log_phi_dc(P, alpha, c), Direction::LargerIsStronger};
}

double phi_tropical(const Experiment& P, std::size_t c) {
    check_column(P, c);
    require_dominating(P);
    const std::size_t d = P.cols() - 1;
    double best = 0.0;
    for (std::size_t i = 0; i < P.rows(); ++i)
        if (positive(P(i, d))) best = std::max(best, P(i, c) / P(i, d));
    return best;
}

MonotoneValue phi_tropical_value(const Experiment& P, std::size_t c) {
    return {FunctionalId::PhiTropC, std::log(phi_tropical(P, c)), Direction::LargerIsStronger};
}

double derivation_kl(const Experiment& P, std::size_t k) {
    if (k >= P.cols()) throw ParameterError("column index out of range");
    require_dominating(P);
    if (k + 1 == P.cols()) return 0.0;
    const auto pk = P.column(k), pd = P.column(P.cols() - 1);
    return renyi(pk, pd, 1.0);
}

std::vector<LadderMargin> klimesh_check(std::span<const double> p, std::span<const double> q,
                                        std::span<const double> grid) {
    const std::size_t n = std::max(p.size(), q.size());
    std::vector<double> a(p.begin(), p.end()), b(q.begin(), q.end());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    check_vector(a);
    check_vector(b);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (positive(a[i]) || positive(b[i])) ++count;
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (positive(a[i]) || positive(b[i])) u[i] = 1.0 / static_cast<double>(count);
    std::vector<LadderMargin> out;
    for (double alpha : grid) {
        if (!(alpha >= 0.5)) throw ParameterError("Klimesh grid needs alpha >= 1/2");
        out.push_back({alpha, extended_difference(renyi(a, u, alpha), renyi(b, u, alpha)),
                       extended_difference(renyi(u, a, alpha), renyi(u, b, alpha))});
    }
    return out;
}

double lalpha_norm(std::span<const double> p, double alpha) {
    check_vector(p);
    check_alpha(alpha);
    if (alpha < 1.0) throw ParameterError("l_alpha norm needs alpha >= 1");
    double m = 0.0;
    for (double x : p) m = std::max(m, x);
    if (std::isinf(alpha) || m == 0.0) return m;
    double s = 0.0;
    for (double x : p) s += std::pow(x / m, alpha);
    return m * std::pow(s, 1.0 / alpha);
}

std::vector<NormMargin> lalpha_norm_check(std::span<const double> p, std::span<const double> q,
                                          std::span<const double> grid) {
    std::vector<NormMargin> out;
    for (double alpha : grid) out.push_back({alpha, lalpha_norm(p, alpha) - lalpha_norm(q, alpha)});
    return out;
}

}  // namespace majorize
