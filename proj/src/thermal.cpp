#include "majorize/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "majorize/errors.hpp"
#include "majorize/monotones.hpp"

namespace majorize {

const char* to_string(ThermalAnswer a) {
    switch (a) {
        case ThermalAnswer::Yes: return "YES";
        case ThermalAnswer::No: return "NO";
        case ThermalAnswer::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

const char* to_string(ThermalCase c) {
    switch (c) {
        case ThermalCase::BothFullRank: return "BOTH_FULL_RANK";
        case ThermalCase::RhoNotFullRank: return "RHO_NOT_FULL_RANK";
        case ThermalCase::ImpossibleSupport: return "IMPOSSIBLE_SUPPORT";
    }
    return "BOTH_FULL_RANK";
}

ThermalSystem make_thermal_system(std::vector<double> energies, double beta) {
    if (energies.empty()) throw DimensionError("empty spectrum");
    for (double e : energies)
        if (!std::isfinite(e)) throw DomainError("energies must be finite");
    if (!std::isfinite(beta) || !(beta > 0.0)) throw ParameterError("beta must be positive and finite");
    ThermalSystem sys;
    const double lo = *std::min_element(energies.begin(), energies.end());
    if (lo <= 0.0) {
        sys.shift = 1.0 - lo;
        for (double& e : energies) e += sys.shift;
    }
    sys.energies = std::move(energies);
    sys.beta = beta;
    return sys;
}

std::vector<double> gibbs_vector(const ThermalSystem& sys) {
    if (sys.energies.empty()) throw DimensionError("empty spectrum");
    const double lo = *std::min_element(sys.energies.begin(), sys.energies.end());
    std::vector<double> w;
    double z = 0.0;
    for (double e : sys.energies) {
        w.push_back(std::exp(-sys.beta * (e - lo)));
        z += w.back();
    }
    for (double& x : w) x /= z;
    return w;
}

DiagonalState DiagonalState::make(std::vector<double> lambda, double tol) {
    double s = 0.0;
    for (double x : lambda) {
        if (std::isnan(x) || x < 0.0) throw DomainError("eigenvalues must be nonnegative");
        s += x;
    }
    if (lambda.empty() || std::abs(s - 1.0) > tol) throw NormMismatchError("eigenvalues must sum to 1");
    return DiagonalState{std::move(lambda)};
}

bool DiagonalState::full_rank() const {
    return std::all_of(lambda.begin(), lambda.end(), positive);
}

Experiment thermal_pair(const DiagonalState& s, const ThermalSystem& sys) {
    if (s.lambda.size() != sys.energies.size()) throw DimensionError("state and spectrum sizes differ");
    return Experiment::from_columns({s.lambda, gibbs_vector(sys)}, {"state", "gibbs"});
}

namespace {

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

std::vector<ThermalMargin> margins_from(const CertReport& rep) {
    std::map<double, ThermalMargin> by_alpha;
    for (const auto& c : rep.checks) {
        if (c.functional != FunctionalId::RenyiAlpha) continue;
        const double a = c.alpha.at(0);
        auto& m = by_alpha.try_emplace(a, ThermalMargin{a, 0.0, std::nullopt}).first->second;
        if (c.C.at(0) == 0)
            m.forward = c.margin;
        else
            m.backward = c.margin;
    }
    std::vector<ThermalMargin> out;
    for (auto& [a, m] : by_alpha) out.push_back(m);
    return out;
}

ThermalAnswer answer_of(Verdict v) {
    switch (v) {
        case Verdict::Sufficient: return ThermalAnswer::Yes;
        case Verdict::NecessaryFail: return ThermalAnswer::No;
        case Verdict::Inconclusive: return ThermalAnswer::Inconclusive;
    }
    return ThermalAnswer::Inconclusive;
}

}  // namespace

ThermalVerdict thermal_check(const DiagonalState& rho, const DiagonalState& sigma, const ThermalSystem& sys,
                             const GridSpec& grid) {
    grid.validate();
    const std::size_t n = sys.energies.size();
    if (rho.lambda.size() != n || sigma.lambda.size() != n) throw DimensionError("state and spectrum sizes differ");
    const auto gamma = gibbs_vector(sys);
    ThermalVerdict out;
    out.energy_shift = sys.shift;
    const bool rho_gibbs = close(rho.lambda, gamma, grid.tie_tol);
    const bool sigma_gibbs = close(sigma.lambda, gamma, grid.tie_tol);

    if (rho.full_rank() && !sigma.full_rank()) {
        out.kind = ThermalCase::ImpossibleSupport;
        out.answer = ThermalAnswer::No;
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (positive(sigma.lambda[i])) mass += gamma[i];
        // D_0 of the full-rank state is 0; sigma's is -log of its Gibbs mass.
        out.margins.push_back({0.0, extended_difference(0.0, -std::log(mass)), std::nullopt});
        out.reason = "full-rank state cannot reach a rank-deficient one";
        return out;
    }
    if (rho.full_rank()) {
        out.kind = ThermalCase::BothFullRank;
        if (rho_gibbs) {
            out.answer = sigma_gibbs ? ThermalAnswer::Yes : ThermalAnswer::No;
            out.reason = "the Gibbs state is a fixed point of every thermal channel";
            return out;
        }
        out.report = certify_general_dichotomy_asymptotic(thermal_pair(rho, sys), thermal_pair(sigma, sys), grid);
    } else {
        out.kind = ThermalCase::RhoNotFullRank;
        out.report = certify_dichotomy_asymptotic(thermal_pair(rho, sys), thermal_pair(sigma, sys), grid);
    }
    out.answer = answer_of(out.report->verdict);
    out.margins = margins_from(*out.report);
    out.reason = out.report->reason;
    return out;
}

double free_energy(const DiagonalState& rho, const ThermalSystem& sys, double alpha, FreeEnergySign sign) {
    if (std::isnan(alpha) || alpha < 0.5) throw ParameterError("free energies are defined for alpha >= 1/2");
    if (rho.lambda.size() != sys.energies.size()) throw DimensionError("state and spectrum sizes differ");
    const auto gamma = gibbs_vector(sys);
    return sign == FreeEnergySign::Plus ? renyi(rho.lambda, gamma, alpha) : renyi(gamma, rho.lambda, alpha);
}

}  // namespace majorize
