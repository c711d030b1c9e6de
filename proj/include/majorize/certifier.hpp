#pragma once

#include <optional>
#include <string>
#include <vector>

#include "majorize/experiment.hpp"
#include "majorize/monotones.hpp"

namespace majorize {

struct GridSpec {
    unsigned simplex_resolution = 8;
    double alpha_max = 64.0;
    bool include_infinity = true;
    double tie_tol = 1e-9;

    void validate() const;
};

enum class Verdict { Sufficient, NecessaryFail, Inconclusive };
const char* to_string(Verdict v);

struct Check {
    FunctionalId functional;
    std::vector<double> alpha;  // parameter vector, or the single order
    IndexSet C;                 // character, or the column pair compared
    std::string condition;      // named layout tag, empty when none applies
    double value_p = 0.0;
    double value_q = 0.0;
    double margin = 0.0;  // positive means P is stronger on this functional
    bool strict = false;
};

struct CertReport {
    std::string certifier;
    Regime regime = Regime::Invalid;
    Verdict verdict = Verdict::Inconclusive;
    // Asymptotic certifiers test non-strict inequalities.
    bool asymptotic = false;
    GridSpec grid;
    std::vector<Check> checks;
    std::string reason;
};

std::vector<ParamPoint> simplex_grid(std::size_t d, unsigned r);
// alpha > 1 orders, log-spaced in alpha - 1 down from alpha_max.
std::vector<double> ray_grid(const GridSpec& g);

CertReport certify_minimal(const Experiment& P, const Experiment& Q, const GridSpec& g = {});
CertReport certify_minimal_asymptotic(const Experiment& P, const Experiment& Q, const GridSpec& g = {});
CertReport certify_dominating(const Experiment& P, const Experiment& Q, const GridSpec& g = {});
CertReport certify_dichotomy_exact(const Experiment& P, const Experiment& Q, const GridSpec& g = {});
CertReport certify_dichotomy_asymptotic(const Experiment& P, const Experiment& Q, const GridSpec& g = {});
CertReport certify_general_dichotomy_asymptotic(const Experiment& P, const Experiment& Q,
                                                const GridSpec& g = {});

enum class RegimeChoice { Minimal, Dominating, Dichotomy };
const char* to_string(RegimeChoice r);
RegimeChoice regime_choice_from_string(const std::string& s);

// Most specific regime shared by both experiments.
RegimeChoice detect_pair_regime(const Experiment& P, const Experiment& Q, double tol = 1e-9);

// Picks the certifier for the detected regime. A declared regime that
// differs from the detected one throws RegimeError.
CertReport certify_auto(const Experiment& P, const Experiment& Q, const GridSpec& g, bool asymptotic,
                        std::optional<RegimeChoice> declared = std::nullopt);

}  // namespace majorize
