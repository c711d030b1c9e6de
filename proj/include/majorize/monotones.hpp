#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "majorize/experiment.hpp"

namespace majorize {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Region { APlusInterior, APlusFacet, AMinusRay, BTropical };
const char* to_string(Region r);

// A parameter vector together with its character set C.
struct ParamPoint {
    std::vector<double> alpha;
    Region region = Region::APlusInterior;
    IndexSet C;
};

enum class FunctionalId {
    PhiAC,
    PhiAlphaC_dc,
    PhiTropC,
    PhiDegenerate_k,
    RenyiAlpha,
    MultivarD,
    TropicalD,
    Derivation_KL,
};
const char* to_string(FunctionalId f);

enum class Direction { LargerIsStronger, SmallerIsStronger };
const char* to_string(Direction d);

struct MonotoneValue {
    FunctionalId functional;
    double log_value;
    Direction direction;
};

// a - b with inf - inf = 0 for equal infinities. NaN input throws.
double extended_difference(double a, double b);

// How much stronger the first value is than the second, on the log scale.
double log_margin(const MonotoneValue& p, const MonotoneValue& q);

bool in_a_plus(std::span<const double> alpha, double tol = 1e-9);
bool in_a_minus(std::span<const double> alpha, double tol = 1e-9);
bool in_b_minus(std::span<const double> beta, double tol = 1e-9);
IndexSet alpha_support(std::span<const double> alpha);
Region region_of(std::span<const double> alpha, double tol = 1e-9);

// Classical Rényi divergence, natural log, alpha in [0, inf].
double renyi(std::span<const double> p, std::span<const double> q, double alpha);

double multivar_divergence(const Experiment& P, std::span<const double> alpha);
double tropical_divergence(const Experiment& P, std::span<const double> beta);

// Sum over rows where every column of C is positive of prod p^alpha,
// skipping zero exponents.
double phi(const Experiment& P, std::span<const double> alpha, const IndexSet& C);
double log_phi(const Experiment& P, std::span<const double> alpha, const IndexSet& C);
MonotoneValue phi_value(const Experiment& P, std::span<const double> alpha, const IndexSet& C);

double phi_degenerate(const Experiment& P, std::size_t k);

// Dominating column is the last one. alpha > 1, c < d - 1.
double phi_dc(const Experiment& P, double alpha, std::size_t c);
double log_phi_dc(const Experiment& P, double alpha, std::size_t c);
MonotoneValue phi_dc_value(const Experiment& P, double alpha, std::size_t c);

double phi_tropical(const Experiment& P, std::size_t c);
MonotoneValue phi_tropical_value(const Experiment& P, std::size_t c);

// D1(p^(k) || p^(d)); zero for k = d - 1.
double derivation_kl(const Experiment& P, std::size_t k);

struct LadderMargin {
    double alpha;
    double forward;   // D(p||u) - D(q||u)
    double backward;  // D(u||p) - D(u||q)
};
std::vector<LadderMargin> klimesh_check(std::span<const double> p, std::span<const double> q,
                                        std::span<const double> grid);

struct NormMargin {
    double alpha;
    double margin;  // ||p||_alpha - ||q||_alpha
};
double lalpha_norm(std::span<const double> p, double alpha);
std::vector<NormMargin> lalpha_norm_check(std::span<const double> p, std::span<const double> q,
                                          std::span<const double> grid);

}  // namespace majorize
