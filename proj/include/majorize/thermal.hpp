#pragma once

#include <optional>
#include <string>
#include <vector>

#include "majorize/certifier.hpp"
#include "majorize/experiment.hpp"

namespace majorize {

struct ThermalSystem {
    std::vector<double> energies;  // all positive after the shift
    double beta = 1.0;
    double shift = 0.0;  // added to every input energy
};

// Shifts the spectrum when min E <= 0 so that every level is positive.
ThermalSystem make_thermal_system(std::vector<double> energies, double beta);

std::vector<double> gibbs_vector(const ThermalSystem& sys);

struct DiagonalState {
    std::vector<double> lambda;

    static DiagonalState make(std::vector<double> lambda, double tol = 1e-9);
    bool full_rank() const;
};

enum class ThermalAnswer { Yes, No, Inconclusive };
enum class ThermalCase { BothFullRank, RhoNotFullRank, ImpossibleSupport };
const char* to_string(ThermalAnswer a);
const char* to_string(ThermalCase c);

struct ThermalMargin {
    double alpha;
    double forward;                 // D(rho||gamma) - D(sigma||gamma)
    std::optional<double> backward; // D(gamma||rho) - D(gamma||sigma), two-sided case only
};

struct ThermalVerdict {
    ThermalAnswer answer = ThermalAnswer::Inconclusive;
    ThermalCase kind = ThermalCase::BothFullRank;
    std::vector<ThermalMargin> margins;
    std::optional<CertReport> report;
    double energy_shift = 0.0;
    std::string reason;
};

// Columns (lambda, gibbs).
Experiment thermal_pair(const DiagonalState& s, const ThermalSystem& sys);

ThermalVerdict thermal_check(const DiagonalState& rho, const DiagonalState& sigma, const ThermalSystem& sys,
                             const GridSpec& grid = {});

enum class FreeEnergySign { Plus, Minus };
double free_energy(const DiagonalState& rho, const ThermalSystem& sys, double alpha, FreeEnergySign sign);

}  // namespace majorize
