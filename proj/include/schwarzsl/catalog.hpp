#pragma once

#include <map>
#include <string>
#include <vector>

#include "schwarzsl/mhd.hpp"
#include "schwarzsl/problem.hpp"

namespace schwarzsl::catalog {

/// Morse potential: p = 1, q = eps - depth^2 (1 - e^{-x})^2, eigenvalue eps.
SLProblem morse(double depth);

/// Closed-form Morse levels eps_n = depth^2 - (depth - n - 1/2)^2 for all n
/// with depth - n - 1/2 > 0.
std::vector<double> morse_levels(double depth);

/// Harmonic oscillator: p = 1, q = 2 eps - x^2, levels eps = n + 1/2.
SLProblem harmonic();

/// Paine problem on [0, pi]: p = 1, q = lambda - 1/(x + 0.1)^2, f(0) = f(pi) = 0.
SLProblem paine();

/// Published Paine eigenvalues (first 14), as printed.
const std::vector<double>& paine_reference();

/// Constant complex oscillator: p = 1, q = kappa^2, Im kappa > 0.
/// The eigenvalue argument is unused.
SLProblem const_oscillator(Complex kappa);

/// Uniform hydrodynamic jet in a cold, azimuthally magnetized environment.
struct StabilityConfig {
    CohnJetModel model;
    int m = 0;
    double k = kPi;
    MhdEquilibrium equilibrium;
    std::pair<double, double> cuts{0.01, 10.0};
    double launch_point = 1.0;
    std::string label;
};

StabilityConfig cohn_jet(double mach = 1.0, double eta = 0.01, int m = 0, double k = kPi);

struct Target {
    Complex value;
    std::string description;
    std::string provenance;  ///< "closed-form" or "published"
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::map<std::string, double> default_params;
    std::vector<Target> targets;
    bool stability = false;
};

/// All built-in problems, in a fixed order.
const std::vector<CatalogEntry>& entries();
const CatalogEntry& find(const std::string& name);

/// Builds the SL problem for a catalog name with parameter overrides.
/// Throws InvalidArgument for stability entries or unknown names/params.
SLProblem build_problem(const std::string& name, const std::map<std::string, double>& params);

StabilityConfig build_stability(const std::string& name, const std::map<std::string, double>& params);

}  // namespace schwarzsl::catalog
