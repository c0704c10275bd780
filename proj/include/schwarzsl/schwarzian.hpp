#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "schwarzsl/integrate.hpp"
#include "schwarzsl/problem.hpp"

namespace schwarzsl {

/// g approach: F = F_p + e^{-2 Lambda} / (g + C2/C1).
struct GState {
    Complex fp;
    Complex lam;
    Complex g;

    std::array<Complex, 3> to_array() const { return {fp, lam, g}; }
    static GState from(std::span<const Complex> y) { return {y[0], y[1], y[2]}; }
};

/// Phi approach: F = F1 + F2 cot((Phi + C)/2).
struct PhiState {
    Complex f1;
    Complex f2;
    Complex phi;

    std::array<Complex, 3> to_array() const { return {f1, f2, phi}; }
    static PhiState from(std::span<const Complex> y) { return {y[0], y[1], y[2]}; }
};

enum class Approach { G, Phi };

std::string_view to_string(Approach approach);

GState g_system_rhs(const SLProblem& problem, double x, const GState& s, Complex lambda);
PhiState phi_system_rhs(const SLProblem& problem, double x, const PhiState& s, Complex lambda);

OdeSystem g_system(const SLProblem& problem);
OdeSystem phi_system(const SLProblem& problem);

/// Launch with Phi'' = Phi''' = 0: (F1, F2, Phi) = (-p'/2, p sqrt(kappa^2), 0).
/// Throws DegenerateLaunch when kappa^2 vanishes at x0.
PhiState default_initial_state(const SLProblem& problem, double x0, Complex lambda);

/// Complex launch for the g approach: F_p = F1 + i F2 of the default Phi
/// launch, Lambda = g = 0. For p = 1 this is F_p = i sqrt(q(x0)).
GState default_g_launch(const SLProblem& problem, double x0, Complex lambda);

/// Free constant (C2/C1 or C) fixed by the condition at one end. A
/// Quantization spec means "g + C2/C1 = 0" / "Phi + C = 0 (mod 2 pi)".
Complex solve_constant_from_bc(const GState& end, const BoundarySpec& bc);
Complex solve_constant_from_bc(const PhiState& end, const BoundarySpec& bc);

/// F from the split representation. At the asymptotic 0/0 point (both the
/// denominator and the vanishing factor negligible) the limit -F_p, resp.
/// -F1, is returned.
Complex reconstruct_F(const GState& s, Complex constant);
Complex reconstruct_F(const PhiState& s, Complex constant);

struct ShootOptions {
    Tolerances tol{};
    /// Integration stops once |F2| (Phi) or |e^{-2 Lambda}/p| (g) falls below
    /// this fraction of its launch value; the frozen terminal values stand
    /// in for the asymptotic ones.
    double decay_threshold = 1e-14;
    Recording recording = Recording::TerminalOnly;
};

/// Bidirectional integration from the domain launch point to both cuts.
struct SchwarzianRun {
    Approach approach = Approach::Phi;
    Trajectory lower;  ///< launch point -> lower cut
    Trajectory upper;  ///< launch point -> upper cut

    std::span<const Complex> low_end() const { return lower.y_end(); }
    std::span<const Complex> high_end() const { return upper.y_end(); }
};

SchwarzianRun shoot(const SLProblem& problem, Complex lambda, const PhiState& launch, const ShootOptions& opts = {});
SchwarzianRun shoot(const SLProblem& problem, Complex lambda, const GState& launch, const ShootOptions& opts = {});

struct QuantizationResult {
    enum class Kind { GDifference, PhiWinding };
    Complex value;
    Kind kind;
};

/// g|2 - g|1 (zero at eigenvalues) or (Phi|2 - Phi|1)/2 pi (integer at
/// eigenvalues). Both ends must carry Quantization specs.
QuantizationResult quantization(const SLProblem& problem, const SchwarzianRun& run);

/// Generalisation of `quantization` to ends with RatioValue conditions: the
/// constant is fixed at the lower end and the mismatch measured at the upper
/// end, in the same units (zero / integer at eigenvalues).
QuantizationResult boundary_mismatch(const SLProblem& problem, const SchwarzianRun& run);

/// Convenience wrappers with the default launch states.
double phi_winding(const SLProblem& problem, Complex lambda, const ShootOptions& opts = {});
Complex g_difference(const SLProblem& problem, Complex lambda, const ShootOptions& opts = {});

struct SampledFunction {
    std::vector<double> x;
    std::vector<Complex> f;  ///< eigenfunction, one arbitrary complex factor
    std::vector<Complex> F;  ///< p f'/f
    std::vector<std::array<Complex, 3>> state;
};

/// Samples f and F over both trajectories of a run (ordered by x). Needs a
/// run recorded with Recording::Full for more than endpoint samples.
SampledFunction eigenfunction(const SchwarzianRun& run, Complex constant);

/// Constant selecting the non-diverging branch at the lower asymptotic end.
Complex lower_asymptotic_constant(const SchwarzianRun& run);

struct SampledSchwarzian {
    std::size_t first_index = 0;  ///< grid index of values[0]
    std::vector<Complex> values;
};

/// {g, x} = g'''/g' - 3/2 (g''/g')^2 by fourth-order central differences on a
/// uniform grid. Values exist for indices 3 .. n-4 (at least 7 samples).
SampledSchwarzian schwarzian_derivative(std::span<const Complex> g, double h);

}  // namespace schwarzsl
