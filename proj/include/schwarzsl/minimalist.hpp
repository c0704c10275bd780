#pragma once

#include <functional>
#include <optional>

#include "schwarzsl/integrate.hpp"
#include "schwarzsl/problem.hpp"

namespace schwarzsl {

/// F' = -F^2/p - q for the ratio F = p f'/f.
Complex riccati_rhs(const SLProblem& problem, double x, Complex F, Complex lambda);

/// Gauge functions for F = F1 + F2 cot(Phi/2). F2 must not vanish.
struct PhiSubstitution {
    std::function<Complex(double)> F1;
    std::function<Complex(double)> F2;
    std::function<Complex(double)> F1_prime;  ///< optional
    std::function<Complex(double)> F2_prime;  ///< optional

    /// F1 = 0, F2 = 1.
    static PhiSubstitution simplest();
};

/// Phase equation for the cot substitution; smooth through zeros of f.
Complex phi_rhs(const SLProblem& problem, const PhiSubstitution& sub, double x, Complex phi, Complex lambda,
                std::optional<double> h = std::nullopt);

/// 2 acot(r) with real part in (0, 2 pi]; the phase Phi with cot(Phi/2) = r.
/// Throws DegenerateBoundary for r = +-i.
Complex cot_inverse_phase(Complex r);

/// Phase that encodes F = F_BC under the substitution at x. An infinite
/// F_BC maps to 0; otherwise the result lies in the strip 0 < Re < 2 pi.
Complex phase_for_ratio(const PhiSubstitution& sub, double x, const BoundarySpec& bc);

struct FiniteIntervalResult {
    Complex phi_end;      ///< Phi at the upper end
    Complex phi_target;   ///< base phase the upper boundary condition requires (mod 2 pi)
    double winding;       ///< Re(phi_end - phi_target) / 2 pi; integer at eigenvalues
    Trajectory trajectory;
};

/// Integrates the phase equation from the lower end of a finite domain to
/// the upper end, starting from the phase encoding the lower boundary.
FiniteIntervalResult solve_finite_interval(const SLProblem& problem, const PhiSubstitution& sub, Complex lambda,
                                           const Tolerances& tol, Recording recording = Recording::TerminalOnly);

}  // namespace schwarzsl
