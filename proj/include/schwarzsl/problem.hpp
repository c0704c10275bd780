#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schwarzsl/types.hpp"

namespace schwarzsl {

/// Coefficient of (p f')' + q f = 0 at (x, lambda). Must be pure.
using CoefficientFn = std::function<Complex(double x, Complex lambda)>;

struct Coefficients {
    CoefficientFn p;
    CoefficientFn q;
    CoefficientFn p_prime;  ///< analytic dp/dx; empty means finite differences

    Complex eval_p(double x, Complex lambda) const;  ///< throws ZeroCoefficient when p vanishes
    Complex eval_q(double x, Complex lambda) const { return q(x, lambda); }
    Complex eval_p_prime(double x, Complex lambda, std::optional<double> h = std::nullopt) const;
};

/// Default finite-difference step for coefficient derivatives.
double default_fd_step(double x);

/// kappa^2 = q/p - (p'/2p)^2 - (p'/2p)', the squared frequency of the
/// equivalent variable-frequency oscillator for f*sqrt(p).
Complex kappa_squared(const Coefficients& c, double x, Complex lambda, std::optional<double> h = std::nullopt);

enum class EndKind {
    Finite,    ///< ordinary boundary point
    Infinite,  ///< x = -inf or +inf
    Axis,      ///< finite but asymptotic (e.g. the axis of a cylinder)
};

struct DomainEnd {
    double value = 0.0;
    EndKind kind = EndKind::Finite;

    bool asymptotic() const { return kind != EndKind::Finite; }

    static DomainEnd finite(double v) { return {v, EndKind::Finite}; }
    static DomainEnd minus_infinity();
    static DomainEnd plus_infinity();
    static DomainEnd axis(double v) { return {v, EndKind::Axis}; }
};

/// Interval of definition with the finite window actually integrated.
struct Domain {
    DomainEnd lower;
    DomainEnd upper;
    double start = 0.0;
    double lower_cut = 0.0;
    double upper_cut = 0.0;

    std::pair<double, double> cuts() const { return {lower_cut, upper_cut}; }
};

/// Condition on F = p f'/f at one end of the domain.
struct BoundarySpec {
    enum class Kind { RatioValue, Quantization };

    Kind kind = Kind::Quantization;
    /// F_BC for RatioValue; an infinite value (f = 0 at the boundary) is
    /// flagged by `ratio_infinite`.
    Complex ratio{0.0, 0.0};
    bool ratio_infinite = false;

    static BoundarySpec quantization() { return {Kind::Quantization, {}, false}; }
    static BoundarySpec ratio_value(Complex f_bc) { return {Kind::RatioValue, f_bc, false}; }
    static BoundarySpec dirichlet() { return {Kind::RatioValue, {}, true}; }
};

struct SLProblem {
    Coefficients coefficients;
    Domain domain;
    std::pair<BoundarySpec, BoundarySpec> boundaries;
    std::string label;
};

enum class DiagnosticKind {
    BadOrdering,
    BadTruncation,
    BadLaunchPoint,
    IllegalQuantization,
    MissingCoefficient,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
    DiagnosticKind kind;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// Structural checks on a problem; empty result means the problem is usable.
std::vector<Diagnostic> validate(const SLProblem& problem);

}  // namespace schwarzsl
