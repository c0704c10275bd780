#include "schwarzsl/problem.hpp"

#include <cmath>
#include <limits>

namespace schwarzsl {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorKind::ZeroGauge: return "ZeroGauge";
        case ErrorKind::ZeroDerivative: return "ZeroDerivative";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonFiniteRhs: return "NonFiniteRhs";
        case ErrorKind::DegenerateLaunch: return "DegenerateLaunch";
        case ErrorKind::DegenerateBoundary: return "DegenerateBoundary";
        case ErrorKind::NotAsymptotic: return "NotAsymptotic";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::SingularSurface: return "SingularSurface";
        case ErrorKind::LimitNotConverged: return "LimitNotConverged";
        case ErrorKind::NoConvergence: return "NoConvergence";
    }
    return "Unknown";
}

std::string_view to_string(DiagnosticKind kind) {
    switch (kind) {
        case DiagnosticKind::BadOrdering: return "BadOrdering";
        case DiagnosticKind::BadTruncation: return "BadTruncation";
        case DiagnosticKind::BadLaunchPoint: return "BadLaunchPoint";
        case DiagnosticKind::IllegalQuantization: return "IllegalQuantization";
        case DiagnosticKind::MissingCoefficient: return "MissingCoefficient";
    }
    return "Unknown";
}

DomainEnd DomainEnd::minus_infinity() { return {-std::numeric_limits<double>::infinity(), EndKind::Infinite}; }
DomainEnd DomainEnd::plus_infinity() { return {std::numeric_limits<double>::infinity(), EndKind::Infinite}; }

double default_fd_step(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

namespace {

void require_nonzero(Complex p, double x) {
    if (!(std::abs(p) >= std::numeric_limits<double>::min())) {
        throw Error(ErrorKind::ZeroCoefficient, "p vanishes at x = " + std::to_string(x));
    }
}

}  // namespace

Complex Coefficients::eval_p(double x, Complex lambda) const {
    const Complex v = p(x, lambda);
    require_nonzero(v, x);
    return v;
}

Complex Coefficients::eval_p_prime(double x, Complex lambda, std::optional<double> h) const {
    if (p_prime) return p_prime(x, lambda);
    const double step = h.value_or(default_fd_step(x));
    return (eval_p(x + step, lambda) - eval_p(x - step, lambda)) / (2.0 * step);
}

Complex kappa_squared(const Coefficients& c, double x, Complex lambda, std::optional<double> h) {
    const double step = h.value_or(default_fd_step(x));
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");

    const Complex p = c.eval_p(x, lambda);
    const Complex q = c.eval_q(x, lambda);
    auto half_log_slope = [&](double xx) { return c.eval_p_prime(xx, lambda, step) / (2.0 * c.eval_p(xx, lambda)); };

    const Complex r = half_log_slope(x);
    const Complex r_prime = (half_log_slope(x + step) - half_log_slope(x - step)) / (2.0 * step);
    return q / p - r * r - r_prime;
}

std::vector<Diagnostic> validate(const SLProblem& problem) {
    std::vector<Diagnostic> out;
    const Domain& d = problem.domain;
    const auto& c = problem.coefficients;

    if (!c.p || !c.q) out.push_back({DiagnosticKind::MissingCoefficient, "p and q must both be provided"});

    const bool ends_ordered = d.lower.value < d.upper.value;
    if (!ends_ordered || !(d.lower.value < d.start && d.start < d.upper.value)) {
        out.push_back({DiagnosticKind::BadOrdering, "require lower < start < upper"});
    }
    if (!std::isfinite(d.lower_cut) || !std::isfinite(d.upper_cut) || d.lower_cut < d.lower.value ||
        d.upper_cut > d.upper.value || !(d.lower_cut < d.upper_cut)) {
        out.push_back({DiagnosticKind::BadTruncation, "require lower <= lower_cut < upper_cut <= upper, both finite"});
    }
    if (!(d.lower_cut < d.start && d.start < d.upper_cut)) {
        out.push_back({DiagnosticKind::BadLaunchPoint, "launch point must lie strictly inside the cuts"});
    }

    auto check_end = [&](const BoundarySpec& spec, const DomainEnd& end, const char* name) {
        if (spec.kind == BoundarySpec::Kind::Quantization && !end.asymptotic()) {
            out.push_back({DiagnosticKind::IllegalQuantization,
                           std::string("quantization on the finite ") + name + " end"});
        }
    };
    check_end(problem.boundaries.first, d.lower, "lower");
    check_end(problem.boundaries.second, d.upper, "upper");
    return out;
}

}  // namespace schwarzsl
