#include "schwarzsl/minimalist.hpp"

#include <cmath>
#include <limits>

namespace schwarzsl {

Complex riccati_rhs(const SLProblem& problem, double x, Complex F, Complex lambda) {
    const Complex p = problem.coefficients.eval_p(x, lambda);
    const Complex q = problem.coefficients.eval_q(x, lambda);
    return -F * F / p - q;
}

PhiSubstitution PhiSubstitution::simplest() {
    auto zero = [](double) { return Complex{0.0, 0.0}; };
    auto one = [](double) { return Complex{1.0, 0.0}; };
    return {zero, one, zero, zero};
}

namespace {

Complex derivative(const std::function<Complex(double)>& f, const std::function<Complex(double)>& f_prime, double x,
                   std::optional<double> h) {
    if (f_prime) return f_prime(x);
    const double step = h.value_or(default_fd_step(x));
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

Complex eval_gauge(const PhiSubstitution& sub, double x) {
    const Complex f2 = sub.F2(x);
    if (!(std::abs(f2) >= std::numeric_limits<double>::min())) {
        throw Error(ErrorKind::ZeroGauge, "F2 vanishes at x = " + std::to_string(x));
    }
    return f2;
}

}  // namespace

Complex phi_rhs(const SLProblem& problem, const PhiSubstitution& sub, double x, Complex phi, Complex lambda,
                std::optional<double> h) {
    const Complex p = problem.coefficients.eval_p(x, lambda);
    const Complex q = problem.coefficients.eval_q(x, lambda);
    const Complex f1 = sub.F1(x);
    const Complex f2 = eval_gauge(sub, x);
    const Complex f1p = derivative(sub.F1, sub.F1_prime, x, h);
    const Complex f2p = derivative(sub.F2, sub.F2_prime, x, h);

    const Complex denom = p * f2;
    const Complex sin_coef = (2.0 * f1 * f2 + p * f2p) / denom;
    const Complex base = p * q + p * f1p + f1 * f1;
    const Complex cos_coef = (base - f2 * f2) / denom;
    const Complex constant = (base + f2 * f2) / denom;
    return sin_coef * std::sin(phi) - cos_coef * std::cos(phi) + constant;
}

Complex phase_for_ratio(const PhiSubstitution& sub, double x, const BoundarySpec& bc) {
    if (bc.kind != BoundarySpec::Kind::RatioValue) {
        throw Error(ErrorKind::InvalidArgument, "phase_for_ratio needs a RatioValue boundary");
    }
    if (bc.ratio_infinite) return {0.0, 0.0};
    return cot_inverse_phase((bc.ratio - sub.F1(x)) / eval_gauge(sub, x));
}

Complex cot_inverse_phase(Complex r) {
    if (std::abs(r - kI) == 0.0 || std::abs(r + kI) == 0.0) {
        throw Error(ErrorKind::DegenerateBoundary, "cot(Phi/2) cannot equal +-i");
    }
    // acot with real part in (0, pi].
    Complex half = (std::abs(r) == 0.0) ? Complex{kPi / 2, 0.0} : std::atan(1.0 / r);
    if (half.real() <= 0.0) half += kPi;
    return 2.0 * half;
}

FiniteIntervalResult solve_finite_interval(const SLProblem& problem, const PhiSubstitution& sub, Complex lambda,
                                           const Tolerances& tol, Recording recording) {
    const Domain& d = problem.domain;
    if (d.lower.kind == EndKind::Infinite || d.upper.kind == EndKind::Infinite) {
        throw Error(ErrorKind::InvalidArgument, "minimalist phase shooting needs a finite interval");
    }
    const double a = d.lower.value;
    const double b = d.upper.value;
    const Complex phi0 = phase_for_ratio(sub, a, problem.boundaries.first);
    const Complex target = phase_for_ratio(sub, b, problem.boundaries.second);

    OdeSystem sys{1, [&](double x, std::span<const Complex> y, Complex lam, std::span<Complex> dy) {
                      dy[0] = phi_rhs(problem, sub, x, y[0], lam);
                  }};
    const Complex y0[1] = {phi0};
    Trajectory traj = integrate(sys, a, b, y0, lambda, tol, {}, recording);
    if (traj.stop_reason != StopReason::ReachedEnd) {
        throw Error(ErrorKind::NoConvergence, "phase integration stopped at x = " + std::to_string(traj.x_end()));
    }
    const Complex phi_end = traj.y_end()[0];
    return {phi_end, target, (phi_end - target).real() / (2.0 * kPi), std::move(traj)};
}

}  // namespace schwarzsl
