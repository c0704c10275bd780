#include "schwarzsl/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schwarzsl/minimalist.hpp"

namespace schwarzsl {

std::string_view to_string(Approach approach) { return approach == Approach::G ? "schwarzian-g" : "schwarzian-phi"; }

GState g_system_rhs(const SLProblem& problem, double x, const GState& s, Complex lambda) {
    const Complex p = problem.coefficients.eval_p(x, lambda);
    const Complex q = problem.coefficients.eval_q(x, lambda);
    return {-s.fp * s.fp / p - q, s.fp / p, std::exp(-2.0 * s.lam) / p};
}

PhiState phi_system_rhs(const SLProblem& problem, double x, const PhiState& s, Complex lambda) {
    const Complex p = problem.coefficients.eval_p(x, lambda);
    const Complex q = problem.coefficients.eval_q(x, lambda);
    return {(s.f2 * s.f2 - s.f1 * s.f1) / p - q, -2.0 * s.f1 * s.f2 / p, 2.0 * s.f2 / p};
}

OdeSystem g_system(const SLProblem& problem) {
    return {3, [&problem](double x, std::span<const Complex> y, Complex lam, std::span<Complex> dy) {
                const GState d = g_system_rhs(problem, x, GState::from(y), lam);
                dy[0] = d.fp;
                dy[1] = d.lam;
                dy[2] = d.g;
            }};
}

OdeSystem phi_system(const SLProblem& problem) {
    return {3, [&problem](double x, std::span<const Complex> y, Complex lam, std::span<Complex> dy) {
                const PhiState d = phi_system_rhs(problem, x, PhiState::from(y), lam);
                dy[0] = d.f1;
                dy[1] = d.f2;
                dy[2] = d.phi;
            }};
}

PhiState default_initial_state(const SLProblem& problem, double x0, Complex lambda) {
    const auto& c = problem.coefficients;
    const Complex k2 = kappa_squared(c, x0, lambda);
    const Complex p = c.eval_p(x0, lambda);
    const double scale = std::max(1.0, std::abs(c.eval_q(x0, lambda) / p));
    if (std::abs(k2) <= 1e-12 * scale) {
        throw Error(ErrorKind::DegenerateLaunch, "kappa^2 vanishes at the launch point x = " + std::to_string(x0));
    }
    return {-c.eval_p_prime(x0, lambda) / 2.0, p * std::sqrt(k2), {0.0, 0.0}};
}

GState default_g_launch(const SLProblem& problem, double x0, Complex lambda) {
    const PhiState s = default_initial_state(problem, x0, lambda);
    return {s.f1 + kI * s.f2, {0.0, 0.0}, {0.0, 0.0}};
}

Complex solve_constant_from_bc(const GState& end, const BoundarySpec& bc) {
    if (bc.kind == BoundarySpec::Kind::Quantization || bc.ratio_infinite) return -end.g;
    const Complex den = bc.ratio - end.fp;
    if (std::abs(den) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(bc.ratio), 1.0)) {
        throw Error(ErrorKind::DegenerateBoundary, "boundary ratio coincides with the particular solution F_p");
    }
    return std::exp(-2.0 * end.lam) / den - end.g;
}

Complex solve_constant_from_bc(const PhiState& end, const BoundarySpec& bc) {
    if (bc.kind == BoundarySpec::Kind::Quantization || bc.ratio_infinite) return -end.phi;
    if (!(std::abs(end.f2) >= std::numeric_limits<double>::min())) {
        throw Error(ErrorKind::DegenerateBoundary, "F2 vanishes where the boundary ratio is imposed");
    }
    return cot_inverse_phase((bc.ratio - end.f1) / end.f2) - end.phi;
}

namespace {

constexpr double kSingularTol = 1e-9;

}  // namespace

Complex reconstruct_F(const GState& s, Complex constant) {
    const Complex den = s.g + constant;
    const Complex weight = std::exp(-2.0 * s.lam);
    const double scale = std::max({1.0, std::abs(s.g), std::abs(constant)});
    if (std::abs(den) <= kSingularTol * scale && std::abs(weight) <= kSingularTol * std::max(1.0, std::abs(s.fp))) {
        return -s.fp;
    }
    return s.fp + weight / den;
}

Complex reconstruct_F(const PhiState& s, Complex constant) {
    const Complex half = 0.5 * (s.phi + constant);
    const Complex sn = std::sin(half);
    if (std::abs(sn) <= kSingularTol && std::abs(s.f2) <= kSingularTol * std::max(1.0, std::abs(s.f1))) {
        return -s.f1;
    }
    return s.f1 + s.f2 * std::cos(half) / sn;
}

namespace {

void check_launch_cuts(const SLProblem& problem) {
    const Domain& d = problem.domain;
    if (!(d.lower_cut < d.start && d.start < d.upper_cut)) {
        throw Error(ErrorKind::InvalidArgument, "launch point must lie strictly inside the cuts");
    }
}

}  // namespace

SchwarzianRun shoot(const SLProblem& problem, Complex lambda, const PhiState& launch, const ShootOptions& opts) {
    check_launch_cuts(problem);
    const double f2_launch = std::abs(launch.f2);
    if (!(f2_launch > 0.0)) throw Error(ErrorKind::DegenerateLaunch, "F2 must be nonzero at launch");
    const double threshold = opts.decay_threshold * f2_launch;
    EventFn decayed = [threshold](double, std::span<const Complex> y) { return std::abs(y[1]) < threshold; };

    const auto y0 = launch.to_array();
    auto [lo, hi] = integrate_bidirectional(phi_system(problem), problem.domain.start, problem.domain.cuts(), y0,
                                            lambda, opts.tol, decayed, opts.recording);
    return {Approach::Phi, std::move(lo), std::move(hi)};
}

SchwarzianRun shoot(const SLProblem& problem, Complex lambda, const GState& launch, const ShootOptions& opts) {
    check_launch_cuts(problem);
    const auto& c = problem.coefficients;
    const double w_launch = std::abs(std::exp(-2.0 * launch.lam) / c.eval_p(problem.domain.start, lambda));
    if (!(w_launch > 0.0) || !std::isfinite(w_launch)) {
        throw Error(ErrorKind::DegenerateLaunch, "e^{-2 Lambda} must be finite and nonzero at launch");
    }
    const double threshold = opts.decay_threshold * w_launch;
    EventFn decayed = [threshold, &c, lambda](double x, std::span<const Complex> y) {
        return std::abs(std::exp(-2.0 * y[1]) / c.eval_p(x, lambda)) < threshold;
    };

    const auto y0 = launch.to_array();
    auto [lo, hi] = integrate_bidirectional(g_system(problem), problem.domain.start, problem.domain.cuts(), y0,
                                            lambda, opts.tol, decayed, opts.recording);
    return {Approach::G, std::move(lo), std::move(hi)};
}

namespace {

Complex constant_at(const SchwarzianRun& run, std::span<const Complex> end, const BoundarySpec& bc) {
    return run.approach == Approach::Phi ? solve_constant_from_bc(PhiState::from(end), bc)
                                         : solve_constant_from_bc(GState::from(end), bc);
}

QuantizationResult make_result(const SchwarzianRun& run, Complex low, Complex high) {
    if (run.approach == Approach::Phi) {
        return {(high - low) / (2.0 * kPi), QuantizationResult::Kind::PhiWinding};
    }
    return {high - low, QuantizationResult::Kind::GDifference};
}

}  // namespace

QuantizationResult quantization(const SLProblem& problem, const SchwarzianRun& run) {
    if (problem.boundaries.first.kind != BoundarySpec::Kind::Quantization ||
        problem.boundaries.second.kind != BoundarySpec::Kind::Quantization) {
        throw Error(ErrorKind::NotAsymptotic, "quantization needs Quantization specs at both ends");
    }
    const std::size_t slot = 2;  // g or Phi
    return make_result(run, run.low_end()[slot], run.high_end()[slot]);
}

QuantizationResult boundary_mismatch(const SLProblem& problem, const SchwarzianRun& run) {
    // Both ends are satisfied by one constant iff the constants each end
    // demands agree (mod 2 pi for Phi).
    const Complex c_low = constant_at(run, run.low_end(), problem.boundaries.first);
    const Complex c_high = constant_at(run, run.high_end(), problem.boundaries.second);
    return make_result(run, /*low=*/c_high, /*high=*/c_low);
}

double phi_winding(const SLProblem& problem, Complex lambda, const ShootOptions& opts) {
    const PhiState launch = default_initial_state(problem, problem.domain.start, lambda);
    return quantization(problem, shoot(problem, lambda, launch, opts)).value.real();
}

Complex g_difference(const SLProblem& problem, Complex lambda, const ShootOptions& opts) {
    const GState launch = default_g_launch(problem, problem.domain.start, lambda);
    return quantization(problem, shoot(problem, lambda, launch, opts)).value;
}

Complex lower_asymptotic_constant(const SchwarzianRun& run) { return -run.low_end()[2]; }

SampledFunction eigenfunction(const SchwarzianRun& run, Complex constant) {
    SampledFunction out;
    auto append = [&](double x, std::span<const Complex> y) {
        out.x.push_back(x);
        out.state.push_back({y[0], y[1], y[2]});
    };
    for (std::size_t i = run.lower.size(); i-- > 0;) append(run.lower.x(i), run.lower.state(i));
    for (std::size_t i = 1; i < run.upper.size(); ++i) append(run.upper.x(i), run.upper.state(i));

    const std::size_t n = out.x.size();
    out.f.resize(n);
    out.F.resize(n);
    if (run.approach == Approach::G) {
        for (std::size_t i = 0; i < n; ++i) {
            const GState s = GState::from(out.state[i]);
            out.f[i] = (s.g + constant) * std::exp(s.lam);
            out.F[i] = reconstruct_F(s, constant);
        }
        return out;
    }

    // f = sin((Phi + C)/2) / sqrt(F2), keeping sqrt(F2) on one continuous branch:
    // flip sign whenever Arg F2 jumps across the cut at +-pi.
    double sign = 1.0;
    double prev_arg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const PhiState s = PhiState::from(out.state[i]);
        const double arg = std::arg(s.f2);
        if (i > 0 && std::abs(arg - prev_arg) > kPi) sign = -sign;
        prev_arg = arg;
        out.f[i] = std::sin(0.5 * (s.phi + constant)) / (sign * std::sqrt(s.f2));
        out.F[i] = reconstruct_F(s, constant);
    }
    return out;
}

SampledSchwarzian schwarzian_derivative(std::span<const Complex> g, double h) {
    const std::size_t n = g.size();
    if (n < 7) throw Error(ErrorKind::InsufficientSamples, "need at least 7 uniformly spaced samples");
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");

    SampledSchwarzian out;
    out.first_index = 3;
    out.values.reserve(n - 6);
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const Complex d1 = (g[i - 2] - 8.0 * g[i - 1] + 8.0 * g[i + 1] - g[i + 2]) / (12.0 * h);
        const Complex d2 = (-g[i - 2] + 16.0 * g[i - 1] - 30.0 * g[i] + 16.0 * g[i + 1] - g[i + 2]) / (12.0 * h * h);
        const Complex d3 = (g[i - 3] - 8.0 * g[i - 2] + 13.0 * g[i - 1] - 13.0 * g[i + 1] + 8.0 * g[i + 2] - g[i + 3]) /
                           (8.0 * h * h * h);
        if (!(std::abs(d1) > 0.0)) {
            throw Error(ErrorKind::ZeroDerivative, "g' vanishes at grid index " + std::to_string(i));
        }
        const Complex r = d2 / d1;
        out.values.push_back(d3 / d1 - 1.5 * r * r);
    }
    return out;
}

}  // namespace schwarzsl
