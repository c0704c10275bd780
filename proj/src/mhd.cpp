#include "schwarzsl/mhd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schwarzsl {

std::vector<double> MhdEquilibrium::interfaces() const {
    std::vector<double> out;
    for (std::size_t i = 1; i < segments.size(); ++i) out.push_back(segments[i].lower);
    return out;
}

const ProfileSegment& MhdEquilibrium::segment_at(double w) const {
    for (std::size_t i = segments.size(); i-- > 0;) {
        if (w >= segments[i].lower) return segments[i];
    }
    return segments.front();
}

void MhdEquilibrium::check() const {
    if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "equilibrium has no segments");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!(s.upper > s.lower)) throw Error(ErrorKind::InvalidArgument, "segment bounds must increase");
        if (!s.rho || !s.pressure || !s.velocity || !s.b_z || !s.b_phi) {
            throw Error(ErrorKind::InvalidArgument, "segment is missing a profile");
        }
        if (i > 0 && segments[i - 1].upper != s.lower) {
            throw Error(ErrorKind::InvalidArgument, "segments must be contiguous");
        }
    }
    if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
}

CoefficientRatios coefficient_ratios(const ProfileSegment& seg, double gamma, const ModeParams& mode, double w) {
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
    const double rho = seg.rho(w);
    const double pressure = seg.pressure(w);
    const double bz = seg.b_z(w);
    const double bphi = seg.b_phi(w);
    const double k = mode.k;
    const double m_w = mode.m / w;

    const Complex om = mode.omega - k * seg.velocity(w);
    const Complex om2 = om * om;
    const double kb = k * bz + m_w * bphi;
    const double b2 = bz * bz + bphi * bphi;
    const double kco2 = k * k + m_w * m_w;

    const Complex a = rho * om2 - kb * kb;
    const double a_scale = rho * std::abs(om2) + kb * kb;
    if (std::abs(a) <= 1e-13 * a_scale || a_scale == 0.0) {
        throw Error(ErrorKind::SingularSurface,
                    "rho omega_co^2 - (k_co.B)^2 vanishes at w = " + std::to_string(w));
    }

    Complex kappa2;
    if (pressure == 0.0) {
        if (b2 == 0.0) {
            throw Error(ErrorKind::SingularSurface, "kappa denominator vanishes (no pressure, no field) at w = " +
                                                        std::to_string(w));
        }
        kappa2 = rho * om2 / b2 - kco2;
    } else {
        const double cs2 = gamma * pressure / rho;
        const Complex den = (rho * cs2 + b2) * om2 - cs2 * kb * kb;
        const double den_scale = (rho * cs2 + b2) * std::abs(om2) + cs2 * kb * kb;
        if (std::abs(den) <= 1e-13 * den_scale) {
            throw Error(ErrorKind::SingularSurface, "kappa denominator vanishes at w = " + std::to_string(w));
        }
        kappa2 = rho * om2 * om2 / den - kco2;
    }

    CoefficientRatios r;
    r.f11 = -(bphi * bphi * kappa2 + 2.0 * bphi * k * (bphi * k - bz * m_w)) / (a * w);
    r.f22 = -r.f11;
    r.f12 = kappa2 * w / a;
    r.f21 = -(a + (bphi * bphi / (w * w)) * (bphi * bphi * kappa2 - 4.0 * bz * k * kb) / a) / w;
    return r;
}

CoefficientRatios coefficient_ratios(const MhdEquilibrium& eq, const ModeParams& mode, double w) {
    return coefficient_ratios(eq.segment_at(w), eq.gamma, mode, w);
}

Complex y_riccati_rhs(const CoefficientRatios& r, Complex Y) { return r.f21 * Y * Y + (r.f22 - r.f11) * Y - r.f12; }

Y1State y1_g_system_rhs(const CoefficientRatios& r, const Y1State& s) {
    const Complex y4 = s[0];
    const Complex y3 = s[1];
    return {-r.f21 - (r.f22 - r.f11) * y4 + r.f12 * y4 * y4, -y4 * r.f12 + 0.5 * (r.f22 - r.f11),
            r.f12 * std::exp(-2.0 * y3), r.f11 + r.f22};
}

Y1State y1_phi_system_rhs(const CoefficientRatios& r, const Y1State& s) {
    const Complex y4 = s[0];
    const Complex y3 = s[1];
    return {-r.f21 - (r.f22 - r.f11) * y4 + (y4 * y4 - y3 * y3) * r.f12, 2.0 * y3 * y4 * r.f12 + (r.f11 - r.f22) * y3,
            2.0 * y3 * r.f12, r.f11 + r.f22};
}

Complex inverse_y(Approach approach, const Y1State& s, Complex constant) {
    if (approach == Approach::G) return s[0] - std::exp(-2.0 * s[1]) / (s[2] + constant);
    const Complex half = 0.5 * (s[2] + constant);
    return s[0] - s[1] * std::cos(half) / std::sin(half);
}

namespace {

using SegmentRhs = std::function<void(const ProfileSegment&, double, std::span<const Complex>, Complex,
                                      std::span<Complex>)>;

/// Splits [from, to] at interfaces and integrates each leg with the
/// segment it lies in.
Trajectory integrate_segments(const MhdEquilibrium& eq, std::size_t dim, const SegmentRhs& rhs, double from,
                              double to, std::span<const Complex> y0, Complex omega, const Tolerances& tol,
                              Recording recording) {
    eq.check();
    std::vector<double> stops{from};
    for (double x : eq.interfaces()) {
        if ((x - from) * (to - x) > 0.0) stops.push_back(x);
    }
    std::sort(stops.begin() + 1, stops.end(), [&](double a, double b) { return (to > from) ? a < b : a > b; });
    stops.push_back(to);

    Trajectory out(dim);
    std::vector<Complex> y(y0.begin(), y0.end());
    for (std::size_t leg = 0; leg + 1 < stops.size(); ++leg) {
        const double a = stops[leg];
        const double b = stops[leg + 1];
        const ProfileSegment& seg = eq.segment_at(0.5 * (a + b));
        OdeSystem sys{dim, [&seg, &rhs](double x, std::span<const Complex> s, Complex lam, std::span<Complex> d) {
                          rhs(seg, x, s, lam, d);
                      }};
        Trajectory part = integrate(sys, a, b, y, omega, tol, {}, recording);
        const std::size_t first = out.empty() ? 0 : 1;
        for (std::size_t i = first; i < part.size(); ++i) out.push(part.x(i), part.state(i));
        out.steps_taken += part.steps_taken;
        out.steps_rejected += part.steps_rejected;
        out.stop_reason = part.stop_reason;
        if (part.stop_reason != StopReason::ReachedEnd) break;
        auto last = part.y_end();
        y.assign(last.begin(), last.end());
    }
    if (recording == Recording::TerminalOnly && out.size() > 2) {
        Trajectory trimmed(dim);
        trimmed.push(out.x(0), out.state(0));
        trimmed.push(out.x_end(), out.y_end());
        trimmed.steps_taken = out.steps_taken;
        trimmed.steps_rejected = out.steps_rejected;
        trimmed.stop_reason = out.stop_reason;
        return trimmed;
    }
    return out;
}

}  // namespace

Trajectory integrate_y1(const MhdEquilibrium& eq, const ModeParams& mode, Approach approach, double from, double to,
                        const Y1State& y0, const Tolerances& tol, Recording recording) {
    const double gamma = eq.gamma;
    SegmentRhs rhs = [&mode, gamma, approach](const ProfileSegment& seg, double w, std::span<const Complex> s,
                                               Complex omega, std::span<Complex> d) {
        ModeParams at = mode;
        at.omega = omega;
        const CoefficientRatios r = coefficient_ratios(seg, gamma, at, w);
        const Y1State st{s[0], s[1], s[2], s[3]};
        const Y1State out = approach == Approach::G ? y1_g_system_rhs(r, st) : y1_phi_system_rhs(r, st);
        std::copy(out.begin(), out.end(), d.begin());
    };
    return integrate_segments(eq, 4, rhs, from, to, y0, mode.omega, tol, recording);
}

Trajectory integrate_y(const MhdEquilibrium& eq, const ModeParams& mode, double from, double to, Complex Y0,
                       const Tolerances& tol, Recording recording) {
    const double gamma = eq.gamma;
    SegmentRhs rhs = [&mode, gamma](const ProfileSegment& seg, double w, std::span<const Complex> s, Complex omega,
                                    std::span<Complex> d) {
        ModeParams at = mode;
        at.omega = omega;
        d[0] = y_riccati_rhs(coefficient_ratios(seg, gamma, at, w), s[0]);
    };
    const Complex y0[1] = {Y0};
    return integrate_segments(eq, 1, rhs, from, to, y0, mode.omega, tol, recording);
}

AxisLimits axis_limits(const MhdEquilibrium& eq, const ModeParams& mode) {
    constexpr double h = 1e-4;
    AxisLimits out;
    out.m_zero = mode.m == 0;

    auto scaled = [&](double w) {
        const CoefficientRatios r = coefficient_ratios(eq, mode, w);
        if (out.m_zero) return std::array<Complex, 4>{r.f11 / w, r.f12 / w, r.f21 * w, r.f22 / w};
        return std::array<Complex, 4>{r.f11 * w, r.f12 * w, r.f21 * w, r.f22 * w};
    };
    const auto coarse = scaled(h);
    const auto fine = scaled(0.5 * h);
    std::array<Complex, 4> lim{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double mag = std::max({1.0, std::abs(coarse[i]), std::abs(fine[i])});
        // O(w^2) corrections give |coarse - fine| ~ (3/4) c h^2.
        if (!is_finite(coarse[i]) || !is_finite(fine[i]) || std::abs(coarse[i] - fine[i]) > 1e-4 * mag) {
            throw Error(ErrorKind::LimitNotConverged, "axis limit " + std::to_string(i) + " does not settle");
        }
        lim[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    out.l11 = lim[0];
    out.l12 = lim[1];
    out.l21 = lim[2];
    out.l22 = lim[3];
    if (std::abs(out.l12) == 0.0) throw Error(ErrorKind::LimitNotConverged, "axis limit of F12/D is zero");

    if (out.m_zero) {
        out.acceptable = -2.0 / out.l12;
    } else {
        const double am = std::abs(mode.m);
        out.antisymmetry_residual = std::abs(out.l22 + out.l11);
        out.determinant_residual = std::abs(out.l11 * out.l11 + out.l12 * out.l21 - am * am);
        out.acceptable = -(am + out.l11) / out.l12;
    }
    return out;
}

double equilibrium_residual(const MhdEquilibrium& eq, int samples, double outer) {
    eq.check();
    double worst = 0.0;
    for (const auto& seg : eq.segments) {
        const double lo = seg.lower;
        const double hi = std::isfinite(seg.upper) ? seg.upper : std::max(outer, lo + 1.0);
        for (int i = 1; i <= samples; ++i) {
            const double w = lo + (hi - lo) * i / (samples + 1.0);
            const double h = 1e-3 * std::max(w, 1e-3);
            auto dd = [&](const auto& f) { return (f(w + h) - f(w - h)) / (2.0 * h); };
            const double dp = dd(seg.pressure);
            const double dbz = dd([&](double x) { return 0.5 * seg.b_z(x) * seg.b_z(x); });
            const double dbp = dd([&](double x) {
                const double v = x * seg.b_phi(x);
                return 0.5 * v * v;
            });
            worst = std::max(worst, std::abs(dp + dbz + dbp / (w * w)));
        }
    }
    return worst;
}

double CohnJetModel::field_constant() const { return std::sqrt(2.0 * jet_pressure()) * radius; }

MhdEquilibrium CohnJetModel::to_equilibrium() const {
    if (!(eta > 0.0)) throw Error(ErrorKind::InvalidArgument, "density ratio eta must be positive");
    if (!(mach >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Mach number must be non-negative");
    const double p_j = jet_pressure();
    const double field = field_constant();
    const double m = mach;
    const double e = eta;
    auto constant = [](double v) { return [v](double) { return v; }; };

    MhdEquilibrium eq;
    eq.gamma = gamma;
    eq.segments.push_back({0.0, radius, constant(1.0), constant(p_j), constant(m), constant(0.0), constant(0.0)});
    eq.segments.push_back({radius, std::numeric_limits<double>::infinity(), constant(e), constant(0.0), constant(0.0),
                           constant(0.0), [field](double w) { return field / w; }});
    return eq;
}

Y1State default_jet_launch(Approach approach) {
    if (approach == Approach::G) return {Complex{}, Complex{}, Complex{}, Complex{}};
    return {Complex{}, Complex{1.0, 0.0}, Complex{}, Complex{}};
}

JetRun jet_run(const MhdEquilibrium& eq, const ModeParams& mode, Approach approach, const Y1State& launch,
               const JetOptions& opts) {
    const auto [lo, hi] = opts.cuts;
    if (!(lo > 0.0 && lo < opts.launch_point && opts.launch_point < hi)) {
        throw Error(ErrorKind::InvalidArgument, "need 0 < lower cut < launch point < upper cut");
    }
    JetRun run;
    run.approach = approach;
    run.inner = integrate_y1(eq, mode, approach, opts.launch_point, lo, launch, opts.tol, opts.recording);
    run.outer = integrate_y1(eq, mode, approach, opts.launch_point, hi, launch, opts.tol, opts.recording);
    for (const Trajectory* t : {&run.inner, &run.outer}) {
        if (t->stop_reason != StopReason::ReachedEnd) {
            throw Error(ErrorKind::NoConvergence, "jet integration stopped at w = " + std::to_string(t->x_end()));
        }
    }
    return run;
}

Complex jet_quantization(const JetRun& run) {
    const Complex axis = run.inner.y_end()[2];
    const Complex far = run.outer.y_end()[2];
    if (run.approach == Approach::G) return far - axis;
    return std::sin(0.5 * (far - axis));
}

Complex jet_quantization(const MhdEquilibrium& eq, const ModeParams& mode, Approach approach, const Y1State& launch,
                         const JetOptions& opts) {
    return jet_quantization(jet_run(eq, mode, approach, launch, opts));
}

Complex axis_constant(const JetRun& run) { return -run.inner.y_end()[2]; }

SampledY eigenfunctions_y(const JetRun& run, Complex constant) {
    SampledY out;
    std::vector<Y1State> states;
    auto append = [&](double w, std::span<const Complex> s) {
        out.w.push_back(w);
        states.push_back({s[0], s[1], s[2], s[3]});
    };
    for (std::size_t i = run.inner.size(); i-- > 0;) append(run.inner.x(i), run.inner.state(i));
    for (std::size_t i = 1; i < run.outer.size(); ++i) append(run.outer.x(i), run.outer.state(i));

    // y1 and y2 are written so that neither divides by the factor that
    // vanishes on the quantized branch (g1 + C, or sin((Phi1 + C)/2)).
    double sign = 1.0;
    double prev_arg = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const Y1State& s = states[i];
        const Complex damp = std::exp(-0.5 * s[3]);
        Complex y1, y2;
        if (run.approach == Approach::G) {
            const Complex a = s[2] + constant;
            const Complex e3 = std::exp(s[1]);
            y1 = a * e3 * damp;
            y2 = (s[0] * a - std::exp(-2.0 * s[1])) * e3 * damp;
        } else {
            const double arg = std::arg(s[1]);
            if (i > 0 && std::abs(arg - prev_arg) > kPi) sign = -sign;
            prev_arg = arg;
            const Complex half = 0.5 * (s[2] + constant);
            const Complex amp = damp / (sign * std::sqrt(2.0 * s[1]));
            y1 = std::sin(half) * amp;
            y2 = (s[0] * std::sin(half) - s[1] * std::cos(half)) * amp;
        }
        out.y1.push_back(y1);
        out.y2.push_back(y2);
        out.Y.push_back(y1 / y2);
    }
    return out;
}

}  // namespace schwarzsl
