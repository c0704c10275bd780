#include "schwarzsl/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace schwarzsl {

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::ReachedEnd: return "ReachedEnd";
        case StopReason::EventFired: return "EventFired";
        case StopReason::StepFailure: return "StepFailure";
    }
    return "Unknown";
}

void Trajectory::push(double x, std::span<const Complex> y) {
    xs_.push_back(x);
    ys_.insert(ys_.end(), y.begin(), y.end());
}

void Trajectory::replace_last(double x, std::span<const Complex> y) {
    xs_.back() = x;
    std::copy(y.begin(), y.end(), ys_.end() - static_cast<std::ptrdiff_t>(dim_));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants (Hairer, Norsett & Wanner).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kFacMaxInv = 1.0 / 10.0;  // at most 10x growth
constexpr double kFacMinInv = 5.0;         // at most 5x shrink

bool all_finite(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(), [](Complex z) { return is_finite(z); });
}

double scale(double part_a, double part_b, const Tolerances& tol) {
    return tol.abs + tol.rel * std::max(std::abs(part_a), std::abs(part_b));
}

// RMS norm over real and imaginary parts taken as separate components.
double error_norm(std::span<const Complex> err, std::span<const Complex> y0, std::span<const Complex> y1,
                  const Tolerances& tol) {
    double sum = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        const double sr = scale(y0[i].real(), y1[i].real(), tol);
        const double si = scale(y0[i].imag(), y1[i].imag(), tol);
        const double er = err[i].real() / sr;
        const double ei = err[i].imag() / si;
        sum += er * er + ei * ei;
    }
    const double n = 2.0 * static_cast<double>(err.size());
    const double v = std::sqrt(sum / n);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

double initial_step(const OdeSystem& sys, double x0, std::span<const Complex> y0, std::span<const Complex> f0,
                    Complex lambda, double direction, double hmax, const Tolerances& tol) {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double sr = tol.abs + tol.rel * std::abs(y0[i].real());
        const double si = tol.abs + tol.rel * std::abs(y0[i].imag());
        dnf += std::pow(f0[i].real() / sr, 2) + std::pow(f0[i].imag() / si, 2);
        dny += std::pow(y0[i].real() / sr, 2) + std::pow(y0[i].imag() / si, 2);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax);

    std::vector<Complex> y1(y0.size()), f1(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + direction * h * f0[i];
    sys.rhs(x0 + direction * h, y1, lambda, f1);

    double der2 = 0.0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double sr = tol.abs + tol.rel * std::abs(y0[i].real());
        const double si = tol.abs + tol.rel * std::abs(y0[i].imag());
        der2 += std::pow((f1[i] - f0[i]).real() / sr, 2) + std::pow((f1[i] - f0[i]).imag() / si, 2);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = (!std::isfinite(der12) || der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                                                 : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, hmax});
}

}  // namespace

Trajectory integrate(const OdeSystem& sys, double x0, double x1, std::span<const Complex> y0, Complex lambda,
                     const Tolerances& tol, const EventFn& event, Recording recording) {
    const std::size_t n = sys.dimension;
    if (y0.size() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "initial state has " + std::to_string(y0.size()) + " components, system expects " +
                        std::to_string(n));
    }
    if (!(x0 != x1) || !std::isfinite(x0) || !std::isfinite(x1)) {
        throw Error(ErrorKind::InvalidArgument, "integration interval must be finite and non-empty");
    }
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0) || tol.max_steps < 1) {
        throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
    }

    Trajectory traj(n);
    const double direction = x1 > x0 ? 1.0 : -1.0;
    const double span_len = std::abs(x1 - x0);

    std::vector<Complex> y(y0.begin(), y0.end()), ynew(n), ystage(n), err(n);
    std::array<std::vector<Complex>, 7> k;
    for (auto& ki : k) ki.resize(n);

    sys.rhs(x0, y, lambda, k[0]);
    if (!all_finite(y) || !all_finite(k[0])) {
        throw Error(ErrorKind::NonFiniteRhs, "right-hand side is not finite at the initial point");
    }
    traj.push(x0, y);

    double x = x0;
    double h = initial_step(sys, x0, y, k[0], lambda, direction, span_len, tol);
    double facold = 1e-4;
    bool last_rejected = false;

    auto stage = [&](std::initializer_list<std::pair<double, int>> terms, double hs) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc{0.0, 0.0};
            for (const auto& [a, j] : terms) acc += a * k[static_cast<std::size_t>(j)][i];
            ystage[i] = y[i] + hs * acc;
        }
    };

    while (true) {
        const double remaining = std::abs(x1 - x);
        if (remaining <= 0.0) {
            traj.stop_reason = StopReason::ReachedEnd;
            break;
        }
        if (traj.steps_taken + traj.steps_rejected >= tol.max_steps) {
            traj.stop_reason = StopReason::StepFailure;
            break;
        }
        bool final_step = false;
        if (h >= remaining) {
            h = remaining;
            final_step = true;
        }
        const double min_h = std::max(tol.min_step, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(x));
        if (h < min_h && !final_step) {
            traj.stop_reason = StopReason::StepFailure;
            break;
        }

        const double hs = direction * h;
        stage({{a21, 0}}, hs);
        sys.rhs(x + c2 * hs, ystage, lambda, k[1]);
        stage({{a31, 0}, {a32, 1}}, hs);
        sys.rhs(x + c3 * hs, ystage, lambda, k[2]);
        stage({{a41, 0}, {a42, 1}, {a43, 2}}, hs);
        sys.rhs(x + c4 * hs, ystage, lambda, k[3]);
        stage({{a51, 0}, {a52, 1}, {a53, 2}, {a54, 3}}, hs);
        sys.rhs(x + c5 * hs, ystage, lambda, k[4]);
        stage({{a61, 0}, {a62, 1}, {a63, 2}, {a64, 3}, {a65, 4}}, hs);
        const double xnew = final_step ? x1 : x + hs;
        sys.rhs(xnew, ystage, lambda, k[5]);
        for (std::size_t i = 0; i < n; ++i) {
            ynew[i] = y[i] + hs * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] + a76 * k[5][i]);
        }
        sys.rhs(xnew, ynew, lambda, k[6]);
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = hs * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
        }

        double e = error_norm(err, y, ynew, tol);
        if (!all_finite(ynew) || !all_finite(k[6])) e = std::numeric_limits<double>::infinity();

        const double fac11 = std::pow(e, kExpo);
        if (e <= 1.0) {
            double fac = fac11 / std::pow(facold, kBeta);
            fac = std::clamp(fac / kSafety, kFacMaxInv, kFacMinInv);
            double hnew = h / fac;
            if (last_rejected) hnew = std::min(hnew, h);
            facold = std::max(e, 1e-4);

            x = xnew;
            std::swap(y, ynew);
            std::swap(k[0], k[6]);
            ++traj.steps_taken;
            if (recording == Recording::Full || traj.size() < 2) {
                traj.push(x, y);
            } else {
                traj.replace_last(x, y);
            }
            last_rejected = false;
            h = hnew;

            if (event && event(x, y)) {
                traj.stop_reason = StopReason::EventFired;
                break;
            }
            if (final_step) {
                traj.stop_reason = StopReason::ReachedEnd;
                break;
            }
        } else {
            ++traj.steps_rejected;
            const double shrink = std::isfinite(fac11) ? std::min(kFacMinInv, fac11 / kSafety) : kFacMinInv;
            h /= shrink;
            last_rejected = true;
        }
    }
    return traj;
}

std::pair<Trajectory, Trajectory> integrate_bidirectional(const OdeSystem& sys, double start,
                                                          std::pair<double, double> cuts,
                                                          std::span<const Complex> y0, Complex lambda,
                                                          const Tolerances& tol, const EventFn& event,
                                                          Recording recording) {
    if (!(cuts.first < start && start < cuts.second)) {
        throw Error(ErrorKind::InvalidArgument, "integration cuts must straddle the launch point");
    }
    return {integrate(sys, start, cuts.first, y0, lambda, tol, event, recording),
            integrate(sys, start, cuts.second, y0, lambda, tol, event, recording)};
}

}  // namespace schwarzsl
