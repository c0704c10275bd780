// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "schwarzsl/catalog.hpp"
#include "schwarzsl/io.hpp"
#include "schwarzsl/mhd.hpp"
#include "schwarzsl/minimalist.hpp"
#include "schwarzsl/rootfind.hpp"
#include "schwarzsl/schwarzian.hpp"

using namespace schwarzsl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

// webs generated by any criterion; checked for winding conservation in 8
std::vector<SpectralWeb> all_webs;

void report(int id, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s (%.2f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v, int prec = 10) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; }

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> phi_scan_roots(const SLProblem& p, double lo, double hi, std::size_t n) {
    WindingFn fn = [&p](double lam) { return phi_winding(p, lam); };
    std::vector<double> out;
    for (const auto& c : scan_real(fn, lo, hi, n).crossings) out.push_back(c.lambda);
    return out;
}

std::vector<double> morse_phi_roots;

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SLProblem p = catalog::morse(5.0);
    morse_phi_roots = phi_scan_roots(p, 0.01, 24.99, 200);
    const double secs = elapsed_since(t0);
    const std::vector<double> want{4.75, 12.75, 18.75, 22.75, 24.75};
    std::string d = "roots:";
    bool ok = morse_phi_roots.size() == want.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < morse_phi_roots.size(); ++i) {
        d += " " + fmt(morse_phi_roots[i]);
        if (i < want.size()) worst = std::max(worst, std::abs(morse_phi_roots[i] - want[i]));
    }
    ok = ok && worst <= 1e-3 && secs < 30.0;
    return {ok, d + "; max error " + fmt(worst, 3) + " (limit 1e-3); runtime limit 30 s"};
}

Outcome criterion2() {
    const SLProblem p = catalog::morse(5.0);
    QuantizationFn qf = [&p](Complex lam) { return g_difference(p, lam); };
    const auto roots = scan_real_complex(qf, 0.01, 24.99, 200);
    if (morse_phi_roots.size() != 5) return {false, "phi reference roots unavailable"};
    if (roots.size() != 5) return {false, "found " + std::to_string(roots.size()) + " roots, expected 5"};
    double worst = 0.0;
    std::string d = "roots:";
    for (std::size_t i = 0; i < roots.size(); ++i) {
        d += " " + fmt(roots[i].root);
        worst = std::max(worst, std::abs(roots[i].root - morse_phi_roots[i]));
    }
    return {worst <= 1e-6, d + "; max |g - phi| " + fmt(worst, 3) + " (limit 1e-6)"};
}

Outcome criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto roots = phi_scan_roots(catalog::harmonic(), 0.01, 6.0, 200);
    const double secs = elapsed_since(t0);
    if (roots.size() != 6) return {false, "found " + std::to_string(roots.size()) + " roots, expected 6"};
    double worst = 0.0;
    for (std::size_t i = 0; i < roots.size(); ++i) worst = std::max(worst, std::abs(roots[i] - (i + 0.5)));
    return {worst <= 1e-4 && secs < 10.0, "max error " + fmt(worst, 3) + " (limit 1e-4); runtime limit 10 s"};
}

// Half a unit in the last printed digit of the published value.
double printed_half_ulp(double v) {
    const std::string s = io::format_double(v);
    const auto dot = s.find('.');
    const int decimals = dot == std::string::npos ? 0 : int(s.size() - dot - 1);
    return 0.5 * std::pow(10.0, -decimals);
}

Outcome criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const SLProblem p = catalog::paine();
    const PhiSubstitution sub = PhiSubstitution::simplest();
    WindingFn fn = [&](double lam) { return solve_finite_interval(p, sub, lam, {}).winding; };
    const RealScan scan = scan_real(fn, 0.0, 200.0, 400);
    const double secs = elapsed_since(t0);
    const auto& ref = catalog::paine_reference();
    std::vector<double> got;
    for (const auto& c : scan.crossings) got.push_back(c.lambda);
    if (got.size() < ref.size()) return {false, "found only " + std::to_string(got.size()) + " eigenvalues"};
    int strict = 0, five_sig = 0;
    std::string mism;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double diff = std::abs(got[i] - ref[i]);
        if (diff <= printed_half_ulp(ref[i])) {
            ++strict;
        } else {
            mism += " " + io::format_double(ref[i]) + "->" + fmt(got[i], 10);
        }
        const double scale = std::pow(10.0, std::floor(std::log10(ref[i])) - 4);
        if (std::abs(std::round(got[i] / scale) - std::round(ref[i] / scale)) == 0.0) ++five_sig;
    }
    const bool ok = strict == int(ref.size()) && secs < 10.0;
    std::string d = std::to_string(strict) + "/14 within half a unit of the last printed digit";
    d += "; " + std::to_string(five_sig) + "/14 equal when both are rounded to 5 significant figures";
    if (!mism.empty()) d += "; mismatches (printed->computed):" + mism;
    return {ok, d + "; runtime limit 10 s"};
}

Outcome criterion5() {
    const std::vector<Complex> kappas{{0.0, 1.0}, {1.0, 1.0}, {2.0, 0.5}};
    const std::vector<GState> g_launches{{{0.3, 0.1}, {}, {}}, {{-1.0, 2.0}, {0.0, 0.2}, {0.5, 0.0}},
                                         {{2.0, 0.0}, {}, {-1.0, 1.0}}};
    const std::vector<PhiState> phi_launches{{{0.0, 0.0}, {1.0, 0.0}, {}}, {{0.5, 0.0}, {1.5, 1.0}, {0.3, 0.0}},
                                             {{-1.0, 0.3}, {0.4, -0.8}, {1.0, 0.2}}};
    double worst_end = 0.0, worst_mid = 0.0;
    for (Complex kappa : kappas) {
        const SLProblem p = catalog::const_oscillator(kappa);
        ShootOptions o;
        o.recording = Recording::Full;
        const Complex want = kI * kappa;
        auto check_run = [&](const SchwarzianRun& run, auto reconstruct) {
            const auto& up = run.upper;
            const Complex C = run.approach == Approach::G
                                  ? solve_constant_from_bc(GState::from(up.y_end()), BoundarySpec::quantization())
                                  : solve_constant_from_bc(PhiState::from(up.y_end()), BoundarySpec::quantization());
            worst_end = std::max(worst_end, std::abs(reconstruct(up.y_end(), C) - want));
            // away from the 0/0 point, informational only
            for (std::size_t i = 0; i < up.size(); ++i) {
                if (up.x(i) >= 2.0 && up.x(i) <= 5.0) {
                    worst_mid = std::max(worst_mid, std::abs(reconstruct(up.state(i), C) - want));
                }
            }
        };
        for (const auto& l : g_launches) {
            check_run(shoot(p, 0.0, l, o),
                      [](std::span<const Complex> y, Complex C) { return reconstruct_F(GState::from(y), C); });
        }
        for (const auto& l : phi_launches) {
            check_run(shoot(p, 0.0, l, o),
                      [](std::span<const Complex> y, Complex C) { return reconstruct_F(PhiState::from(y), C); });
        }
    }
    return {worst_end <= 1e-8, "max |F - i kappa| at far end " + fmt(worst_end, 3) +
                                   " (limit 1e-8; 3 kappas x 3 launches x 2 approaches); on 2 <= x <= 5 " +
                                   fmt(worst_mid, 3) + " (not gated)"};
}

struct JetSolve {
    std::size_t plus_charges = 0;
    std::optional<ComplexRoot> root;
    std::string detail;
};

const Region kJetRegion{0.0, 6.0, 0.0, 4.0};
const Complex kJetTarget{3.08, 1.97};

JetSolve solve_jet(const Y1State& launch) {
    const auto cfg = catalog::cohn_jet();
    QuantizationFn qf = [&cfg, launch](Complex om) {
        return jet_quantization(cfg.equilibrium, {cfg.m, cfg.k, om}, Approach::G, launch);
    };
    SpectralWeb web = spectral_web(qf, kJetRegion, 200, 200, resolve_threads(8));
    JetSolve s;
    std::vector<Charge> plus;
    for (const auto& c : web.charges) {
        if (c.winding == 1) plus.push_back(c);
    }
    s.plus_charges = plus.size();
    s.detail = std::to_string(plus.size()) + " +1 charge(s), " + std::to_string(web.charges.size()) +
               " charge(s) total, " + std::to_string(web.missing) + " missing samples";
    if (plus.size() == 1) {
        s.root = refine_complex_root(qf, plus[0].location);
        s.detail += "; charge at " + fmt(plus[0].location) + " refined to " + fmt(s.root->root) +
                    (s.root->converged ? "" : " (not converged)");
    }
    all_webs.push_back(std::move(web));
    return s;
}

std::optional<Complex> default_jet_root;

Outcome criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    const JetSolve s = solve_jet(default_jet_launch(Approach::G));
    const double secs = elapsed_since(t0);
    bool ok = s.plus_charges == 1 && s.root && s.root->converged;
    if (ok) {
        default_jet_root = s.root->root;
        ok = std::abs(s.root->root.real() - kJetTarget.real()) <= 0.02 &&
             std::abs(s.root->root.imag() - kJetTarget.imag()) <= 0.02;
    }
    ok = ok && secs < 300.0;
    return {ok, "200x200 G web on [0,6]x[0,4]: " + s.detail + "; runtime limit 300 s with " +
                    std::to_string(resolve_threads(8)) + " workers"};
}

Outcome criterion7() {
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> roots;
    if (default_jet_root) roots.push_back(*default_jet_root);
    std::string d;
    bool ok = true;
    for (int trial = 0; trial < 3; ++trial) {
        Y1State launch{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}, Complex{}};
        const JetSolve s = solve_jet(launch);
        d += " [launch " + std::to_string(trial + 1) + ": " + s.detail + "]";
        if (s.plus_charges != 1 || !s.root || !s.root->converged) {
            ok = false;
            continue;
        }
        roots.push_back(s.root->root);
    }
    double spread = 0.0;
    for (const auto& a : roots) {
        for (const auto& b : roots) spread = std::max(spread, std::abs(a - b));
    }
    ok = ok && roots.size() == 4 && spread <= 1e-4;
    return {ok, "max root spread " + fmt(spread, 3) + " (limit 1e-4);" + d};
}

// Criterion 8 pieces.

double schwarzian_error(const std::function<Complex(double)>& g, const std::function<Complex(double)>& exact,
                        double x0, double h, int n) {
    std::vector<Complex> v(n);
    for (int i = 0; i < n; ++i) v[i] = g(x0 + i * h);
    const auto s = schwarzian_derivative(v, h);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double x = x0 + (s.first_index + i) * h;
        worst = std::max(worst, std::abs(s.values[i] - exact(x)));
    }
    return worst;
}

struct PropertyResult {
    bool ok;
    std::string line;
};

PropertyResult schwarzian_identities() {
    const double h = 1e-2;
    const int n = 201;
    const Complex a{1.0, 2.0}, b{-0.5, 0.0}, c{0.2, 0.1}, d{3.0, -1.0};
    auto mob = [&](Complex z) { return (a * z + b) / (c * z + d); };
    const double e_mob = schwarzian_error([&](double x) { return mob(Complex{x, 0.0}); },
                                          [](double) { return Complex{}; }, 0.0, h, n);
    auto g = [](double x) { return Complex{std::sin(x) + 0.3 * x * x, 0.1 * x}; };
    std::vector<Complex> gv(n);
    for (int i = 0; i < n; ++i) gv[i] = g(i * h);
    const auto sg = schwarzian_derivative(gv, h);
    const double e_inv = schwarzian_error(
        [&](double x) { return mob(g(x)); },
        [&](double x) { return sg.values[std::size_t(std::lround(x / h)) - sg.first_index]; }, 0.0, h, n);
    // {e^u, x} = -u'^2/2 + {u, x}, u = x^2/2 + x
    const double e_chain = schwarzian_error([](double x) { return Complex{std::exp(0.5 * x * x + x), 0.0}; },
                                            [](double x) { return Complex{-0.5 * (x + 1) * (x + 1) - 1.5 / ((x + 1) * (x + 1)), 0.0}; },
                                            0.0, h, 120);
    const bool ok = e_mob <= 1e-5 && e_inv <= 1e-5 && e_chain <= 1e-5;
    return {ok, "schwarzian mobius " + fmt(e_mob, 2) + " invariance " + fmt(e_inv, 2) + " chain " + fmt(e_chain, 2)};
}

PropertyResult winding_conservation() {
    // the jet webs plus synthetic webs with missing samples
    std::vector<SpectralWeb> webs = all_webs;
    const Region r{0.0, 6.0, 0.0, 4.0};
    webs.push_back(spectral_web([](Complex w) { return (w - Complex{1.0, 1.0}) * (w - Complex{4.0, 3.0}) /
                                                         (w - Complex{2.0, 2.5}); },
                                r, 80, 60));
    webs.push_back(spectral_web(
        [](Complex w) {
            if (std::abs(w - Complex{5.0, 0.5}) < 0.4) throw Error(ErrorKind::NoConvergence, "hole");
            return (w - Complex{3.0, 2.0}) * std::sin(w);
        },
        r, 70, 70));
    std::size_t bad = 0;
    for (const auto& w : webs) bad += w.total_winding != w.boundary_winding;
    return {bad == 0, "winding conservation " + std::to_string(webs.size() - bad) + "/" + std::to_string(webs.size()) +
                          " webs"};
}

PropertyResult equilibrium() {
    const double r = equilibrium_residual(catalog::cohn_jet().equilibrium);
    return {r <= 1e-10, "equilibrium residual " + fmt(r, 3)};
}

// Reference F from the plain Riccati equation, integrated between the
// recorded abscissae of `t`, compared pointwise with the split form.
double sl_riccati_gap(const SLProblem& p, Complex lam, const Trajectory& t,
                      const std::function<Complex(std::span<const Complex>)>& split, const Tolerances& tol) {
    OdeSystem ric{1, [&p](double x, std::span<const Complex> y, Complex l, std::span<Complex> d) {
                      d[0] = riccati_rhs(p, x, y[0], l);
                  }};
    Complex F[1] = {split(t.state(0))};
    double worst = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const Trajectory leg = integrate(ric, t.x(i - 1), t.x(i), F, lam, tol, {}, Recording::TerminalOnly);
        if (leg.stop_reason != StopReason::ReachedEnd) throw Error(ErrorKind::NoConvergence, "reference Riccati");
        F[0] = leg.y_end()[0];
        const Complex s = split(t.state(i));
        worst = std::max(worst, std::abs(F[0] - s) / std::max(1.0, std::abs(s)));
    }
    return worst;
}

double jet_riccati_gap(const MhdEquilibrium& eq, const ModeParams& mode, Approach ap, const Trajectory& t, Complex C,
                       const Tolerances& tol) {
    auto split = [&](std::span<const Complex> y) {
        Y1State s{y[0], y[1], y[2], y[3]};
        return 1.0 / inverse_y(ap, s, C);
    };
    Complex Y = split(t.state(0));
    double worst = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const Trajectory leg = integrate_y(eq, mode, t.x(i - 1), t.x(i), Y, tol, Recording::TerminalOnly);
        if (leg.stop_reason != StopReason::ReachedEnd) throw Error(ErrorKind::NoConvergence, "reference Y");
        Y = leg.y_end()[0];
        const Complex s = split(t.state(i));
        worst = std::max(worst, std::abs(Y - s) / std::max(1.0, std::abs(s)));
    }
    return worst;
}

PropertyResult riccati_vs_schwarzian() {
    const Tolerances tol{};
    const double limit = 10.0 * tol.rel;
    double morse = 0.0, cohn = 0.0;

    const SLProblem p = catalog::morse(5.0);
    const Complex lam{5.5, 0.3};
    const Complex C{0.7, -0.2};
    ShootOptions o;
    o.tol = tol;
    o.recording = Recording::Full;
    const SchwarzianRun rp = shoot(p, lam, default_initial_state(p, p.domain.start, lam), o);
    const SchwarzianRun rg = shoot(p, lam, default_g_launch(p, p.domain.start, lam), o);
    for (const Trajectory* t : {&rp.lower, &rp.upper}) {
        morse = std::max(morse, sl_riccati_gap(p, lam, *t,
                                               [&](std::span<const Complex> y) { return reconstruct_F(PhiState::from(y), C); },
                                               tol));
    }
    for (const Trajectory* t : {&rg.lower, &rg.upper}) {
        morse = std::max(morse, sl_riccati_gap(p, lam, *t,
                                               [&](std::span<const Complex> y) { return reconstruct_F(GState::from(y), C); },
                                               tol));
    }

    const auto cfg = catalog::cohn_jet();
    const ModeParams mode{cfg.m, cfg.k, default_jet_root.value_or(kJetTarget)};
    JetOptions jo;
    jo.tol = tol;
    jo.recording = Recording::Full;
    for (Approach ap : {Approach::G, Approach::Phi}) {
        const JetRun run = jet_run(cfg.equilibrium, mode, ap, default_jet_launch(ap), jo);
        for (const Trajectory* t : {&run.inner, &run.outer}) {
            cohn = std::max(cohn, jet_riccati_gap(cfg.equilibrium, mode, ap, *t, C, tol));
        }
    }
    return {morse <= limit && cohn <= limit,
            "riccati vs split F: morse " + fmt(morse, 3) + " cohn " + fmt(cohn, 3) + " (limit " + fmt(limit, 2) + ")"};
}

PropertyResult axis_identities() {
    const auto cfg = catalog::cohn_jet();
    double anti = 0.0, det = 0.0;
    for (int m : {1, 2, 3, -1}) {
        for (Complex om : {Complex{3.08, 1.97}, Complex{1.0, 0.5}}) {
            const AxisLimits a = axis_limits(cfg.equilibrium, {m, cfg.k, om});
            anti = std::max(anti, a.antisymmetry_residual);
            det = std::max(det, a.determinant_residual);
        }
    }
    return {anti <= 1e-6 && det <= 1e-6, "axis d22+d11 " + fmt(anti, 2) + " d11^2+d12 d21-m^2 " + fmt(det, 2)};
}

Outcome criterion8() {
    std::vector<PropertyResult> parts{schwarzian_identities(), winding_conservation(), equilibrium(),
                                      riccati_vs_schwarzian(), axis_identities()};
    bool ok = true;
    std::string d;
    for (const auto& p : parts) {
        ok = ok && p.ok;
        d += (d.empty() ? "" : "; ") + p.line + (p.ok ? "" : " [failed]");
    }
    return {ok, d};
}

Outcome criterion9() {
    const auto cfg = catalog::cohn_jet();
    std::vector<double> ks;
    for (int i = 0; i < 12; ++i) ks.push_back(0.5 + 5.5 * i / 11.0);
    auto family = [&cfg](double k) {
        return QuantizationFn([&cfg, k](Complex om) {
            return jet_quantization(cfg.equilibrium, {0, k, om}, Approach::G, default_jet_launch(Approach::G));
        });
    };
    auto region = [](double k) { return Region{0.0, std::max(2.0, 2.0 * k + 2.0), 0.02, 4.0}; };
    DispersionOptions o;
    o.threads = resolve_threads(8);
    const auto pts = dispersion_scan(family, ks, region, o);
    std::size_t gaps = 0;
    bool positive = true;
    std::string d;
    for (const auto& p : pts) {
        if (!p.omega) {
            ++gaps;
            d += " k=" + fmt(p.k, 4) + ":gap";
            continue;
        }
        positive = positive && p.omega->imag() > 0.0;
        d += " k=" + fmt(p.k, 4) + ":" + fmt(*p.omega);
    }
    return {gaps == 0 && positive && pts.size() == 12,
            std::to_string(pts.size()) + " points, " + std::to_string(gaps) + " gaps, Im>0 " +
                (positive ? "yes" : "no") + ";" + d};
}

}  // namespace

int main() {
    report(1, criterion1);
    report(2, criterion2);
    report(3, criterion3);
    report(4, criterion4);
    report(5, criterion5);
    report(6, criterion6);
    report(7, criterion7);
    report(8, criterion8);
    report(9, criterion9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
