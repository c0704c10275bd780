#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "schwarzsl/integrate.hpp"
#include "schwarzsl/schwarzian.hpp"
#include "schwarzsl/types.hpp"

namespace schwarzsl {

using Profile = std::function<double(double)>;

/// One smooth piece of a cylindrical equilibrium on [lower, upper).
struct ProfileSegment {
    double lower = 0.0;
    double upper = 0.0;
    Profile rho;
    Profile pressure;
    Profile velocity;  ///< V0, along z
    Profile b_z;
    Profile b_phi;
};

/// Piecewise equilibrium. Segments are contiguous and increasing; the
/// shared endpoints are the interfaces where profiles may jump.
struct MhdEquilibrium {
    std::vector<ProfileSegment> segments;
    double gamma = 5.0 / 3.0;

    std::vector<double> interfaces() const;
    /// Segment containing w; at an interface the outer segment.
    const ProfileSegment& segment_at(double w) const;
    /// Throws InvalidArgument when segments are empty, unordered or gapped.
    void check() const;
};

/// Perturbations proportional to exp(i(m phi + k z - omega t)).
struct ModeParams {
    int m = 0;
    double k = 0.0;
    Complex omega{0.0, 0.0};
};

/// F_ij/D of the first-order system (y1, y2)' + (F/D)(y1, y2) = 0, stored
/// without any extra radius factor.
struct CoefficientRatios {
    Complex f11;
    Complex f12;
    Complex f21;
    Complex f22;
};

/// Throws SingularSurface when rho omega_co^2 - (k_co.B)^2 or the kappa
/// denominator vanishes at w.
CoefficientRatios coefficient_ratios(const ProfileSegment& seg, double gamma, const ModeParams& mode, double w);
CoefficientRatios coefficient_ratios(const MhdEquilibrium& eq, const ModeParams& mode, double w);

/// dY/dw for Y = y1/y2.
Complex y_riccati_rhs(const CoefficientRatios& r, Complex Y);

/// State shared by both y1 variants: (Y4, Y3, g1 or Phi1, int (F11+F22)/D).
/// The last component only feeds eigenfunction amplitudes.
using Y1State = std::array<Complex, 4>;

Y1State y1_g_system_rhs(const CoefficientRatios& r, const Y1State& s);
Y1State y1_phi_system_rhs(const CoefficientRatios& r, const Y1State& s);

/// 1/Y from the split representation.
Complex inverse_y(Approach approach, const Y1State& s, Complex constant);

/// Integrates across interfaces with the coefficients of whichever segment
/// the current leg lies in; the state is carried over unchanged.
Trajectory integrate_y1(const MhdEquilibrium& eq, const ModeParams& mode, Approach approach, double from, double to,
                        const Y1State& y0, const Tolerances& tol, Recording recording = Recording::Full);
Trajectory integrate_y(const MhdEquilibrium& eq, const ModeParams& mode, double from, double to, Complex Y0,
                       const Tolerances& tol, Recording recording = Recording::Full);

struct AxisLimits {
    bool m_zero = false;
    /// d_ij = lim w F_ij/D for m != 0. For m = 0: b11 = lim F11/(wD),
    /// b12 = lim F12/(wD), b21 = lim w F21/D, b22 = lim F22/(wD).
    Complex l11, l12, l21, l22;
    /// m != 0: |d22 + d11| and |d11^2 + d12 d21 - m^2|.
    double antisymmetry_residual = 0.0;
    double determinant_residual = 0.0;
    /// m != 0: regular-branch 1/Y = -(|m| + d11)/d12.
    /// m = 0: coefficient c of 1/Y ~ c / w^2, c = -2/b12.
    Complex acceptable;
};

/// Richardson-extrapolated limits from w = 1e-4 and 5e-5. Throws
/// LimitNotConverged when the two samples disagree beyond O(w^2) behaviour.
AxisLimits axis_limits(const MhdEquilibrium& eq, const ModeParams& mode);

/// Max over smooth pieces of |dP/dw + d(Bz^2/2)/dw + w^-2 d(w^2 Bphi^2/2)/dw|
/// on `samples` points per piece (finite segments; the last is sampled up to
/// `outer` when unbounded).
double equilibrium_residual(const MhdEquilibrium& eq, int samples = 64, double outer = 10.0);

/// Uniform jet (rho = 1, c_s = 1, V = M) of unit radius inside a cold static
/// environment of density eta with B_phi = I/w.
struct CohnJetModel {
    double mach = 1.0;
    double eta = 0.01;
    double gamma = 5.0 / 3.0;
    double radius = 1.0;

    /// I with I^2 = 2 P_j radius^2, P_j = 1/gamma.
    double field_constant() const;
    double jet_pressure() const { return 1.0 / gamma; }
    MhdEquilibrium to_equilibrium() const;
};

struct JetOptions {
    std::pair<double, double> cuts{0.01, 10.0};
    double launch_point = 1.0;
    Tolerances tol{};
    Recording recording = Recording::TerminalOnly;
};

/// (Y4, Y3, g1) = 0 for G; (Y4, Y3, Phi1) = (0, 1, 0) for Phi.
Y1State default_jet_launch(Approach approach);

struct JetRun {
    Approach approach = Approach::G;
    Trajectory inner;  ///< launch -> lower cut
    Trajectory outer;  ///< launch -> upper cut
};

JetRun jet_run(const MhdEquilibrium& eq, const ModeParams& mode, Approach approach, const Y1State& launch,
               const JetOptions& opts = {});

/// g1(w_max) - g1(w_min) for G, sin((Phi1(w_max) - Phi1(w_min))/2) for Phi.
Complex jet_quantization(const JetRun& run);
Complex jet_quantization(const MhdEquilibrium& eq, const ModeParams& mode, Approach approach, const Y1State& launch,
                         const JetOptions& opts = {});

struct SampledY {
    std::vector<double> w;
    std::vector<Complex> y1;
    std::vector<Complex> y2;
    std::vector<Complex> Y;
};

/// Axis constant: C = -g1 (G) or -Phi1 (Phi) at the lower cut.
Complex axis_constant(const JetRun& run);

/// y1, y2 and Y along both legs, up to one common complex factor.
SampledY eigenfunctions_y(const JetRun& run, Complex constant);

}  // namespace schwarzsl
