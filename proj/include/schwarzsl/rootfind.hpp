#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "schwarzsl/types.hpp"

namespace schwarzsl {

/// Worker count: explicit request if positive, else SCHWARZIAN_SL_THREADS,
/// else 1.
unsigned resolve_threads(int requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Real-valued function whose integer crossings mark eigenvalues.
using WindingFn = std::function<double(double)>;
/// Complex quantization function, zero at eigenvalues.
using QuantizationFn = std::function<Complex(Complex)>;

struct Crossing {
    double lo = 0.0;  ///< bracket
    double hi = 0.0;
    long n = 0;       ///< integer crossed
    double lambda = 0.0;
};

struct RealScan {
    std::vector<double> grid;
    std::vector<double> values;  ///< NaN where evaluation failed
    std::vector<Crossing> crossings;
};

struct ScanOptions {
    double rel_width = 1e-8;
    unsigned threads = 1;
};

/// Samples `fn` on n equispaced points of [lo, hi] and refines every
/// crossing of an integer by bisection on fn - n.
RealScan scan_real(const WindingFn& fn, double lo, double hi, std::size_t n, const ScanOptions& opts = {});

struct ComplexRoot {
    Complex root;
    double residual = 0.0;  ///< |qf(root)|
    int iterations = 0;
    bool converged = false;
};

/// Complex secant iteration. Converged when |qf| <= tol |qf(seed)| or the
/// step drops below 1e-10 |seed|; otherwise stops after 50 iterations with
/// converged = false.
ComplexRoot refine_complex_root(const QuantizationFn& qf, Complex seed, double tol = 1e-12);

/// Real-axis search for zeros of a complex function: local minima of |qf|
/// on the grid are refined with the secant iteration; roots that stay within
/// [lo, hi] with |Im| <= imag_tol are returned in increasing order.
std::vector<ComplexRoot> scan_real_complex(const QuantizationFn& qf, double lo, double hi, std::size_t n,
                                           double imag_tol = 1e-6, const ScanOptions& opts = {});

struct Region {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
};

struct Charge {
    Complex location;
    int winding = 0;
    bool flagged = false;  ///< |winding| > 1
};

/// Arg qf sampled on an nx-by-ny grid: psi[i * ny + j] at
/// re_min + i dre + i (im_min + j dim). Missing samples are NaN.
struct SpectralWeb {
    Region region;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> psi;
    std::vector<Charge> charges;
    /// Winding along the boundary of the valid-plaquette region; the outer
    /// grid loop when no sample is missing.
    int boundary_winding = 0;
    int total_winding = 0;  ///< sum of plaquette windings
    std::size_t missing = 0;
    /// Grid edges whose phase jumps by more than 3 pi/4: discontinuity
    /// lines of the map, reported but not classified.
    std::size_t discontinuity_edges = 0;

    Complex node(std::size_t i, std::size_t j) const;
    double at(std::size_t i, std::size_t j) const { return psi[i * ny + j]; }
    double cell_size() const;
};

SpectralWeb spectral_web(const QuantizationFn& qf, const Region& region, std::size_t nx, std::size_t ny,
                         unsigned threads = 1);

/// Charge detection on an already sampled phase grid.
void detect_charges(SpectralWeb& web);

struct DispersionPoint {
    double k = 0.0;
    std::optional<Complex> omega;  ///< empty for a gap
    bool continued = false;        ///< seeded from the previous k
};

struct DispersionOptions {
    std::size_t nx = 60;
    std::size_t ny = 60;
    unsigned threads = 1;
    double tol = 1e-12;
    /// A continued root is accepted only if it moved by less than this
    /// multiple of the previous step in k times |d omega/dk| estimate + 1.
    double max_jump = 1.0;
};

/// For each k: a fresh web (first k, or when continuation fails) whose +1
/// charge with largest Im is refined; later k reuse the previous root(s) as
/// seeds. Failures are recorded as gaps.
std::vector<DispersionPoint> dispersion_scan(const std::function<QuantizationFn(double)>& family,
                                             const std::vector<double>& k_grid,
                                             const std::function<Region(double)>& region_for,
                                             const DispersionOptions& opts = {});

}  // namespace schwarzsl
