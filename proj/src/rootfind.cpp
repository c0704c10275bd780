#include "schwarzsl/rootfind.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

namespace schwarzsl {

unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("SCHWARZIAN_SL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

namespace {

double safe_eval(const WindingFn& fn, double x) {
    try {
        const double v = fn(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

RealScan scan_real(const WindingFn& fn, double lo, double hi, std::size_t n, const ScanOptions& opts) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "scan needs at least 2 samples");
    if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "scan range must be increasing");

    RealScan scan;
    scan.grid.resize(n);
    scan.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) scan.grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    parallel_for(n, opts.threads, [&](std::size_t i) { scan.values[i] = safe_eval(fn, scan.grid[i]); });

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double va = scan.values[i];
        const double vb = scan.values[i + 1];
        if (std::isnan(va) || std::isnan(vb)) continue;
        // Every integer strictly passed between the two samples, or hit
        // exactly at the right sample.
        const double vmin = std::min(va, vb);
        const double vmax = std::max(va, vb);
        for (double level = std::floor(vmin) + 1.0; level <= vmax; level += 1.0) {
            if (level == va) continue;
            double a = scan.grid[i];
            double b = scan.grid[i + 1];
            double fa = va - level;
            bool ok = true;
            while (b - a > opts.rel_width * std::max(std::abs(a), std::abs(b)) && b - a > 0.0) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = safe_eval(fn, mid) - level;
                if (std::isnan(fm)) {
                    ok = false;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0) && fm != 0.0) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            if (ok) scan.crossings.push_back({scan.grid[i], scan.grid[i + 1], static_cast<long>(level), 0.5 * (a + b)});
        }
    }
    return scan;
}

ComplexRoot refine_complex_root(const QuantizationFn& qf, Complex seed, double tol) {
    constexpr int kMaxIter = 50;
    const double seed_mag = std::max(std::abs(seed), 1e-300);
    Complex x0 = seed;
    Complex f0 = qf(x0);
    const double f_seed = std::abs(f0);
    ComplexRoot out{seed, f_seed, 0, false};
    if (f_seed == 0.0) {
        out.converged = true;
        return out;
    }
    Complex x1 = seed * (1.0 + 1e-6) + Complex{1e-6, 1e-6} * (std::abs(seed) == 0.0 ? 1.0 : 0.0);
    Complex f1 = qf(x1);
    if (std::abs(f1) < std::abs(f0)) {
        out = {x1, std::abs(f1), 0, false};
    }
    for (int it = 1; it <= kMaxIter; ++it) {
        const Complex df = f1 - f0;
        if (std::abs(df) == 0.0) break;
        const Complex step = f1 * (x1 - x0) / df;
        const Complex x2 = x1 - step;
        if (!is_finite(x2)) break;
        const Complex f2 = qf(x2);
        out = {x2, std::abs(f2), it, false};
        if (!is_finite(f2)) break;
        if (std::abs(f2) <= tol * f_seed || std::abs(step) < 1e-10 * seed_mag) {
            out.converged = true;
            return out;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    return out;
}

std::vector<ComplexRoot> scan_real_complex(const QuantizationFn& qf, double lo, double hi, std::size_t n,
                                           double imag_tol, const ScanOptions& opts) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "scan needs at least 3 samples");
    std::vector<double> grid(n), mag(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        try {
            const Complex v = qf(grid[i]);
            mag[i] = is_finite(v) ? std::abs(v) : std::numeric_limits<double>::quiet_NaN();
        } catch (const Error&) {
            mag[i] = std::numeric_limits<double>::quiet_NaN();
        }
    });

    const double dx = (hi - lo) / (n - 1);
    std::vector<ComplexRoot> roots;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::isnan(mag[i - 1]) || std::isnan(mag[i]) || std::isnan(mag[i + 1])) continue;
        if (!(mag[i] <= mag[i - 1] && mag[i] < mag[i + 1])) continue;
        ComplexRoot r;
        try {
            r = refine_complex_root(qf, grid[i], opts.rel_width);
        } catch (const Error&) {
            continue;
        }
        if (!r.converged) continue;
        if (std::abs(r.root.imag()) > imag_tol || std::abs(r.root.real() - grid[i]) > 2.0 * dx) continue;
        const bool dup = std::any_of(roots.begin(), roots.end(), [&](const ComplexRoot& o) {
            return std::abs(o.root - r.root) < 1e-8 * std::max(1.0, std::abs(r.root));
        });
        if (!dup) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(),
              [](const ComplexRoot& a, const ComplexRoot& b) { return a.root.real() < b.root.real(); });
    return roots;
}

Complex SpectralWeb::node(std::size_t i, std::size_t j) const {
    const double dre = (region.re_max - region.re_min) / static_cast<double>(nx - 1);
    const double dim = (region.im_max - region.im_min) / static_cast<double>(ny - 1);
    return {region.re_min + dre * i, region.im_min + dim * j};
}

double SpectralWeb::cell_size() const {
    const double dre = (region.re_max - region.re_min) / static_cast<double>(nx - 1);
    const double dim = (region.im_max - region.im_min) / static_cast<double>(ny - 1);
    return std::max(dre, dim);
}

namespace {

double wrap(double d) {
    // into (-pi, pi]
    d = std::remainder(d, 2.0 * kPi);
    if (d <= -kPi) d += 2.0 * kPi;
    return d;
}

}  // namespace

SpectralWeb spectral_web(const QuantizationFn& qf, const Region& region, std::size_t nx, std::size_t ny,
                         unsigned threads) {
    if (nx < 8 || ny < 8) throw Error(ErrorKind::InvalidArgument, "web grid must be at least 8x8");
    if (!(region.re_max > region.re_min && region.im_max > region.im_min)) {
        throw Error(ErrorKind::InvalidArgument, "web region must have positive extent");
    }
    SpectralWeb web;
    web.region = region;
    web.nx = nx;
    web.ny = ny;
    web.psi.assign(nx * ny, std::numeric_limits<double>::quiet_NaN());
    parallel_for(nx * ny, threads, [&](std::size_t idx) {
        const Complex z = web.node(idx / ny, idx % ny);
        try {
            const Complex v = qf(z);
            if (is_finite(v) && std::abs(v) > 0.0) web.psi[idx] = std::arg(v);
        } catch (const Error&) {
        }
    });
    detect_charges(web);
    return web;
}

void detect_charges(SpectralWeb& web) {
    const std::size_t nx = web.nx;
    const std::size_t ny = web.ny;
    web.charges.clear();
    web.missing = static_cast<std::size_t>(std::count_if(web.psi.begin(), web.psi.end(), [](double v) {
        return std::isnan(v);
    }));

    // Plaquette (i, j) has corners (i, j), (i+1, j), (i+1, j+1), (i, j+1),
    // traversed counterclockwise in the complex plane.
    const std::size_t px = nx - 1;
    const std::size_t py = ny - 1;
    auto node_id = [ny](std::size_t i, std::size_t j) { return i * ny + j; };
    // Wrapped phase change a -> b, antisymmetric even for a jump of exactly pi.
    auto diff = [&web](std::size_t a, std::size_t b) {
        return a < b ? wrap(web.psi[b] - web.psi[a]) : -wrap(web.psi[a] - web.psi[b]);
    };
    std::vector<int> wind(px * py, 0);
    int total = 0;
    for (std::size_t i = 0; i < px; ++i) {
        for (std::size_t j = 0; j < py; ++j) {
            const std::size_t c[4] = {node_id(i, j), node_id(i + 1, j), node_id(i + 1, j + 1), node_id(i, j + 1)};
            if (std::any_of(std::begin(c), std::end(c), [&](std::size_t n) { return std::isnan(web.psi[n]); })) {
                continue;
            }
            double sum = 0.0;
            for (int e = 0; e < 4; ++e) sum += diff(c[e], c[(e + 1) % 4]);
            if (std::abs(sum) > kPi) {
                const int w = static_cast<int>(std::lround(sum / (2.0 * kPi)));
                wind[i * py + j] = w;
                total += w;
            }
        }
    }
    web.total_winding = total;

    // Boundary of the region covered by valid plaquettes: directed edges of
    // neighbouring plaquettes cancel, what remains is the outer loop (plus
    // loops around holes left by missing samples).
    std::map<std::pair<std::size_t, std::size_t>, int> edges;  // (from node, to node) with from < to
    double loop_sum = 0.0;
    bool any_valid = false;
    for (std::size_t i = 0; i < px; ++i) {
        for (std::size_t j = 0; j < py; ++j) {
            const std::size_t c[4] = {node_id(i, j), node_id(i + 1, j), node_id(i + 1, j + 1), node_id(i, j + 1)};
            if (std::any_of(std::begin(c), std::end(c), [&](std::size_t n) { return std::isnan(web.psi[n]); })) {
                continue;
            }
            any_valid = true;
            for (int e = 0; e < 4; ++e) {
                const std::size_t a = c[e];
                const std::size_t b = c[(e + 1) % 4];
                if (a < b) {
                    edges[{a, b}] += 1;
                } else {
                    edges[{b, a}] -= 1;
                }
            }
        }
    }
    for (const auto& [edge, count] : edges) {
        if (count != 0) loop_sum += count * diff(edge.first, edge.second);
    }
    web.boundary_winding = any_valid ? static_cast<int>(std::lround(loop_sum / (2.0 * kPi))) : 0;

    // Edges with a near-pi phase jump: discontinuity lines of the map.
    auto jump = [&](std::size_t a, std::size_t b) {
        return !std::isnan(web.psi[a]) && !std::isnan(web.psi[b]) &&
               std::abs(wrap(web.psi[b] - web.psi[a])) > 0.75 * kPi;
    };
    web.discontinuity_edges = 0;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            if (i + 1 < nx && jump(node_id(i, j), node_id(i + 1, j))) ++web.discontinuity_edges;
            if (j + 1 < ny && jump(node_id(i, j), node_id(i, j + 1))) ++web.discontinuity_edges;
        }
    }

    // Cluster 4-connected plaquettes of equal sign.
    std::vector<char> seen(px * py, 0);
    const double dre = (web.region.re_max - web.region.re_min) / static_cast<double>(nx - 1);
    const double dim = (web.region.im_max - web.region.im_min) / static_cast<double>(ny - 1);
    for (std::size_t start = 0; start < px * py; ++start) {
        if (wind[start] == 0 || seen[start]) continue;
        const int sign = wind[start] > 0 ? 1 : -1;
        std::vector<std::size_t> stack{start};
        seen[start] = 1;
        int w = 0;
        double sx = 0.0, sy = 0.0;
        std::size_t count = 0;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const std::size_t i = cur / py;
            const std::size_t j = cur % py;
            w += wind[cur];
            sx += web.region.re_min + dre * (i + 0.5);
            sy += web.region.im_min + dim * (j + 0.5);
            ++count;
            auto visit = [&](std::size_t ii, std::size_t jj) {
                const std::size_t nb = ii * py + jj;
                if (!seen[nb] && wind[nb] != 0 && (wind[nb] > 0 ? 1 : -1) == sign) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
            };
            if (i > 0) visit(i - 1, j);
            if (i + 1 < px) visit(i + 1, j);
            if (j > 0) visit(i, j - 1);
            if (j + 1 < py) visit(i, j + 1);
        }
        web.charges.push_back({Complex{sx / count, sy / count}, w, std::abs(w) > 1});
    }
}

namespace {

std::optional<Complex> root_from_web(const QuantizationFn& qf, const Region& region, const DispersionOptions& opts) {
    const SpectralWeb web = spectral_web(qf, region, opts.nx, opts.ny, opts.threads);
    std::optional<Complex> best;
    for (const Charge& c : web.charges) {
        if (c.winding != 1) continue;
        ComplexRoot r = refine_complex_root(qf, c.location, opts.tol);
        if (!r.converged || std::abs(r.root - c.location) > 3.0 * web.cell_size()) continue;
        if (!best || r.root.imag() > best->imag()) best = r.root;
    }
    return best;
}

}  // namespace

std::vector<DispersionPoint> dispersion_scan(const std::function<QuantizationFn(double)>& family,
                                             const std::vector<double>& k_grid,
                                             const std::function<Region(double)>& region_for,
                                             const DispersionOptions& opts) {
    std::vector<DispersionPoint> out;
    std::optional<Complex> prev, prev2;
    double k_prev = 0.0, k_prev2 = 0.0;
    for (double k : k_grid) {
        const QuantizationFn qf = family(k);
        DispersionPoint pt{k, std::nullopt, false};
        if (prev) {
            Complex seed = *prev;
            if (prev2 && k_prev != k_prev2) seed += (*prev - *prev2) * ((k - k_prev) / (k_prev - k_prev2));
            try {
                const ComplexRoot r = refine_complex_root(qf, seed, opts.tol);
                const double allowed = opts.max_jump * (std::abs(seed - *prev) + std::abs(k - k_prev) + 0.1);
                if (r.converged && std::abs(r.root - seed) <= allowed) {
                    pt.omega = r.root;
                    pt.continued = true;
                }
            } catch (const Error&) {
            }
        }
        if (!pt.omega) {
            try {
                pt.omega = root_from_web(qf, region_for(k), opts);
            } catch (const Error&) {
            }
        }
        if (pt.omega) {
            prev2 = prev;
            k_prev2 = k_prev;
            prev = pt.omega;
            k_prev = k;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace schwarzsl
