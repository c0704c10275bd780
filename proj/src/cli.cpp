#include "schwarzsl/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "schwarzsl/catalog.hpp"
#include "schwarzsl/io.hpp"
#include "schwarzsl/minimalist.hpp"
#include "schwarzsl/mhd.hpp"
#include "schwarzsl/schwarzian.hpp"

#ifndef SCHWARZSL_VERSION
#define SCHWARZSL_VERSION "0.0.0"
#endif

namespace schwarzsl::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Command c) {
    switch (c) {
        case Command::List: return "list";
        case Command::Solve: return "solve";
        case Command::Web: return "web";
        case Command::Eigenfunction: return "eigenfunction";
        case Command::Dispersion: return "dispersion";
    }
    return "?";
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::Minimalist: return "minimalist";
        case Method::SchwarzianG: return "schwarzian-g";
        case Method::SchwarzianPhi: return "schwarzian-phi";
    }
    return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

double to_number(const std::string& s) {
    double v = 0.0;
    std::size_t used = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        invalid("not a number: '" + s + "'");
    }
    if (used != s.size()) invalid("not a number: '" + s + "'");
    return v;
}

std::vector<double> number_list(const std::string& s, std::size_t expected, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_number(item));
    if (expected && out.size() != expected) {
        invalid(flag + " expects " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

Command command_from(const std::string& s) {
    if (s == "list") return Command::List;
    if (s == "solve") return Command::Solve;
    if (s == "web") return Command::Web;
    if (s == "eigenfunction") return Command::Eigenfunction;
    if (s == "dispersion") return Command::Dispersion;
    invalid("unknown command '" + s + "'");
}

Method method_from(const std::string& s) {
    if (s == "minimalist") return Method::Minimalist;
    if (s == "schwarzian-g") return Method::SchwarzianG;
    if (s == "schwarzian-phi") return Method::SchwarzianPhi;
    invalid("unknown method '" + s + "'");
}

Format format_from(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    invalid("unknown format '" + s + "'");
}

void parse_params(const std::string& s, std::map<std::string, double>& params) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) invalid("--param expects key=value, got '" + item + "'");
        params[item.substr(0, eq)] = to_number(item.substr(eq + 1));
    }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) invalid("--grid expects NxM");
    const double a = to_number(s.substr(0, x));
    const double b = to_number(s.substr(x + 1));
    if (a < 8 || b < 8 || a != std::floor(a) || b != std::floor(b)) invalid("--grid sizes must be integers >= 8");
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

std::vector<double> k_grid_from(const std::vector<double>& spec) {
    if (spec.size() != 3 || spec[2] < 1 || spec[2] != std::floor(spec[2])) {
        invalid("--k-grid expects lo,hi,n with integer n >= 1");
    }
    const auto n = static_cast<std::size_t>(spec[2]);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? spec[0] : spec[0] + (spec[1] - spec[0]) * i / (n - 1.0);
    return out;
}

Complex complex_from(const std::vector<double>& v) {
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    invalid("eigenvalue expects re or re,im");
}

void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) invalid("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        invalid("config file '" + path + "': " + e.what());
    }
    try {
        if (j.contains("command")) c.command = command_from(j["command"].get<std::string>());
        if (j.contains("problem")) c.problem = j["problem"].get<std::string>();
        if (j.contains("params")) {
            for (const auto& [k, v] : j["params"].items()) c.params[k] = v.get<double>();
        }
        if (j.contains("method")) c.method = method_from(j["method"].get<std::string>());
        if (j.contains("rtol")) c.tol.rel = j["rtol"].get<double>();
        if (j.contains("atol")) c.tol.abs = j["atol"].get<double>();
        if (j.contains("max_steps")) c.tol.max_steps = j["max_steps"].get<long>();
        if (j.contains("cuts")) {
            const auto v = j["cuts"].get<std::vector<double>>();
            if (v.size() != 2) invalid("config cuts needs two values");
            c.cuts = std::pair{v[0], v[1]};
        }
        if (j.contains("range")) {
            const auto v = j["range"].get<std::vector<double>>();
            if (v.size() != 2) invalid("config range needs two values");
            c.range = std::pair{v[0], v[1]};
        }
        if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
        if (j.contains("region")) {
            const auto v = j["region"].get<std::vector<double>>();
            if (v.size() != 4) invalid("config region needs four values");
            c.region = Region{v[0], v[1], v[2], v[3]};
        }
        if (j.contains("grid")) {
            const auto v = j["grid"].get<std::vector<std::size_t>>();
            if (v.size() != 2) invalid("config grid needs two values");
            c.grid = std::pair{v[0], v[1]};
        }
        if (j.contains("threads")) c.threads = j["threads"].get<int>();
        if (j.contains("eigenvalue")) {
            const auto& e = j["eigenvalue"];
            c.eigenvalue = e.is_array() ? complex_from(e.get<std::vector<double>>()) : Complex{e.get<double>(), 0.0};
        }
        if (j.contains("k_grid")) c.k_grid = k_grid_from(j["k_grid"].get<std::vector<double>>());
        if (j.contains("output")) c.output = j["output"].get<std::string>();
        if (j.contains("format")) c.format = format_from(j["format"].get<std::string>());
    } catch (const json::exception& e) {
        invalid("config file '" + path + "': " + e.what());
    }
}

}  // namespace

RunConfig parse(int argc, const char* const* argv) {
    CLI::App app{"Sturm-Liouville eigenvalues via Riccati and Schwarzian reformulations", "schwarzian-sl"};
    app.set_version_flag("--version", std::string(SCHWARZSL_VERSION));

    std::string command, problem, method, params_s, region_s, grid_s, cuts_s, range_s, k_grid_s, eig_s, output,
        format, config_path;
    std::vector<std::string> params_list;
    double rtol = 0, atol = 0;
    long max_steps = 0;
    std::size_t samples = 0;
    int threads = 0;

    app.add_option("command", command, "list | solve | web | eigenfunction | dispersion")->required();
    auto* o_problem = app.add_option("--problem", problem, "catalog problem name");
    auto* o_param = app.add_option("--param", params_list, "parameter overrides key=value[,key=value]");
    auto* o_method = app.add_option("--method", method, "minimalist | schwarzian-g | schwarzian-phi");
    auto* o_rtol = app.add_option("--rtol", rtol, "relative integration tolerance");
    auto* o_atol = app.add_option("--atol", atol, "absolute integration tolerance");
    auto* o_steps = app.add_option("--max-steps", max_steps, "step budget per integration");
    auto* o_cuts = app.add_option("--cuts", cuts_s, "truncation window lo,hi");
    auto* o_range = app.add_option("--range", range_s, "solve: eigenvalue range lo,hi");
    auto* o_samples = app.add_option("--samples", samples, "solve: scan samples");
    auto* o_region = app.add_option("--region", region_s, "web: re_min,re_max,im_min,im_max");
    auto* o_grid = app.add_option("--grid", grid_s, "web: NxM samples");
    auto* o_threads = app.add_option("--threads", threads, "worker threads");
    auto* o_eig = app.add_option("--eigenvalue", eig_s, "eigenfunction: re or re,im");
    auto* o_kgrid = app.add_option("--k-grid", k_grid_s, "dispersion: lo,hi,n");
    auto* o_output = app.add_option("--output", output, "output file (default: standard output)");
    auto* o_format = app.add_option("--format", format, "csv | json");
    app.add_option("--config", config_path, "JSON config file; explicit flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested{std::string(SCHWARZSL_VERSION) + "\n"};
    }

    RunConfig c;
    if (!config_path.empty()) apply_config_file(config_path, c);
    c.command = command_from(command);
    if (o_problem->count()) c.problem = problem;
    for (const auto& p : params_list) parse_params(p, c.params);
    (void)o_param;
    if (o_method->count()) c.method = method_from(method);
    if (o_rtol->count()) c.tol.rel = rtol;
    if (o_atol->count()) c.tol.abs = atol;
    if (o_steps->count()) c.tol.max_steps = max_steps;
    if (o_cuts->count()) {
        const auto v = number_list(cuts_s, 2, "--cuts");
        c.cuts = std::pair{v[0], v[1]};
    }
    if (o_range->count()) {
        const auto v = number_list(range_s, 2, "--range");
        c.range = std::pair{v[0], v[1]};
    }
    if (o_samples->count()) c.samples = samples;
    if (o_region->count()) {
        const auto v = number_list(region_s, 4, "--region");
        c.region = Region{v[0], v[1], v[2], v[3]};
    }
    if (o_grid->count()) c.grid = parse_grid(grid_s);
    if (o_threads->count()) c.threads = threads;
    if (o_eig->count()) c.eigenvalue = complex_from(number_list(eig_s, 0, "--eigenvalue"));
    if (o_kgrid->count()) c.k_grid = k_grid_from(number_list(k_grid_s, 3, "--k-grid"));
    if (o_output->count()) c.output = output;
    if (o_format->count()) c.format = format_from(format);

    if (!(c.tol.rel > 0.0) || !(c.tol.abs >= 0.0)) invalid("tolerances must be positive");
    if (c.grid && (c.grid->first < 8 || c.grid->second < 8)) invalid("grid sizes must be at least 8");
    if (c.region && !(c.region->re_max > c.region->re_min && c.region->im_max > c.region->im_min)) {
        invalid("--region must have positive extent");
    }
    return c;
}

namespace {

struct Output {
    io::Header header;
    io::Table table;
    ordered_json extra = ordered_json::object();  ///< JSON-only sections
    std::vector<std::string> notes;               ///< CSV comment lines after the header
};

std::string params_string(const std::map<std::string, double>& params) {
    std::string s;
    for (const auto& [k, v] : params) s += (s.empty() ? "" : ",") + k + "=" + io::format_double(v);
    return s.empty() ? "(defaults)" : s;
}

std::string complex_string(Complex z) {
    return io::format_double(z.real()) + (z.imag() < 0 ? "" : "+") + io::format_double(z.imag()) + "i";
}

io::Header base_header(const RunConfig& c, const catalog::CatalogEntry* entry, std::optional<Method> method) {
    io::Header h{{"tool", std::string("schwarzian-sl ") + SCHWARZSL_VERSION},
                 {"command", std::string(to_string(c.command))}};
    if (entry) {
        h.emplace_back("problem", entry->name);
        h.emplace_back("params", params_string(c.params));
    }
    if (method) h.emplace_back("method", std::string(to_string(*method)));
    h.emplace_back("rtol", io::format_double(c.tol.rel));
    h.emplace_back("atol", io::format_double(c.tol.abs));
    if (entry) {
        for (const auto& t : entry->targets) {
            h.emplace_back("target", complex_string(t.value) + " [" + t.provenance + "] " + t.description);
        }
    }
    return h;
}

void emit(const RunConfig& c, const Output& o, std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!c.output.empty()) {
        file.open(c.output);
        if (!file) invalid("cannot write '" + c.output + "'");
        os = &file;
    }
    if (c.format == Format::Json) {
        ordered_json j = ordered_json::object();
        j["header"] = io::header_to_json(o.header);
        for (const auto& [k, v] : o.extra.items()) j[k] = v;
        j["data"] = io::table_to_json(o.table);
        *os << j.dump(2) << '\n';
    } else {
        io::Header h = o.header;
        for (const auto& n : o.notes) h.emplace_back("note", n);
        io::write_csv(*os, h, o.table);
    }
    if (!*os) throw Error(ErrorKind::InvalidArgument, "write failed");
}

Method default_method(const catalog::CatalogEntry& e) {
    if (e.name == "paine") return Method::Minimalist;
    if (e.stability) return Method::SchwarzianG;
    return Method::SchwarzianPhi;
}

SLProblem configured_problem(const RunConfig& c) {
    SLProblem p = catalog::build_problem(c.problem, c.params);
    if (c.cuts) {
        p.domain.lower_cut = c.cuts->first;
        p.domain.upper_cut = c.cuts->second;
        if (p.domain.lower.kind == EndKind::Finite) p.domain.lower.value = c.cuts->first;
        if (p.domain.upper.kind == EndKind::Finite) p.domain.upper.value = c.cuts->second;
    }
    const auto diags = validate(p);
    if (!diags.empty()) {
        std::string msg = "problem fails validation:";
        for (const auto& d : diags) msg += " [" + std::string(to_string(d.kind)) + "] " + d.message;
        invalid(msg);
    }
    return p;
}

JetOptions jet_options(const RunConfig& c, const catalog::StabilityConfig& s, Recording rec) {
    JetOptions o;
    o.cuts = c.cuts.value_or(s.cuts);
    o.launch_point = s.launch_point;
    o.tol = c.tol;
    o.recording = rec;
    return o;
}

Approach stability_approach(Method m) {
    if (m == Method::Minimalist) invalid("stability problems need schwarzian-g or schwarzian-phi");
    return m == Method::SchwarzianG ? Approach::G : Approach::Phi;
}

/// Quantization function for a complex eigenvalue: zero at eigenvalues.
QuantizationFn complex_qf(const RunConfig& c, const catalog::CatalogEntry& e, Method method) {
    if (e.stability) {
        const auto s = catalog::build_stability(e.name, c.params);
        const Approach a = stability_approach(method);
        const JetOptions opts = jet_options(c, s, Recording::TerminalOnly);
        const int m = s.m;
        const double k = s.k;
        return [eq = s.equilibrium, a, opts, m, k](Complex w) {
            return jet_quantization(eq, {m, k, w}, a, default_jet_launch(a), opts);
        };
    }
    if (method == Method::Minimalist) invalid("web and complex search need a Schwarzian method");
    auto problem = std::make_shared<SLProblem>(configured_problem(c));
    ShootOptions opts;
    opts.tol = c.tol;
    if (method == Method::SchwarzianG) {
        return [problem, opts](Complex lam) {
            const GState launch = default_g_launch(*problem, problem->domain.start, lam);
            return boundary_mismatch(*problem, shoot(*problem, lam, launch, opts)).value;
        };
    }
    return [problem, opts](Complex lam) {
        const PhiState launch = default_initial_state(*problem, problem->domain.start, lam);
        return std::sin(kPi * boundary_mismatch(*problem, shoot(*problem, lam, launch, opts)).value);
    };
}

std::pair<double, double> default_range(const catalog::CatalogEntry& e, const RunConfig& c) {
    if (e.name == "morse") {
        const double d = c.params.count("lambda") ? c.params.at("lambda") : e.default_params.at("lambda");
        return {0.01, d * d - 0.01};
    }
    if (e.name == "harmonic") return {0.01, 6.0};
    if (e.name == "paine") return {0.0, 200.0};
    invalid("problem '" + e.name + "' has no default eigenvalue range; pass --range");
}

Output solve_sl(const RunConfig& c, const catalog::CatalogEntry& e, Method method) {
    const SLProblem problem = configured_problem(c);
    const auto [lo, hi] = c.range.value_or(default_range(e, c));
    const std::size_t n = c.samples ? c.samples : (e.name == "paine" ? 400 : 200);
    const unsigned threads = resolve_threads(c.threads);

    Output o;
    o.header = base_header(c, &e, method);
    o.header.emplace_back("range", io::format_double(lo) + "," + io::format_double(hi));
    o.header.emplace_back("samples", std::to_string(n));
    o.table.columns = {"index", "re", "im", "residual"};

    if (method == Method::SchwarzianG) {
        const QuantizationFn qf = complex_qf(c, e, method);
        const auto roots = scan_real_complex(qf, lo, hi, n, 1e-6, {1e-12, threads});
        for (std::size_t i = 0; i < roots.size(); ++i) {
            o.table.rows.push_back({static_cast<double>(i), roots[i].root.real(), roots[i].root.imag(), roots[i].residual});
        }
        return o;
    }

    WindingFn fn;
    if (method == Method::Minimalist) {
        if (problem.domain.lower.kind != EndKind::Finite || problem.domain.upper.kind != EndKind::Finite) {
            invalid("minimalist phase shooting needs a finite interval");
        }
        const PhiSubstitution sub = PhiSubstitution::simplest();
        fn = [&problem, sub, tol = c.tol](double lam) { return solve_finite_interval(problem, sub, lam, tol).winding; };
    } else {
        ShootOptions opts;
        opts.tol = c.tol;
        fn = [&problem, opts](double lam) {
            const PhiState launch = default_initial_state(problem, problem.domain.start, lam);
            return boundary_mismatch(problem, shoot(problem, lam, launch, opts)).value.real();
        };
    }
    const RealScan scan = scan_real(fn, lo, hi, n, {1e-8, threads});
    for (const auto& cr : scan.crossings) {
        double residual = std::numeric_limits<double>::quiet_NaN();
        try {
            residual = std::abs(fn(cr.lambda) - static_cast<double>(cr.n));
        } catch (const Error&) {
        }
        o.table.rows.push_back({static_cast<double>(cr.n), cr.lambda, 0.0, residual});
    }
    o.header.emplace_back("index", "integer crossed by the winding value (offset not assumed)");
    o.extra["scan"] = io::table_to_json(io::scan_table(scan));
    return o;
}

std::vector<ComplexRoot> refine_charges(const QuantizationFn& qf, const SpectralWeb& web) {
    std::vector<ComplexRoot> roots;
    for (const Charge& ch : web.charges) {
        if (ch.winding != 1) continue;
        try {
            roots.push_back(refine_complex_root(qf, ch.location));
        } catch (const Error&) {
        }
    }
    return roots;
}

Output web_output(const RunConfig& c, const catalog::CatalogEntry& e, Method method) {
    const QuantizationFn qf = complex_qf(c, e, method);
    const Region region = c.region.value_or(Region{0.0, 6.0, 0.0, 4.0});
    const auto [nx, ny] = c.grid.value_or(std::pair<std::size_t, std::size_t>{200, 200});
    const SpectralWeb web = spectral_web(qf, region, nx, ny, resolve_threads(c.threads));
    const auto roots = refine_charges(qf, web);

    Output o;
    o.header = base_header(c, &e, method);
    o.header.emplace_back("region", io::format_double(region.re_min) + "," + io::format_double(region.re_max) + "," +
                                        io::format_double(region.im_min) + "," + io::format_double(region.im_max));
    o.header.emplace_back("grid", std::to_string(nx) + "x" + std::to_string(ny));
    o.header.emplace_back("missing", std::to_string(web.missing));
    o.header.emplace_back("total_winding", std::to_string(web.total_winding));
    o.header.emplace_back("boundary_winding", std::to_string(web.boundary_winding));
    o.header.emplace_back("discontinuity_edges", std::to_string(web.discontinuity_edges));
    for (const Charge& ch : web.charges) {
        o.header.emplace_back("charge", io::format_double(ch.location.real()) + "," +
                                            io::format_double(ch.location.imag()) + "," +
                                            std::to_string(ch.winding) + (ch.flagged ? ",flagged" : ""));
    }
    ordered_json rj = ordered_json::array();
    for (const auto& r : roots) {
        o.header.emplace_back("root", io::format_double(r.root.real()) + "," + io::format_double(r.root.imag()) +
                                          "," + (r.converged ? "converged" : "not-converged") +
                                          ",residual=" + io::format_double(r.residual));
        rj.push_back({{"re", r.root.real()},
                      {"im", r.root.imag()},
                      {"residual", r.residual},
                      {"iterations", r.iterations},
                      {"converged", r.converged}});
    }
    o.extra["charges"] = io::charges_to_json(web.charges);
    o.extra["roots"] = rj;
    o.table = io::web_table(web);
    return o;
}

Output solve_stability(const RunConfig& c, const catalog::CatalogEntry& e, Method method) {
    Output web = web_output(c, e, method);
    Output o;
    o.header = web.header;
    o.extra = web.extra;
    o.table.columns = {"index", "re", "im", "residual"};
    std::size_t i = 0;
    for (const auto& r : web.extra["roots"]) {
        if (!r["converged"].get<bool>()) continue;
        o.table.rows.push_back(
            {static_cast<double>(i++), r["re"].get<double>(), r["im"].get<double>(), r["residual"].get<double>()});
    }
    return o;
}

Output eigenfunction_output(const RunConfig& c, const catalog::CatalogEntry& e, Method method) {
    if (!c.eigenvalue) invalid("eigenfunction needs --eigenvalue");
    const Complex lam = *c.eigenvalue;
    Output o;
    o.header = base_header(c, &e, method);
    o.header.emplace_back("eigenvalue", complex_string(lam));

    if (e.stability) {
        const auto s = catalog::build_stability(e.name, c.params);
        const Approach a = stability_approach(method);
        const JetRun run =
            jet_run(s.equilibrium, {s.m, s.k, lam}, a, default_jet_launch(a), jet_options(c, s, Recording::Full));
        const Complex constant = axis_constant(run);
        const SampledY y = eigenfunctions_y(run, constant);
        o.header.emplace_back("constant", complex_string(constant));
        o.table.columns = {"w", "y1_re", "y1_im", "y2_re", "y2_im", "Y_re", "Y_im"};
        for (std::size_t i = 0; i < y.w.size(); ++i) {
            o.table.rows.push_back({y.w[i], y.y1[i].real(), y.y1[i].imag(), y.y2[i].real(), y.y2[i].imag(),
                                    y.Y[i].real(), y.Y[i].imag()});
        }
        return o;
    }

    const SLProblem problem = configured_problem(c);
    ShootOptions opts;
    opts.tol = c.tol;
    opts.recording = Recording::Full;
    SchwarzianRun run;
    if (method == Method::SchwarzianG) {
        run = shoot(problem, lam, default_g_launch(problem, problem.domain.start, lam), opts);
    } else {
        if (method == Method::Minimalist) o.notes.push_back("eigenfunction sampled with the schwarzian-phi run");
        run = shoot(problem, lam, default_initial_state(problem, problem.domain.start, lam), opts);
    }
    const BoundarySpec& lower = problem.boundaries.first;
    const Complex constant = (run.approach == Approach::G) ? solve_constant_from_bc(GState::from(run.low_end()), lower)
                                                           : solve_constant_from_bc(PhiState::from(run.low_end()), lower);
    const SampledFunction f = eigenfunction(run, constant);
    o.header.emplace_back("constant", complex_string(constant));
    o.table.columns = {"x", "f_re", "f_im", "F_re", "F_im"};
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        o.table.rows.push_back({f.x[i], f.f[i].real(), f.f[i].imag(), f.F[i].real(), f.F[i].imag()});
    }
    return o;
}

Output dispersion_output(const RunConfig& c, const catalog::CatalogEntry& e, Method method) {
    if (!e.stability) invalid("dispersion needs a stability problem");
    const Approach a = stability_approach(method);
    const std::vector<double> ks = c.k_grid.empty() ? k_grid_from({0.5, 6.0, 12}) : c.k_grid;
    auto family = [&](double k) -> QuantizationFn {
        auto params = c.params;
        params["k"] = k;
        const auto s = catalog::build_stability(e.name, params);
        const JetOptions opts = jet_options(c, s, Recording::TerminalOnly);
        const int m = s.m;
        return [eq = s.equilibrium, a, opts, m, k](Complex w) {
            return jet_quantization(eq, {m, k, w}, a, default_jet_launch(a), opts);
        };
    };
    auto region_for = [&](double k) {
        if (c.region) return *c.region;
        return Region{0.0, std::max(2.0, 2.0 * k + 2.0), 0.02, 4.0};
    };
    DispersionOptions opts;
    std::tie(opts.nx, opts.ny) = c.grid.value_or(std::pair<std::size_t, std::size_t>{60, 60});
    opts.threads = resolve_threads(c.threads);
    const auto points = dispersion_scan(family, ks, region_for, opts);

    Output o;
    o.header = base_header(c, &e, method);
    o.header.emplace_back("web_grid", std::to_string(opts.nx) + "x" + std::to_string(opts.ny));
    std::size_t gaps = 0;
    for (const auto& p : points) gaps += p.omega ? 0 : 1;
    o.header.emplace_back("gaps", std::to_string(gaps));
    o.table = io::dispersion_table(points);
    return o;
}

Output list_output(const RunConfig& c) {
    Output o;
    o.header = base_header(c, nullptr, std::nullopt);
    o.table.columns = {};
    ordered_json arr = ordered_json::array();
    for (const auto& e : catalog::entries()) {
        o.notes.push_back(e.name + " | " + e.summary + " | " + params_string(e.default_params));
        ordered_json targets = ordered_json::array();
        for (const auto& t : e.targets) {
            o.notes.push_back("  " + e.name + " target " + complex_string(t.value) + " [" + t.provenance + "] " +
                              t.description);
            targets.push_back(
                {{"re", t.value.real()}, {"im", t.value.imag()}, {"description", t.description}, {"provenance", t.provenance}});
        }
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : e.default_params) params[k] = v;
        arr.push_back({{"name", e.name},
                       {"summary", e.summary},
                       {"kind", e.stability ? "stability" : "sturm-liouville"},
                       {"params", params},
                       {"targets", targets}});
    }
    o.extra["problems"] = arr;
    return o;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == Command::List) {
            emit(c, list_output(c), out);
            return kExitOk;
        }
        if (c.problem.empty()) invalid("--problem is required for " + std::string(to_string(c.command)));
        const catalog::CatalogEntry& e = catalog::find(c.problem);
        const Method method = c.method.value_or(default_method(e));
        if (e.stability && method == Method::Minimalist) invalid("stability problems need a Schwarzian method");

        Output o;
        switch (c.command) {
            case Command::Solve: o = e.stability ? solve_stability(c, e, method) : solve_sl(c, e, method); break;
            case Command::Web: o = web_output(c, e, method); break;
            case Command::Eigenfunction: o = eigenfunction_output(c, e, method); break;
            case Command::Dispersion: o = dispersion_output(c, e, method); break;
            case Command::List: break;
        }
        emit(c, o, out);
        return kExitOk;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        switch (ex.kind()) {
            case ErrorKind::InvalidArgument:
            case ErrorKind::DimensionMismatch:
            case ErrorKind::NotAsymptotic: return kExitValidation;
            default: return kExitNumerical;
        }
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitValidation;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitValidation;
    }
    return run(config, out, err);
}

}  // namespace schwarzsl::cli
