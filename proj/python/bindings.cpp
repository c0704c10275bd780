#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "schwarzsl/catalog.hpp"
#include "schwarzsl/cli.hpp"
#include "schwarzsl/mhd.hpp"
#include "schwarzsl/rootfind.hpp"
#include "schwarzsl/schwarzian.hpp"

namespace py = pybind11;
using namespace schwarzsl;

namespace {

using Params = std::map<std::string, double>;

Approach approach_from(const std::string& s) {
    if (s == "g") return Approach::G;
    if (s == "phi") return Approach::Phi;
    throw Error(ErrorKind::InvalidArgument, "approach must be 'g' or 'phi'");
}

Complex jet_q(Complex omega, const std::string& approach, const Params& params) {
    const auto cfg = catalog::build_stability("cohn", params);
    const Approach ap = approach_from(approach);
    JetOptions o;
    o.cuts = cfg.cuts;
    o.launch_point = cfg.launch_point;
    return jet_quantization(cfg.equilibrium, {cfg.m, cfg.k, omega}, ap, default_jet_launch(ap), o);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Schwarzian-derivative Sturm-Liouville and MHD stability solver";
    m.attr("__version__") = SCHWARZSL_VERSION;

    static py::exception<Error> exc(m, "SchwarzslError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            exc(e.what());
        }
    });

    m.def("problems", [] {
        std::vector<std::string> names;
        for (const auto& e : catalog::entries()) names.push_back(e.name);
        return names;
    });
    m.def("morse_levels", &catalog::morse_levels, py::arg("depth"));
    m.def("paine_reference", &catalog::paine_reference);

    m.def(
        "kappa_squared",
        [](const std::string& name, double x, Complex lam, const Params& params) {
            return kappa_squared(catalog::build_problem(name, params).coefficients, x, lam);
        },
        py::arg("name"), py::arg("x"), py::arg("lam"), py::arg("params") = Params{});
    m.def(
        "phi_winding",
        [](const std::string& name, Complex lam, const Params& params) {
            return phi_winding(catalog::build_problem(name, params), lam);
        },
        py::arg("name"), py::arg("lam"), py::arg("params") = Params{});
    m.def(
        "g_difference",
        [](const std::string& name, Complex lam, const Params& params) {
            return g_difference(catalog::build_problem(name, params), lam);
        },
        py::arg("name"), py::arg("lam"), py::arg("params") = Params{});

    m.def("jet_quantization", &jet_q, py::arg("omega"), py::arg("approach") = "g", py::arg("params") = Params{});
    m.def(
        "find_jet_root",
        [](Complex seed, const std::string& approach, const Params& params) {
            const ComplexRoot r = refine_complex_root([&](Complex w) { return jet_q(w, approach, params); }, seed);
            return py::make_tuple(r.root, r.residual, r.converged);
        },
        py::arg("seed"), py::arg("approach") = "g", py::arg("params") = Params{});

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<std::string> all{"schwarzian-sl"};
            all.insert(all.end(), args.begin(), args.end());
            std::vector<const char*> argv;
            for (const auto& a : all) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
