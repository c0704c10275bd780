#include "schwarzsl/catalog.hpp"

#include <cmath>
#include <sstream>

namespace schwarzsl::catalog {

namespace {

Complex zero(double, Complex) { return {0.0, 0.0}; }
Complex one(double, Complex) { return {1.0, 0.0}; }

Domain whole_line(double lower_cut, double upper_cut, double start) {
    return {DomainEnd::minus_infinity(), DomainEnd::plus_infinity(), start, lower_cut, upper_cut};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

SLProblem morse(double depth) {
    if (!(depth > 0.5)) throw Error(ErrorKind::InvalidArgument, "Morse depth parameter must exceed 1/2");
    SLProblem p;
    p.coefficients.p = one;
    p.coefficients.p_prime = zero;
    p.coefficients.q = [depth](double x, Complex eps) {
        const double s = 1.0 - std::exp(-x);
        return eps - depth * depth * s * s;
    };
    p.domain = whole_line(-7.0, 15.0, 0.0);
    p.boundaries = {BoundarySpec::quantization(), BoundarySpec::quantization()};
    p.label = "morse(lambda=" + fmt(depth) + ")";
    return p;
}

std::vector<double> morse_levels(double depth) {
    std::vector<double> out;
    for (int n = 0; depth - n - 0.5 > 0.0; ++n) {
        const double t = depth - n - 0.5;
        out.push_back(depth * depth - t * t);
    }
    return out;
}

SLProblem harmonic() {
    SLProblem p;
    p.coefficients.p = one;
    p.coefficients.p_prime = zero;
    p.coefficients.q = [](double x, Complex eps) { return 2.0 * eps - x * x; };
    p.domain = whole_line(-6.0, 6.0, 0.0);
    p.boundaries = {BoundarySpec::quantization(), BoundarySpec::quantization()};
    p.label = "harmonic";
    return p;
}

SLProblem paine() {
    SLProblem p;
    p.coefficients.p = one;
    p.coefficients.p_prime = zero;
    p.coefficients.q = [](double x, Complex lam) {
        const double s = x + 0.1;
        return lam - 1.0 / (s * s);
    };
    p.domain = {DomainEnd::finite(0.0), DomainEnd::finite(kPi), 0.5 * kPi, 0.0, kPi};
    p.boundaries = {BoundarySpec::dirichlet(), BoundarySpec::dirichlet()};
    p.label = "paine";
    return p;
}

const std::vector<double>& paine_reference() {
    static const std::vector<double> values{1.51987, 4.94331, 10.2847, 17.5599, 26.7828, 37.9643, 51.1131,
                                            66.2361, 83.3385, 102.424, 123.497, 146.558, 171.611, 198.657};
    return values;
}

SLProblem const_oscillator(Complex kappa) {
    if (!(kappa.imag() > 0.0)) throw Error(ErrorKind::InvalidArgument, "constant oscillator needs Im kappa > 0");
    SLProblem p;
    p.coefficients.p = one;
    p.coefficients.p_prime = zero;
    const Complex k2 = kappa * kappa;
    p.coefficients.q = [k2](double, Complex) { return k2; };
    p.domain = whole_line(-40.0, 40.0, 0.0);
    p.boundaries = {BoundarySpec::quantization(), BoundarySpec::quantization()};
    std::ostringstream os;
    os << "const_oscillator(kappa=" << kappa.real() << (kappa.imag() < 0 ? "" : "+") << kappa.imag() << "i)";
    p.label = os.str();
    return p;
}

StabilityConfig cohn_jet(double mach, double eta, int m, double k) {
    if (!(eta > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta must be positive");
    if (!(mach >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Mach number must be non-negative");
    StabilityConfig c;
    c.model.mach = mach;
    c.model.eta = eta;
    c.m = m;
    c.k = k;
    c.equilibrium = c.model.to_equilibrium();
    c.label = "cohn(M=" + fmt(mach) + ",eta=" + fmt(eta) + ",m=" + std::to_string(m) + ",k=" + fmt(k) + ")";
    return c;
}

const std::vector<CatalogEntry>& entries() {
    static const std::vector<CatalogEntry> all = [] {
        std::vector<CatalogEntry> v;

        CatalogEntry m{"morse", "p = 1, q = eps - lambda^2 (1 - exp(-x))^2 on the real line", {{"lambda", 5.0}}, {},
                       false};
        const auto levels = morse_levels(5.0);
        for (std::size_t n = 0; n < levels.size(); ++n) {
            m.targets.push_back({levels[n], "eps_" + std::to_string(n) + " = lambda^2 - (lambda - n - 1/2)^2",
                                 n == 2 ? "published" : "closed-form"});
        }
        v.push_back(m);

        CatalogEntry h{"harmonic", "p = 1, q = 2 eps - x^2 on the real line", {}, {}, false};
        for (int n = 0; n < 6; ++n) h.targets.push_back({n + 0.5, "eps_" + std::to_string(n) + " = n + 1/2", "closed-form"});
        v.push_back(h);

        CatalogEntry p{"paine", "p = 1, q = lambda - 1/(x + 0.1)^2 on [0, pi], f(0) = f(pi) = 0", {}, {}, false};
        const auto& ref = paine_reference();
        for (std::size_t n = 0; n < ref.size(); ++n) {
            p.targets.push_back({ref[n], "lambda_" + std::to_string(n + 1), "published"});
        }
        v.push_back(p);

        CatalogEntry c{"const_oscillator",
                       "p = 1, q = kappa^2 (complex constant), non-diverging F = i kappa",
                       {{"kappa_re", 1.0}, {"kappa_im", 1.0}},
                       {{Complex{-1.0, 1.0}, "F = i kappa for kappa = 1 + i", "closed-form"}},
                       false};
        v.push_back(c);

        CatalogEntry j{"cohn",
                       "uniform jet, cold azimuthally magnetized environment (temporal, omega complex)",
                       {{"M", 1.0}, {"eta", 0.01}, {"m", 0.0}, {"k", kPi}},
                       {{Complex{3.08, 1.97}, "unstable root at m = 0, k = pi", "published"}},
                       true};
        v.push_back(j);
        return v;
    }();
    return all;
}

const CatalogEntry& find(const std::string& name) {
    for (const auto& e : entries()) {
        if (e.name == name) return e;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown problem '" + name + "'");
}

namespace {

std::map<std::string, double> merged(const CatalogEntry& e, const std::map<std::string, double>& params) {
    std::map<std::string, double> out = e.default_params;
    for (const auto& [key, value] : params) {
        if (!out.count(key)) {
            throw Error(ErrorKind::InvalidArgument, "problem '" + e.name + "' has no parameter '" + key + "'");
        }
        out[key] = value;
    }
    return out;
}

}  // namespace

SLProblem build_problem(const std::string& name, const std::map<std::string, double>& params) {
    const CatalogEntry& e = find(name);
    if (e.stability) throw Error(ErrorKind::InvalidArgument, "'" + name + "' is a stability problem");
    const auto p = merged(e, params);
    if (name == "morse") return morse(p.at("lambda"));
    if (name == "harmonic") return harmonic();
    if (name == "paine") return paine();
    return const_oscillator({p.at("kappa_re"), p.at("kappa_im")});
}

StabilityConfig build_stability(const std::string& name, const std::map<std::string, double>& params) {
    const CatalogEntry& e = find(name);
    if (!e.stability) throw Error(ErrorKind::InvalidArgument, "'" + name + "' is not a stability problem");
    const auto p = merged(e, params);
    const double m = p.at("m");
    if (m != std::round(m)) throw Error(ErrorKind::InvalidArgument, "azimuthal number m must be an integer");
    return cohn_jet(p.at("M"), p.at("eta"), static_cast<int>(m), p.at("k"));
}

}  // namespace schwarzsl::catalog
