#include "schwarzsl/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace schwarzsl::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Header& header, const Table& table) {
    for (const auto& [key, value] : header) os << "# " << key << ": " << value << '\n';
    if (table.columns.empty()) return;
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
        os << '\n';
    }
}

namespace {

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::ordered_json table_to_json(const Table& table) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) obj[table.columns[c]] = number(row[c]);
        out.push_back(std::move(obj));
    }
    return out;
}

nlohmann::ordered_json header_to_json(const Header& header) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [key, value] : header) out[key] = value;
    return out;
}

Table scan_table(const RealScan& scan) {
    Table t{{"lambda", "value"}, {}};
    for (std::size_t i = 0; i < scan.grid.size(); ++i) t.rows.push_back({scan.grid[i], scan.values[i]});
    return t;
}

Table web_table(const SpectralWeb& web) {
    Table t{{"re", "im", "psi"}, {}};
    for (std::size_t i = 0; i < web.nx; ++i) {
        for (std::size_t j = 0; j < web.ny; ++j) {
            const Complex z = web.node(i, j);
            t.rows.push_back({z.real(), z.imag(), web.at(i, j)});
        }
    }
    return t;
}

nlohmann::ordered_json charges_to_json(const std::vector<Charge>& charges) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const Charge& c : charges) {
        out.push_back({{"re", c.location.real()},
                       {"im", c.location.imag()},
                       {"winding", c.winding},
                       {"flagged", c.flagged}});
    }
    return out;
}

Table dispersion_table(const std::vector<DispersionPoint>& points) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Table t{{"k", "re", "im", "continued"}, {}};
    for (const auto& p : points) {
        t.rows.push_back({p.k, p.omega ? p.omega->real() : nan, p.omega ? p.omega->imag() : nan,
                          p.continued ? 1.0 : 0.0});
    }
    return t;
}

SLProblem problem_from_json(const nlohmann::json& j) {
    if (!j.contains("problem") || !j["problem"].contains("name")) {
        throw Error(ErrorKind::InvalidArgument, "problem file needs problem.name");
    }
    const auto& pj = j["problem"];
    std::map<std::string, double> params;
    if (pj.contains("params")) {
        for (const auto& [key, value] : pj["params"].items()) params[key] = value.get<double>();
    }
    SLProblem p = catalog::build_problem(pj["name"].get<std::string>(), params);
    if (j.contains("label")) p.label = j["label"].get<std::string>();
    if (j.contains("domain")) {
        const auto& d = j["domain"];
        if (d.contains("start")) p.domain.start = d["start"].get<double>();
        if (d.contains("cuts")) {
            const auto cuts = d["cuts"].get<std::vector<double>>();
            if (cuts.size() != 2) throw Error(ErrorKind::InvalidArgument, "domain.cuts needs two values");
            p.domain.lower_cut = cuts[0];
            p.domain.upper_cut = cuts[1];
        }
    }
    return p;
}

namespace {

Profile profile_from_json(const nlohmann::json& v, const std::string& name) {
    if (v.is_number()) {
        const double c = v.get<double>();
        return [c](double) { return c; };
    }
    if (v.is_object() && v.contains("over_radius")) {
        const double c = v["over_radius"].get<double>();
        return [c](double w) { return c / w; };
    }
    throw Error(ErrorKind::InvalidArgument, "profile '" + name + "' must be a number or {\"over_radius\": c}");
}

}  // namespace

MhdEquilibrium equilibrium_from_json(const nlohmann::json& j) {
    MhdEquilibrium eq;
    if (j.contains("gamma")) eq.gamma = j["gamma"].get<double>();
    if (!j.contains("segments") || !j["segments"].is_array()) {
        throw Error(ErrorKind::InvalidArgument, "equilibrium file needs a segments array");
    }
    for (const auto& s : j["segments"]) {
        ProfileSegment seg;
        seg.lower = s.at("lower").get<double>();
        seg.upper = (s.contains("upper") && !s["upper"].is_null()) ? s["upper"].get<double>()
                                                                   : std::numeric_limits<double>::infinity();
        if (!s.contains("rho")) throw Error(ErrorKind::InvalidArgument, "every segment needs rho");
        for (const char* key : {"rho", "pressure", "velocity", "b_z", "b_phi"}) {
            const nlohmann::json v = s.contains(key) ? s[key] : nlohmann::json(0.0);
            Profile f = profile_from_json(v, key);
            if (std::string(key) == "rho") seg.rho = f;
            else if (std::string(key) == "pressure") seg.pressure = f;
            else if (std::string(key) == "velocity") seg.velocity = f;
            else if (std::string(key) == "b_z") seg.b_z = f;
            else seg.b_phi = f;
        }
        eq.segments.push_back(std::move(seg));
    }
    eq.check();
    return eq;
}

}  // namespace schwarzsl::io
