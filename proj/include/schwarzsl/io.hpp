#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schwarzsl/catalog.hpp"
#include "schwarzsl/mhd.hpp"
#include "schwarzsl/problem.hpp"
#include "schwarzsl/rootfind.hpp"

namespace schwarzsl::io {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Ordered key/value lines written as "# key: value" before CSV data and as
/// the "header" object of JSON output.
using Header = std::vector<std::pair<std::string, std::string>>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Header& header, const Table& table);
nlohmann::ordered_json table_to_json(const Table& table);
nlohmann::ordered_json header_to_json(const Header& header);

Table scan_table(const RealScan& scan);
Table web_table(const SpectralWeb& web);
nlohmann::ordered_json charges_to_json(const std::vector<Charge>& charges);
Table dispersion_table(const std::vector<DispersionPoint>& points);

/// Problem file: {"problem": {"name": ..., "params": {...}}, "label": ...,
/// "domain": {"start": x, "cuts": [a, b]}}. Only catalog problems can be
/// named; domain entries override the catalog window.
SLProblem problem_from_json(const nlohmann::json& j);

/// Equilibrium file: {"gamma": 5/3, "segments": [{"lower": 0, "upper": 1,
/// "rho": 1, "pressure": 0.6, "velocity": 1, "b_z": 0, "b_phi": 0}, ...]}.
/// Profiles are constants, except b_phi may be {"over_radius": I} for I/w.
/// A null or missing "upper" on the last segment means unbounded.
MhdEquilibrium equilibrium_from_json(const nlohmann::json& j);

}  // namespace schwarzsl::io
