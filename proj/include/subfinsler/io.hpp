#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subfinsler/characteristic.hpp"
#include "subfinsler/convex_body.hpp"
#include "subfinsler/graph_surface.hpp"
#include "subfinsler/stability.hpp"

// JSON specs for bodies, domains, and graphs, their parsers (strict: unknown
// keys are rejected with the field path), a deterministic serializer with
// full-precision floats, and CSV emission for plot data.

namespace subfinsler::io {

using json = nlohmann::ordered_json;

ConvexBody parse_body(const json& spec, const std::string& ctx = "body");
Domain2D parse_domain(const json& spec, const std::string& ctx = "domain");

// Graph spec types: closed_form (id + parameters), grid (values inline or
// from CSV), ruled (eps/a/b sample arrays).  The domain comes from the input's
// own "domain" key unless an override is supplied.
IntrinsicGraph parse_graph(const json& spec, const std::optional<Domain2D>& override_domain,
                           const std::string& ctx = "graph");

RulingData parse_ruling(const json& spec, const std::string& ctx = "graph");

// Ruled-graph spec that re-ingests to the same graph: samples at the
// ruling's own nodes, so interpolation is reproduced exactly.
json ruling_to_json(const RulingData& r, const Domain2D& dom);

json report_to_json(const StabilityReport& rep);
json destabilize_to_json(const DestabilizeResult& r);

// Deterministic dump: objects keep insertion order, floats print with 17
// significant digits (round-trip exact), arrays of scalars stay on one line.
std::string dump_json(const json& j, int indent = 2);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// CSV plot data: header row, comma separators, LF line endings, %.17g floats.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

// Reads an nx-by-nt numeric table (an optional non-numeric header row is
// skipped); wrong row or column counts raise errors naming both counts.
std::vector<double> read_grid_csv(const std::string& path, int nx, int nt);

std::string format_double(double v);

}  // namespace subfinsler::io
