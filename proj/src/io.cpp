#include "subfinsler/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "subfinsler/errors.hpp"

namespace subfinsler::io {

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& what) {
    throw validation_error(ctx + ": " + what);
}

void require_object(const json& j, const std::string& ctx) {
    if (!j.is_object()) fail(ctx, "expected an object");
}

void check_keys(const json& j, const std::string& ctx, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
    require_object(j, ctx);
    std::set<std::string> allowed;
    for (const char* k : required) {
        if (!j.contains(k)) fail(ctx, std::string("missing key '") + k + "'");
        allowed.insert(k);
    }
    for (const char* k : optional) allowed.insert(k);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(ctx, "unknown key '" + it.key() + "'");
}

double get_double(const json& j, const std::string& ctx, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) fail(ctx + "." + key, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail(ctx + "." + key, "expected a finite number");
    return d;
}

long get_int(const json& j, const std::string& ctx, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(ctx + "." + key, "expected an integer");
    return v.get<long>();
}

std::vector<double> get_array(const json& j, const std::string& ctx, const char* key) {
    const json& v = j.at(key);
    if (!v.is_array()) fail(ctx + "." + key, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(ctx + "." + key, "expected an array of numbers");
        double d = e.get<double>();
        if (!std::isfinite(d)) fail(ctx + "." + key, "expected finite numbers");
        out.push_back(d);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ConvexBody parse_body(const json& spec, const std::string& ctx) {
    require_object(spec, ctx);
    if (!spec.contains("type")) fail(ctx, "missing key 'type'");
    std::string type = spec.at("type").is_string() ? spec.at("type").get<std::string>() : "";
    if (type == "disk") {
        check_keys(spec, ctx, {"type", "r"});
        return ConvexBody::disk(get_double(spec, ctx, "r"));
    }
    if (type == "ellipse") {
        check_keys(spec, ctx, {"type", "a", "b"});
        return ConvexBody::ellipse(get_double(spec, ctx, "a"), get_double(spec, ctx, "b"));
    }
    if (type == "support_samples") {
        check_keys(spec, ctx, {"type", "h"});
        return ConvexBody::from_support_samples(get_array(spec, ctx, "h"));
    }
    fail(ctx + ".type", "unknown body type '" + type + "'");
}

Domain2D parse_domain(const json& spec, const std::string& ctx) {
    check_keys(spec, ctx, {"x0", "x1", "t0", "t1"});
    Domain2D d{get_double(spec, ctx, "x0"), get_double(spec, ctx, "x1"),
               get_double(spec, ctx, "t0"), get_double(spec, ctx, "t1")};
    if (!(d.x1 > d.x0) || !(d.t1 > d.t0)) fail(ctx, "domain must have positive extent");
    return d;
}

namespace {

Domain2D resolve_domain(const json& spec, const std::optional<Domain2D>& override_domain,
                        const std::string& ctx) {
    if (override_domain) return *override_domain;
    if (!spec.contains("domain")) fail(ctx, "missing key 'domain'");
    return parse_domain(spec.at("domain"), ctx + ".domain");
}

IntrinsicGraph parse_closed_form(const json& spec, const std::optional<Domain2D>& override_domain,
                                 const std::string& ctx) {
    if (!spec.contains("id")) fail(ctx, "missing key 'id'");
    std::string id = spec.at("id").is_string() ? spec.at("id").get<std::string>() : "";
    if (id == "zero") {
        check_keys(spec, ctx, {"type", "id"}, {"domain"});
        return graphs::zero(resolve_domain(spec, override_domain, ctx));
    }
    if (id == "affine") {
        check_keys(spec, ctx, {"type", "id", "a", "b"}, {"domain"});
        return graphs::affine(get_double(spec, ctx, "a"), get_double(spec, ctx, "b"),
                              resolve_domain(spec, override_domain, ctx));
    }
    if (id == "xt_over_1px2") {
        check_keys(spec, ctx, {"type", "id"}, {"domain"});
        return graphs::xt_over_1px2(resolve_domain(spec, override_domain, ctx));
    }
    if (id == "custom_poly") {
        check_keys(spec, ctx, {"type", "id", "coeffs"}, {"domain"});
        const json& c = spec.at("coeffs");
        if (!c.is_array() || c.empty()) fail(ctx + ".coeffs", "expected a nonempty array of rows");
        std::vector<std::vector<double>> coeffs;
        for (size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_array()) fail(ctx + ".coeffs", "expected rows of numbers");
            std::vector<double> row;
            for (const auto& e : c[i]) {
                if (!e.is_number()) fail(ctx + ".coeffs", "expected rows of numbers");
                row.push_back(e.get<double>());
            }
            coeffs.push_back(std::move(row));
        }
        return graphs::poly(coeffs, resolve_domain(spec, override_domain, ctx));
    }
    fail(ctx + ".id", "unknown closed-form id '" + id + "'");
}

IntrinsicGraph parse_grid(const json& spec, const std::optional<Domain2D>& override_domain,
                          const std::string& ctx) {
    check_keys(spec, ctx, {"type", "nx", "nt"}, {"domain", "values", "csv"});
    long nx = get_int(spec, ctx, "nx");
    long nt = get_int(spec, ctx, "nt");
    if (nx < 2 || nt < 2) fail(ctx, "grid needs nx >= 2 and nt >= 2");
    graphs::GridData data;
    data.dom = resolve_domain(spec, override_domain, ctx);
    data.nx = static_cast<int>(nx);
    data.nt = static_cast<int>(nt);
    if (spec.contains("values") == spec.contains("csv"))
        fail(ctx, "grid needs exactly one of 'values' and 'csv'");
    if (spec.contains("values")) {
        data.values = get_array(spec, ctx, "values");
        if (data.values.size() != static_cast<size_t>(nx * nt))
            fail(ctx + ".values", "got " + std::to_string(data.values.size()) +
                                      " values, expected nx*nt = " + std::to_string(nx * nt));
    } else {
        if (!spec.at("csv").is_string()) fail(ctx + ".csv", "expected a file path string");
        data.values = read_grid_csv(spec.at("csv").get<std::string>(), data.nx, data.nt);
    }
    return graphs::from_grid(data);
}

}  // namespace

RulingData parse_ruling(const json& spec, const std::string& ctx) {
    check_keys(spec, ctx, {"type", "eps", "a", "b"}, {"domain"});
    std::vector<double> eps = get_array(spec, ctx, "eps");
    std::vector<double> a = get_array(spec, ctx, "a");
    std::vector<double> b = get_array(spec, ctx, "b");
    if (eps.size() != a.size() || eps.size() != b.size())
        fail(ctx, "eps, a, b must have equal lengths (got " + std::to_string(eps.size()) + ", " +
                      std::to_string(a.size()) + ", " + std::to_string(b.size()) + ")");
    return RulingData::from_samples(eps, a, b);
}

IntrinsicGraph parse_graph(const json& spec, const std::optional<Domain2D>& override_domain,
                           const std::string& ctx) {
    require_object(spec, ctx);
    if (!spec.contains("type")) fail(ctx, "missing key 'type'");
    std::string type = spec.at("type").is_string() ? spec.at("type").get<std::string>() : "";
    if (type == "closed_form") return parse_closed_form(spec, override_domain, ctx);
    if (type == "grid") return parse_grid(spec, override_domain, ctx);
    if (type == "ruled") {
        RulingData r = parse_ruling(spec, ctx);
        return build_ruled_graph(r, resolve_domain(spec, override_domain, ctx));
    }
    fail(ctx + ".type", "unknown graph type '" + type + "'");
}

json ruling_to_json(const RulingData& r, const Domain2D& dom) {
    json j;
    j["type"] = "ruled";
    j["domain"] = {{"x0", dom.x0}, {"x1", dom.x1}, {"t0", dom.t0}, {"t1", dom.t1}};
    std::vector<double> eps = r.eps_samples();
    std::vector<double> a, b;
    a.reserve(eps.size());
    b.reserve(eps.size());
    for (double e : eps) {
        a.push_back(r.a(e));
        b.push_back(r.b(e));
    }
    j["eps"] = eps;
    j["a"] = a;
    j["b"] = b;
    return j;
}

json destabilize_to_json(const DestabilizeResult& r) {
    json j;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["converged"] = r.converged;
    j["n_x"] = r.n_x;
    j["n_eps"] = r.n_eps;
    j["x_range"] = {r.x_lo, r.x_hi};
    j["eps_range"] = {r.eps_lo, r.eps_hi};
    j["quadratic_value"] = r.quadratic_value;
    j["mass_value"] = r.mass_value;
    j["direct_q"] = r.direct_q;
    j["coeffs"] = r.coeffs;
    return j;
}

json report_to_json(const StabilityReport& rep) {
    json j;
    j["graph"] = rep.graph_id;
    j["body"] = rep.body_id;
    j["stationary"] = rep.stationary;
    j["stationarity_residual"] = rep.stationarity_residual;
    j["planar"] = rep.planar;
    j["planarity_residual"] = rep.planarity_residual;
    json samples = json::array();
    for (const RulingSample& s : rep.ruling)
        samples.push_back(
            {{"eps", s.eps}, {"a", s.a}, {"b", s.b}, {"A", s.A}, {"B", s.B}});
    j["ruling"] = samples;
    j["searched"] = rep.searched;
    if (rep.searched) {
        j["min_eigenvalue"] = rep.search.min_eigenvalue;
        j["witness"] = destabilize_to_json(rep.search);
    }
    j["verdict"] = rep.verdict;
    return j;
}

namespace {

bool scalar_array(const json& j) {
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    std::string pad(static_cast<size_t>(indent) * depth, ' ');
    std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad1 + json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (scalar_array(j)) {
                out += "[";
                bool first = true;
                for (const auto& e : j) {
                    if (!first) out += ", ";
                    first = false;
                    dump_rec(e, out, indent, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad1;
                dump_rec(e, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v))
                out += "null";
            else
                out += format_double(v);
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file '" + path + "'");
    out << content;
    if (!out) throw validation_error("write failed for '" + path + "'");
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw validation_error("csv row width " + std::to_string(row.size()) +
                                   " does not match header width " +
                                   std::to_string(header.size()));
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += format_double(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::vector<double> read_grid_csv(const std::string& path, int nx, int nt) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open csv '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t used = 0;
                double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw validation_error("csv '" + path + "': non-numeric cell outside header");
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (rows.size() != static_cast<size_t>(nx))
        throw validation_error("csv '" + path + "' has " + std::to_string(rows.size()) +
                               " data rows, expected nx = " + std::to_string(nx));
    std::vector<double> values;
    values.reserve(static_cast<size_t>(nx) * nt);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<size_t>(nt))
            throw validation_error("csv '" + path + "' row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) +
                                   " values, expected nt = " + std::to_string(nt));
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return values;
}

}  // namespace subfinsler::io
