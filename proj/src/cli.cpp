#include "subfinsler/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "subfinsler/characteristic.hpp"
#include "subfinsler/codazzi.hpp"
#include "subfinsler/errors.hpp"
#include "subfinsler/io.hpp"
#include "subfinsler/stability.hpp"
#include "subfinsler/variation.hpp"

namespace subfinsler::cli {

namespace {

using io::json;

struct RunConfig {
    json body_spec;   // null when absent
    json graph_spec;  // null when absent
    std::optional<Domain2D> domain;
    int quad_cells = 8;
    int quad_order = 16;
    double fd_step = 1e-5;
    double ode_step = 1e-3;
    int basis_x = 12;
    int basis_eps = 12;
    int max_refine = 2;
    std::string out_dir;
    long seed = 0;

    QuadratureSpec quad() const { return {quad_cells, quad_cells, quad_order}; }
};

[[noreturn]] void fail(const std::string& what) { throw validation_error(what); }

void check_config_keys(const json& j, const std::string& ctx,
                       std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(ctx + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) fail(ctx + ": unknown key '" + it.key() + "'");
    }
}

double config_double(const json& j, const std::string& path) {
    if (!j.is_number() || !std::isfinite(j.get<double>()))
        fail(path + ": expected a finite number");
    return j.get<double>();
}

long config_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path + ": expected an integer");
    return j.get<long>();
}

void apply_config_file(RunConfig& cfg, const json& j) {
    check_config_keys(j, "config",
                      {"body", "graph", "domain", "quadrature", "fd_step", "ode_step", "basis",
                       "out", "seed"});
    if (j.contains("body")) cfg.body_spec = j.at("body");
    if (j.contains("graph")) cfg.graph_spec = j.at("graph");
    if (j.contains("domain")) cfg.domain = io::parse_domain(j.at("domain"), "config.domain");
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        check_config_keys(q, "config.quadrature", {"cells", "order"});
        if (q.contains("cells")) cfg.quad_cells = static_cast<int>(config_int(q.at("cells"), "quadrature.cells"));
        if (q.contains("order")) cfg.quad_order = static_cast<int>(config_int(q.at("order"), "quadrature.order"));
    }
    if (j.contains("fd_step")) cfg.fd_step = config_double(j.at("fd_step"), "config.fd_step");
    if (j.contains("ode_step")) cfg.ode_step = config_double(j.at("ode_step"), "config.ode_step");
    if (j.contains("basis")) {
        const json& b = j.at("basis");
        check_config_keys(b, "config.basis", {"n_x", "n_eps", "max_refine"});
        if (b.contains("n_x")) cfg.basis_x = static_cast<int>(config_int(b.at("n_x"), "basis.n_x"));
        if (b.contains("n_eps"))
            cfg.basis_eps = static_cast<int>(config_int(b.at("n_eps"), "basis.n_eps"));
        if (b.contains("max_refine"))
            cfg.max_refine = static_cast<int>(config_int(b.at("max_refine"), "basis.max_refine"));
    }
    if (j.contains("out")) {
        if (!j.at("out").is_string()) fail("config.out: expected a string");
        cfg.out_dir = j.at("out").get<std::string>();
    }
    if (j.contains("seed")) cfg.seed = config_int(j.at("seed"), "config.seed");
}

void validate_config(const RunConfig& cfg) {
    if (cfg.quad_order < 1 || cfg.quad_order > 64)
        fail("quadrature.order must be between 1 and 64");
    if (cfg.quad_cells < 1) fail("quadrature.cells must be positive");
    if (!(cfg.fd_step > 0.0)) fail("fd_step must be positive");
    if (!(cfg.ode_step > 0.0)) fail("ode_step must be positive");
    if (cfg.basis_x < 1) fail("basis.n_x must be positive");
    if (cfg.basis_eps < 1) fail("basis.n_eps must be positive");
    if (cfg.max_refine < 0) fail("basis.max_refine must be nonnegative");
}

// Spec strings on the command line: inline JSON if they start with '{',
// otherwise a path to a JSON file.
json load_spec(const std::string& s, const std::string& what) {
    if (!s.empty() && s[0] == '{') {
        try {
            return json::parse(s);
        } catch (const nlohmann::json::exception& e) {
            fail("invalid inline JSON for " + what + ": " + e.what());
        }
    }
    return io::load_json_file(s);
}

ConvexBody need_body(const RunConfig& cfg) {
    if (cfg.body_spec.is_null()) fail("missing body spec (--body or config \"body\")");
    return io::parse_body(cfg.body_spec);
}

IntrinsicGraph need_graph(const RunConfig& cfg) {
    if (cfg.graph_spec.is_null()) fail("missing graph spec (--graph or config \"graph\")");
    return io::parse_graph(cfg.graph_spec, cfg.domain);
}

json domain_to_json(const Domain2D& d) {
    return {{"x0", d.x0}, {"x1", d.x1}, {"t0", d.t0}, {"t1", d.t1}};
}

struct Artifact {
    std::string name;
    std::string content;
};

void emit(const RunConfig& cfg, const std::string& cmd, const json& report,
          const std::vector<Artifact>& files, std::ostream& out) {
    std::string dumped = io::dump_json(report);
    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (ec) throw validation_error("cannot create output directory '" + cfg.out_dir + "'");
        for (const Artifact& a : files) io::write_text_file(cfg.out_dir + "/" + a.name, a.content);
        io::write_text_file(cfg.out_dir + "/" + cmd + ".json", dumped);
    }
    out << dumped;
}

double default_axis(const Domain2D& d) {
    return (d.x0 < 0.0 && d.x1 > 0.0) ? 0.0 : 0.5 * (d.x0 + d.x1);
}

void run_area(const RunConfig& cfg, std::ostream& out) {
    ConvexBody body = need_body(cfg);
    IntrinsicGraph g = need_graph(cfg);
    json rep;
    rep["command"] = "area";
    rep["seed"] = cfg.seed;
    rep["body"] = body.id();
    rep["graph"] = g.id();
    rep["domain"] = domain_to_json(g.domain());
    rep["area"] = subfinsler_area(g, body, cfg.quad());
    emit(cfg, "area", rep, {}, out);
}

void run_stationarity(const RunConfig& cfg, std::ostream& out) {
    IntrinsicGraph g = need_graph(cfg);
    double res = stationarity_residual(g, 9, cfg.ode_step);
    json rep;
    rep["command"] = "stationarity";
    rep["seed"] = cfg.seed;
    rep["graph"] = g.id();
    rep["residual"] = res;
    rep["monotonicity_min"] = monotonicity_min(g, 17, cfg.ode_step);
    rep["stationary"] = res <= 1e-6;
    emit(cfg, "stationarity", rep, {}, out);
}

struct FoliateOpts {
    double eps_lo = std::nan("");
    double eps_hi = std::nan("");
    int curves = 33;
};

void run_foliate(const RunConfig& cfg, const FoliateOpts& fo, std::ostream& out) {
    IntrinsicGraph g = need_graph(cfg);
    const Domain2D& d = g.domain();
    double pad = 1e-6 * d.height();
    double lo = std::isnan(fo.eps_lo) ? d.t0 + pad : fo.eps_lo;
    double hi = std::isnan(fo.eps_hi) ? d.t1 - pad : fo.eps_hi;
    if (!(hi > lo)) fail("foliate: eps range must have positive length");
    if (fo.curves < 2) fail("foliate: need at least 2 curves");

    double xs = default_axis(d);
    std::vector<std::vector<double>> rows;
    double max_osc = 0.0, max_line = 0.0, max_quad = 0.0, max_contact = 0.0;
    for (int k = 0; k < fo.curves; ++k) {
        double eps = lo + (hi - lo) * k / (fo.curves - 1);
        CharacteristicCurve c =
            integrate_characteristic(g, eps, d.x0 - xs, d.x1 - xs, cfg.ode_step, xs);
        double pmin = c.p[0], pmax = c.p[0];
        for (size_t i = 0; i < c.s.size(); ++i) {
            pmin = std::min(pmin, c.p[i]);
            pmax = std::max(pmax, c.p[i]);
            rows.push_back({eps, c.s[i], xs + c.s[i], c.t[i], c.u[i], c.p[i]});
        }
        max_osc = std::max(max_osc, pmax - pmin);
        LineCheck lc = line_check(g, c);
        max_line = std::max(max_line, lc.max_line_distance);
        max_contact = std::max(max_contact, lc.max_contact);
        max_quad = std::max(max_quad, fit_quadratic(c).max_residual);
    }
    RulingData ruling = extract_ruling(g, lo, hi, fo.curves);
    // The ruled strip covers t between the extreme lines at each x; emit the
    // largest rectangle inside it so ruling.json re-ingests as a graph.
    double cov_lo = d.t0, cov_hi = d.t1;
    for (int i = 0; i <= 64; ++i) {
        double x = d.x0 + d.width() * i / 64.0;
        cov_lo = std::max(cov_lo, ruling_t(ruling, lo, x));
        cov_hi = std::min(cov_hi, ruling_t(ruling, hi, x));
    }
    json ruling_json = io::ruling_to_json(ruling, Domain2D{d.x0, d.x1, cov_lo, cov_hi});
    if (!(cov_hi > cov_lo)) ruling_json.erase("domain");

    json rep;
    rep["command"] = "foliate";
    rep["seed"] = cfg.seed;
    rep["graph"] = g.id();
    rep["curves"] = fo.curves;
    rep["eps_range"] = {lo, hi};
    rep["max_p_oscillation"] = max_osc;
    rep["max_line_residual"] = max_line;
    rep["max_contact"] = max_contact;
    rep["max_quadratic_residual"] = max_quad;
    rep["ruling"] = ruling_json;
    std::vector<Artifact> files;
    files.push_back({"characteristics.csv", io::to_csv({"eps", "s", "x", "t", "u", "p"}, rows)});
    files.push_back({"ruling.json", io::dump_json(ruling_json)});
    if (!cfg.out_dir.empty()) {
        rep["csv"] = "characteristics.csv";
        rep["ruling_file"] = "ruling.json";
    }
    emit(cfg, "foliate", rep, files, out);
}

struct VariationOpts {
    json field_spec;  // null -> default vertical bump
    double ds = 1e-3;
    bool second = false;
};

Bump2D parse_bump(const json& spec, const Domain2D& d, const std::string& ctx) {
    double cx = 0.5 * (d.x0 + d.x1), ct = 0.5 * (d.t0 + d.t1);
    double hx = 0.25 * d.width(), ht = 0.25 * d.height();
    BumpProfile prof = BumpProfile::cos4;
    if (!spec.is_null()) {
        if (spec.contains("center")) {
            std::vector<double> c = spec.at("center").get<std::vector<double>>();
            if (c.size() != 2) fail(ctx + ".center: expected [x, t]");
            cx = c[0];
            ct = c[1];
        }
        if (spec.contains("halfwidth")) {
            std::vector<double> h = spec.at("halfwidth").get<std::vector<double>>();
            if (h.size() != 2) fail(ctx + ".halfwidth: expected [wx, wt]");
            hx = h[0];
            ht = h[1];
        }
        if (spec.contains("profile"))
            prof = bump_profile_from_string(spec.at("profile").get<std::string>());
    }
    return Bump2D(Bump1D(cx, hx, prof), Bump1D(ct, ht, prof));
}

void run_variation(const RunConfig& cfg, const VariationOpts& vo, std::ostream& out) {
    ConvexBody body = need_body(cfg);
    IntrinsicGraph g = need_graph(cfg);
    std::string type = "vertical";
    if (!vo.field_spec.is_null()) {
        check_config_keys(vo.field_spec, "field", {"type", "center", "halfwidth", "profile"});
        if (vo.field_spec.contains("type"))
            type = vo.field_spec.at("type").get<std::string>();
    }
    Bump2D bump = parse_bump(vo.field_spec, g.domain(), "field");
    VariationField field = [&] {
        if (type == "vertical") return VariationField::vertical(g, bump);
        if (type == "horizontal_normal") return VariationField::horizontal_normal(g, bump);
        fail("field.type: unknown field type '" + type + "'");
    }();

    json rep;
    rep["command"] = "variation";
    rep["seed"] = cfg.seed;
    rep["body"] = body.id();
    rep["graph"] = g.id();
    rep["field"] = type;
    double fd = first_variation_fd(g, field, body, cfg.quad(), vo.ds);
    double formula = first_variation_formula(g, field, body, cfg.quad());
    rep["first_fd"] = fd;
    rep["first_formula"] = formula;
    rep["first_gap"] = std::abs(fd - formula);
    if (type == "vertical") {
        double graph_route = first_variation_graph(g, bump, body, cfg.quad());
        rep["first_graph_route"] = graph_route;
        rep["first_graph_gap"] = std::abs(fd - graph_route);
    }
    if (vo.second) {
        if (type != "horizontal_normal")
            fail("--second needs a horizontal_normal field");
        double sfd = second_variation_fd(g, bump, body, cfg.quad(), vo.ds);
        double sform = second_variation_formula(g, bump, body, cfg.quad());
        rep["second_fd"] = sfd;
        rep["second_formula"] = sform;
        rep["second_gap"] = std::abs(sfd - sform);
    }
    emit(cfg, "variation", rep, {}, out);
}

struct CodazziOpts {
    double a = 0.0, b = 0.0;
    bool have_ab = false;
    std::string range = "-1:1";
    double step = 1e-4;
    double eps = std::nan("");
    double sbar_max = 1.0;
};

void run_codazzi(const RunConfig& cfg, const CodazziOpts& co, std::ostream& out) {
    json rep;
    rep["command"] = "codazzi";
    rep["seed"] = cfg.seed;
    std::vector<Artifact> files;

    if (!cfg.graph_spec.is_null()) {
        IntrinsicGraph g = need_graph(cfg);
        const Domain2D& d = g.domain();
        double eps = std::isnan(co.eps) ? 0.5 * (d.t0 + d.t1) : co.eps;
        SurfaceCodazziCheck chk = codazzi_residual_on_surface(g, eps, co.sbar_max, co.step);
        rep["graph"] = g.id();
        rep["eps"] = eps;
        rep["lambda"] = chk.lambda;
        rep["max_ode_residual"] = chk.max_ode_residual;
        rep["gap_y0"] = chk.gap_y0;
        rep["gap_dy0"] = chk.gap_dy0;
        rep["max_closed_form_gap"] = chk.max_closed_form_gap;
        emit(cfg, "codazzi", rep, files, out);
        return;
    }

    if (!co.have_ab) fail("codazzi: need --a and --b (or a graph spec)");
    size_t colon = co.range.find(':');
    if (colon == std::string::npos) fail("codazzi: --range must be lo:hi");
    double lo, hi;
    try {
        lo = std::stod(co.range.substr(0, colon));
        hi = std::stod(co.range.substr(colon + 1));
    } catch (const std::exception&) {
        fail("codazzi: --range must be lo:hi with numeric bounds");
    }
    if (!(lo <= 0.0 && hi >= 0.0 && hi > lo))
        fail("codazzi: range must contain 0 with positive length");

    CodazziClassification cls = classify_global(co.a, co.b);
    CodazziSolution sol = integrate_codazzi(co.a, co.b, lo, hi, co.step);
    double max_gap = 0.0;
    std::vector<std::vector<double>> rows;
    rows.reserve(sol.s.size());
    for (size_t i = 0; i < sol.s.size(); ++i) {
        double closed = codazzi_closed_form(co.a, co.b, sol.s[i]);
        double gap = std::abs(sol.y[i] - closed);
        max_gap = std::max(max_gap, gap);
        rows.push_back({sol.s[i], sol.y[i], sol.dy[i], closed, gap});
    }
    rep["a"] = co.a;
    rep["b"] = co.b;
    rep["entire"] = cls.entire;
    rep["pole_lo"] = cls.pole_lo;
    rep["pole_hi"] = cls.pole_hi;
    rep["truncated_lo"] = sol.truncated_lo;
    rep["truncated_hi"] = sol.truncated_hi;
    rep["samples"] = sol.s.size();
    rep["max_closed_form_gap"] = max_gap;
    rep["first_integral_residual"] = first_integral_residual(sol);
    files.push_back({"codazzi.csv", io::to_csv({"s", "y", "dy", "y_closed", "gap"}, rows)});
    if (!cfg.out_dir.empty()) rep["csv"] = "codazzi.csv";
    emit(cfg, "codazzi", rep, files, out);
}

void run_stability(const RunConfig& cfg, std::ostream& out) {
    ConvexBody body = need_body(cfg);
    IntrinsicGraph g = need_graph(cfg);
    StabilitySearchOptions opts;
    opts.n_x = cfg.basis_x;
    opts.n_eps = cfg.basis_eps;
    opts.max_refine = cfg.max_refine;
    DestabilizeResult r = find_destabilizing(g, body, opts);
    json rep;
    rep["command"] = "stability";
    rep["seed"] = cfg.seed;
    rep["body"] = body.id();
    rep["graph"] = g.id();
    rep["search"] = io::destabilize_to_json(r);
    emit(cfg, "stability", rep, {}, out);
}

void run_report(const RunConfig& cfg, std::ostream& out) {
    ConvexBody body = need_body(cfg);
    IntrinsicGraph g = need_graph(cfg);
    ReportOptions opts;
    opts.search.n_x = cfg.basis_x;
    opts.search.n_eps = cfg.basis_eps;
    opts.search.max_refine = cfg.max_refine;
    StabilityReport rep = bernstein_report(g, body, opts);
    json j = io::report_to_json(rep);
    json full;
    full["command"] = "report";
    full["seed"] = cfg.seed;
    for (auto it = j.begin(); it != j.end(); ++it) full[it.key()] = it.value();
    emit(cfg, "report", full, {}, out);
}

void apply_threads_env() {
    const char* env = std::getenv("SFH_THREADS");
    if (!env) return;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1)
        fail("SFH_THREADS must be a positive integer");
    Eigen::setNbThreads(static_cast<int>(n));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sub-Finsler geometry of intrinsic graphs in the Heisenberg group"};
    app.set_version_flag("--version", "sfh 0.1.0");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, body_str, graph_str, domain_str;
    FoliateOpts fo;
    VariationOpts vo;
    std::string field_str;
    CodazziOpts co;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path, "JSON config file");
        c->add_option("--body", body_str, "body spec: inline JSON or a file path");
        c->add_option("--graph", graph_str, "graph spec: inline JSON or a file path");
        c->add_option("--domain", domain_str, "domain override: inline JSON or a file path");
        c->add_option("--out", cfg.out_dir, "output directory for reports and CSV data");
        c->add_option("--seed", cfg.seed, "seed echoed into reports");
        c->add_option("--cells", cfg.quad_cells, "quadrature cells per axis");
        c->add_option("--order", cfg.quad_order, "quadrature nodes per cell per axis");
        c->add_option("--fd-step", cfg.fd_step, "finite difference step");
        c->add_option("--ode-step", cfg.ode_step, "characteristic integration step");
    };

    CLI::App* area = app.add_subcommand("area", "sub-Finsler area of a graph");
    add_common(area);
    CLI::App* stat = app.add_subcommand("stationarity", "shift oscillation along characteristics");
    add_common(stat);
    CLI::App* fol = app.add_subcommand("foliate", "characteristic curves and ruling extraction");
    add_common(fol);
    fol->add_option("--eps-lo", fo.eps_lo, "lowest characteristic start value");
    fol->add_option("--eps-hi", fo.eps_hi, "highest characteristic start value");
    fol->add_option("--curves", fo.curves, "number of characteristics");
    CLI::App* var = app.add_subcommand("variation", "first (and second) variation of the area");
    add_common(var);
    var->add_option("--field", field_str, "variation field spec: inline JSON or a file path");
    var->add_option("--ds", vo.ds, "flow parameter step for finite differences");
    var->add_flag("--second", vo.second, "also compute the second variation");
    CLI::App* cod = app.add_subcommand("codazzi", "ruling ODE vs closed form, or on-surface check");
    add_common(cod);
    CLI::Option* oa = cod->add_option("--a", co.a, "initial value y(0)");
    CLI::Option* ob = cod->add_option("--b", co.b, "initial slope y'(0)");
    cod->add_option("--range", co.range, "integration range lo:hi containing 0");
    cod->add_option("--step", co.step, "RK4 step");
    cod->add_option("--eps", co.eps, "characteristic start for the on-surface check");
    cod->add_option("--sbar-max", co.sbar_max, "arc-length half-range for the on-surface check");
    CLI::App* stab = app.add_subcommand("stability", "search for a destabilizing direction");
    add_common(stab);
    stab->add_option("--basis-x", cfg.basis_x, "bump basis size along x");
    stab->add_option("--basis-eps", cfg.basis_eps, "bump basis size along eps");
    stab->add_option("--max-refine", cfg.max_refine, "basis refinement rounds");
    CLI::App* repc = app.add_subcommand("report", "full verdict pipeline");
    add_common(repc);
    repc->add_option("--basis-x", cfg.basis_x, "bump basis size along x");
    repc->add_option("--basis-eps", cfg.basis_eps, "bump basis size along eps");
    repc->add_option("--max-refine", cfg.max_refine, "basis refinement rounds");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        try {
            app.parse(reversed);
        } catch (const CLI::Success& e) {
            return app.exit(e, out, err);  // help or version, exit 0
        } catch (const CLI::ParseError& e) {
            err << e.what() << "\n";
            return 2;
        }

        apply_threads_env();

        // Config file first, then flags override.
        RunConfig flag_values = cfg;
        if (!config_path.empty()) {
            cfg = RunConfig{};
            apply_config_file(cfg, io::load_json_file(config_path));
            // Re-apply any flag the user set explicitly.
            CLI::App* sub = app.get_subcommands().front();
            auto touched = [&](const std::string& name) {
                return sub->count(name) > 0;
            };
            if (touched("--out")) cfg.out_dir = flag_values.out_dir;
            if (touched("--seed")) cfg.seed = flag_values.seed;
            if (touched("--cells")) cfg.quad_cells = flag_values.quad_cells;
            if (touched("--order")) cfg.quad_order = flag_values.quad_order;
            if (touched("--fd-step")) cfg.fd_step = flag_values.fd_step;
            if (touched("--ode-step")) cfg.ode_step = flag_values.ode_step;
            if (sub->get_option_no_throw("--basis-x") && touched("--basis-x"))
                cfg.basis_x = flag_values.basis_x;
            if (sub->get_option_no_throw("--basis-eps") && touched("--basis-eps"))
                cfg.basis_eps = flag_values.basis_eps;
            if (sub->get_option_no_throw("--max-refine") && touched("--max-refine"))
                cfg.max_refine = flag_values.max_refine;
        }
        if (!body_str.empty()) cfg.body_spec = load_spec(body_str, "--body");
        if (!graph_str.empty()) cfg.graph_spec = load_spec(graph_str, "--graph");
        if (!domain_str.empty())
            cfg.domain = io::parse_domain(load_spec(domain_str, "--domain"), "--domain");
        if (!field_str.empty()) vo.field_spec = load_spec(field_str, "--field");
        co.have_ab = oa->count() > 0 && ob->count() > 0;
        validate_config(cfg);

        if (area->parsed()) run_area(cfg, out);
        else if (stat->parsed()) run_stationarity(cfg, out);
        else if (fol->parsed()) run_foliate(cfg, fo, out);
        else if (var->parsed()) run_variation(cfg, vo, out);
        else if (cod->parsed()) run_codazzi(cfg, co, out);
        else if (stab->parsed()) run_stability(cfg, out);
        else if (repc->parsed()) run_report(cfg, out);
        return 0;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        err << "numerical error: " << e.what() << "\n";
        return 3;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace subfinsler::cli
