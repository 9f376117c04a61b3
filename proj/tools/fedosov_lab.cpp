#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <fedlab/expression.hpp>
#include <fedlab/hilbert.hpp>
#include <fedlab/quantizable.hpp>
#include <fedlab/suite.hpp>
#include <fedlab/symmetry.hpp>

using namespace fedlab;
using Json = nlohmann::ordered_json;

namespace
{

struct Options {
    SuiteConfig cfg;
    std::string levels;
    std::vector<std::string> suites;
    std::string output;
    std::string format = "json";
    std::string action = "su2";
    std::string export_path;
    bool no_runtime = false;
};

void write_out(const Options &o, const std::string &text)
{
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) {
        throw ConfigError("cannot write '" + o.output + "'");
    }
    out << text;
}

std::vector<std::string> nonempty(std::vector<std::string> v)
{
    v.erase(std::remove(v.begin(), v.end(), std::string()), v.end());
    return v;
}

GeometryPtr geometry_of(const SuiteConfig &c)
{
    try {
        return make_geometry(c.geometry);
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
}

ChartFunction expr(const KahlerGeometry &g, const std::string &text)
{
    try {
        return parse_in(g, text);
    } catch (const ParseError &e) {
        throw ConfigError(e.what());
    }
}

FedosovConnection connection(const GeometryPtr &g, const SuiteConfig &c)
{
    if (c.order < 3) {
        throw ConfigError("truncation order must be at least 3");
    }
    try {
        return make_connection(g, c.alpha, c.order);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

Json hbar_json(const HbarPoly &p)
{
    Json j = Json::object();
    for (std::size_t i = 0; i < p.size(); ++i) {
        j["hbar^" + std::to_string(i)] = p[i].str();
    }
    return j;
}

int cmd_star(const Options &o)
{
    const auto g = geometry_of(o.cfg);
    const ChartFunction f = expr(*g, o.cfg.f);
    const ChartFunction h = expr(*g, o.cfg.g);
    const auto conn = connection(g, o.cfg);
    const StarExpansion e = star_product(conn, f, h);
    Json j = Json::object();
    for (std::size_t i = 0; i < e.coefficients.size(); ++i) {
        j["order_" + std::to_string(i)] = e.coefficients[i].str();
    }
    write_out(o, j.dump(2) + "\n");
    return 0;
}

int cmd_flatness(const Options &o)
{
    const auto g = geometry_of(o.cfg);
    const auto conn = connection(g, o.cfg);
    const bool ok = conn.residual.is_zero();
    Json j;
    j["geometry"] = g->name();
    j["alpha"] = o.cfg.alpha;
    j["karabegov"] = conn.karabegov_str();
    j["order"] = conn.order;
    j["iterations"] = conn.iterations;
    j["residual_zero"] = ok;
    j["residual"] = ok ? std::string("0") : conn.residual.serialize();
    write_out(o, j.dump(2) + "\n");
    return ok ? 0 : 1;
}

int cmd_classify(const Options &o)
{
    const auto g = geometry_of(o.cfg);
    const ChartFunction f0 = expr(*g, o.cfg.f0);
    const ChartFunction cf = expr(*g, o.cfg.c);
    if (!cf.is_constant()) {
        throw ConfigError("c must be a constant");
    }
    const auto conn = connection(g, o.cfg);
    Json j;
    j["f0"] = f0.str();
    try {
        const QuantizableFunction q = make_degree1(conn, f0, cf.constant_value(), o.cfg.force);
        j["killing"] = q.killing;
        j["ybar_degree"] = q.ybar_degree;
        j["hbar_degree"] = q.hbar_degree;
        j["formal"] = hbar_json(q.formal);
        const bool deg1 = q.ybar_degree <= 1 && q.hbar_degree <= 1;
        j["verdict"] = q.killing ? (deg1 ? "degree-1" : "killing-but-higher-degree")
                                 : (deg1 ? "forced-degree-1" : "forced-higher-degree");
        write_out(o, j.dump(2) + "\n");
        return q.killing == deg1 ? 0 : 1;
    } catch (const NotKillingError &e) {
        j["killing"] = false;
        j["ybar_degree"] = nullptr;
        j["hbar_degree"] = nullptr;
        j["verdict"] = "not-Killing";
        j["detail"] = e.what();
        write_out(o, j.dump(2) + "\n");
        return 1;
    }
}

int cmd_hamiltonian(const Options &o)
{
    const auto g = geometry_of(o.cfg);
    std::vector<std::pair<std::string, VectorField>> fields;
    try {
        fields = named_fields(*g, o.cfg.field);
    } catch (const ConfigError &) {
        throw;
    }
    const auto conn = connection(g, o.cfg);
    Json arr = Json::array();
    bool all = true;
    for (const auto &[name, v] : fields) {
        Json j;
        j["field"] = name;
        try {
            const QuantumHamiltonian h = quantum_hamiltonian(conn, v);
            j["mu"] = hbar_json(h.mu);
            j["d_beta_matches"] = h.d_beta_matches;
            j["flat"] = h.flat;
            j["ybar_degree"] = h.ybar_degree;
            all = all && h.d_beta_matches && h.flat;
        } catch (const std::exception &e) {
            j["error"] = e.what();
            all = false;
        }
        arr.push_back(j);
    }
    write_out(o, arr.dump(2) + "\n");
    return all ? 0 : 1;
}

LieAlgebraAction action_of(const KahlerGeometry &g, const std::string &name)
{
    if (g.kind() != GeometryKind::cp1_fs) {
        throw ConfigError("actions are defined on cp1-fs only");
    }
    if (name == "su2") {
        return su2_action(g);
    }
    if (name == "u1") {
        return u1_action(g);
    }
    throw ConfigError("unknown action '" + name + "' (su2 or u1)");
}

int cmd_moment_map(const Options &o)
{
    const auto g = geometry_of(o.cfg);
    const auto act = action_of(*g, o.action);
    const std::vector<int> levels = o.levels.empty() ? o.cfg.levels : parse_levels(o.levels);
    const auto conn = connection(g, o.cfg);
    const QuantumMomentMap qm = quantum_moment_map(conn, act, levels, false);
    Json j;
    j["action"] = o.action;
    j["scale"] = qm.scale.str();
    j["tested_order"] = qm.tested_order;
    Json mus = Json::object();
    for (std::size_t a = 0; a < act.size(); ++a) {
        mus[act.labels[a]] = hbar_json(qm.mu_hbar[a].formal);
    }
    j["mu_hbar"] = mus;
    Json defects = Json::array();
    bool ok = true;
    for (const auto &d : qm.defects) {
        defects.push_back({{"pair", act.labels[d.a] + "," + act.labels[d.b]},
                           {"defect", d.is_zero() ? std::string("0") : hbar_str(d.defect)},
                           {"zero", d.is_zero()}});
        ok = ok && d.is_zero();
    }
    j["defects"] = defects;
    Json lv = Json::object();
    for (const auto &[k, ms] : qm.mu_levels) {
        Json row = Json::array();
        for (const auto &m : ms) {
            row.push_back(m.str());
        }
        lv[std::to_string(k)] = row;
    }
    j["levels"] = lv;
    write_out(o, j.dump(2) + "\n");
    return ok ? 0 : 1;
}

Json matrix_json(const OperatorMatrix &m)
{
    return Json(m.entry_strings());
}

void export_matrices(const Options &o, const std::vector<int> &levels)
{
    const auto g = geometry_of(o.cfg);
    const auto act = su2_action(*g);
    Json j = Json::object();
    for (int k : levels) {
        Json lvl = Json::object();
        for (std::size_t a = 0; a < act.size(); ++a) {
            lvl["beta_" + act.labels[a]] = matrix_json(beta_operator(act, a, k));
            lvl["toeplitz_" + act.labels[a]] = matrix_json(toeplitz(act.moment[a], k));
        }
        j[std::to_string(k)] = lvl;
    }
    std::ofstream out(o.export_path);
    if (!out) {
        throw ConfigError("cannot write '" + o.export_path + "'");
    }
    out << j.dump(2) << '\n';
}

int emit(const Options &o, const Report &r)
{
    write_out(o, emit_report(r, o.format, !o.no_runtime));
    return r.all_pass() ? 0 : 1;
}

int cmd_bt_verify(Options o)
{
    o.cfg.suites = o.suites.empty() ? std::vector<std::string>{"tuynman", "toeplitz-beta", "commutator", "diagram",
                                                               "representation"}
                                    : nonempty(o.suites);
    const Report r = run_suite(o.cfg);
    if (!o.export_path.empty()) {
        export_matrices(o, o.cfg.levels);
    }
    return emit(o, r);
}

int cmd_bt_asymptotics(Options o)
{
    o.cfg.suites = {"asymptotics"};
    return emit(o, run_suite(o.cfg));
}

int cmd_report(Options o)
{
    if (!o.suites.empty()) {
        o.cfg.suites = nonempty(o.suites);
    }
    return emit(o, run_suite(o.cfg));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Fedosov deformation quantization lab: exact checks on Kahler charts and CP^1"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
    app.require_subcommand(1);

    Options o;
    o.cfg.threads = thread_cap_from_env();
    app.add_option("--geometry", o.cfg.geometry, "flat:<n>, cp1-fs or jet:<path>")->capture_default_str();
    app.add_option("--alpha", o.cfg.alpha, "zero, ricci, canonical (alias bt) or a component file")
        ->capture_default_str();
    app.add_option("--order", o.cfg.order, "truncation order N (>= 3); for bt-asymptotics the number of C_i terms")
        ->capture_default_str();
    app.add_option("--levels", o.levels, "levels, e.g. 1..10 or 8,16,32,64");
    app.add_option("--suite,--suites", o.suites, "comma-separated suite names")->delimiter(',');
    app.add_option("--f", o.cfg.f, "expression")->capture_default_str();
    app.add_option("--g", o.cfg.g, "expression")->capture_default_str();
    app.add_option("--f0", o.cfg.f0, "expression")->capture_default_str();
    app.add_option("--c", o.cfg.c, "constant")->capture_default_str();
    app.add_flag("--force", o.cfg.force, "iterate even when the Killing test fails");
    app.add_option("--field", o.cfg.field, "rot1..rot3 (cp1-fs), rot or dilation (flat:1), or all")
        ->capture_default_str();
    app.add_option("--action", o.action, "su2 or u1")->capture_default_str();
    app.add_option("--threads", o.cfg.threads, "worker cap (FEDOSOV_LAB_THREADS also caps)");
    app.add_option("--output,-o", o.output, "write to file instead of stdout");
    app.add_option("--format", o.format, "json, csv or md")->capture_default_str();
    app.add_option("--export", o.export_path, "bt-verify: write beta and Toeplitz matrices as JSON");
    app.add_flag("--no-runtime", o.no_runtime, "omit runtime fields (byte-stable reports)");

    auto sub = [&](const char *name, const char *desc) { return app.add_subcommand(name, desc)->fallthrough(); };
    auto *star = sub("star-product", "C_i(f,g) of the Fedosov star product");
    auto *flat = sub("flatness-check", "exact Fedosov-equation residual");
    auto *cls = sub("classify-degree1", "flat section degrees of f0 - (hbar/4pi)(Delta f0 + c)");
    auto *ham = sub("quantum-hamiltonian", "mu_V + beta_V for rotation fields");
    auto *mm = sub("moment-map", "quantum moment map homomorphism defects");
    auto *btv = sub("bt-verify", "exact matrix identities on H_k");
    auto *bta = sub("bt-asymptotics", "log-log slope of Toeplitz product remainders");
    auto *rep = sub("report", "run suites and emit a report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const int env_cap = thread_cap_from_env();
        if (std::getenv("FEDOSOV_LAB_THREADS")) {
            o.cfg.threads = std::min(o.cfg.threads, env_cap);
        }
        if (!o.levels.empty()) {
            o.cfg.levels = parse_levels(o.levels);
        }
        if (*bta) {
            o.cfg.asymptotic_terms = app.count("--order") ? o.cfg.order : 1;
            o.cfg.order = std::max(6, 2 * o.cfg.asymptotic_terms + 2);
            if (o.levels.empty()) {
                o.cfg.levels = {8, 16, 32, 64};
            }
            return cmd_bt_asymptotics(o);
        }
        if (*mm && o.levels.empty()) {
            o.cfg.levels = parse_levels("1..10");
        }
        if (*star) {
            return cmd_star(o);
        }
        if (*flat) {
            return cmd_flatness(o);
        }
        if (*cls) {
            return cmd_classify(o);
        }
        if (*ham) {
            return cmd_hamiltonian(o);
        }
        if (*mm) {
            return cmd_moment_map(o);
        }
        if (*btv) {
            return cmd_bt_verify(o);
        }
        if (*rep) {
            return cmd_report(o);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
