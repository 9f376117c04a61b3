#include <fedlab/suite.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <fedlab/expression.hpp>
#include <fedlab/hilbert.hpp>
#include <fedlab/quantizable.hpp>
#include <fedlab/symmetry.hpp>

namespace fedlab
{

std::vector<int> parse_levels(const std::string &text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](const std::string &s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) {
                throw ConfigError("bad level '" + s + "'");
            }
            return v;
        } catch (const std::logic_error &) {
            throw ConfigError("bad level '" + s + "'");
        }
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const int lo = to_int(item.substr(0, dots));
        const int hi = to_int(item.substr(dots + 2));
        for (int k = lo; k <= hi; ++k) {
            out.push_back(k);
        }
    }
    if (out.empty()) {
        throw ConfigError("empty level list");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1) {
            throw ConfigError("levels must be positive");
        }
        if (i > 0 && out[i] <= out[i - 1]) {
            throw ConfigError("levels must be strictly increasing");
        }
    }
    return out;
}

int thread_cap_from_env()
{
    const char *v = std::getenv("FEDOSOV_LAB_THREADS");
    if (!v) {
        return 1;
    }
    const int n = std::atoi(v);
    return n < 1 ? 1 : n;
}

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names{
        "flatness",      "star",       "wick",    "classify",       "hamiltonian", "moment-map", "tuynman",
        "toeplitz-beta", "commutator", "diagram", "representation", "asymptotics", "roundtrip"};
    return names;
}

std::map<std::string, ChartFunction> standard_symbols(const KahlerGeometry &g)
{
    std::map<std::string, ChartFunction> s;
    if (g.kind() == GeometryKind::cp1_fs) {
        const LieAlgebraAction act = su2_action(g);
        for (std::size_t a = 0; a < act.size(); ++a) {
            s["mu" + std::to_string(a + 1)] = act.moment[a];
        }
    }
    return s;
}

ChartFunction parse_in(const KahlerGeometry &g, const std::string &text)
{
    return parse_expression(text, g.dim(), standard_symbols(g));
}

FedosovConnection make_connection(const GeometryPtr &g, const std::string &alpha, int order)
{
    if (alpha == "zero" || alpha == "0") {
        return solve_fedosov(g, AlphaChoice::zero, order);
    }
    if (alpha == "ricci") {
        return solve_fedosov(g, AlphaChoice::ricci, order);
    }
    if (alpha == "canonical" || alpha == "bt") {
        return solve_fedosov(g, AlphaChoice::canonical, order);
    }
    std::ifstream in(alpha);
    if (!in) {
        throw ConfigError("alpha must be zero, ricci, canonical, bt or a readable component file: '" + alpha + "'");
    }
    const int n = g->dim();
    FnMatrix c(n, std::vector<ChartFunction>(n));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        int i = 0;
        int j = 0;
        if (!(ls >> i >> j) || i < 1 || j < 1 || i > n || j > n) {
            throw ConfigError("alpha file: expected '<i> <j> <expression>' with 1-based indices");
        }
        std::string expr;
        std::getline(ls, expr);
        c[i - 1][j - 1] = parse_in(*g, expr);
    }
    return solve_fedosov(g, AlphaChoice::custom, order, c);
}

std::vector<std::pair<std::string, VectorField>> named_fields(const KahlerGeometry &g, const std::string &which)
{
    std::vector<std::pair<std::string, VectorField>> all;
    if (g.kind() == GeometryKind::cp1_fs) {
        const LieAlgebraAction act = su2_action(g);
        for (std::size_t a = 0; a < act.size(); ++a) {
            all.emplace_back("rot" + std::to_string(a + 1), act.fields[a]);
        }
    } else if (g.kind() == GeometryKind::flat && g.dim() == 1) {
        all.emplace_back("rot", VectorField::real_from_hol({ChartFunction::z(0) * PiScalar(GaussQ::i())}));
        // not symplectic: a negative control, only on request
        if (which == "dilation") {
            return {{"dilation", VectorField::real_from_hol({ChartFunction::z(0)})}};
        }
    }
    if (which == "all") {
        return all;
    }
    for (const auto &p : all) {
        if (p.first == which) {
            return {p};
        }
    }
    throw ConfigError("unknown field '" + which + "' for geometry " + g.name());
}

namespace
{

using Task = std::function<std::vector<ReportRow>()>;

std::vector<ReportRow> run_tasks(const std::vector<Task> &tasks, int threads)
{
    std::vector<std::vector<ReportRow>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            results[i] = tasks[i]();
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    std::vector<ReportRow> rows;
    for (auto &r : results) {
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
}

ReportRow row(const std::string &suite, const std::string &id, bool ok, const std::string &defect)
{
    return ReportRow{suite, id, ok ? "pass" : "fail", defect, 0};
}

// Times a task and converts exceptions into error rows.
Task timed(const std::string &suite, const std::string &id, std::function<std::vector<ReportRow>()> body)
{
    return [suite, id, body] {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<ReportRow> rows;
        try {
            rows = body();
        } catch (const std::exception &e) {
            rows = {ReportRow{suite, id, "error", e.what(), 0}};
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        for (auto &r : rows) {
            r.runtime_ms = ms / static_cast<double>(rows.size());
        }
        return rows;
    };
}

std::string first_line(const std::string &s)
{
    const auto nl = s.find('\n');
    return nl == std::string::npos ? s : s.substr(0, nl);
}

bool is_hilbert_suite(const std::string &s)
{
    return s == "tuynman" || s == "toeplitz-beta" || s == "commutator" || s == "diagram" || s == "representation" ||
           s == "asymptotics" || s == "roundtrip" || s == "moment-map";
}

} // namespace

Report run_suite(const SuiteConfig &cfg)
{
    // ---- validation before any computation
    if (cfg.order < 3) {
        throw ConfigError("truncation order must be at least 3");
    }
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        if (cfg.levels[i] < 1 || (i > 0 && cfg.levels[i] <= cfg.levels[i - 1])) {
            throw ConfigError("levels must be positive and strictly increasing");
        }
    }
    std::vector<std::string> suites = cfg.suites.empty() ? suite_names() : cfg.suites;
    for (const auto &s : suites) {
        bool known = false;
        for (const auto &n : suite_names()) {
            known = known || n == s;
        }
        if (!known) {
            throw ConfigError("unknown suite '" + s + "'");
        }
    }
    GeometryPtr geom;
    try {
        geom = make_geometry(cfg.geometry);
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    const bool cp1 = geom->kind() == GeometryKind::cp1_fs;
    for (const auto &s : suites) {
        if (is_hilbert_suite(s) && !cp1) {
            if (cfg.suites.empty()) {
                continue;
            }
            throw ConfigError("suite '" + s + "' needs the compact model cp1-fs");
        }
        if (s == "asymptotics" && cfg.levels.size() < 3) {
            throw ConfigError("asymptotics needs at least 3 levels");
        }
    }
    // the default set drops compact-only suites on non-compact charts
    if (!cp1 && cfg.suites.empty()) {
        std::vector<std::string> kept;
        for (const auto &s : suites) {
            if (!is_hilbert_suite(s)) {
                kept.push_back(s);
            }
        }
        suites = kept;
    }
    ChartFunction f;
    ChartFunction g;
    ChartFunction f0;
    PiScalar c;
    try {
        f = parse_in(*geom, cfg.f);
        g = parse_in(*geom, cfg.g);
        f0 = parse_in(*geom, cfg.f0);
        const ChartFunction cf = parse_in(*geom, cfg.c);
        if (!cf.is_constant()) {
            throw ConfigError("c must be a constant");
        }
        c = cf.constant_value();
    } catch (const ParseError &e) {
        throw ConfigError(e.what());
    }
    if (cfg.asymptotic_terms < 0) {
        throw ConfigError("asymptotic order must be non-negative");
    }
    const auto fields = named_fields(*geom, cfg.field);

    FedosovConnection conn;
    try {
        conn = make_connection(geom, cfg.alpha, cfg.order);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }

    Report rep;
    rep.config = {{"geometry", cfg.geometry},
                  {"alpha", cfg.alpha},
                  {"order", std::to_string(cfg.order)},
                  {"levels", [&] {
                       std::string s;
                       for (int k : cfg.levels) {
                           s += (s.empty() ? "" : ",") + std::to_string(k);
                       }
                       return s;
                   }()},
                  {"suites", [&] {
                       std::string s;
                       for (const auto &x : suites) {
                           s += (s.empty() ? "" : ",") + x;
                       }
                       return s;
                   }()},
                  {"f", cfg.f},
                  {"g", cfg.g},
                  {"f0", cfg.f0},
                  {"c", cfg.c},
                  {"force", cfg.force ? "true" : "false"},
                  {"field", cfg.field},
                  {"asymptotic_terms", std::to_string(cfg.asymptotic_terms)}};

    const LieAlgebraAction action = cp1 ? su2_action(*geom) : LieAlgebraAction{};
    std::vector<Task> tasks;
    const PiScalar i_over_2pi(GaussQ(0, mpq_class(1, 2)), -1);

    for (const auto &s : suites) {
        if (s == "flatness") {
            tasks.push_back(timed(s, "alpha=" + cfg.alpha, [&conn, s] {
                const bool ok = conn.residual.is_zero();
                return std::vector<ReportRow>{
                    row(s, "alpha=" + std::string(conn.alpha.empty() ? "0" : "set") + "/N=" + std::to_string(conn.order),
                        ok, ok ? "0" : first_line(conn.residual.serialize()))};
            }));
        } else if (s == "star") {
            tasks.push_back(timed(s, "C1", [&conn, &geom, f, g, s, i_over_2pi] {
                const StarExpansion fg = star_product(conn, f, g);
                const StarExpansion gf = star_product(conn, g, f);
                auto at = [](const StarExpansion &e, std::size_t i) {
                    return i < e.coefficients.size() ? e.coefficients[i] : ChartFunction();
                };
                const ChartFunction d = at(fg, 1) - at(gf, 1) - poisson(*geom, f, g) * i_over_2pi;
                return std::vector<ReportRow>{row(s, "C1(f,g)-C1(g,f)-(i/2pi){f,g}", d.is_zero(), d.str())};
            }));
        } else if (s == "wick") {
            tasks.push_back(timed(s, "wick", [&conn, &geom, f, s] {
                std::vector<ReportRow> rows;
                const int n = geom->dim();
                const ChartFunction anti = ChartFunction::zbar(0, n).pow(2);
                const ChartFunction hol = ChartFunction::z(0, n).pow(2);
                const int top = std::min(3, conn.order / 2);
                const StarExpansion left = star_product(conn, anti, f);
                const StarExpansion right = star_product(conn, f, hol);
                for (int i = 1; i <= top; ++i) {
                    const auto a = static_cast<std::size_t>(i) < left.coefficients.size() ? left.coefficients[i]
                                                                                           : ChartFunction();
                    const auto b = static_cast<std::size_t>(i) < right.coefficients.size() ? right.coefficients[i]
                                                                                            : ChartFunction();
                    rows.push_back(row(s, "C" + std::to_string(i) + "(zbar^2,f)", a.is_zero(), a.str()));
                    rows.push_back(row(s, "C" + std::to_string(i) + "(f,z^2)", b.is_zero(), b.str()));
                }
                return rows;
            }));
        } else if (s == "classify") {
            tasks.push_back(timed(s, cfg.f0, [&conn, f0, c, s, force = cfg.force, name = cfg.f0] {
                try {
                    const QuantizableFunction q = make_degree1(conn, f0, c, force);
                    std::ostringstream d;
                    d << "killing=" << (q.killing ? "true" : "false") << " ybar=" << q.ybar_degree
                      << " hbar=" << q.hbar_degree;
                    const bool ok = q.killing ? (q.ybar_degree <= 1 && q.hbar_degree <= 1) : q.ybar_degree >= 2;
                    return std::vector<ReportRow>{row(s, name, ok, d.str())};
                } catch (const NotKillingError &e) {
                    return std::vector<ReportRow>{ReportRow{s, name, "error", e.what(), 0}};
                }
            }));
        } else if (s == "hamiltonian") {
            for (const auto &[name, v] : fields) {
                tasks.push_back(timed(s, name, [&conn, &geom, s, name = name, v = v] {
                    std::vector<ReportRow> rows;
                    const QuantumHamiltonian h = quantum_hamiltonian(conn, v);
                    rows.push_back(row(s, name + "/D(beta)", h.d_beta_matches,
                                       h.d_beta_matches ? "0" : first_line((h.d_beta - h.target).serialize())));
                    rows.push_back(row(s, name + "/D(mu+beta)", h.flat, "mu=" + hbar_str(h.mu)));
                    std::vector<std::pair<std::string, ChartFunction>> battery;
                    if (geom->kind() == GeometryKind::cp1_fs) {
                        const auto sym = standard_symbols(*geom);
                        battery = {{"mu1", sym.at("mu1")},
                                   {"mu2", sym.at("mu2")},
                                   {"z*zbar*D^-1", parse_in(*geom, "z*zbar*D^-1")}};
                    } else {
                        battery = {{"z", parse_in(*geom, "z")}, {"zbar", parse_in(*geom, "zbar")},
                                   {"z*zbar", parse_in(*geom, "z*zbar")}};
                    }
                    for (const auto &[gn, gf] : battery) {
                        const bool ok = hamiltonian_bracket_holds(conn, h, gf);
                        rows.push_back(row(s, name + "/bracket:" + gn, ok, ok ? "0" : "bracket mismatch"));
                    }
                    return rows;
                }));
            }
        } else if (s == "moment-map") {
            tasks.push_back(timed(s, "su2", [&conn, &action, s] {
                const QuantumMomentMap qm = quantum_moment_map(conn, action, {}, false);
                std::vector<ReportRow> rows;
                for (const auto &d : qm.defects) {
                    rows.push_back(row(s,
                                       "[" + action.labels[d.a] + "," + action.labels[d.b] +
                                           "]/hbar<=" + std::to_string(qm.tested_order),
                                       d.is_zero(), hbar_str(d.defect)));
                }
                return rows;
            }));
        } else if (s == "tuynman" || s == "toeplitz-beta" || s == "commutator" || s == "diagram" ||
                   s == "representation") {
            for (int k : cfg.levels) {
                tasks.push_back(timed(s, "k=" + std::to_string(k), [&conn, &action, s, k] {
                    std::vector<ReportRow> rows;
                    for (const auto &r : verify_identities(action, k, &conn, {s})) {
                        rows.push_back(row(r.suite, r.id, r.ok, r.defect));
                    }
                    return rows;
                }));
            }
        } else if (s == "asymptotics") {
            tasks.push_back(timed(s, "slope", [&conn, f, g, s, levels = cfg.levels, np = cfg.asymptotic_terms] {
                const StarExpansion e = star_product(conn, f, g);
                if (static_cast<std::size_t>(np) >= e.coefficients.size() + 1 && np > conn.order / 2) {
                    throw std::invalid_argument("asymptotic order exceeds the certified star-product order");
                }
                std::vector<ChartFunction> cs;
                for (int i = 0; i <= np; ++i) {
                    cs.push_back(static_cast<std::size_t>(i) < e.coefficients.size() ? e.coefficients[i]
                                                                                      : ChartFunction());
                }
                const AsymptoticFit fit = bt_asymptotic_slope(f, g, levels, cs);
                // target -(N'+1)+0.1 with a 0.15 tolerance band
                const double threshold = -(np + 1) + 0.1 + 0.15;
                std::ostringstream d;
                d << "slope=" << fit.slope << " errors=";
                for (std::size_t i = 0; i < fit.errors.size(); ++i) {
                    d << (i ? ";" : "") << fit.errors[i];
                }
                return std::vector<ReportRow>{
                    row(s, "N'=" + std::to_string(np), fit.slope <= threshold, d.str())};
            }));
        } else if (s == "roundtrip") {
            for (int k : cfg.levels) {
                tasks.push_back(timed(s, "k=" + std::to_string(k), [&conn, &action, s, k] {
                    std::vector<ReportRow> rows;
                    for (std::size_t a = 0; a < action.size(); ++a) {
                        const QuantizableFunction q = make_degree1(conn, action.moment[a]);
                        const Formalized fz = formalize_level_section(conn, k, evaluate_level(conn, q, k));
                        const bool ok = fz.recovered == action.moment[a] && fz.correction.is_constant();
                        rows.push_back(row(s, action.labels[a] + "/k=" + std::to_string(k), ok,
                                           "correction=" + fz.correction.str()));
                    }
                    return rows;
                }));
            }
        }
    }
    rep.rows = run_tasks(tasks, cfg.threads);
    return rep;
}

} // namespace fedlab
