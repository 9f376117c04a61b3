#include <fedlab/quantizable.hpp>

#include <stdexcept>

#include <fedlab/linalg.hpp>

namespace fedlab
{

namespace
{

GeometryPtr borrow(const KahlerGeometry &g)
{
    return GeometryPtr(&g, [](const KahlerGeometry *) {});
}

PiScalar one_over_4pi()
{
    return PiScalar(GaussQ(mpq_class(1, 4)), -1);
}

// d_jbar f ybar^j as a weight-1 element.
WeylElement ybar_linear(const GeometryPtr &g, int order, const std::vector<ChartFunction> &b)
{
    WeylElement r(g, order);
    for (int j = 0; j < g->dim(); ++j) {
        WeylKey k;
        k.yb[j] = 1;
        r.add(k, b[j]);
    }
    return r;
}

mpq_class binomial(int n, int k)
{
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// On CP^1, shift a dbar-antiderivative N/D^m by a holomorphic polynomial without constant term so that
// every numerator monomial z^p zbar^q has p <= m, i.e. the function extends over the point at infinity.
// Returns f unchanged when no such shift exists.
ChartFunction extend_over_infinity(const ChartFunction &f)
{
    if (f.dim() != 1 || f.is_jet() || f.is_zero()) {
        return f;
    }
    const int m = f.denom_power();
    ChartFunction shift;
    for (const auto &[e, terms] : f.split_by_pi()) {
        int top = 0;
        for (const auto &[k, c] : terms) {
            top = std::max<int>(top, k.z(0));
        }
        if (top <= m) {
            continue;
        }
        const int unknowns = top;
        QMatrix a;
        std::vector<GaussQ> rhs;
        for (int p = m + 1; p <= top + m; ++p) {
            for (int q = 0; q <= m; ++q) {
                std::vector<GaussQ> row(unknowns);
                if (p - q >= 1 && p - q <= unknowns) {
                    row[p - q - 1] = GaussQ(binomial(m, q));
                }
                FnKey key;
                key.z(0) = static_cast<std::uint8_t>(p);
                key.zbar(0) = static_cast<std::uint8_t>(q);
                auto it = terms.find(key);
                a.push_back(row);
                rhs.push_back(it == terms.end() ? GaussQ() : -it->second);
            }
        }
        for (const auto &[k, c] : terms) {
            if (k.z(0) > m && k.zbar(0) > m) {
                return f;
            }
        }
        auto sol = solve_exact(a, rhs);
        if (!sol) {
            return f;
        }
        for (int t = 0; t < unknowns; ++t) {
            shift += ChartFunction::z(0).pow(static_cast<unsigned>(t + 1)) * PiScalar((*sol)[t], e);
        }
    }
    return f + shift;
}

} // namespace

KillingCheck check_killing_condition(const KahlerGeometry &g, const ChartFunction &f0)
{
    const int n = g.dim();
    std::vector<ChartFunction> b(n);
    for (int j = 0; j < n; ++j) {
        b[j] = f0.dzbar(j);
    }
    KillingCheck out;

    out.condition_holds = nabla_weyl_01(ybar_linear(borrow(g), 2, b)).is_zero();

    out.v10_holomorphic = true;
    for (int i = 0; i < n && out.v10_holomorphic; ++i) {
        ChartFunction v;
        for (int j = 0; j < n; ++j) {
            v += b[j] * g.omega_inv_hol_first(i, j);
        }
        for (int l = 0; l < n; ++l) {
            if (!v.dzbar(l).is_zero()) {
                out.v10_holomorphic = false;
                break;
            }
        }
    }

    if (g.has_curvature()) {
        const ChartFunction lap = laplacian(g, f0);
        out.ricci_identity = true;
        for (int l = 0; l < n; ++l) {
            ChartFunction rhs;
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    rhs += b[j] * g.omega_inv_hol_first(k, j) * g.ricci(k, l);
                }
            }
            if (!(lap.dzbar(l) * one_over_4pi() == rhs)) {
                out.ricci_identity = false;
            }
        }
    }
    return out;
}

HbarPoly degree1_formal(const KahlerGeometry &g, const ChartFunction &f0, const PiScalar &c)
{
    ChartFunction f1 = (laplacian(g, f0) + ChartFunction(c)) * (-one_over_4pi());
    if (f1.is_zero()) {
        return f0.is_zero() ? HbarPoly{} : HbarPoly{f0};
    }
    return HbarPoly{f0, f1};
}

QuantizableFunction make_degree1(const FedosovConnection &conn, const ChartFunction &f0, const PiScalar &c, bool force)
{
    QuantizableFunction q;
    q.f0 = f0;
    q.c = c;
    q.killing = check_killing_condition(*conn.geom, f0).condition_holds;
    if (!q.killing && !force) {
        throw NotKillingError("d_jbar f0 ybar^j is not nabla^{0,1}-parallel");
    }
    q.formal = degree1_formal(*conn.geom, f0, c);
    q.section = flat_section(conn, q.formal);
    q.ybar_degree = std::max(q.section.ybar_degree(), 0);
    q.hbar_degree = std::max(q.section.hbar_degree(), 0);
    return q;
}

int level_window(int order, int hbar_bound)
{
    return order - 1 - 2 * hbar_bound;
}

WeylElement evaluate_level(const FedosovConnection &conn, const QuantizableFunction &q, int k)
{
    WeylElement s = evaluate_level(q.section.of, k);
    const int w = level_window(conn.order, std::max(q.hbar_degree, conn.I.hbar_degree()));
    WeylElement d = fedosov_d(conn, s);
    for (const auto &[key, c] : d.terms()) {
        if (key.sym_degree() <= w) {
            throw std::logic_error("level-" + std::to_string(k) + " section not flat at " + key_str(key, s.dim()));
        }
    }
    return s;
}

Formalized formalize_level_section(const FedosovConnection &conn, int k, const WeylElement &s)
{
    if (s.level() != k) {
        throw std::invalid_argument("section is not at level " + std::to_string(k));
    }
    if (s.ybar_degree() > 1) {
        throw std::invalid_argument("section has ybar-degree above 1");
    }
    const int n = conn.geom->dim();
    std::vector<ChartFunction> b(n);
    for (int j = 0; j < n; ++j) {
        WeylKey key;
        key.yb[j] = 1;
        b[j] = s.coefficient(key);
    }
    Formalized out;
    ChartFunction f_gamma = dbar_antiderivative(b);
    if (conn.geom->kind() == GeometryKind::cp1_fs) {
        f_gamma = extend_over_infinity(f_gamma);
    }
    out.q = make_degree1(conn, f_gamma);
    const WeylElement ev = evaluate_level(conn, out.q, k);

    const auto sym_s = symbol(s);
    const auto sym_q = symbol(ev);
    ChartFunction diff = (sym_s.empty() ? ChartFunction() : sym_s[0]) - (sym_q.empty() ? ChartFunction() : sym_q[0]);
    if (!diff.is_holomorphic()) {
        throw std::runtime_error("formalized section differs by a non-holomorphic symbol");
    }
    out.correction = diff;
    out.recovered = f_gamma + diff;
    return out;
}

} // namespace fedlab
