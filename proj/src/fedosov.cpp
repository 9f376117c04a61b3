#include <fedlab/fedosov.hpp>

#include <sstream>
#include <stdexcept>

namespace fedlab
{

namespace
{

WeylKey form_key(std::uint8_t form)
{
    WeylKey k;
    k.form = form;
    return k;
}

// -omega_{i jbar} (dz^i ybar^j - dzbar^j y^i)
WeylElement build_gamma_delta(const GeometryPtr &g, int order)
{
    WeylElement r(g, order);
    const int n = g->dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ChartFunction &w = g->omega(i, j);
            if (w.is_zero()) {
                continue;
            }
            WeylKey a = form_key(dz_bit(i));
            a.yb[j] = 1;
            WeylKey b = form_key(dzbar_bit(j));
            b.y[i] = 1;
            r.add(a, -w);
            r.add(b, w);
        }
    }
    return r;
}

// R with (1/hbar)[R, y^m] = nabla^2 y^m = A^m_{ijk} dz^i dzbar^j y^k; c_{i jbar k lbar} = omega_{m lbar} A^m_{ijk}.
WeylElement build_r_nabla(const GeometryPtr &g, int order)
{
    WeylElement r(g, order);
    const int n = g->dim();
    if (g->kind() == GeometryKind::flat) {
        return r;
    }
    for (int m = 0; m < n; ++m) {
        WeylElement sq = nabla_weyl(nabla_weyl(WeylElement::y(g, order, m)));
        for (const auto &[key, a] : sq.terms()) {
            if (key.dz_count() != 1 || key.dzbar_count() != 1 || key.y_degree() != 1 || key.ybar_degree() != 0) {
                throw std::logic_error("unexpected curvature component " + key_str(key, n));
            }
            for (int l = 0; l < n; ++l) {
                WeylKey kk = key;
                kk.yb[l] += 1;
                r.add(kk, g->omega(m, l) * a);
            }
        }
    }
    return r;
}

WeylElement two_form(const GeometryPtr &g, int order, const FnMatrix &c, int hbar_power, const PiScalar &scale)
{
    WeylElement r(g, order);
    const int n = g->dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (c.empty() || c[i][j].is_zero()) {
                continue;
            }
            WeylKey k = form_key(static_cast<std::uint8_t>(dz_bit(i) | dzbar_bit(j)));
            k.h = static_cast<std::uint8_t>(hbar_power);
            r.add(k, c[i][j] * scale);
        }
    }
    return r;
}

void check_type_01(const WeylElement &i_part, int iteration)
{
    for (const auto &[k, c] : i_part.terms()) {
        if (k.dz_count() != 0 || k.dzbar_count() != 1) {
            throw std::runtime_error("Fedosov recursion left type (0,1) at weight " + std::to_string(k.weight()) +
                                     " (iteration " + std::to_string(iteration) + ")");
        }
    }
}

} // namespace

std::string FedosovConnection::karabegov_str() const
{
    std::ostringstream os;
    os << "K = -(1/hbar) omega";
    const int n = geom->dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!alpha.empty() && !alpha[i][j].is_zero()) {
                os << " + (i/2pi)(" << alpha[i][j].str() << ") dz" << (n > 1 ? std::to_string(i + 1) : "") << "^dzbar"
                   << (n > 1 ? std::to_string(j + 1) : "");
            }
        }
    }
    return os.str();
}

FedosovConnection solve_fedosov(GeometryPtr geom, AlphaChoice choice, int order, const FnMatrix &custom_alpha)
{
    if (order < 3) {
        throw std::invalid_argument("truncation order must be at least 3");
    }
    FedosovConnection conn;
    conn.geom = geom;
    conn.alpha_choice = choice;
    conn.order = order;
    conn.work_order = order + 2;
    const int m = conn.work_order;
    switch (choice) {
    case AlphaChoice::zero:
        break;
    case AlphaChoice::ricci:
        conn.alpha = geom->ricci_matrix();
        break;
    case AlphaChoice::canonical:
        conn.alpha = geom->ricci_matrix();
        for (auto &row : conn.alpha) {
            for (auto &c : row) {
                c = -c;
            }
        }
        break;
    case AlphaChoice::custom:
        if (static_cast<int>(custom_alpha.size()) != geom->dim()) {
            throw std::invalid_argument("custom alpha has wrong size");
        }
        if (!is_closed_11(custom_alpha)) {
            throw std::invalid_argument("alpha is not a closed (1,1)-form");
        }
        conn.alpha = custom_alpha;
        break;
    }
    conn.gamma_delta = build_gamma_delta(geom, m);
    conn.r_nabla = build_r_nabla(geom, m);
    conn.source = two_form(geom, m, geom->omega_matrix(), 0, PiScalar(-1)) + two_form(geom, m, conn.alpha, 1, PiScalar(1));

    // delta^{1,0} I = nabla^{1,0} I + R - hbar alpha
    const WeylElement fixed = conn.r_nabla - two_form(geom, m, conn.alpha, 1, PiScalar(1));
    WeylElement i_part(geom, m);
    int it = 0;
    for (;; ++it) {
        if (it > m + 2) {
            throw std::runtime_error("Fedosov recursion did not stabilise");
        }
        WeylElement next = delta10_inv(nabla_weyl_10(i_part) + fixed);
        check_type_01(next, it);
        if (next == i_part) {
            break;
        }
        i_part = std::move(next);
    }
    conn.iterations = it;
    conn.I = i_part;
    conn.gamma = conn.gamma_delta + i_part;
    conn.residual = fedosov_residual(conn);
    return conn;
}

WeylElement fedosov_residual(const FedosovConnection &conn)
{
    const WeylElement &g = conn.gamma;
    // (1/hbar) g*g = (1/2hbar)[g, g] for odd g
    WeylElement sq = bracket_over_hbar(g, g) * PiScalar(GaussQ(mpq_class(1, 2)));
    WeylElement r = nabla_weyl(g) + sq + conn.r_nabla - conn.source;
    return r.truncated(conn.order).with_order(conn.order);
}

bool vanishes_to_weight(const WeylElement &a, int w)
{
    for (const auto &[k, c] : a.terms()) {
        if (k.weight() <= w) {
            return false;
        }
    }
    return true;
}

WeylElement fedosov_d(const FedosovConnection &conn, const WeylElement &a)
{
    WeylElement i_part = conn.I;
    if (a.level() > 0) {
        i_part = evaluate_level(i_part, a.level());
    }
    i_part = i_part.with_order(a.order());
    return nabla_weyl(a) - delta(a) + bracket_over_hbar(i_part, a);
}

FlatSection flat_section(const FedosovConnection &conn, const HbarPoly &f)
{
    const int w = conn.order + 1;
    const WeylElement base = from_hbar_poly(conn.geom, w, f);
    const WeylElement i_part = conn.I.with_order(w);
    WeylElement o = base;
    bool stable = false;
    for (int it = 0; it <= w + 1; ++it) {
        WeylElement next = base + delta_inv(nabla_weyl(o) + bracket_over_hbar(i_part, o));
        if (next == o) {
            stable = true;
            break;
        }
        o = std::move(next);
    }
    if (!stable) {
        throw std::logic_error("flat-section iteration did not stabilise");
    }
    WeylElement d = fedosov_d(conn, o);
    if (!vanishes_to_weight(d, conn.order)) {
        throw std::runtime_error("flat section not flat through weight " + std::to_string(conn.order));
    }
    FlatSection s;
    s.of = o.truncated(conn.order).with_order(conn.order);
    s.symbol_f = symbol(s.of);
    s.residual_weight = conn.order;
    return s;
}

StarExpansion star_product(const FedosovConnection &conn, const HbarPoly &f, const HbarPoly &g)
{
    FlatSection of = flat_section(conn, f);
    FlatSection og = flat_section(conn, g);
    WeylElement p = wick_product(of.of, og.of);
    StarExpansion e;
    e.coefficients = symbol(p);
    e.coefficients.resize(static_cast<std::size_t>(conn.order / 2 + 1));
    return e;
}

HbarPoly hbar_add(const HbarPoly &a, const HbarPoly &b)
{
    HbarPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) {
            r[i] += a[i];
        }
        if (i < b.size()) {
            r[i] += b[i];
        }
    }
    return r;
}

HbarPoly hbar_scale(const HbarPoly &a, const PiScalar &s)
{
    HbarPoly r = a;
    for (auto &c : r) {
        c *= s;
    }
    return r;
}

std::string hbar_str(const HbarPoly &a)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << '(' << a[i].str() << ')';
        if (i == 1) {
            os << "*hbar";
        } else if (i > 1) {
            os << "*hbar^" << i;
        }
    }
    return first ? "0" : os.str();
}

} // namespace fedlab
