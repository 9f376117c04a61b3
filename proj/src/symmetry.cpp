#include <fedlab/symmetry.hpp>

#include <bit>
#include <sstream>

namespace fedlab
{

namespace
{

PiScalar two_pi_over_i()
{
    return PiScalar(GaussQ(0, -2), 1);
}

int parity_below(std::uint8_t form, int bit)
{
    return std::popcount(static_cast<unsigned>(form & ((1u << bit) - 1u))) % 2;
}

// Replace form generator `from` by `to` in place; returns false when the result vanishes.
bool swap_form_bit(std::uint8_t form, int from, int to, std::uint8_t &out, int &sign)
{
    const std::uint8_t rest = static_cast<std::uint8_t>(form & ~(1u << from));
    if (rest & (1u << to)) {
        return false;
    }
    sign = (parity_below(form, from) + parity_below(rest, to)) % 2 ? -1 : 1;
    out = static_cast<std::uint8_t>(rest | (1u << to));
    return true;
}

WeylElement one_form_element(const GeometryPtr &g, int order, const OneForm &theta, int h)
{
    WeylElement r(g, order);
    for (int i = 0; i < g->dim(); ++i) {
        WeylKey a;
        a.form = dz_bit(i);
        a.h = static_cast<std::uint8_t>(h);
        r.add(a, theta.dz[i]);
        WeylKey b;
        b.form = dzbar_bit(i);
        b.h = static_cast<std::uint8_t>(h);
        r.add(b, theta.dzbar[i]);
    }
    return r;
}

OneForm negated(OneForm t)
{
    for (auto &c : t.dz) {
        c = -c;
    }
    for (auto &c : t.dzbar) {
        c = -c;
    }
    return t;
}

} // namespace

bool is_star_derivation(const KahlerGeometry &g, const VectorField &v, const FnMatrix &alpha)
{
    const LieCompat lc = lie_compat(g, v);
    if (!lc.preserves_J || !lc.preserves_omega) {
        return false;
    }
    return alpha.empty() || preserves_11_form(v, alpha);
}

WeylElement lie_derivative(const VectorField &v, const WeylElement &a)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    const int n = a.dim();
    for (const auto &[key, c] : a.terms()) {
        const ChartFunction vc = v.apply(c);
        if (!vc.is_zero()) {
            r.add(key, vc);
        }
        for (int i = 0; i < n; ++i) {
            // y^i -> d_j V^i y^j + d_jbar V^i ybar^j, ybar^i likewise with the conjugate components
            for (int bar = 0; bar < 2; ++bar) {
                const int e = bar ? key.yb[i] : key.y[i];
                if (e == 0) {
                    continue;
                }
                const ChartFunction &comp = bar ? v.antihol[i] : v.hol[i];
                for (int j = 0; j < n; ++j) {
                    for (int tbar = 0; tbar < 2; ++tbar) {
                        const ChartFunction d = tbar ? comp.dzbar(j) : comp.dz(j);
                        if (d.is_zero()) {
                            continue;
                        }
                        WeylKey kk = key;
                        (bar ? kk.yb[i] : kk.y[i]) -= 1;
                        (tbar ? kk.yb[j] : kk.y[j]) += 1;
                        r.add(kk, c * d * PiScalar(e));
                    }
                }
            }
            for (int bar = 0; bar < 2; ++bar) {
                const int from = bar ? kMaxDim + i : i;
                if (!(key.form & (1u << from))) {
                    continue;
                }
                const ChartFunction &comp = bar ? v.antihol[i] : v.hol[i];
                for (int j = 0; j < n; ++j) {
                    for (int tbar = 0; tbar < 2; ++tbar) {
                        const ChartFunction d = tbar ? comp.dzbar(j) : comp.dz(j);
                        if (d.is_zero()) {
                            continue;
                        }
                        WeylKey kk = key;
                        int sign = 1;
                        if (!swap_form_bit(key.form, from, tbar ? kMaxDim + j : j, kk.form, sign)) {
                            continue;
                        }
                        r.add(kk, sign < 0 ? -(c * d) : c * d);
                    }
                }
            }
        }
    }
    return r;
}

WeylElement build_eta(const GeometryPtr &g, const VectorField &v, int order)
{
    const int n = g->dim();
    WeylElement eta(g, order);
    if (!v.is_zero()) {
        if (!lie_compat(*g, v).preserves_J) {
            throw std::invalid_argument("no (1,1) eta: field does not preserve J");
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                ChartFunction e;
                for (int m = 0; m < n; ++m) {
                    ChartFunction a = v.hol[m].dz(i);
                    if (g->kind() != GeometryKind::flat) {
                        for (int l = 0; l < n; ++l) {
                            a += v.hol[l] * g->christoffel(m, l, i);
                        }
                    }
                    e += a * g->omega(m, j);
                }
                WeylKey k;
                k.y[i] = 1;
                k.yb[j] = 1;
                eta.add(k, e);
            }
        }
    }
    for (int m = 0; m < n; ++m) {
        for (const auto &gen : {WeylElement::y(g, order, m), WeylElement::ybar(g, order, m)}) {
            if (!(bracket_over_hbar(eta, gen) == lie_derivative(v, gen) - nabla_along(v, gen))) {
                throw std::invalid_argument("eta identity fails on generators: field is not a symmetry of omega and J");
            }
        }
    }
    return eta;
}

QuantumHamiltonian quantum_hamiltonian(const FedosovConnection &conn, const VectorField &v)
{
    const GeometryPtr &g = conn.geom;
    if (!is_star_derivation(*g, v, conn.alpha)) {
        throw std::invalid_argument("field is not a derivation of the star product");
    }
    const int m = conn.work_order;
    const int n_cert = conn.order;
    QuantumHamiltonian out;
    out.field = v;
    out.eta = build_eta(g, v, m);
    out.beta = out.eta - iota(v, conn.gamma.with_order(m));

    const OneForm iw = contract_11(v, g->omega_matrix());
    const bool has_alpha = !conn.alpha.empty();
    const OneForm ia = has_alpha ? contract_11(v, conn.alpha) : OneForm{};

    out.d_beta = fedosov_d(conn, out.beta).truncated(n_cert).with_order(n_cert);
    out.target = one_form_element(g, n_cert, negated(iw), 0);
    if (has_alpha) {
        out.target += one_form_element(g, n_cert, ia, 1);
    }
    out.d_beta_matches = out.d_beta == out.target;

    try {
        out.mu.push_back(antiderivative(iw));
        if (has_alpha && !ia.is_zero()) {
            out.mu.push_back(-antiderivative(ia));
        }
    } catch (const std::domain_error &) {
        throw std::domain_error("obstruction class nonzero in ring");
    }
    while (!out.mu.empty() && out.mu.back().is_zero()) {
        out.mu.pop_back();
    }
    const WeylElement section = from_hbar_poly(g, m, out.mu) + out.beta;
    out.flat = vanishes_to_weight(fedosov_d(conn, section), n_cert);
    out.ybar_degree = std::max(section.truncated(n_cert).ybar_degree(), 0);
    return out;
}

bool hamiltonian_bracket_holds(const FedosovConnection &conn, const QuantumHamiltonian &h, const ChartFunction &g)
{
    const int m = conn.work_order;
    const WeylElement lhs_op = from_hbar_poly(conn.geom, m, h.mu) + h.beta.with_order(m);
    const WeylElement og = flat_section(conn, g).of.with_order(m);
    const int w = conn.order - 1;
    const WeylElement lhs = bracket_over_hbar(lhs_op, og).truncated(w).with_order(w);
    const WeylElement rhs = flat_section(conn, h.field.apply(g)).of.truncated(w).with_order(w);
    return lhs == rhs;
}

bool BracketDefect::is_zero() const
{
    for (const auto &c : defect) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

namespace
{

std::string defect_message(const std::vector<BracketDefect> &d)
{
    std::ostringstream os;
    os << "quantum moment map is not a homomorphism:";
    for (const auto &x : d) {
        if (!x.is_zero()) {
            os << " [" << x.a << "," << x.b << "] " << hbar_str(x.defect) << ';';
        }
    }
    return os.str();
}

} // namespace

HomomorphismDefectError::HomomorphismDefectError(std::vector<BracketDefect> d)
    : std::runtime_error(defect_message(d)), defects_(std::move(d))
{
}

QuantumMomentMap quantum_moment_map(const FedosovConnection &conn, const LieAlgebraAction &action,
                                    const std::vector<int> &levels, bool throw_on_defect)
{
    const KahlerGeometry &g = *conn.geom;
    QuantumMomentMap out;
    out.action = action;
    out.scale = two_pi_over_i();
    for (std::size_t a = 0; a < action.size(); ++a) {
        if (!is_star_derivation(g, action.fields[a], conn.alpha)) {
            throw std::invalid_argument("action field " + action.labels[a] + " is not a star derivation");
        }
        out.mu_hbar.push_back(make_degree1(conn, action.moment[a]));
    }
    // product symbols are exact through hbar^{N/2}; one power is spent on the division
    out.tested_order = conn.order / 2 - 1;
    std::vector<WeylElement> sections;
    for (const auto &q : out.mu_hbar) {
        sections.push_back(q.section.of * out.scale);
    }
    for (std::size_t a = 0; a < action.size(); ++a) {
        for (std::size_t b = a + 1; b < action.size(); ++b) {
            HbarPoly br = symbol(wick_product(sections[a], sections[b]) - wick_product(sections[b], sections[a]));
            HbarPoly lhs;
            for (std::size_t h = 1; h < br.size(); ++h) {
                lhs.push_back(br[h]);
            }
            if (!br.empty() && !br[0].is_zero()) {
                throw std::logic_error("star commutator has a nonzero hbar^0 term");
            }
            HbarPoly rhs;
            const auto c = action.bracket(a, b);
            for (std::size_t d = 0; d < action.size(); ++d) {
                if (!c[d].is_zero()) {
                    rhs = hbar_add(rhs, hbar_scale(out.mu_hbar[d].formal, out.scale * PiScalar(c[d])));
                }
            }
            BracketDefect def;
            def.a = a;
            def.b = b;
            def.defect = hbar_add(lhs, hbar_scale(rhs, PiScalar(-1)));
            def.defect.resize(static_cast<std::size_t>(out.tested_order + 1));
            out.defects.push_back(std::move(def));
        }
    }
    for (int k : levels) {
        std::vector<ChartFunction> mk;
        for (const auto &q : out.mu_hbar) {
            ChartFunction v = q.formal.empty() ? ChartFunction() : q.formal[0];
            if (q.formal.size() > 1) {
                v += q.formal[1] * PiScalar(GaussQ(mpq_class(1, k)));
            }
            mk.push_back(v);
        }
        out.mu_levels[k] = std::move(mk);
    }
    if (throw_on_defect) {
        for (const auto &d : out.defects) {
            if (!d.is_zero()) {
                throw HomomorphismDefectError(out.defects);
            }
        }
    }
    return out;
}

} // namespace fedlab
