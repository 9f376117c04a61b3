#include <fedlab/geometry.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fedlab/integrals.hpp>
#include <fedlab/linalg.hpp>

namespace fedlab
{

namespace
{

const PiScalar &two_pi_over_i()
{
    // 2pi / i = -2i pi
    static const PiScalar s(GaussQ(0, -2), 1);
    return s;
}

const PiScalar &i_over_two_pi()
{
    static const PiScalar s(GaussQ(0, mpq_class(1, 2)), -1);
    return s;
}

FnMatrix zero_matrix(int n)
{
    return FnMatrix(static_cast<std::size_t>(n), std::vector<ChartFunction>(static_cast<std::size_t>(n)));
}

FnMatrix mat_mul(const FnMatrix &a, const FnMatrix &b)
{
    const int n = static_cast<int>(a.size());
    FnMatrix r = zero_matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) {
                    r[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    return r;
}

[[noreturn]] void accuracy_exceeded()
{
    throw std::runtime_error("jet accuracy exceeded");
}

// Integrate a D-free function in the zbar variables along the ray t*zbar.
ChartFunction zbar_homotopy(const std::vector<ChartFunction> &b)
{
    ChartFunction::Terms out;
    int dim = 0;
    int jet = -1;
    for (std::size_t j = 0; j < b.size(); ++j) {
        dim = std::max(dim, b[j].dim());
        if (b[j].is_jet()) {
            jet = jet < 0 ? b[j].jet_order() + 1 : std::min(jet, b[j].jet_order() + 1);
        }
        for (const auto &[k, c] : b[j].numerator()) {
            int d = 0;
            for (int l = 0; l < kMaxDim; ++l) {
                d += k.zbar(l);
            }
            FnKey kk = k;
            kk.zbar(static_cast<int>(j)) += 1;
            poly::add_term(out, kk, c * GaussQ(mpq_class(1, d + 1)));
        }
    }
    return ChartFunction::from_terms(std::move(out), 0, std::max(dim, static_cast<int>(b.size())), jet);
}

// One variable, b = N / D^m with m >= 2: F = P / D^(m-1), solved per (charge, pi) diagonal.
ChartFunction dbar_rational_1d(const ChartFunction &b)
{
    const int m = b.denom_power();
    const int s = m - 1;
    if (s <= 0) {
        throw std::domain_error("not representable in ring");
    }
    // group numerator monomials z^A zbar^B by (A - B, pi)
    std::map<std::pair<int, int>, std::map<int, GaussQ>> groups;
    for (const auto &[k, c] : b.numerator()) {
        groups[{k.z(0) - k.zbar(0), k.pi}][k.zbar(0)] = c;
    }
    ChartFunction::Terms p_terms;
    for (const auto &[key, rhs] : groups) {
        const auto [charge, pi] = key;
        const int max_b = rhs.rbegin()->first;
        const int top = max_b + s + 2;
        // unknowns p_t = coefficient of z^(t+charge-1) zbar^t, t in [t_lo, top]; p_0 fixed to 0 by the gauge
        const int t_lo = std::max(1, 1 - charge);
        if (t_lo > top) {
            throw std::domain_error("not representable in ring");
        }
        const int n_unk = top - t_lo + 1;
        // equation at target z^(B+charge) zbar^B: (B+1) p_{B+1} + (B-s) p_B = N_B
        QMatrix a;
        std::vector<GaussQ> rhs_vec;
        for (int bb = std::max(0, -charge); bb <= top + 1; ++bb) {
            std::vector<GaussQ> row(static_cast<std::size_t>(n_unk));
            auto set = [&](int t, const GaussQ &v) {
                if (t >= t_lo && t <= top && t + charge - 1 >= 0) {
                    row[static_cast<std::size_t>(t - t_lo)] += v;
                }
            };
            set(bb + 1, GaussQ(bb + 1));
            set(bb, GaussQ(bb - s));
            auto it = rhs.find(bb);
            a.push_back(std::move(row));
            rhs_vec.push_back(it == rhs.end() ? GaussQ() : it->second);
        }
        auto sol = solve_exact(std::move(a), std::move(rhs_vec));
        if (!sol) {
            throw std::domain_error("not representable in ring");
        }
        for (int t = t_lo; t <= top; ++t) {
            const GaussQ &v = (*sol)[static_cast<std::size_t>(t - t_lo)];
            if (v.is_zero()) {
                continue;
            }
            FnKey k;
            k.z(0) = static_cast<std::uint8_t>(t + charge - 1);
            k.zbar(0) = static_cast<std::uint8_t>(t);
            k.pi = static_cast<std::int8_t>(pi);
            poly::add_term(p_terms, k, v);
        }
    }
    return ChartFunction::from_terms(std::move(p_terms), s, 1);
}

// Holomorphic polynomial h with dh/dz = g, h(0) = 0 (one variable).
ChartFunction integrate_z_1d(const ChartFunction &g)
{
    ChartFunction::Terms out;
    for (const auto &[k, c] : g.numerator()) {
        FnKey kk = k;
        kk.z(0) += 1;
        poly::add_term(out, kk, c * GaussQ(mpq_class(1, k.z(0) + 1)));
    }
    return ChartFunction::from_terms(std::move(out), 0, std::max(1, g.dim()), g.is_jet() ? g.jet_order() + 1 : -1);
}

bool form_equal(const OneForm &a, const OneForm &b)
{
    for (std::size_t i = 0; i < a.dz.size(); ++i) {
        if (!((a.dz[i] - b.dz[i]).is_zero()) || !((a.dzbar[i] - b.dzbar[i]).is_zero())) {
            return false;
        }
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------- vector fields

VectorField VectorField::zero(int dim)
{
    VectorField v;
    v.hol.resize(static_cast<std::size_t>(dim));
    v.antihol.resize(static_cast<std::size_t>(dim));
    return v;
}

VectorField VectorField::real_from_hol(std::vector<ChartFunction> hol)
{
    VectorField v;
    for (const auto &h : hol) {
        v.antihol.push_back(h.conj());
    }
    v.hol = std::move(hol);
    return v;
}

bool VectorField::is_zero() const
{
    for (int i = 0; i < dim(); ++i) {
        if (!hol[i].is_zero() || !antihol[i].is_zero()) {
            return false;
        }
    }
    return true;
}

bool VectorField::is_real() const
{
    for (int i = 0; i < dim(); ++i) {
        if (!(hol[i].conj() == antihol[i])) {
            return false;
        }
    }
    return true;
}

ChartFunction VectorField::apply(const ChartFunction &f) const
{
    ChartFunction r;
    for (int i = 0; i < dim(); ++i) {
        if (!hol[i].is_zero()) {
            r += hol[i] * f.dz(i);
        }
        if (!antihol[i].is_zero()) {
            r += antihol[i] * f.dzbar(i);
        }
    }
    return r;
}

VectorField VectorField::operator+(const VectorField &o) const
{
    VectorField r = *this;
    for (int i = 0; i < dim(); ++i) {
        r.hol[i] += o.hol[i];
        r.antihol[i] += o.antihol[i];
    }
    return r;
}

VectorField VectorField::operator*(const PiScalar &s) const
{
    VectorField r = *this;
    for (int i = 0; i < dim(); ++i) {
        r.hol[i] *= s;
        r.antihol[i] *= s;
    }
    return r;
}

VectorField lie_bracket(const VectorField &a, const VectorField &b)
{
    VectorField r = VectorField::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        r.hol[i] = a.apply(b.hol[i]) - b.apply(a.hol[i]);
        r.antihol[i] = a.apply(b.antihol[i]) - b.apply(a.antihol[i]);
    }
    return r;
}

// ---------------------------------------------------------------- geometry

const ChartFunction &KahlerGeometry::christoffel(int i, int j, int k) const
{
    if (gamma_.empty()) {
        accuracy_exceeded();
    }
    return gamma_[i][j][k];
}

const ChartFunction &KahlerGeometry::curvature(int i, int j, int k, int l) const
{
    if (curvature_.empty()) {
        accuracy_exceeded();
    }
    return curvature_[i][j][k][l];
}

const FnMatrix &KahlerGeometry::ricci_matrix() const
{
    if (ricci_.empty()) {
        accuracy_exceeded();
    }
    return ricci_;
}

ChartFunction KahlerGeometry::denominator() const
{
    return kind_ == GeometryKind::cp1_fs ? ChartFunction::d_power(1, dim_) : ChartFunction(1);
}

std::vector<ChartFunction> KahlerGeometry::coordinates() const
{
    std::vector<ChartFunction> out;
    for (int i = 0; i < dim_; ++i) {
        out.push_back(ChartFunction::z(i, dim_));
    }
    return out;
}

void KahlerGeometry::derive_tensors()
{
    const int n = dim_;
    auto idx = [](int v) { return static_cast<std::size_t>(v); };
    try {
        // Gamma^i_{jk} = sum_l w^{lbar i} d_j w_{k lbar}
        std::vector<FnMatrix> gamma(idx(n), zero_matrix(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    ChartFunction s;
                    for (int l = 0; l < n; ++l) {
                        s += omega_inv_[l][i] * omega_[k][l].dz(j);
                    }
                    gamma[i][j][k] = s;
                }
            }
        }
        gamma_ = std::move(gamma);
    } catch (const std::runtime_error &) {
        return;
    }
    try {
        // R_{i jbar k lbar} = -sum_p d_jbar(Gamma^p_{ik}) w_{p lbar}
        std::vector<std::vector<FnMatrix>> curv(idx(n), std::vector<FnMatrix>(idx(n), zero_matrix(n)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    for (int l = 0; l < n; ++l) {
                        ChartFunction s;
                        for (int p = 0; p < n; ++p) {
                            s -= gamma_[p][i][k].dzbar(j) * omega_[p][l];
                        }
                        curv[i][j][k][l] = s;
                    }
                }
            }
        }
        FnMatrix ric = zero_matrix(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                ChartFunction s;
                for (int k = 0; k < n; ++k) {
                    s -= gamma_[k][k][i].dzbar(j);
                }
                ric[i][j] = s;
            }
        }
        curvature_ = std::move(curv);
        ricci_ = std::move(ric);
    } catch (const std::runtime_error &) {
    }
}

KahlerGeometry make_flat(int dim)
{
    if (dim < 1 || dim > kMaxDim) {
        throw std::invalid_argument("flat dimension must be in 1.." + std::to_string(kMaxDim));
    }
    KahlerGeometry g;
    g.kind_ = GeometryKind::flat;
    g.name_ = "flat:" + std::to_string(dim);
    g.dim_ = dim;
    g.omega_ = zero_matrix(dim);
    g.omega_inv_ = zero_matrix(dim);
    for (int i = 0; i < dim; ++i) {
        g.omega_[i][i] = ChartFunction(1);
        g.omega_inv_[i][i] = ChartFunction(1);
        g.drho_.push_back(-ChartFunction::zbar(i, dim));
    }
    g.derive_tensors();
    return g;
}

KahlerGeometry make_cp1_fs()
{
    KahlerGeometry g;
    g.kind_ = GeometryKind::cp1_fs;
    g.name_ = "cp1-fs";
    g.dim_ = 1;
    g.omega_ = {{ChartFunction::d_power(-2)}};
    g.omega_inv_ = {{ChartFunction::d_power(2)}};
    // rho = -log D
    g.drho_ = {-ChartFunction::zbar(0) * ChartFunction::d_power(-1)};
    g.derive_tensors();
    return g;
}

KahlerGeometry make_potential_jet(const ChartFunction &potential, int order)
{
    if (order < 2) {
        throw std::invalid_argument("potential jet order must be at least 2");
    }
    const int n = std::max(1, potential.dim());
    if (n > kMaxDim) {
        throw std::invalid_argument("jet dimension too large");
    }
    const ChartFunction phi = potential.to_jet(order);
    KahlerGeometry g;
    g.kind_ = GeometryKind::potential_jet;
    g.name_ = "jet:" + std::to_string(n) + ":" + std::to_string(order);
    g.dim_ = n;
    g.jet_order_ = order;
    g.omega_ = zero_matrix(n);
    QMatrix w0(static_cast<std::size_t>(n), std::vector<GaussQ>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g.omega_[i][j] = phi.dz(i).dzbar(j);
            auto split = g.omega_[i][j].split_by_pi();
            for (const auto &[e, t] : split) {
                auto it = t.find(FnKey{});
                if (it != t.end()) {
                    if (e != 0) {
                        throw std::invalid_argument("non-Kähler input: transcendental metric constant");
                    }
                    w0[i][j] = it->second;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!(g.omega_[i][j].conj() == g.omega_[j][i])) {
                throw std::invalid_argument("non-Kähler input: metric not hermitian");
            }
        }
    }
    QMatrix w0_inv;
    try {
        w0_inv = invert_exact(w0);
    } catch (const std::domain_error &) {
        throw std::invalid_argument("non-Kähler input: degenerate metric jet");
    }
    // W^{-1} = sum_k (-W0^{-1} E)^k W0^{-1}, E = W - W0 has no constant term
    FnMatrix a_inv = zero_matrix(n);
    FnMatrix e = zero_matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a_inv[i][j] = ChartFunction(w0_inv[i][j]).to_jet(order - 2);
            e[i][j] = g.omega_[i][j] - ChartFunction(w0[i][j]);
        }
    }
    FnMatrix step = mat_mul(a_inv, e);
    for (auto &row : step) {
        for (auto &x : row) {
            x = -x;
        }
    }
    FnMatrix term = a_inv;
    FnMatrix inv = a_inv;
    for (int k = 1; k <= order - 2; ++k) {
        term = mat_mul(step, term);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                inv[i][j] += term[i][j];
            }
        }
    }
    g.omega_inv_ = inv;
    for (int i = 0; i < n; ++i) {
        g.drho_.push_back(-phi.dz(i));
    }
    g.derive_tensors();
    return g;
}

ChartFunction parse_potential_jet(const std::string &text, int &dim, int &order)
{
    dim = -1;
    order = -1;
    ChartFunction::Terms terms;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) {
            continue;
        }
        if (head == "dim") {
            ls >> dim;
            continue;
        }
        if (head == "order") {
            ls >> order;
            continue;
        }
        if (dim < 1 || dim > kMaxDim || order < 0) {
            throw std::invalid_argument("jet file: 'dim' and 'order' must precede monomials (line " +
                                        std::to_string(line_no) + ")");
        }
        std::istringstream ms(line);
        FnKey k;
        for (int v = 0; v < 2 * dim; ++v) {
            int e = -1;
            if (!(ms >> e) || e < 0 || e > 255) {
                throw std::invalid_argument("jet file: bad exponent on line " + std::to_string(line_no));
            }
            if (v < dim) {
                k.z(v) = static_cast<std::uint8_t>(e);
            } else {
                k.zbar(v - dim) = static_cast<std::uint8_t>(e);
            }
        }
        std::string rest;
        std::getline(ms, rest);
        poly::add_term(terms, k, GaussQ::parse(rest));
    }
    if (dim < 1 || order < 0) {
        throw std::invalid_argument("jet file: missing 'dim' or 'order'");
    }
    return ChartFunction::from_terms(std::move(terms), 0, dim, order);
}

GeometryPtr make_geometry(const std::string &name)
{
    if (name == "cp1-fs" || name == "cp1_fs") {
        return std::make_shared<const KahlerGeometry>(make_cp1_fs());
    }
    if (name == "flat") {
        return std::make_shared<const KahlerGeometry>(make_flat(1));
    }
    if (name.rfind("flat:", 0) == 0 || name.rfind("flat(", 0) == 0) {
        std::string num = name.substr(5);
        if (!num.empty() && num.back() == ')') {
            num.pop_back();
        }
        int n = 0;
        try {
            n = std::stoi(num);
        } catch (const std::exception &) {
            throw std::invalid_argument("unknown geometry: " + name);
        }
        return std::make_shared<const KahlerGeometry>(make_flat(n));
    }
    if (name.rfind("jet:", 0) == 0) {
        std::ifstream f(name.substr(4));
        if (!f) {
            throw std::invalid_argument("cannot read jet file: " + name.substr(4));
        }
        std::stringstream ss;
        ss << f.rdbuf();
        int dim = 0;
        int order = 0;
        ChartFunction phi = parse_potential_jet(ss.str(), dim, order);
        ChartFunction::Terms t = phi.numerator();
        phi = ChartFunction::from_terms(std::move(t), 0, dim, order);
        return std::make_shared<const KahlerGeometry>(make_potential_jet(phi, order));
    }
    throw std::invalid_argument("unknown geometry: " + name);
}

// ---------------------------------------------------------------- operators

ChartFunction laplacian(const KahlerGeometry &g, const ChartFunction &f)
{
    ChartFunction s;
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = 0; j < g.dim(); ++j) {
            const ChartFunction &w = g.omega_inv_bar_first(j, i);
            if (!w.is_zero()) {
                s += w * f.dz(i).dzbar(j);
            }
        }
    }
    return s * PiScalar(GaussQ(4), 1);
}

VectorField hamiltonian_vf(const KahlerGeometry &g, const ChartFunction &f)
{
    const int n = g.dim();
    VectorField v = VectorField::zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // V^{jbar} += d_i f w^{i jbar};  V^i += d_jbar f w^{jbar i}
            v.antihol[j] += f.dz(i) * g.omega_inv_hol_first(i, j);
            v.hol[i] += f.dzbar(j) * g.omega_inv_bar_first(j, i);
        }
    }
    return v * two_pi_over_i();
}

ChartFunction omega_pairing(const KahlerGeometry &g, const VectorField &a, const VectorField &b)
{
    ChartFunction s;
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = 0; j < g.dim(); ++j) {
            s += g.omega(i, j) * (a.hol[i] * b.antihol[j] - a.antihol[j] * b.hol[i]);
        }
    }
    return s * i_over_two_pi();
}

ChartFunction poisson(const KahlerGeometry &g, const ChartFunction &f, const ChartFunction &h)
{
    return hamiltonian_vf(g, f).apply(h);
}

// ---------------------------------------------------------------- forms

bool OneForm::is_zero() const
{
    for (std::size_t i = 0; i < dz.size(); ++i) {
        if (!dz[i].is_zero() || !dzbar[i].is_zero()) {
            return false;
        }
    }
    return true;
}

OneForm contract_11(const VectorField &v, const FnMatrix &c)
{
    const int n = v.dim();
    OneForm out{std::vector<ChartFunction>(static_cast<std::size_t>(n)),
                std::vector<ChartFunction>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (c[i][j].is_zero()) {
                continue;
            }
            out.dz[i] -= c[i][j] * v.antihol[j];
            out.dzbar[j] += c[i][j] * v.hol[i];
        }
    }
    return out;
}

OneForm exterior_d(const ChartFunction &f)
{
    const int n = std::max(1, f.dim());
    OneForm out;
    for (int i = 0; i < n; ++i) {
        out.dz.push_back(f.dz(i));
        out.dzbar.push_back(f.dzbar(i));
    }
    return out;
}

bool is_closed(const OneForm &theta)
{
    const int n = static_cast<int>(theta.dz.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i < j && !(theta.dz[j].dz(i) == theta.dz[i].dz(j))) {
                return false;
            }
            if (i < j && !(theta.dzbar[j].dzbar(i) == theta.dzbar[i].dzbar(j))) {
                return false;
            }
            if (!(theta.dzbar[j].dz(i) == theta.dz[i].dzbar(j))) {
                return false;
            }
        }
    }
    return true;
}

bool is_closed_11(const FnMatrix &c)
{
    const int n = static_cast<int>(c.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (!(c[i][j].dz(k) == c[k][j].dz(i))) {
                    return false;
                }
                if (!(c[i][j].dzbar(k) == c[i][k].dzbar(j))) {
                    return false;
                }
            }
        }
    }
    return true;
}

ChartFunction dbar_antiderivative(const std::vector<ChartFunction> &b)
{
    bool rational = false;
    for (const auto &x : b) {
        rational = rational || x.denom_power() > 0;
    }
    ChartFunction f;
    if (!rational) {
        f = zbar_homotopy(b);
    } else {
        if (b.size() != 1) {
            throw std::domain_error("not representable in ring");
        }
        f = dbar_rational_1d(b[0]);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!(f.dzbar(static_cast<int>(j)) - b[j]).is_zero()) {
            throw std::domain_error("not representable in ring");
        }
    }
    return f;
}

ChartFunction antiderivative(const OneForm &theta)
{
    const int n = static_cast<int>(theta.dz.size());
    bool rational = false;
    for (int i = 0; i < n; ++i) {
        rational = rational || theta.dz[i].denom_power() > 0 || theta.dzbar[i].denom_power() > 0;
    }
    ChartFunction f;
    if (!rational) {
        // radial homotopy: each monomial of degree d in theta_i contributes z^i * monomial / (d+1)
        ChartFunction::Terms out;
        int jet = -1;
        for (int i = 0; i < n; ++i) {
            for (const auto *part : {&theta.dz[i], &theta.dzbar[i]}) {
                if (part->is_jet()) {
                    jet = jet < 0 ? part->jet_order() + 1 : std::min(jet, part->jet_order() + 1);
                }
                const bool bar = part == &theta.dzbar[i];
                for (const auto &[k, c] : part->numerator()) {
                    FnKey kk = k;
                    (bar ? kk.zbar(i) : kk.z(i)) += 1;
                    poly::add_term(out, kk, c * GaussQ(mpq_class(1, k.degree() + 1)));
                }
            }
        }
        f = ChartFunction::from_terms(std::move(out), 0, n, jet);
    } else {
        if (n != 1) {
            throw std::domain_error("not representable in ring");
        }
        f = dbar_antiderivative(theta.dzbar);
        ChartFunction rest = theta.dz[0] - f.dz(0);
        if (!rest.is_holomorphic() || rest.denom_power() > 0) {
            throw std::domain_error("not representable in ring");
        }
        f += integrate_z_1d(rest);
    }
    if (!form_equal(exterior_d(f), theta)) {
        throw std::domain_error("not representable in ring");
    }
    return f;
}

// ---------------------------------------------------------------- symmetry helpers

bool preserves_11_form(const VectorField &v, const FnMatrix &c)
{
    // L_V = d iota_V on a closed form
    const OneForm theta = contract_11(v, c);
    const int n = v.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!(theta.dzbar[j].dz(i) == theta.dz[i].dzbar(j))) {
                return false;
            }
            if (i < j && !(theta.dz[j].dz(i) == theta.dz[i].dz(j))) {
                return false;
            }
            if (i < j && !(theta.dzbar[j].dzbar(i) == theta.dzbar[i].dzbar(j))) {
                return false;
            }
        }
    }
    return true;
}

LieCompat lie_compat(const KahlerGeometry &g, const VectorField &v)
{
    LieCompat r;
    r.preserves_omega = preserves_11_form(v, g.omega_matrix());
    // L_V dz^i = d V^i has no (0,1) part
    r.preserves_J = true;
    for (int i = 0; i < v.dim() && r.preserves_J; ++i) {
        r.preserves_J = v.hol[i].is_holomorphic() && v.antihol[i].is_antiholomorphic();
    }
    return r;
}

PiScalar cp1_mean(const ChartFunction &f)
{
    return chart_integral(f, 2);
}

namespace
{

std::vector<GaussQ> coordinates_in_basis(const VectorField &v, const std::vector<VectorField> &basis)
{
    // compare (1,0) numerators over the common denominator
    std::map<FnKey, std::size_t> index;
    std::vector<std::vector<std::pair<std::size_t, GaussQ>>> cols;
    auto collect = [&](const ChartFunction &f) {
        std::vector<std::pair<std::size_t, GaussQ>> out;
        if (f.denom_power() > 0) {
            throw std::logic_error("rotation fields are polynomial");
        }
        for (const auto &[k, c] : f.numerator()) {
            auto [it, fresh] = index.emplace(k, index.size());
            out.emplace_back(it->second, c);
        }
        return out;
    };
    for (const auto &b : basis) {
        cols.push_back(collect(b.hol[0]));
    }
    auto target = collect(v.hol[0]);
    QMatrix a(index.size(), std::vector<GaussQ>(basis.size()));
    std::vector<GaussQ> rhs(index.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const auto &[r, x] : cols[c]) {
            a[r][c] = x;
        }
    }
    for (const auto &[r, x] : target) {
        rhs[r] = x;
    }
    auto sol = solve_exact(std::move(a), std::move(rhs));
    if (!sol) {
        throw std::logic_error("Lie algebra not closed under the bracket");
    }
    VectorField check = VectorField::zero(v.dim());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        check = check + basis[c] * PiScalar((*sol)[c]);
    }
    if (!(check == v)) {
        throw std::logic_error("Lie algebra not closed under the bracket");
    }
    return *sol;
}

LieAlgebraAction rotation_action(const KahlerGeometry &g, std::vector<std::vector<ChartFunction>> hol,
                                 std::vector<std::string> labels)
{
    if (g.kind() != GeometryKind::cp1_fs) {
        throw std::invalid_argument("rotation action requires the cp1-fs geometry");
    }
    LieAlgebraAction act;
    act.labels = std::move(labels);
    for (auto &h : hol) {
        act.fields.push_back(VectorField::real_from_hol(std::move(h)));
    }
    const std::size_t m = act.fields.size();
    act.structure.assign(m, std::vector<std::vector<GaussQ>>(m, std::vector<GaussQ>(m)));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            act.structure[a][b] = coordinates_in_basis(lie_bracket(act.fields[a], act.fields[b]), act.fields);
        }
    }
    for (const auto &v : act.fields) {
        OneForm theta = contract_11(v, g.omega_matrix());
        for (auto &x : theta.dz) {
            x *= i_over_two_pi();
        }
        for (auto &x : theta.dzbar) {
            x *= i_over_two_pi();
        }
        ChartFunction mu = antiderivative(theta);
        // equivariant normalisation: zero mean
        mu -= ChartFunction(cp1_mean(mu));
        act.moment.push_back(mu);
    }
    return act;
}

} // namespace

LieAlgebraAction su2_action(const KahlerGeometry &g)
{
    const ChartFunction z = ChartFunction::z(0);
    const ChartFunction z2 = z * z;
    const GaussQ half(mpq_class(1, 2));
    const GaussQ ihalf(0, mpq_class(1, 2));
    std::vector<std::vector<ChartFunction>> hol = {
        {(ChartFunction(1) - z2) * PiScalar(ihalf)},
        {(ChartFunction(1) + z2) * PiScalar(half)},
        {z * PiScalar(GaussQ::i())},
    };
    LieAlgebraAction act = rotation_action(g, std::move(hol), {"xi1", "xi2", "xi3"});
    // [xi1, xi2] = xi3 and cyclic
    auto expect = [&](std::size_t a, std::size_t b, std::size_t d, long sign) {
        for (std::size_t e = 0; e < 3; ++e) {
            if (!(act.structure[a][b][e] == GaussQ(e == d ? sign : 0))) {
                throw std::logic_error("su(2) structure constants inconsistent");
            }
        }
    };
    expect(0, 1, 2, 1);
    expect(1, 2, 0, 1);
    expect(2, 0, 1, 1);
    return act;
}

LieAlgebraAction u1_action(const KahlerGeometry &g)
{
    return rotation_action(g, {{ChartFunction::z(0) * PiScalar(GaussQ::i())}}, {"xi3"});
}

} // namespace fedlab
