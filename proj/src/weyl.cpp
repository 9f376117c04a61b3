#include <fedlab/weyl.hpp>

#include <bit>
#include <sstream>
#include <stdexcept>

namespace fedlab
{

namespace
{

using Multi = std::array<std::uint8_t, kMaxDim>;

int popcount_below(std::uint8_t mask, int bit)
{
    return std::popcount(static_cast<unsigned>(mask & ((1u << bit) - 1u)));
}

// Sign of dz^A ^ dz^B brought to canonical order; 0 when they overlap.
int wedge_sign(std::uint8_t a, std::uint8_t b)
{
    if (a & b) {
        return 0;
    }
    int swaps = 0;
    for (int bit = 0; bit < 8; ++bit) {
        if (b & (1u << bit)) {
            // generators of a sitting after this one must hop over it
            swaps += std::popcount(static_cast<unsigned>(a >> (bit + 1)));
        }
    }
    return swaps % 2 ? -1 : 1;
}

// Falling factorial n (n-1) ... (n-k+1).
long falling(int n, int k)
{
    long r = 1;
    for (int t = 0; t < k; ++t) {
        r *= n - t;
    }
    return r;
}

// Wick contraction weights W_m[alpha][beta] = (1/m!) sum over ordered index tuples with y-content alpha and
// ybar-content beta of prod w^{i jbar}.
class ContractionTable
{
public:
    ContractionTable(const KahlerGeometry &g, int max_m) : n_(g.dim())
    {
        max_m = std::max(max_m, 0);
        layers_.resize(static_cast<std::size_t>(max_m + 1));
        layers_[0][{Multi{}, Multi{}}] = ChartFunction(1);
        for (int m = 1; m <= max_m; ++m) {
            auto &cur = layers_[static_cast<std::size_t>(m)];
            for (const auto &[ab, w] : layers_[static_cast<std::size_t>(m - 1)]) {
                for (int i = 0; i < n_; ++i) {
                    for (int j = 0; j < n_; ++j) {
                        ChartFunction wij = g.omega_inv_hol_first(i, j);
                        if (wij.is_zero()) {
                            continue;
                        }
                        auto nab = ab;
                        nab.first[i] += 1;
                        nab.second[j] += 1;
                        cur[nab] += w * wij * PiScalar(GaussQ(mpq_class(1, m)));
                    }
                }
            }
            for (auto it = cur.begin(); it != cur.end();) {
                it = it->second.is_zero() ? cur.erase(it) : std::next(it);
            }
        }
    }
    const std::map<std::pair<Multi, Multi>, ChartFunction> &layer(int m) const
    {
        return layers_[static_cast<std::size_t>(m)];
    }
    int size() const { return static_cast<int>(layers_.size()); }

private:
    int n_;
    std::vector<std::map<std::pair<Multi, Multi>, ChartFunction>> layers_;
};

bool fits(const Multi &alpha, const Multi &have)
{
    for (int i = 0; i < kMaxDim; ++i) {
        if (alpha[i] > have[i]) {
            return false;
        }
    }
    return true;
}

long derivative_factor(const Multi &alpha, const Multi &have)
{
    long r = 1;
    for (int i = 0; i < kMaxDim; ++i) {
        r *= falling(have[i], alpha[i]);
    }
    return r;
}

// out += sign(form_a, form_b) * (a * b), with an extra per-pair sign hook.
template <class PairSign>
void accumulate_product(WeylElement &out, const WeylElement &a, const WeylElement &b, int max_weight,
                        const ContractionTable &table, PairSign pair_sign)
{
    const int level = out.level();
    const PiScalar inv_k = level > 0 ? PiScalar(GaussQ(mpq_class(1, level))) : PiScalar(1);
    for (const auto &[ka, fa] : a.terms()) {
        const int wa = ka.weight();
        for (const auto &[kb, fb] : b.terms()) {
            if (level == 0 && wa + kb.weight() > max_weight) {
                continue;
            }
            int s = wedge_sign(ka.form, kb.form);
            if (s == 0) {
                continue;
            }
            s *= pair_sign(ka, kb);
            ChartFunction fab;
            bool have_fab = false;
            const int mmax = std::min({ka.y_degree(), kb.ybar_degree(), table.size() - 1});
            for (int m = 0; m <= mmax; ++m) {
                for (const auto &[ab, w] : table.layer(m)) {
                    const auto &[alpha, beta] = ab;
                    if (!fits(alpha, ka.y) || !fits(beta, kb.yb)) {
                        continue;
                    }
                    WeylKey k;
                    for (int i = 0; i < kMaxDim; ++i) {
                        k.y[i] = static_cast<std::uint8_t>(ka.y[i] - alpha[i] + kb.y[i]);
                        k.yb[i] = static_cast<std::uint8_t>(ka.yb[i] + kb.yb[i] - beta[i]);
                    }
                    k.form = ka.form | kb.form;
                    PiScalar scale(GaussQ(s * derivative_factor(alpha, ka.y) * derivative_factor(beta, kb.yb)));
                    if (level == 0) {
                        k.h = static_cast<std::uint8_t>(ka.h + kb.h + m);
                    } else {
                        if (k.weight() > max_weight) {
                            continue;
                        }
                        for (int t = 0; t < m; ++t) {
                            scale *= inv_k;
                        }
                    }
                    if (!have_fab) {
                        fab = fa * fb;
                        have_fab = true;
                    }
                    out.add(k, m == 0 ? fab * scale : fab * w * scale);
                }
            }
        }
    }
}

int product_contraction_bound(const WeylElement &a, const WeylElement &b)
{
    return std::min(a.y_degree(), b.ybar_degree());
}

std::string var_name(const char *base, int i, int dim)
{
    return dim > 1 ? std::string(base) + std::to_string(i + 1) : std::string(base);
}

} // namespace

// ---------------------------------------------------------------- keys

int WeylKey::y_degree() const
{
    int d = 0;
    for (auto e : y) {
        d += e;
    }
    return d;
}

int WeylKey::ybar_degree() const
{
    int d = 0;
    for (auto e : yb) {
        d += e;
    }
    return d;
}

int WeylKey::form_degree() const
{
    return std::popcount(static_cast<unsigned>(form));
}

int WeylKey::dz_count() const
{
    return std::popcount(static_cast<unsigned>(form & ((1u << kMaxDim) - 1u)));
}

int WeylKey::dzbar_count() const
{
    return std::popcount(static_cast<unsigned>(form >> kMaxDim));
}

std::string key_str(const WeylKey &k, int dim)
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string &name, int e) {
        if (e == 0) {
            return;
        }
        if (!first) {
            os << ' ';
        }
        first = false;
        os << name;
        if (e > 1) {
            os << '^' << e;
        }
    };
    for (int i = 0; i < std::max(dim, 1); ++i) {
        emit(var_name("y", i, dim), k.y[i]);
    }
    for (int i = 0; i < std::max(dim, 1); ++i) {
        emit(var_name("ybar", i, dim), k.yb[i]);
    }
    emit("hbar", k.h);
    for (int i = 0; i < std::max(dim, 1); ++i) {
        emit(var_name("dz", i, dim), (k.form & dz_bit(i)) ? 1 : 0);
    }
    for (int i = 0; i < std::max(dim, 1); ++i) {
        emit(var_name("dzbar", i, dim), (k.form & dzbar_bit(i)) ? 1 : 0);
    }
    return first ? "1" : os.str();
}

// ---------------------------------------------------------------- element

WeylElement::WeylElement(GeometryPtr geom, int order, int level) : geom_(std::move(geom)), order_(order), level_(level)
{
    if (!geom_) {
        throw std::invalid_argument("Weyl element needs a geometry");
    }
}

WeylElement WeylElement::scalar(GeometryPtr geom, int order, const ChartFunction &f)
{
    WeylElement r(std::move(geom), order);
    r.add(WeylKey{}, f);
    return r;
}

WeylElement WeylElement::monomial(GeometryPtr geom, int order, const WeylKey &key, const ChartFunction &f)
{
    WeylElement r(std::move(geom), order);
    r.add(key, f);
    return r;
}

WeylElement WeylElement::y(GeometryPtr geom, int order, int i)
{
    WeylKey k;
    k.y[i] = 1;
    return monomial(std::move(geom), order, k);
}

WeylElement WeylElement::ybar(GeometryPtr geom, int order, int j)
{
    WeylKey k;
    k.yb[j] = 1;
    return monomial(std::move(geom), order, k);
}

WeylElement WeylElement::hbar(GeometryPtr geom, int order)
{
    WeylKey k;
    k.h = 1;
    return monomial(std::move(geom), order, k);
}

void WeylElement::add(const WeylKey &key, const ChartFunction &c)
{
    if (c.is_zero() || key.weight() > order_) {
        return;
    }
    if (level_ > 0 && key.h != 0) {
        throw std::logic_error("hbar exponent in a level-evaluated Weyl element");
    }
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

ChartFunction WeylElement::coefficient(const WeylKey &key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? ChartFunction() : it->second;
}

void WeylElement::check_compatible(const WeylElement &o) const
{
    if (geom_ != o.geom_ && !(geom_ && o.geom_ && geom_->name() == o.geom_->name())) {
        throw std::invalid_argument("Weyl elements over different geometries");
    }
    if (level_ != o.level_) {
        throw std::invalid_argument("Weyl elements at different levels");
    }
}

WeylElement &WeylElement::operator+=(const WeylElement &o)
{
    if (!geom_) {
        *this = o;
        return *this;
    }
    if (o.geom_) {
        check_compatible(o);
    }
    for (const auto &[k, c] : o.terms_) {
        add(k, c);
    }
    return *this;
}

WeylElement &WeylElement::operator-=(const WeylElement &o)
{
    return *this += -o;
}

WeylElement WeylElement::operator-() const
{
    WeylElement r = *this;
    for (auto &[k, c] : r.terms_) {
        c = -c;
    }
    return r;
}

WeylElement operator*(const ChartFunction &f, const WeylElement &a)
{
    WeylElement r(a.geom_, a.order_, a.level_);
    for (const auto &[k, c] : a.terms_) {
        r.add(k, f * c);
    }
    return r;
}

WeylElement operator*(const PiScalar &s, const WeylElement &a)
{
    WeylElement r(a.geom_, a.order_, a.level_);
    for (const auto &[k, c] : a.terms_) {
        r.add(k, c * s);
    }
    return r;
}

WeylElement WeylElement::with_order(int order) const
{
    WeylElement r(geom_, order, level_);
    for (const auto &[k, c] : terms_) {
        r.add(k, c);
    }
    return r;
}

WeylElement WeylElement::truncated(int w) const
{
    return filtered([w](const WeylKey &k) { return k.weight() <= w; });
}

int WeylElement::y_degree() const
{
    int d = -1;
    for (const auto &[k, c] : terms_) {
        d = std::max(d, k.y_degree());
    }
    return d;
}

int WeylElement::ybar_degree() const
{
    int d = -1;
    for (const auto &[k, c] : terms_) {
        d = std::max(d, k.ybar_degree());
    }
    return d;
}

int WeylElement::hbar_degree() const
{
    int d = -1;
    for (const auto &[k, c] : terms_) {
        d = std::max(d, static_cast<int>(k.h));
    }
    return d;
}

int WeylElement::max_weight() const
{
    int d = -1;
    for (const auto &[k, c] : terms_) {
        d = std::max(d, k.weight());
    }
    return d;
}

int WeylElement::min_weight() const
{
    int d = order_ + 1;
    for (const auto &[k, c] : terms_) {
        d = std::min(d, k.weight());
    }
    return d;
}

WeylElement WeylElement::hbar_shift(int shift) const
{
    WeylElement r(geom_, order_, level_);
    for (const auto &[k, c] : terms_) {
        const int h = k.h + shift;
        if (h < 0) {
            throw std::logic_error("negative hbar power in " + key_str(k, dim()));
        }
        WeylKey kk = k;
        kk.h = static_cast<std::uint8_t>(h);
        r.add(kk, c);
    }
    return r;
}

std::string WeylElement::serialize() const
{
    std::ostringstream os;
    for (const auto &[k, c] : terms_) {
        os << key_str(k, dim()) << " : " << c.str() << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- products

WeylElement wick_product(const WeylElement &a, const WeylElement &b, int max_weight)
{
    if (!a.geometry() || !b.geometry()) {
        throw std::invalid_argument("Weyl product of an unset element");
    }
    if (a.order() != b.order() || a.level() != b.level() || a.geometry()->name() != b.geometry()->name()) {
        throw std::invalid_argument("Weyl product: mismatched geometry, level or truncation order");
    }
    const int mw = max_weight < 0 ? a.order() : max_weight;
    WeylElement out(a.geometry(), mw, a.level());
    ContractionTable table(a.geom(), product_contraction_bound(a, b));
    accumulate_product(out, a, b, mw, table, [](const WeylKey &, const WeylKey &) { return 1; });
    return out;
}

WeylElement bracket_over_hbar(const WeylElement &a, const WeylElement &b)
{
    if (a.order() != b.order() || a.level() != b.level() || a.geometry()->name() != b.geometry()->name()) {
        throw std::invalid_argument("Weyl bracket: mismatched geometry, level or truncation order");
    }
    const int level = a.level();
    const int mw = level == 0 ? a.order() + 2 : a.order();
    WeylElement out(a.geometry(), mw, level);
    const int bound = std::max(product_contraction_bound(a, b), product_contraction_bound(b, a));
    ContractionTable table(a.geom(), bound);
    accumulate_product(out, a, b, mw, table, [](const WeylKey &, const WeylKey &) { return 1; });
    // - (-1)^{|a||b|} b * a
    accumulate_product(out, b, a, mw, table, [](const WeylKey &kb, const WeylKey &ka) {
        return (ka.form_degree() * kb.form_degree()) % 2 ? 1 : -1;
    });
    if (level == 0) {
        return out.hbar_shift(-1).with_order(a.order());
    }
    return PiScalar(GaussQ(level)) * out.with_order(a.order());
}

// ---------------------------------------------------------------- symbol

std::vector<ChartFunction> symbol(const WeylElement &a)
{
    std::vector<ChartFunction> out;
    for (const auto &[k, c] : a.terms()) {
        if (k.sym_degree() != 0 || k.form != 0) {
            continue;
        }
        if (out.size() <= k.h) {
            out.resize(k.h + 1u);
        }
        out[k.h] += c;
    }
    while (!out.empty() && out.back().is_zero()) {
        out.pop_back();
    }
    return out;
}

WeylElement from_hbar_poly(GeometryPtr geom, int order, const std::vector<ChartFunction> &f, int level)
{
    WeylElement r(std::move(geom), order, level);
    for (std::size_t h = 0; h < f.size(); ++h) {
        WeylKey k;
        if (level > 0) {
            PiScalar s(GaussQ(mpq_class(1)));
            for (std::size_t t = 0; t < h; ++t) {
                s *= PiScalar(GaussQ(mpq_class(1, level)));
            }
            r.add(k, f[h] * s);
        } else {
            k.h = static_cast<std::uint8_t>(h);
            r.add(k, f[h]);
        }
    }
    return r;
}

// ---------------------------------------------------------------- delta calculus

WeylElement delta(const WeylElement &a)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    const int n = a.dim();
    for (const auto &[k, c] : a.terms()) {
        for (int i = 0; i < n; ++i) {
            if (k.y[i] && !(k.form & dz_bit(i))) {
                WeylKey kk = k;
                kk.y[i] -= 1;
                kk.form |= dz_bit(i);
                const int sign = popcount_below(k.form, i) % 2 ? -1 : 1;
                r.add(kk, c * PiScalar(GaussQ(sign * static_cast<long>(k.y[i]))));
            }
            if (k.yb[i] && !(k.form & dzbar_bit(i))) {
                WeylKey kk = k;
                kk.yb[i] -= 1;
                kk.form |= dzbar_bit(i);
                const int sign = popcount_below(k.form, kMaxDim + i) % 2 ? -1 : 1;
                r.add(kk, c * PiScalar(GaussQ(sign * static_cast<long>(k.yb[i]))));
            }
        }
    }
    return r;
}

WeylElement delta_inv(const WeylElement &a)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    const int n = a.dim();
    for (const auto &[k, c] : a.terms()) {
        const int pq = k.sym_degree() + k.form_degree();
        if (pq == 0 || k.form == 0) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            for (int bar = 0; bar < 2; ++bar) {
                const int bit = bar ? kMaxDim + i : i;
                if (!(k.form & (1u << bit))) {
                    continue;
                }
                WeylKey kk = k;
                kk.form = static_cast<std::uint8_t>(k.form & ~(1u << bit));
                (bar ? kk.yb[i] : kk.y[i]) += 1;
                const int sign = popcount_below(k.form, bit) % 2 ? -1 : 1;
                r.add(kk, c * PiScalar(GaussQ(mpq_class(sign, pq))));
            }
        }
    }
    return r;
}

WeylElement delta10_inv(const WeylElement &a)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    const int n = a.dim();
    for (const auto &[k, c] : a.terms()) {
        if (k.dz_count() != 1 || k.dzbar_count() != 1) {
            throw std::logic_error("delta10_inv expects (1,1)-forms, got " + key_str(k, n));
        }
        for (int i = 0; i < n; ++i) {
            if (!(k.form & dz_bit(i))) {
                continue;
            }
            WeylKey kk = k;
            kk.form = static_cast<std::uint8_t>(k.form & ~dz_bit(i));
            kk.y[i] += 1;
            r.add(kk, c * PiScalar(GaussQ(mpq_class(1, k.y_degree() + 1))));
        }
    }
    return r;
}

// ---------------------------------------------------------------- covariant derivative

namespace
{

// nabla_i (hol = true) or nabla_jbar (hol = false) of a single term, added into r with the one-form on the left.
void nabla_component(WeylElement &r, const WeylKey &k, const ChartFunction &c, int idx, bool hol, bool wedge,
                     const ChartFunction *scale)
{
    const KahlerGeometry &g = r.geom();
    const int n = g.dim();
    const int bit = hol ? idx : kMaxDim + idx;
    int sign = 1;
    WeylKey base = k;
    if (wedge) {
        if (k.form & (1u << bit)) {
            return;
        }
        sign = popcount_below(k.form, bit) % 2 ? -1 : 1;
        base.form = static_cast<std::uint8_t>(k.form | (1u << bit));
    }
    auto put = [&](const WeylKey &key, ChartFunction v) {
        if (scale) {
            v *= *scale;
        }
        r.add(key, sign < 0 ? -v : v);
    };
    put(base, hol ? c.dz(idx) : c.dzbar(idx));
    const auto &exps = hol ? k.y : k.yb;
    for (int m = 0; m < n; ++m) {
        if (!exps[m]) {
            continue;
        }
        // d y^m = -Gamma^m_{idx,l} y^l  (conjugate for ybar)
        for (int l = 0; l < n; ++l) {
            ChartFunction gam = hol ? g.christoffel(m, idx, l) : g.christoffel_bar(m, idx, l);
            if (gam.is_zero()) {
                continue;
            }
            WeylKey kk = base;
            auto &e = hol ? kk.y : kk.yb;
            e[m] -= 1;
            e[l] += 1;
            put(kk, -(c * gam) * PiScalar(GaussQ(static_cast<long>(exps[m]))));
        }
    }
}

bool flat_connection(const KahlerGeometry &g)
{
    return g.kind() == GeometryKind::flat;
}

WeylElement nabla_parts(const WeylElement &a, bool do_hol, bool do_antihol)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    const int n = a.dim();
    const bool flat = flat_connection(a.geom());
    for (const auto &[k, c] : a.terms()) {
        for (int i = 0; i < n; ++i) {
            if (flat) {
                if (do_hol && !(k.form & dz_bit(i))) {
                    const int sign = popcount_below(k.form, i) % 2 ? -1 : 1;
                    WeylKey kk = k;
                    kk.form |= dz_bit(i);
                    ChartFunction d = c.dz(i);
                    r.add(kk, sign < 0 ? -d : d);
                }
                if (do_antihol && !(k.form & dzbar_bit(i))) {
                    const int sign = popcount_below(k.form, kMaxDim + i) % 2 ? -1 : 1;
                    WeylKey kk = k;
                    kk.form |= dzbar_bit(i);
                    ChartFunction d = c.dzbar(i);
                    r.add(kk, sign < 0 ? -d : d);
                }
                continue;
            }
            if (do_hol) {
                nabla_component(r, k, c, i, true, true, nullptr);
            }
            if (do_antihol) {
                nabla_component(r, k, c, i, false, true, nullptr);
            }
        }
    }
    return r;
}

} // namespace

WeylElement nabla_weyl(const WeylElement &a)
{
    return nabla_parts(a, true, true);
}

WeylElement nabla_weyl_10(const WeylElement &a)
{
    return nabla_parts(a, true, false);
}

WeylElement nabla_weyl_01(const WeylElement &a)
{
    return nabla_parts(a, false, true);
}

WeylElement nabla_along(const VectorField &v, const WeylElement &a)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    for (const auto &[k, c] : a.terms()) {
        for (int i = 0; i < a.dim(); ++i) {
            if (!v.hol[i].is_zero()) {
                nabla_component(r, k, c, i, true, false, &v.hol[i]);
            }
            if (!v.antihol[i].is_zero()) {
                nabla_component(r, k, c, i, false, false, &v.antihol[i]);
            }
        }
    }
    return r;
}

WeylElement iota(const VectorField &v, const WeylElement &a)
{
    WeylElement r(a.geometry(), a.order(), a.level());
    for (const auto &[k, c] : a.terms()) {
        for (int bit = 0; bit < 2 * kMaxDim; ++bit) {
            if (!(k.form & (1u << bit))) {
                continue;
            }
            const int i = bit % kMaxDim;
            const ChartFunction &comp = bit < kMaxDim ? v.hol[i] : v.antihol[i];
            if (comp.is_zero()) {
                continue;
            }
            WeylKey kk = k;
            kk.form = static_cast<std::uint8_t>(k.form & ~(1u << bit));
            const int sign = popcount_below(k.form, bit) % 2 ? -1 : 1;
            ChartFunction v2 = c * comp;
            r.add(kk, sign < 0 ? -v2 : v2);
        }
    }
    return r;
}

WeylElement evaluate_level(const WeylElement &a, int k)
{
    if (k < 1) {
        throw std::invalid_argument("level must be positive");
    }
    if (a.level() != 0) {
        throw std::invalid_argument("element already evaluated");
    }
    WeylElement r(a.geometry(), a.order(), k);
    for (const auto &[key, c] : a.terms()) {
        WeylKey kk = key;
        kk.h = 0;
        PiScalar s(1);
        for (int t = 0; t < key.h; ++t) {
            s *= PiScalar(GaussQ(mpq_class(1, k)));
        }
        r.add(kk, c * s);
    }
    return r;
}

} // namespace fedlab
