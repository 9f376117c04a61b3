#include <fedlab/chart_function.hpp>

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace fedlab
{

int FnKey::degree() const
{
    int d = 0;
    for (auto e : exp) {
        d += e;
    }
    return d;
}

namespace poly
{

void add_term(ChartFunction::Terms &t, const FnKey &k, const GaussQ &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = t.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            t.erase(it);
        }
    }
}

ChartFunction::Terms mul(const ChartFunction::Terms &a, const ChartFunction::Terms &b)
{
    ChartFunction::Terms r;
    for (const auto &[ka, ca] : a) {
        for (const auto &[kb, cb] : b) {
            FnKey k;
            for (std::size_t s = 0; s < k.exp.size(); ++s) {
                k.exp[s] = static_cast<std::uint8_t>(ka.exp[s] + kb.exp[s]);
            }
            k.pi = static_cast<std::int8_t>(ka.pi + kb.pi);
            add_term(r, k, ca * cb);
        }
    }
    return r;
}

ChartFunction::Terms d_polynomial(int dim)
{
    ChartFunction::Terms d;
    d.emplace(FnKey{}, GaussQ(1));
    for (int i = 0; i < dim; ++i) {
        FnKey k;
        k.z(i) = 1;
        k.zbar(i) = 1;
        d.emplace(k, GaussQ(1));
    }
    return d;
}

bool divide_by_d(const ChartFunction::Terms &a, int dim, ChartFunction::Terms &q)
{
    if (dim < 1) {
        return false;
    }
    const auto d = d_polynomial(dim);
    ChartFunction::Terms r = a;
    q.clear();
    while (!r.empty()) {
        auto lead = std::prev(r.end());
        FnKey lk = lead->first;
        if (lk.z(0) == 0 || lk.zbar(0) == 0) {
            return false;
        }
        GaussQ lc = lead->second;
        lk.z(0) -= 1;
        lk.zbar(0) -= 1;
        add_term(q, lk, lc);
        for (const auto &[kd, cd] : d) {
            FnKey k = lk;
            for (std::size_t s = 0; s < k.exp.size(); ++s) {
                k.exp[s] = static_cast<std::uint8_t>(k.exp[s] + kd.exp[s]);
            }
            add_term(r, k, -(lc * cd));
        }
    }
    return true;
}

} // namespace poly

namespace
{

const ChartFunction::Terms &d_power_terms(int dim, int power)
{
    thread_local std::map<std::pair<int, int>, ChartFunction::Terms> cache;
    auto key = std::make_pair(dim, power);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    ChartFunction::Terms t;
    if (power == 0) {
        t.emplace(FnKey{}, GaussQ(1));
    } else {
        t = poly::mul(d_power_terms(dim, power - 1), poly::d_polynomial(dim));
    }
    return cache.emplace(key, std::move(t)).first->second;
}

int combine_dim(const ChartFunction &a, const ChartFunction &b)
{
    if (a.denom_power() > 0 && b.denom_power() > 0 && a.dim() != b.dim()) {
        throw std::invalid_argument("chart functions over different denominators");
    }
    if (a.denom_power() > 0) {
        return a.dim();
    }
    if (b.denom_power() > 0) {
        return b.dim();
    }
    return std::max(a.dim(), b.dim());
}

int combine_jet(int a, int b)
{
    if (a < 0) {
        return b;
    }
    if (b < 0) {
        return a;
    }
    return std::min(a, b);
}

int key_dim(const FnKey &k)
{
    int d = 0;
    for (int i = 0; i < kMaxDim; ++i) {
        if (k.z(i) || k.zbar(i)) {
            d = i + 1;
        }
    }
    return d;
}

} // namespace

ChartFunction::ChartFunction(const PiScalar &c)
{
    for (const auto &[e, v] : c.terms()) {
        FnKey k;
        k.pi = static_cast<std::int8_t>(e);
        num_.emplace(k, v);
    }
}

ChartFunction ChartFunction::z(int i, int dim)
{
    ChartFunction f;
    FnKey k;
    k.z(i) = 1;
    f.num_.emplace(k, GaussQ(1));
    f.dim_ = std::max(dim, i + 1);
    return f;
}

ChartFunction ChartFunction::zbar(int i, int dim)
{
    ChartFunction f;
    FnKey k;
    k.zbar(i) = 1;
    f.num_.emplace(k, GaussQ(1));
    f.dim_ = std::max(dim, i + 1);
    return f;
}

ChartFunction ChartFunction::d_power(int power, int dim)
{
    ChartFunction f;
    f.dim_ = dim;
    if (power >= 0) {
        f.num_ = d_power_terms(dim, power);
    } else {
        f.num_.emplace(FnKey{}, GaussQ(1));
        f.denom_ = -power;
    }
    return f;
}

ChartFunction ChartFunction::from_terms(Terms numerator, int denom_power, int dim, int jet_order)
{
    if (denom_power < 0) {
        throw std::invalid_argument("negative denominator power");
    }
    if (jet_order >= 0 && denom_power > 0) {
        throw std::invalid_argument("jets carry no D denominator");
    }
    ChartFunction f;
    f.num_ = std::move(numerator);
    for (auto it = f.num_.begin(); it != f.num_.end();) {
        it = it->second.is_zero() ? f.num_.erase(it) : std::next(it);
    }
    f.denom_ = denom_power;
    f.dim_ = dim;
    for (const auto &[k, c] : f.num_) {
        f.dim_ = std::max(f.dim_, key_dim(k));
    }
    f.jet_ = jet_order;
    f.truncate_jet();
    f.canonicalize();
    return f;
}

bool ChartFunction::is_constant() const
{
    if (denom_ != 0) {
        return false;
    }
    return std::all_of(num_.begin(), num_.end(), [](const auto &t) { return t.first.degree() == 0; });
}

PiScalar ChartFunction::constant_value() const
{
    if (!is_constant()) {
        throw std::logic_error("chart function is not constant: " + str());
    }
    PiScalar s;
    for (const auto &[k, c] : num_) {
        s += PiScalar(c, k.pi);
    }
    return s;
}

bool ChartFunction::is_holomorphic() const
{
    if (denom_ != 0) {
        return false;
    }
    for (const auto &[k, c] : num_) {
        for (int i = 0; i < kMaxDim; ++i) {
            if (k.zbar(i)) {
                return false;
            }
        }
    }
    return true;
}

bool ChartFunction::is_antiholomorphic() const
{
    if (denom_ != 0) {
        return false;
    }
    for (const auto &[k, c] : num_) {
        for (int i = 0; i < kMaxDim; ++i) {
            if (k.z(i)) {
                return false;
            }
        }
    }
    return true;
}

bool ChartFunction::is_pi_free() const
{
    return std::all_of(num_.begin(), num_.end(), [](const auto &t) { return t.first.pi == 0; });
}

int ChartFunction::zbar_degree() const
{
    int d = -1;
    for (const auto &[k, c] : num_) {
        int s = 0;
        for (int i = 0; i < kMaxDim; ++i) {
            s += k.zbar(i);
        }
        d = std::max(d, s);
    }
    return d;
}

int ChartFunction::z_degree() const
{
    int d = -1;
    for (const auto &[k, c] : num_) {
        int s = 0;
        for (int i = 0; i < kMaxDim; ++i) {
            s += k.z(i);
        }
        d = std::max(d, s);
    }
    return d;
}

void ChartFunction::truncate_jet()
{
    if (jet_ < 0) {
        return;
    }
    for (auto it = num_.begin(); it != num_.end();) {
        it = it->first.degree() > jet_ ? num_.erase(it) : std::next(it);
    }
}

void ChartFunction::canonicalize()
{
    if (num_.empty()) {
        denom_ = 0;
        return;
    }
    Terms q;
    while (denom_ > 0 && poly::divide_by_d(num_, dim_, q)) {
        num_.swap(q);
        --denom_;
    }
}

ChartFunction &ChartFunction::operator+=(const ChartFunction &o)
{
    if (o.is_zero()) {
        return *this;
    }
    const int dim = combine_dim(*this, o);
    const int m = std::max(denom_, o.denom_);
    jet_ = combine_jet(jet_, o.jet_);
    if (denom_ == o.denom_) {
        for (const auto &[k, c] : o.num_) {
            poly::add_term(num_, k, c);
        }
    } else {
        Terms a = denom_ == m ? std::move(num_) : poly::mul(num_, d_power_terms(dim, m - denom_));
        Terms b = o.denom_ == m ? o.num_ : poly::mul(o.num_, d_power_terms(dim, m - o.denom_));
        for (const auto &[k, c] : b) {
            poly::add_term(a, k, c);
        }
        num_ = std::move(a);
    }
    denom_ = m;
    dim_ = dim;
    truncate_jet();
    canonicalize();
    return *this;
}

ChartFunction &ChartFunction::operator-=(const ChartFunction &o)
{
    return *this += -o;
}

ChartFunction operator*(const ChartFunction &a, const ChartFunction &b)
{
    ChartFunction r;
    if (a.is_zero() || b.is_zero()) {
        return r;
    }
    r.dim_ = combine_dim(a, b);
    r.jet_ = combine_jet(a.jet_, b.jet_);
    if (r.jet_ >= 0 && (a.denom_ > 0 || b.denom_ > 0)) {
        throw std::invalid_argument("jets carry no D denominator");
    }
    r.num_ = poly::mul(a.num_, b.num_);
    r.denom_ = a.denom_ + b.denom_;
    r.truncate_jet();
    // a product of canonical factors can only become reducible through cancellation in the numerator
    r.canonicalize();
    return r;
}

ChartFunction &ChartFunction::operator*=(const ChartFunction &o)
{
    *this = *this * o;
    return *this;
}

ChartFunction &ChartFunction::operator*=(const PiScalar &s)
{
    if (s.is_monomial() && s.terms().begin()->first == 0) {
        const GaussQ &c = s.terms().begin()->second;
        if (c.is_one()) {
            return *this;
        }
        for (auto &[k, v] : num_) {
            v *= c;
        }
        return *this;
    }
    return *this *= ChartFunction(s);
}

ChartFunction ChartFunction::operator-() const
{
    ChartFunction r = *this;
    for (auto &[k, v] : r.num_) {
        v = -v;
    }
    return r;
}

bool operator==(const ChartFunction &a, const ChartFunction &b)
{
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() && b.is_zero();
    }
    return a.denom_ == b.denom_ && a.num_ == b.num_;
}

ChartFunction ChartFunction::dz(int i) const
{
    if (jet_ == 0) {
        throw std::runtime_error("jet accuracy exceeded");
    }
    // d(N/D^m) = (dN * D - m N dD) / D^(m+1), dD/dz^i = zbar^i
    Terms dn;
    for (const auto &[k, c] : num_) {
        if (k.z(i) == 0) {
            continue;
        }
        FnKey kk = k;
        kk.z(i) -= 1;
        poly::add_term(dn, kk, c * GaussQ(static_cast<long>(k.z(i))));
    }
    ChartFunction r;
    r.dim_ = std::max(dim_, i + 1);
    r.jet_ = jet_ < 0 ? -1 : jet_ - 1;
    if (denom_ == 0) {
        r.num_ = std::move(dn);
        r.truncate_jet();
        return r;
    }
    Terms out = poly::mul(dn, d_power_terms(r.dim_, 1));
    for (const auto &[k, c] : num_) {
        FnKey kk = k;
        kk.zbar(i) += 1;
        poly::add_term(out, kk, c * GaussQ(static_cast<long>(-denom_)));
    }
    r.num_ = std::move(out);
    r.denom_ = denom_ + 1;
    r.canonicalize();
    return r;
}

ChartFunction ChartFunction::dzbar(int i) const
{
    return conj().dz(i).conj();
}

ChartFunction ChartFunction::conj() const
{
    ChartFunction r;
    r.dim_ = dim_;
    r.denom_ = denom_;
    r.jet_ = jet_;
    for (const auto &[k, c] : num_) {
        FnKey kk;
        kk.pi = k.pi;
        for (int i = 0; i < kMaxDim; ++i) {
            kk.z(i) = k.zbar(i);
            kk.zbar(i) = k.z(i);
        }
        r.num_.emplace(kk, c.conj());
    }
    return r;
}

ChartFunction ChartFunction::pow(unsigned e) const
{
    ChartFunction r(1);
    ChartFunction b = *this;
    while (e) {
        if (e & 1u) {
            r *= b;
        }
        e >>= 1u;
        if (e) {
            b *= b;
        }
    }
    return r;
}

ChartFunction ChartFunction::to_jet(int order) const
{
    if (denom_ != 0) {
        throw std::invalid_argument("cannot form a jet of a function with D denominator");
    }
    ChartFunction r = *this;
    r.jet_ = combine_jet(jet_, order);
    r.truncate_jet();
    return r;
}

std::map<int, ChartFunction::Terms> ChartFunction::split_by_pi() const
{
    std::map<int, Terms> out;
    for (const auto &[k, c] : num_) {
        FnKey kk = k;
        kk.pi = 0;
        out[k.pi].emplace(kk, c);
    }
    return out;
}

PiScalar ChartFunction::evaluate(std::span<const GaussQ> point) const
{
    std::vector<GaussQ> bars;
    for (const auto &p : point) {
        bars.push_back(p.conj());
    }
    return evaluate(point, bars);
}

PiScalar ChartFunction::evaluate(std::span<const GaussQ> zs, std::span<const GaussQ> zbars) const
{
    auto power = [](const GaussQ &b, unsigned e) {
        GaussQ r(1);
        for (unsigned k = 0; k < e; ++k) {
            r *= b;
        }
        return r;
    };
    PiScalar sum;
    for (const auto &[k, c] : num_) {
        GaussQ v = c;
        for (int i = 0; i < kMaxDim; ++i) {
            if (k.z(i)) {
                v *= power(zs[static_cast<std::size_t>(i)], k.z(i));
            }
            if (k.zbar(i)) {
                v *= power(zbars[static_cast<std::size_t>(i)], k.zbar(i));
            }
        }
        sum += PiScalar(v, k.pi);
    }
    if (denom_ > 0) {
        GaussQ d(1);
        for (int i = 0; i < dim_; ++i) {
            d += zs[static_cast<std::size_t>(i)] * zbars[static_cast<std::size_t>(i)];
        }
        sum *= PiScalar(power(d, static_cast<unsigned>(denom_)).inverse());
    }
    return sum;
}

ChartFunction ChartFunction::at_zbar_zero() const
{
    Terms t;
    for (const auto &[k, c] : num_) {
        bool has_bar = false;
        for (int i = 0; i < kMaxDim; ++i) {
            has_bar = has_bar || k.zbar(i) != 0;
        }
        if (!has_bar) {
            t.emplace(k, c);
        }
    }
    return from_terms(std::move(t), 0, dim_, jet_);
}

std::string ChartFunction::str() const
{
    if (num_.empty()) {
        return "0";
    }
    const bool indexed = dim_ > 1;
    std::string out;
    for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
        const auto &[k, c] = *it;
        std::string cs = c.str();
        bool negative = c.is_real() && sgn(c.re()) < 0;
        if (negative) {
            cs = (-c).str();
        }
        if (!out.empty()) {
            out += negative ? " - " : " + ";
        } else if (negative) {
            out += "-";
        }
        std::string mono;
        auto factor = [&](const std::string &name, int e) {
            if (e == 0) {
                return;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += name;
            if (e != 1) {
                mono += "^" + std::to_string(e);
            }
        };
        for (int i = 0; i < kMaxDim; ++i) {
            factor(indexed ? "z" + std::to_string(i + 1) : "z", k.z(i));
        }
        for (int i = 0; i < kMaxDim; ++i) {
            factor(indexed ? "zbar" + std::to_string(i + 1) : "zbar", k.zbar(i));
        }
        factor("pi", k.pi);
        bool compound = !c.is_real() && sgn(c.re()) != 0;
        if (compound) {
            cs = "(" + cs + ")";
        }
        if (mono.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    if (denom_ > 0) {
        out = "(" + out + ")*D^-" + std::to_string(denom_);
    }
    if (jet_ >= 0) {
        out += " + O(" + std::to_string(jet_ + 1) + ")";
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const ChartFunction &f)
{
    return os << f.str();
}

} // namespace fedlab
