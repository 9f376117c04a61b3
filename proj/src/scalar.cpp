#include <fedlab/scalar.hpp>

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace fedlab
{

GaussQ GaussQ::inverse() const
{
    mpq_class n = re_ * re_ + im_ * im_;
    if (sgn(n) == 0) {
        throw std::domain_error("division by zero Gaussian rational");
    }
    return GaussQ(re_ / n, -im_ / n);
}

GaussQ &GaussQ::operator*=(const GaussQ &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

std::string GaussQ::str() const
{
    if (sgn(im_) == 0) {
        return re_.get_str();
    }
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else {
        imag = im_.get_str() + " i";
    }
    if (sgn(re_) == 0) {
        return imag;
    }
    if (imag[0] == '-') {
        return re_.get_str() + imag;
    }
    return re_.get_str() + "+" + imag;
}

namespace
{

mpq_class parse_rational(std::string_view t)
{
    std::string s(t);
    if (s.empty() || s == "+") {
        return 1;
    }
    if (s == "-") {
        return -1;
    }
    if (s[0] == '+') {
        s.erase(0, 1);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational '" + std::string(t) + "'");
    }
    if (sgn(q.get_den()) == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(t) + "'");
    }
    q.canonicalize();
    return q;
}

} // namespace

GaussQ GaussQ::parse(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty number");
    }
    if (s.back() != 'i') {
        return GaussQ(parse_rational(s));
    }
    s.pop_back();
    // split real and imaginary parts at the last sign not at position 0
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        return GaussQ(0, parse_rational(s));
    }
    return GaussQ(parse_rational(s.substr(0, split)), parse_rational(s.substr(split)));
}

std::complex<double> GaussQ::to_complex() const
{
    return {re_.get_d(), im_.get_d()};
}

std::ostream &operator<<(std::ostream &os, const GaussQ &q)
{
    return os << q.str();
}

GaussQ PiScalar::coefficient(int pi_power) const
{
    auto it = terms_.find(pi_power);
    return it == terms_.end() ? GaussQ() : it->second;
}

PiScalar PiScalar::conj() const
{
    PiScalar r;
    for (const auto &[e, c] : terms_) {
        r.terms_.emplace(e, c.conj());
    }
    return r;
}

PiScalar PiScalar::inverse() const
{
    if (!is_monomial()) {
        throw std::domain_error("cannot invert non-monomial element of Q(i)[pi, 1/pi]: " + str());
    }
    const auto &[e, c] = *terms_.begin();
    return PiScalar(c.inverse(), -e);
}

PiScalar &PiScalar::operator+=(const PiScalar &o)
{
    for (const auto &[e, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }
    return *this;
}

PiScalar &PiScalar::operator-=(const PiScalar &o)
{
    return *this += -o;
}

PiScalar &PiScalar::operator*=(const PiScalar &o)
{
    PiScalar r;
    for (const auto &[e1, c1] : terms_) {
        for (const auto &[e2, c2] : o.terms_) {
            r += PiScalar(c1 * c2, e1 + e2);
        }
    }
    *this = std::move(r);
    return *this;
}

PiScalar PiScalar::operator-() const
{
    PiScalar r;
    for (const auto &[e, c] : terms_) {
        r.terms_.emplace(e, -c);
    }
    return r;
}

std::string PiScalar::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[e, c] : terms_) {
        if (!out.empty()) {
            out += " + ";
        }
        std::string cs = c.str();
        bool compound = !c.is_real() && sgn(c.re()) != 0;
        if (e == 0) {
            out += compound ? "(" + cs + ")" : cs;
            continue;
        }
        out += "(" + cs + ")*pi";
        if (e != 1) {
            out += "^" + std::to_string(e);
        }
    }
    return out;
}

std::complex<double> PiScalar::to_complex() const
{
    std::complex<double> r = 0;
    for (const auto &[e, c] : terms_) {
        r += c.to_complex() * std::pow(3.14159265358979323846, e);
    }
    return r;
}

std::ostream &operator<<(std::ostream &os, const PiScalar &s)
{
    return os << s.str();
}

mpq_class factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return mpq_class(f);
}

} // namespace fedlab
