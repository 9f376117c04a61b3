#ifndef FEDLAB_SCALAR_HPP
#define FEDLAB_SCALAR_HPP

#include <compare>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fedlab
{

// Gaussian rational a + b i with exact GMP rationals.
class GaussQ
{
public:
    GaussQ() = default;
    GaussQ(long v) : re_(v) {}
    GaussQ(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussQ i() { return GaussQ(0, 1); }
    static GaussQ frac(long p, long q) { return GaussQ(mpq_class(p, q)); }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussQ conj() const { return GaussQ(re_, -im_); }
    GaussQ inverse() const;

    GaussQ &operator+=(const GaussQ &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussQ &operator-=(const GaussQ &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussQ &operator*=(const GaussQ &o);
    GaussQ &operator/=(const GaussQ &o) { return *this *= o.inverse(); }

    friend GaussQ operator+(GaussQ a, const GaussQ &b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ &b) { return a -= b; }
    friend GaussQ operator*(GaussQ a, const GaussQ &b) { return a *= b; }
    friend GaussQ operator/(GaussQ a, const GaussQ &b) { return a /= b; }
    GaussQ operator-() const { return GaussQ(-re_, -im_); }

    friend bool operator==(const GaussQ &a, const GaussQ &b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    // "p/q", "p/q i", "p/q+r/s i", "-i".
    std::string str() const;
    static GaussQ parse(std::string_view text);

    std::complex<double> to_complex() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream &operator<<(std::ostream &os, const GaussQ &q);

// Laurent polynomial in the opaque transcendental pi with Gaussian-rational
// coefficients: sum_e c_e pi^e.
class PiScalar
{
public:
    PiScalar() = default;
    PiScalar(long v) : PiScalar(GaussQ(v)) {}
    PiScalar(const GaussQ &c, int pi_power = 0)
    {
        if (!c.is_zero()) {
            terms_.emplace(pi_power, c);
        }
    }
    static PiScalar pi(int power = 1) { return PiScalar(GaussQ(1), power); }

    const std::map<int, GaussQ> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    // True when no pi power other than pi^0 occurs.
    bool is_pi_free() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    GaussQ coefficient(int pi_power) const;

    PiScalar conj() const;
    PiScalar inverse() const;

    PiScalar &operator+=(const PiScalar &o);
    PiScalar &operator-=(const PiScalar &o);
    PiScalar &operator*=(const PiScalar &o);
    PiScalar &operator/=(const PiScalar &o) { return *this *= o.inverse(); }

    friend PiScalar operator+(PiScalar a, const PiScalar &b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar &b) { return a -= b; }
    friend PiScalar operator*(PiScalar a, const PiScalar &b) { return a *= b; }
    friend PiScalar operator/(PiScalar a, const PiScalar &b) { return a /= b; }
    PiScalar operator-() const;

    friend bool operator==(const PiScalar &a, const PiScalar &b) { return a.terms_ == b.terms_; }

    std::string str() const;
    std::complex<double> to_complex() const;

private:
    std::map<int, GaussQ> terms_;
};

std::ostream &operator<<(std::ostream &os, const PiScalar &s);

mpq_class factorial(unsigned n);

} // namespace fedlab

#endif
