#ifndef FEDLAB_CHART_FUNCTION_HPP
#define FEDLAB_CHART_FUNCTION_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include <fedlab/scalar.hpp>

namespace fedlab
{

inline constexpr int kMaxDim = 4;

// Exponents of z^1..z^4, zbar^1..zbar^4 and of the opaque constant pi.
struct FnKey {
    std::array<std::uint8_t, 2 * kMaxDim> exp{};
    std::int8_t pi = 0;

    std::uint8_t &z(int i) { return exp[i]; }
    std::uint8_t &zbar(int i) { return exp[kMaxDim + i]; }
    std::uint8_t z(int i) const { return exp[i]; }
    std::uint8_t zbar(int i) const { return exp[kMaxDim + i]; }
    int degree() const;

    auto operator<=>(const FnKey &) const = default;
};

/// Exact function on a coordinate chart: N(z, zbar, pi) / D^m with
/// D = 1 + sum_i z^i zbar^i, or a Taylor jet at the origin truncated at a
/// total degree. Canonical form keeps D out of N, so equality is structural.
class ChartFunction
{
public:
    using Terms = std::map<FnKey, GaussQ>;

    ChartFunction() = default;
    ChartFunction(long c) : ChartFunction(PiScalar(c)) {}
    ChartFunction(const GaussQ &c) : ChartFunction(PiScalar(c)) {}
    ChartFunction(const PiScalar &c);

    static ChartFunction z(int i, int dim = 1);
    static ChartFunction zbar(int i, int dim = 1);
    /// D^power for any integer power (negative powers are denominators).
    static ChartFunction d_power(int power, int dim = 1);
    static ChartFunction from_terms(Terms numerator, int denom_power, int dim, int jet_order = -1);

    const Terms &numerator() const { return num_; }
    int denom_power() const { return denom_; }
    int dim() const { return dim_; }
    bool is_jet() const { return jet_ >= 0; }
    int jet_order() const { return jet_; }

    bool is_zero() const { return num_.empty(); }
    bool is_constant() const;
    /// Constant value; throws if not constant.
    PiScalar constant_value() const;
    bool is_holomorphic() const;
    bool is_antiholomorphic() const;
    bool is_pi_free() const;
    /// Highest total degree in zbar of the numerator (-1 for zero).
    int zbar_degree() const;
    int z_degree() const;

    ChartFunction &operator+=(const ChartFunction &o);
    ChartFunction &operator-=(const ChartFunction &o);
    ChartFunction &operator*=(const ChartFunction &o);
    ChartFunction &operator*=(const PiScalar &s);
    friend ChartFunction operator+(ChartFunction a, const ChartFunction &b) { return a += b; }
    friend ChartFunction operator-(ChartFunction a, const ChartFunction &b) { return a -= b; }
    friend ChartFunction operator*(const ChartFunction &a, const ChartFunction &b);
    friend ChartFunction operator*(ChartFunction a, const PiScalar &s) { return a *= s; }
    friend ChartFunction operator*(const PiScalar &s, ChartFunction a) { return a *= s; }
    ChartFunction operator-() const;

    friend bool operator==(const ChartFunction &a, const ChartFunction &b);

    ChartFunction dz(int i) const;
    ChartFunction dzbar(int i) const;
    ChartFunction conj() const;
    ChartFunction pow(unsigned e) const;
    /// Truncate to a jet of the given order (only valid for D-free functions).
    ChartFunction to_jet(int order) const;

    /// Numerator coefficient split by pi power.
    std::map<int, Terms> split_by_pi() const;

    /// Exact value at z = point (zbar = conj(point)).
    PiScalar evaluate(std::span<const GaussQ> point) const;
    /// Value with z and zbar substituted independently.
    PiScalar evaluate(std::span<const GaussQ> zs, std::span<const GaussQ> zbars) const;

    /// Restriction to zbar = 0 (a holomorphic polynomial; throws for D-free jets only if invalid).
    ChartFunction at_zbar_zero() const;

    std::string str() const;

private:
    void canonicalize();
    void truncate_jet();

    Terms num_;
    int denom_ = 0;
    int dim_ = 0;
    int jet_ = -1;
};

std::ostream &operator<<(std::ostream &os, const ChartFunction &f);

/// Polynomial helpers on numerator maps.
namespace poly
{
void add_term(ChartFunction::Terms &t, const FnKey &k, const GaussQ &c);
ChartFunction::Terms mul(const ChartFunction::Terms &a, const ChartFunction::Terms &b);
ChartFunction::Terms d_polynomial(int dim);
// Exact division by D; returns false (leaving q unspecified) when D does not divide a.
bool divide_by_d(const ChartFunction::Terms &a, int dim, ChartFunction::Terms &q);
} // namespace poly

} // namespace fedlab

#endif
