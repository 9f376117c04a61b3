#ifndef FEDLAB_WEYL_HPP
#define FEDLAB_WEYL_HPP

#include <map>
#include <string>
#include <vector>

#include <fedlab/geometry.hpp>

namespace fedlab
{

/// y^a ybar^b hbar^h times a wedge of dz / dzbar generators.
/// Form bit i is dz^i, bit kMaxDim + j is dzbar^j; the canonical wedge order is ascending bit order.
struct WeylKey {
    std::array<std::uint8_t, kMaxDim> y{};
    std::array<std::uint8_t, kMaxDim> yb{};
    std::uint8_t h = 0;
    std::uint8_t form = 0;

    int y_degree() const;
    int ybar_degree() const;
    int sym_degree() const { return y_degree() + ybar_degree(); }
    int form_degree() const;
    /// Fedosov weight |y| = |ybar| = 1, |hbar| = 2.
    int weight() const { return sym_degree() + 2 * h; }
    /// Quantizable weight |y| = 0, |ybar| = |hbar| = 1.
    int quantizable_weight() const { return ybar_degree() + h; }
    int dz_count() const;
    int dzbar_count() const;

    auto operator<=>(const WeylKey &) const = default;
};

inline constexpr std::uint8_t dz_bit(int i) { return static_cast<std::uint8_t>(1u << i); }
inline constexpr std::uint8_t dzbar_bit(int j) { return static_cast<std::uint8_t>(1u << (kMaxDim + j)); }

/// Truncated section of the Weyl bundle tensored with forms on one chart.
/// A positive level k means hbar has been evaluated at 1/k (no hbar exponents are stored then).
class WeylElement
{
public:
    using Terms = std::map<WeylKey, ChartFunction>;

    WeylElement() = default;
    WeylElement(GeometryPtr geom, int order, int level = 0);

    static WeylElement scalar(GeometryPtr geom, int order, const ChartFunction &f);
    static WeylElement monomial(GeometryPtr geom, int order, const WeylKey &key, const ChartFunction &f = 1);
    static WeylElement y(GeometryPtr geom, int order, int i);
    static WeylElement ybar(GeometryPtr geom, int order, int j);
    static WeylElement hbar(GeometryPtr geom, int order);

    const GeometryPtr &geometry() const { return geom_; }
    const KahlerGeometry &geom() const { return *geom_; }
    int order() const { return order_; }
    int level() const { return level_; }
    int dim() const { return geom_ ? geom_->dim() : 0; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * key, dropping it when it exceeds the truncation weight.
    void add(const WeylKey &key, const ChartFunction &c);
    ChartFunction coefficient(const WeylKey &key) const;

    WeylElement &operator+=(const WeylElement &o);
    WeylElement &operator-=(const WeylElement &o);
    friend WeylElement operator+(WeylElement a, const WeylElement &b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement &b) { return a -= b; }
    WeylElement operator-() const;
    /// Coefficient-wise multiplication by a function (forms and generators untouched).
    friend WeylElement operator*(const ChartFunction &f, const WeylElement &a);
    friend WeylElement operator*(const PiScalar &s, const WeylElement &a);
    friend WeylElement operator*(const WeylElement &a, const PiScalar &s) { return s * a; }
    friend WeylElement operator*(const WeylElement &a, const ChartFunction &f) { return f * a; }
    friend bool operator==(const WeylElement &a, const WeylElement &b) { return a.terms_ == b.terms_; }

    WeylElement with_order(int order) const;
    /// Keep only terms with Fedosov weight <= w.
    WeylElement truncated(int w) const;
    /// Keep terms passing the predicate.
    template <class Pred>
    WeylElement filtered(Pred pred) const
    {
        WeylElement r(geom_, order_, level_);
        for (const auto &[k, c] : terms_) {
            if (pred(k)) {
                r.terms_.emplace(k, c);
            }
        }
        return r;
    }

    int y_degree() const;
    int ybar_degree() const;
    int hbar_degree() const;
    int max_weight() const;
    /// Lowest Fedosov weight of a stored term (order()+1 when zero).
    int min_weight() const;
    /// Multiply by hbar^shift (shift may be negative; throws if an exponent would go negative).
    WeylElement hbar_shift(int shift) const;

    /// Sorted "monomial : coefficient" lines.
    std::string serialize() const;

private:
    void check_compatible(const WeylElement &o) const;

    GeometryPtr geom_;
    int order_ = 0;
    int level_ = 0;
    Terms terms_;
};

/// Fiberwise Wick product, truncated at Fedosov weight max_weight (default: the operands' order).
WeylElement wick_product(const WeylElement &a, const WeylElement &b, int max_weight = -1);
/// (1/hbar)[a, b]_star with the graded sign; the product is formed at weight order+2 before division.
WeylElement bracket_over_hbar(const WeylElement &a, const WeylElement &b);

/// Pure-hbar coefficients: entry h is the coefficient of hbar^h (level elements have one entry).
std::vector<ChartFunction> symbol(const WeylElement &a);
/// Combine an hbar-polynomial into a weight-0 Weyl element.
WeylElement from_hbar_poly(GeometryPtr geom, int order, const std::vector<ChartFunction> &f, int level = 0);

/// delta = dz^i ^ d/dy^i + dzbar^j ^ d/dybar^j.
WeylElement delta(const WeylElement &a);
/// Standard homotopy: one form generator replaced by its symmetric partner, divided by p+q.
WeylElement delta_inv(const WeylElement &a);
/// Inverse of the dz-part of delta on (1,1)-forms dz^i ^ dzbar^j: dz^i -> y^i, divide by (y-degree + 1).
WeylElement delta10_inv(const WeylElement &a);

/// Levi-Civita derivative on Weyl-valued forms; the new one-form is wedged on the left.
WeylElement nabla_weyl(const WeylElement &a);
/// Only the dz (or dzbar) part of nabla.
WeylElement nabla_weyl_10(const WeylElement &a);
WeylElement nabla_weyl_01(const WeylElement &a);
/// Covariant derivative along a vector field (form degree unchanged).
WeylElement nabla_along(const VectorField &v, const WeylElement &a);
/// Contraction of the form part with V from the left.
WeylElement iota(const VectorField &v, const WeylElement &a);

/// hbar -> 1/k.
WeylElement evaluate_level(const WeylElement &a, int k);

/// Human-readable key "y^2 ybar hbar dz dzbar1".
std::string key_str(const WeylKey &k, int dim);

} // namespace fedlab

#endif
