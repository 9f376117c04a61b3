#ifndef FEDLAB_FEDOSOV_HPP
#define FEDLAB_FEDOSOV_HPP

#include <string>
#include <vector>

#include <fedlab/weyl.hpp>

namespace fedlab
{

/// ricci: alpha_{i jbar} = Ric_{i jbar}. canonical: alpha = -Ric (curvature of the canonical bundle),
/// the class under which f0 - (hbar/4pi) Laplacian f0 quantizes Killing potentials in these conventions.
enum class AlphaChoice { zero, ricci, canonical, custom };

/// Polynomial in hbar with chart-function coefficients; entry i is the hbar^i coefficient.
using HbarPoly = std::vector<ChartFunction>;

struct FedosovConnection {
    GeometryPtr geom;
    AlphaChoice alpha_choice = AlphaChoice::zero;
    /// alpha_{i jbar}; the closed (1,1)-form is (i/2pi) alpha_{i jbar} dz^i ^ dzbar^j.
    FnMatrix alpha;
    /// Certified truncation order N.
    int order = 0;
    /// Internal order used for gamma (N + 2 guard weights).
    int work_order = 0;
    WeylElement gamma_delta;
    WeylElement I;
    WeylElement gamma;
    /// Weyl curvature term with (1/hbar)[R, -] = nabla^2.
    WeylElement r_nabla;
    /// -omega_{i jbar} dz dzbar + hbar alpha_{i jbar} dz dzbar, i.e. (2 pi hbar / i) K.
    WeylElement source;
    /// Fedosov-equation defect truncated to weight <= order.
    WeylElement residual;
    int iterations = 0;

    /// Karabegov form as text: K = -(1/hbar) omega + alpha.
    std::string karabegov_str() const;
};

struct FlatSection {
    WeylElement of;
    HbarPoly symbol_f;
    /// Highest weight through which D(of) was verified to vanish.
    int residual_weight = -1;
    int ybar_degree() const { return of.ybar_degree(); }
    int hbar_degree() const { return of.hbar_degree(); }
};

struct StarExpansion {
    /// coefficients[i] = C_i(f, g)
    std::vector<ChartFunction> coefficients;
};

/// Fedosov connection with Karabegov form -(1/hbar) omega + alpha. alpha empty means zero.
FedosovConnection solve_fedosov(GeometryPtr geom, AlphaChoice choice, int order, const FnMatrix &custom_alpha = {});
/// Recomputed from scratch, truncated to weights <= conn.order.
WeylElement fedosov_residual(const FedosovConnection &conn);

/// D(a) = nabla a - delta a + (1/hbar)[I, a] at a's order and level (I is evaluated at the level when needed).
WeylElement fedosov_d(const FedosovConnection &conn, const WeylElement &a);
/// Terms of a with Fedosov weight <= w.
bool vanishes_to_weight(const WeylElement &a, int w);

FlatSection flat_section(const FedosovConnection &conn, const HbarPoly &f);
inline FlatSection flat_section(const FedosovConnection &conn, const ChartFunction &f)
{
    return flat_section(conn, HbarPoly{f});
}
StarExpansion star_product(const FedosovConnection &conn, const HbarPoly &f, const HbarPoly &g);
inline StarExpansion star_product(const FedosovConnection &conn, const ChartFunction &f, const ChartFunction &g)
{
    return star_product(conn, HbarPoly{f}, HbarPoly{g});
}

HbarPoly hbar_add(const HbarPoly &a, const HbarPoly &b);
HbarPoly hbar_scale(const HbarPoly &a, const PiScalar &s);
std::string hbar_str(const HbarPoly &a);

} // namespace fedlab

#endif
