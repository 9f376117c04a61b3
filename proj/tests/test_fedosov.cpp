#include "support.hpp"

#include <fedlab/weyl.hpp>

using namespace fedlab;
using testing::cp1;
using testing::ex;
using testing::flat1;
using testing::mu;
using testing::oracle;

namespace
{

const PiScalar kIOver2Pi(GaussQ(0, mpq_class(1, 2)), -1);

ChartFunction coeff(const StarExpansion &e, std::size_t i)
{
    return i < e.coefficients.size() ? e.coefficients[i] : ChartFunction();
}

} // namespace

TEST_SUITE("fedosov")
{
    TEST_CASE("flat connection in closed form")
    {
        const auto &c = testing::conn(flat1(), AlphaChoice::zero, 6);
        CHECK(c.residual.is_zero());
        CHECK(fedosov_residual(c).is_zero());
        CHECK(c.I.is_zero());
        CHECK(c.r_nabla.is_zero());
    }

    TEST_CASE("cp1 flatness for every alpha")
    {
        for (auto a : {AlphaChoice::zero, AlphaChoice::ricci, AlphaChoice::canonical}) {
            const auto &c = testing::conn(cp1(), a, 6);
            CHECK(c.residual.is_zero());
            CHECK(fedosov_residual(c).is_zero());
        }
    }

    TEST_CASE("perturbed gamma is caught")
    {
        FedosovConnection c = testing::conn(cp1(), AlphaChoice::ricci, 6);
        WeylKey k;
        k.y[0] = 1;
        k.yb[0] = 1;
        k.form = dzbar_bit(0);
        c.gamma.add(k, 1);
        CHECK_FALSE(fedosov_residual(c).is_zero());
    }

    TEST_CASE("Karabegov form bookkeeping")
    {
        const auto &c = testing::conn(cp1(), AlphaChoice::ricci, 6);
        CHECK(c.alpha[0][0] == oracle("cp1.ricci"));
        CHECK(c.karabegov_str().find("-(1/hbar) omega") != std::string::npos);
        const auto &bt = testing::conn(cp1(), AlphaChoice::canonical, 6);
        CHECK(bt.alpha[0][0] == -oracle("cp1.ricci"));
    }

    TEST_CASE("flat sections")
    {
        const auto &f = testing::conn(flat1(), AlphaChoice::zero, 6);
        const FlatSection s = flat_section(f, ex("z*zbar"));
        // O_f = (z+y)(zbar+ybar)
        WeylElement expected = WeylElement::scalar(flat1(), 6, ex("z*zbar"));
        WeylKey y, yb, yyb;
        y.y[0] = 1;
        yb.yb[0] = 1;
        yyb.y[0] = 1;
        yyb.yb[0] = 1;
        expected.add(y, ex("zbar"));
        expected.add(yb, ex("z"));
        expected.add(yyb, 1);
        CHECK(s.of == expected);
        CHECK(flat_section(testing::conn(cp1(), AlphaChoice::ricci, 6), ChartFunction(1)).of ==
              WeylElement::scalar(cp1(), 6, 1));
        const auto &c = testing::conn(cp1(), AlphaChoice::ricci, 6);
        const FlatSection m = flat_section(c, mu(1));
        CHECK(symbol(m.of)[0] == mu(1));
        CHECK(m.residual_weight >= 6);
    }

    TEST_CASE("flat star product")
    {
        const auto &f = testing::conn(flat1(), AlphaChoice::zero, 6);
        const StarExpansion zzb = star_product(f, ex("z"), ex("zbar"));
        CHECK(coeff(zzb, 0) == ex("z*zbar"));
        CHECK(coeff(zzb, 1) == oracle("flat.C1.z_zbar"));
        CHECK(coeff(zzb, 2).is_zero());
        const StarExpansion zbz = star_product(f, ex("zbar"), ex("z"));
        CHECK(coeff(zbz, 1).is_zero());
    }

    TEST_CASE("leading noncommutativity")
    {
        for (auto a : {AlphaChoice::ricci, AlphaChoice::canonical}) {
            const auto &c = testing::conn(cp1(), a, 6);
            for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 3}}) {
                const StarExpansion fg = star_product(c, mu(i), mu(j));
                const StarExpansion gf = star_product(c, mu(j), mu(i));
                CHECK(coeff(fg, 1) - coeff(gf, 1) == poisson(*cp1(), mu(i), mu(j)) * kIOver2Pi);
            }
            CHECK(coeff(star_product(c, mu(1), mu(2)), 1) == oracle("cp1.C1.mu1_mu2"));
            CHECK(coeff(star_product(c, mu(2), mu(1)), 1) == oracle("cp1.C1.mu2_mu1"));
            CHECK(coeff(star_product(c, mu(2), mu(3)), 1) == oracle("cp1.C1.mu2_mu3"));
        }
    }

    TEST_CASE("Wick type")
    {
        const auto &c = testing::conn(cp1(), AlphaChoice::ricci, 6);
        const ChartFunction f = mu(1) * ex("z") + ex("zbar^2 D^-1");
        const StarExpansion hol = star_product(c, f, ex("z^3 + 2 i z"));
        const StarExpansion anti = star_product(c, ex("zbar^2"), f);
        for (std::size_t i = 1; i <= 3; ++i) {
            CHECK(coeff(hol, i).is_zero());
            CHECK(coeff(anti, i).is_zero());
        }
        CHECK(coeff(hol, 0) == f * ex("z^3 + 2 i z"));
    }

    TEST_CASE("coefficient count follows the order")
    {
        const auto &c = testing::conn(cp1(), AlphaChoice::zero, 6);
        CHECK(star_product(c, mu(1), mu(2)).coefficients.size() == 4);
    }

    TEST_CASE("bad inputs")
    {
        CHECK_THROWS(solve_fedosov(cp1(), AlphaChoice::zero, 2));
        CHECK_THROWS(solve_fedosov(cp1(), AlphaChoice::custom, 6, {}));
        FnMatrix bad{{ex("z"), ex("1")}, {ex("1"), ex("z")}};
        CHECK_THROWS(solve_fedosov(cp1(), AlphaChoice::custom, 6, bad));
    }
}
