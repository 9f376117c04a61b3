#include "support.hpp"

#include <fedlab/quantizable.hpp>
#include <fedlab/weyl.hpp>

using namespace fedlab;
using testing::cp1;
using testing::ex;
using testing::flat1;
using testing::mu;
using testing::oracle;

namespace
{

const FedosovConnection &bt(int order = 6)
{
    return testing::conn(cp1(), AlphaChoice::canonical, order);
}

} // namespace

TEST_SUITE("quantizable")
{
    TEST_CASE("Killing test battery")
    {
        const KillingCheck m = check_killing_condition(*cp1(), mu(3));
        CHECK(m.condition_holds);
        CHECK(m.v10_holomorphic);
        CHECK(m.ricci_identity);
        const KillingCheck f = check_killing_condition(*flat1(), ex("z*zbar"));
        CHECK(f.condition_holds);
        CHECK(f.v10_holomorphic);
        CHECK(f.ricci_identity);
        const KillingCheck bad = check_killing_condition(*cp1(), ex("(z^2+zbar^2) z zbar"));
        CHECK_FALSE(bad.condition_holds);
        CHECK_FALSE(bad.v10_holomorphic);
        // the oracle's dbar(w^{1bar 1} dbar f) agrees on which inputs fail
        CHECK(oracle("killing.cp1.mu3").is_zero());
        CHECK(oracle("killing.flat.zzbar").is_zero());
        CHECK_FALSE(oracle("killing.cp1.control_quartic").is_zero());
        CHECK_FALSE(oracle("killing.cp1.control_zzbar").is_zero());
        CHECK_FALSE(check_killing_condition(*cp1(), ex("z*zbar")).condition_holds);
    }

    TEST_CASE("degree-1 formal function")
    {
        for (int a = 1; a <= 3; ++a) {
            const HbarPoly f = degree1_formal(*cp1(), mu(a));
            REQUIRE(f.size() == 2);
            CHECK(f[0] == mu(a));
            CHECK(f[1] == oracle("cp1.degree1_hbar1.mu" + std::to_string(a)));
        }
        const HbarPoly shifted = degree1_formal(*cp1(), mu(3), PiScalar(GaussQ(4), 1));
        CHECK(shifted[1] == oracle("cp1.degree1_hbar1.mu3") - ChartFunction(1));
    }

    TEST_CASE("classification under the Berezin-Toeplitz connection")
    {
        for (int a = 1; a <= 3; ++a) {
            const QuantizableFunction q = make_degree1(bt(), mu(a));
            CHECK(q.killing);
            CHECK(q.ybar_degree == 1);
            CHECK(q.hbar_degree == 1);
        }
        const QuantizableFunction c = make_degree1(bt(), ex("5/2"));
        CHECK(c.ybar_degree == 0);
        CHECK(c.hbar_degree == 0);
        CHECK(c.section.of == WeylElement::scalar(cp1(), 6, ex("5/2")));
        const QuantizableFunction flat = make_degree1(testing::conn(flat1(), AlphaChoice::zero, 6), ex("z*zbar"));
        CHECK(flat.ybar_degree == 1);
        CHECK(flat.hbar_degree == 1);
    }

    TEST_CASE("literal +Ric connection: recorded discrepancy")
    {
        // mu3 picks up hbar^2 terms when alpha = +Ric
        const QuantizableFunction q = make_degree1(testing::conn(cp1(), AlphaChoice::ricci, 6), mu(3));
        CHECK(q.ybar_degree == 1);
        CHECK(q.hbar_degree >= 2);
    }

    TEST_CASE("non-Killing controls")
    {
        for (const char *f0 : {"(z^2+zbar^2) z zbar", "z*zbar"}) {
            CHECK_THROWS_AS(make_degree1(bt(), ex(f0)), NotKillingError);
            const QuantizableFunction q = make_degree1(bt(), ex(f0), {}, true);
            CHECK_FALSE(q.killing);
            CHECK_MESSAGE(q.ybar_degree >= 2, f0);
        }
        try {
            make_degree1(bt(), ex("z*zbar"));
        } catch (const NotKillingError &e) {
            CHECK(std::string(e.what()).rfind("not-Killing", 0) == 0);
        }
    }

    TEST_CASE("evaluation at a level")
    {
        const QuantizableFunction q = make_degree1(bt(), mu(3));
        const WeylElement s2 = evaluate_level(bt(), q, 2);
        CHECK(s2.level() == 2);
        CHECK(s2.hbar_degree() == 0);
        const PiScalar eighth_over_pi(GaussQ(mpq_class(1, 8)), -1);
        CHECK(symbol(s2)[0] == mu(3) - laplacian(*cp1(), mu(3)) * eighth_over_pi);
        const WeylElement s1 = evaluate_level(bt(), q, 1);
        CHECK_FALSE(s1 == s2);
        CHECK(level_window(6, 1) == 3);
    }

    TEST_CASE("round trip through a level section")
    {
        for (int a = 1; a <= 3; ++a) {
            const QuantizableFunction q = make_degree1(bt(), mu(a));
            for (int k : {1, 3, 7}) {
                const Formalized f = formalize_level_section(bt(), k, evaluate_level(bt(), q, k));
                CHECK(f.recovered == mu(a));
                CHECK(f.correction.is_constant());
            }
        }
        const QuantizableFunction c = make_degree1(bt(), ex("2"));
        const Formalized fc = formalize_level_section(bt(), 2, evaluate_level(bt(), c, 2));
        CHECK(fc.q.f0.is_constant());
    }

    TEST_CASE("formalize rejects ybar-degree 2")
    {
        const QuantizableFunction q = make_degree1(bt(), ex("z*zbar"), {}, true);
        CHECK_THROWS(formalize_level_section(bt(), 2, q.section.of.with_order(6)));
    }
}
