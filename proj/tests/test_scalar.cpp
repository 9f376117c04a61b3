#include "support.hpp"

#include <fedlab/integrals.hpp>

using namespace fedlab;
using testing::ex;

TEST_SUITE("scalar")
{
    TEST_CASE("gaussian rationals")
    {
        const GaussQ a(mpq_class(1, 3), mpq_class(1, 2));
        CHECK(a * a.inverse() == GaussQ(1));
        CHECK(a.conj() == GaussQ(mpq_class(1, 3), mpq_class(-1, 2)));
        CHECK(GaussQ::i() * GaussQ::i() == GaussQ(-1));
        CHECK(GaussQ::parse(a.str()) == a);
        CHECK_THROWS(GaussQ(0).inverse());
    }

    TEST_CASE("pi Laurent polynomials")
    {
        const PiScalar p = PiScalar::pi();
        const PiScalar q = PiScalar(GaussQ(2), -1) + PiScalar(GaussQ(3));
        CHECK((p * p.inverse()) == PiScalar(GaussQ(1)));
        CHECK((p * q) == PiScalar(GaussQ(2)) + PiScalar(GaussQ(3), 1));
        CHECK(!q.is_monomial());
        CHECK_THROWS(q.inverse());
        CHECK(PiScalar(GaussQ(5)).is_pi_free());
        CHECK(std::abs(p.to_complex().real() - 3.141592653589793) < 1e-12);
    }

    TEST_CASE("chart functions normalise")
    {
        const ChartFunction d = ChartFunction::d_power(1);
        CHECK(d == ex("1 + z*zbar"));
        CHECK((d * ChartFunction::d_power(-1)) == ChartFunction(1));
        CHECK(ex("z*zbar*D^-1").denom_power() == 1);
        CHECK(ex("(1+z*zbar)*D^-3") == ChartFunction::d_power(-2));
        CHECK(ex("z^2").dz(0) == ex("2*z"));
        CHECK(ex("D^-1").dzbar(0) == ex("-z*D^-2"));
        CHECK(ex("i*z").conj() == ex("-i*zbar"));
        CHECK(ex("z*zbar").is_pi_free());
        CHECK(ex("z^3").is_holomorphic());
        CHECK(ex("zbar*D^-1").is_antiholomorphic() == false);
    }

    TEST_CASE("Beta-integral oracle")
    {
        CHECK(PiScalar(GaussQ(moment_integral(1, 1, 4))) == testing::oracle_scalar("moment_integral.1.1.4"));
        CHECK(PiScalar(GaussQ(moment_integral(0, 0, 2))) == testing::oracle_scalar("moment_integral.0.0.2"));
        CHECK(moment_integral(2, 1, 5) == 0);
        CHECK(PiScalar(GaussQ(moment_integral(3, 3, 9))) == testing::oracle_scalar("moment_integral.3.3.9"));
        CHECK(PiScalar(GaussQ(moment_integral(2, 2, 12))) == testing::oracle_scalar("moment_integral.2.2.12"));
        CHECK_THROWS_AS(moment_integral(1, 1, 2), std::domain_error);
    }
}

TEST_SUITE("expression")
{
    TEST_CASE("grammar examples")
    {
        const ChartFunction zz = ex("z*zbar");
        CHECK(zz.denom_power() == 0);
        CHECK(zz == ChartFunction::z(0) * ChartFunction::zbar(0));
        const ChartFunction m = ex("z*zbar * D^-1");
        CHECK(m.denom_power() == 1);
        CHECK(m * ChartFunction::d_power(1) == zz);
        const ChartFunction c = ex("1/3 + 1/2 i");
        REQUIRE(c.is_constant());
        CHECK(c.constant_value() == PiScalar(GaussQ(mpq_class(1, 3), mpq_class(1, 2))));
    }

    TEST_CASE("juxtaposition, powers and division")
    {
        CHECK(ex("2 z zbar") == ex("2*z*zbar"));
        CHECK(ex("(z+1)^2") == ex("z^2 + 2*z + 1"));
        CHECK(ex("z/(4*pi)") == ex("z*pi^-1/4"));
        CHECK(ex("1/(1+z*zbar)^2") == ChartFunction::d_power(-2));
        CHECK(ex("-(z)") == -ChartFunction::z(0));
        CHECK(ex("z1*zbar2", 2) == ChartFunction::z(0, 2) * ChartFunction::zbar(1, 2));
    }

    TEST_CASE("errors carry positions")
    {
        try {
            ex("z + * zbar");
            FAIL("expected a parse error");
        } catch (const ParseError &e) {
            CHECK(e.position() == 4);
        }
        CHECK_THROWS_AS(ex("1/(1+z)"), ParseError);
        CHECK_THROWS_AS(ex("1/0"), ParseError);
        CHECK_THROWS_AS(ex("w"), ParseError);
        CHECK_THROWS_AS(ex("(z"), ParseError);
        CHECK_THROWS_AS(ex("z^"), ParseError);
        CHECK_THROWS_AS(ex("z3"), ParseError);
        CHECK_THROWS_AS(ex("z", 2), ParseError);
    }

    TEST_CASE("canonical printer round-trips")
    {
        for (const char *s : {"z*zbar*D^-1", "(1-z*zbar)/(4*pi)*D^-1", "i*z^3 - 1/7 zbar", "2*pi^2 z + pi^-1",
                              "(1/3 + 1/2 i) z zbar^2 D^-4"}) {
            const ChartFunction f = ex(s);
            CHECK_MESSAGE(ex(f.str()) == f, s);
        }
    }
}
