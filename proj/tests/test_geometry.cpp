#include "support.hpp"

using namespace fedlab;
using testing::cp1;
using testing::ex;
using testing::flat1;
using testing::mu;
using testing::oracle;

TEST_SUITE("geometry")
{
    TEST_CASE("flat tensors")
    {
        const auto &g = *flat1();
        CHECK(g.omega(0, 0) == ChartFunction(1));
        CHECK(g.christoffel(0, 0, 0).is_zero());
        CHECK(g.curvature(0, 0, 0, 0).is_zero());
        CHECK(g.ricci(0, 0).is_zero());
    }

    TEST_CASE("cp1 tensors against the symbolic oracle")
    {
        const auto &g = *cp1();
        CHECK(g.omega(0, 0) == oracle("cp1.omega"));
        CHECK(g.ricci(0, 0) == oracle("cp1.ricci"));
        CHECK(g.christoffel(0, 0, 0) == oracle("cp1.gamma"));
        // w_lower * w_upper = 1
        CHECK(g.omega(0, 0) * g.omega_inv_bar_first(0, 0) == ChartFunction(1));
        CHECK(g.omega_inv_hol_first(0, 0) == -g.omega_inv_bar_first(0, 0));
    }

    TEST_CASE("quadratic potential jet reproduces flat")
    {
        const auto g = make_potential_jet(ex("z*zbar"), 4);
        CHECK(g.omega(0, 0) == ChartFunction(1).to_jet(4));
        CHECK(g.christoffel(0, 0, 0).is_zero());
        CHECK(g.ricci(0, 0).is_zero());
    }

    TEST_CASE("Laplacian")
    {
        CHECK(laplacian(*flat1(), ex("z*zbar")) == oracle("flat.laplacian.zzbar"));
        CHECK(laplacian(*cp1(), ex("z*zbar*D^-1")) == oracle("cp1.laplacian.zzbar_over_D"));
        CHECK(laplacian(*cp1(), ex("7/3")).is_zero());
        for (int a = 1; a <= 3; ++a) {
            CHECK(laplacian(*cp1(), mu(a)) == oracle("cp1.laplacian.mu" + std::to_string(a)));
            CHECK(laplacian(*cp1(), mu(a)) == mu(a) * oracle("cp1.laplacian_eigen.mu" + std::to_string(a)).constant_value());
        }
    }

    TEST_CASE("Hamiltonian fields and Poisson bracket")
    {
        const VectorField v = hamiltonian_vf(*flat1(), ex("z"));
        CHECK(v.hol[0].is_zero());
        CHECK(v.antihol[0] == ex("-2*pi/i"));
        const PiScalar i_over_2pi(GaussQ(0, mpq_class(1, 2)), -1);
        CHECK(poisson(*flat1(), ex("z"), ex("zbar")) * i_over_2pi == oracle("flat.poisson_scaled.z_zbar"));
        CHECK(poisson(*cp1(), mu(1), mu(2)) * i_over_2pi == oracle("cp1.poisson_scaled.mu1_mu2"));
        const ChartFunction f = ex("z^2 zbar + 3 i zbar^2 D^-1");
        CHECK(poisson(*cp1(), f, f).is_zero());
    }

    TEST_CASE("Lie compatibility")
    {
        const VectorField rot = VectorField::real_from_hol({ex("i*z")});
        const LieCompat c = lie_compat(*cp1(), rot);
        CHECK(c.preserves_omega);
        CHECK(c.preserves_J);
        const VectorField dil = VectorField::real_from_hol({ex("z")});
        const LieCompat d = lie_compat(*flat1(), dil);
        CHECK_FALSE(d.preserves_omega);
        CHECK(d.preserves_J);
        const LieCompat zero = lie_compat(*cp1(), VectorField::zero(1));
        CHECK(zero.preserves_omega);
        CHECK(zero.preserves_J);
    }

    TEST_CASE("su(2) action")
    {
        const LieAlgebraAction act = su2_action(*cp1());
        REQUIRE(act.size() == 3);
        for (int a = 1; a <= 3; ++a) {
            CHECK(act.moment[a - 1] == oracle("cp1.mu" + std::to_string(a)));
            CHECK(cp1_mean(act.moment[a - 1]).is_zero());
        }
        // [V1, V2] = V3
        CHECK(lie_bracket(act.fields[0], act.fields[1]) == act.fields[2]);
        // iota_V omega = d mu
        for (std::size_t a = 0; a < 3; ++a) {
            CHECK(hamiltonian_vf(*cp1(), act.moment[a]) == act.fields[a]);
        }
        CHECK_THROWS(su2_action(*flat1()));
    }

    TEST_CASE("antiderivatives")
    {
        const ChartFunction f = ex("(z^2 zbar - 3 zbar) D^-2");
        const ChartFunction a = antiderivative(exterior_d(f));
        CHECK((a - f).is_constant());
        const GaussQ origin[1] = {GaussQ(0)};
        CHECK(a.evaluate(origin, origin).is_zero());
        CHECK(is_closed(exterior_d(f)));
        const ChartFunction b = dbar_antiderivative({ex("z*D^-2")});
        CHECK(b == ex("z*zbar*D^-1"));
        // needs a logarithm
        CHECK_THROWS_AS(dbar_antiderivative({ex("zbar*D^-2")}), std::domain_error);
    }

    TEST_CASE("geometry name parsing")
    {
        CHECK(make_geometry("flat:2")->dim() == 2);
        CHECK(make_geometry("cp1-fs")->kind() == GeometryKind::cp1_fs);
        CHECK_THROWS(make_geometry("sphere"));
        CHECK_THROWS(make_geometry("flat:0"));
        CHECK_THROWS(make_geometry("jet:/nonexistent/file"));
    }
}
