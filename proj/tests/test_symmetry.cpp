#include "support.hpp"

#include <fedlab/quantizable.hpp>
#include <fedlab/symmetry.hpp>
#include <fedlab/weyl.hpp>

using namespace fedlab;
using testing::cp1;
using testing::ex;
using testing::flat1;
using testing::mu;

namespace
{

const FedosovConnection &bt(int order = 6)
{
    return testing::conn(cp1(), AlphaChoice::canonical, order);
}

const PiScalar kTwoPiOverI(GaussQ(0, -2), 1);

} // namespace

TEST_SUITE("symmetry")
{
    TEST_CASE("star derivations")
    {
        const LieAlgebraAction act = su2_action(*cp1());
        for (const auto &v : act.fields) {
            CHECK(is_star_derivation(*cp1(), v, bt().alpha));
            CHECK(is_star_derivation(*cp1(), v, testing::conn(cp1(), AlphaChoice::ricci, 6).alpha));
        }
        const VectorField dil = VectorField::real_from_hol({ex("z")});
        CHECK_FALSE(is_star_derivation(*flat1(), dil, {}));
        CHECK(is_star_derivation(*cp1(), VectorField::zero(1), bt().alpha));
    }

    TEST_CASE("eta on generators")
    {
        const VectorField rot = VectorField::real_from_hol({ex("i*z")});
        for (const auto &g : {flat1(), cp1()}) {
            const WeylElement eta = build_eta(g, rot, 6);
            for (const WeylElement &gen : {WeylElement::y(g, 6, 0), WeylElement::ybar(g, 6, 0)}) {
                CHECK(bracket_over_hbar(eta, gen) == lie_derivative(rot, gen) - nabla_along(rot, gen));
            }
        }
        CHECK(build_eta(cp1(), VectorField::zero(1), 6).is_zero());
        CHECK_THROWS(build_eta(flat1(), VectorField::real_from_hol({ex("z^2 zbar")}), 6));
    }

    TEST_CASE("quantum Hamiltonians of rotations")
    {
        const LieAlgebraAction act = su2_action(*cp1());
        for (std::size_t a = 0; a < 3; ++a) {
            const QuantumHamiltonian h = quantum_hamiltonian(bt(), act.fields[a]);
            CHECK(h.d_beta_matches);
            CHECK(h.flat);
            CHECK(h.ybar_degree <= 1);
            // mu_V = (2 pi / i)(mu - (hbar/4pi) Lap mu) up to a constant
            const HbarPoly expect = hbar_scale(degree1_formal(*cp1(), act.moment[a]), kTwoPiOverI);
            REQUIRE(h.mu.size() >= 2);
            CHECK((h.mu[0] - expect[0]).is_constant());
            CHECK((h.mu[1] - expect[1]).is_constant());
            for (const auto &g : {mu(1), mu(2), ex("z*zbar*D^-1")}) {
                CHECK(hamiltonian_bracket_holds(bt(), h, g));
            }
        }
        const QuantumHamiltonian zero = quantum_hamiltonian(bt(), VectorField::zero(1));
        CHECK(zero.beta.is_zero());
        for (const auto &c : zero.mu) {
            CHECK(c.is_zero());
        }
    }

    TEST_CASE("quantum moment map is a homomorphism")
    {
        const QuantumMomentMap qm = quantum_moment_map(testing::conn(cp1(), AlphaChoice::canonical, 8),
                                                       su2_action(*cp1()), {1, 2});
        CHECK(qm.tested_order == 3);
        CHECK(qm.defects.size() == 3);
        for (const auto &d : qm.defects) {
            CHECK(d.is_zero());
        }
        REQUIRE(qm.mu_levels.count(2) == 1);
        CHECK(qm.mu_levels.at(2).size() == 3);
        const QuantumMomentMap u1 = quantum_moment_map(bt(), u1_action(*cp1()));
        CHECK(u1.defects.empty());
    }

    TEST_CASE("leading bracket is the Poisson bracket")
    {
        const auto &c = bt();
        const PiScalar i_over_2pi(GaussQ(0, mpq_class(1, 2)), -1);
        const StarExpansion fg = star_product(c, mu(1), mu(2));
        const StarExpansion gf = star_product(c, mu(2), mu(1));
        // (i/2pi){mu1, mu2} = (i/2pi) V1(mu2) and [V1, V2] = V3 gives {mu1, mu2} = -mu3 up to normalisation
        CHECK(fg.coefficients[1] - gf.coefficients[1] == poisson(*cp1(), mu(1), mu(2)) * i_over_2pi);
        CHECK(poisson(*cp1(), mu(1), mu(2)) == su2_action(*cp1()).fields[0].apply(mu(2)));
    }
}
