#ifndef FEDLAB_SYMMETRY_HPP
#define FEDLAB_SYMMETRY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <fedlab/quantizable.hpp>

namespace fedlab
{

/// L_V preserves J, omega and the (1,1)-form alpha (empty alpha counts as zero).
bool is_star_derivation(const KahlerGeometry &g, const VectorField &v, const FnMatrix &alpha);

/// Lie derivative on Weyl-valued forms: y^i and dz^i both transform as the one-forms dz^i.
WeylElement lie_derivative(const VectorField &v, const WeylElement &a);

/// eta_{i jbar} y^i ybar^j with (1/hbar)[eta, -] = L_V - nabla_V on generators; throws when V does not preserve J.
WeylElement build_eta(const GeometryPtr &g, const VectorField &v, int order = 3);

struct QuantumHamiltonian {
    VectorField field;
    /// mu_V as an hbar-polynomial, gauge mu_V(0) = 0.
    HbarPoly mu;
    WeylElement eta;
    WeylElement beta;
    /// D(beta_V) and (2 pi hbar / i) iota_V K, both truncated to the certified order.
    WeylElement d_beta;
    WeylElement target;
    bool d_beta_matches = false;
    bool flat = false;
    int ybar_degree = 0;
};

/// Throws std::invalid_argument when V is not a derivation and std::domain_error
/// ("obstruction class nonzero in ring") when d mu_V = -(2 pi hbar/i) iota_V K has no ring solution.
QuantumHamiltonian quantum_hamiltonian(const FedosovConnection &conn, const VectorField &v);

/// (1/hbar)[mu_V + beta_V, O_g] == O_{V(g)} through weight order-1.
bool hamiltonian_bracket_holds(const FedosovConnection &conn, const QuantumHamiltonian &h, const ChartFunction &g);

struct BracketDefect {
    std::size_t a = 0;
    std::size_t b = 0;
    /// hbar-coefficients of (1/hbar)[mu~_a, mu~_b] - mu~_{[a,b]}
    HbarPoly defect;
    bool is_zero() const;
};

class HomomorphismDefectError : public std::runtime_error
{
public:
    explicit HomomorphismDefectError(std::vector<BracketDefect> d);
    const std::vector<BracketDefect> &defects() const { return defects_; }

private:
    std::vector<BracketDefect> defects_;
};

struct QuantumMomentMap {
    LieAlgebraAction action;
    /// Star-commutator normalisation 2 pi / i carried explicitly: mu~ = scale * mu_hbar.
    PiScalar scale;
    std::vector<QuantizableFunction> mu_hbar;
    std::vector<BracketDefect> defects;
    /// Highest hbar power at which the bracket was compared.
    int tested_order = 0;
    /// level -> mu_k per basis element (geometric normalisation)
    std::map<int, std::vector<ChartFunction>> mu_levels;
};

QuantumMomentMap quantum_moment_map(const FedosovConnection &conn, const LieAlgebraAction &action,
                                    const std::vector<int> &levels = {}, bool throw_on_defect = true);

} // namespace fedlab

#endif
