#ifndef FEDLAB_GEOMETRY_HPP
#define FEDLAB_GEOMETRY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <fedlab/chart_function.hpp>

namespace fedlab
{

using FnMatrix = std::vector<std::vector<ChartFunction>>;

/// V = V^i d/dz^i + V^{jbar} d/dzbar^j.
struct VectorField {
    std::vector<ChartFunction> hol;
    std::vector<ChartFunction> antihol;

    static VectorField zero(int dim);
    /// Real field with the given (1,0) part.
    static VectorField real_from_hol(std::vector<ChartFunction> hol);

    int dim() const { return static_cast<int>(hol.size()); }
    bool is_zero() const;
    bool is_real() const;

    ChartFunction apply(const ChartFunction &f) const;
    VectorField operator+(const VectorField &o) const;
    VectorField operator*(const PiScalar &s) const;
    friend bool operator==(const VectorField &, const VectorField &) = default;
};

VectorField lie_bracket(const VectorField &a, const VectorField &b);

enum class GeometryKind { flat, cp1_fs, potential_jet };

/// Exact Kaehler data on one chart. Conventions:
///   omega = (i/2pi) w_{i jbar} dz^i ^ dzbar^j,   w_{i jbar} w^{jbar k} = delta,
///   w^{i jbar} = -w^{jbar i},   rho'' = -w,   Ric_{i jbar} = -d_jbar Gamma^k_{k i}.
class KahlerGeometry
{
public:
    GeometryKind kind() const { return kind_; }
    const std::string &name() const { return name_; }
    int dim() const { return dim_; }
    /// Jet truncation order of the potential (-1 for exact providers).
    int jet_order() const { return jet_order_; }

    /// w_{i jbar}
    const ChartFunction &omega(int i, int j) const { return omega_[i][j]; }
    /// w^{jbar i}
    const ChartFunction &omega_inv_bar_first(int j, int i) const { return omega_inv_[j][i]; }
    /// w^{i jbar} = -w^{jbar i}
    ChartFunction omega_inv_hol_first(int i, int j) const { return -omega_inv_[j][i]; }
    /// Gamma^i_{jk} (holomorphic indices); the antiholomorphic ones are conjugates.
    /// Throws "jet accuracy exceeded" when a jet provider is too short for it.
    const ChartFunction &christoffel(int i, int j, int k) const;
    ChartFunction christoffel_bar(int i, int j, int k) const { return christoffel(i, j, k).conj(); }
    /// R_{i jbar k lbar} = -d_jbar(Gamma^p_{ik}) w_{p lbar}
    const ChartFunction &curvature(int i, int j, int k, int l) const;
    const ChartFunction &ricci(int i, int j) const { return ricci_matrix()[i][j]; }
    /// d rho / dz^i
    const ChartFunction &drho(int i) const { return drho_[i]; }
    /// D = 1 + sum z zbar for cp1_fs, 1 otherwise.
    ChartFunction denominator() const;
    const FnMatrix &omega_matrix() const { return omega_; }
    const FnMatrix &ricci_matrix() const;
    bool has_christoffel() const { return !gamma_.empty(); }
    bool has_curvature() const { return !curvature_.empty(); }

    std::vector<ChartFunction> coordinates() const;

private:
    friend KahlerGeometry make_flat(int);
    friend KahlerGeometry make_cp1_fs();
    friend KahlerGeometry make_potential_jet(const ChartFunction &, int);
    void derive_tensors();

    GeometryKind kind_ = GeometryKind::flat;
    std::string name_;
    int dim_ = 1;
    int jet_order_ = -1;
    FnMatrix omega_;
    FnMatrix omega_inv_;
    std::vector<FnMatrix> gamma_;
    std::vector<std::vector<FnMatrix>> curvature_;
    FnMatrix ricci_;
    std::vector<ChartFunction> drho_;
};

using GeometryPtr = std::shared_ptr<const KahlerGeometry>;

KahlerGeometry make_flat(int dim);
KahlerGeometry make_cp1_fs();
/// Kaehler potential phi (w_{i jbar} = d_i d_jbar phi, rho = -phi) given as a jet at the origin.
KahlerGeometry make_potential_jet(const ChartFunction &potential, int order);
/// "flat:<n>", "cp1-fs", "jet:<path>".
GeometryPtr make_geometry(const std::string &name);
/// Parse the jet text format: "dim <n>", "order <m>", then "<a_1..a_n> <b_1..b_n> <coefficient>" lines.
ChartFunction parse_potential_jet(const std::string &text, int &dim, int &order);

ChartFunction laplacian(const KahlerGeometry &g, const ChartFunction &f);
VectorField hamiltonian_vf(const KahlerGeometry &g, const ChartFunction &f);
/// omega(A, B) with the (i/2pi) prefactor included.
ChartFunction omega_pairing(const KahlerGeometry &g, const VectorField &a, const VectorField &b);
ChartFunction poisson(const KahlerGeometry &g, const ChartFunction &f, const ChartFunction &h);

/// One-form a_i dz^i + b_j dzbar^j.
struct OneForm {
    std::vector<ChartFunction> dz;
    std::vector<ChartFunction> dzbar;
    bool is_zero() const;
};

/// iota_V (c_{i jbar} dz^i ^ dzbar^j) for a (1,1)-form given by its component matrix.
OneForm contract_11(const VectorField &v, const FnMatrix &c);
OneForm exterior_d(const ChartFunction &f);
/// True when d(theta) = 0 componentwise.
bool is_closed(const OneForm &theta);
/// True when a (1,1)-form given by components is closed.
bool is_closed_11(const FnMatrix &c);

/// F with dF = theta and F(0) = 0. Throws std::domain_error ("not representable in ring")
/// when no antiderivative exists in the coefficient ring.
ChartFunction antiderivative(const OneForm &theta);
/// F with dbar F = sum_j b_j dzbar^j and F|_{zbar=0} = 0.
ChartFunction dbar_antiderivative(const std::vector<ChartFunction> &b);

struct LieCompat {
    bool preserves_omega = false;
    bool preserves_J = false;
};
LieCompat lie_compat(const KahlerGeometry &g, const VectorField &v);
/// L_V(c_{i jbar} dz^i ^ dzbar^j) == 0 for a closed (1,1)-form.
bool preserves_11_form(const VectorField &v, const FnMatrix &c);

/// Mean of f against the normalised volume omega on CP^1 (exact, via the moment integrals).
PiScalar cp1_mean(const ChartFunction &f);

struct LieAlgebraAction {
    std::vector<std::string> labels;
    /// structure[a][b][d] = c_{ab}^d
    std::vector<std::vector<std::vector<GaussQ>>> structure;
    std::vector<VectorField> fields;
    std::vector<ChartFunction> moment;

    std::size_t size() const { return fields.size(); }
    /// Coefficients of [xi_a, xi_b] in the basis.
    std::vector<GaussQ> bracket(std::size_t a, std::size_t b) const { return structure[a][b]; }
};

/// Rotation action on CP^1 with equivariant (mean-zero) moment maps.
LieAlgebraAction su2_action(const KahlerGeometry &g);
/// Single rotation xi_3 only.
LieAlgebraAction u1_action(const KahlerGeometry &g);

} // namespace fedlab

#endif
