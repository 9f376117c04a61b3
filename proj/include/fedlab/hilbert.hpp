#ifndef FEDLAB_HILBERT_HPP
#define FEDLAB_HILBERT_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include <fedlab/fedosov.hpp>

namespace fedlab
{

/// Holomorphic sections z^a e of L^k on CP^1, a = 0..k, with their (diagonal) Gram matrix.
struct HilbertModel {
    int k = 0;
    std::vector<mpq_class> gram;
};

HilbertModel gram(int k);

/// Matrix of an operator on H_k in the monomial basis: column b holds the image of z^b e.
class OperatorMatrix
{
public:
    OperatorMatrix() = default;
    OperatorMatrix(int k, std::string tag);

    int level() const { return k_; }
    int size() const { return k_ + 1; }
    const std::string &tag() const { return tag_; }
    PiScalar &at(int a, int b) { return m_[a][b]; }
    const PiScalar &at(int a, int b) const { return m_[a][b]; }

    OperatorMatrix &operator+=(const OperatorMatrix &o);
    OperatorMatrix &operator-=(const OperatorMatrix &o);
    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix &b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix &b) { return a -= b; }
    friend OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b);
    friend OperatorMatrix operator*(const PiScalar &s, OperatorMatrix a);
    friend bool operator==(const OperatorMatrix &a, const OperatorMatrix &b) { return a.m_ == b.m_; }

    bool is_zero() const;
    bool is_pi_free() const;
    /// First nonzero entry as "(a,b)=value", or "0".
    std::string defect_str() const;
    /// Rows of exact entry strings.
    std::vector<std::vector<std::string>> entry_strings() const;
    Eigen::MatrixXcd to_complex() const;

private:
    int k_ = 0;
    std::string tag_;
    std::vector<std::vector<PiScalar>> m_;
};

OperatorMatrix commutator(const OperatorMatrix &a, const OperatorMatrix &b);

/// P_k o m_f
OperatorMatrix toeplitz(const ChartFunction &f, int k);
/// P_k o nabla_V on L^k, nabla e = d rho (x) e with rho = -log D.
OperatorMatrix nabla_operator(const VectorField &v, int k);
/// nabla_{V} - 2 pi i k mu; the image is asserted holomorphic ("not prequantizable normalization" otherwise).
OperatorMatrix beta_operator(const VectorField &v, const ChartFunction &mu, int k);
OperatorMatrix beta_operator(const LieAlgebraAction &action, std::size_t a, int k);

/// Bargmann-Fock action of a level-k Weyl section of ybar-degree <= 1 on the holomorphic section g e.
ChartFunction bf_apply(const WeylElement &s, int k, const ChartFunction &g);
OperatorMatrix bf_operator(const WeylElement &s, int k);

struct IdentityRow {
    std::string suite;
    std::string id;
    bool ok = false;
    std::string defect;
};

/// Tuynman pairing, Toeplitz-beta and commutator identities, su(2) representation, and (given a connection) the Bargmann-Fock diagram.
std::vector<IdentityRow> verify_identities(const LieAlgebraAction &action, int k, const FedosovConnection *conn = nullptr,
                                           const std::vector<std::string> &suites = {});

struct AsymptoticFit {
    std::vector<int> levels;
    std::vector<double> errors;
    /// least-squares slope of log(error) against log(k); -inf when every error vanishes
    double slope = 0;
};

/// Spectral norm (Gram-weighted) of T_f T_g - sum_i k^{-i} T_{C_i}; coefficients[0] should be f g.
AsymptoticFit bt_asymptotic_slope(const ChartFunction &f, const ChartFunction &g, const std::vector<int> &levels,
                                  const std::vector<ChartFunction> &coefficients);

} // namespace fedlab

#endif
