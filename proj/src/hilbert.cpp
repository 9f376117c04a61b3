#include <fedlab/hilbert.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fedlab/integrals.hpp>
#include <fedlab/quantizable.hpp>

namespace fedlab
{

namespace
{

const KahlerGeometry &cp1()
{
    static const KahlerGeometry g = make_cp1_fs();
    return g;
}

ChartFunction zpow(int b)
{
    return ChartFunction::z(0).pow(static_cast<unsigned>(b));
}

PiScalar two_pi_over_i()
{
    return PiScalar(GaussQ(0, -2), 1);
}

// Column of P_k(F e) in the monomial basis.
std::vector<PiScalar> project(const ChartFunction &f, const HilbertModel &h)
{
    std::vector<PiScalar> col(h.gram.size());
    if (f.is_zero()) {
        return col;
    }
    for (int a = 0; a <= h.k; ++a) {
        const PiScalar ip = chart_integral(f * ChartFunction::zbar(0).pow(static_cast<unsigned>(a)), h.k + 2);
        col[a] = ip * PiScalar(GaussQ(1 / h.gram[a]));
    }
    return col;
}

// Coefficients of a holomorphic polynomial of degree <= k; nullopt-like failure via flag.
bool holomorphic_column(const ChartFunction &f, int k, std::vector<PiScalar> &col)
{
    col.assign(static_cast<std::size_t>(k + 1), PiScalar());
    if (f.denom_power() != 0 || !f.is_holomorphic()) {
        return false;
    }
    for (const auto &[key, c] : f.numerator()) {
        if (key.z(0) > k) {
            return false;
        }
        col[key.z(0)] += PiScalar(c, key.pi);
    }
    return true;
}

// d/dz g + k g d rho
ChartFunction covariant_dz(const ChartFunction &g, int k)
{
    return g.dz(0) + g * cp1().drho(0) * PiScalar(k);
}

} // namespace

HilbertModel gram(int k)
{
    if (k < 0) {
        throw std::invalid_argument("level must be non-negative");
    }
    HilbertModel h;
    h.k = k;
    for (int a = 0; a <= k; ++a) {
        h.gram.push_back(moment_integral(static_cast<unsigned>(a), static_cast<unsigned>(a), k + 2));
    }
    return h;
}

OperatorMatrix::OperatorMatrix(int k, std::string tag)
    : k_(k), tag_(std::move(tag)),
      m_(static_cast<std::size_t>(k + 1), std::vector<PiScalar>(static_cast<std::size_t>(k + 1)))
{
}

OperatorMatrix &OperatorMatrix::operator+=(const OperatorMatrix &o)
{
    if (o.k_ != k_) {
        throw std::invalid_argument("level mismatch");
    }
    for (int a = 0; a <= k_; ++a) {
        for (int b = 0; b <= k_; ++b) {
            m_[a][b] += o.m_[a][b];
        }
    }
    return *this;
}

OperatorMatrix &OperatorMatrix::operator-=(const OperatorMatrix &o)
{
    if (o.k_ != k_) {
        throw std::invalid_argument("level mismatch");
    }
    for (int a = 0; a <= k_; ++a) {
        for (int b = 0; b <= k_; ++b) {
            m_[a][b] -= o.m_[a][b];
        }
    }
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b)
{
    if (a.k_ != b.k_) {
        throw std::invalid_argument("level mismatch");
    }
    OperatorMatrix r(a.k_, "product");
    const int n = a.size();
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            if (a.m_[i][l].is_zero()) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                if (!b.m_[l][j].is_zero()) {
                    r.m_[i][j] += a.m_[i][l] * b.m_[l][j];
                }
            }
        }
    }
    return r;
}

OperatorMatrix operator*(const PiScalar &s, OperatorMatrix a)
{
    for (auto &row : a.m_) {
        for (auto &e : row) {
            e *= s;
        }
    }
    return a;
}

bool OperatorMatrix::is_zero() const
{
    for (const auto &row : m_) {
        for (const auto &e : row) {
            if (!e.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

bool OperatorMatrix::is_pi_free() const
{
    for (const auto &row : m_) {
        for (const auto &e : row) {
            if (!e.is_pi_free()) {
                return false;
            }
        }
    }
    return true;
}

std::string OperatorMatrix::defect_str() const
{
    for (int a = 0; a <= k_; ++a) {
        for (int b = 0; b <= k_; ++b) {
            if (!m_[a][b].is_zero()) {
                std::ostringstream os;
                os << '(' << a << ',' << b << ")=" << m_[a][b].str();
                return os.str();
            }
        }
    }
    return "0";
}

std::vector<std::vector<std::string>> OperatorMatrix::entry_strings() const
{
    std::vector<std::vector<std::string>> out;
    for (const auto &row : m_) {
        std::vector<std::string> r;
        for (const auto &e : row) {
            r.push_back(e.str());
        }
        out.push_back(std::move(r));
    }
    return out;
}

Eigen::MatrixXcd OperatorMatrix::to_complex() const
{
    Eigen::MatrixXcd r(size(), size());
    for (int a = 0; a <= k_; ++a) {
        for (int b = 0; b <= k_; ++b) {
            r(a, b) = m_[a][b].to_complex();
        }
    }
    return r;
}

OperatorMatrix commutator(const OperatorMatrix &a, const OperatorMatrix &b)
{
    return a * b - b * a;
}

OperatorMatrix toeplitz(const ChartFunction &f, int k)
{
    const HilbertModel h = gram(k);
    OperatorMatrix m(k, "toeplitz(" + f.str() + ")");
    for (int b = 0; b <= k; ++b) {
        const auto col = project(f * zpow(b), h);
        for (int a = 0; a <= k; ++a) {
            m.at(a, b) = col[a];
        }
    }
    return m;
}

OperatorMatrix nabla_operator(const VectorField &v, int k)
{
    const HilbertModel h = gram(k);
    OperatorMatrix m(k, "nabla");
    for (int b = 0; b <= k; ++b) {
        const auto col = project(v.hol[0] * covariant_dz(zpow(b), k), h);
        for (int a = 0; a <= k; ++a) {
            m.at(a, b) = col[a];
        }
    }
    return m;
}

OperatorMatrix beta_operator(const VectorField &v, const ChartFunction &mu, int k)
{
    OperatorMatrix m(k, "beta");
    const PiScalar coupling = PiScalar(GaussQ(0, 2 * k), 1);
    for (int b = 0; b <= k; ++b) {
        const ChartFunction g = zpow(b);
        const ChartFunction img = v.hol[0] * covariant_dz(g, k) - mu * g * coupling;
        std::vector<PiScalar> col;
        if (!holomorphic_column(img, k, col)) {
            throw std::domain_error("not prequantizable normalization: image " + img.str());
        }
        for (int a = 0; a <= k; ++a) {
            m.at(a, b) = col[a];
        }
    }
    return m;
}

OperatorMatrix beta_operator(const LieAlgebraAction &action, std::size_t a, int k)
{
    return beta_operator(action.fields.at(a), action.moment.at(a), k);
}

ChartFunction bf_apply(const WeylElement &s, int k, const ChartFunction &g)
{
    if (s.dim() != 1) {
        throw std::invalid_argument("Bargmann-Fock action implemented on one-dimensional charts");
    }
    if (s.ybar_degree() > 1) {
        throw std::invalid_argument("out of scope: ybar-degree above 1");
    }
    WeylKey k0;
    WeylKey kb;
    kb.yb[0] = 1;
    WeylKey kyb;
    kyb.y[0] = 1;
    kyb.yb[0] = 1;
    const ChartFunction &winv = s.geom().omega_inv_bar_first(0, 0);
    const PiScalar one_over_k(GaussQ(mpq_class(1, k)));
    const ChartFunction dg = g.dz(0) + g * s.geom().drho(0) * PiScalar(k);
    return s.coefficient(k0) * g + winv * (s.coefficient(kb) * dg + s.coefficient(kyb) * g) * one_over_k;
}

OperatorMatrix bf_operator(const WeylElement &s, int k)
{
    OperatorMatrix m(k, "bf");
    for (int b = 0; b <= k; ++b) {
        const ChartFunction img = bf_apply(s, k, zpow(b));
        std::vector<PiScalar> col;
        if (!holomorphic_column(img, k, col)) {
            throw std::domain_error("Bargmann-Fock image is not a holomorphic section: " + img.str());
        }
        for (int a = 0; a <= k; ++a) {
            m.at(a, b) = col[a];
        }
    }
    return m;
}

namespace
{

bool wanted(const std::vector<std::string> &suites, const std::string &s)
{
    if (suites.empty()) {
        return true;
    }
    for (const auto &x : suites) {
        if (x == s) {
            return true;
        }
    }
    return false;
}

IdentityRow compare(std::string suite, std::string id, const OperatorMatrix &lhs, const OperatorMatrix &rhs)
{
    IdentityRow r;
    r.suite = std::move(suite);
    r.id = std::move(id);
    const OperatorMatrix d = lhs - rhs;
    r.ok = d.is_zero();
    r.defect = d.defect_str();
    return r;
}

} // namespace

std::vector<IdentityRow> verify_identities(const LieAlgebraAction &action, int k, const FedosovConnection *conn,
                                           const std::vector<std::string> &suites)
{
    if (conn && conn->geom->kind() != GeometryKind::cp1_fs) {
        throw std::invalid_argument("operator identities are verified on the compact model cp1-fs only");
    }
    const KahlerGeometry &g = cp1();
    const std::string ks = "k=" + std::to_string(k);
    std::vector<IdentityRow> rows;
    std::vector<OperatorMatrix> beta;
    for (std::size_t a = 0; a < action.size(); ++a) {
        beta.push_back(beta_operator(action, a, k));
    }
    const PiScalar inv4pi(GaussQ(mpq_class(1, 4)), -1);
    for (std::size_t a = 0; a < action.size(); ++a) {
        const ChartFunction &mu = action.moment[a];
        const std::string id = action.labels[a] + "/" + ks;
        const ChartFunction lap = laplacian(g, mu);
        if (wanted(suites, "tuynman")) {
            rows.push_back(compare("tuynman", id, nabla_operator(hamiltonian_vf(g, mu), k),
                                   PiScalar(GaussQ(0, mpq_class(1, 2))) * toeplitz(lap, k)));
        }
        if (wanted(suites, "toeplitz-beta")) {
            const ChartFunction kmuk = (mu * PiScalar(k) - lap * inv4pi) * two_pi_over_i();
            OperatorMatrix t = toeplitz(kmuk, k);
            IdentityRow row = compare("toeplitz-beta", id, t, beta[a]);
            if (!t.is_pi_free()) {
                row.ok = false;
                row.defect = "stray pi in " + t.defect_str();
            }
            rows.push_back(row);
        }
        if (wanted(suites, "commutator")) {
            for (std::size_t b = 0; b < action.size(); ++b) {
                const ChartFunction &f = action.moment[b];
                rows.push_back(compare("commutator", action.labels[a] + "," + action.labels[b] + "/" + ks,
                                       commutator(beta[a], toeplitz(f, k)),
                                       toeplitz(action.fields[a].apply(f), k)));
            }
        }
        if (conn && wanted(suites, "diagram")) {
            try {
                const QuantizableFunction q = make_degree1(*conn, mu);
                const WeylElement s = evaluate_level(*conn, q, k) * (two_pi_over_i() * PiScalar(k));
                rows.push_back(compare("diagram", id, bf_operator(s, k), beta[a]));
            } catch (const std::exception &e) {
                rows.push_back(IdentityRow{"diagram", id, false, std::string("error: ") + e.what()});
            }
        }
    }
    if (wanted(suites, "representation")) {
        for (std::size_t a = 0; a < action.size(); ++a) {
            for (std::size_t b = a + 1; b < action.size(); ++b) {
                OperatorMatrix rhs(k, "rep");
                const auto c = action.bracket(a, b);
                for (std::size_t d = 0; d < action.size(); ++d) {
                    if (!c[d].is_zero()) {
                        rhs += PiScalar(c[d]) * beta[d];
                    }
                }
                rows.push_back(compare("representation", action.labels[a] + "," + action.labels[b] + "/" + ks,
                                       commutator(beta[a], beta[b]), rhs));
            }
        }
    }
    return rows;
}

AsymptoticFit bt_asymptotic_slope(const ChartFunction &f, const ChartFunction &g, const std::vector<int> &levels,
                                  const std::vector<ChartFunction> &coefficients)
{
    if (levels.size() < 3) {
        throw std::invalid_argument("asymptotic fit needs at least 3 levels");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] <= levels[i - 1]) {
            throw std::invalid_argument("levels must be strictly increasing");
        }
    }
    AsymptoticFit fit;
    fit.levels = levels;
    for (int k : levels) {
        OperatorMatrix m = toeplitz(f, k) * toeplitz(g, k);
        PiScalar w(1);
        for (const auto &c : coefficients) {
            m -= w * toeplitz(c, k);
            w *= PiScalar(GaussQ(mpq_class(1, k)));
        }
        const HilbertModel h = gram(k);
        Eigen::MatrixXcd a = m.to_complex();
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                a(i, j) *= std::sqrt(h.gram[i].get_d() / h.gram[j].get_d());
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        fit.errors.push_back(svd.singularValues()(0));
    }
    bool all_zero = true;
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (fit.errors[i] > 0) {
            all_zero = false;
        }
        const double x = std::log(static_cast<double>(levels[i]));
        const double y = std::log(fit.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (all_zero) {
        fit.slope = -std::numeric_limits<double>::infinity();
        return fit;
    }
    const double n = static_cast<double>(levels.size());
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

} // namespace fedlab
