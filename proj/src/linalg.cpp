#include <fedlab/linalg.hpp>

#include <stdexcept>

namespace fedlab
{

std::optional<std::vector<GaussQ>> solve_exact(QMatrix a, std::vector<GaussQ> b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        GaussQ inv = a[r][c].inverse();
        for (std::size_t k = c; k < cols; ++k) {
            a[r][k] *= inv;
        }
        b[r] *= inv;
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || a[q][c].is_zero()) {
                continue;
            }
            GaussQ f = a[q][c];
            for (std::size_t k = c; k < cols; ++k) {
                if (!a[r][k].is_zero()) {
                    a[q][k] -= f * a[r][k];
                }
            }
            b[q] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t q = r; q < rows; ++q) {
        if (!b[q].is_zero()) {
            return std::nullopt;
        }
    }
    std::vector<GaussQ> x(cols);
    for (std::size_t q = 0; q < r; ++q) {
        x[pivot_col[q]] = b[q];
    }
    return x;
}

QMatrix invert_exact(const QMatrix &a)
{
    const std::size_t n = a.size();
    QMatrix inv(n, std::vector<GaussQ>(n));
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<GaussQ> e(n);
        e[c] = GaussQ(1);
        auto x = solve_exact(a, e);
        if (!x) {
            throw std::domain_error("singular matrix");
        }
        // a rank-deficient system could still be consistent for some columns
        for (std::size_t r = 0; r < n; ++r) {
            inv[r][c] = (*x)[r];
        }
    }
    // verify, since free variables may have been zeroed
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            GaussQ s;
            for (std::size_t k = 0; k < n; ++k) {
                s += a[i][k] * inv[k][j];
            }
            if (!(s == GaussQ(i == j ? 1 : 0))) {
                throw std::domain_error("singular matrix");
            }
        }
    }
    return inv;
}

} // namespace fedlab
