#include "toroidalg/linalg.hpp"

#include <stdexcept>

namespace toroidalg {

Vec zero_vec(size_t n) { return Vec(n); }

Vec unit_vec(size_t n, size_t k)
{
    Vec v(n);
    v[k] = 1;
    return v;
}

bool is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec add(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const CycScalar& s, const Vec& a)
{
    Vec r = a;
    for (auto& x : r) x *= s;
    return r;
}

void axpy(Vec& y, const CycScalar& s, const Vec& x)
{
    if (y.size() != x.size()) throw std::invalid_argument("vector size mismatch");
    if (s.is_zero()) return;
    for (size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero()) y[i] += s * x[i];
}

Mat zero_mat(size_t rows, size_t cols) { return Mat(rows, Vec(cols)); }

Mat identity_mat(size_t n)
{
    Mat m = zero_mat(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat matmul(const Mat& a, const Mat& b)
{
    if (a.empty()) return {};
    const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    if (a[0].size() != k) throw std::invalid_argument("matmul: shape mismatch");
    Mat r = zero_mat(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Vec matvec(const Mat& a, const Vec& x)
{
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) r[i] += a[i][j] * x[j];
    }
    return r;
}

Mat transpose(const Mat& a)
{
    if (a.empty()) return {};
    Mat t = zero_mat(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Mat mat_pow(const Mat& a, long e)
{
    if (e < 0) return mat_pow(inverse(a), -e);
    Mat r = identity_mat(a.size()), base = a;
    while (e) {
        if (e & 1) r = matmul(r, base);
        e >>= 1;
        if (e) base = matmul(base, base);
    }
    return r;
}

std::vector<size_t> rref(Mat& a)
{
    std::vector<size_t> pivots;
    if (a.empty()) return pivots;
    const size_t rows = a.size(), cols = a[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && a[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        CycScalar inv = a[row][col].inverse();
        for (size_t k = col; k < cols; ++k)
            if (!a[row][k].is_zero()) a[row][k] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            CycScalar f = a[r][col];
            for (size_t k = col; k < cols; ++k)
                if (!a[row][k].is_zero()) a[r][k] -= f * a[row][k];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(Mat a) { return rref(a).size(); }

std::vector<Vec> nullspace(const Mat& a, size_t cols)
{
    Mat m = a;
    for (auto& row : m)
        if (row.size() != cols) throw std::invalid_argument("nullspace: shape mismatch");
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols);
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b)
{
    const size_t rows = a.size();
    if (b.size() != rows) throw std::invalid_argument("solve: shape mismatch");
    const size_t cols = rows ? a[0].size() : 0;
    Mat aug = a;
    for (size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

Mat inverse(const Mat& a)
{
    const size_t n = a.size();
    Mat aug = a;
    for (size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw std::invalid_argument("inverse: not square");
        aug[i].resize(2 * n);
        aug[i][n + i] = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw ArithmeticError("inverse: singular matrix");
    Mat r = zero_mat(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
    return r;
}

std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v)
{
    if (basis.empty()) {
        if (is_zero(v)) return Vec{};
        return std::nullopt;
    }
    return solve(transpose(basis), v);
}

std::vector<Vec> span_basis(const std::vector<Vec>& vs)
{
    if (vs.empty()) return {};
    Mat m = vs;
    auto pivots = rref(m);
    m.resize(pivots.size());
    return m;
}

} // namespace toroidalg
