#include "toroidalg/liestruct.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace toroidalg {

Vec bracket(const StructLie& L, const Vec& x, const Vec& y)
{
    const size_t n = L.dim();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("bracket: dimension mismatch");
    Vec r(n);
    for (size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            const auto& terms = L.sc[i][j];
            if (terms.empty()) continue;
            CycScalar c = x[i] * y[j];
            for (const auto& [k, v] : terms) r[k] += c * v;
        }
    }
    return r;
}

CycScalar form_value(const StructLie& L, const Vec& x, const Vec& y)
{
    CycScalar s;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero() && !L.form[i][j].is_zero()) s += x[i] * L.form[i][j] * y[j];
    }
    return s;
}

Mat ad_matrix(const StructLie& L, const Vec& x)
{
    const size_t n = L.dim();
    Mat m = zero_mat(n, n);
    for (size_t j = 0; j < n; ++j) {
        Vec col = bracket(L, x, unit_vec(n, j));
        for (size_t k = 0; k < n; ++k) m[k][j] = col[k];
    }
    return m;
}

size_t so_basis_index(size_t n, size_t i, size_t j)
{
    // position of (i,j), i<j, in lexicographic order
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Mat so_to_matrix(const StructLie& L, const Vec& x)
{
    const size_t n = L.index_labels.size();
    Mat m = zero_mat(n, n);
    for (size_t k = 0; k < L.dim(); ++k)
        if (!x[k].is_zero())
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    if (!L.realization[k][a][b].is_zero()) m[a][b] += x[k] * L.realization[k][a][b];
    return m;
}

Vec so_from_matrix(const StructLie& L, const Mat& m)
{
    const size_t n = L.index_labels.size();
    Vec x(L.dim());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) x[so_basis_index(n, i, j)] = m[i][j];
        if (!m[i][i].is_zero()) throw std::invalid_argument("matrix is not antisymmetric");
    }
    if (so_to_matrix(L, x) != m) throw std::invalid_argument("matrix is not antisymmetric");
    return x;
}

namespace {

Mat commutator(const Mat& a, const Mat& b)
{
    Mat ab = matmul(a, b), ba = matmul(b, a);
    for (size_t i = 0; i < ab.size(); ++i)
        for (size_t j = 0; j < ab.size(); ++j) ab[i][j] -= ba[i][j];
    return ab;
}

CycScalar trace(const Mat& a)
{
    CycScalar t;
    for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

// Joint eigenspaces of commuting ad-operators for candidate eigenvalue tuples.
std::vector<std::pair<std::vector<CycScalar>, std::vector<Vec>>>
joint_eigenspaces(const StructLie& L, const std::vector<Vec>& hs, const std::vector<CycScalar>& candidates)
{
    const size_t n = L.dim();
    std::vector<Mat> ads;
    for (const auto& h : hs) ads.push_back(ad_matrix(L, h));
    std::vector<std::pair<std::vector<CycScalar>, std::vector<Vec>>> out;
    std::vector<size_t> idx(hs.size(), 0);
    while (true) {
        Mat stacked;
        std::vector<CycScalar> vals;
        for (size_t k = 0; k < hs.size(); ++k) {
            vals.push_back(candidates[idx[k]]);
            for (size_t r = 0; r < n; ++r) {
                Vec row = ads[k][r];
                row[r] -= candidates[idx[k]];
                stacked.push_back(std::move(row));
            }
        }
        auto ker = nullspace(stacked, n);
        if (!ker.empty()) out.emplace_back(vals, ker);
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == candidates.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

} // namespace

StructLie build_so(const std::vector<std::string>& index_set)
{
    const size_t n = index_set.size();
    if (n < 3) throw std::invalid_argument("build_so: need at least 3 indices");
    StructLie L;
    L.index_labels = index_set;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            L.labels.push_back("e(" + index_set[i] + "," + index_set[j] + ")");
            Mat m = zero_mat(n, n);
            m[i][j] = 1;
            m[j][i] = -1;
            L.realization.push_back(std::move(m));
        }
    const size_t d = L.dim();
    L.sc.assign(d, std::vector<SparseVec>(d));
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
            Vec c = so_from_matrix(L, commutator(L.realization[a], L.realization[b]));
            for (size_t k = 0; k < d; ++k)
                if (!c[k].is_zero()) L.sc[a][b].emplace_back(k, c[k]);
        }

    // trace form, later rescaled so that long roots have length 2
    Mat trace_form = zero_mat(d, d);
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) trace_form[a][b] = trace(matmul(L.realization[a], L.realization[b]));

    const size_t rank = n / 2;
    std::vector<Vec> hs;
    for (size_t k = 0; k < rank; ++k) hs.push_back(unit_vec(d, so_basis_index(n, 2 * k, 2 * k + 1)));
    const CycScalar i = CycScalar::i();
    auto spaces = joint_eigenspaces(L, hs, {CycScalar(0), i, -i});

    L.form = trace_form;
    auto tf = [&](const Vec& x, const Vec& y) { return form_value(L, x, y); };
    std::vector<CycScalar> lengths;
    for (const auto& [vals, ker] : spaces) {
        bool zero = std::all_of(vals.begin(), vals.end(), [](const CycScalar& v) { return v.is_zero(); });
        if (zero) continue;
        std::vector<CycScalar> neg;
        for (const auto& v : vals) neg.push_back(-v);
        const Vec* opposite = nullptr;
        for (const auto& [vals2, ker2] : spaces)
            if (vals2 == neg) opposite = &ker2.front();
        if (!opposite) throw std::logic_error("build_so: root without opposite");
        const Vec& ea = ker.front();
        Vec t = bracket(L, ea, *opposite);
        CycScalar pairing = tf(ea, *opposite);
        // t lies in the Cartan; alpha(t) from its coordinates on the h_k
        CycScalar alpha_t;
        for (size_t k = 0; k < rank; ++k) alpha_t += vals[k] * t[so_basis_index(n, 2 * k, 2 * k + 1)];
        lengths.push_back(alpha_t / pairing);
    }
    std::vector<Rational> rl;
    for (const auto& l : lengths) rl.push_back(l.rational());
    Rational longest = *std::max_element(rl.begin(), rl.end());
    Rational shortest = *std::min_element(rl.begin(), rl.end());
    CycScalar kappa = CycScalar(longest / 2);
    for (auto& row : L.form)
        for (auto& x : row) x *= kappa;

    if (n == 3) {
        L.type = "A1";
        L.dual_coxeter = 2;
    } else if (longest != shortest) {
        L.type = "B" + std::to_string(rank);
        L.dual_coxeter = Rational(2 * static_cast<long>(rank) - 1);
    } else {
        L.type = "D" + std::to_string(rank);
        L.dual_coxeter = Rational(2 * static_cast<long>(rank) - 2);
    }
    return L;
}

bool check_antisymmetry(const StructLie& L)
{
    const size_t n = L.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec a = bracket(L, unit_vec(n, i), unit_vec(n, j));
            Vec b = bracket(L, unit_vec(n, j), unit_vec(n, i));
            if (!is_zero(add(a, b))) return false;
        }
    return true;
}

bool check_jacobi(const StructLie& L)
{
    const size_t n = L.dim();
    std::vector<std::vector<Vec>> br(n, std::vector<Vec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) br[i][j] = bracket(L, unit_vec(n, i), unit_vec(n, j));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                Vec s = bracket(L, unit_vec(n, i), br[j][k]);
                s = add(s, bracket(L, unit_vec(n, j), br[k][i]));
                s = add(s, bracket(L, unit_vec(n, k), br[i][j]));
                if (!is_zero(s)) return false;
            }
    return true;
}

bool check_form_invariance(const StructLie& L)
{
    const size_t n = L.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (L.form[i][j] != L.form[j][i]) return false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec xy = bracket(L, unit_vec(n, i), unit_vec(n, j));
            for (size_t k = 0; k < n; ++k) {
                Vec yz = bracket(L, unit_vec(n, j), unit_vec(n, k));
                if (form_value(L, xy, unit_vec(n, k)) != form_value(L, unit_vec(n, i), yz)) return false;
            }
        }
    return true;
}

Vec apply_aut(const LieAut& s, const Vec& x) { return matvec(s.matrix, x); }

bool preserves_bracket(const StructLie& L, const LieAut& s)
{
    const size_t n = L.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec lhs = apply_aut(s, bracket(L, unit_vec(n, i), unit_vec(n, j)));
            Vec rhs = bracket(L, apply_aut(s, unit_vec(n, i)), apply_aut(s, unit_vec(n, j)));
            if (lhs != rhs) return false;
        }
    return true;
}

bool preserves_form(const StructLie& L, const LieAut& s)
{
    const size_t n = L.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (form_value(L, apply_aut(s, unit_vec(n, i)), apply_aut(s, unit_vec(n, j))) != L.form[i][j])
                return false;
    return true;
}

bool commute(const LieAut& a, const LieAut& b)
{
    return matmul(a.matrix, b.matrix) == matmul(b.matrix, a.matrix);
}

int matrix_order(const Mat& m, int bound)
{
    const Mat id = identity_mat(m.size());
    Mat p = m;
    for (int k = 1; k <= bound; ++k) {
        if (p == id) return k;
        p = matmul(p, m);
    }
    throw std::domain_error("automorphism order exceeds bound");
}

LieAut conj_automorphism(const StructLie& L, const std::vector<int>& diag_signs)
{
    const size_t n = L.index_labels.size();
    if (diag_signs.size() != n)
        throw std::invalid_argument("conj_automorphism: expected " + std::to_string(n) + " signs, got " +
                                    std::to_string(diag_signs.size()));
    for (int s : diag_signs)
        if (s != 1 && s != -1) throw std::invalid_argument("conj_automorphism: signs must be +1 or -1");
    LieAut a;
    a.matrix = zero_mat(L.dim(), L.dim());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            size_t k = so_basis_index(n, i, j);
            a.matrix[k][k] = diag_signs[i] * diag_signs[j];
            if (diag_signs[i] * diag_signs[j] == -1) a.order = 2;
        }
    return a;
}

bool is_inner_sign_aut(const std::vector<int>& diag_signs)
{
    auto minus = std::count(diag_signs.begin(), diag_signs.end(), -1);
    auto plus = static_cast<long>(diag_signs.size()) - minus;
    return minus % 2 == 0 || plus % 2 == 0;
}

std::map<long, std::vector<Vec>> integer_eigenspaces(const StructLie& L, const Vec& h)
{
    const size_t n = L.dim();
    const long bound = 64;
    Mat a = ad_matrix(L, h);
    std::map<long, std::vector<Vec>> spaces;
    size_t total = 0;
    for (long k = -bound; k <= bound && total < n; ++k) {
        Mat m = a;
        for (size_t i = 0; i < n; ++i) m[i][i] -= CycScalar(k);
        auto ker = nullspace(m, n);
        if (!ker.empty()) {
            total += ker.size();
            spaces[k] = std::move(ker);
        }
    }
    if (total != n) throw std::domain_error("ad h is not diagonalizable with integer eigenvalues");
    return spaces;
}

LieAut exp_ad_rational(const StructLie& L, const Vec& h, const Rational& t)
{
    const size_t n = L.dim();
    auto spaces = integer_eigenspaces(L, h);
    Mat p = zero_mat(n, n), pd = zero_mat(n, n);
    size_t col = 0;
    for (const auto& [k, vs] : spaces) {
        Rational e = t * k;
        e.canonicalize();
        long den = e.get_den().get_si();
        long num = e.get_num().get_si();
        CycScalar z = CycScalar::root_of_unity(static_cast<int>(den), num);
        for (const auto& v : vs) {
            for (size_t r = 0; r < n; ++r) {
                p[r][col] = v[r];
                pd[r][col] = z * v[r];
            }
            ++col;
        }
    }
    LieAut a;
    a.matrix = matmul(pd, inverse(p));
    a.order = matrix_order(a.matrix);
    return a;
}

size_t Grading::dim(const Coset& s) const
{
    auto it = components.find(reduce(s));
    return it == components.end() ? 0 : it->second.size();
}

Coset Grading::reduce(Coset s) const
{
    for (size_t i = 0; i < s.size(); ++i) s[i] = ((s[i] % orders[i]) + orders[i]) % orders[i];
    return s;
}

Grading simultaneous_grading(const StructLie& L, const std::vector<LieAut>& autos,
                             const std::vector<CycScalar>& roots)
{
    if (autos.size() != roots.size()) throw std::invalid_argument("simultaneous_grading: one root per automorphism");
    for (size_t i = 0; i < autos.size(); ++i)
        for (size_t j = i + 1; j < autos.size(); ++j)
            if (!commute(autos[i], autos[j]))
                throw std::domain_error("simultaneous_grading: automorphisms " + std::to_string(i) + " and " +
                                        std::to_string(j) + " do not commute");
    for (size_t i = 0; i < autos.size(); ++i) {
        int m = autos[i].order;
        if (roots[i].pow(m) != CycScalar(1)) throw std::invalid_argument("root has wrong order");
        for (int k = 1; k < m; ++k)
            if (roots[i].pow(k) == CycScalar(1)) throw std::invalid_argument("root is not primitive");
    }
    const size_t n = L.dim();
    Grading g;
    for (const auto& a : autos) g.orders.push_back(a.order);
    Coset s(autos.size(), 0);
    size_t total = 0;
    while (true) {
        Mat stacked;
        for (size_t i = 0; i < autos.size(); ++i) {
            CycScalar ev = roots[i].pow(s[i]);
            for (size_t r = 0; r < n; ++r) {
                Vec row = autos[i].matrix[r];
                row[r] -= ev;
                stacked.push_back(std::move(row));
            }
        }
        auto ker = autos.empty() ? nullspace(zero_mat(1, n), n) : nullspace(stacked, n);
        if (!ker.empty()) {
            total += ker.size();
            g.components[s] = std::move(ker);
        }
        size_t k = 0;
        while (k < s.size() && ++s[k] == g.orders[k]) s[k++] = 0;
        if (k == s.size()) break;
    }
    if (total != n) throw std::domain_error("simultaneous_grading: automorphisms are not simultaneously diagonalizable");
    return g;
}

Grading simultaneous_grading(const StructLie& L, const std::vector<LieAut>& autos)
{
    std::vector<CycScalar> roots;
    for (const auto& a : autos) roots.push_back(CycScalar::root_of_unity(a.order, 1));
    return simultaneous_grading(L, autos, roots);
}

bool check_grading_compatible(const StructLie& L, const Grading& g)
{
    for (const auto& [s, bs] : g.components)
        for (const auto& [t, bt] : g.components) {
            Coset u(s.size());
            for (size_t i = 0; i < s.size(); ++i) u[i] = s[i] + t[i];
            u = g.reduce(u);
            auto it = g.components.find(u);
            for (const auto& x : bs)
                for (const auto& y : bt) {
                    Vec z = bracket(L, x, y);
                    if (is_zero(z)) continue;
                    if (it == g.components.end() || !coordinates(it->second, z)) return false;
                }
        }
    return true;
}

std::vector<Vec> centralizer(const StructLie& L, const std::vector<Vec>& within, const std::vector<Vec>& of)
{
    // x = sum c_i w_i with [x, h] = 0 for every h
    const size_t n = L.dim();
    if (within.empty()) return {};
    Mat rows;
    for (const auto& h : of) {
        std::vector<Vec> cols;
        for (const auto& w : within) cols.push_back(bracket(L, w, h));
        for (size_t r = 0; r < n; ++r) {
            Vec row(within.size());
            for (size_t c = 0; c < within.size(); ++c) row[c] = cols[c][r];
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return within;
    std::vector<Vec> out;
    for (const auto& c : nullspace(rows, within.size())) {
        Vec x(n);
        for (size_t i = 0; i < within.size(); ++i) axpy(x, c[i], within[i]);
        out.push_back(std::move(x));
    }
    return span_basis(out);
}

bool is_abelian(const StructLie& L, const std::vector<Vec>& h)
{
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < h.size(); ++j)
            if (!is_zero(bracket(L, h[i], h[j]))) return false;
    return true;
}

bool is_self_centralizing(const StructLie& L, const std::vector<Vec>& h)
{
    std::vector<Vec> all;
    for (size_t k = 0; k < L.dim(); ++k) all.push_back(unit_vec(L.dim(), k));
    auto c = centralizer(L, all, h);
    if (c.size() != span_basis(h).size()) return false;
    for (const auto& x : c)
        if (!coordinates(h, x)) return false;
    return true;
}

bool is_invariant(const LieAut& s, const std::vector<Vec>& h)
{
    for (const auto& x : h)
        if (!coordinates(h, apply_aut(s, x))) return false;
    return true;
}

namespace {

using Poly = std::vector<CycScalar>; // low degree first

void trim(Poly& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b)
{
    trim(a);
    CycScalar lead_inv = b.back().inverse();
    while (a.size() >= b.size()) {
        CycScalar f = a.back() * lead_inv;
        size_t shift = a.size() - b.size();
        for (size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        trim(a);
    }
    return a;
}

Poly minimal_polynomial(const Mat& a)
{
    const size_t n = a.size();
    std::vector<Vec> powers; // vectorized A^k
    Mat p = identity_mat(n);
    for (size_t deg = 0; deg <= n; ++deg) {
        Vec flat;
        for (const auto& row : p) flat.insert(flat.end(), row.begin(), row.end());
        if (!powers.empty()) {
            if (auto c = coordinates(powers, flat)) {
                Poly m(deg + 1);
                for (size_t k = 0; k < deg; ++k) m[k] = -(*c)[k];
                m[deg] = 1;
                return m;
            }
        }
        powers.push_back(std::move(flat));
        p = matmul(p, a);
    }
    throw std::logic_error("minimal polynomial: degree exceeds size");
}

} // namespace

bool is_ad_semisimple(const StructLie& L, const Vec& x)
{
    Poly m = minimal_polynomial(ad_matrix(L, x));
    Poly dm(m.size() > 1 ? m.size() - 1 : 0);
    for (size_t k = 1; k < m.size(); ++k) dm[k - 1] = m[k] * CycScalar(static_cast<long>(k));
    trim(dm);
    if (dm.empty()) return true;
    Poly a = m, b = dm;
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.size() == 1;
}

namespace {

struct CartanSampler {
    const StructLie& L;
    std::mt19937_64 rng;
    CartanSearch* info;

    std::vector<Vec> sample(const std::vector<Vec>& k_basis)
    {
        for (int attempt = 0; attempt < 2; ++attempt) {
            const int budget = 32;
            const long range = attempt == 0 ? 3 : 9;
            std::uniform_int_distribution<long> dist(-range, range);
            std::vector<Vec> best;
            Vec best_x;
            for (int s = 0; s < budget; ++s) {
                Vec x(L.dim());
                for (const auto& b : k_basis) axpy(x, CycScalar(dist(rng)), b);
                if (info) ++info->samples_used;
                auto c = centralizer(L, k_basis, {x});
                if (best.empty() || c.size() < best.size()) {
                    best = std::move(c);
                    best_x = x;
                }
            }
            if (certify(k_basis, best, best_x)) return best;
            if (info) info->widened = true;
        }
        throw std::runtime_error("invariant_cartan: could not certify a Cartan subalgebra after widening the sample budget");
    }

    bool certify(const std::vector<Vec>& k_basis, const std::vector<Vec>& h, const Vec& generic)
    {
        if (!is_abelian(L, h)) return false;
        auto c = centralizer(L, k_basis, h);
        if (c.size() != h.size()) return false;
        return is_ad_semisimple(L, generic);
    }

    std::vector<Vec> run(const std::vector<Vec>& k_basis, const std::vector<LieAut>& autos)
    {
        if (k_basis.empty()) return {};
        for (const auto& s : autos) {
            bool trivial = true;
            for (const auto& v : k_basis)
                if (apply_aut(s, v) != v) {
                    trivial = false;
                    break;
                }
            if (trivial) continue;
            // fixed points of s inside k
            Mat rows;
            std::vector<Vec> diffs;
            for (const auto& v : k_basis) diffs.push_back(sub(apply_aut(s, v), v));
            for (size_t r = 0; r < L.dim(); ++r) {
                Vec row(k_basis.size());
                for (size_t c = 0; c < k_basis.size(); ++c) row[c] = diffs[c][r];
                rows.push_back(std::move(row));
            }
            std::vector<Vec> fixed;
            for (const auto& c : nullspace(rows, k_basis.size())) {
                Vec x(L.dim());
                for (size_t i = 0; i < k_basis.size(); ++i) axpy(x, c[i], k_basis[i]);
                fixed.push_back(std::move(x));
            }
            auto h = run(span_basis(fixed), autos);
            return centralizer(L, k_basis, h);
        }
        return sample(k_basis);
    }
};

} // namespace

std::vector<Vec> invariant_cartan(const StructLie& L, const std::vector<LieAut>& autos, uint64_t seed,
                                  CartanSearch* info)
{
    if (info) *info = CartanSearch{seed, 0, false};
    CartanSampler sampler{L, std::mt19937_64(seed), info};
    std::vector<Vec> all;
    for (size_t k = 0; k < L.dim(); ++k) all.push_back(unit_vec(L.dim(), k));
    auto h = sampler.run(all, autos);
    if (!is_abelian(L, h) || !is_self_centralizing(L, h))
        throw std::runtime_error("invariant_cartan: result failed certification");
    for (const auto& s : autos)
        if (!is_invariant(s, h)) throw std::runtime_error("invariant_cartan: result is not invariant");
    return h;
}

} // namespace toroidalg
