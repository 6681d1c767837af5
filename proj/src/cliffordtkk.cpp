#include "toroidalg/cliffordtkk.hpp"

#include "toroidalg/clifford_examples.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace toroidalg {

namespace {

int mod2(long x) { return static_cast<int>(((x % 2) + 2) % 2); }

bool is_zero_coset(const std::vector<int>& c)
{
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

std::vector<int> coset_sum(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % 2;
    return c;
}

Multi add_multi(const Multi& a, const Multi& b)
{
    Multi c = a;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

bool is_zero_mat(const Mat& a)
{
    for (const auto& row : a)
        if (!is_zero(row)) return false;
    return true;
}

Mat mat_sub(const Mat& a, const Mat& b)
{
    Mat c = a;
    for (size_t i = 0; i < c.size(); ++i) c[i] = sub(c[i], b[i]);
    return c;
}

std::string multi_str(const Multi& mu)
{
    std::string s = "(";
    for (size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
    return s + ")";
}

const char* wing_name(int x)
{
    static const char* names[] = {"X1", "X2", "X3"};
    return names[x];
}

} // namespace

std::vector<int> JordanTorus::coset(const Multi& mu) const
{
    std::vector<int> c;
    for (long x : mu) c.push_back(mod2(x));
    return c;
}

int JordanTorus::coset_index(const Multi& mu) const
{
    if (static_cast<int>(mu.size()) != m) return -1;
    auto c = coset(mu);
    for (size_t i = 0; i < cosets.size(); ++i)
        if (cosets[i] == c) return static_cast<int>(i);
    return -1;
}

std::vector<std::vector<int>> parse_cosets(const std::string& text)
{
    static const std::regex whole(R"(\s*\(\s*-?\d+(\s*,\s*-?\d+)*\s*\)(\s*,\s*\(\s*-?\d+(\s*,\s*-?\d+)*\s*\))*\s*)");
    if (!std::regex_match(text, whole)) throw std::invalid_argument("malformed coset list: '" + text + "'");
    static const std::regex tuple(R"(\(([^)]*)\))");
    std::vector<std::vector<int>> out;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), tuple); it != std::sregex_iterator(); ++it) {
        std::vector<int> c;
        std::string body = (*it)[1];
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream is(body);
        long v;
        while (is >> v) c.push_back(mod2(v));
        out.push_back(std::move(c));
    }
    return out;
}

JordanTorus make_jordan_torus(std::vector<std::vector<int>> cosets)
{
    if (cosets.empty()) throw std::invalid_argument("Jordan torus: empty coset list");
    JordanTorus J;
    J.m = static_cast<int>(cosets[0].size());
    if (J.m < 1) throw std::invalid_argument("Jordan torus: need at least one variable");
    std::set<std::vector<int>> seen;
    for (auto& c : cosets) {
        if (static_cast<int>(c.size()) != J.m) throw std::invalid_argument("Jordan torus: cosets of mixed length");
        for (auto& x : c) x = mod2(x);
        if (!seen.insert(c).second) throw std::invalid_argument("Jordan torus: repeated coset " + coset_label(c));
    }
    auto zero = std::find_if(cosets.begin(), cosets.end(), is_zero_coset);
    if (zero == cosets.end()) throw std::invalid_argument("Jordan torus: the zero coset must belong to S");
    std::rotate(cosets.begin(), zero, zero + 1);

    // S generates Z^m iff the cosets span (Z/2)^m
    std::vector<std::vector<int>> rows;
    for (const auto& c : cosets) rows.push_back(c);
    size_t rank = 0;
    for (int col = 0; col < J.m && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i][col])
                for (int k = 0; k < J.m; ++k) rows[i][k] ^= rows[rank][k];
        ++rank;
    }
    if (static_cast<int>(rank) != J.m) throw std::invalid_argument("Jordan torus: S does not generate Z^m");
    J.cosets = std::move(cosets);
    return J;
}

std::optional<Multi> jordan_mul(const JordanTorus& J, const Multi& mu, const Multi& eta)
{
    if (!J.contains(mu)) throw std::domain_error("jordan_mul: " + multi_str(mu) + " is not in S");
    if (!J.contains(eta)) throw std::domain_error("jordan_mul: " + multi_str(eta) + " is not in S");
    auto a = J.coset(mu), b = J.coset(eta);
    if (is_zero_coset(a) || is_zero_coset(b) || a == b) return add_multi(mu, eta);
    return std::nullopt;
}

void TKKElement::add_wing(const Multi& mu, int x, const CycScalar& c)
{
    if (c.is_zero()) return;
    auto key = std::make_pair(mu, x);
    auto [it, fresh] = wings.try_emplace(key, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) wings.erase(it);
}

void TKKElement::add_op(const Multi& shift, const Mat& a)
{
    if (is_zero_mat(a)) return;
    auto [it, fresh] = ops.try_emplace(shift, a);
    if (fresh) return;
    for (size_t i = 0; i < a.size(); ++i) it->second[i] = toroidalg::add(it->second[i], a[i]);
    if (is_zero_mat(it->second)) ops.erase(it);
}

TKKElement& TKKElement::operator+=(const TKKElement& o)
{
    for (const auto& [k, c] : o.wings) add_wing(k.first, k.second, c);
    for (const auto& [k, a] : o.ops) add_op(k, a);
    return *this;
}

TKKElement TKKElement::scaled(const CycScalar& c) const
{
    TKKElement r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : wings) r.wings.emplace(k, v * c);
    for (const auto& [k, a] : ops) {
        Mat b = a;
        for (auto& row : b) row = scale(c, row);
        r.ops.emplace(k, std::move(b));
    }
    return r;
}

TKKElement tkk_wing(const Multi& mu, int x, const CycScalar& c)
{
    TKKElement e;
    e.add_wing(mu, x, c);
    return e;
}

std::pair<Multi, Mat> left_multiplication(const JordanTorus& J, const Multi& gamma)
{
    const int g = J.coset_index(gamma);
    if (g < 0) throw std::domain_error("left_multiplication: " + multi_str(gamma) + " is not in S");
    Mat a = zero_mat(J.r(), J.r());
    for (size_t src = 0; src < J.r(); ++src) {
        const auto& cg = J.cosets[g];
        const auto& cs = J.cosets[src];
        if (!(is_zero_coset(cg) || is_zero_coset(cs) || cg == cs)) continue;
        auto target = coset_sum(cg, cs);
        for (size_t t = 0; t < J.r(); ++t)
            if (J.cosets[t] == target) a[t][src] = 1;
    }
    return {gamma, a};
}

TKKElement inner_derivation(const JordanTorus& J, const Multi& gamma, const Multi& eta)
{
    auto [sg, a] = left_multiplication(J, gamma);
    auto [se, b] = left_multiplication(J, eta);
    TKKElement e;
    e.add_op(add_multi(sg, se), mat_sub(matmul(a, b), matmul(b, a)));
    return e;
}

namespace {

// [X_i, X_j] = eps_{ijk} X_k
int sl2_bracket(int i, int j, int& sign)
{
    if (i == j) return -1;
    int k = 3 - i - j;
    sign = ((j - i + 3) % 3 == 1) ? 1 : -1;
    return k;
}

// d(s^eta) for the operator (shift, a)
std::optional<std::pair<Multi, CycScalar>> apply_op(const JordanTorus& J, const Multi& shift, const Mat& a,
                                                    const Multi& eta)
{
    int src = J.coset_index(eta);
    if (src < 0) return std::nullopt;
    Multi target = add_multi(eta, shift);
    int t = J.coset_index(target);
    for (size_t i = 0; i < J.r(); ++i)
        if (static_cast<int>(i) != t && !a[i][src].is_zero())
            throw std::logic_error("operator does not respect the coset grading");
    if (t < 0 || a[t][src].is_zero()) return std::nullopt;
    return std::make_pair(target, a[t][src]);
}

} // namespace

TKKElement tkk_bracket(const TKKSetup& S, const TKKElement& x, const TKKElement& y)
{
    const JordanTorus& J = S.J;
    TKKElement out;
    for (const auto& [kx, cx] : x.wings)
        for (const auto& [ky, cy] : y.wings) {
            const CycScalar c = cx * cy;
            int sign = 1;
            int k = sl2_bracket(kx.second, ky.second, sign);
            if (k >= 0)
                if (auto prod = jordan_mul(J, kx.first, ky.first)) out.add_wing(*prod, k, c * CycScalar(sign));
            if (kx.second == ky.second) out += inner_derivation(J, kx.first, ky.first).scaled(c * S.sl2_form);
        }
    // [d, a x] = d(a) x, and [a x, d] = -d(a) x
    for (const auto& [shift, a] : x.ops)
        for (const auto& [ky, cy] : y.wings)
            if (auto img = apply_op(J, shift, a, ky.first)) out.add_wing(img->first, ky.second, img->second * cy);
    for (const auto& [kx, cx] : x.wings)
        for (const auto& [shift, a] : y.ops)
            if (auto img = apply_op(J, shift, a, kx.first)) out.add_wing(img->first, kx.second, -img->second * cx);
    for (const auto& [sx, a] : x.ops)
        for (const auto& [sy, b] : y.ops) out.add_op(add_multi(sx, sy), mat_sub(matmul(a, b), matmul(b, a)));
    return out;
}

Degree tkk_degree(const Multi& mu)
{
    return Degree{mu[0], Multi(mu.begin() + 1, mu.end())};
}

namespace {

size_t so_index_of_coset(size_t coset_slot)
{
    // index set is 1, 2, 3 followed by the nonzero cosets in order
    return 3 + (coset_slot - 1);
}

} // namespace

ToroidalElement phi_map(const TKKSetup& S, const TKKElement& x)
{
    const JordanTorus& J = S.J;
    const ToroidalContext& ctx = S.target;
    const size_t dim = ctx.algebra.dim();
    const size_t n = ctx.algebra.index_labels.size();
    auto unit = [&](size_t i, size_t j) {
        Vec v(dim);
        if (i == j) return v;
        size_t a = std::min(i, j), b = std::max(i, j);
        v[so_basis_index(n, a, b)] = i < j ? 1 : -1;
        return v;
    };
    ToroidalElement out;
    for (const auto& [k, c] : x.wings) {
        const Multi& mu = k.first;
        const int slot = J.coset_index(mu);
        if (slot < 0) throw std::domain_error("phi_map: wing degree " + multi_str(mu) + " is not in S");
        Vec v;
        if (slot == 0) {
            static const size_t table[3][2] = {{2, 1}, {0, 2}, {1, 0}}; // e32, e13, e21
            v = unit(table[k.second][0], table[k.second][1]);
        } else {
            v = unit(so_index_of_coset(slot), static_cast<size_t>(k.second));
        }
        out += loop_element(ctx, tkk_degree(mu), scale(c, v));
    }
    for (const auto& [shift, a] : x.ops) {
        // the operator must be antisymmetric and supported on pairs of nonzero cosets
        Vec v(dim);
        for (size_t i = 0; i < J.r(); ++i)
            for (size_t j = 0; j < J.r(); ++j) {
                if (a[i][j].is_zero()) continue;
                if (i == 0 || j == 0 || i == j || a[j][i] != -a[i][j])
                    throw std::domain_error("phi_map: operator at shift " + multi_str(shift) +
                                            " is not in the span of [L_J, L_J]");
                if (i < j) axpy(v, a[i][j], unit(so_index_of_coset(i), so_index_of_coset(j)));
            }
        out += loop_element(ctx, tkk_degree(shift), v);
    }
    return out;
}

TKKSetup make_tkk_setup(const std::vector<std::vector<int>>& cosets)
{
    TKKSetup S;
    S.J = make_jordan_torus(cosets);
    StructLie L = build_so(clifford_index_set(S.J.cosets));
    std::vector<LieAut> autos;
    for (const auto& s : clifford_signs(S.J.cosets, S.J.m)) autos.push_back(conj_automorphism(L, s));
    S.target = make_context(L, autos);

    // Fix (X_1|X_1) from one pair with distinct nonzero cosets; with the form at 1 the
    // bracket of the pair is exactly [L, L], whose image must match the loop bracket.
    if (S.J.r() < 3) {
        S.probe = "none (fewer than two nonzero cosets)";
        return S;
    }
    Multi g(S.J.cosets[1].begin(), S.J.cosets[1].end()), h(S.J.cosets[2].begin(), S.J.cosets[2].end());
    S.sl2_form = 1;
    TKKElement a = tkk_wing(g, 0), b = tkk_wing(h, 0);
    ToroidalElement lhs = phi_map(S, tkk_bracket(S, a, b));
    ToroidalElement rhs = loop_bracket(S.target, phi_map(S, a), phi_map(S, b));
    const auto& [key, c] = *lhs.terms.begin();
    auto it = rhs.terms.find(key);
    if (it == rhs.terms.end()) throw std::logic_error("TKK form calibration: probe bracket vanishes");
    S.sl2_form = it->second / c;
    S.probe = "[s^" + multi_str(g) + " X1, s^" + multi_str(h) + " X1]";
    return S;
}

std::vector<TKKGenerator> tkk_generators(const JordanTorus& J, int box)
{
    std::vector<TKKGenerator> gens;
    Multi mu(J.m, -box);
    while (true) {
        if (J.contains(mu))
            for (int x = 0; x < 3; ++x)
                gens.push_back({tkk_wing(mu, x), mu, "s^" + multi_str(mu) + " " + wing_name(x)});
        auto nu = J.coset(mu);
        for (size_t i = 1; i < J.r(); ++i)
            for (size_t j = i + 1; j < J.r(); ++j) {
                if (coset_sum(J.cosets[i], J.cosets[j]) != nu) continue;
                Multi g(J.cosets[i].begin(), J.cosets[i].end());
                Multi h(mu);
                for (int p = 0; p < J.m; ++p) h[p] -= g[p];
                gens.push_back({inner_derivation(J, g, h), mu,
                                "[L_s^" + multi_str(g) + ", L_s^" + multi_str(h) + "]"});
            }
        int p = 0;
        while (p < J.m && ++mu[p] > box) mu[p++] = -box;
        if (p == J.m) break;
    }
    return gens;
}

namespace {

size_t binom(long n, long k)
{
    if (k < 0 || n < k) return 0;
    size_t r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// dim TKK_mu from the operator model: wings plus the span of [L_g, L_{mu-g}]
size_t tkk_component_dim(const JordanTorus& J, const Multi& mu, int reach)
{
    size_t d = J.contains(mu) ? 3 : 0;
    std::vector<Vec> flat;
    Multi g(J.m, -reach);
    while (true) {
        Multi h(mu);
        for (int p = 0; p < J.m; ++p) h[p] -= g[p];
        if (J.contains(g) && J.contains(h)) {
            TKKElement e = inner_derivation(J, g, h);
            for (const auto& [s, a] : e.ops) {
                Vec v;
                for (const auto& row : a) v.insert(v.end(), row.begin(), row.end());
                flat.push_back(std::move(v));
            }
        }
        int p = 0;
        while (p < J.m && ++g[p] > reach) g[p++] = -reach;
        if (p == J.m) break;
    }
    return d + span_basis(flat).size();
}

} // namespace

TKKReport verify_iso(const TKKSetup& S, int box)
{
    const JordanTorus& J = S.J;
    TKKReport rep;
    rep.probe = S.probe;
    rep.sl2_form = S.sl2_form;
    auto gens = tkk_generators(J, box);
    rep.generators = gens.size();

    std::vector<ToroidalElement> images;
    rep.degree_zero = true;
    for (const auto& g : gens) {
        images.push_back(phi_map(S, g.element));
        for (const auto& [k, c] : images.back().terms)
            if (k.deg != tkk_degree(g.degree)) rep.degree_zero = false;
    }
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = 0; b < gens.size(); ++b) {
            ++rep.pairs;
            ToroidalElement lhs = phi_map(S, tkk_bracket(S, gens[a].element, gens[b].element));
            ToroidalElement rhs = loop_bracket(S.target, images[a], images[b]);
            if (lhs == rhs) continue;
            if (rep.mismatches++ == 0)
                rep.first_mismatch = "[" + gens[a].label + ", " + gens[b].label + "]: phi gives " +
                                     describe(S.target, lhs) + " but the loop bracket gives " +
                                     describe(S.target, rhs);
        }

    // injectivity: generators of equal degree have independent images
    std::map<Multi, std::vector<Vec>> by_degree;
    for (size_t a = 0; a < gens.size(); ++a) {
        Vec v(S.target.algebra.dim());
        for (const auto& [k, c] : images[a].terms) v[k.index] += c;
        by_degree[gens[a].degree].push_back(std::move(v));
    }
    rep.injective = true;
    for (const auto& [d, vs] : by_degree)
        if (span_basis(vs).size() != vs.size()) rep.injective = false;

    // graded dimensions, at two representatives of each coset
    rep.dims_coset_constant = true;
    for (int code = 0; code < (1 << J.m); ++code) {
        std::vector<int> c(J.m);
        Multi rep1(J.m), rep2(J.m);
        for (int p = 0; p < J.m; ++p) {
            c[p] = (code >> p) & 1;
            rep1[p] = c[p];
            rep2[p] = c[p] - 2 * (p % 2 ? 1 : -1);
        }
        size_t d1 = tkk_component_dim(J, rep1, box + 1), d2 = tkk_component_dim(J, rep2, box + 3);
        if (d1 != d2) rep.dims_coset_constant = false;
        rep.tkk_dims[c] = d1;
        rep.loop_dims[c] = S.target.grading.dim(c);
    }
    rep.dims_equal = rep.tkk_dims == rep.loop_dims;
    const long r = static_cast<long>(J.r());
    rep.total_lhs = 3 * r + static_cast<long>(binom(r - 1, 2));
    rep.total_rhs = static_cast<long>(binom(r + 2, 2));
    size_t sum = 0;
    for (const auto& [c, d] : rep.tkk_dims) sum += d;
    if (static_cast<long>(sum) != rep.total_lhs) rep.dims_equal = false;
    return rep;
}

JacobiReport tkk_jacobi(const TKKSetup& S, int box)
{
    auto gens = tkk_generators(S.J, box);
    JacobiReport rep;
    const size_t n = gens.size();
    // cache pairwise brackets
    std::vector<std::vector<TKKElement>> br(n, std::vector<TKKElement>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) br[a][b] = tkk_bracket(S, gens[a].element, gens[b].element);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c) {
                ++rep.triples;
                TKKElement j = tkk_bracket(S, gens[a].element, br[b][c]);
                j += tkk_bracket(S, gens[b].element, br[c][a]);
                j += tkk_bracket(S, gens[c].element, br[a][b]);
                if (j.is_zero()) continue;
                if (rep.failures++ == 0)
                    rep.first_failure = gens[a].label + ", " + gens[b].label + ", " + gens[c].label;
            }
    return rep;
}

} // namespace toroidalg
