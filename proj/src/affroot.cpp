#include "toroidalg/affroot.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace toroidalg {

namespace {

// (alpha_i | alpha_j) for a connected symmetrizable Cartan matrix, alpha_0 normalized to 2
std::vector<std::vector<Rational>> symmetrized(const std::vector<std::vector<int>>& a)
{
    const size_t n = a.size();
    std::vector<Rational> d(n, 0);
    std::vector<bool> seen(n, false);
    d[0] = 1;
    seen[0] = true;
    std::queue<size_t> todo;
    todo.push(0);
    while (!todo.empty()) {
        size_t i = todo.front();
        todo.pop();
        for (size_t j = 0; j < n; ++j) {
            if (seen[j] || a[i][j] == 0) continue;
            if (a[j][i] == 0) throw std::invalid_argument("Cartan matrix is not symmetrizable");
            d[j] = d[i] * a[i][j] / a[j][i];
            seen[j] = true;
            todo.push(j);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("Dynkin diagram is not connected");
    std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b[i][j] = d[i] * a[i][j];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (b[i][j] != b[j][i]) throw std::invalid_argument("Cartan matrix is not symmetrizable");
    return b;
}

bool is_negative(const RootVec& v)
{
    bool any = false;
    for (long x : v) {
        if (x > 0) return false;
        any = any || x < 0;
    }
    return any;
}

RootVec negate(RootVec v)
{
    for (auto& x : v) x = -x;
    return v;
}

} // namespace

RootVec AffineRootSystem::simple(size_t i) const
{
    RootVec v(size(), 0);
    v.at(i) = 1;
    return v;
}

RootVec AffineRootSystem::reflect(size_t i, const RootVec& v) const
{
    long pairing = 0;
    for (size_t j = 0; j < size(); ++j) pairing += cartan[i][j] * v[j];
    RootVec r = v;
    r[i] -= pairing;
    return r;
}

AffineRootSystem affine_from_finite(const std::vector<std::vector<int>>& fin, const std::vector<int>& marks)
{
    const size_t l = fin.size();
    if (marks.size() != l + 1 || marks[0] != 1)
        throw std::invalid_argument("affine marks must have length rank+1 and start with 1");
    auto b = symmetrized(fin);
    std::vector<Rational> theta_alpha(l, 0);
    Rational theta_theta = 0;
    for (size_t j = 0; j < l; ++j)
        for (size_t i = 0; i < l; ++i) theta_alpha[j] += Rational(marks[i + 1]) * b[i][j];
    for (size_t j = 0; j < l; ++j) theta_theta += Rational(marks[j + 1]) * theta_alpha[j];

    // the marks must describe the highest root: dominant and long
    Rational longest = 0;
    for (size_t j = 0; j < l; ++j) {
        longest = std::max(longest, b[j][j]);
        long pairing = 0;
        for (size_t i = 0; i < l; ++i) pairing += static_cast<long>(fin[j][i]) * marks[i + 1];
        if (pairing < 0) throw std::invalid_argument("marks do not give a dominant root");
    }
    if (theta_theta != longest) throw std::invalid_argument("marks do not give a long root");

    AffineRootSystem rs;
    rs.marks = marks;
    rs.cartan.assign(l + 1, std::vector<int>(l + 1, 0));
    rs.cartan[0][0] = 2;
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) rs.cartan[i + 1][j + 1] = fin[i][j];
    for (size_t j = 0; j < l; ++j) {
        Rational top = -2 * theta_alpha[j] / theta_theta;
        Rational side = -2 * theta_alpha[j] / b[j][j];
        if (top.get_den() != 1 || side.get_den() != 1)
            throw std::invalid_argument("marks are not those of the highest root");
        rs.cartan[0][j + 1] = static_cast<int>(top.get_num().get_si());
        rs.cartan[j + 1][0] = static_cast<int>(side.get_num().get_si());
    }
    for (size_t i = 0; i <= l; ++i) rs.labels.push_back("alpha" + std::to_string(i));
    if (!check_affine(rs)) throw std::invalid_argument("marks are not a null vector of the affine Cartan matrix");
    return rs;
}

bool check_affine(const AffineRootSystem& rs)
{
    const size_t n = rs.size();
    if (rs.cartan.size() != n) return false;
    for (size_t i = 0; i < n; ++i) {
        long s = 0;
        for (size_t j = 0; j < n; ++j) s += rs.cartan[i][j] * rs.marks[j];
        if (s != 0 || rs.cartan[i][i] != 2) return false;
    }
    // corank exactly one
    Mat a(n, Vec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = rs.cartan[i][j];
    return rank(a) == n - 1;
}

RootVec RootAut::apply(const RootVec& v) const
{
    RootVec out(images.size(), 0);
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j) out[j] += v[i] * images[i][j];
    return out;
}

RootAut identity_root_aut(size_t n)
{
    RootAut f;
    for (size_t i = 0; i < n; ++i) {
        RootVec v(n, 0);
        v[i] = 1;
        f.images.push_back(v);
    }
    return f;
}

RootAut compose(const RootAut& f, const RootAut& g)
{
    RootAut h;
    for (const auto& img : g.images) h.images.push_back(f.apply(img));
    h.chevalley = f.chevalley != g.chevalley;
    return h;
}

RootAut reflection_aut(const AffineRootSystem& rs, size_t i)
{
    RootAut f;
    for (size_t j = 0; j < rs.size(); ++j) f.images.push_back(rs.reflect(i, rs.simple(j)));
    return f;
}

RootAut diagram_root_aut(const std::vector<int>& perm)
{
    RootAut f;
    for (size_t i = 0; i < perm.size(); ++i) {
        RootVec v(perm.size(), 0);
        v.at(perm[i]) = 1;
        f.images.push_back(v);
    }
    return f;
}

RootAut word_action(const AffineRootSystem& rs, const std::vector<int>& word, const std::vector<int>& perm)
{
    RootAut f = diagram_root_aut(perm);
    for (auto it = word.rbegin(); it != word.rend(); ++it) f = compose(reflection_aut(rs, *it), f);
    return f;
}

bool preserves_form(const AffineRootSystem& rs, const RootAut& f)
{
    auto b = symmetrized(rs.cartan);
    auto pair = [&](const RootVec& x, const RootVec& y) {
        Rational s = 0;
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j) s += Rational(x[i] * y[j]) * b[i][j];
        return s;
    };
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = 0; j < rs.size(); ++j)
            if (pair(f.images[i], f.images[j]) != b[i][j]) return false;
    return true;
}

bool is_diagram_aut(const AffineRootSystem& rs, const std::vector<int>& perm)
{
    const size_t n = rs.size();
    if (perm.size() != n) return false;
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < n; ++i)
        if (sorted[i] != static_cast<int>(i)) return false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j]) return false;
    return true;
}

std::string root_str(const AffineRootSystem& rs, const RootVec& v)
{
    // n delta + finite part
    const long n = v[0];
    std::vector<std::pair<long, std::string>> terms;
    if (n != 0) terms.push_back({n, "delta"});
    for (size_t i = 1; i < v.size(); ++i) {
        long c = v[i] - n * rs.marks[i];
        if (c != 0) terms.push_back({c, rs.labels[i]});
    }
    if (terms.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < terms.size(); ++k) {
        auto [c, name] = terms[k];
        if (k == 0)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (std::labs(c) != 1) s += std::to_string(std::labs(c));
        s += name;
    }
    return s;
}

void AffineElement::add(const Rational& q, const Vec& x)
{
    if (toroidalg::is_zero(x)) return;
    auto [it, fresh] = loop.try_emplace(q, x);
    if (fresh) return;
    it->second = toroidalg::add(it->second, x);
    if (toroidalg::is_zero(it->second)) loop.erase(it);
}

AffineElement affine_bracket(const StructLie& L, const AffineElement& a, const AffineElement& b)
{
    AffineElement out;
    for (const auto& [p, x] : a.loop)
        for (const auto& [q, y] : b.loop) {
            out.add(p + q, bracket(L, x, y));
            if (p + q == 0) out.central += CycScalar(p) * form_value(L, x, y);
        }
    return out;
}

Untwist untwist_theta(const StructLie& L, const Vec& h, int m, const LieAut& sigma0)
{
    if (m < 1) throw PreconditionError("untwist: order must be positive");
    Rational t(1, m);
    t.canonicalize();
    LieAut realized = exp_ad_rational(L, h, t);
    if (realized.matrix != sigma0.matrix)
        throw PreconditionError("untwist: sigma_0 is not exp(2 pi i ad(h)/" + std::to_string(m) + ")");
    Untwist th;
    th.algebra = &L;
    th.h = h;
    th.m = m;
    th.eigen = integer_eigenspaces(L, h);
    Mat cols;
    for (const auto& [k, vs] : th.eigen)
        for (const auto& v : vs) {
            cols.push_back(v);
            th.eigen_value.push_back(k);
        }
    th.from_eigen = transpose(cols);
    th.to_eigen = inverse(th.from_eigen);
    return th;
}

namespace {

AffineElement shift_by_eigenvalue(const Untwist& th, const AffineElement& x, int direction)
{
    const StructLie& L = *th.algebra;
    AffineElement out;
    out.central = x.central;
    for (const auto& [q, v] : x.loop) {
        Vec c = matvec(th.to_eigen, v);
        std::map<long, Vec> parts;
        for (size_t b = 0; b < c.size(); ++b) {
            if (c[b].is_zero()) continue;
            auto& part = parts[th.eigen_value[b]];
            if (part.empty()) part = zero_vec(L.dim());
            for (size_t r = 0; r < part.size(); ++r) part[r] += c[b] * th.from_eigen[r][b];
        }
        for (const auto& [k, part] : parts) {
            Rational step(direction * k, th.m);
            step.canonicalize();
            Rational target = q + step;
            if (direction < 0 && target.get_den() != 1)
                throw std::domain_error("theta inverse: t_0^" + rational_str(q) +
                                        " component does not lie in the twisted loop algebra");
            out.add(target, part);
        }
        if (q == 0) {
            Rational w(direction, th.m);
            w.canonicalize();
            out.central += CycScalar(w) * form_value(L, v, th.h);
        }
    }
    return out;
}

} // namespace

AffineElement theta(const Untwist& th, const AffineElement& x)
{
    for (const auto& [q, v] : x.loop)
        if (q.get_den() != 1) throw std::domain_error("theta: untwisted degrees must be integers");
    return shift_by_eigenvalue(th, x, 1);
}

AffineElement theta_inverse(const Untwist& th, const AffineElement& y)
{
    return shift_by_eigenvalue(th, y, -1);
}

namespace {

std::vector<CycScalar> cartan_weights(const StructLie& L, const std::vector<Vec>& hs, const Vec& y)
{
    std::vector<CycScalar> w;
    for (const auto& hk : hs) {
        Vec ad = bracket(L, hk, y);
        size_t p = 0;
        while (p < y.size() && y[p].is_zero()) ++p;
        CycScalar lam = ad[p] / y[p];
        if (ad != scale(lam, y)) throw FactorizationError("image is not in a single root space");
        w.push_back(lam);
    }
    return w;
}

} // namespace

RootAut induced_root_action(const CliffordExample& ex, const AffineRootSystem& rs, const LieAut& sigma,
                            const Untwist& th)
{
    const StructLie& L = ex.algebra;
    const size_t l = ex.h.size();
    Mat fin(l, Vec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) fin[i][j] = ex.cartan[i][j];
    Mat fin_inv = inverse(fin);

    // e_0 = t_0 (x) (lowest root vector)
    Mat stacked;
    for (size_t k = 0; k < l; ++k) {
        Mat ad = ad_matrix(L, ex.h[k]);
        CycScalar lam = 0;
        for (size_t j = 0; j < l; ++j) lam -= CycScalar(static_cast<long>(rs.marks[j + 1] * ex.cartan[k][j]));
        for (size_t r = 0; r < ad.size(); ++r) {
            ad[r][r] -= lam;
            stacked.push_back(ad[r]);
        }
    }
    auto lowest = nullspace(stacked, L.dim());
    if (lowest.size() != 1) throw FactorizationError("lowest root space is not one-dimensional");

    RootAut f;
    for (size_t i = 0; i <= l; ++i) {
        AffineElement x;
        if (i == 0)
            x.add(1, lowest[0]);
        else
            x.add(0, ex.e[i - 1]);
        AffineElement tx = theta(th, x);
        AffineElement sx;
        sx.central = tx.central;
        for (const auto& [q, v] : tx.loop) sx.add(q, apply_aut(sigma, v));
        AffineElement y = theta_inverse(th, sx);
        if (y.loop.size() != 1 || !y.central.is_zero())
            throw FactorizationError("image of e_" + std::to_string(i) + " is not homogeneous");
        const auto& [n, v] = *y.loop.begin();
        Vec lam;
        for (const auto& w : cartan_weights(L, ex.h, v)) lam.push_back(w);
        Vec c = matvec(fin_inv, lam);
        RootVec root(l + 1, 0);
        const long deg = n.get_num().get_si();
        root[0] = deg;
        bool nonzero = false;
        for (size_t j = 0; j < l; ++j) {
            if (!c[j].is_rational() || c[j].rational().get_den() != 1)
                throw FactorizationError("image weight is not in the root lattice");
            long cj = c[j].rational().get_num().get_si();
            nonzero = nonzero || cj != 0;
            root[j + 1] = cj + deg * rs.marks[j + 1];
        }
        if (!nonzero) throw FactorizationError("image of e_" + std::to_string(i) + " is an imaginary root vector");
        f.images.push_back(root);
    }
    RootVec d = f.apply(rs.delta());
    if (d == negate(rs.delta())) f.chevalley = true;
    return f;
}

Factorization factorize_aut(const AffineRootSystem& rs, const RootAut& f, int bound)
{
    Factorization out;
    RootAut g = f;
    RootVec d = f.apply(rs.delta());
    if (d == negate(rs.delta())) {
        out.chevalley = true;
        for (auto& img : g.images) img = negate(img);
        g.chevalley = false;
    } else if (d != rs.delta()) {
        throw FactorizationError("automorphism does not fix delta");
    }
    // g r_{i1} r_{i2} ... sends every simple root to a positive root
    std::vector<int> right;
    while (true) {
        size_t i = 0;
        while (i < rs.size() && !is_negative(g.images[i])) ++i;
        if (i == rs.size()) break;
        if (static_cast<int>(right.size()) >= bound) throw FactorizationError("descent did not terminate");
        g = compose(g, reflection_aut(rs, i));
        right.push_back(static_cast<int>(i));
    }
    out.perm.assign(rs.size(), -1);
    for (size_t i = 0; i < rs.size(); ++i) {
        const auto& img = g.images[i];
        auto one = std::find(img.begin(), img.end(), 1);
        if (one == img.end() || std::accumulate(img.begin(), img.end(), 0L) != 1)
            throw FactorizationError("remaining automorphism does not permute the simple roots");
        out.perm[i] = static_cast<int>(one - img.begin());
    }
    if (!is_diagram_aut(rs, out.perm)) throw FactorizationError("remaining permutation is not a diagram automorphism");
    // f = gamma r_{ik} ... r_{i1} = r_{gamma(ik)} ... r_{gamma(i1)} gamma
    for (auto it = right.rbegin(); it != right.rend(); ++it) out.word.push_back(out.perm[*it]);
    return out;
}

const char* shape_name(ThinShape s) { return s == ThinShape::TwoCopies ? "TWO_COPIES" : "EIGENSPLIT"; }

ThinShape thin_covering_shape(const AffineRootSystem& rs, const std::vector<int>& perm,
                              const std::vector<long>& labels)
{
    if (labels.size() != rs.size()) throw std::domain_error("weight needs one label per simple root");
    for (long x : labels)
        if (x < 0) throw std::domain_error("weight is not dominant");
    if (!is_diagram_aut(rs, perm)) throw std::domain_error("permutation is not a diagram automorphism");
    std::vector<long> moved(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) moved[perm[i]] = labels[i];
    return moved != labels ? ThinShape::TwoCopies : ThinShape::EigenSplit;
}

AffineReport affine_report(const CliffordExample& ex)
{
    AffineReport rep;
    rep.rs = affine_from_finite(ex.cartan, ex.marks);
    Untwist th = untwist_theta(ex.algebra, ex.grading_element, ex.grading_denominator, ex.autos.at(0));
    rep.action = induced_root_action(ex, rep.rs, ex.autos.at(1), th);
    rep.fixes_delta = rep.action.apply(rep.rs.delta()) == rep.rs.delta();
    rep.fact = factorize_aut(rep.rs, rep.action);
    RootAut again = word_action(rep.rs, rep.fact.word, rep.fact.perm);
    again.chevalley = rep.fact.chevalley;
    rep.recomposes = again == rep.action;
    rep.printed_word_matches = word_action(rep.rs, ex.printed_word, ex.diagram_aut) == rep.action;
    rep.printed_perm_matches = rep.fact.perm == ex.diagram_aut;

    LieAut sq{matmul(ex.autos[1].matrix, ex.autos[1].matrix), 1};
    RootAut square = induced_root_action(ex, rep.rs, sq, th);
    Factorization fs = factorize_aut(rep.rs, square);
    std::vector<int> id(rep.rs.size());
    std::iota(id.begin(), id.end(), 0);
    rep.square_is_weyl = square == compose(rep.action, rep.action) && fs.perm == id;
    return rep;
}

} // namespace toroidalg
