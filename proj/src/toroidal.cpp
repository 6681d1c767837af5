#include "toroidalg/toroidal.hpp"

#include <sstream>

namespace toroidalg {

Degree Degree::operator+(const Degree& o) const
{
    if (r.size() != o.r.size()) throw std::invalid_argument("degree rank mismatch");
    Degree d{t0 + o.t0, r};
    for (size_t p = 0; p < r.size(); ++p) d.r[p] += o.r[p];
    return d;
}

Degree Degree::operator-() const
{
    Degree d{-t0, r};
    for (auto& x : d.r) x = -x;
    return d;
}

bool Degree::is_zero() const
{
    if (t0) return false;
    for (long x : r)
        if (x) return false;
    return true;
}

void ToroidalElement::add(const TermKey& k, const CycScalar& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

ToroidalElement& ToroidalElement::operator+=(const ToroidalElement& o)
{
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
}

ToroidalElement& ToroidalElement::operator-=(const ToroidalElement& o)
{
    for (const auto& [k, c] : o.terms) add(k, -c);
    return *this;
}

ToroidalElement ToroidalElement::scaled(const CycScalar& c) const
{
    ToroidalElement r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

ToroidalElement ToroidalElement::term(const Degree& d, Kind k, size_t index, const CycScalar& c)
{
    ToroidalElement e;
    e.add({d, k, index}, c);
    return e;
}

ToroidalElement operator+(ToroidalElement a, const ToroidalElement& b) { return a += b; }
ToroidalElement operator-(ToroidalElement a, const ToroidalElement& b) { return a -= b; }

Rational ToroidalContext::exponent(const Degree& d, size_t e) const
{
    if (e == 0) {
        Rational q(d.t0, m0());
        q.canonicalize();
        return q;
    }
    return Rational(d.r[e - 1]);
}

Coset ToroidalContext::coset_of(const Degree& d) const
{
    Coset c{static_cast<int>(d.t0)};
    for (long x : d.r) c.push_back(static_cast<int>(x));
    return grading.reduce(c);
}

ToroidalContext make_context(const StructLie& L, const std::vector<LieAut>& autos, const Rational& mu,
                             const Rational& nu)
{
    if (autos.empty()) throw std::invalid_argument("make_context: need sigma_0");
    ToroidalContext ctx;
    ctx.grading = simultaneous_grading(L, autos);
    ctx.orders = ctx.grading.orders;
    ctx.mu = mu;
    ctx.nu = nu;

    const size_t n = L.dim();
    std::vector<Vec> cols;
    for (const auto& [c, basis] : ctx.grading.components)
        for (const auto& v : basis) {
            cols.push_back(v);
            ctx.basis_coset.push_back(c);
        }
    ctx.adapted_to_standard = transpose(cols);
    ctx.standard_to_adapted = inverse(ctx.adapted_to_standard);

    StructLie& A = ctx.algebra;
    A.type = L.type;
    A.dual_coxeter = L.dual_coxeter;
    A.index_labels = L.index_labels;
    for (size_t k = 0; k < n; ++k) {
        size_t nonzero = 0, at = 0;
        for (size_t i = 0; i < n; ++i)
            if (!cols[k][i].is_zero()) ++nonzero, at = i;
        A.labels.push_back(nonzero == 1 && cols[k][at] == CycScalar(1) ? L.labels[at] : "b" + std::to_string(k));
        if (!L.realization.empty()) A.realization.push_back(so_to_matrix(L, cols[k]));
    }
    A.sc.assign(n, std::vector<SparseVec>(n));
    A.form = zero_mat(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            Vec c = matvec(ctx.standard_to_adapted, bracket(L, cols[a], cols[b]));
            for (size_t k = 0; k < n; ++k)
                if (!c[k].is_zero()) A.sc[a][b].emplace_back(k, c[k]);
            A.form[a][b] = form_value(L, cols[a], cols[b]);
        }
    return ctx;
}

Vec to_adapted(const ToroidalContext& ctx, const Vec& x) { return matvec(ctx.standard_to_adapted, x); }
Vec to_standard(const ToroidalContext& ctx, const Vec& x) { return matvec(ctx.adapted_to_standard, x); }

ToroidalElement loop_element(const ToroidalContext& ctx, const Degree& d, const Vec& x)
{
    Vec a = to_adapted(ctx, x);
    ToroidalElement e;
    for (size_t k = 0; k < a.size(); ++k) e.add({d, Kind::Alg, k}, a[k]);
    validate(ctx, e);
    return e;
}

namespace {

bool in_lattice(const ToroidalContext& ctx, const Degree& d)
{
    Coset c = ctx.coset_of(d);
    for (int x : c)
        if (x) return false;
    return true;
}

std::string degree_str(const ToroidalContext& ctx, const Degree& d)
{
    std::ostringstream os;
    os << "t0^" << rational_str(ctx.exponent(d, 0));
    for (size_t p = 0; p < d.r.size(); ++p) os << " t" << p + 1 << "^" << d.r[p];
    return os.str();
}

std::string term_str(const ToroidalContext& ctx, const TermKey& k)
{
    std::string payload;
    switch (k.kind) {
    case Kind::Alg: payload = ctx.algebra.labels[k.index]; break;
    case Kind::K: payload = "k" + std::to_string(k.index); break;
    case Kind::D: payload = "d" + std::to_string(k.index); break;
    }
    return degree_str(ctx, k.deg) + " " + payload;
}

CycScalar ex(const ToroidalContext& ctx, const Degree& d, size_t e) { return CycScalar(ctx.exponent(d, e)); }

// sum_e d_e(t^d) k_e at degree `at`, scaled by c
void add_differential(const ToroidalContext& ctx, ToroidalElement& out, const Degree& d, const Degree& at,
                      const CycScalar& c)
{
    for (size_t e = 0; e <= ctx.N(); ++e) out.add({at, Kind::K, e}, c * ex(ctx, d, e));
}

// [A, B] for single basis terms, before Kahler reduction
void bracket_terms(const ToroidalContext& ctx, const TermKey& A, const TermKey& B, const CycScalar& c,
                   ToroidalElement& out, bool central)
{
    if (A.kind == Kind::K || B.kind == Kind::K) {
        if (A.kind == Kind::D) {
            // [t^p d_a, t^q k_b] = q_a t^{p+q} k_b + delta_ab sum_e p_e t^{p+q} k_e
            Degree s = A.deg + B.deg;
            if (central) {
                out.add({s, Kind::K, B.index}, c * ex(ctx, B.deg, A.index));
                if (A.index == B.index) add_differential(ctx, out, A.deg, s, c);
            }
        } else if (B.kind == Kind::D) {
            bracket_terms(ctx, B, A, -c, out, central);
        }
        return;
    }
    if (A.kind == Kind::Alg && B.kind == Kind::Alg) {
        Degree s = A.deg + B.deg;
        for (const auto& [k, v] : ctx.algebra.sc[A.index][B.index]) out.add({s, Kind::Alg, k}, c * v);
        const CycScalar& f = ctx.algebra.form[A.index][B.index];
        if (central && !f.is_zero()) add_differential(ctx, out, A.deg, s, c * f);
        return;
    }
    if (A.kind == Kind::Alg) {
        bracket_terms(ctx, B, A, -c, out, central);
        return;
    }
    Degree s = A.deg + B.deg;
    if (B.kind == Kind::Alg) {
        // [t^p d_a, t^q x] = q_a t^{p+q} x
        out.add({s, Kind::Alg, B.index}, c * ex(ctx, B.deg, A.index));
        return;
    }
    // [t^p d_a, t^q d_b] = q_a t^{p+q} d_b - p_b t^{p+q} d_a + tau
    const size_t a = A.index, b = B.index;
    out.add({s, Kind::D, b}, c * ex(ctx, B.deg, a));
    out.add({s, Kind::D, a}, -c * ex(ctx, A.deg, b));
    if (!central) return;
    CycScalar t = CycScalar(ctx.mu) * ex(ctx, A.deg, b) * ex(ctx, B.deg, a) +
                  CycScalar(ctx.nu) * ex(ctx, A.deg, a) * ex(ctx, B.deg, b);
    if (!t.is_zero()) add_differential(ctx, out, B.deg, s, c * t);
}

void require_derivation(const ToroidalElement& v, const char* what)
{
    for (const auto& [k, c] : v.terms)
        if (k.kind != Kind::D) throw std::invalid_argument(std::string(what) + ": expected a pure derivation");
}

} // namespace

bool is_valid(const ToroidalContext& ctx, const ToroidalElement& x, std::string* why)
{
    for (const auto& [k, c] : x.terms) {
        bool ok = k.deg.r.size() == ctx.N();
        if (ok) {
            switch (k.kind) {
            case Kind::Alg:
                ok = k.index < ctx.algebra.dim() && ctx.coset_of(k.deg) == ctx.basis_coset[k.index];
                break;
            case Kind::K:
            case Kind::D: ok = k.index <= ctx.N() && in_lattice(ctx, k.deg); break;
            }
        }
        if (!ok) {
            if (why) *why = "term '" + (k.deg.r.size() == ctx.N() && (k.kind != Kind::Alg || k.index < ctx.algebra.dim())
                                            ? term_str(ctx, k)
                                            : std::string("malformed")) +
                            "' is not in the twisted algebra";
            return false;
        }
    }
    return true;
}

void validate(const ToroidalContext& ctx, const ToroidalElement& x)
{
    std::string why;
    if (!is_valid(ctx, x, &why)) throw MembershipError(why);
}

ToroidalElement reduce_kahler(const ToroidalContext& ctx, const ToroidalElement& x)
{
    ToroidalElement out;
    for (const auto& [k, c] : x.terms) {
        if (k.kind != Kind::K || k.deg.is_zero()) {
            out.add(k, c);
            continue;
        }
        size_t pivot = 0;
        while (ex(ctx, k.deg, pivot).is_zero()) ++pivot;
        if (k.index != pivot) {
            out.add(k, c);
            continue;
        }
        // k_pivot = -sum_{p != pivot} (r_p / r_pivot) k_p at this degree
        CycScalar rp = ex(ctx, k.deg, pivot);
        for (size_t p = 0; p <= ctx.N(); ++p)
            if (p != pivot) out.add({k.deg, Kind::K, p}, -c * ex(ctx, k.deg, p) / rp);
    }
    return out;
}

ToroidalElement exact_differential(const ToroidalContext& ctx, const Degree& d, const CycScalar& c)
{
    ToroidalElement out;
    add_differential(ctx, out, d, d, c);
    return out;
}

ToroidalElement loop_bracket(const ToroidalContext& ctx, const ToroidalElement& x, const ToroidalElement& y)
{
    ToroidalElement out;
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms)
            if (a.kind == Kind::Alg && b.kind == Kind::Alg) bracket_terms(ctx, a, b, ca * cb, out, false);
    return out;
}

ToroidalElement toroidal_bracket(const ToroidalContext& ctx, const ToroidalElement& x, const ToroidalElement& y)
{
    validate(ctx, x);
    validate(ctx, y);
    ToroidalElement out;
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) bracket_terms(ctx, a, b, ca * cb, out, true);
    return reduce_kahler(ctx, out);
}

ToroidalElement tau1(const ToroidalContext& ctx, const ToroidalElement& v, const ToroidalElement& w)
{
    require_derivation(v, "tau1");
    require_derivation(w, "tau1");
    ToroidalElement out;
    for (const auto& [A, ca] : v.terms)
        for (const auto& [B, cb] : w.terms) {
            CycScalar t = ex(ctx, A.deg, B.index) * ex(ctx, B.deg, A.index);
            add_differential(ctx, out, B.deg, A.deg + B.deg, ca * cb * t);
        }
    return reduce_kahler(ctx, out);
}

ToroidalElement tau2(const ToroidalContext& ctx, const ToroidalElement& v, const ToroidalElement& w)
{
    require_derivation(v, "tau2");
    require_derivation(w, "tau2");
    ToroidalElement out;
    for (const auto& [A, ca] : v.terms)
        for (const auto& [B, cb] : w.terms) {
            CycScalar t = ex(ctx, A.deg, A.index) * ex(ctx, B.deg, B.index);
            add_differential(ctx, out, B.deg, A.deg + B.deg, ca * cb * t);
        }
    return reduce_kahler(ctx, out);
}

ToroidalElement cocycle_tau(const ToroidalContext& ctx, const ToroidalElement& v, const ToroidalElement& w)
{
    return reduce_kahler(ctx, tau1(ctx, v, w).scaled(CycScalar(ctx.mu)) + tau2(ctx, v, w).scaled(CycScalar(ctx.nu)));
}

std::map<Degree, CycScalar> divergence(const ToroidalContext& ctx, const ToroidalElement& x)
{
    std::map<Degree, CycScalar> div;
    for (const auto& [k, c] : x.terms) {
        if (k.kind != Kind::D) continue;
        CycScalar v = c * ex(ctx, k.deg, k.index);
        if (v.is_zero()) continue;
        auto& slot = div[k.deg];
        slot += v;
        if (slot.is_zero()) div.erase(k.deg);
    }
    return div;
}

ToroidalElement eala_basis(const ToroidalContext& ctx, long j, const std::vector<long>& s, EalaKind kind, size_t a,
                           size_t b, const Rational& level)
{
    const size_t N = ctx.N();
    if (s.size() != N) throw std::invalid_argument("eala_basis: s has wrong length");
    if (a < 1 || a > N || (kind == EalaKind::DD && (b < 1 || b > N)))
        throw std::out_of_range("eala_basis: index out of range");
    for (size_t p = 0; p < N; ++p)
        if (s[p] % ctx.orders[p + 1]) throw MembershipError("eala_basis: s is not in Gamma");
    Degree d{j * ctx.m0(), s};
    ToroidalElement e;
    if (kind == EalaKind::DD) {
        e.add({d, Kind::D, a}, s[b - 1]);
        e.add({d, Kind::D, b}, -s[a - 1]);
        return e;
    }
    if (level == 0) throw std::domain_error("eala_basis: level must be nonzero");
    const Rational sa(s[a - 1]);
    e.add({d, Kind::D, a}, j);
    e.add({d, Kind::D, 0}, CycScalar(-sa));
    Rational k0 = sa * (ctx.mu + ctx.nu) * (Rational(j) + Rational(1, 2)) +
                  sa / (2 * level * static_cast<long>(N)) * (Rational(static_cast<long>(N) - 1) + ctx.mu * level);
    e.add({d, Kind::K, 0}, CycScalar(k0));
    return reduce_kahler(ctx, e);
}

EalaDecomposition eala_decompose(const ToroidalContext& ctx, const ToroidalElement& x, const Rational& level)
{
    if (!divergence(ctx, x).empty()) throw MembershipError("eala_decompose: derivation part is not divergence free");
    const size_t N = ctx.N();
    std::map<Degree, std::vector<CycScalar>> fields;
    for (const auto& [k, c] : x.terms)
        if (k.kind == Kind::D) {
            auto& f = fields[k.deg];
            f.resize(N + 1);
            f[k.index] += c;
        }
    EalaDecomposition out;
    out.degree_zero.resize(N + 1);
    ToroidalElement spanned;
    auto use = [&](EalaKind kind, long j, const std::vector<long>& s, size_t a, size_t b, const CycScalar& c) {
        if (c.is_zero()) return;
        out.spans.push_back({kind, j, s, a, b, c});
        spanned += eala_basis(ctx, j, s, kind, a, b, level).scaled(c);
    };
    for (const auto& [d, f] : fields) {
        const long j = d.t0 / ctx.m0();
        const std::vector<long>& s = d.r;
        size_t star = 0;
        for (size_t p = 1; p <= N && !star; ++p)
            if (s[p - 1]) star = p;
        if (star) {
            const CycScalar ss(s[star - 1]);
            CycScalar lam = -f[0] / ss;
            use(EalaKind::DHat, j, s, star, 0, lam);
            std::vector<CycScalar> g(f.begin(), f.end());
            g[star] -= lam * CycScalar(j);
            for (size_t a = 1; a <= N; ++a)
                if (a != star) use(EalaKind::DD, j, s, a, star, g[a] / ss);
        } else if (j != 0) {
            for (size_t a = 1; a <= N; ++a) use(EalaKind::DHat, j, s, a, 0, f[a] / CycScalar(j));
        } else {
            for (size_t a = 0; a <= N; ++a) {
                out.degree_zero[a] = f[a];
                spanned.add({d, Kind::D, a}, f[a]);
            }
        }
    }
    out.remainder = reduce_kahler(ctx, x - spanned);
    for (const auto& [k, c] : out.remainder.terms)
        if (k.kind == Kind::D) throw std::logic_error("eala_decompose: derivation left over");
    return out;
}

ToroidalElement random_element(const ToroidalContext& ctx, std::mt19937_64& rng, int box, int terms)
{
    std::uniform_int_distribution<int> coord(-box, box), coef(-3, 3), kind(0, 5);
    const size_t N = ctx.N();
    ToroidalElement e;
    for (int t = 0; t < terms; ++t) {
        int k = kind(rng);
        Degree d;
        d.r.resize(N);
        if (k < 3) {
            std::uniform_int_distribution<size_t> pick(0, ctx.algebra.dim() - 1);
            size_t i = pick(rng);
            const Coset& c = ctx.basis_coset[i];
            d.t0 = c[0] + static_cast<long>(ctx.m0()) * coord(rng);
            for (size_t p = 0; p < N; ++p) d.r[p] = c[p + 1] + static_cast<long>(ctx.orders[p + 1]) * coord(rng);
            CycScalar v = CycScalar(coef(rng)) + CycScalar(coef(rng)) * CycScalar::i();
            e.add({d, Kind::Alg, i}, v);
        } else {
            d.t0 = static_cast<long>(ctx.m0()) * coord(rng);
            for (size_t p = 0; p < N; ++p) d.r[p] = static_cast<long>(ctx.orders[p + 1]) * coord(rng);
            std::uniform_int_distribution<size_t> pick(0, N);
            e.add({d, k == 3 ? Kind::K : Kind::D, pick(rng)}, CycScalar(coef(rng)));
        }
    }
    return reduce_kahler(ctx, e);
}

std::string describe(const ToroidalContext& ctx, const ToroidalElement& x)
{
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : x.terms) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ") " + term_str(ctx, k);
    }
    return s;
}

} // namespace toroidalg
