#include "toroidalg/vertexrep.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace toroidalg {

// ---------------------------------------------------------------- Fock space

namespace {

int var_p(uint32_t c) { return static_cast<int>((c >> 1) & 0x7fff); }
long var_j(uint32_t c) { return static_cast<long>(c >> 16); }
bool var_v(uint32_t c) { return c & 1; }

int fock_exp(const FockMono& m, uint32_t var)
{
    auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(var, 0));
    return it != m.end() && it->first == var ? it->second : 0;
}

using FockTerms = std::vector<std::pair<FockKey, CycScalar>>;

// multiply by coef * var
void mul_var(const FockKey& k, uint32_t var, const CycScalar& coef, FockTerms& out)
{
    if (coef.is_zero()) return;
    out.push_back({FockKey{k.q, fock_times(k.mono, var)}, coef});
}

// coef * d/d var
void der_var(const FockKey& k, uint32_t var, const CycScalar& coef, FockTerms& out)
{
    int e = fock_exp(k.mono, var);
    if (!e || coef.is_zero()) return;
    out.push_back({FockKey{k.q, fock_times(k.mono, var, -1)}, coef * CycScalar(e)});
}

// K_a{n}: d/dv_{a,n} for n > 0, (-n) u_{a,-n} for n < 0
void ka_op(size_t a, long n, const FockKey& k, const CycScalar& c, FockTerms& out)
{
    const int p = static_cast<int>(a) - 1;
    if (n > 0) der_var(k, fock_var(p, n, true), c, out);
    else if (n < 0) mul_var(k, fock_var(p, -n, false), c * CycScalar(-n), out);
}

// D_a{n}: d/du_{a,n} for n > 0, q_a d/dq_a for n = 0, (-n) v_{a,-n} for n < 0
void da_op(size_t a, long n, const FockKey& k, const CycScalar& c, FockTerms& out)
{
    const int p = static_cast<int>(a) - 1;
    if (n > 0) der_var(k, fock_var(p, n, false), c, out);
    else if (n < 0) mul_var(k, fock_var(p, -n, true), c * CycScalar(-n), out);
    else if (k.q[p]) out.push_back({k, c * CycScalar(k.q[p])});
}

bool ka_annihilates(long n) { return n > 0; }
bool da_annihilates(long n) { return n >= 0; }

// exp(sum_p r_p sum_j u_pj z^j): all factors of total z-degree a
void exp_plus(const std::vector<long>& r, long a, std::vector<std::pair<FockMono, CycScalar>>& out)
{
    std::vector<uint32_t> vars;
    std::vector<long> weight;
    std::vector<CycScalar> rate;
    for (long j = 1; j <= a; ++j)
        for (size_t p = 0; p < r.size(); ++p)
            if (r[p]) {
                vars.push_back(fock_var(static_cast<int>(p), j, false));
                weight.push_back(j);
                rate.push_back(CycScalar(r[p]));
            }
    FockMono cur;
    std::function<void(size_t, long, CycScalar)> go = [&](size_t i, long left, CycScalar coef) {
        if (left == 0) {
            out.push_back({cur, coef});
            return;
        }
        if (i == vars.size()) return;
        go(i + 1, left, coef);
        CycScalar c = coef;
        for (int m = 1; m * weight[i] <= left; ++m) {
            c = c * rate[i] / CycScalar(m);
            cur.push_back({vars[i], m});
            go(i + 1, left - m * weight[i], c);
            cur.pop_back();
        }
    };
    go(0, a, CycScalar(1));
    for (auto& [m, c] : out) std::sort(m.begin(), m.end());
}

Rational binom(long n, long k)
{
    Rational b = 1;
    for (long i = 0; i < k; ++i) {
        b *= Rational(n - i);
        b /= Rational(i + 1);
    }
    return b;
}

// K_0(r){n}
void k0_op(const std::vector<long>& r, long n, const FockKey& k, const CycScalar& c, FockTerms& out)
{
    if (c.is_zero()) return;
    if (std::all_of(r.begin(), r.end(), [](long x) { return x == 0; })) {
        if (n == 0) out.push_back({k, c});
        return;
    }
    std::vector<long> q = k.q;
    for (size_t p = 0; p < r.size(); ++p) q[p] += r[p];
    // exp(-sum r_p z^{-j}/j d/dv_pj) shifts v_pj by -r_p z^{-j}/j
    struct Choice {
        uint32_t var;
        long j;
        int exp;
        CycScalar shift;
    };
    std::vector<Choice> vs;
    for (const auto& [var, e] : k.mono)
        if (var_v(var) && r[var_p(var)]) vs.push_back({var, var_j(var), e, CycScalar(-r[var_p(var)], var_j(var))});
    std::map<long, std::vector<std::pair<FockMono, CycScalar>>> plus_cache;
    FockMono base = k.mono;
    std::function<void(size_t, long, CycScalar, FockMono&)> go = [&](size_t i, long b, CycScalar coef, FockMono& mono) {
        if (i == vs.size()) {
            const long a = b - n;
            if (a < 0) return;
            auto it = plus_cache.find(a);
            if (it == plus_cache.end()) {
                std::vector<std::pair<FockMono, CycScalar>> f;
                exp_plus(r, a, f);
                it = plus_cache.emplace(a, std::move(f)).first;
            }
            for (const auto& [factor, fc] : it->second) {
                FockMono m = mono;
                for (const auto& [var, e] : factor) m = fock_times(std::move(m), var, e);
                out.push_back({FockKey{q, std::move(m)}, c * coef * fc});
            }
            return;
        }
        const Choice& ch = vs[i];
        CycScalar pw(1);
        for (int t = 0; t <= ch.exp; ++t) {
            FockMono m = t ? fock_times(mono, ch.var, -t) : mono;
            go(i + 1, b + ch.j * t, coef * CycScalar(binom(ch.exp, t)) * pw, m);
            pw *= ch.shift;
        }
    };
    go(0, 0, CycScalar(1), base);
}

// omega_Hyp{n} = sum_p sum_i :K_p{i} D_p{n-i}:
void omega_hyp_op(size_t N, long n, const FockKey& k, const CycScalar& c, FockTerms& out)
{
    const long deg = fock_degree(k.mono);
    for (size_t a = 1; a <= N; ++a)
        for (long i = n - deg - 1; i <= std::max(n, deg) + 1; ++i) {
            if (i == 0) continue;
            const long m = n - i;
            FockTerms mid;
            if (!ka_annihilates(i) && da_annihilates(m)) {
                da_op(a, m, k, c, mid);
                for (const auto& [fk, fc] : mid) ka_op(a, i, fk, fc, out);
            } else {
                ka_op(a, i, k, c, mid);
                for (const auto& [fk, fc] : mid) da_op(a, m, fk, fc, out);
            }
        }
}

FockVec collect(const FockTerms& t)
{
    FockVec v;
    for (const auto& [k, c] : t) {
        auto [it, fresh] = v.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) v.erase(it);
        }
    }
    return v;
}

} // namespace

uint32_t fock_var(int p, long j, bool is_v)
{
    if (p < 0 || p >= 0x7fff || j < 1) throw std::out_of_range("fock_var");
    return (static_cast<uint32_t>(j) << 16) | (static_cast<uint32_t>(p) << 1) | (is_v ? 1u : 0u);
}

long fock_degree(const FockMono& m)
{
    long d = 0;
    for (const auto& [var, e] : m) d += var_j(var) * e;
    return d;
}

FockMono fock_times(FockMono m, uint32_t var, int power)
{
    auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(var, 0));
    if (it != m.end() && it->first == var) {
        it->second += power;
        if (it->second < 0) throw std::logic_error("fock_times: negative exponent");
        if (it->second == 0) m.erase(it);
    } else {
        if (power < 0) throw std::logic_error("fock_times: negative exponent");
        if (power) m.insert(it, {var, power});
    }
    return m;
}

std::string fock_str(const FockKey& k)
{
    std::ostringstream os;
    os << "q^(";
    for (size_t p = 0; p < k.q.size(); ++p) os << (p ? "," : "") << k.q[p];
    os << ")";
    for (const auto& [var, e] : k.mono) {
        os << " " << (var_v(var) ? "v" : "u") << var_p(var) + 1 << var_j(var);
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

FockVec fock_mode(FockField f, size_t a, const std::vector<long>& r, long n, const FockKey& key)
{
    FockTerms t;
    switch (f) {
    case FockField::K0: k0_op(r, n, key, 1, t); break;
    case FockField::Ka: ka_op(a, n, key, 1, t); break;
    case FockField::Da: da_op(a, n, key, 1, t); break;
    case FockField::OmegaHyp: omega_hyp_op(key.q.size(), n, key, 1, t); break;
    }
    return collect(t);
}

std::vector<FockMono> fock_basis(size_t N, long depth)
{
    std::vector<uint32_t> vars;
    for (long j = 1; j <= depth; ++j)
        for (size_t p = 0; p < N; ++p) {
            vars.push_back(fock_var(static_cast<int>(p), j, false));
            vars.push_back(fock_var(static_cast<int>(p), j, true));
        }
    std::sort(vars.begin(), vars.end());
    std::vector<FockMono> out;
    FockMono cur;
    std::function<void(size_t, long)> go = [&](size_t i, long left) {
        if (i == vars.size()) {
            out.push_back(cur);
            return;
        }
        go(i + 1, left);
        const long j = var_j(vars[i]);
        for (int m = 1; m * j <= left; ++m) {
            cur.push_back({vars[i], m});
            go(i + 1, left - m * j);
            cur.pop_back();
        }
    };
    go(0, depth);
    std::sort(out.begin(), out.end(), [](const FockMono& x, const FockMono& y) {
        long dx = fock_degree(x), dy = fock_degree(y);
        return dx != dy ? dx < dy : x < y;
    });
    return out;
}

// ---------------------------------------------------------------- twisted affine algebra

TwistedAffine::TwistedAffine(const ToroidalContext& ctx) : algebra_(ctx.algebra), m0_(ctx.m0())
{
    for (const Coset& c : ctx.basis_coset) coset0_.push_back(c[0]);
}

bool TwistedAffine::admissible(const ModeKey& k) const
{
    if (k.basis < 0 || static_cast<size_t>(k.basis) >= algebra_.dim()) return false;
    return ((k.mode - coset0_[k.basis]) % m0_ + m0_) % m0_ == 0;
}

ModeSum TwistedAffine::bracket(const ModeKey& a, const ModeKey& b) const
{
    ModeSum out;
    out.central.resize(1);
    for (const auto& [k, c] : algebra_.sc[a.basis][b.basis]) out.terms.push_back({{a.mode + b.mode, static_cast<int>(k)}, c});
    if (a.mode + b.mode == 0 && a.mode) out.central[0] = CycScalar(a.mode, m0_) * algebra_.form[a.basis][b.basis];
    return out;
}

std::string TwistedAffine::label(const ModeKey& k) const
{
    Rational m(k.mode, m0_);
    m.canonicalize();
    return algebra_.labels[k.basis] + "(" + rational_str(m) + ")";
}

// ---------------------------------------------------------------- states

void add_to(State& s, const StateKey& k, const CycScalar& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = s.try_emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
}

void axpy(State& y, const CycScalar& s, const State& x)
{
    if (s.is_zero()) return;
    for (const auto& [k, c] : x) add_to(y, k, s * c);
}

const char* assembly_name(Assembly a) { return a == Assembly::Toroidal ? "toroidal" : "eala"; }

namespace {

enum AtomKind { kAlg, kK0, kKa, kD0, kDa, kDD, kDHat, kD0Zero, kDaZero };

void add_fock(const FockTerms& t, const StateKey& k, State& out)
{
    for (const auto& [fk, c] : t) add_to(out, StateKey{fk, k.w, k.l}, c);
}

} // namespace

Representation::Representation(const ToroidalContext& ctx, const RepConfig& cfg)
    : ctx_(ctx), cfg_(cfg), m0_(ctx.m0()), N_(ctx.N())
{
    const Rational& c = cfg.level;
    const Rational& hv = ctx.algebra.dual_coxeter;
    if (c == 0 || c + hv == 0) throw PreconditionError("Representation: level must be nonzero and non-critical");
    if (cfg.depth < 0) throw std::invalid_argument("Representation: negative depth");
    walg_ = std::make_shared<const TwistedAffine>(ctx);
    W_ = std::make_shared<const InducedModule>(walg_, std::vector<CycScalar>{c}, [](int) { return CycScalar(0); },
                                               cfg.depth * m0_);
    const long dim = static_cast<long>(ctx.algebra.dim());
    const int n = static_cast<int>(N_);
    GlVirCharges ch = cfg.assembly == Assembly::Toroidal ? toroidal_charges(n, c, ctx.mu, ctx.nu, dim, hv)
                                                          : eala_charges(n, c, ctx.mu, dim, hv);
    V_ = build_hw_module(n, cfg.assembly == Assembly::Eala, cfg.glvir_hw, ch, cfg.depth);

    // dual bases from the inverse Gram matrix; x^i = sum_k G^{-1}_{ik} x_k
    Mat ginv = inverse(ctx.algebra.form);
    const size_t d = ctx.algebra.dim();
    sugawara_bracket_ = zero_vec(d);
    CycScalar binoms;
    for (size_t i = 0; i < d; ++i) {
        Rational alpha(walg_->coset0(i), m0_);
        alpha.canonicalize();
        binoms += CycScalar(Rational(alpha * (alpha - 1) / 2));
        for (size_t k = 0; k < d; ++k) {
            if (ginv[i][k].is_zero()) continue;
            dual_pairs_.emplace_back(static_cast<int>(i), static_cast<int>(k), ginv[i][k]);
            if (alpha != 0)
                for (const auto& [e, sc] : ctx.algebra.sc[i][k]) sugawara_bracket_[e] += CycScalar(alpha) * ginv[i][k] * sc;
        }
    }
    for (size_t e = 0; e < d; ++e)
        if (!sugawara_bracket_[e].is_zero() && walg_->coset0(e) != 0)
            throw std::logic_error("Representation: Sugawara correction leaves g_0");
    sugawara_scalar_ = -CycScalar(c) * binoms;
    sugawara_prefactor_ = CycScalar(1) / CycScalar(Rational(2 * (c + hv)));

    for (size_t p = 0; p < N_; ++p)
        for (size_t l = 0; l < N_; ++l) {
            Mat u = zero_mat(N_, N_);
            u[p][l] = 1;
            if (cfg.assembly == Assembly::Eala)
                for (size_t i = 0; i < N_; ++i) u[i][i] -= (p == l) ? CycScalar(1, static_cast<long>(N_)) : CycScalar(0);
            psi1_coords_.push_back(V_.algebra->coords(u));
        }
}

Vec Representation::e_coords(size_t p, size_t l) const { return psi1_coords_.at(p * N_ + l); }

long Representation::energy(const StateKey& k) const
{
    return fock_degree(k.fock.mono) * m0_ + W_->degree(k.w) + V_.module->degree(k.l) * m0_;
}

std::vector<long> Representation::w_tag(size_t w) const
{
    std::vector<long> tag(N_);
    for (const ModeKey& x : W_->monomial(w))
        for (size_t p = 0; p < N_; ++p) tag[p] += ctx_.basis_coset[x.basis][p + 1];
    for (size_t p = 0; p < N_; ++p) tag[p] %= ctx_.orders[p + 1];
    return tag;
}

bool Representation::in_module(const StateKey& k) const
{
    if (cfg_.shape == ThinShape::TwoCopies) return true;
    std::vector<long> tag = w_tag(k.w);
    for (size_t p = 0; p < N_; ++p) {
        const long m = ctx_.orders[p + 1];
        if (((k.fock.q[p] % m) + m) % m != tag[p]) return false;
    }
    return true;
}

StateKey Representation::vacuum(const std::vector<long>& q) const
{
    if (q.size() != N_) throw std::invalid_argument("vacuum: q has wrong length");
    return StateKey{FockKey{q, {}}, 0, 0};
}

void Representation::k0_mode(const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c,
                             State& out) const
{
    FockTerms t;
    k0_op(r, n, k.fock, c, t);
    add_fock(t, k, out);
}

// sum_i w(i) K_a{i} K_0(r){n-i}, w(i) = 1 or -i-1 for the derivative of K_a
void Representation::ka_k0(size_t a, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c,
                           State& out, bool derivative) const
{
    const long e = fock_degree(k.fock.mono);
    for (long i = n - e; i <= e; ++i) {
        if (i == 0) continue;
        CycScalar wt = derivative ? c * CycScalar(-i - 1) : c;
        if (wt.is_zero()) continue;
        FockTerms mid, fin;
        k0_op(r, n - i, k.fock, wt, mid);
        for (const auto& [fk, fc] : mid) ka_op(a, i, fk, fc, fin);
        add_fock(fin, k, out);
    }
}

// :D_a K_0(r):{n}
void Representation::da_k0(size_t a, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c,
                           State& out) const
{
    if (c.is_zero()) return;
    const long e = fock_degree(k.fock.mono);
    for (long i = n - e; i <= -1; ++i) {
        FockTerms mid, fin;
        k0_op(r, n - i, k.fock, c, mid);
        for (const auto& [fk, fc] : mid) da_op(a, i, fk, fc, fin);
        add_fock(fin, k, out);
    }
    for (long i = 0; i <= e; ++i) {
        FockTerms mid, fin;
        da_op(a, i, k.fock, c, mid);
        for (const auto& [fk, fc] : mid) k0_op(r, n - i, fk, fc, fin);
        add_fock(fin, k, out);
    }
}

// (U K_0(r)){n} with U a field of the glVir factor given by basis coordinates
void Representation::v_k0(const Vec& u, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c,
                          State& out) const
{
    if (c.is_zero()) return;
    const InducedModule& V = *V_.module;
    const long el = V.degree(k.l), ef = fock_degree(k.fock.mono);
    for (long i = std::max(n - ef, el - V.depth()); i <= el; ++i) {
        FockTerms ft;
        k0_op(r, n - i, k.fock, c, ft);
        if (ft.empty()) continue;
        ModVec vv;
        for (size_t b = 1; b < u.size(); ++b)
            if (!u[b].is_zero()) axpy(vv, u[b], V.act({i, static_cast<int>(b)}, k.l));
        for (const auto& [fk, fc] : ft)
            for (const auto& [l, lc] : vv) add_to(out, StateKey{fk, k.w, static_cast<uint32_t>(l)}, fc * lc);
    }
}

// (U K_a K_0(r)){n}
void Representation::v_ka_k0(const Vec& u, size_t a, const std::vector<long>& r, long n, const StateKey& k,
                             const CycScalar& c, State& out) const
{
    if (c.is_zero()) return;
    const InducedModule& V = *V_.module;
    const long el = V.degree(k.l), ef = fock_degree(k.fock.mono);
    for (long b = std::max(n - ef - 1, el - V.depth()); b <= el; ++b) {
        ModVec vv;
        for (size_t t = 1; t < u.size(); ++t)
            if (!u[t].is_zero()) axpy(vv, u[t], V.act({b, static_cast<int>(t)}, k.l));
        if (vv.empty()) continue;
        State fock_part;
        ka_k0(a, r, n - b, StateKey{k.fock, k.w, 0}, c, fock_part, false);
        for (const auto& [sk, sc] : fock_part)
            for (const auto& [l, lc] : vv) add_to(out, StateKey{sk.fock, k.w, static_cast<uint32_t>(l)}, sc * lc);
    }
}

// (:(omega_Hyp + Y_W(omega_aff) + omega_V) K_0(r):){n}
void Representation::virasoro_k0(const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c,
                                 State& out) const
{
    if (c.is_zero()) return;
    const long ef = fock_degree(k.fock.mono);
    const size_t N = N_;
    for (long m = n - ef; m <= -2; ++m) {
        FockTerms mid, fin;
        k0_op(r, n - m, k.fock, c, mid);
        for (const auto& [fk, fc] : mid) omega_hyp_op(N, m, fk, fc, fin);
        add_fock(fin, k, out);
    }
    for (long m = -1; m <= ef; ++m) {
        FockTerms mid, fin;
        omega_hyp_op(N, m, k.fock, c, mid);
        for (const auto& [fk, fc] : mid) k0_op(r, n - m, fk, fc, fin);
        add_fock(fin, k, out);
    }
    const long ew = W_->degree(k.w);
    for (long i = n - ef; i * m0_ <= ew; ++i) {
        if (ew - i * m0_ > W_->depth()) continue;
        FockTerms ft;
        k0_op(r, n - i, k.fock, c, ft);
        if (ft.empty()) continue;
        const ModVec& wv = twisted_sugawara_mode(i, k.w);
        for (const auto& [fk, fc] : ft)
            for (const auto& [w, wc] : wv) add_to(out, StateKey{fk, static_cast<uint32_t>(w), k.l}, fc * wc);
    }
    const InducedModule& V = *V_.module;
    const long el = V.degree(k.l);
    for (long i = std::max(n - ef, el - V.depth()); i <= el; ++i) {
        FockTerms ft;
        k0_op(r, n - i, k.fock, c, ft);
        if (ft.empty()) continue;
        const ModVec& lv = V.act({i, 0}, k.l);
        for (const auto& [fk, fc] : ft)
            for (const auto& [l, lc] : lv) add_to(out, StateKey{fk, k.w, static_cast<uint32_t>(l)}, fc * lc);
    }
}

ModVec Representation::twisted_sugawara_mode(long n, size_t w) const
{
    auto key = std::make_pair(n, w);
    auto it = sugawara_cache_.find(key);
    if (it != sugawara_cache_.end()) return it->second;
    const InducedModule& W = *W_;
    const long ew = W.degree(w), nn = n * m0_;
    if (ew - nn > W.depth()) throw TruncationError("twisted_sugawara_mode: leaves the depth window");
    ModVec out;
    for (const auto& [i, k, g] : dual_pairs_) {
        const long alpha = walg_->coset0(i);
        // creation side m < alpha: x_i(m) x^i(n - m), annihilation side m >= alpha: x^i(n - m) x_i(m)
        for (long m = alpha - m0_; m >= nn - ew; m -= m0_) {
            const ModVec& first = W.act({nn - m, k}, w);
            for (const auto& [u, uc] : first) axpy(out, g * uc, W.act({m, i}, u));
        }
        for (long m = alpha; m <= ew; m += m0_) {
            const ModVec& first = W.act({m, i}, w);
            for (const auto& [u, uc] : first) {
                if (W.degree(u) - (nn - m) > W.depth()) continue;
                axpy(out, g * uc, W.act({nn - m, k}, u));
            }
        }
    }
    for (size_t e = 0; e < sugawara_bracket_.size(); ++e)
        if (!sugawara_bracket_[e].is_zero()) axpy(out, -sugawara_bracket_[e], W.act({nn, static_cast<int>(e)}, w));
    if (n == 0) add_to(out, w, sugawara_scalar_);
    ModVec scaled;
    axpy(scaled, sugawara_prefactor_, out);
    return sugawara_cache_.emplace(key, std::move(scaled)).first->second;
}

State Representation::twisted_affine_mode(size_t basis, const std::vector<long>& r, long n, const StateKey& k) const
{
    if (basis >= ctx_.algebra.dim() || r.size() != N_) throw std::invalid_argument("twisted_affine_mode: bad arguments");
    const Coset& cs = ctx_.basis_coset[basis];
    if (((n - cs[0]) % m0_ + m0_) % m0_) throw MembershipError("twisted_affine_mode: mode not in the coset of x");
    for (size_t p = 0; p < N_; ++p) {
        const long m = ctx_.orders[p + 1];
        if (((r[p] - cs[p + 1]) % m + m) % m) throw MembershipError("twisted_affine_mode: r not in the coset of x");
    }
    State out;
    const long ef = fock_degree(k.fock.mono), ew = W_->degree(k.w);
    for (long i = n - ef * m0_; i <= ew; i += m0_) {
        FockTerms ft;
        k0_op(r, (n - i) / m0_, k.fock, 1, ft);
        if (ft.empty()) continue;
        const ModVec& wv = W_->act({i, static_cast<int>(basis)}, k.w);
        for (const auto& [fk, fc] : ft)
            for (const auto& [w, wc] : wv) add_to(out, StateKey{fk, static_cast<uint32_t>(w), k.l}, fc * wc);
    }
    return out;
}

void Representation::energy_zero_mode(const StateKey& k, const CycScalar& c, State& out) const
{
    FockTerms ft;
    omega_hyp_op(N_, 0, k.fock, c, ft);
    add_fock(ft, k, out);
    for (const auto& [w, wc] : twisted_sugawara_mode(0, k.w)) add_to(out, StateKey{k.fock, static_cast<uint32_t>(w), k.l}, c * wc);
    for (const auto& [l, lc] : V_.module->act({0, 0}, k.l)) add_to(out, StateKey{k.fock, k.w, static_cast<uint32_t>(l)}, c * lc);
}

const State& Representation::atom(const Atom& t, const StateKey& k) const
{
    auto key = std::make_pair(t, k);
    auto it = atom_cache_.find(key);
    if (it != atom_cache_.end()) return it->second;
    State s = compute_atom(t, k);
    return atom_cache_.emplace(std::move(key), std::move(s)).first->second;
}

void Representation::apply_atom(const Atom& t, const StateKey& k, const CycScalar& c, State& out) const
{
    axpy(out, c, atom(t, k));
}

State Representation::compute_atom(const Atom& t, const StateKey& k) const
{
    State out;
    const CycScalar level(cfg_.level), mu(ctx_.mu), nu(ctx_.nu);
    const CycScalar mu_c_minus_1 = mu * level - CycScalar(1);
    const std::vector<long>& r = t.r;
    const long j = t.j;
    switch (t.kind) {
    case kAlg: return twisted_affine_mode(t.a, r, j, k);
    case kK0: k0_mode(r, j, k, level, out); break;
    case kKa: ka_k0(t.a, r, j, k, level, out, false); break;
    case kDa: {
        da_k0(t.a, r, j, k, 1, out);
        for (size_t p = 1; p <= N_; ++p)
            if (r[p - 1]) v_k0(e_coords(p - 1, t.a - 1), r, j, k, CycScalar(r[p - 1]), out);
        k0_mode(r, j, k, nu * CycScalar(r[t.a - 1]) * level, out);
        break;
    }
    case kD0: {
        State rhs;
        virasoro_k0(r, j, k, 1, rhs);
        for (size_t p = 1; p <= N_; ++p) {
            if (!r[p - 1]) continue;
            for (size_t q = 1; q <= N_; ++q) v_ka_k0(e_coords(p - 1, q - 1), q, r, j, k, CycScalar(r[p - 1]), rhs);
            ka_k0(p, r, j, k, mu_c_minus_1 * CycScalar(r[p - 1]), rhs, true);
        }
        axpy(out, -1, rhs);
        k0_mode(r, j, k, (mu + nu) * (CycScalar(j) + CycScalar(1, 2)) * level, out);
        break;
    }
    case kDD: {
        const size_t a = t.a, b = t.b;
        const CycScalar sa(r[a - 1]), sb(r[b - 1]);
        da_k0(a, r, j, k, sb, out);
        da_k0(b, r, j, k, -sa, out);
        for (size_t p = 1; p <= N_; ++p) {
            if (p != a) v_k0(e_coords(p - 1, a - 1), r, j, k, sb * CycScalar(r[p - 1]), out);
            if (p != b) v_k0(e_coords(p - 1, b - 1), r, j, k, -sa * CycScalar(r[p - 1]), out);
        }
        Vec diff = sub(e_coords(a - 1, a - 1), e_coords(b - 1, b - 1));
        v_k0(diff, r, j, k, sa * sb, out);
        break;
    }
    case kDHat: {
        const size_t a = t.a;
        const CycScalar sa(r[a - 1]);
        virasoro_k0(r, j, k, sa, out);
        for (size_t p = 1; p <= N_; ++p) {
            if (!r[p - 1]) continue;
            const CycScalar sp(r[p - 1]);
            for (size_t l = 1; l <= N_; ++l) v_ka_k0(e_coords(p - 1, l - 1), l, r, j, k, sa * sp, out);
            ka_k0(p, r, j, k, sa * mu_c_minus_1 * sp, out, true);
        }
        // -(z^{-1} + d/dz) G(z) has coefficient j G{j} at z^{-j-2}
        const CycScalar jj(j);
        da_k0(a, r, j, k, jj, out);
        for (size_t p = 1; p <= N_; ++p)
            if (r[p - 1]) v_k0(e_coords(p - 1, a - 1), r, j, k, jj * CycScalar(r[p - 1]), out);
        break;
    }
    case kD0Zero:
        energy_zero_mode(k, -1, out);
        add_to(out, k, (mu + nu) * level / CycScalar(2));
        break;
    case kDaZero:
        add_to(out, k, CycScalar(k.fock.q[t.a - 1]));
        break;
    default: throw std::logic_error("compute_atom: unknown payload kind");
    }
    return out;
}

State Representation::represent(const ToroidalElement& x, const StateKey& k) const
{
    State v;
    v[k] = 1;
    return represent(x, v);
}

State Representation::represent(const ToroidalElement& x, const State& v) const
{
    std::vector<std::pair<Atom, CycScalar>> atoms;
    auto loop_or_central = [&](const TermKey& t, const CycScalar& c) {
        const Degree& d = t.deg;
        if (t.kind == Kind::Alg) {
            atoms.push_back({Atom{kAlg, d.t0, d.r, t.index, 0}, c});
            return;
        }
        if (d.t0 % m0_) throw MembershipError("represent: t_0 exponent off the lattice");
        const long j = d.t0 / m0_;
        if (t.kind == Kind::K) {
            if (t.index == 0) atoms.push_back({Atom{kK0, j, d.r, 0, 0}, c});
            else atoms.push_back({Atom{kKa, j, d.r, t.index, 0}, c});
            return;
        }
        if (t.index == 0) atoms.push_back({Atom{kD0, j, d.r, 0, 0}, c});
        else atoms.push_back({Atom{kDa, j, d.r, t.index, 0}, c});
    };
    if (cfg_.assembly == Assembly::Toroidal) {
        for (const auto& [t, c] : x.terms) loop_or_central(t, c);
    } else {
        EalaDecomposition dec = eala_decompose(ctx_, x, cfg_.level);
        for (const EalaTerm& s : dec.spans)
            atoms.push_back({Atom{s.kind == EalaKind::DD ? kDD : kDHat, s.j, s.s, s.a, s.b}, s.coeff});
        for (size_t e = 0; e <= N_; ++e)
            if (!dec.degree_zero[e].is_zero())
                atoms.push_back({Atom{e == 0 ? kD0Zero : kDaZero, 0, std::vector<long>(N_), e, 0}, dec.degree_zero[e]});
        for (const auto& [t, c] : dec.remainder.terms) loop_or_central(t, c);
    }
    State out;
    const long window = cfg_.depth * m0_;
    for (const auto& [k, kc] : v) {
        const long e = energy(k);
        for (const auto& [t, c] : atoms) {
            const long shift = (t.kind == kAlg) ? t.j : t.j * m0_;
            if (e - shift > window) throw TruncationError("represent: result leaves the depth window");
            apply_atom(t, k, kc * c, out);
        }
    }
    return out;
}

// ---------------------------------------------------------------- verification

namespace {

long scaled_t0(const ToroidalElement& x)
{
    if (x.terms.empty()) return 0;
    long t0 = x.terms.begin()->first.deg.t0;
    for (const auto& [t, c] : x.terms)
        if (t.deg.t0 != t0) throw std::invalid_argument("sample element is not homogeneous in t_0");
    return t0;
}

} // namespace

std::vector<SampleElement> sample_elements(const Representation& rep, uint64_t seed, size_t per_family)
{
    const ToroidalContext& ctx = rep.context();
    const long m0 = ctx.m0();
    const size_t N = ctx.N();
    const bool eala = rep.config().assembly == Assembly::Eala;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> unit(-1, 1);
    std::vector<SampleElement> out;
    auto push = [&](const std::string& fam, const ToroidalElement& x) {
        if (x.is_zero()) return false;
        out.push_back({fam, x, std::labs(scaled_t0(x))});
        return true;
    };
    auto lattice_r = [&]() {
        std::vector<long> s(N);
        for (size_t p = 0; p < N; ++p) s[p] = ctx.orders[p + 1] * unit(rng);
        return s;
    };
    const std::vector<long> zero(N);

    // loop elements: one anchor at degree zero, the rest random
    size_t anchor = 0;
    while (anchor < ctx.algebra.dim() && std::any_of(ctx.basis_coset[anchor].begin(), ctx.basis_coset[anchor].end(),
                                                     [](auto c) { return c != 0; }))
        ++anchor;
    push("x", ToroidalElement::term(Degree{0, zero}, Kind::Alg, anchor));
    std::uniform_int_distribution<size_t> pick(0, ctx.algebra.dim() - 1);
    for (size_t t = 1; t < per_family + 2;) {
        size_t b = pick(rng);
        const Coset& cs = ctx.basis_coset[b];
        Degree d;
        d.t0 = cs[0] + m0 * unit(rng);
        if (std::labs(d.t0) > m0) continue;
        d.r.resize(N);
        for (size_t p = 0; p < N; ++p) d.r[p] = cs[p + 1] - ctx.orders[p + 1] * (unit(rng) < 0 ? 1 : 0);
        t += push("x", ToroidalElement::term(d, Kind::Alg, b));
    }
    auto central = [&](Kind kind, size_t index, const std::string& fam) {
        push(fam, reduce_kahler(ctx, ToroidalElement::term(Degree{0, zero}, kind, index)));
        for (size_t t = 1, tries = 0; t < per_family && tries < 50; ++tries) {
            Degree d{m0 * unit(rng), lattice_r()};
            t += push(fam, reduce_kahler(ctx, ToroidalElement::term(d, kind, index)));
        }
    };
    central(Kind::K, 0, "k0");
    for (size_t a = 1; a <= N; ++a) central(Kind::K, a, "k" + std::to_string(a));
    if (!eala) {
        central(Kind::D, 0, "d0");
        for (size_t a = 1; a <= N; ++a) central(Kind::D, a, "d" + std::to_string(a));
        return out;
    }
    push("d0", ToroidalElement::term(Degree{0, zero}, Kind::D, 0));
    for (size_t a = 1; a <= N; ++a) push("d" + std::to_string(a), ToroidalElement::term(Degree{0, zero}, Kind::D, a));
    for (size_t a = 1; a <= N; ++a)
        for (size_t t = 0, tries = 0; t < per_family && tries < 50; ++tries) {
            long j = unit(rng);
            std::vector<long> s = lattice_r();
            if (j == 0 && s == zero) continue;
            t += push("dhat", eala_basis(ctx, j, s, EalaKind::DHat, a, 0, rep.config().level));
        }
    for (size_t a = 1; a <= N; ++a)
        for (size_t b = a + 1; b <= N; ++b)
            for (size_t t = 0, tries = 0; t < per_family && tries < 50; ++tries)
                t += push("dd", eala_basis(ctx, unit(rng), lattice_r(), EalaKind::DD, a, b, rep.config().level));
    return out;
}

std::vector<StateKey> probe_vectors(const Representation& rep, const std::vector<std::vector<long>>& qs,
                                    long max_energy)
{
    std::vector<StateKey> out;
    const long m0 = rep.m0();
    std::vector<FockMono> fb = fock_basis(rep.N(), max_energy / m0);
    const InducedModule &W = rep.w_module(), &V = rep.v_module();
    for (const auto& q : qs)
        for (const FockMono& f : fb)
            for (size_t w = 0; w < W.dim(); ++w)
                for (size_t l = 0; l < V.dim(); ++l) {
                    StateKey k{FockKey{q, f}, static_cast<uint32_t>(w), static_cast<uint32_t>(l)};
                    if (rep.energy(k) <= max_energy && rep.in_module(k)) out.push_back(k);
                }
    return out;
}

namespace {

std::string key_str(const Representation& rep, const StateKey& k)
{
    return fock_str(k.fock) + " | " + rep.w_module().describe(k.w) + " | " + rep.v_module().describe(k.l);
}

} // namespace

RepReport check_commutators(const Representation& rep, const std::vector<SampleElement>& sample,
                            const std::vector<std::vector<long>>& qs)
{
    RepReport report;
    const ToroidalContext& ctx = rep.context();
    const long window = rep.config().depth * rep.m0();
    std::vector<StateKey> probes = probe_vectors(rep, qs, window);
    auto consistent = [&](const State& s) {
        for (const auto& [k, c] : s)
            if (!rep.in_module(k)) return false;
        return true;
    };
    for (size_t i = 0; i < sample.size(); ++i)
        for (size_t j = i + 1; j < sample.size(); ++j) {
            const SampleElement &A = sample[i], &B = sample[j];
            std::string fam = std::min(A.family, B.family) + "-" + std::max(A.family, B.family);
            RelationCount& rc = report.relations[fam];
            ++report.pairs;
            ToroidalElement C = toroidal_bracket(ctx, A.element, B.element);
            const long reach = A.reach + B.reach;
            for (const StateKey& k : probes) {
                if (rep.energy(k) + reach > window) continue;
                State bv = rep.represent(B.element, k), av = rep.represent(A.element, k);
                State lhs = rep.represent(A.element, bv);
                axpy(lhs, -1, rep.represent(B.element, av));
                State rhs = rep.represent(C, k);
                ++rc.checks;
                ++report.checks;
                if (!consistent(bv) || !consistent(av) || !consistent(lhs)) ++report.coset_violations;
                if (lhs != rhs) {
                    ++rc.failures;
                    if (!report.failures)
                        report.first_failure = "[" + describe(ctx, A.element) + ", " + describe(ctx, B.element) +
                                               "] on " + key_str(rep, k);
                    ++report.failures;
                }
            }
        }
    return report;
}

ThinAssembly assemble_thin_module(const Representation& rep, ThinShape shape, long max_energy)
{
    const ToroidalContext& ctx = rep.context();
    const InducedModule& W = rep.w_module();
    const size_t N = rep.N();
    ThinAssembly out;
    out.shape = shape;
    // component tags
    std::vector<std::vector<long>> tags;
    std::function<void(std::vector<long>&, size_t)> all_tags = [&](std::vector<long>& t, size_t p) {
        if (p == N) {
            tags.push_back(t);
            return;
        }
        for (long s = 0; s < ctx.orders[p + 1]; ++s) {
            t[p] = s;
            all_tags(t, p + 1);
        }
    };
    std::vector<long> t0(N);
    all_tags(t0, 0);
    auto member = [&](const std::vector<long>& tag, size_t w) {
        return shape == ThinShape::TwoCopies || rep.w_tag(w) == tag;
    };
    for (const auto& tag : tags) {
        size_t n = 0;
        for (size_t w = 0; w < W.dim(); ++w) n += W.degree(w) <= max_energy && member(tag, w);
        out.component_dims[tag] = n;
    }
    for (const auto& tag : tags)
        for (size_t w = 0; w < W.dim(); ++w) {
            if (W.degree(w) > max_energy || !member(tag, w)) continue;
            for (size_t b = 0; b < ctx.algebra.dim(); ++b) {
                const Coset& cs = ctx.basis_coset[b];
                std::vector<long> target(N);
                for (size_t p = 0; p < N; ++p) target[p] = (tag[p] + cs[p + 1]) % ctx.orders[p + 1];
                for (long i = W.degree(w) - W.depth(); i <= W.degree(w); ++i) {
                    if (!rep.w_algebra().admissible({i, static_cast<int>(b)})) continue;
                    const ModVec& img = W.act({i, static_cast<int>(b)}, w);
                    ++out.generator_checks;
                    for (const auto& [u, c] : img)
                        if (!member(target, u)) {
                            if (!out.violations)
                                out.witness = rep.w_algebra().label({i, static_cast<int>(b)}) + " on " + W.describe(w);
                            ++out.violations;
                        }
                    if (shape != ThinShape::EigenSplit) continue;
                    // phi fixes the vacuum and intertwines x(i) with sigma(x)(i): on PBW monomials
                    // phi is the product of the sigma-eigenvalues, so phi(x(i) w) must equal
                    // eps(x) x(i) phi(w) coefficient by coefficient
                    ++out.phi_checks;
                    for (const auto& [u, c] : img) {
                        std::vector<long> tu = rep.w_tag(u), tw = rep.w_tag(w);
                        for (size_t p = 0; p < N; ++p)
                            if ((tu[p] - tw[p] - cs[p + 1]) % ctx.orders[p + 1]) {
                                ++out.phi_failures;
                                break;
                            }
                    }
                }
            }
        }
    return out;
}

bool ProxyReport::ok() const
{
    if (!heisenberg_connected) return false;
    for (const auto& [name, ok] : closed)
        if (!ok) return false;
    return !closed.empty();
}

ProxyReport irreducibility_proxies(const Representation& rep, long max_energy)
{
    ProxyReport out;
    const size_t N = rep.N();
    const long m0 = rep.m0();
    const long fock_depth = rep.config().depth;
    // Heisenberg modes move between all Fock monomials of degree <= depth
    std::vector<FockMono> basis = fock_basis(N, fock_depth);
    out.fock_monomials = basis.size();
    std::map<FockMono, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<std::set<size_t>> fwd(basis.size()), back(basis.size());
    const std::vector<long> q0(N);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t a = 1; a <= N; ++a)
            for (long n = -fock_depth; n <= fock_depth; ++n) {
                if (!n) continue;
                for (FockField f : {FockField::Ka, FockField::Da})
                    for (const auto& [k, c] : fock_mode(f, a, q0, n, FockKey{q0, basis[i]})) {
                        auto it = index.find(k.mono);
                        if (it == index.end()) continue;
                        fwd[i].insert(it->second);
                        back[it->second].insert(i);
                    }
            }
    auto reach_all = [&](const std::vector<std::set<size_t>>& g) {
        std::vector<bool> seen(basis.size());
        std::deque<size_t> todo{0};
        seen[0] = true;
        while (!todo.empty()) {
            size_t u = todo.front();
            todo.pop_front();
            for (size_t v : g[u])
                if (!seen[v]) {
                    seen[v] = true;
                    todo.push_back(v);
                }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    out.heisenberg_connected = reach_all(fwd) && reach_all(back);

    // the operators of the irreducibility argument keep the sampled orbit inside the module
    std::vector<std::vector<long>> qs;
    qs.push_back(q0);
    for (size_t p = 0; p < N; ++p) {
        std::vector<long> q(N);
        q[p] = 1;
        qs.push_back(q);
    }
    std::vector<StateKey> orbit = probe_vectors(rep, qs, max_energy);
    const long window = rep.config().depth * m0;
    const ToroidalContext& ctx = rep.context();
    auto keep = [&](const State& s, long expected) {
        for (const auto& [k, c] : s)
            if (!rep.in_module(k) || rep.energy(k) != expected) return false;
        return true;
    };
    bool hyp = true, eab = true, xk = true, aff = true, vir = true;
    const InducedModule& V = rep.v_module();
    for (const StateKey& k : orbit) {
        const long e = rep.energy(k);
        for (long n = -1; n <= 1; ++n) {
            if (e - n * m0 > window) continue;
            State s;
            for (const auto& [fk, c] : fock_mode(FockField::OmegaHyp, 0, {}, n, k.fock)) add_to(s, StateKey{fk, k.w, k.l}, c);
            hyp = hyp && keep(s, e - n * m0);
            State sw;
            for (const auto& [w, c] : rep.twisted_sugawara_mode(n, k.w)) add_to(sw, StateKey{k.fock, static_cast<uint32_t>(w), k.l}, c);
            aff = aff && keep(sw, e - n * m0);
            State sv;
            for (const auto& [l, c] : V.act({n, 0}, k.l)) add_to(sv, StateKey{k.fock, k.w, static_cast<uint32_t>(l)}, c);
            vir = vir && keep(sv, e - n * m0);
            for (size_t b = 1; b < rep.v_algebra().basis_size(); ++b) {
                State se;
                for (const auto& [l, c] : V.act({n, static_cast<int>(b)}, k.l))
                    add_to(se, StateKey{k.fock, k.w, static_cast<uint32_t>(l)}, c);
                eab = eab && keep(se, e - n * m0);
            }
        }
        for (size_t b = 0; b < ctx.algebra.dim(); ++b) {
            const Coset& cs = ctx.basis_coset[b];
            std::vector<long> r(N);
            for (size_t p = 0; p < N; ++p) r[p] = cs[p + 1];
            for (long n = cs[0] - m0; n <= m0; n += m0) {
                if (e - n > window) continue;
                xk = xk && keep(rep.twisted_affine_mode(b, r, n, k), e - n);
            }
        }
    }
    out.closed["omega_hyp"] = hyp;
    out.closed["E_ab"] = eab;
    out.closed["q^r Y_W(x)"] = xk;
    out.closed["Y_W(omega_aff)"] = aff;
    out.closed["omega_glvir"] = vir;
    return out;
}

} // namespace toroidalg
