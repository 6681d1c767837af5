// One line per acceptance criterion; exits nonzero when any criterion fails.
#include "toroidalg/affroot.hpp"
#include "toroidalg/clifford_examples.hpp"
#include "toroidalg/cliffordtkk.hpp"
#include "toroidalg/linalg.hpp"
#include "toroidalg/suites.hpp"
#include "toroidalg/toroidal.hpp"
#include "toroidalg/vertexrep.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace toroidalg;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream notes;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            notes << " [" << what << "]";
        }
    }
};

long binomial(long n, long k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// so(n) has basis E_ij - E_ji, i < j; a diagonal sign conjugation scales it by s_i s_j
std::map<Coset, size_t> sign_oracle_table(const std::vector<std::vector<int>>& signs, size_t n)
{
    std::map<Coset, size_t> table;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Coset c;
            for (const auto& s : signs) c.push_back(s[i] * s[j] == 1 ? 0 : 1);
            ++table[c];
        }
    return table;
}

void criterion_structure(Outcome& out)
{
    for (const auto* name : {"baby-tkk", "full-tkk"}) {
        CliffordExample ex = clifford_example(name);
        const StructLie& L = ex.algebra;
        const size_t n = ex.signs.at(0).size();
        out.expect(L.dim() == n * (n - 1) / 2, std::string(name) + " dim");
        out.expect(check_antisymmetry(L) && check_jacobi(L), std::string(name) + " jacobi");
        out.expect(check_form_invariance(L), std::string(name) + " form");
        Grading g = simultaneous_grading(L, ex.autos);
        std::map<Coset, size_t> dims;
        for (const auto& [c, basis] : g.components) dims[c] = basis.size();
        out.expect(dims == sign_oracle_table(ex.signs, n), std::string(name) + " grading vs sign oracle");
    }
    CliffordExample baby = baby_tkk();
    Grading g = simultaneous_grading(baby.algebra, baby.autos);
    std::map<Coset, size_t> expected = {{{0, 0}, 3}, {{0, 1}, 3}, {{1, 0}, 3}, {{1, 1}, 1}};
    std::map<Coset, size_t> dims;
    for (const auto& [c, basis] : g.components) dims[c] = basis.size();
    out.expect(baby.algebra.dim() == 10 && dims == expected, "so5 table (3,3,3,1)");
    out.expect(full_tkk().algebra.dim() == 15, "so6 dim");
}

ToroidalContext rank_two(const Rational& mu, const Rational& nu)
{
    std::vector<std::vector<int>> cosets = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    StructLie L = build_so(clifford_index_set(cosets));
    std::vector<LieAut> autos;
    for (const auto& s : clifford_signs(cosets, 3)) autos.push_back(conj_automorphism(L, s));
    return make_context(L, autos, mu, nu);
}

void criterion_toroidal(Outcome& out)
{
    CliffordExample baby = baby_tkk();
    uint64_t seed = 7001;
    for (auto [mu, nu] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
        for (int N : {1, 2}) {
            ToroidalContext ctx = N == 1 ? make_context(baby.algebra, baby.autos, mu, nu) : rank_two(mu, nu);
            out.expect(static_cast<int>(ctx.N()) == N, "context rank");
            std::mt19937_64 rng(seed++);
            size_t bad = 0;
            for (int t = 0; t < 200; ++t) {
                ToroidalElement x = random_element(ctx, rng, 3), y = random_element(ctx, rng, 3),
                                z = random_element(ctx, rng, 3);
                ToroidalElement j = toroidal_bracket(ctx, x, toroidal_bracket(ctx, y, z)) +
                                    toroidal_bracket(ctx, y, toroidal_bracket(ctx, z, x)) +
                                    toroidal_bracket(ctx, z, toroidal_bracket(ctx, x, y));
                bad += !j.is_zero();
            }
            out.expect(bad == 0, "jacobi mu=" + std::to_string(mu) + " nu=" + std::to_string(nu) +
                                     " N=" + std::to_string(N));
        }
    }
    // tau_i(t0 d0, t0^{-1} d0) = k0
    ToroidalContext ctx = make_context(baby.algebra, baby.autos, 1, 1);
    const long m0 = ctx.m0();
    std::vector<long> zero(ctx.N());
    auto up = ToroidalElement::term(Degree{m0, zero}, Kind::D, 0);
    auto down = ToroidalElement::term(Degree{-m0, zero}, Kind::D, 0);
    auto k0 = ToroidalElement::term(Degree{0, zero}, Kind::K, 0);
    out.expect(tau1(ctx, up, down) == k0, "tau1");
    out.expect(tau2(ctx, up, down) == k0, "tau2");
}

void criterion_tkk(Outcome& out)
{
    const std::vector<std::vector<std::vector<int>>> tori = {{{0, 0}, {0, 1}, {1, 0}},
                                                             {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    for (const auto& cosets : tori) {
        const long r = static_cast<long>(cosets.size());
        TKKReport rep = verify_iso(make_tkk_setup(cosets), 2);
        const std::string tag = "r=" + std::to_string(r);
        out.expect(rep.pairs > 0 && rep.mismatches == 0, tag + " homomorphism");
        out.expect(rep.dims_equal && rep.dims_coset_constant, tag + " per-coset dims");
        out.expect(rep.injective && rep.degree_zero, tag + " injective");
        const long lhs = 3 * r + binomial(r - 1, 2), rhs = binomial(r + 2, 2);
        out.expect(lhs == rhs, tag + " identity");
        out.expect(rep.total_lhs == lhs && rep.total_rhs == rhs, tag + " totals");
        // so(r+2) has dimension C(r+2,2)
        out.expect(rhs == static_cast<long>(build_so(clifford_index_set(cosets)).dim()), tag + " so dim");
    }
}

RootVec combo(const AffineRootSystem& rs, long delta, const std::map<size_t, long>& simple)
{
    RootVec v = rs.delta();
    for (auto& x : v) x *= delta;
    for (const auto& [i, c] : simple) {
        RootVec a = rs.simple(i);
        for (size_t k = 0; k < v.size(); ++k) v[k] += c * a[k];
    }
    return v;
}

void criterion_roots(Outcome& out)
{
    CliffordExample baby = baby_tkk();
    AffineReport a = affine_report(baby);
    const AffineRootSystem& rs = a.rs;
    out.expect(a.action.apply(rs.simple(1)) == combo(rs, -1, {{1, -1}}), "alpha1 -> -delta-alpha1");
    out.expect(a.action.apply(rs.simple(2)) == combo(rs, 1, {{1, 2}, {2, 1}}), "alpha2 -> delta+2alpha1+alpha2");
    out.expect(a.action.apply(rs.simple(0)) == combo(rs, 2, {{2, -1}}), "alpha0 -> 2delta-alpha2");
    out.expect(word_action(rs, {1, 2, 0, 1}, {2, 1, 0}).images == a.action.images, "so5 word r1r2r0r1 gamma");

    // e_1 -> -t0^{-1} f_1
    Untwist th = untwist_theta(baby.algebra, baby.grading_element, baby.grading_denominator, baby.autos[0]);
    AffineElement x;
    x.add(0, baby.e[0]);
    AffineElement tx = theta(th, x), sx;
    sx.central = tx.central;
    for (const auto& [q, v] : tx.loop) sx.add(q, apply_aut(baby.autos[1], v));
    AffineElement expected;
    expected.add(-1, scale(-1, baby.f[0]));
    out.expect(theta_inverse(th, sx) == expected, "e1 -> -t0^-1 f1");

    CliffordExample full = full_tkk();
    AffineReport b = affine_report(full);
    out.expect(word_action(b.rs, {3, 0, 2, 1}, {2, 3, 0, 1}).images == b.action.images, "so6 word r3r0r2r1 eta");
    out.expect(a.recomposes && b.recomposes, "greedy factorization recomposes");
}

void criterion_appendix(Outcome& out)
{
    for (auto [name, dim] : {std::pair{"baby-tkk", 2}, {"full-tkk", 3}}) {
        CliffordExample ex = clifford_example(name);
        std::vector<Vec> h = invariant_cartan(ex.algebra, ex.autos, 1);
        const size_t d = h.size();
        // sigma(h) = h as a subspace: adding the images does not raise the rank
        bool invariant = rank(h) == d;
        for (const auto& s : ex.autos) {
            Mat rows = h;
            for (const auto& v : h) rows.push_back(apply_aut(s, v));
            invariant = invariant && rank(rows) == d;
        }
        bool abelian = true;
        for (const auto& u : h)
            for (const auto& v : h) abelian = abelian && is_zero(bracket(ex.algebra, u, v));
        // the centralizer is the common kernel of the ad h_i
        Mat stacked;
        for (const auto& v : h)
            for (const auto& row : ad_matrix(ex.algebra, v)) stacked.push_back(row);
        bool self_centralizing = nullspace(stacked, ex.algebra.dim()).size() == d;
        out.expect(static_cast<int>(d) == dim, std::string(name) + " cartan dim");
        out.expect(invariant, std::string(name) + " cartan invariant");
        out.expect(abelian && self_centralizing, std::string(name) + " cartan self-centralizing");
        LieAut e = exp_ad_rational(ex.algebra, ex.grading_element, Rational(1, ex.grading_denominator));
        out.expect(e.matrix == ex.autos[0].matrix, std::string(name) + " exp realization");
    }
}

RunConfig baby_rep_config()
{
    RunConfig cfg = example_config("baby-tkk");
    cfg.depth = 3;
    cfg.cocycles = {{0, 0}, {1, 0}};
    cfg.assemblies = {"toroidal", "eala"};
    return cfg;
}

const json& rep_report()
{
    static const json report = run_rep_suite(baby_rep_config()).report;
    return report;
}

void criterion_representation(Outcome& out)
{
    const json& r = rep_report();
    // closed-form charges evaluated by hand with dim so5 = 10, dual Coxeter 3, N = 1, c = 1
    const std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>> hand = {
        {{"toroidal", "0"}, {{"C_Vir", "-9/2"}, {"C_sl", "1"}, {"C_Heis", "1"}, {"C_VH", "1/2"}}},
        {{"toroidal", "1"}, {{"C_Vir", "15/2"}, {"C_sl", "0"}, {"C_Heis", "0"}, {"C_VH", "1/2"}}},
        {{"eala", "0"}, {{"C_Vir", "-9/2"}, {"C_sl", "1"}}},
        {{"eala", "1"}, {{"C_Vir", "39/2"}, {"C_sl", "0"}}},
    };
    size_t runs = 0;
    for (const auto& run : r.at("runs")) {
        std::string a = run.at("assembly"), mu = run.at("mu");
        std::string tag = a + " mu=" + mu;
        out.expect(run.at("checks").get<size_t>() > 0 && run.at("failures").get<size_t>() == 0 &&
                       run.at("coset_violations").get<size_t>() == 0,
                   tag + " commutators");
        for (const auto& [fam, c] : run.at("relations").items())
            out.expect(c.at("failures").get<size_t>() == 0, tag + " " + fam);
        auto it = hand.find({a, mu});
        out.expect(it != hand.end(), tag + " unexpected run");
        if (it != hand.end())
            for (const auto& [k, v] : it->second) out.expect(run.at("charges").at(k) == v, tag + " " + k);
        ++runs;
    }
    out.expect(runs == 4, "four runs");
    out.expect(r.at("depth") == 3, "depth 3");
    for (const char* shape : {"TWO_COPIES", "EIGENSPLIT"}) {
        const json& t = r.at("thin_covering").at(shape);
        out.expect(t.at("generator_checks").get<size_t>() > 0 && t.at("violations").get<size_t>() == 0 &&
                       t.at("phi_failures").get<size_t>() == 0,
                   std::string(shape) + " closure");
    }
}

// monomials of weighted degree <= depth in variables u_j, v_j (j >= 1, weight j) for N pairs
size_t fock_count(size_t N, long depth)
{
    std::vector<size_t> coeff(depth + 1, 0);
    coeff[0] = 1;
    for (long j = 1; j <= depth; ++j)
        for (size_t copy = 0; copy < 2 * N; ++copy)
            for (long d = j; d <= depth; ++d) coeff[d] += coeff[d - j];
    size_t total = 0;
    for (size_t c : coeff) total += c;
    return total;
}

void criterion_proxies(Outcome& out)
{
    const json& p = rep_report().at("irreducibility_proxies");
    out.expect(p.at("certified") == false, "marked uncertified");
    out.expect(p.at("fock_monomials").get<size_t>() == fock_count(1, 3), "fock monomial count");
    out.expect(p.at("heisenberg_connected") == true, "heisenberg connects monomials");
    for (const char* op : {"omega_hyp", "E_ab", "q^r Y_W(x)", "Y_W(omega_aff)", "omega_glvir"})
        out.expect(p.at("orbit_closed").contains(op) && p.at("orbit_closed").at(op) == true,
                   std::string(op) + " closure");
}

void criterion_determinism(Outcome& out)
{
    for (const auto* name : {"baby-tkk", "full-tkk"}) {
        RunConfig cfg = example_config(name);
        cfg.depth = 2;
        cfg.seed = 5;
        json first = run_command("all", cfg).report, second = run_command("all", cfg).report;
        out.expect(first == second, std::string(name) + " reports equal");
        out.expect(first.dump() == second.dump(), std::string(name) + " reports byte-identical");
    }
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"structure: so5/so6 Jacobi, form, gradings", criterion_structure},
        {"toroidal bracket: Jacobi sweeps and tau values", criterion_toroidal},
        {"TKK isomorphism for r = 3, 4", criterion_tkk},
        {"affine root images, e1 image, factorizations", criterion_roots},
        {"invariant Cartan and exp realization", criterion_appendix},
        {"representation: commutators, charges, thin closure", criterion_representation},
        {"irreducibility proxies (not a certificate)", criterion_proxies},
        {"determinism", criterion_determinism},
    };
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(out);
        } catch (const std::exception& e) {
            out.ok = false;
            out.notes << " [exception: " << e.what() << "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << i + 1 << ": " << (out.ok ? "PASS" : "FAIL") << "  " << criteria[i].first
                  << " (" << std::fixed << std::setprecision(1) << secs << "s)" << out.notes.str() << std::endl;
        all = all && out.ok;
    }
    return all ? 0 : 1;
}
