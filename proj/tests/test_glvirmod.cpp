#include "doctest.h"
#include "toroidalg/glvirmod.hpp"

#include <random>

using namespace toroidalg;

namespace {

GlVirGen C(GlVirKind k) { return GlVirGen::central(k); }

GlVirSum sum_bracket(int N, const GlVirSum& a, const GlVirSum& b)
{
    GlVirSum out;
    for (const auto& [x, c] : a)
        for (const auto& [y, d] : b)
            for (const auto& [g, e] : glvir_bracket(N, x, y)) {
                out[g] += c * d * e;
                if (out[g].is_zero()) out.erase(g);
            }
    return out;
}

GlVirSum random_gen(std::mt19937_64& rng, int N)
{
    std::uniform_int_distribution<int> kind(0, 2), idx(0, N - 1), mode(-3, 3);
    if (kind(rng) == 0) return {{GlVirGen::L(mode(rng)), 1}};
    return {{GlVirGen::E(idx(rng), idx(rng), mode(rng)), 1}};
}

GlVirSum plus(GlVirSum a, const GlVirSum& b)
{
    for (const auto& [g, c] : b) {
        a[g] += c;
        if (a[g].is_zero()) a.erase(g);
    }
    return a;
}

std::vector<ModeKey> all_gens(const GlVirAlgebra& A, long reach)
{
    std::vector<ModeKey> out;
    for (long n = -reach; n <= reach; ++n)
        for (size_t b = 0; b < A.basis_size(); ++b) out.push_back({n, static_cast<int>(b)});
    return out;
}

} // namespace

TEST_SUITE("glvirmod") {

TEST_CASE("bracket relations on low modes")
{
    GlVirSum lhs = glvir_bracket(1, GlVirGen::L(2), GlVirGen::L(-2));
    GlVirSum want = {{GlVirGen::L(0), 4}, {C(GlVirKind::CVir), CycScalar(1, 2)}};
    CHECK(lhs == want);
    CHECK(glvir_bracket(1, GlVirGen::L(3), C(GlVirKind::CVir)).empty());
    CHECK(glvir_bracket(2, C(GlVirKind::CSl), GlVirGen::E(0, 1, 2)).empty());

    GlVirSum e11 = glvir_bracket(2, GlVirGen::E(0, 0, 1), GlVirGen::E(0, 0, -1));
    GlVirSum want_e = {{C(GlVirKind::CSl), CycScalar(1, 2)}, {C(GlVirKind::CHeis), CycScalar(1, 4)}};
    CHECK(e11 == want_e);
}

TEST_CASE("hand-computed brackets")
{
    // Tr(E12 E21) = 1 and psi_2 vanishes off the diagonal
    GlVirSum a = glvir_bracket(2, GlVirGen::E(0, 1, 1), GlVirGen::E(1, 0, -1));
    GlVirSum want_a = {{GlVirGen::E(0, 0, 0), 1}, {GlVirGen::E(1, 1, 0), -1}, {C(GlVirKind::CSl), 1}};
    CHECK(a == want_a);
    // -(n^2 + n) psi_2(E11) = -2 * 1/2
    GlVirSum b = glvir_bracket(2, GlVirGen::L(1), GlVirGen::E(0, 0, -1));
    GlVirSum want_b = {{GlVirGen::E(0, 0, 0), 1}, {C(GlVirKind::CVH), -1}};
    CHECK(b == want_b);
    // L(-1) never produces the VH term
    CHECK(glvir_bracket(1, GlVirGen::L(-1), GlVirGen::E(0, 0, 1)) == GlVirSum{{GlVirGen::E(0, 0, 0), -1}});
    // sl part of E11 in gl_1 is zero
    CHECK(glvir_bracket(1, GlVirGen::E(0, 0, 2), GlVirGen::E(0, 0, -2)) == GlVirSum{{C(GlVirKind::CHeis), 2}});
}

TEST_CASE("antisymmetry and Jacobi")
{
    std::mt19937_64 rng(17);
    for (int N : {1, 2, 3}) {
        for (int t = 0; t < 80; ++t) {
            GlVirSum x = random_gen(rng, N), y = random_gen(rng, N), z = random_gen(rng, N);
            GlVirSum xy = sum_bracket(N, x, y), yx = sum_bracket(N, y, x);
            CHECK(plus(xy, yx).empty());
            GlVirSum jac = plus(plus(sum_bracket(N, x, sum_bracket(N, y, z)), sum_bracket(N, y, sum_bracket(N, z, x))),
                                sum_bracket(N, z, sum_bracket(N, x, y)));
            CHECK(jac.empty());
        }
    }
}

TEST_CASE("slVir basis and bracket")
{
    GlVirAlgebra A(3, true);
    CHECK(A.basis_size() == 1 + 8);
    CHECK(A.label({2, 7}) == "H1(2)");
    CHECK(A.label({0, 1}) == "E12(0)");
    // [E12, E21] = H1 and Tr(E12 E21) = 1
    ModeSum s = A.bracket({1, 1}, {-1, 3});
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].first == ModeKey{0, 7});
    CHECK(s.central[0] == CycScalar(1));
    CHECK(s.central[1].is_zero());
    // Tr(H1 H1) = 2, no Heisenberg part
    ModeSum h = A.bracket({2, 7}, {-2, 7});
    CHECK(h.central[0] == CycScalar(4));
    CHECK(h.central[1].is_zero());
    CHECK(h.central[3].is_zero());
}

TEST_CASE("central characters")
{
    // EALA, N = 1, mu = 0, c = 1, so5: -2 - 10/4
    GlVirCharges e = eala_charges(1, 1, 0, 10, 3);
    CHECK(e.vir == Rational(-9, 2));
    CHECK(e.sl == 1);
    GlVirCharges t = toroidal_charges(1, 1, 0, 0, 10, 3);
    CHECK(t.vir == Rational(-9, 2));
    CHECK(t.heis == 1);
    CHECK(t.vh == Rational(1, 2));
    // N = 2, c = 1, mu = nu = 1: sl 0, Heis 2*0 - 4, VH 2(1/2 - 1), Vir 24 - 4 - 5/2
    GlVirCharges u = toroidal_charges(2, 1, 1, 1, 10, 3);
    CHECK(u.sl == 0);
    CHECK(u.heis == -4);
    CHECK(u.vh == -1);
    CHECK(u.vir == Rational(35, 2));
    // EALA, N = 2, mu = 1, c = 1: 6 + 18 - 4 - 5/2
    CHECK(eala_charges(2, 1, 1, 10, 3).vir == Rational(35, 2));
    CHECK_THROWS_AS(toroidal_charges(1, -3, 0, 0, 10, 3), std::domain_error);
}

TEST_CASE("small modules")
{
    GlVirCharges ch = toroidal_charges(1, 1, 0, 0, 10, 3);
    GlVirModule m0 = build_hw_module(1, false, {Rational(3, 2), 0}, ch, 0);
    CHECK(m0.module->dim() == 1);
    CHECK(m0.module->act({0, 0}, 0) == ModVec{{0, CycScalar(3, 2)}});

    GlVirModule m2 = build_hw_module(1, false, {Rational(3, 2), 0}, ch, 2);
    const InducedModule& M = *m2.module;
    CHECK(M.dim() == 8);
    for (const auto& mono : std::vector<InducedModule::Monomial>{
             {}, {{-1, 0}}, {{-2, 0}}, {{-1, 0}, {-1, 0}}})
        CHECK(M.find(mono).has_value());
    // [L(1), L(-1)] v = 2 h v
    size_t lm1 = *M.find({{-1, 0}});
    CHECK(M.act({1, 0}, lm1) == ModVec{{0, CycScalar(3)}});
    // L(0) is diagonal with eigenvalue h + degree
    for (size_t i = 0; i < M.dim(); ++i)
        CHECK(M.act({0, 0}, i) == ModVec{{i, CycScalar(Rational(3, 2) + M.degree(i))}});
    CHECK_THROWS_AS(M.act({-1, 0}, *M.find({{-2, 0}})), TruncationError);
}

TEST_CASE("the E_ii highest weight is shared")
{
    GlVirModule m = build_hw_module(2, false, {0, Rational(2, 3)}, toroidal_charges(2, 1, 0, 0, 10, 3), 1);
    const GlVirAlgebra& A = *m.algebra;
    CHECK(m.module->act({0, A.e_index(0, 0)}, 0) == ModVec{{0, CycScalar(2, 3)}});
    CHECK(m.module->act({0, A.e_index(1, 1)}, 0) == ModVec{{0, CycScalar(2, 3)}});
    CHECK(m.module->act({0, A.e_index(0, 1)}, 0).empty());
}

TEST_CASE("module commutators are exhaustive at depth 3")
{
    std::vector<std::pair<int, bool>> cases = {{1, false}, {2, false}, {2, true}};
    for (const auto& [N, sl] : cases) {
        GlVirCharges ch = sl ? eala_charges(N, 1, 0, 10, 3) : toroidal_charges(N, 1, 0, 0, 10, 3);
        GlVirModule m = build_hw_module(N, sl, {Rational(1, 3), sl ? Rational(0) : Rational(5)}, ch, 3);
        if (N == 2 && !sl) CHECK(m.module->dim() == 91);
        CommutatorReport rep = verify_commutators(*m.module, all_gens(*m.algebra, 3));
        INFO(rep.first_failure);
        CHECK(rep.ok());
        CHECK(rep.checks > 500);
    }
}

TEST_CASE("central values reach the module action")
{
    GlVirCharges ch = toroidal_charges(1, 1, 0, 0, 10, 3);
    GlVirModule good = build_hw_module(1, false, {0, 0}, ch, 2);
    // [L(2), L(-2)] v = (4 L(0) + C_Vir / 2) v = -9/4 v
    CHECK(good.module->act({2, 0}, good.module->act({-2, 0}, 0)) == ModVec{{0, CycScalar(-9, 4)}});
    InducedModule zero_vir(good.algebra, {ch.sl, ch.heis, 0, ch.vh}, [](int) { return CycScalar(0); }, 2);
    CHECK(zero_vir.act({2, 0}, zero_vir.act({-2, 0}, 0)).empty());
}

} // TEST_SUITE
