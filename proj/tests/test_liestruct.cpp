#include "doctest.h"
#include "toroidalg/clifford_examples.hpp"

#include <map>

using namespace toroidalg;

namespace {

Vec basis_vec(const StructLie& L, size_t i, size_t j)
{
    return unit_vec(L.dim(), so_basis_index(L.index_labels.size(), i, j));
}

// Brute-force oracle: e_ij sits in coset ((1 - s_i s_j)/2)_p for each sign vector s.
std::map<Coset, size_t> sign_oracle(const std::vector<std::vector<int>>& signs)
{
    std::map<Coset, size_t> dims;
    const size_t n = signs[0].size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Coset c;
            for (const auto& s : signs) c.push_back(s[i] * s[j] == 1 ? 0 : 1);
            ++dims[c];
        }
    return dims;
}

} // namespace

TEST_SUITE("liestruct") {

TEST_CASE("build_so dimensions and brackets")
{
    StructLie L5 = build_so({"1", "2", "3", "4", "5"});
    StructLie L6 = build_so({"1", "2", "3", "4", "5", "6"});
    CHECK(L5.dim() == 10);
    CHECK(L6.dim() == 15);
    CHECK(L5.type == "B2");
    CHECK(L5.dual_coxeter == 3);
    CHECK(L6.type == "D3");
    CHECK(L6.dual_coxeter == 4);
    CHECK(build_so({"a", "b", "c"}).dual_coxeter == 2);

    // [e12, e23] from the defining matrices: E12-E21 times E23-E32 minus the reverse is E13-E31
    CHECK(bracket(L5, basis_vec(L5, 0, 1), basis_vec(L5, 1, 2)) == basis_vec(L5, 0, 2));
    Vec x = add(basis_vec(L5, 0, 3), scale(CycScalar::i(), basis_vec(L5, 2, 4)));
    CHECK(is_zero(bracket(L5, x, x)));
    CHECK_THROWS(bracket(L5, Vec(3), Vec(10)));
    CHECK_THROWS(build_so({"1", "2"}));
}

TEST_CASE("Jacobi and invariant form, exhaustive")
{
    for (size_t n : {4u, 5u, 6u}) {
        std::vector<std::string> idx;
        for (size_t k = 1; k <= n; ++k) idx.push_back(std::to_string(k));
        StructLie L = build_so(idx);
        CHECK(check_antisymmetry(L));
        CHECK(check_jacobi(L));
        CHECK(check_form_invariance(L));
    }
}

TEST_CASE("form normalization gives (e_ij|e_ij) = -1")
{
    StructLie L = build_so({"1", "2", "3", "4", "5"});
    // long root vector e_{(3+4i)}: check (e_ij|e_kl) = -delta
    for (size_t a = 0; a < L.dim(); ++a)
        for (size_t b = 0; b < L.dim(); ++b)
            CHECK(L.form[a][b] == CycScalar(a == b ? -1 : 0));
}

TEST_CASE("Chevalley relations of the so5 example")
{
    CliffordExample ex = baby_tkk();
    const StructLie& L = ex.algebra;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            CHECK(bracket(L, ex.e[i], ex.f[j]) == (i == j ? ex.h[i] : zero_vec(L.dim())));
            CHECK(bracket(L, ex.h[i], ex.e[j]) == scale(ex.cartan[i][j], ex.e[j]));
            CHECK(bracket(L, ex.h[i], ex.f[j]) == scale(-ex.cartan[i][j], ex.f[j]));
        }
    CHECK(bracket(L, ex.e[0], ex.f[0]) == ex.h[0]);
    CHECK(bracket(L, ex.h[0], ex.e[1]) == scale(-2, ex.e[1]));
}

TEST_CASE("Chevalley relations of the so6 example")
{
    CliffordExample ex = full_tkk();
    const StructLie& L = ex.algebra;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            CHECK(bracket(L, ex.e[i], ex.f[j]) == (i == j ? ex.h[i] : zero_vec(L.dim())));
            CHECK(bracket(L, ex.h[i], ex.e[j]) == scale(ex.cartan[i][j], ex.e[j]));
        }
}

TEST_CASE("conj_automorphism")
{
    CliffordExample ex = baby_tkk();
    const StructLie& L = ex.algebra;
    LieAut id = conj_automorphism(L, {1, 1, 1, 1, 1});
    CHECK(id.matrix == identity_mat(L.dim()));
    CHECK(ex.signs[0] == std::vector<int>{1, 1, 1, 1, -1});
    CHECK(ex.signs[1] == std::vector<int>{1, 1, 1, -1, 1});
    CHECK(apply_aut(ex.autos[0], basis_vec(L, 0, 1)) == basis_vec(L, 0, 1));
    CHECK(apply_aut(ex.autos[0], basis_vec(L, 0, 4)) == scale(-1, basis_vec(L, 0, 4)));
    CHECK(commute(ex.autos[0], ex.autos[1]));
    CHECK(ex.autos[0].order == 2);
    CHECK_THROWS(conj_automorphism(L, {1, 1}));
    for (const auto& s : ex.autos) {
        CHECK(preserves_bracket(L, s));
        CHECK(preserves_form(L, s));
        CHECK(mat_pow(s.matrix, s.order) == identity_mat(L.dim()));
    }
    CHECK(is_inner_sign_aut({1, 1, 1, 1, -1}));
    CHECK(is_inner_sign_aut({1, 1, 1, -1, -1, 1}));
    CHECK_FALSE(is_inner_sign_aut({1, 1, 1, -1, 1, 1}));
}

TEST_CASE("simultaneous gradings match the sign oracle")
{
    for (auto ex : {baby_tkk(), full_tkk()}) {
        Grading g = simultaneous_grading(ex.algebra, ex.autos);
        auto oracle = sign_oracle(ex.signs);
        size_t total = 0;
        for (const auto& [c, d] : oracle) {
            CHECK(g.dim(c) == d);
            total += d;
        }
        CHECK(total == ex.algebra.dim());
        CHECK(check_grading_compatible(ex.algebra, g));
    }
    CliffordExample b = baby_tkk();
    Grading g = simultaneous_grading(b.algebra, b.autos);
    CHECK(g.dim({0, 0}) == 3);
    CHECK(g.dim({0, 1}) == 3);
    CHECK(g.dim({1, 0}) == 3);
    CHECK(g.dim({1, 1}) == 1);
    Grading g0 = simultaneous_grading(b.algebra, {b.autos[0]});
    CHECK(g0.dim({0}) == 6);
    CHECK(g0.dim({1}) == 4);
    Grading triv = simultaneous_grading(b.algebra, {conj_automorphism(b.algebra, {1, 1, 1, 1, 1})});
    CHECK(triv.components.size() == 1);
    CHECK(triv.dim({0}) == 10);
}

TEST_CASE("non-commuting automorphisms are rejected")
{
    CliffordExample ex = baby_tkk();
    LieAut a = exp_ad_rational(ex.algebra, ex.h[1], Rational(1, 4));
    LieAut flip = conj_automorphism(ex.algebra, {-1, 1, 1, 1, 1});
    REQUIRE_FALSE(commute(a, flip));
    CHECK_THROWS_AS(simultaneous_grading(ex.algebra, {a, flip}), std::domain_error);
}

TEST_CASE("exp_ad_rational realizes sigma_0")
{
    CliffordExample b = baby_tkk();
    CHECK(exp_ad_rational(b.algebra, b.h[1], 0).matrix == identity_mat(10));
    CHECK(exp_ad_rational(b.algebra, b.grading_element, Rational(1, b.grading_denominator)).matrix ==
          b.autos[0].matrix);
    CliffordExample f = full_tkk();
    CHECK(exp_ad_rational(f.algebra, f.grading_element, Rational(1, f.grading_denominator)).matrix ==
          f.autos[0].matrix);
    // e12 has ad-eigenvalues +-i, not integers
    CHECK_THROWS(exp_ad_rational(b.algebra, basis_vec(b.algebra, 0, 1), Rational(1, 2)));
}

TEST_CASE("invariant Cartan subalgebras")
{
    CliffordExample b = baby_tkk(), f = full_tkk();
    auto h0 = invariant_cartan(b.algebra, {});
    CHECK(h0.size() == 2);
    CHECK(is_self_centralizing(b.algebra, h0));
    for (auto* ex : {&b, &f}) {
        CartanSearch info;
        auto h = invariant_cartan(ex->algebra, ex->autos, 42, &info);
        CHECK(h.size() == (ex == &b ? 2u : 3u));
        CHECK(is_abelian(ex->algebra, h));
        CHECK(is_self_centralizing(ex->algebra, h));
        for (const auto& s : ex->autos) CHECK(is_invariant(s, h));
        CHECK(info.seed == 42);
        for (const auto& x : h) CHECK(is_ad_semisimple(ex->algebra, x));
    }
}

}
