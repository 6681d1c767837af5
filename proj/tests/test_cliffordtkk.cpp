#include "doctest.h"
#include "toroidalg/cliffordtkk.hpp"

#include <random>

using namespace toroidalg;

namespace {

const std::vector<std::vector<int>> kBaby = {{0, 0}, {0, 1}, {1, 0}};
const std::vector<std::vector<int>> kFull = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

// Jordan torus written out independently: elements are maps degree -> coefficient
using JElt = std::map<Multi, Rational>;

bool in_s(const std::vector<std::vector<int>>& cosets, const Multi& mu)
{
    std::vector<int> c;
    for (long x : mu) c.push_back(static_cast<int>(x & 1));
    return std::find(cosets.begin(), cosets.end(), c) != cosets.end();
}

JElt jmul(const JElt& a, const JElt& b)
{
    JElt out;
    for (const auto& [mu, x] : a)
        for (const auto& [eta, y] : b) {
            bool mu_even = (mu[0] & 1) == 0 && (mu[1] & 1) == 0;
            bool eta_even = (eta[0] & 1) == 0 && (eta[1] & 1) == 0;
            bool same = (mu[0] & 1) == (eta[0] & 1) && (mu[1] & 1) == (eta[1] & 1);
            if (!(mu_even || eta_even || same)) continue;
            Multi s = {mu[0] + eta[0], mu[1] + eta[1]};
            out[s] += x * y;
            if (out[s] == 0) out.erase(s);
        }
    return out;
}

JElt apply_ops(const JordanTorus& J, const TKKElement& d, const JElt& a)
{
    JElt out;
    for (const auto& [shift, m] : d.ops)
        for (const auto& [eta, x] : a) {
            int src = J.coset_index(eta);
            Multi t = {eta[0] + shift[0], eta[1] + shift[1]};
            for (size_t row = 0; row < J.r(); ++row) {
                if (m[row][src].is_zero()) continue;
                REQUIRE(J.coset_index(t) == static_cast<int>(row));
                out[t] += x * m[row][src].rational();
                if (out[t] == 0) out.erase(t);
            }
        }
    return out;
}

JElt jadd(JElt a, const JElt& b)
{
    for (const auto& [k, v] : b) {
        a[k] += v;
        if (a[k] == 0) a.erase(k);
    }
    return a;
}

JElt random_jelt(std::mt19937_64& rng, const std::vector<std::vector<int>>& cosets)
{
    std::uniform_int_distribution<long> d(-3, 3);
    JElt a;
    while (a.size() < 2) {
        Multi mu = {d(rng), d(rng)};
        if (in_s(cosets, mu)) a[mu] = Rational(d(rng) == 0 ? 5 : d(rng) + 7, 1);
    }
    return a;
}

} // namespace

TEST_SUITE("cliffordtkk") {

TEST_CASE("coset parsing")
{
    CHECK(parse_cosets("(0,0),(0,1),(1,0)") == kBaby);
    CHECK(parse_cosets(" (0, 0) , (1,1) ") == std::vector<std::vector<int>>{{0, 0}, {1, 1}});
    CHECK_THROWS_AS(parse_cosets("(0,0),(0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_cosets(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_cosets("(a,b)"), std::invalid_argument);
}

TEST_CASE("Jordan torus validation")
{
    JordanTorus J = make_jordan_torus({{1, 0}, {0, 0}, {0, 1}});
    CHECK(J.cosets.front() == std::vector<int>{0, 0});
    CHECK(J.r() == 3);
    CHECK_THROWS_AS(make_jordan_torus({{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_jordan_torus({{0, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_jordan_torus({{0, 0}, {0, 1}, {0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_jordan_torus({{0, 0}, {0, 1, 0}}), std::invalid_argument);
}

TEST_CASE("Jordan multiplication follows the coset rule")
{
    JordanTorus J = make_jordan_torus(kFull);
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d) {
                    Multi mu = {a, b}, eta = {c, d};
                    JElt prod = jmul({{mu, 1}}, {{eta, 1}});
                    auto got = jordan_mul(J, mu, eta);
                    CHECK(got.has_value() == !prod.empty());
                    if (got) CHECK(*got == prod.begin()->first);
                    CHECK(got == jordan_mul(J, eta, mu));
                }
    JordanTorus B = make_jordan_torus(kBaby);
    CHECK_THROWS_AS(jordan_mul(B, {1, 1}, {0, 0}), std::domain_error);
}

TEST_CASE("Jordan identity on random elements")
{
    std::mt19937_64 rng(7);
    for (const auto& cosets : {kBaby, kFull})
        for (int trial = 0; trial < 40; ++trial) {
            JElt x = random_jelt(rng, cosets), y = random_jelt(rng, cosets);
            JElt x2 = jmul(x, x);
            CHECK(jmul(jmul(x2, y), x) == jmul(x2, jmul(y, x)));
        }
}

TEST_CASE("inner derivations vanish unless the cosets are distinct and nonzero")
{
    JordanTorus J = make_jordan_torus(kFull);
    CHECK(inner_derivation(J, {2, 0}, {1, 3}).is_zero());
    CHECK(inner_derivation(J, {1, 3}, {2, 0}).is_zero());
    CHECK(inner_derivation(J, {1, 0}, {3, 2}).is_zero());
    TKKElement d = inner_derivation(J, {0, 1}, {1, 0});
    REQUIRE(d.ops.size() == 1);
    const auto& [shift, a] = *d.ops.begin();
    CHECK(shift == Multi{1, 1});
    // slots: 0 -> (0,0), 1 -> (0,1), 2 -> (1,0), 3 -> (1,1)
    CHECK(a[1][2] == CycScalar(1));
    CHECK(a[2][1] == CycScalar(-1));
    size_t nonzero = 0;
    for (const auto& row : a)
        for (const auto& x : row) nonzero += !x.is_zero();
    CHECK(nonzero == 2);
}

TEST_CASE("inner derivations are derivations of the Jordan torus")
{
    std::mt19937_64 rng(11);
    JordanTorus J = make_jordan_torus(kFull);
    for (int trial = 0; trial < 30; ++trial) {
        JElt g = random_jelt(rng, kFull), h = random_jelt(rng, kFull);
        TKKElement d;
        for (const auto& [a, x] : g)
            for (const auto& [b, y] : h) d += inner_derivation(J, a, b).scaled(CycScalar(x * y));
        JElt u = random_jelt(rng, kFull), v = random_jelt(rng, kFull);
        JElt lhs = apply_ops(J, d, jmul(u, v));
        JElt rhs = jadd(jmul(apply_ops(J, d, u), v), jmul(u, apply_ops(J, d, v)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sl2 form is fixed by the probe pair")
{
    for (const auto& cosets : {kBaby, kFull}) {
        TKKSetup S = make_tkk_setup(cosets);
        // [e_{g,1}, e_{h,1}] = -e_{g,h} in so(U), so (X_1|X_1) must be -1
        CHECK(S.sl2_form == CycScalar(-1));
        CHECK(S.probe.find("X1") != std::string::npos);
    }
}

TEST_CASE("phi on single generators")
{
    TKKSetup S = make_tkk_setup(kBaby);
    // s^0 X1 -> e32 = -e23 ; index set 1,2,3,(0,1),(1,0)
    ToroidalElement img = phi_map(S, tkk_wing({0, 0}, 0));
    Vec e23(10);
    e23[so_basis_index(5, 1, 2)] = -1;
    CHECK(img == loop_element(S.target, tkk_degree({0, 0}), e23));
    // s^(0,1) X2 -> t1 e_{(0,1),2} = -t1 e_{2,(0,1)}
    Vec e24(10);
    e24[so_basis_index(5, 1, 3)] = -1;
    CHECK(phi_map(S, tkk_wing({0, 1}, 1)) == loop_element(S.target, Degree{0, {1}}, e24));
    // [L_(0,1), L_(1,0)] -> T^(1,1) e_{(0,1),(1,0)}
    Vec e45(10);
    e45[so_basis_index(5, 3, 4)] = 1;
    CHECK(phi_map(S, inner_derivation(S.J, {0, 1}, {1, 0})) == loop_element(S.target, Degree{1, {1}}, e45));
    CHECK_THROWS_AS(phi_map(S, tkk_wing({1, 1}, 0)), std::domain_error);
}

TEST_CASE("phi is an isomorphism on the baby example")
{
    TKKSetup S = make_tkk_setup(kBaby);
    TKKReport rep = verify_iso(S, 2);
    CHECK(rep.mismatches == 0);
    INFO(rep.first_mismatch);
    CHECK(rep.generators == 67);
    CHECK(rep.pairs == 67 * 67);
    CHECK(rep.tkk_dims == std::map<std::vector<int>, size_t>{{{0, 0}, 3}, {{0, 1}, 3}, {{1, 0}, 3}, {{1, 1}, 1}});
    CHECK(rep.dims_equal);
    CHECK(rep.dims_coset_constant);
    CHECK(rep.total_lhs == 10);
    CHECK(rep.total_rhs == 10);
    CHECK(rep.injective);
    CHECK(rep.degree_zero);
    CHECK(rep.ok());
}

TEST_CASE("phi is an isomorphism on the full example")
{
    TKKSetup S = make_tkk_setup(kFull);
    TKKReport rep = verify_iso(S, 2);
    INFO(rep.first_mismatch);
    CHECK(rep.mismatches == 0);
    CHECK(rep.tkk_dims == std::map<std::vector<int>, size_t>{{{0, 0}, 3}, {{0, 1}, 4}, {{1, 0}, 4}, {{1, 1}, 4}});
    CHECK(rep.loop_dims == rep.tkk_dims);
    CHECK(rep.total_lhs == 15);
    CHECK(rep.total_rhs == 15);
    CHECK(rep.ok());
}

TEST_CASE("a wrong form constant breaks the homomorphism")
{
    TKKSetup S = make_tkk_setup(kBaby);
    S.sl2_form = CycScalar(1);
    CHECK(verify_iso(S, 1).mismatches > 0);
}

TEST_CASE("TKK bracket satisfies Jacobi on generators")
{
    for (const auto& cosets : {kBaby, kFull}) {
        TKKSetup S = make_tkk_setup(cosets);
        JacobiReport rep = tkk_jacobi(S, 2);
        const size_t n = tkk_generators(S.J, 2).size();
        INFO(rep.first_failure);
        CHECK(rep.triples == n * (n - 1) * (n - 2) / 6);
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("three variables")
{
    TKKSetup S = make_tkk_setup({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    TKKReport rep = verify_iso(S, 1);
    INFO(rep.first_mismatch);
    CHECK(rep.ok());
    CHECK(rep.total_lhs == 15);
}

} // TEST_SUITE
