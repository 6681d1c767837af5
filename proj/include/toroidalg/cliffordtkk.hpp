#pragma once

#include "toroidalg/toroidal.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toroidalg {

using Multi = std::vector<long>; // element of Z^m

struct JordanTorus {
    int m = 0;
    std::vector<std::vector<int>> cosets; // zero coset first
    size_t r() const { return cosets.size(); }

    std::vector<int> coset(const Multi& mu) const;
    // position of the coset of mu in `cosets`, or -1 if mu is not in S
    int coset_index(const Multi& mu) const;
    bool contains(const Multi& mu) const { return coset_index(mu) >= 0; }
};

// "(0,0),(0,1),(1,0)" -> coset list; throws std::invalid_argument on malformed input
std::vector<std::vector<int>> parse_cosets(const std::string& text);
JordanTorus make_jordan_torus(std::vector<std::vector<int>> cosets);

// s^mu s^eta, or nullopt for zero
std::optional<Multi> jordan_mul(const JordanTorus& J, const Multi& mu, const Multi& eta);

// Operator on J of the form s^eta -> sum_i A[i][coset(eta)] s^{eta+shift}, restricted to the
// coset slot i; rows and columns are indexed by J.cosets.
struct TKKElement {
    std::map<std::pair<Multi, int>, CycScalar> wings; // (mu, X_{1,2,3} as 0..2)
    std::map<Multi, Mat> ops;

    void add_wing(const Multi& mu, int x, const CycScalar& c);
    void add_op(const Multi& shift, const Mat& a);
    TKKElement& operator+=(const TKKElement& o);
    TKKElement scaled(const CycScalar& c) const;
    bool is_zero() const { return wings.empty() && ops.empty(); }
    bool operator==(const TKKElement& o) const { return wings == o.wings && ops == o.ops; }
};

TKKElement tkk_wing(const Multi& mu, int x, const CycScalar& c = 1);
// L_{s^gamma} as (shift, matrix)
std::pair<Multi, Mat> left_multiplication(const JordanTorus& J, const Multi& gamma);
TKKElement inner_derivation(const JordanTorus& J, const Multi& gamma, const Multi& eta);

struct TKKSetup {
    JordanTorus J;
    ToroidalContext target; // so(U) with sigma_1..sigma_m; T_1 becomes t_0^{1/2}
    CycScalar sl2_form = 1; // (X_i|X_j) = sl2_form * delta_ij
    std::string probe;      // the pair that fixed sl2_form
};

TKKSetup make_tkk_setup(const std::vector<std::vector<int>>& cosets);

TKKElement tkk_bracket(const TKKSetup& S, const TKKElement& x, const TKKElement& y);
ToroidalElement phi_map(const TKKSetup& S, const TKKElement& x);
Degree tkk_degree(const Multi& mu);

// Generators with degrees in [-box, box]^m: the wings s^mu (x) X_i and one [L, L] per
// degree and unordered pair of distinct nonzero cosets.
struct TKKGenerator {
    TKKElement element;
    Multi degree;
    std::string label;
};
std::vector<TKKGenerator> tkk_generators(const JordanTorus& J, int box);

struct TKKReport {
    size_t generators = 0;
    size_t pairs = 0;
    size_t mismatches = 0;
    std::string first_mismatch;
    std::map<std::vector<int>, size_t> tkk_dims, loop_dims;
    bool dims_equal = false;
    bool dims_coset_constant = false;
    long total_lhs = 0, total_rhs = 0; // 3r + C(r-1,2), C(r+2,2)
    bool injective = false;
    bool degree_zero = false;
    std::string probe;
    CycScalar sl2_form;

    bool ok() const
    {
        return mismatches == 0 && dims_equal && dims_coset_constant && total_lhs == total_rhs && injective &&
               degree_zero;
    }
};

TKKReport verify_iso(const TKKSetup& S, int box = 2);

struct JacobiReport {
    size_t triples = 0;
    size_t failures = 0;
    std::string first_failure;
};
JacobiReport tkk_jacobi(const TKKSetup& S, int box);

} // namespace toroidalg
