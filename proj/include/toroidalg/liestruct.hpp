#pragma once

#include "toroidalg/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace toroidalg {

using SparseVec = std::vector<std::pair<size_t, CycScalar>>;

struct StructLie {
    std::vector<std::string> labels;
    // sc[i][j] lists the nonzero c_{ij}^k
    std::vector<std::vector<SparseVec>> sc;
    Mat form;
    Rational dual_coxeter;
    std::string type;

    // so(U) only: index labels and the defining matrices of the basis
    std::vector<std::string> index_labels;
    std::vector<Mat> realization;

    size_t dim() const { return labels.size(); }
};

Vec bracket(const StructLie& L, const Vec& x, const Vec& y);
CycScalar form_value(const StructLie& L, const Vec& x, const Vec& y);
// column j is [x, b_j]
Mat ad_matrix(const StructLie& L, const Vec& x);

StructLie build_so(const std::vector<std::string>& index_set);
// Basis index of e_{ij}, i < j (0-based indices into the index set).
size_t so_basis_index(size_t n, size_t i, size_t j);
Vec so_from_matrix(const StructLie& L, const Mat& m);
Mat so_to_matrix(const StructLie& L, const Vec& x);

bool check_antisymmetry(const StructLie& L);
bool check_jacobi(const StructLie& L);
bool check_form_invariance(const StructLie& L);

struct LieAut {
    Mat matrix;
    int order = 1;
};

Vec apply_aut(const LieAut& s, const Vec& x);
bool preserves_bracket(const StructLie& L, const LieAut& s);
bool preserves_form(const StructLie& L, const LieAut& s);
bool commute(const LieAut& a, const LieAut& b);
int matrix_order(const Mat& m, int bound = 64);

LieAut conj_automorphism(const StructLie& L, const std::vector<int>& diag_signs);
bool is_inner_sign_aut(const std::vector<int>& diag_signs);

// exp(2 pi i t ad h), built from the integer eigenspaces of ad h
LieAut exp_ad_rational(const StructLie& L, const Vec& h, const Rational& t);
// integer eigenvalue -> eigenspace basis; throws if ad h is not integrally diagonalizable
std::map<long, std::vector<Vec>> integer_eigenspaces(const StructLie& L, const Vec& h);

using Coset = std::vector<int>;

struct Grading {
    std::vector<int> orders;
    std::map<Coset, std::vector<Vec>> components;

    size_t dim(const Coset& s) const;
    Coset reduce(Coset s) const;
};

Grading simultaneous_grading(const StructLie& L, const std::vector<LieAut>& autos,
                             const std::vector<CycScalar>& roots);
Grading simultaneous_grading(const StructLie& L, const std::vector<LieAut>& autos);
bool check_grading_compatible(const StructLie& L, const Grading& g);

// subspaces are lists of spanning vectors in the algebra basis
std::vector<Vec> centralizer(const StructLie& L, const std::vector<Vec>& within,
                             const std::vector<Vec>& of);
bool is_abelian(const StructLie& L, const std::vector<Vec>& h);
bool is_self_centralizing(const StructLie& L, const std::vector<Vec>& h);
bool is_invariant(const LieAut& s, const std::vector<Vec>& h);
bool is_ad_semisimple(const StructLie& L, const Vec& x);

struct CartanSearch {
    uint64_t seed = 0;
    int samples_used = 0;
    bool widened = false;
};

std::vector<Vec> invariant_cartan(const StructLie& L, const std::vector<LieAut>& autos,
                                  uint64_t seed = 0, CartanSearch* info = nullptr);

} // namespace toroidalg
