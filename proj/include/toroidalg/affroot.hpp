#pragma once

#include "toroidalg/clifford_examples.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace toroidalg {

using RootVec = std::vector<long>; // coordinates in alpha_0 .. alpha_l

struct AffineRootSystem {
    std::vector<std::vector<int>> cartan; // cartan[i][j] = alpha_j(h_i)
    std::vector<int> marks;               // delta = sum marks[i] alpha_i
    std::vector<std::string> labels;

    size_t size() const { return marks.size(); }
    RootVec delta() const { return RootVec(marks.begin(), marks.end()); }
    RootVec simple(size_t i) const;
    RootVec reflect(size_t i, const RootVec& v) const;
};

// Untwisted affine extension of a finite Cartan matrix; marks are alpha_0 first.
AffineRootSystem affine_from_finite(const std::vector<std::vector<int>>& finite_cartan,
                                    const std::vector<int>& marks);
bool check_affine(const AffineRootSystem& rs);

struct RootAut {
    std::vector<RootVec> images; // images[i] = f(alpha_i)
    bool chevalley = false;      // f sends delta to -delta

    RootVec apply(const RootVec& v) const;
    bool operator==(const RootAut& o) const { return images == o.images && chevalley == o.chevalley; }
};

RootAut identity_root_aut(size_t n);
RootAut compose(const RootAut& f, const RootAut& g); // f after g
RootAut reflection_aut(const AffineRootSystem& rs, size_t i);
RootAut diagram_root_aut(const std::vector<int>& perm); // alpha_i -> alpha_perm[i]
// r_{w[0]} r_{w[1]} ... r_{w[k-1]} after gamma
RootAut word_action(const AffineRootSystem& rs, const std::vector<int>& word, const std::vector<int>& perm);
bool preserves_form(const AffineRootSystem& rs, const RootAut& f);
bool is_diagram_aut(const AffineRootSystem& rs, const std::vector<int>& perm);
std::string root_str(const AffineRootSystem& rs, const RootVec& v);

// element of the affine algebra: sum of t_0^q (x) x_q plus a multiple of C_aff
struct AffineElement {
    std::map<Rational, Vec> loop;
    CycScalar central;

    void add(const Rational& q, const Vec& x);
    bool operator==(const AffineElement& o) const { return loop == o.loop && central == o.central; }
};

AffineElement affine_bracket(const StructLie& L, const AffineElement& a, const AffineElement& b);

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// theta: untwisted affine -> twisted affine, sigma_0 = exp(2 pi i ad(h) / m)
struct Untwist {
    const StructLie* algebra = nullptr;
    Vec h;
    int m = 1;
    std::map<long, std::vector<Vec>> eigen; // ad h eigenvalue -> basis
    Mat to_eigen;                           // coordinates in the concatenated eigenbasis
    std::vector<long> eigen_value;          // eigenvalue of each concatenated basis vector
    Mat from_eigen;
};

Untwist untwist_theta(const StructLie& L, const Vec& h, int m, const LieAut& sigma0);
AffineElement theta(const Untwist& th, const AffineElement& x);
AffineElement theta_inverse(const Untwist& th, const AffineElement& y);

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// theta^{-1} sigma theta on the Chevalley generators e_0 .. e_l
RootAut induced_root_action(const CliffordExample& ex, const AffineRootSystem& rs, const LieAut& sigma,
                            const Untwist& th);

struct Factorization {
    std::vector<int> word;  // r_{word[0]} r_{word[1]} ...
    std::vector<int> perm;  // diagram automorphism alpha_i -> alpha_perm[i]
    bool chevalley = false;
};
Factorization factorize_aut(const AffineRootSystem& rs, const RootAut& f, int bound = 1000);

enum class ThinShape { TwoCopies, EigenSplit };
const char* shape_name(ThinShape s);
ThinShape thin_covering_shape(const AffineRootSystem& rs, const std::vector<int>& perm,
                              const std::vector<long>& labels);

// everything the CLI and acceptance report need for one example
struct AffineReport {
    AffineRootSystem rs;
    RootAut action;
    Factorization fact;
    bool recomposes = false;
    bool printed_word_matches = false;
    bool printed_perm_matches = false;
    bool square_is_weyl = false;
    bool fixes_delta = false;
};
AffineReport affine_report(const CliffordExample& ex);

} // namespace toroidalg
