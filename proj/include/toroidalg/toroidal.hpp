#pragma once

#include "toroidalg/liestruct.hpp"

#include <compare>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace toroidalg {

class MembershipError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// t_0^{t0/m_0} t^r ; t0 is the numerator over the fixed denominator m_0
struct Degree {
    long t0 = 0;
    std::vector<long> r;

    auto operator<=>(const Degree&) const = default;
    Degree operator+(const Degree& o) const;
    Degree operator-() const;
    bool is_zero() const;
};

enum class Kind { Alg, K, D };

struct TermKey {
    Degree deg;
    Kind kind = Kind::Alg;
    size_t index = 0;

    auto operator<=>(const TermKey&) const = default;
};

struct ToroidalElement {
    std::map<TermKey, CycScalar> terms;

    void add(const TermKey& k, const CycScalar& c);
    ToroidalElement& operator+=(const ToroidalElement& o);
    ToroidalElement& operator-=(const ToroidalElement& o);
    ToroidalElement scaled(const CycScalar& c) const;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const ToroidalElement& o) const { return terms == o.terms; }

    static ToroidalElement term(const Degree& d, Kind k, size_t index, const CycScalar& c = 1);
};

ToroidalElement operator+(ToroidalElement a, const ToroidalElement& b);
ToroidalElement operator-(ToroidalElement a, const ToroidalElement& b);

struct ToroidalContext {
    // the algebra rewritten in a basis of simultaneous eigenvectors
    StructLie algebra;
    std::vector<Coset> basis_coset;
    Mat adapted_to_standard; // column k = k-th adapted basis vector in the original basis
    Mat standard_to_adapted;
    Grading grading;
    std::vector<int> orders; // m_0, m_1, ..., m_N
    Rational mu, nu;

    int m0() const { return orders[0]; }
    size_t N() const { return orders.size() - 1; }
    // exponent of t_e in the degree, e = 0..N
    Rational exponent(const Degree& d, size_t e) const;
    Coset coset_of(const Degree& d) const;
};

ToroidalContext make_context(const StructLie& L, const std::vector<LieAut>& autos,
                             const Rational& mu = 0, const Rational& nu = 0);

// algebra vectors in the original basis <-> adapted basis
Vec to_adapted(const ToroidalContext& ctx, const Vec& x);
Vec to_standard(const ToroidalContext& ctx, const Vec& x);
// t^d (x) for x in the original basis; x must lie in the graded piece of d
ToroidalElement loop_element(const ToroidalContext& ctx, const Degree& d, const Vec& x);

bool is_valid(const ToroidalContext& ctx, const ToroidalElement& x, std::string* why = nullptr);
void validate(const ToroidalContext& ctx, const ToroidalElement& x);

ToroidalElement toroidal_bracket(const ToroidalContext& ctx, const ToroidalElement& x,
                                 const ToroidalElement& y);
// multiloop bracket alone: loop parts only, no central term
ToroidalElement loop_bracket(const ToroidalContext& ctx, const ToroidalElement& x, const ToroidalElement& y);

ToroidalElement reduce_kahler(const ToroidalContext& ctx, const ToroidalElement& x);
// d(t^d) as an unreduced K-element
ToroidalElement exact_differential(const ToroidalContext& ctx, const Degree& d, const CycScalar& c = 1);

ToroidalElement tau1(const ToroidalContext& ctx, const ToroidalElement& v, const ToroidalElement& w);
ToroidalElement tau2(const ToroidalContext& ctx, const ToroidalElement& v, const ToroidalElement& w);
ToroidalElement cocycle_tau(const ToroidalContext& ctx, const ToroidalElement& v, const ToroidalElement& w);

// Tr(v^J) of the derivation part, by degree
std::map<Degree, CycScalar> divergence(const ToroidalContext& ctx, const ToroidalElement& x);

enum class EalaKind { DD, DHat };

// Coefficient of z^{-j-1} in d~_{ab}(s,z), or of z^{-j-2} in d^_a(s,z) (b ignored);
// a, b run over 1..N, s over Gamma.
ToroidalElement eala_basis(const ToroidalContext& ctx, long j, const std::vector<long>& s, EalaKind kind,
                           size_t a, size_t b, const Rational& level);

struct EalaTerm {
    EalaKind kind;
    long j;
    std::vector<long> s;
    size_t a, b;
    CycScalar coeff;
};

// Writes a divergence-free derivation part as a combination of eala_basis elements plus
// d_0..d_N; the returned remainder holds the loop and K parts left over.
struct EalaDecomposition {
    std::vector<EalaTerm> spans;
    std::vector<CycScalar> degree_zero; // coefficients of d_0..d_N
    ToroidalElement remainder;
};
EalaDecomposition eala_decompose(const ToroidalContext& ctx, const ToroidalElement& x, const Rational& level);

// Random valid element with degrees in the box [-box, box] (scaled by the lattice orders
// for K and D terms); used by the property sweeps.
ToroidalElement random_element(const ToroidalContext& ctx, std::mt19937_64& rng, int box, int terms = 2);

std::string describe(const ToroidalContext& ctx, const ToroidalElement& x);

} // namespace toroidalg
