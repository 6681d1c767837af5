#pragma once

#include "toroidalg/cycfield.hpp"

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toroidalg {

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// x(mode / denominator) for the basis element x = basis
struct ModeKey {
    long mode = 0;
    int basis = 0;

    auto operator<=>(const ModeKey&) const = default;
};

struct ModeSum {
    std::vector<std::pair<ModeKey, CycScalar>> terms;
    std::vector<CycScalar> central; // one coefficient per central generator
};

// A Z-graded (or (1/d)Z-graded) Lie algebra spanned by modes of finitely many basis
// elements plus finitely many central elements.
class ModeAlgebra {
public:
    virtual ~ModeAlgebra() = default;
    virtual size_t basis_size() const = 0;
    virtual size_t central_count() const = 0;
    virtual long denominator() const { return 1; }
    virtual bool admissible(const ModeKey& k) const = 0;
    virtual ModeSum bracket(const ModeKey& a, const ModeKey& b) const = 0;
    virtual std::string label(const ModeKey& k) const = 0;
};

using ModVec = std::map<size_t, CycScalar>;

void add_to(ModVec& v, size_t i, const CycScalar& c);
void axpy(ModVec& y, const CycScalar& s, const ModVec& x);

// Module induced from a one-dimensional character of the non-negative modes,
// truncated at total degree `depth` (in units of 1/denominator).  The basis is the
// set of PBW monomials in negative modes, stored in non-decreasing ModeKey order.
class InducedModule {
public:
    using Monomial = std::vector<ModeKey>;

    InducedModule(std::shared_ptr<const ModeAlgebra> algebra, std::vector<CycScalar> central_values,
                  std::function<CycScalar(int)> zero_mode, long depth);

    const ModeAlgebra& algebra() const { return *alg_; }
    size_t dim() const { return basis_.size(); }
    long depth() const { return depth_; }
    const Monomial& monomial(size_t i) const { return basis_[i]; }
    long degree(size_t i) const { return degree_[i]; }
    std::optional<size_t> find(const Monomial& m) const;
    const std::vector<CycScalar>& central_values() const { return central_; }
    CycScalar zero_mode_value(int basis) const { return zero_mode_(basis); }

    const ModVec& act(const ModeKey& g, size_t i) const;
    ModVec act(const ModeKey& g, const ModVec& v) const;
    std::string describe(size_t i) const;

private:
    std::shared_ptr<const ModeAlgebra> alg_;
    std::vector<CycScalar> central_;
    std::function<CycScalar(int)> zero_mode_;
    long depth_;
    std::vector<Monomial> basis_;
    std::vector<long> degree_;
    std::map<Monomial, size_t> index_;
    mutable std::map<std::pair<ModeKey, size_t>, ModVec> cache_;

    ModVec compute(const ModeKey& g, size_t i) const;
};

struct CommutatorReport {
    size_t pairs = 0;
    size_t checks = 0;
    size_t failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

// g(h v) - h(g v) == [g, h] v for every pair in gens and every basis vector v for which
// all intermediate results stay inside the truncation.
CommutatorReport verify_commutators(const InducedModule& M, const std::vector<ModeKey>& gens);

} // namespace toroidalg
