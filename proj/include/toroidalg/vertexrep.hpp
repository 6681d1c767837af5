#pragma once

#include "toroidalg/affroot.hpp"
#include "toroidalg/glvirmod.hpp"
#include "toroidalg/pbw.hpp"
#include "toroidalg/toroidal.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace toroidalg {

// Modes are written in energy convention throughout: for a field F of conformal weight h,
// F{n} is the coefficient of z^{-n-h}, and F{n} lowers the energy by n.

// ---- Fock space C[q^{+-1}] (x) C[u_pj, v_pj] ----

// variable code: (j << 16) | (p << 1) | is_v, p 0-based
uint32_t fock_var(int p, long j, bool is_v);
using FockMono = std::vector<std::pair<uint32_t, int>>; // sorted by code, positive exponents

struct FockKey {
    std::vector<long> q;
    FockMono mono;

    auto operator<=>(const FockKey&) const = default;
};

using FockVec = std::map<FockKey, CycScalar>;

long fock_degree(const FockMono& m);
FockMono fock_times(FockMono m, uint32_t var, int power = 1);
std::string fock_str(const FockKey& k);

enum class FockField { K0, Ka, Da, OmegaHyp };

// K0 uses r and ignores a; Ka, Da use a in 1..N; OmegaHyp ignores both.
FockVec fock_mode(FockField f, size_t a, const std::vector<long>& r, long n, const FockKey& key);
// every Fock monomial in N pairs of variables with degree <= depth
std::vector<FockMono> fock_basis(size_t N, long depth);

// ---- the twisted affine algebra g^(sigma_0) in the adapted basis ----

class TwistedAffine : public ModeAlgebra {
public:
    explicit TwistedAffine(const ToroidalContext& ctx);

    size_t basis_size() const override { return algebra_.dim(); }
    size_t central_count() const override { return 1; }
    long denominator() const override { return m0_; }
    bool admissible(const ModeKey& k) const override;
    ModeSum bracket(const ModeKey& a, const ModeKey& b) const override;
    std::string label(const ModeKey& k) const override;

    int coset0(size_t b) const { return coset0_[b]; }

private:
    StructLie algebra_;
    long m0_;
    std::vector<int> coset0_;
};

// ---- assembled representation ----

enum class Assembly { Toroidal, Eala };
const char* assembly_name(Assembly a);

struct RepConfig {
    Assembly assembly = Assembly::Toroidal;
    Rational level = 1;
    long depth = 3;
    GlVirHighestWeight glvir_hw;
    ThinShape shape = ThinShape::TwoCopies;
};

struct StateKey {
    FockKey fock;
    uint32_t w = 0; // basis index in the W factor
    uint32_t l = 0; // basis index in the glVir / slVir factor

    auto operator<=>(const StateKey&) const = default;
};

using State = std::map<StateKey, CycScalar>;

void add_to(State& s, const StateKey& k, const CycScalar& c);
void axpy(State& y, const CycScalar& s, const State& x);

class Representation {
public:
    Representation(const ToroidalContext& ctx, const RepConfig& cfg);

    const ToroidalContext& context() const { return ctx_; }
    const RepConfig& config() const { return cfg_; }
    const InducedModule& w_module() const { return *W_; }
    const InducedModule& v_module() const { return *V_.module; }
    const GlVirAlgebra& v_algebra() const { return *V_.algebra; }
    const TwistedAffine& w_algebra() const { return *walg_; }
    const GlVirCharges& charges() const { return V_.charges; }
    long m0() const { return m0_; }
    size_t N() const { return N_; }

    // energy in units of 1/m0
    long energy(const StateKey& k) const;
    // coset tag of a W basis vector in Z^N / Gamma
    std::vector<long> w_tag(size_t w) const;
    bool in_module(const StateKey& k) const;
    StateKey vacuum(const std::vector<long>& q) const;

    // twisted affine field mode of Y_W(x(-1)1, z) K0(r, z); n in units of 1/m0
    State twisted_affine_mode(size_t basis, const std::vector<long>& r, long n, const StateKey& k) const;
    // twisted Sugawara L_W(n) on the W factor, n an integer
    ModVec twisted_sugawara_mode(long n, size_t w) const;
    const CycScalar& sugawara_scalar() const { return sugawara_scalar_; }

    State represent(const ToroidalElement& x, const StateKey& k) const;
    State represent(const ToroidalElement& x, const State& v) const;

private:
    struct Atom {
        int kind;
        long j; // scaled for loop terms, integer otherwise
        std::vector<long> r;
        size_t a, b;
        auto operator<=>(const Atom&) const = default;
    };

    ToroidalContext ctx_;
    RepConfig cfg_;
    long m0_;
    size_t N_;
    std::shared_ptr<const TwistedAffine> walg_;
    std::shared_ptr<const InducedModule> W_;
    GlVirModule V_;
    // twisted Sugawara data: pairs (i, k, G^{-1}_{ik}), the alpha-weighted bracket, the scalar
    std::vector<std::tuple<int, int, CycScalar>> dual_pairs_;
    Vec sugawara_bracket_;
    CycScalar sugawara_scalar_;
    CycScalar sugawara_prefactor_;
    std::vector<Vec> psi1_coords_; // psi1(E_pl) in the V basis, index p*N + l

    mutable std::map<std::pair<long, size_t>, ModVec> sugawara_cache_;
    mutable std::map<std::pair<Atom, StateKey>, State> atom_cache_;

    const State& atom(const Atom& t, const StateKey& k) const;
    State compute_atom(const Atom& t, const StateKey& k) const;
    void apply_atom(const Atom& t, const StateKey& k, const CycScalar& c, State& out) const;

    // building blocks; all accumulate c * (operator) k into out
    void k0_mode(const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c, State& out) const;
    void ka_k0(size_t a, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c, State& out,
               bool derivative) const;
    void da_k0(size_t a, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c, State& out) const;
    void v_k0(const Vec& u, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c, State& out) const;
    void v_ka_k0(const Vec& u, size_t a, const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c,
                 State& out) const;
    void virasoro_k0(const std::vector<long>& r, long n, const StateKey& k, const CycScalar& c, State& out) const;
    void energy_zero_mode(const StateKey& k, const CycScalar& c, State& out) const;
    Vec e_coords(size_t p, size_t l) const; // E_pl (gl) or psi1(E_pl) (sl) in the V basis
};

// ---- verification ----

struct SampleElement {
    std::string family;
    ToroidalElement element;
    long reach = 0; // |t_0 exponent| in units of 1/m0
};

std::vector<SampleElement> sample_elements(const Representation& rep, uint64_t seed, size_t per_family = 3);
// basis vectors of the assembled module with q in the given list and energy <= max_energy
std::vector<StateKey> probe_vectors(const Representation& rep, const std::vector<std::vector<long>>& qs,
                                    long max_energy);

struct RelationCount {
    size_t checks = 0;
    size_t failures = 0;
};

struct RepReport {
    std::map<std::string, RelationCount> relations;
    size_t pairs = 0;
    size_t checks = 0;
    size_t failures = 0;
    size_t coset_violations = 0;
    std::string first_failure;
    bool ok() const { return failures == 0 && coset_violations == 0 && checks > 0; }
};

RepReport check_commutators(const Representation& rep, const std::vector<SampleElement>& sample,
                            const std::vector<std::vector<long>>& qs);

struct ThinAssembly {
    ThinShape shape;
    std::map<std::vector<long>, size_t> component_dims; // tag -> dimension at the probed depth
    size_t generator_checks = 0;
    size_t violations = 0;
    size_t phi_checks = 0;
    size_t phi_failures = 0;
    std::string witness;
    bool ok() const { return violations == 0 && phi_failures == 0; }
};

// covering property L_g W_h in W_{g+h} on all W basis vectors of energy <= max_energy
ThinAssembly assemble_thin_module(const Representation& rep, ThinShape shape, long max_energy);

struct ProxyReport {
    size_t fock_monomials = 0;
    bool heisenberg_connected = false;
    std::map<std::string, bool> closed; // operator family -> maps the orbit into the module
    bool ok() const;
};

ProxyReport irreducibility_proxies(const Representation& rep, long max_energy);

} // namespace toroidalg
