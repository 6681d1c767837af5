#pragma once

#include "toroidalg/linalg.hpp"
#include "toroidalg/pbw.hpp"

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace toroidalg {

enum class GlVirKind { L, U, CSl, CHeis, CVir, CVH };

// L(mode), E_{row,col}(mode), or one of the four central elements (mode 0)
struct GlVirGen {
    GlVirKind kind = GlVirKind::L;
    int row = 0, col = 0; // 0-based, U only
    long mode = 0;

    auto operator<=>(const GlVirGen&) const = default;

    static GlVirGen L(long n) { return {GlVirKind::L, 0, 0, n}; }
    static GlVirGen E(int i, int j, long n) { return {GlVirKind::U, i, j, n}; }
    static GlVirGen central(GlVirKind k) { return {k, 0, 0, 0}; }
};

using GlVirSum = std::map<GlVirGen, CycScalar>;

std::string glvir_label(const GlVirGen& g);
GlVirSum glvir_bracket(int N, const GlVirGen& x, const GlVirGen& y);
std::string glvir_sum_str(const GlVirSum& s);

// charges in the order C_slN, C_Heis, C_Vir, C_VH
struct GlVirCharges {
    Rational sl, heis, vir, vh;
};

// central character for the full toroidal assembly
GlVirCharges toroidal_charges(int N, const Rational& level, const Rational& mu, const Rational& nu,
                              long dim_g, const Rational& dual_coxeter);
// central character for the EALA assembly (slVir: C_Heis and C_VH absent)
GlVirCharges eala_charges(int N, const Rational& level, const Rational& mu, long dim_g,
                          const Rational& dual_coxeter);

// Mode algebra of glVir (sl = false) or slVir (sl = true).  Basis 0 is L; the rest are
// the matrices returned by matrix(b).  For gl_N these are E_ij in row-major order; for
// sl_N the off-diagonal E_ij followed by H_i = E_ii - E_{i+1,i+1}.
class GlVirAlgebra : public ModeAlgebra {
public:
    GlVirAlgebra(int N, bool sl);

    int N() const { return N_; }
    bool sl() const { return sl_; }
    size_t basis_size() const override { return 1 + mats_.size(); }
    size_t central_count() const override { return 4; }
    bool admissible(const ModeKey&) const override { return true; }
    ModeSum bracket(const ModeKey& a, const ModeKey& b) const override;
    std::string label(const ModeKey& k) const override;

    const Mat& matrix(int b) const { return mats_.at(b - 1); }
    // coordinates of a matrix in the basis (entry 0 unused); throws if not in the span
    Vec coords(const Mat& m) const;
    // basis index of E_ij; gl only
    int e_index(int i, int j) const;

private:
    int N_;
    bool sl_;
    std::vector<Mat> mats_;
    std::vector<std::vector<Vec>> comm_;       // [u_a, u_b] in coordinates
    std::vector<std::vector<CycScalar>> sl_form_; // Tr(psi1(u_a) psi1(u_b))
    std::vector<CycScalar> psi2_;
};

struct GlVirHighestWeight {
    Rational h = 0; // L(0)
    Rational a = 0; // common eigenvalue of every E_ii(0); ignored for slVir
};

// Verma-type module truncated at mode degree `depth`
struct GlVirModule {
    std::shared_ptr<const GlVirAlgebra> algebra;
    GlVirCharges charges;
    GlVirHighestWeight hw;
    std::shared_ptr<const InducedModule> module;
};

GlVirModule build_hw_module(int N, bool sl, const GlVirHighestWeight& hw, const GlVirCharges& charges, long depth);

} // namespace toroidalg
