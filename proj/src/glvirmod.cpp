#include "toroidalg/glvirmod.hpp"

#include <sstream>
#include <stdexcept>

namespace toroidalg {

namespace {

Mat unit_matrix(int N, int i, int j)
{
    Mat m = zero_mat(N, N);
    m[i][j] = 1;
    return m;
}

CycScalar trace(const Mat& m)
{
    CycScalar t;
    for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

Mat mat_sub(const Mat& a, const Mat& b)
{
    Mat c = a;
    for (size_t i = 0; i < a.size(); ++i) c[i] = sub(a[i], b[i]);
    return c;
}

// psi_1(u) = u - Tr(u)/N I
Mat psi1(const Mat& u)
{
    Mat p = u;
    CycScalar shift = trace(u) / CycScalar(static_cast<long>(u.size()));
    for (size_t i = 0; i < u.size(); ++i) p[i][i] -= shift;
    return p;
}

const char* central_name(GlVirKind k)
{
    switch (k) {
    case GlVirKind::CSl: return "C_sl";
    case GlVirKind::CHeis: return "C_Heis";
    case GlVirKind::CVir: return "C_Vir";
    case GlVirKind::CVH: return "C_VH";
    default: return "?";
    }
}

constexpr GlVirKind kCentralOrder[4] = {GlVirKind::CSl, GlVirKind::CHeis, GlVirKind::CVir, GlVirKind::CVH};
enum { kSl = 0, kHeis = 1, kVir = 2, kVH = 3 };

} // namespace

GlVirAlgebra::GlVirAlgebra(int N, bool sl) : N_(N), sl_(sl)
{
    if (N < 1) throw std::invalid_argument("GlVirAlgebra: N must be positive");
    if (!sl) {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) mats_.push_back(unit_matrix(N, i, j));
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (i != j) mats_.push_back(unit_matrix(N, i, j));
        for (int i = 0; i + 1 < N; ++i) mats_.push_back(mat_sub(unit_matrix(N, i, i), unit_matrix(N, i + 1, i + 1)));
    }
    const size_t n = mats_.size();
    comm_.assign(n, std::vector<Vec>(n));
    sl_form_.assign(n, std::vector<CycScalar>(n));
    psi2_.resize(n);
    for (size_t a = 0; a < n; ++a) {
        psi2_[a] = trace(mats_[a]) / CycScalar(N);
        for (size_t b = 0; b < n; ++b) {
            Mat c = mat_sub(matmul(mats_[a], mats_[b]), matmul(mats_[b], mats_[a]));
            comm_[a][b] = coords(c);
            sl_form_[a][b] = trace(matmul(psi1(mats_[a]), psi1(mats_[b])));
        }
    }
}

Vec GlVirAlgebra::coords(const Mat& m) const
{
    Vec out(1 + mats_.size());
    if (!sl_) {
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) out[1 + i * N_ + j] = m[i][j];
        return out;
    }
    if (!trace(m).is_zero()) throw std::domain_error("GlVirAlgebra: matrix is not traceless");
    size_t k = 1;
    for (int i = 0; i < N_; ++i)
        for (int j = 0; j < N_; ++j)
            if (i != j) out[k++] = m[i][j];
    // diag = sum c_i (e_i - e_{i+1})  =>  c_i = d_1 + ... + d_i
    CycScalar run;
    for (int i = 0; i + 1 < N_; ++i) {
        run += m[i][i];
        out[k++] = run;
    }
    return out;
}

int GlVirAlgebra::e_index(int i, int j) const
{
    if (sl_) throw std::logic_error("GlVirAlgebra: e_index on slVir");
    return 1 + i * N_ + j;
}

ModeSum GlVirAlgebra::bracket(const ModeKey& x, const ModeKey& y) const
{
    ModeSum out;
    out.central.resize(4);
    const long n = x.mode, m = y.mode;
    const bool zero_sum = n + m == 0;
    if (x.basis == 0 && y.basis == 0) {
        if (n != m) out.terms.push_back({{n + m, 0}, CycScalar(n - m)});
        if (zero_sum) out.central[kVir] = CycScalar(n * n * n - n, 12);
        return out;
    }
    if (x.basis == 0) {
        if (m) out.terms.push_back({{n + m, y.basis}, CycScalar(-m)});
        if (zero_sum) out.central[kVH] = -CycScalar(n * n + n) * psi2_[y.basis - 1];
        return out;
    }
    if (y.basis == 0) {
        if (n) out.terms.push_back({{n + m, x.basis}, CycScalar(n)});
        if (zero_sum) out.central[kVH] = CycScalar(m * m + m) * psi2_[x.basis - 1];
        return out;
    }
    const Vec& c = comm_[x.basis - 1][y.basis - 1];
    for (size_t k = 1; k < c.size(); ++k)
        if (!c[k].is_zero()) out.terms.push_back({{n + m, static_cast<int>(k)}, c[k]});
    if (zero_sum && n) {
        out.central[kSl] = CycScalar(n) * sl_form_[x.basis - 1][y.basis - 1];
        out.central[kHeis] = CycScalar(n) * psi2_[x.basis - 1] * psi2_[y.basis - 1];
    }
    return out;
}

std::string GlVirAlgebra::label(const ModeKey& k) const
{
    std::ostringstream os;
    if (k.basis == 0) {
        os << "L(" << k.mode << ")";
        return os.str();
    }
    const size_t b = k.basis - 1;
    const size_t off = static_cast<size_t>(N_ * (N_ - 1));
    if (!sl_) {
        os << "E" << (b / N_ + 1) << (b % N_ + 1);
    } else if (b < off) {
        size_t r = b / (N_ - 1), c = b % (N_ - 1);
        if (c >= r) ++c;
        os << "E" << (r + 1) << (c + 1);
    } else {
        os << "H" << (b - off + 1);
    }
    os << "(" << k.mode << ")";
    return os.str();
}

std::string glvir_label(const GlVirGen& g)
{
    std::ostringstream os;
    switch (g.kind) {
    case GlVirKind::L: os << "L(" << g.mode << ")"; break;
    case GlVirKind::U: os << "E" << g.row + 1 << g.col + 1 << "(" << g.mode << ")"; break;
    default: os << central_name(g.kind);
    }
    return os.str();
}

GlVirSum glvir_bracket(int N, const GlVirGen& x, const GlVirGen& y)
{
    GlVirSum out;
    auto is_central = [](const GlVirGen& g) { return g.kind != GlVirKind::L && g.kind != GlVirKind::U; };
    if (is_central(x) || is_central(y)) return out;
    GlVirAlgebra A(N, false);
    auto key = [&](const GlVirGen& g) {
        return ModeKey{g.mode, g.kind == GlVirKind::L ? 0 : A.e_index(g.row, g.col)};
    };
    ModeSum s = A.bracket(key(x), key(y));
    for (const auto& [k, c] : s.terms) {
        GlVirGen g = k.basis == 0 ? GlVirGen::L(k.mode) : GlVirGen::E((k.basis - 1) / N, (k.basis - 1) % N, k.mode);
        out[g] += c;
        if (out[g].is_zero()) out.erase(g);
    }
    for (int z = 0; z < 4; ++z)
        if (!s.central[z].is_zero()) out[GlVirGen::central(kCentralOrder[z])] = s.central[z];
    return out;
}

std::string glvir_sum_str(const GlVirSum& s)
{
    if (s.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : s) {
        if (!first) os << " + ";
        first = false;
        os << c << "*" << glvir_label(g);
    }
    return os.str();
}

GlVirCharges toroidal_charges(int N, const Rational& level, const Rational& mu, const Rational& nu, long dim_g,
                              const Rational& dual_coxeter)
{
    if (level + dual_coxeter == 0) throw std::domain_error("toroidal_charges: critical level");
    const Rational n(N), c = level;
    GlVirCharges g;
    g.sl = 1 - mu * c;
    g.heis = n * (1 - mu * c) - n * n * nu * c;
    g.vh = n * (Rational(1, 2) - nu * c);
    g.vir = 12 * c * (mu + nu) - 2 * n - c * Rational(dim_g) / (c + dual_coxeter);
    return g;
}

GlVirCharges eala_charges(int N, const Rational& level, const Rational& mu, long dim_g, const Rational& dual_coxeter)
{
    if (level + dual_coxeter == 0) throw std::domain_error("eala_charges: critical level");
    const Rational n(N), c = level;
    GlVirCharges g;
    g.sl = 1 - mu * c;
    g.vir = 12 * (1 - 1 / n) + 12 * mu * c * (1 + 1 / n) - 2 * n - c * Rational(dim_g) / (c + dual_coxeter);
    g.heis = 0;
    g.vh = 0;
    return g;
}

GlVirModule build_hw_module(int N, bool sl, const GlVirHighestWeight& hw, const GlVirCharges& charges, long depth)
{
    auto alg = std::make_shared<const GlVirAlgebra>(N, sl);
    std::vector<CycScalar> central = {charges.sl, charges.heis, charges.vir, charges.vh};
    auto zero = [alg, hw](int b) -> CycScalar {
        if (b == 0) return hw.h;
        return CycScalar(hw.a) * trace(alg->matrix(b));
    };
    GlVirModule out{alg, charges, hw, std::make_shared<const InducedModule>(alg, central, zero, depth)};
    return out;
}

} // namespace toroidalg
