#include "toroidalg/pbw.hpp"

#include <sstream>

namespace toroidalg {

void add_to(ModVec& v, size_t i, const CycScalar& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = v.try_emplace(i, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

void axpy(ModVec& y, const CycScalar& s, const ModVec& x)
{
    if (s.is_zero()) return;
    for (const auto& [i, c] : x) add_to(y, i, s * c);
}

InducedModule::InducedModule(std::shared_ptr<const ModeAlgebra> algebra, std::vector<CycScalar> central_values,
                             std::function<CycScalar(int)> zero_mode, long depth)
    : alg_(std::move(algebra)), central_(std::move(central_values)), zero_mode_(std::move(zero_mode)), depth_(depth)
{
    if (depth < 0) throw std::invalid_argument("InducedModule: negative depth");
    if (central_.size() != alg_->central_count())
        throw std::invalid_argument("InducedModule: wrong number of central values");
    std::vector<ModeKey> creators;
    for (long m = -depth; m < 0; ++m)
        for (size_t b = 0; b < alg_->basis_size(); ++b) {
            ModeKey k{m, static_cast<int>(b)};
            if (alg_->admissible(k)) creators.push_back(k);
        }
    Monomial cur;
    std::function<void(size_t, long)> grow = [&](size_t from, long used) {
        index_[cur] = basis_.size();
        basis_.push_back(cur);
        degree_.push_back(used);
        for (size_t c = from; c < creators.size(); ++c) {
            if (used - creators[c].mode > depth) continue;
            cur.push_back(creators[c]);
            grow(c, used - creators[c].mode);
            cur.pop_back();
        }
    };
    grow(0, 0);
}

std::optional<size_t> InducedModule::find(const Monomial& m) const
{
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const ModVec& InducedModule::act(const ModeKey& g, size_t i) const
{
    auto key = std::make_pair(g, i);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ModVec v = compute(g, i);
    return cache_.emplace(key, std::move(v)).first->second;
}

ModVec InducedModule::act(const ModeKey& g, const ModVec& v) const
{
    ModVec out;
    for (const auto& [i, c] : v) axpy(out, c, act(g, i));
    return out;
}

ModVec InducedModule::compute(const ModeKey& g, size_t i) const
{
    if (!alg_->admissible(g)) throw std::invalid_argument("InducedModule: inadmissible mode " + alg_->label(g));
    const long d = degree_[i] - g.mode;
    if (d > depth_) throw TruncationError("InducedModule: " + alg_->label(g) + " leaves the depth window");
    ModVec out;
    if (d < 0) return out;
    const Monomial& m = basis_[i];
    if (m.empty() && g.mode >= 0) {
        if (g.mode == 0) add_to(out, i, zero_mode_(g.basis));
        return out;
    }
    if (g.mode < 0 && (m.empty() || g <= m.front())) {
        Monomial longer;
        longer.reserve(m.size() + 1);
        longer.push_back(g);
        longer.insert(longer.end(), m.begin(), m.end());
        out[index_.at(longer)] = 1;
        return out;
    }
    const ModeKey x1 = m.front();
    const size_t rest = index_.at(Monomial(m.begin() + 1, m.end()));
    for (const auto& [k, c] : act(g, rest)) axpy(out, c, act(x1, k));
    ModeSum br = alg_->bracket(g, x1);
    for (const auto& [key, c] : br.terms) axpy(out, c, act(key, rest));
    CycScalar central;
    for (size_t z = 0; z < br.central.size(); ++z) central += br.central[z] * central_[z];
    add_to(out, rest, central);
    return out;
}

std::string InducedModule::describe(size_t i) const
{
    const Monomial& m = basis_[i];
    if (m.empty()) return "v";
    std::ostringstream os;
    for (const ModeKey& k : m) os << alg_->label(k) << ' ';
    os << 'v';
    return os.str();
}

CommutatorReport verify_commutators(const InducedModule& M, const std::vector<ModeKey>& gens)
{
    CommutatorReport rep;
    const ModeAlgebra& A = M.algebra();
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a + 1; b < gens.size(); ++b) {
            const ModeKey &g = gens[a], &h = gens[b];
            ++rep.pairs;
            ModeSum br = A.bracket(g, h);
            CycScalar central;
            for (size_t z = 0; z < br.central.size(); ++z) central += br.central[z] * M.central_values()[z];
            for (size_t i = 0; i < M.dim(); ++i) {
                const long d = M.degree(i);
                if (d - g.mode > M.depth() || d - h.mode > M.depth() || d - g.mode - h.mode > M.depth()) continue;
                ++rep.checks;
                ModVec lhs = M.act(g, M.act(h, i));
                axpy(lhs, -1, M.act(h, M.act(g, i)));
                ModVec rhs;
                add_to(rhs, i, central);
                for (const auto& [key, c] : br.terms) axpy(rhs, c, M.act(key, i));
                if (lhs != rhs) {
                    if (!rep.failures)
                        rep.first_failure = "[" + A.label(g) + ", " + A.label(h) + "] on " + M.describe(i);
                    ++rep.failures;
                }
            }
        }
    return rep;
}

} // namespace toroidalg
