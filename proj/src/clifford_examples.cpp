#include "toroidalg/clifford_examples.hpp"

#include <stdexcept>
#include <tuple>

namespace toroidalg {

std::string coset_label(const std::vector<int>& c)
{
    std::string s = "(";
    for (size_t k = 0; k < c.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(c[k]);
    }
    return s + ")";
}

std::vector<std::string> clifford_index_set(const std::vector<std::vector<int>>& cosets)
{
    std::vector<std::string> idx = {"1", "2", "3"};
    for (const auto& c : cosets) {
        bool zero = true;
        for (int x : c) zero = zero && (x == 0);
        if (!zero) idx.push_back(coset_label(c));
    }
    return idx;
}

std::vector<std::vector<int>> clifford_signs(const std::vector<std::vector<int>>& cosets, int m)
{
    // sigma_p(v_i) = i_p v_i; i_p = 1 on {1,2,3} and (-1)^{mu_p} on a coset mu
    std::vector<std::vector<int>> out(m);
    for (int p = 0; p < m; ++p) {
        out[p] = {1, 1, 1};
        for (const auto& c : cosets) {
            bool zero = true;
            for (int x : c) zero = zero && (x == 0);
            if (!zero) out[p].push_back(c[p] % 2 ? -1 : 1);
        }
    }
    return out;
}

namespace {

using Entry = std::tuple<int, int, CycScalar>;

Vec from_entries(const StructLie& L, const std::vector<Entry>& entries, const CycScalar& factor = 1)
{
    const size_t n = L.index_labels.size();
    Mat m = zero_mat(n, n);
    for (const auto& [r, c, v] : entries) m[r - 1][c - 1] = factor * v;
    return so_from_matrix(L, m);
}

CliffordExample make_base(const std::string& name, std::vector<std::vector<int>> cosets)
{
    CliffordExample ex;
    ex.name = name;
    ex.m = 2;
    ex.cosets = std::move(cosets);
    ex.algebra = build_so(clifford_index_set(ex.cosets));
    ex.signs = clifford_signs(ex.cosets, ex.m);
    for (const auto& s : ex.signs) ex.autos.push_back(conj_automorphism(ex.algebra, s));
    return ex;
}

} // namespace

CliffordExample baby_tkk()
{
    CliffordExample ex = make_base("baby-tkk", {{0, 0}, {0, 1}, {1, 0}});
    const StructLie& L = ex.algebra;
    const CycScalar i = CycScalar::i(), half(1, 2);

    ex.h = {from_entries(L, {{3, 4, 2 * i}, {4, 3, -2 * i}}),
            from_entries(L, {{1, 2, i}, {2, 1, -i}, {3, 4, -i}, {4, 3, i}})};
    ex.e = {from_entries(L, {{3, 5, -1}, {4, 5, i}, {5, 3, 1}, {5, 4, -i}}),
            from_entries(L, {{1, 3, 1}, {1, 4, i}, {2, 3, -i}, {2, 4, 1},
                             {3, 1, -1}, {3, 2, i}, {4, 1, -i}, {4, 2, -1}}, half)};
    ex.f = {from_entries(L, {{3, 5, 1}, {4, 5, i}, {5, 3, -1}, {5, 4, -i}}),
            from_entries(L, {{1, 3, -1}, {1, 4, i}, {2, 3, -i}, {2, 4, -1},
                             {3, 1, 1}, {3, 2, i}, {4, 1, -i}, {4, 2, 1}}, half)};
    ex.cartan = {{2, -2}, {-1, 2}};
    ex.grading_element = ex.h[1];
    ex.grading_denominator = 2;
    ex.marks = {1, 2, 1};
    ex.diagram_aut = {2, 1, 0};
    ex.printed_word = {1, 2, 0, 1};
    return ex;
}

CliffordExample full_tkk()
{
    CliffordExample ex = make_base("full-tkk", {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const StructLie& L = ex.algebra;
    const CycScalar i = CycScalar::i(), half(1, 2);

    ex.h = {from_entries(L, {{3, 4, i}, {4, 3, -i}, {5, 6, i}, {6, 5, -i}}),
            from_entries(L, {{1, 2, i}, {2, 1, -i}, {3, 4, -i}, {4, 3, i}}),
            from_entries(L, {{3, 4, i}, {4, 3, -i}, {5, 6, -i}, {6, 5, i}})};
    ex.e = {from_entries(L, {{3, 5, 1}, {3, 6, -i}, {4, 5, -i}, {4, 6, -1},
                             {5, 3, -1}, {5, 4, i}, {6, 3, i}, {6, 4, 1}}, half),
            from_entries(L, {{1, 3, 1}, {1, 4, i}, {2, 3, -i}, {2, 4, 1},
                             {3, 1, -1}, {3, 2, i}, {4, 1, -i}, {4, 2, -1}}, half),
            from_entries(L, {{3, 5, 1}, {3, 6, i}, {4, 5, -i}, {4, 6, 1},
                             {5, 3, -1}, {5, 4, i}, {6, 3, -i}, {6, 4, -1}}, half)};
    ex.f = {from_entries(L, {{3, 5, -1}, {3, 6, -i}, {4, 5, -i}, {4, 6, 1},
                             {5, 3, 1}, {5, 4, i}, {6, 3, i}, {6, 4, -1}}, half),
            from_entries(L, {{1, 3, -1}, {1, 4, i}, {2, 3, -i}, {2, 4, -1},
                             {3, 1, 1}, {3, 2, i}, {4, 1, -i}, {4, 2, 1}}, half),
            from_entries(L, {{3, 5, -1}, {3, 6, i}, {4, 5, -i}, {4, 6, -1},
                             {5, 3, 1}, {5, 4, i}, {6, 3, -i}, {6, 4, 1}}, half)};
    ex.cartan = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    ex.grading_element = sub(ex.h[0], ex.h[2]);
    ex.grading_denominator = 4;
    ex.marks = {1, 1, 1, 1};
    ex.diagram_aut = {2, 3, 0, 1};
    ex.printed_word = {3, 0, 2, 1};
    return ex;
}

CliffordExample clifford_example(const std::string& name)
{
    if (name == "baby-tkk") return baby_tkk();
    if (name == "full-tkk") return full_tkk();
    throw std::invalid_argument("unknown example '" + name + "' (expected baby-tkk or full-tkk)");
}

} // namespace toroidalg
