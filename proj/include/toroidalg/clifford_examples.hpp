#pragma once

#include "toroidalg/liestruct.hpp"

#include <string>
#include <vector>

namespace toroidalg {

// One of the two packaged nullity-2 Clifford examples: the Jordan torus
// data, the multiloop algebra so(U), and the Chevalley data used for untwisting.
struct CliffordExample {
    std::string name;
    int m = 2;                          // number of torus variables
    std::vector<std::vector<int>> cosets; // S-bar, zero coset first
    StructLie algebra;
    std::vector<std::vector<int>> signs; // one sign vector per torus variable
    std::vector<LieAut> autos;

    // Chevalley generators of the finite algebra and its Cartan matrix
    std::vector<Vec> h, e, f;
    std::vector<std::vector<int>> cartan;
    // sigma_0 = exp(2 pi i ad(grading_element) / grading_denominator)
    Vec grading_element;
    int grading_denominator = 1;

    // affine data: marks, diagram automorphism, and the Weyl word r_{w[0]} r_{w[1]} ...
    std::vector<int> marks;
    std::vector<int> diagram_aut;
    std::vector<int> printed_word;
};

std::vector<std::string> clifford_index_set(const std::vector<std::vector<int>>& cosets);
std::vector<std::vector<int>> clifford_signs(const std::vector<std::vector<int>>& cosets, int m);
std::string coset_label(const std::vector<int>& c);

CliffordExample baby_tkk();
CliffordExample full_tkk();
CliffordExample clifford_example(const std::string& name);

} // namespace toroidalg
