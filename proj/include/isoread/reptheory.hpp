#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isoread/automorphism.hpp"
#include "isoread/matrix.hpp"

namespace isoread {

struct ReynoldsResult {
    Mat p_avg;
    bool subgroup_only = false;  // set when the input set was capped
};

// p_avg = (1/|H|) sum_h rho(h)
ReynoldsResult reynolds(const AutomorphismSet& aut);

// p = (degree/|H|) sum_h chi(h) rho(h); chi aligned with aut.perms.
// Refuses capped sets: character sums only make sense over a full group.
Mat character_projector(const AutomorphismSet& aut, const std::vector<double>& chi,
                        int degree);

struct Character {
    std::string name;
    int degree;
    std::vector<double> values;  // values[k] = chi(aut.perms[k])
};

struct CharacterTable {
    AutomorphismSet group;
    std::vector<Character> characters;
};

// The dihedral table for Aut(C6) in the standard hexagon labeling: four
// degree-1 characters indexed by signs on (rotation, reflection), and two
// degree-2 characters 2cos(pi j k / 3) on rotations, 0 on reflections.
CharacterTable d6_character_table(const AutomorphismSet& aut);

Character trivial_character(const AutomorphismSet& aut);

// Random-vector checks that p_avg projects onto exactly the fixed subspace.
bool verify_fixed_subspace(const Mat& p_avg, const AutomorphismSet& aut,
                           uint64_t seed = 0);

// true iff every block projector is absorbed by exactly one canonical
// projector: p_i * P == P within 1e-8
bool verify_refinement(const std::vector<Mat>& blocks,
                       const std::vector<Mat>& canonical);

}  // namespace isoread
