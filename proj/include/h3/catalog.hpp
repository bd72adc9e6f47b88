#pragma once

#include <string>
#include <vector>

#include "h3/group.hpp"

namespace h3 {

// <a, b | a^m = 1, b^n = a^s, b a b^-1 = a^r>, elements a^i b^j indexed j * m + i.
FiniteGroup metacyclic(size_t m, size_t n, long r, size_t s, std::string name = {});

// N x| Z/n where the generator of Z/n acts by the automorphism phi (phi[x] = image of x).
// Elements (x, j) are indexed j * |N| + x.
FiniteGroup semidirect_cyclic(const FiniteGroup& n_group, const std::vector<Elt>& phi, size_t n, std::string name = {});

// Q8 with elements labelled 1, -1, i, -i, j, -j, k, -k.
FiniteGroup quaternion_group();
FiniteGroup dihedral(size_t n);
// Upper unitriangular 3x3 matrices over Z/p.
FiniteGroup heisenberg(size_t p);
// <x, y, z> of order 32 with [x, y] = c1, [x, z] = c2 central involutions and y, z, x involutions.
FiniteGroup central_square_32();

struct NamedGroup {
    std::string name;
    FiniteGroup group;
};

// One representative of every isomorphism class of order <= max_order (max_order <= 16).
std::vector<NamedGroup> small_groups(size_t max_order);

// Isomorphism invariants (element order statistics, centre, derived subgroup,
// abelianization, ...) as a comparable string.
std::string fingerprint(const FiniteGroup& g);

} // namespace h3
