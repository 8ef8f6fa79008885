#pragma once

// Mukai vectors (r, c, s) over a fixed lattice for the middle component, the
// Mukai pairing, and moduli-space dimension counts.

#include "hkll/lattice.hpp"

#include <utility>

namespace hkll {

struct MukaiVector {
    Int v0;
    LatticeVector v2;
    Int v4;

    MukaiVector(Int rank_part, LatticeVector middle, Int degree_part)
        : v0(std::move(rank_part)), v2(std::move(middle)), v4(std::move(degree_part)) {}
};

// q(v, w) = -v0*w4 + <v2, w2> - v4*w0. Middle components must share a lattice.
inline Int mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
    return -v.v0 * w.v4 + v.v2.pair(w.v2) - v.v4 * w.v0;
}

// v(E) = (r, c1, r + c1^2/2 - c2) for a locally free sheaf on a K3-type
// surface. Requires even c1 square, which an even ambient lattice guarantees.
inline MukaiVector mukai_vector_locally_free(const Int& rank, LatticeVector c1, const Int& c2) {
    if (rank < 0) throw std::invalid_argument("mukai_vector_locally_free: negative rank");
    const Int sq = c1.square();
    if (sq % 2 != 0)
        throw std::invalid_argument("mukai_vector_locally_free: odd square for c1 (lattice not even)");
    Int v4 = rank + sq / 2 - c2;
    return MukaiVector{rank, std::move(c1), std::move(v4)};
}

// dim M(v) = q(v, v) + 2. Below -2 the moduli space is empty.
inline Int moduli_dimension(const MukaiVector& v) {
    const Int q = mukai_pairing(v, v);
    if (q < -2) throw std::domain_error("moduli_dimension: Mukai square below -2, moduli space empty");
    return q + 2;
}

inline bool is_primitive_mukai(const MukaiVector& v) {
    IntVec all = v.v2.coords();
    all.push_back(v.v0);
    all.push_back(v.v4);
    const Int g = gcd_all(all);
    if (g == 0) throw std::invalid_argument("is_primitive_mukai: zero Mukai vector");
    return g == 1;
}

// Square of a curve class of genus g on a K3 surface: c^2 = 2g - 2.
inline Int genus_to_square(const Int& g) {
    if (g < 0) throw std::invalid_argument("genus_to_square: negative genus");
    return 2 * g - 2;
}

} // namespace hkll
