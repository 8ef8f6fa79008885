#include "hkll/mukai.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

using namespace hkll;

namespace {

LatticePtr k3_ptr() {
    static const LatticePtr l = std::make_shared<const IntegralLattice>(k3_lattice());
    return l;
}

// Independent oracle: the extended rank-24 lattice obtained by adjoining a
// hyperbolic pair (with sign flipped) for the degree-0 and degree-4 slots.
// Embedding v = (v0, v2, v4) as (v2, v0, v4) there reproduces the pairing.
Int extended_pairing(const MukaiVector& v, const MukaiVector& w) {
    static const IntegralLattice ext = [] {
        std::vector<IntegralLattice> parts{k3_lattice(),
                                           IntegralLattice{IntMat{{0, -1}, {-1, 0}}}};
        return direct_sum(parts);
    }();
    const auto embed = [](const MukaiVector& m) {
        IntVec e = m.v2.coords();
        e.push_back(m.v0);
        e.push_back(m.v4);
        return e;
    };
    return ext.pair(embed(v), embed(w));
}

MukaiVector random_mukai(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(-3, 3);
    IntVec c(22);
    for (auto& x : c) x = small(rng);
    return MukaiVector{Int(small(rng)), LatticeVector{k3_ptr(), std::move(c)}, Int(small(rng))};
}

MukaiVector sheaf_class(const Int& r, const Int& s) {
    return MukaiVector{r, LatticeVector{k3_ptr(), IntVec(22, 0)}, s};
}

} // namespace

TEST_CASE("pairing agrees with the rank-24 extension") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const MukaiVector v = random_mukai(rng), w = random_mukai(rng);
        REQUIRE(mukai_pairing(v, w) == extended_pairing(v, w));
        REQUIRE(mukai_pairing(v, w) == mukai_pairing(w, v));
    }
}

TEST_CASE("ideal-sheaf class of two points has a ten-dimensional moduli space") {
    const MukaiVector v = sheaf_class(2, -2);
    REQUIRE(mukai_pairing(v, v) == 8);
    REQUIRE(moduli_dimension(v) == 10);
    REQUIRE_FALSE(is_primitive_mukai(v));
}

TEST_CASE("structure sheaf classes of curves give dimension twice the genus") {
    const auto l = k3_ptr();
    for (int g = 0; g <= 10; ++g) {
        // A genus-g curve class has square 2g - 2; model it inside the first
        // hyperbolic summand as (1, g - 1, 0, ...).
        IntVec c(22, 0);
        c[0] = 1;
        c[1] = g - 1;
        REQUIRE(l->square(c) == genus_to_square(g));
        const MukaiVector v{0, LatticeVector{l, c}, 1};
        REQUIRE(moduli_dimension(v) == 2 * g);
        REQUIRE(is_primitive_mukai(v));
    }
    REQUIRE_THROWS_AS(genus_to_square(-1), std::invalid_argument);
}

TEST_CASE("dimension formula rejects squares below minus two") {
    REQUIRE(moduli_dimension(sheaf_class(1, 1)) == 0); // q = -2, a point
    REQUIRE_THROWS_AS(moduli_dimension(sheaf_class(1, 2)), std::domain_error);
}

TEST_CASE("locally free classes from rank and chern data") {
    const auto l = k3_ptr();
    IntVec c(22, 0);
    c[0] = 1;
    c[1] = 2; // square 4
    const MukaiVector v = mukai_vector_locally_free(2, LatticeVector{l, c}, 3);
    REQUIRE(v.v0 == 2);
    REQUIRE(v.v2.coords() == c);
    REQUIRE(v.v4 == 2 + 4 / 2 - 3); // r + c1^2/2 - c2
    REQUIRE_THROWS_AS(mukai_vector_locally_free(-1, LatticeVector{l, c}, 0),
                      std::invalid_argument);

    // Odd lattices can produce odd squares, which the formula rejects.
    const auto odd = std::make_shared<const IntegralLattice>(IntegralLattice{IntMat{{1}}});
    REQUIRE_THROWS_AS(mukai_vector_locally_free(1, LatticeVector{odd, IntVec{1}}, 0),
                      std::invalid_argument);
}

TEST_CASE("primitivity looks at all five slots together") {
    REQUIRE(is_primitive_mukai(sheaf_class(2, -1)));
    REQUIRE_FALSE(is_primitive_mukai(sheaf_class(2, -4)));
    REQUIRE_THROWS_AS(is_primitive_mukai(sheaf_class(0, 0)), std::invalid_argument);

    IntVec c(22, 0);
    c[5] = 1; // odd entry rescues an even (v0, v4) pair
    REQUIRE(is_primitive_mukai(MukaiVector{2, LatticeVector{k3_ptr(), c}, -4}));
}

TEST_CASE("pairing is linear in each slot") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const MukaiVector a = random_mukai(rng), b = random_mukai(rng), w = random_mukai(rng);
        IntVec sum(22);
        for (std::size_t i = 0; i < 22; ++i) sum[i] = a.v2.coords()[i] + b.v2.coords()[i];
        const MukaiVector ab{a.v0 + b.v0, LatticeVector{k3_ptr(), sum}, a.v4 + b.v4};
        REQUIRE(mukai_pairing(ab, w) == mukai_pairing(a, w) + mukai_pairing(b, w));
    }
}
