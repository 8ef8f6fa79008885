#include "hkll/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

using namespace hkll;

namespace {

// Independent determinant oracle: rational Gaussian elimination with
// partial pivoting, nothing shared with the fraction-free routine.
Rat det_rational(const IntMat& g) {
    const std::size_t n = g.size();
    std::vector<RatVec> a(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(g[i][j]);
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rat f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

IntMat random_symmetric(std::mt19937_64& rng, std::size_t n, int bound) {
    IntMat g(n, IntVec(n, 0));
    std::uniform_int_distribution<int> dist(-bound, bound);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = dist(rng);
    return g;
}

// Random unimodular matrix as a short product of elementary shears and swaps.
IntMat random_unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMat p(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int ops = 0; ops < 12; ++ops) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        if (rng() % 4 == 0) {
            std::swap(p[i], p[j]);
        } else {
            const Int c{coef(rng)};
            for (std::size_t k = 0; k < n; ++k) p[i][k] += c * p[j][k];
        }
    }
    return p;
}

IntMat congruence(const IntMat& p, const IntMat& g) {
    const std::size_t n = g.size();
    IntMat pg(n, IntVec(n, 0)), out(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) pg[i][j] += p[k][i] * g[k][j]; // P^T G
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out[i][j] += pg[i][k] * p[k][j]; // (P^T G) P
    return out;
}

IntMat diag(std::vector<int> entries) {
    IntMat g(entries.size(), IntVec(entries.size(), 0));
    for (std::size_t i = 0; i < entries.size(); ++i) g[i][i] = entries[i];
    return g;
}

} // namespace

TEST_CASE("hyperbolic plane invariants") {
    const IntegralLattice u = make_hyperbolic();
    REQUIRE(u.rank() == 2);
    REQUIRE(u.det() == -1);
    REQUIRE(u.is_even());
    REQUIRE(u.signature() == std::pair<int, int>{1, 1});
}

TEST_CASE("e8 invariants in both signs") {
    const IntegralLattice plus = make_e8(+1);
    REQUIRE(plus.rank() == 8);
    REQUIRE(plus.det() == 1);
    REQUIRE(plus.is_even());
    REQUIRE(plus.signature() == std::pair<int, int>{8, 0});

    const IntegralLattice minus = make_e8(-1);
    REQUIRE(minus.det() == 1); // rank 8: negation preserves the determinant
    REQUIRE(minus.is_even());
    REQUIRE(minus.signature() == std::pair<int, int>{0, 8});
}

TEST_CASE("full second-cohomology lattice of a K3 surface") {
    const IntegralLattice k3 = k3_lattice();
    REQUIRE(k3.rank() == 22);
    REQUIRE(k3.det() == -1);
    REQUIRE(k3.is_even());
    REQUIRE(k3.signature() == std::pair<int, int>{3, 19});
}

TEST_CASE("construction rejects malformed gram matrices") {
    REQUIRE_THROWS_AS((IntegralLattice{IntMat{{0, 1}, {1}}}), std::invalid_argument);    // ragged
    REQUIRE_THROWS_AS((IntegralLattice{IntMat{{0, 1}, {2, 0}}}), std::invalid_argument); // asymmetric
    REQUIRE_THROWS_AS((IntegralLattice{IntMat{{1, 1}, {1, 1}}}), std::invalid_argument); // det 0
    REQUIRE_THROWS_AS((IntegralLattice{IntMat{}}), std::invalid_argument);               // empty
}

TEST_CASE("odd lattices are recognized") {
    const IntegralLattice l{diag({1, -1})};
    REQUIRE_FALSE(l.is_even());
    REQUIRE(l.signature() == std::pair<int, int>{1, 1});
    REQUIRE(l.det() == -1);
}

TEST_CASE("determinant matches a rational elimination oracle") {
    std::mt19937_64 rng(101);
    int built = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const IntMat g = random_symmetric(rng, n, 6);
        const Rat oracle = det_rational(g);
        if (oracle == 0) {
            REQUIRE_THROWS_AS(IntegralLattice{g}, std::invalid_argument);
            continue;
        }
        const IntegralLattice l{g};
        REQUIRE(Rat(l.det()) == oracle);
        ++built;
    }
    REQUIRE(built > 100); // the sample is dominated by nondegenerate forms
}

TEST_CASE("signature is a congruence invariant and fills the rank") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        const IntMat g = random_symmetric(rng, n, 5);
        if (det_rational(g) == 0) continue;
        const IntegralLattice l{g};
        const auto [p, q] = l.signature();
        REQUIRE(p >= 0);
        REQUIRE(q >= 0);
        REQUIRE(static_cast<std::size_t>(p + q) == n); // nondegenerate: no zero eigenvalues

        const IntMat t = random_unimodular(rng, n);
        const IntMat h = congruence(t, g);
        if (det_rational(h) == 0) continue; // guards only against oracle bugs
        REQUIRE(IntegralLattice{h}.signature() == l.signature());
    }
}

TEST_CASE("pairing is symmetric and bilinear") {
    std::mt19937_64 rng(303);
    const IntegralLattice l = k3_lattice();
    std::uniform_int_distribution<int> dist(-4, 4);
    const auto rand_vec = [&] {
        IntVec v(22);
        for (auto& x : v) x = dist(rng);
        return v;
    };
    for (int trial = 0; trial < 40; ++trial) {
        const IntVec a = rand_vec(), b = rand_vec(), c = rand_vec();
        REQUIRE(l.pair(a, b) == l.pair(b, a));
        IntVec bc(22);
        for (std::size_t i = 0; i < 22; ++i) bc[i] = b[i] + 3 * c[i];
        REQUIRE(l.pair(a, bc) == l.pair(a, b) + 3 * l.pair(a, c));
    }
    REQUIRE_THROWS_AS(l.pair(IntVec(3, 1), IntVec(22, 0)), std::invalid_argument);
}

TEST_CASE("first isotropic vector in pinned small cases") {
    REQUIRE(find_isotropic(make_hyperbolic(), 1) == IntVec{1, 0});
    REQUIRE(find_isotropic(IntegralLattice{diag({2, -2})}, 1) == IntVec{1, 1});
    REQUIRE(find_isotropic(IntegralLattice{diag({1, 1, 1, -1, -3})}, 2) == IntVec{2, 0, 0, 1, 1});
    REQUIRE_THROWS_AS(find_isotropic(make_hyperbolic(), 0), std::invalid_argument);
}

TEST_CASE("isotropic search returns the first hit in scan order") {
    // Oracle: enumerate the whole box, keep primitive isotropic vectors, and
    // take the lexicographically largest; the scan goes from +bound downward
    // with the first coordinate most significant, so that is the first hit.
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 2;
        const IntMat g = random_symmetric(rng, n, 4);
        if (det_rational(g) == 0) continue;
        const IntegralLattice l{g};
        const Int bound = 2;
        std::vector<IntVec> candidates;
        IntVec v(n, -bound);
        for (;;) {
            bool zero = std::all_of(v.begin(), v.end(), [](const Int& c) { return c == 0; });
            if (!zero && l.square(v) == 0 && gcd_all(v) == 1) candidates.push_back(v);
            std::size_t i = 0;
            while (i < n && v[i] == bound) v[i++] = -bound;
            if (i == n) break;
            ++v[i];
        }
        const auto hit = find_isotropic(l, bound);
        if (candidates.empty()) {
            REQUIRE_FALSE(hit.has_value());
        } else {
            REQUIRE(hit == *std::max_element(candidates.begin(), candidates.end()));
        }
    }
}

TEST_CASE("definite lattices have no isotropic vectors") {
    REQUIRE_FALSE(find_isotropic(make_e8(+1), 1).has_value());
    REQUIRE_FALSE(find_isotropic(make_e8(-1), 1).has_value());
}

TEST_CASE("unimodular sums behave as blocks") {
    const IntegralLattice sum = direct_sum({make_hyperbolic(), make_e8(-1)});
    REQUIRE(sum.rank() == 10);
    REQUIRE(sum.det() == -1);
    REQUIRE(sum.signature() == std::pair<int, int>{1, 9});
    REQUIRE(sum.gram()[0][1] == 1);
    REQUIRE(sum.gram()[0][2] == 0); // off-block entries vanish
    REQUIRE_THROWS_AS(direct_sum({}), std::invalid_argument);
}

TEST_CASE("lattice vectors compute squares, pairs and primitivity") {
    const auto l = std::make_shared<const IntegralLattice>(make_hyperbolic());
    const LatticeVector a{l, IntVec{1, 2}};
    const LatticeVector b{l, IntVec{0, 1}};
    REQUIRE(a.square() == 4);
    REQUIRE(a.pair(b) == 1);
    REQUIRE((a + b).coords() == IntVec{1, 3});
    REQUIRE((a - b).coords() == IntVec{1, 1});
    REQUIRE(a.scaled(3).coords() == IntVec{3, 6});
    REQUIRE(a.is_primitive());
    REQUIRE_FALSE(a.scaled(2).is_primitive());
    REQUIRE_FALSE(a.is_isotropic());
    REQUIRE(LatticeVector{l, IntVec{1, 0}}.is_isotropic());
    REQUIRE(LatticeVector{l, IntVec{0, 0}}.is_zero());
}

TEST_CASE("vectors on different lattices refuse to pair") {
    const auto u = std::make_shared<const IntegralLattice>(make_hyperbolic());
    const auto d = std::make_shared<const IntegralLattice>(IntegralLattice{diag({2, -2})});
    const LatticeVector a{u, IntVec{1, 0}};
    const LatticeVector b{d, IntVec{1, 0}};
    REQUIRE_THROWS_AS(a.pair(b), std::invalid_argument);

    // Same presentation through a different shared object still pairs.
    const auto u2 = std::make_shared<const IntegralLattice>(make_hyperbolic());
    const LatticeVector c{u2, IntVec{0, 1}};
    REQUIRE(a.pair(c) == 1);
}

TEST_CASE("period points satisfy the two-condition membership test") {
    const IntegralLattice l = direct_sum({make_hyperbolic(), make_hyperbolic()});
    const PeriodPoint good{{1, 1, 0, 0}, {0, 0, 1, 1}};
    REQUIRE(is_period_point(l, good));

    const PeriodPoint wrong_square{{1, 1, 0, 0}, {0, 0, 1, -1}};
    REQUIRE_FALSE(is_period_point(l, wrong_square)); // q(im) = -2 differs from q(re) = 2

    const PeriodPoint not_orthogonal{{1, 1, 0, 0}, {1, 1, 0, 0}}; // equal squares, pairing 2
    REQUIRE_FALSE(is_period_point(l, not_orthogonal));

    const PeriodPoint negative{{1, -1, 0, 0}, {0, 0, 1, -1}};
    REQUIRE_FALSE(is_period_point(l, negative)); // q(re) < 0

    REQUIRE_THROWS_AS((PeriodPoint{{0, 0, 0, 0}, {0, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("integral classes of type (1,1) are the ones orthogonal to the period") {
    const IntegralLattice l = direct_sum({make_hyperbolic(), make_hyperbolic()});
    const PeriodPoint sigma{{1, 1, 0, 0}, {0, 0, 1, 1}};
    REQUIRE(is_type_one_one(l, IntVec{1, -1, 0, 0}, sigma));
    REQUIRE_FALSE(is_type_one_one(l, IntVec{1, 0, 0, 0}, sigma));
    REQUIRE_FALSE(is_type_one_one(l, IntVec{0, 0, 1, 0}, sigma));
}
