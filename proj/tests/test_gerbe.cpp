#include "hkll/gerbe.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

using namespace hkll;

namespace {

std::map<Triple, Rat> zero_beta(const CoverNerve& nerve) {
    std::map<Triple, Rat> beta;
    for (const auto& t : nerve.triples) beta[t] = 0;
    return beta;
}

std::map<Triple, Rat> single_beta(const CoverNerve& nerve, const Triple& at, Rat value) {
    auto beta = zero_beta(nerve);
    beta.at(at) = std::move(value);
    return beta;
}

// Independent recomputation of delta alpha compared against beta.
bool reproduces(const CechGerbe& g, const std::map<Pair, Rat>& alpha) {
    const CechGerbe d = coboundary_of(g.nerve(), g.group(), alpha);
    for (const auto& t : g.nerve().triples)
        if (!g.group().is_zero(d.values().at(t) - g.values().at(t))) return false;
    return true;
}

// Rational elimination determinant for unimodularity checks.
Rat det_of(const IntMat& m) {
    const std::size_t n = m.size();
    std::vector<RatVec> a(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
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

} // namespace

TEST_CASE("coefficient groups reduce to canonical representatives") {
    const CoeffGroup z5 = CoeffGroup::mod(5);
    REQUIRE(z5.reduce(Rat(7)) == 2);
    REQUIRE(z5.reduce(Rat(-1)) == 4);
    REQUIRE(z5.reduce(Rat(0)) == 0);
    REQUIRE(z5.is_zero(Rat(10)));
    REQUIRE_THROWS_AS(z5.reduce(Rat(1, 2)), std::invalid_argument);
    REQUIRE_THROWS_AS(CoeffGroup::mod(0), std::invalid_argument);
    REQUIRE_THROWS_AS(CoeffGroup::mod(-3), std::invalid_argument);

    const CoeffGroup circle = CoeffGroup::circle();
    REQUIRE(circle.reduce(Rat(7, 3)) == Rat(1, 3));
    REQUIRE(circle.reduce(Rat(-1, 4)) == Rat(3, 4));
    REQUIRE(circle.reduce(Rat(5)) == 0);
    REQUIRE(circle.is_zero(Rat(-2)));
}

TEST_CASE("nerves validate their tuples and faces") {
    REQUIRE_THROWS_AS(CoverNerve(0, {}, {}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(CoverNerve(2, {{0, 2}}, {}, {}), std::invalid_argument);   // out of range
    REQUIRE_THROWS_AS(CoverNerve(3, {{1, 0}}, {}, {}), std::invalid_argument);   // not increasing
    REQUIRE_THROWS_AS(CoverNerve(3, {{0, 1}, {0, 1}}, {}, {}), std::invalid_argument);
    // a triple requires all three pair faces
    REQUIRE_THROWS_AS(CoverNerve(3, {{0, 1}, {0, 2}}, {{0, 1, 2}}, {}), std::invalid_argument);
    // a quadruple requires all four triple faces
    REQUIRE_THROWS_AS(CoverNerve(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                                 {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}, {{0, 1, 2, 3}}),
                      std::invalid_argument);
    REQUIRE_NOTHROW(full_nerve(4));
}

TEST_CASE("full nerves carry every overlap up to order four") {
    const CoverNerve n5 = full_nerve(5);
    REQUIRE(n5.index_count == 5);
    REQUIRE(n5.pairs.size() == 10);
    REQUIRE(n5.triples.size() == 10);
    REQUIRE(n5.quads.size() == 5);
    REQUIRE(n5.has_pair({1, 4}));
    REQUIRE(n5.has_triple({0, 2, 3}));
}

TEST_CASE("triangle complexes derive their pair faces") {
    const CoverNerve sphere = nerve_from_triangles(
        4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    REQUIRE(sphere.pairs.size() == 6);
    REQUIRE(sphere.triples.size() == 4);
    REQUIRE(sphere.quads.empty());

    const CoverNerve rp2 = projective_plane_nerve();
    REQUIRE(rp2.index_count == 6);
    REQUIRE(rp2.pairs.size() == 15);
    REQUIRE(rp2.triples.size() == 10);
    REQUIRE(rp2.quads.empty());
    REQUIRE(rp2.triples.front() == Triple{0, 1, 3});
    // Euler characteristic 6 - 15 + 10 = 1
    REQUIRE(rp2.index_count - static_cast<int>(rp2.pairs.size()) +
                static_cast<int>(rp2.triples.size()) ==
            1);
}

TEST_CASE("gerbe data must cover exactly the nerve triples") {
    const CoverNerve rp2 = projective_plane_nerve();
    const CoeffGroup z2 = CoeffGroup::mod(2);
    REQUIRE_NOTHROW(CechGerbe(rp2, z2, zero_beta(rp2)));

    auto missing = zero_beta(rp2);
    missing.erase(missing.begin());
    REQUIRE_THROWS_AS(CechGerbe(rp2, z2, missing), std::invalid_argument);

    auto extra = zero_beta(rp2);
    extra[{0, 1, 2}] = 1; // not a triangle of this nerve
    REQUIRE_THROWS_AS(CechGerbe(rp2, z2, extra), std::invalid_argument);
}

TEST_CASE("stored values are antisymmetric under index permutations") {
    const CoverNerve n = full_nerve(4);
    const CoeffGroup z7 = CoeffGroup::mod(7);
    const CechGerbe g{n, z7, single_beta(n, {0, 1, 2}, Rat(3))};
    REQUIRE(g.beta(0, 1, 2) == 3);
    REQUIRE(g.beta(1, 2, 0) == 3); // even permutation
    REQUIRE(g.beta(1, 0, 2) == 4); // odd permutation: -3 mod 7
    REQUIRE(g.beta(2, 1, 0) == 4);
    REQUIRE(g.beta(0, 0, 2) == 0); // repeated index
}

TEST_CASE("coboundaries are always cocycles") {
    std::mt19937_64 rng(81);
    std::uniform_int_distribution<int> val(-6, 6);
    for (int k : {4, 5, 6}) {
        const CoverNerve nerve = full_nerve(k);
        for (int trial = 0; trial < 10; ++trial) {
            std::map<Pair, Rat> alpha;
            for (const auto& p : nerve.pairs)
                alpha[p] = (trial % 2 == 0) ? Rat(val(rng))
                                            : Rat(val(rng), 1 + static_cast<unsigned>(rng() % 4));
            const CoeffGroup group =
                (trial % 2 == 0) ? CoeffGroup::mod(1 + rng() % 6) : CoeffGroup::circle();
            const CechGerbe g = coboundary_of(nerve, group, alpha);
            REQUIRE(is_cocycle(g));
            const CoboundaryWitness w = is_coboundary(g);
            REQUIRE(w.is_coboundary);
            REQUIRE(reproduces(g, w.alpha));
            REQUIRE(torsion_order(g) == 1);
        }
    }
}

TEST_CASE("non-cocycles are rejected by the solvers") {
    const CoverNerve n = full_nerve(4);
    const CechGerbe bad{n, CoeffGroup::mod(2), single_beta(n, {0, 1, 2}, Rat(1))};
    REQUIRE_FALSE(is_cocycle(bad));
    REQUIRE_THROWS_AS(is_coboundary(bad), std::invalid_argument);
    REQUIRE_THROWS_AS(torsion_order(bad), std::invalid_argument);
}

TEST_CASE("the two-torsion class on the projective-plane nerve") {
    const CoverNerve rp2 = projective_plane_nerve();
    const CoeffGroup z2 = CoeffGroup::mod(2);
    const CechGerbe g{rp2, z2, single_beta(rp2, {0, 1, 3}, Rat(1))};

    REQUIRE(is_cocycle(g)); // no quadruple overlaps: vacuous
    const CoboundaryWitness w = is_coboundary(g);
    REQUIRE_FALSE(w.is_coboundary);
    REQUIRE(torsion_order(g) == 2);

    const CechGerbe doubled = scaled_gerbe(g, 2);
    const CoboundaryWitness w2 = is_coboundary(doubled);
    REQUIRE(w2.is_coboundary);
    REQUIRE(reproduces(doubled, w2.alpha));
}

TEST_CASE("the same class dies in divisible coefficients") {
    const CoverNerve rp2 = projective_plane_nerve();
    const CechGerbe g{rp2, CoeffGroup::circle(), single_beta(rp2, {0, 1, 3}, Rat(1, 2))};
    REQUIRE(is_cocycle(g));
    const CoboundaryWitness w = is_coboundary(g);
    REQUIRE(w.is_coboundary); // degree-two circle cohomology of this nerve vanishes
    REQUIRE(reproduces(g, w.alpha));
    REQUIRE(torsion_order(g) == 1);
}

TEST_CASE("sphere nerve carries free degree-two cohomology") {
    const CoverNerve sphere = nerve_from_triangles(
        4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});

    const CechGerbe third{sphere, CoeffGroup::circle(),
                          single_beta(sphere, {0, 1, 2}, Rat(1, 3))};
    REQUIRE(is_cocycle(third));
    REQUIRE_FALSE(is_coboundary(third).is_coboundary);
    REQUIRE(torsion_order(third) == 3);

    const CechGerbe mod3{sphere, CoeffGroup::mod(3), single_beta(sphere, {0, 1, 2}, Rat(1))};
    REQUIRE_FALSE(is_coboundary(mod3).is_coboundary);
    REQUIRE(torsion_order(mod3) == 3);
    REQUIRE(is_coboundary(scaled_gerbe(mod3, 3)).is_coboundary);
}

TEST_CASE("solver agrees with exhaustive enumeration on a small nerve") {
    const CoverNerve n = full_nerve(4); // 6 pairs, 4 triples, 1 quad
    for (const Int& N : {Int(2), Int(3)}) {
        const CoeffGroup group = CoeffGroup::mod(N);
        const int modulus = static_cast<int>(N);

        // all coboundaries delta alpha
        std::set<std::vector<int>> image;
        std::map<Pair, Rat> alpha;
        const std::size_t np = n.pairs.size();
        std::vector<int> digits(np, 0);
        for (;;) {
            for (std::size_t i = 0; i < np; ++i) alpha[n.pairs[i]] = digits[i];
            const CechGerbe d = coboundary_of(n, group, alpha);
            std::vector<int> key;
            for (const auto& t : n.triples)
                key.push_back(static_cast<int>(hkll::numerator(d.values().at(t))));
            image.insert(key);
            std::size_t i = 0;
            while (i < np && digits[i] == modulus - 1) digits[i++] = 0;
            if (i == np) break;
            ++digits[i];
        }

        // all cocycles beta, checked against membership in the image
        const std::size_t nt = n.triples.size();
        std::vector<int> bd(nt, 0);
        for (;;) {
            std::map<Triple, Rat> beta;
            for (std::size_t i = 0; i < nt; ++i) beta[n.triples[i]] = bd[i];
            const CechGerbe g{n, group, beta};
            if (is_cocycle(g)) {
                std::vector<int> key;
                for (const auto& t : n.triples)
                    key.push_back(static_cast<int>(hkll::numerator(g.values().at(t))));
                const bool brute = image.count(key) > 0;
                const CoboundaryWitness w = is_coboundary(g);
                REQUIRE(w.is_coboundary == brute);
                if (brute) REQUIRE(reproduces(g, w.alpha));
                // the torsion order is the least multiplier that lands in the image
                const Int order = torsion_order(g);
                REQUIRE(order >= 1);
                REQUIRE(N % order == 0);
                REQUIRE(is_coboundary(scaled_gerbe(g, order)).is_coboundary);
                for (Int k = 1; k < order; ++k)
                    REQUIRE_FALSE(is_coboundary(scaled_gerbe(g, k)).is_coboundary);
            } else {
                REQUIRE_THROWS_AS(is_coboundary(g), std::invalid_argument);
            }
            std::size_t i = 0;
            while (i < nt && bd[i] == modulus - 1) bd[i++] = 0;
            if (i == nt) break;
            ++bd[i];
        }
    }
}

TEST_CASE("smith reduction returns unimodular transforms and a divisor chain") {
    std::mt19937_64 rng(82);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMat m(rows, IntVec(cols));
        for (auto& r : m)
            for (auto& x : r) x = val(rng);
        const SmithResult s = smith_normal_form(m);

        // u * m * v == d
        IntMat um(rows, IntVec(cols, 0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                for (std::size_t k = 0; k < rows; ++k) um[i][j] += s.u[i][k] * m[k][j];
        IntMat umv(rows, IntVec(cols, 0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                for (std::size_t k = 0; k < cols; ++k) umv[i][j] += um[i][k] * s.v[k][j];
        REQUIRE(umv == s.d);

        const Rat du = det_of(s.u), dv = det_of(s.v);
        REQUIRE((du == 1 || du == -1));
        REQUIRE((dv == 1 || dv == -1));

        const std::size_t diag = rows < cols ? rows : cols;
        for (std::size_t i = 0; i < diag; ++i) {
            REQUIRE(s.d[i][i] >= 0);
            for (std::size_t j = 0; j < cols; ++j)
                if (j != i) REQUIRE(s.d[i][j] == 0);
            if (i + 1 < diag && s.d[i + 1][i + 1] != 0) {
                REQUIRE(s.d[i][i] != 0);
                REQUIRE(s.d[i + 1][i + 1] % s.d[i][i] == 0);
            }
        }
    }
}

TEST_CASE("brauer quotient rank bookkeeping") {
    REQUIRE(brauer_quotient_rank(2) == 20);
    REQUIRE(brauer_quotient_rank(20) == 2);
    REQUIRE(brauer_quotient_rank(10) == 12);
    REQUIRE_THROWS_AS(brauer_quotient_rank(1), std::domain_error);
    REQUIRE_THROWS_AS(brauer_quotient_rank(21), std::domain_error);
}

TEST_CASE("section-count twists depend only on parity") {
    REQUIRE(zk_twist_class(0).cls == ZkClass::Z0);
    REQUIRE(zk_twist_class(0).torsion == 1);
    REQUIRE(zk_twist_class(1).cls == ZkClass::Z1);
    REQUIRE(zk_twist_class(1).torsion == 2);
    REQUIRE(zk_twist_class(6).cls == ZkClass::Z0);
    REQUIRE(zk_twist_class(7).cls == ZkClass::Z1);
    REQUIRE_THROWS_AS(zk_twist_class(-1), std::invalid_argument);
}
