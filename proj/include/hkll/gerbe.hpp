#pragma once

// Cech 2-cochains on the nerve of a finite cover, with coefficients in Z/N
// or in the rational circle Q/Z: cocycle and coboundary tests (exact, via
// Smith reduction of the integer coboundary matrix), torsion orders, and the
// small bookkeeping facts for Brauer groups and parity-twisted torsors.

#include "hkll/smith.hpp"

#include <array>
#include <map>
#include <optional>

namespace hkll {

// Z/N for modulus N >= 1; the rational circle Q/Z for modulus 0.
class CoeffGroup {
public:
    static CoeffGroup mod(const Int& n) {
        if (n < 1) throw std::invalid_argument("CoeffGroup: modulus must be >= 1");
        return CoeffGroup{n};
    }
    static CoeffGroup circle() { return CoeffGroup{0}; }

    bool is_circle() const noexcept { return modulus_ == 0; }
    const Int& modulus() const noexcept { return modulus_; }

    // Canonical representative: [0, N) for Z/N, [0, 1) for the circle.
    Rat reduce(const Rat& v) const {
        if (is_circle()) {
            const Int num = hkll::numerator(v);
            const Int den = hkll::denominator(v);
            Int q = num / den;
            if (num % den != 0 && num < 0) --q; // floor
            return v - Rat(q);
        }
        if (hkll::denominator(v) != 1)
            throw std::invalid_argument("CoeffGroup: non-integer value in Z/N");
        Int r = hkll::numerator(v) % modulus_;
        if (r < 0) r += modulus_;
        return Rat(r);
    }

    bool is_zero(const Rat& v) const { return reduce(v) == 0; }

    bool operator==(const CoeffGroup& o) const { return modulus_ == o.modulus_; }

private:
    explicit CoeffGroup(Int n) : modulus_(std::move(n)) {}
    Int modulus_;
};

using Pair = std::array<int, 2>;
using Triple = std::array<int, 3>;
using Quad = std::array<int, 4>;

// Combinatorial nerve of a finite cover: which double, triple and quadruple
// overlaps are nonempty. Tuples are strictly increasing; the family is
// downward closed (faces of a listed overlap are listed).
struct CoverNerve {
    int index_count;
    std::vector<Pair> pairs;
    std::vector<Triple> triples;
    std::vector<Quad> quads;

    CoverNerve(int count, std::vector<Pair> p, std::vector<Triple> t, std::vector<Quad> q)
        : index_count(count), pairs(std::move(p)), triples(std::move(t)), quads(std::move(q)) {
        if (index_count < 1) throw std::invalid_argument("CoverNerve: index count must be positive");
        const auto check_tuple = [&](const auto& tup) {
            for (std::size_t i = 0; i < tup.size(); ++i) {
                if (tup[i] < 0 || tup[i] >= index_count)
                    throw std::invalid_argument("CoverNerve: index out of range");
                if (i > 0 && tup[i] <= tup[i - 1])
                    throw std::invalid_argument("CoverNerve: tuple not strictly increasing");
            }
        };
        for (const auto& x : pairs) check_tuple(x);
        for (const auto& x : triples) check_tuple(x);
        for (const auto& x : quads) check_tuple(x);
        std::sort(pairs.begin(), pairs.end());
        std::sort(triples.begin(), triples.end());
        std::sort(quads.begin(), quads.end());
        const auto has_dupes = [](const auto& v) {
            return std::adjacent_find(v.begin(), v.end()) != v.end();
        };
        if (has_dupes(pairs) || has_dupes(triples) || has_dupes(quads))
            throw std::invalid_argument("CoverNerve: duplicate tuple");
        for (const auto& t3 : triples)
            for (int drop = 0; drop < 3; ++drop)
                if (!has_pair(face<3, 2>(t3, drop)))
                    throw std::invalid_argument("CoverNerve: triple with missing pair face");
        for (const auto& q4 : quads)
            for (int drop = 0; drop < 4; ++drop)
                if (!has_triple(face<4, 3>(q4, drop)))
                    throw std::invalid_argument("CoverNerve: quadruple with missing triple face");
    }

    template <std::size_t From, std::size_t To>
    static std::array<int, To> face(const std::array<int, From>& tup, int drop) {
        std::array<int, To> out{};
        std::size_t k = 0;
        for (std::size_t i = 0; i < From; ++i)
            if (static_cast<int>(i) != drop) out[k++] = tup[i];
        return out;
    }

    bool has_pair(const Pair& p) const {
        return std::binary_search(pairs.begin(), pairs.end(), p);
    }
    bool has_triple(const Triple& t) const {
        return std::binary_search(triples.begin(), triples.end(), t);
    }
};

// Every overlap of up to four of k sets.
inline CoverNerve full_nerve(int k) {
    std::vector<Pair> p;
    std::vector<Triple> t;
    std::vector<Quad> q;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            p.push_back({i, j});
            for (int l = j + 1; l < k; ++l) {
                t.push_back({i, j, l});
                for (int s = l + 1; s < k; ++s) q.push_back({i, j, l, s});
            }
        }
    return CoverNerve{k, std::move(p), std::move(t), std::move(q)};
}

// Nerve of a pure 2-complex: pair faces derived, no quadruple overlaps.
inline CoverNerve nerve_from_triangles(int count, const std::vector<Triple>& triangles) {
    std::vector<Pair> p;
    for (const auto& t : triangles)
        for (int drop = 0; drop < 3; ++drop) p.push_back(CoverNerve::face<3, 2>(t, drop));
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return CoverNerve{count, std::move(p), triangles, {}};
}

// Six-set cover whose nerve triangulates the closed surface of Euler
// characteristic one; its mod-2 degree-two cohomology is Z/2, so it carries
// the minimal example of a 2-torsion class.
inline CoverNerve projective_plane_nerve() {
    return nerve_from_triangles(6, {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 4, 5},
                                    {1, 2, 4}, {1, 2, 5}, {1, 3, 5}, {2, 3, 4}, {3, 4, 5}});
}

class CechGerbe {
public:
    CechGerbe(CoverNerve nerve, CoeffGroup group, std::map<Triple, Rat> beta)
        : nerve_(std::move(nerve)), group_(std::move(group)) {
        for (auto& [key, value] : beta) {
            if (!nerve_.has_triple(key))
                throw std::invalid_argument("CechGerbe: beta key is not a triple of the nerve");
            beta_[key] = group_.reduce(value);
        }
        for (const auto& t : nerve_.triples)
            if (!beta_.count(t)) throw std::invalid_argument("CechGerbe: beta misses a nerve triple");
    }

    const CoverNerve& nerve() const noexcept { return nerve_; }
    const CoeffGroup& group() const noexcept { return group_; }
    const std::map<Triple, Rat>& values() const noexcept { return beta_; }

    // Antisymmetric extension to arbitrary index order.
    Rat beta(int i, int j, int k) const {
        std::array<int, 3> t{i, j, k};
        int sign = 1;
        for (int a = 0; a < 2; ++a) // 3-element bubble sort, parity tracked
            for (int b = 0; b < 2 - a; ++b)
                if (t[b] > t[b + 1]) {
                    std::swap(t[b], t[b + 1]);
                    sign = -sign;
                }
        if (t[0] == t[1] || t[1] == t[2]) return Rat(0);
        const auto it = beta_.find(t);
        if (it == beta_.end()) throw std::invalid_argument("CechGerbe: triple not in nerve");
        return sign > 0 ? it->second : group_.reduce(-it->second);
    }

private:
    CoverNerve nerve_;
    CoeffGroup group_;
    std::map<Triple, Rat> beta_;
};

// (delta beta)_{ijkl} = beta_{jkl} - beta_{ikl} + beta_{ijl} - beta_{ijk}
// must vanish on every quadruple overlap.
inline bool is_cocycle(const CechGerbe& g) {
    for (const auto& q : g.nerve().quads) {
        const Rat v = g.beta(q[1], q[2], q[3]) - g.beta(q[0], q[2], q[3]) +
                      g.beta(q[0], q[1], q[3]) - g.beta(q[0], q[1], q[2]);
        if (!g.group().is_zero(v)) return false;
    }
    return true;
}

// (delta alpha)_{ijk} = alpha_{jk} - alpha_{ik} + alpha_{ij} on nerve triples.
inline CechGerbe coboundary_of(const CoverNerve& nerve, const CoeffGroup& group,
                               const std::map<Pair, Rat>& alpha) {
    const auto get = [&alpha, &nerve](int i, int j) -> Rat {
        const Pair key{i, j};
        if (!nerve.has_pair(key)) throw std::invalid_argument("coboundary_of: pair not in nerve");
        const auto it = alpha.find(key);
        return it == alpha.end() ? Rat(0) : it->second;
    };
    std::map<Triple, Rat> beta;
    for (const auto& t : nerve.triples)
        beta[t] = get(t[1], t[2]) - get(t[0], t[2]) + get(t[0], t[1]);
    return CechGerbe{nerve, group, std::move(beta)};
}

struct CoboundaryWitness {
    bool is_coboundary = false;
    std::map<Pair, Rat> alpha; // a preimage under delta, when one exists
};

namespace detail {

struct GerbeSystem {
    SmithResult smith;
    RatVec c; // u * beta, in the triple ordering of the nerve
};

inline GerbeSystem gerbe_system(const CechGerbe& g) {
    const auto& nerve = g.nerve();
    const std::size_t rows = nerve.triples.size();
    const std::size_t cols = nerve.pairs.size();
    std::map<Pair, std::size_t> col_of;
    for (std::size_t j = 0; j < cols; ++j) col_of[nerve.pairs[j]] = j;
    IntMat m(rows, IntVec(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        const Triple& t = nerve.triples[i];
        m[i][col_of[{t[1], t[2]}]] += 1;
        m[i][col_of[{t[0], t[2]}]] -= 1;
        m[i][col_of[{t[0], t[1]}]] += 1;
    }
    GerbeSystem sys;
    sys.smith = smith_normal_form(std::move(m));
    sys.c.assign(rows, Rat(0));
    for (std::size_t i = 0; i < rows; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < rows; ++j) {
            const Rat bj = g.values().at(nerve.triples[j]);
            if (sys.smith.u[i][j] != 0 && bj != 0) acc += Rat(sys.smith.u[i][j]) * bj;
        }
        sys.c[i] = acc;
    }
    return sys;
}

// Smallest k >= 1 with d * y == k * c solvable for y, one row.
inline Int row_torsion(const Int& d, const Rat& c, const CoeffGroup& group) {
    if (group.is_circle()) {
        if (d != 0) return 1;
        return hkll::denominator(c);
    }
    const Int g = boost::multiprecision::gcd(d, group.modulus()); // gcd(0, N) = N
    const Int cg = boost::multiprecision::gcd(hkll::numerator(c), g);
    return g / cg;
}

} // namespace detail

// Exact solve of beta = delta alpha. The input must be a cocycle.
inline CoboundaryWitness is_coboundary(const CechGerbe& g) {
    if (!is_cocycle(g)) throw std::invalid_argument("is_coboundary: beta is not a cocycle");
    const auto& nerve = g.nerve();
    CoboundaryWitness w;
    if (nerve.triples.empty()) {
        w.is_coboundary = true;
        return w;
    }
    const auto sys = detail::gerbe_system(g);
    const std::size_t rows = nerve.triples.size();
    const std::size_t cols = nerve.pairs.size();
    const std::size_t diag = rows < cols ? rows : cols;
    RatVec y(cols, Rat(0));
    for (std::size_t i = 0; i < rows; ++i) {
        const Int d = i < diag ? sys.smith.d[i][i] : Int(0);
        const Rat& c = sys.c[i];
        if (g.group().is_circle()) {
            if (d != 0) {
                y[i] = c / Rat(d);
            } else if (hkll::denominator(c) != 1) {
                return w; // not solvable
            }
        } else {
            const Int& n = g.group().modulus();
            const Int cnum = hkll::numerator(g.group().reduce(c));
            const Int gd = boost::multiprecision::gcd(d, n); // gcd(0, N) = N
            if (cnum % gd != 0) return w;
            if (d != 0 && i < diag) {
                // solve d*y == cnum (mod n)
                const Int dd = d / gd, nn = n / gd, cc = cnum / gd;
                auto [gg, x, yy] = extended_gcd(dd, nn);
                (void)gg;
                (void)yy;
                Int sol = cc % nn * (x % nn) % nn;
                if (sol < 0) sol += nn;
                y[i] = Rat(sol);
            }
        }
    }
    // alpha = v * y
    std::map<Pair, Rat> alpha;
    for (std::size_t j = 0; j < cols; ++j) {
        Rat acc = 0;
        for (std::size_t k = 0; k < cols; ++k)
            if (sys.smith.v[j][k] != 0 && y[k] != 0) acc += Rat(sys.smith.v[j][k]) * y[k];
        alpha[nerve.pairs[j]] = g.group().reduce(acc);
    }
    // substitution check: the witness must reproduce beta exactly
    const CechGerbe check = coboundary_of(nerve, g.group(), alpha);
    for (const auto& t : nerve.triples)
        if (!g.group().is_zero(check.values().at(t) - g.values().at(t)))
            throw std::logic_error("is_coboundary: witness verification failed");
    w.is_coboundary = true;
    w.alpha = std::move(alpha);
    return w;
}

// Least k >= 1 with k * beta a coboundary. Finite for both coefficient
// models implemented here (it divides N over Z/N; over the rational circle
// it is the lcm of the obstruction denominators).
inline Int torsion_order(const CechGerbe& g) {
    if (!is_cocycle(g)) throw std::invalid_argument("torsion_order: beta is not a cocycle");
    if (g.nerve().triples.empty()) return 1;
    const auto sys = detail::gerbe_system(g);
    const std::size_t rows = g.nerve().triples.size();
    const std::size_t cols = g.nerve().pairs.size();
    const std::size_t diag = rows < cols ? rows : cols;
    Int k = 1;
    for (std::size_t i = 0; i < rows; ++i) {
        const Int d = i < diag ? sys.smith.d[i][i] : Int(0);
        Rat c = sys.c[i];
        if (!g.group().is_circle()) c = g.group().reduce(c);
        k = lcm_positive(k, detail::row_torsion(d, c, g.group()));
    }
    return k;
}

inline CechGerbe scaled_gerbe(const CechGerbe& g, const Int& k) {
    std::map<Triple, Rat> beta;
    for (const auto& [t, v] : g.values()) beta[t] = v * Rat(k);
    return CechGerbe{g.nerve(), g.group(), std::move(beta)};
}

// Transcendental quotient rank for a K3 surface of Picard rank rho: the
// Brauer group is a quotient of a rank 22 - rho lattice tensored with Q/Z.
inline int brauer_quotient_rank(int rho) {
    if (rho < 2 || rho > 20)
        throw std::domain_error("brauer_quotient_rank: Picard rank outside [2, 20]");
    return 22 - rho;
}

enum class ZkClass { Z0, Z1 };

struct ZkTwist {
    ZkClass cls;
    Int torsion; // 1 for the trivial class, 2 for the nontrivial one
};

// The k-section compactified Jacobian twist depends only on k mod 2: even k
// give the trivial class, odd k the 2-torsion one.
inline ZkTwist zk_twist_class(const Int& k) {
    if (k < 0) throw std::invalid_argument("zk_twist_class: k must be nonnegative");
    const bool odd = (k % 2) != 0;
    return ZkTwist{odd ? ZkClass::Z1 : ZkClass::Z0, odd ? Int(2) : Int(1)};
}

} // namespace hkll
