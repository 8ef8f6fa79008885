#pragma once

// Integral lattices presented by Gram matrices, with exact signature,
// determinant, isotropy search, and Hodge-theoretic period predicates.

#include "hkll/numeric.hpp"

#include <memory>
#include <optional>
#include <utility>

namespace hkll {

namespace detail {

// Fraction-free Gaussian elimination. Exact integer determinant.
inline Int det_bareiss(IntMat m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int denom = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
        denom = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

} // namespace detail

class IntegralLattice {
public:
    explicit IntegralLattice(IntMat gram) : gram_(std::move(gram)) {
        const std::size_t n = gram_.size();
        if (n == 0) throw std::invalid_argument("lattice: empty Gram matrix");
        for (const auto& row : gram_)
            if (row.size() != n) throw std::invalid_argument("lattice: Gram matrix not square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (gram_[i][j] != gram_[j][i])
                    throw std::invalid_argument("lattice: Gram matrix not symmetric");
        det_ = detail::det_bareiss(gram_);
        if (det_ == 0) throw std::invalid_argument("lattice: degenerate Gram matrix");
        even_ = true;
        for (std::size_t i = 0; i < n; ++i)
            if (gram_[i][i] % 2 != 0) { even_ = false; break; }
        sig_ = compute_signature();
    }

    int rank() const noexcept { return static_cast<int>(gram_.size()); }
    const IntMat& gram() const noexcept { return gram_; }
    const Int& det() const noexcept { return det_; }
    bool is_even() const noexcept { return even_; }

    // (positive, negative) inertia indices; exact, no floating point.
    std::pair<int, int> signature() const noexcept { return sig_; }

    Int pair(const IntVec& v, const IntVec& w) const {
        check_dim(v);
        check_dim(w);
        Int s = 0;
        for (std::size_t i = 0; i < gram_.size(); ++i) {
            if (v[i] == 0) continue;
            Int row = 0;
            for (std::size_t j = 0; j < gram_.size(); ++j) row += gram_[i][j] * w[j];
            s += v[i] * row;
        }
        return s;
    }

    Int square(const IntVec& v) const { return pair(v, v); }

    Rat pair_rational(const RatVec& v, const RatVec& w) const {
        if (v.size() != gram_.size() || w.size() != gram_.size())
            throw std::invalid_argument("lattice: vector length differs from rank");
        Rat s = 0;
        for (std::size_t i = 0; i < gram_.size(); ++i) {
            if (v[i] == 0) continue;
            Rat row = 0;
            for (std::size_t j = 0; j < gram_.size(); ++j) row += Rat(gram_[i][j]) * w[j];
            s += v[i] * row;
        }
        return s;
    }

    bool operator==(const IntegralLattice& o) const { return gram_ == o.gram_; }
    bool operator!=(const IntegralLattice& o) const { return !(*this == o); }

private:
    void check_dim(const IntVec& v) const {
        if (v.size() != gram_.size())
            throw std::invalid_argument("lattice: vector length differs from rank");
    }

    // Symmetric congruence diagonalization over Q; signs of the resulting
    // diagonal give the inertia indices (Sylvester).
    std::pair<int, int> compute_signature() const {
        const std::size_t n = gram_.size();
        std::vector<RatVec> a(n, RatVec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(gram_[i][j]);
        int pos = 0, neg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i][i] == 0) {
                std::size_t d = i;
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a[j][j] != 0) { d = j; break; }
                if (d != i) {
                    for (std::size_t k = 0; k < n; ++k) std::swap(a[i][k], a[d][k]);
                    for (std::size_t k = 0; k < n; ++k) std::swap(a[k][i], a[k][d]);
                } else {
                    std::size_t j = i;
                    for (std::size_t k = i + 1; k < n; ++k)
                        if (a[i][k] != 0) { j = k; break; }
                    if (j == i) continue; // zero row: impossible for nonzero det
                    // diagonal block is zero here, so this makes a[i][i] = 2*a[i][j] != 0
                    for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
                    for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
                }
            }
            const Rat p = a[i][i];
            if (p > 0) ++pos; else ++neg;
            for (std::size_t r = i + 1; r < n; ++r) {
                if (a[r][i] == 0) continue;
                const Rat f = a[r][i] / p;
                for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[i][k];
                for (std::size_t k = 0; k < n; ++k) a[k][r] -= f * a[k][i];
            }
        }
        return {pos, neg};
    }

    IntMat gram_;
    Int det_;
    std::pair<int, int> sig_;
    bool even_;
};

using LatticePtr = std::shared_ptr<const IntegralLattice>;

// The hyperbolic plane U: Gram [[0,1],[1,0]].
inline IntegralLattice make_hyperbolic() {
    return IntegralLattice{IntMat{{0, 1}, {1, 0}}};
}

// E8 in its simple-root basis e1..e8, scaled by sign (+1 or -1).
// Node layout (edges carry Gram entry -1, diagonal is 2):
//
//           e2
//            |
//   e1 - e3 - e4 - e5 - e6 - e7 - e8
//
inline IntegralLattice make_e8(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("make_e8: sign must be +1 or -1");
    IntMat g(8, IntVec(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2 * sign;
    const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (auto [u, v] : edges) {
        g[u - 1][v - 1] = -sign;
        g[v - 1][u - 1] = -sign;
    }
    return IntegralLattice{std::move(g)};
}

inline IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: empty summand list");
    int n = 0;
    for (const auto& p : parts) n += p.rank();
    IntMat g(n, IntVec(n, 0));
    int off = 0;
    for (const auto& p : parts) {
        const int r = p.rank();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) g[off + i][off + j] = p.gram()[i][j];
        off += r;
    }
    return IntegralLattice{std::move(g)};
}

// 3U + 2E8(-1): rank 22, signature (3,19), unimodular, even.
inline IntegralLattice k3_lattice() {
    const IntegralLattice u = make_hyperbolic();
    const IntegralLattice e8m = make_e8(-1);
    return direct_sum({u, u, u, e8m, e8m});
}

class LatticeVector {
public:
    LatticeVector(LatticePtr lattice, IntVec coords)
        : lattice_(std::move(lattice)), coords_(std::move(coords)) {
        if (!lattice_) throw std::invalid_argument("LatticeVector: null lattice");
        if (static_cast<int>(coords_.size()) != lattice_->rank())
            throw std::invalid_argument("LatticeVector: coordinate length differs from rank");
    }

    LatticeVector(const IntegralLattice& lattice, IntVec coords)
        : LatticeVector(std::make_shared<const IntegralLattice>(lattice), std::move(coords)) {}

    const IntVec& coords() const noexcept { return coords_; }
    const LatticePtr& lattice() const noexcept { return lattice_; }

    Int square() const { return lattice_->square(coords_); }

    Int pair(const LatticeVector& o) const {
        require_same_lattice(o);
        return lattice_->pair(coords_, o.coords_);
    }

    bool is_zero() const {
        for (const Int& c : coords_)
            if (c != 0) return false;
        return true;
    }

    bool is_isotropic() const { return !is_zero() && square() == 0; }
    bool is_primitive() const { return gcd_all(coords_) == 1; }

    LatticeVector operator+(const LatticeVector& o) const {
        require_same_lattice(o);
        IntVec c = coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return LatticeVector{lattice_, std::move(c)};
    }

    LatticeVector operator-(const LatticeVector& o) const {
        require_same_lattice(o);
        IntVec c = coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
        return LatticeVector{lattice_, std::move(c)};
    }

    LatticeVector scaled(const Int& k) const {
        IntVec c = coords_;
        for (Int& x : c) x *= k;
        return LatticeVector{lattice_, std::move(c)};
    }

    bool operator==(const LatticeVector& o) const {
        return coords_ == o.coords_ && *lattice_ == *o.lattice_;
    }

private:
    void require_same_lattice(const LatticeVector& o) const {
        if (lattice_ == o.lattice_) return;
        if (*lattice_ != *o.lattice_)
            throw std::invalid_argument("LatticeVector: mismatched ambient lattices");
    }

    LatticePtr lattice_;
    IntVec coords_;
};

// First primitive isotropic vector in the box [-bound, bound]^rank, scanning
// each coordinate from +bound down to -bound with the first coordinate most
// significant. Empty result means the box holds none (a search-budget
// statement, not a nonexistence proof).
inline std::optional<IntVec> find_isotropic(const IntegralLattice& lattice, const Int& bound) {
    if (bound < 1) throw std::invalid_argument("find_isotropic: bound must be positive");
    const int n = lattice.rank();
    IntVec v(n, bound);
    for (;;) {
        bool zero = true;
        for (const Int& c : v)
            if (c != 0) { zero = false; break; }
        if (!zero && lattice.square(v) == 0 && gcd_all(v) == 1) return v;
        int i = n - 1;
        while (i >= 0 && v[i] == -bound) {
            v[i] = bound;
            --i;
        }
        if (i < 0) return std::nullopt;
        --v[i];
    }
}

// A point of the period domain presented by real and imaginary parts of a
// line C(re + i*im); not both parts may vanish.
struct PeriodPoint {
    RatVec re, im;

    PeriodPoint(RatVec real_part, RatVec imag_part)
        : re(std::move(real_part)), im(std::move(imag_part)) {
        if (re.size() != im.size())
            throw std::invalid_argument("PeriodPoint: real and imaginary parts differ in length");
        bool nonzero = false;
        for (const Rat& c : re)
            if (c != 0) { nonzero = true; break; }
        if (!nonzero)
            for (const Rat& c : im)
                if (c != 0) { nonzero = true; break; }
        if (!nonzero) throw std::invalid_argument("PeriodPoint: both parts vanish");
    }
};

// q(sigma) = 0 and q(sigma + conj sigma) > 0, spelled out on (re, im):
// q(re) = q(im), pair(re, im) = 0, q(re) > 0.
inline bool is_period_point(const IntegralLattice& lattice, const PeriodPoint& p) {
    const Rat qre = lattice.pair_rational(p.re, p.re);
    const Rat qim = lattice.pair_rational(p.im, p.im);
    if (qre != qim) return false;
    if (lattice.pair_rational(p.re, p.im) != 0) return false;
    return qre > 0;
}

// x is orthogonal to both parts of sigma, i.e. x stays of type (1,1) for the
// Hodge structure sigma defines. Assumes is_period_point(lattice, sigma).
inline bool is_type_one_one(const IntegralLattice& lattice, const IntVec& x, const PeriodPoint& sigma) {
    if (x.size() != sigma.re.size())
        throw std::invalid_argument("is_type_one_one: dimension mismatch");
    RatVec xr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xr[i] = Rat(x[i]);
    return lattice.pair_rational(xr, sigma.re) == 0 && lattice.pair_rational(xr, sigma.im) == 0;
}

} // namespace hkll
