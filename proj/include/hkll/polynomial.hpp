#pragma once

// Dense univariate polynomials over Q with exact arithmetic: gcds through a
// primitive pseudo-remainder sequence over Z (keeps coefficient growth in
// check), Yun squarefree decomposition, and complete rational root
// extraction for squarefree inputs.

#include "hkll/numeric.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hkll {

class RatPoly {
public:
    RatPoly() = default;

    explicit RatPoly(RatVec coeffs) : c_(std::move(coeffs)) { trim(); }

    static RatPoly constant(const Rat& v) { return RatPoly{RatVec{v}}; }

    static RatPoly monomial(const Rat& coeff, std::size_t power) {
        RatVec c(power + 1, Rat(0));
        c[power] = coeff;
        return RatPoly{std::move(c)};
    }

    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }

    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const RatVec& coeffs() const noexcept { return c_; }
    const Rat& lc() const {
        if (c_.empty()) throw std::invalid_argument("RatPoly: leading coefficient of zero");
        return c_.back();
    }

    RatPoly operator+(const RatPoly& o) const {
        RatVec r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return RatPoly{std::move(r)};
    }

    RatPoly operator-(const RatPoly& o) const {
        RatVec r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return RatPoly{std::move(r)};
    }

    RatPoly operator*(const RatPoly& o) const {
        if (is_zero() || o.is_zero()) return RatPoly{};
        RatVec r(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        return RatPoly{std::move(r)};
    }

    RatPoly scaled(const Rat& k) const {
        RatVec r = c_;
        for (Rat& x : r) x *= k;
        return RatPoly{std::move(r)};
    }

    RatPoly derivative() const {
        if (c_.size() <= 1) return RatPoly{};
        RatVec r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(Int(i));
        return RatPoly{std::move(r)};
    }

    Rat eval(const Rat& x) const {
        Rat v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
        return v;
    }

    std::pair<RatPoly, RatPoly> divmod(const RatPoly& den) const {
        if (den.is_zero()) throw std::invalid_argument("RatPoly: division by zero polynomial");
        RatVec rem = c_;
        const int dd = den.degree();
        if (degree() < dd) return {RatPoly{}, *this};
        RatVec quot(static_cast<std::size_t>(degree() - dd) + 1, Rat(0));
        for (int i = degree(); i >= dd; --i) {
            const Rat q = rem[static_cast<std::size_t>(i)] / den.lc();
            if (q == 0) continue;
            quot[static_cast<std::size_t>(i - dd)] = q;
            for (int j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(i - dd + j)] -= q * den.c_[static_cast<std::size_t>(j)];
        }
        return {RatPoly{std::move(quot)}, RatPoly{std::move(rem)}};
    }

    // Quotient when the division is known to be exact.
    RatPoly exact_div(const RatPoly& den) const {
        auto [q, r] = divmod(den);
        if (!r.is_zero()) throw std::invalid_argument("RatPoly: division not exact");
        return q;
    }

    RatPoly monic() const {
        if (is_zero()) return *this;
        return scaled(Rat(1) / lc());
    }

    RatPoly pow(unsigned e) const {
        RatPoly r = constant(Rat(1));
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // Multiplicity of the root t = 0.
    std::size_t ord_at_zero() const {
        if (is_zero()) throw std::invalid_argument("RatPoly: order of zero polynomial");
        std::size_t k = 0;
        while (c_[k] == 0) ++k;
        return k;
    }

    // Integer coefficient vector with content 1 and positive lead, plus no
    // rational denominators: the primitive integer model of this polynomial.
    IntVec primitive_integer_coeffs() const {
        if (is_zero()) return {};
        Int den = 1;
        for (const Rat& x : c_) den = lcm_positive(den, denominator(x));
        IntVec v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rat scaled_coeff = c_[i] * Rat(den);
            v[i] = numerator(scaled_coeff);
        }
        Int g = gcd_all(v);
        if (v.back() < 0) g = -g;
        for (Int& x : v) x /= g;
        return v;
    }

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }
    bool operator!=(const RatPoly& o) const { return !(*this == o); }

    // Deterministic rendering, highest power first: "t^2 - 2/3*t + 1".
    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Rat& a = c_[i];
            if (a == 0) continue;
            const bool negative = a < 0;
            Rat mag = negative ? Rat(-a) : a;
            if (first) {
                if (negative) out << "-";
                first = false;
            } else {
                out << (negative ? " - " : " + ");
            }
            const bool unit = mag == 1 && i > 0;
            if (!unit) out << format_rat(mag);
            if (i > 0) {
                if (!unit) out << "*";
                out << var;
                if (i > 1) out << "^" << i;
            }
        }
        return out.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    RatVec c_; // c_[i] is the coefficient of t^i; empty means zero
};

namespace detail {

inline IntVec int_poly_primitive(IntVec v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    if (v.empty()) return v;
    Int g = gcd_all(v);
    if (v.back() < 0) g = -g;
    for (Int& x : v) x /= g;
    return v;
}

// Fraction-free remainder of a by b (a pseudo-remainder, up to lc(b) powers).
inline IntVec int_poly_pseudo_rem(IntVec a, const IntVec& b) {
    const Int& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        const Int la = a.back();
        const std::size_t shift = a.size() - b.size();
        for (Int& x : a) x *= lb;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

} // namespace detail

// Monic gcd over Q via a primitive pseudo-remainder sequence over Z.
inline RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    IntVec x = a.primitive_integer_coeffs();
    IntVec y = b.primitive_integer_coeffs();
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        IntVec r = detail::int_poly_pseudo_rem(x, y);
        x = std::move(y);
        y = detail::int_poly_primitive(std::move(r));
    }
    RatVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = Rat(x[i]);
    return RatPoly{std::move(out)}.monic();
}

// Yun's algorithm: monic squarefree factors with multiplicities, so that the
// product of factor^multiplicity recovers the input up to a constant.
inline std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<RatPoly, int>> out;
    if (f.degree() == 0) return out;
    const RatPoly fp = f.derivative();
    RatPoly a = poly_gcd(f, fp);
    RatPoly b = f.exact_div(a);
    RatPoly c = fp.exact_div(a);
    RatPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        const RatPoly g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b.exact_div(g);
        c = d.exact_div(g);
        d = c - b.derivative();
    }
    return out;
}

// All rational roots of a squarefree polynomial, ascending. Complete: the
// root candidates come from full factorizations of the outer coefficients.
inline std::vector<Rat> rational_roots_squarefree(const RatPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("rational_roots_squarefree: zero polynomial");
    std::vector<Rat> roots;
    IntVec p = f.primitive_integer_coeffs();
    if (p.size() <= 1) return roots;
    std::size_t low = 0;
    while (p[low] == 0) ++low;
    if (low > 0) {
        roots.emplace_back(0);
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
    }
    if (p.size() <= 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    const Int c0 = p.front();
    const Int cn = p.back();
    // g(1) and g(-1) filters: a root u/v needs (v - u) | g(1) and (v + u) | g(-1).
    Int g1 = 0, gm1 = 0;
    {
        Int sign = 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            g1 += p[i];
            gm1 += sign * p[i];
            sign = -sign;
        }
    }
    const auto eval_hom = [&p](const Int& u, const Int& v) {
        // sum of p[i] * u^i * v^(deg - i)
        Int acc = 0;
        Int upow = 1;
        std::vector<Int> vpows(p.size());
        vpows[p.size() - 1] = 1;
        for (std::size_t i = p.size() - 1; i-- > 0;) vpows[i] = vpows[i + 1] * v;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i] * upow * vpows[i];
            upow *= u;
        }
        return acc;
    };
    for (const Int& num : positive_divisors(c0)) {
        for (const Int& den : positive_divisors(cn)) {
            if (boost::multiprecision::gcd(num, den) != 1) continue;
            for (int s : {1, -1}) {
                const Int u = s * num;
                if (g1 != 0 && (den - u) != 0 && g1 % (den - u) != 0) continue;
                if (gm1 != 0 && (den + u) != 0 && gm1 % (den + u) != 0) continue;
                if (eval_hom(u, den) == 0) roots.emplace_back(Rat(u) / Rat(den));
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace hkll
