#pragma once

// Shared exact-arithmetic primitives. Everything in this library computes
// over arbitrary-precision integers and rationals; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkll {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rat>;

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// binomial(n, k) for n >= 0; zero when k is outside [0, n].
inline Int binomial(const Int& n, const Int& k) {
    if (n < 0) throw std::invalid_argument("binomial: negative upper argument");
    if (k < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int num = 1, den = 1;
    for (Int i = 0; i < kk; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

inline Int gcd_all(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

inline Int lcm_positive(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

inline Int numerator(const Rat& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int denominator(const Rat& r) { return Int(boost::multiprecision::denominator(r)); }

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

inline Int int_pow(const Int& base, unsigned e) {
    Int r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

// Floor of the k-th root of x >= 0.
inline Int kth_root_floor(const Int& x, unsigned k) {
    if (x < 0) throw std::invalid_argument("kth_root_floor: negative radicand");
    if (k == 0) throw std::invalid_argument("kth_root_floor: zeroth root");
    if (x == 0 || x == 1 || k == 1) return x;
    Int lo = 1, hi = 1;
    while (int_pow(hi, k) <= x) hi <<= 1;
    // invariant: lo^k <= x < hi^k
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (int_pow(mid, k) <= x) lo = mid; else hi = mid;
    }
    return lo;
}

inline std::optional<Int> exact_kth_root(const Int& x, unsigned k) {
    if (x < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = exact_kth_root(-x, k);
        if (!r) return std::nullopt;
        return -*r;
    }
    Int r = kth_root_floor(x, k);
    if (int_pow(r, k) == x) return r;
    return std::nullopt;
}

// Positive rational y with y^k == x, when one exists.
inline std::optional<Rat> exact_rational_kth_root_positive(const Rat& x, unsigned k) {
    if (x <= 0) return std::nullopt;
    auto pn = exact_kth_root(numerator(x), k);
    auto pd = exact_kth_root(denominator(x), k);
    if (!pn || !pd) return std::nullopt;
    return Rat(*pn) / Rat(*pd);
}

inline std::string format_rat(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
inline Rat parse_rat(const std::string& s) {
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("parse_rat: empty string");
    std::string t = s.substr(first, last - first + 1);
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(t));
        Int num(t.substr(0, slash));
        Int den(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num) / Rat(den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rat: cannot parse '" + s + "'");
    }
}

namespace detail {

inline Int mulmod(const Int& a, const Int& b, const Int& m) { return a * b % m; }

inline Int powmod(Int base, Int exp, const Int& m) {
    Int r = 1;
    base %= m;
    while (exp > 0) {
        if ((exp & 1) != 0) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline bool miller_rabin(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = boost::multiprecision::gcd(x >= y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(Int n, std::vector<std::pair<Int, unsigned>>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        for (auto& [p, e] : out)
            if (p == n) { ++e; return; }
        out.emplace_back(n, 1);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

// Prime factorization of |n|, n != 0. Small primes by trial division,
// the rest by Pollard rho with a Miller-Rabin primality gate.
inline std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n == 0) throw std::invalid_argument("factorize: zero");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, unsigned>> out;
    for (Int p = 2; p * p <= n && p < 100000; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) detail::factor_into(n, out);
    return out;
}

// All positive divisors of |n|, unsorted count bounded by the divisor function.
inline std::vector<Int> positive_divisors(const Int& n) {
    auto f = factorize(n);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f) {
        std::size_t sz = divs.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

} // namespace hkll
