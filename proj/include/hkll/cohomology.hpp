#pragma once

// Cohomology of twisted holomorphic forms on projective space and the
// resulting h^i tables for divisors pulled back through a Lagrangian
// fibration over P^n.

#include "hkll/numeric.hpp"

namespace hkll {

// h^0(P^n, Omega^q(m)) in closed form:
//   binom(m+n-q, m) * binom(m-1, q)   for m > q,
//   1                                 for m == 0 and q == 0,
//   0                                 otherwise.
inline Int bott_h0_omega(int n, int q, int m) {
    if (n < 1) throw std::invalid_argument("bott_h0_omega: n must be positive");
    if (q < 0 || q > n) throw std::invalid_argument("bott_h0_omega: q outside [0, n]");
    if (m > q) return binomial(m + n - q, m) * binomial(m - 1, q);
    if (m == 0 && q == 0) return 1;
    return 0;
}

// Independent route to the same numbers. The q-th exterior power of the
// Euler sequence, twisted by O(m), has exact global sections for m >= 1:
//   h^0(Omega^q(m)) = binom(n+1, q) h^0(O(m-q)) - h^0(Omega^{q-1}(m)).
// Outside m >= 1 the H^1 vanishing that closes the recursion can fail, so
// that range is rejected rather than silently extrapolated.
inline Int euler_sequence_oracle(int n, int q, int m) {
    if (n < 1) throw std::invalid_argument("euler_sequence_oracle: n must be positive");
    if (q < 0 || q > n) throw std::invalid_argument("euler_sequence_oracle: q outside [0, n]");
    if (m < 1) throw std::domain_error("euler_sequence_oracle: recursion valid only for m >= 1");
    const auto h0_line = [n](int twist) -> Int {
        if (twist < 0) return 0;
        return binomial(twist + n, n);
    };
    Int h = h0_line(m); // q = 0
    for (int j = 1; j <= q; ++j) h = binomial(n + 1, j) * h0_line(m - j) - h;
    return h;
}

struct CohomologyTable {
    int n;
    int m;
    std::vector<Int> h; // h^0 .. h^{2n}
};

// h^i(X, mD) for an abelian fibration X -> P^n with D the pulled-back
// hyperplane: the Leray identification gives h^i = h^0(P^n, Omega^i(m)) for
// i <= n and 0 above the base dimension.
inline CohomologyTable abelian_fibration_table(int n, int m) {
    if (n < 1 || n > 8) throw std::invalid_argument("abelian_fibration_table: n outside [1, 8]");
    if (m < 1) throw std::invalid_argument("abelian_fibration_table: m must be positive");
    CohomologyTable t;
    t.n = n;
    t.m = m;
    t.h.assign(static_cast<std::size_t>(2 * n + 1), Int(0));
    for (int i = 0; i <= n; ++i) t.h[static_cast<std::size_t>(i)] = bott_h0_omega(n, i, m);
    return t;
}

// Alternating sum of the table; equals n + 1 for every m >= 1.
inline Int euler_characteristic(int n, int m) {
    const CohomologyTable t = abelian_fibration_table(n, m);
    Int chi = 0;
    int sign = 1;
    for (const Int& hi : t.h) {
        chi += sign * hi;
        sign = -sign;
    }
    return chi;
}

} // namespace hkll
