#pragma once

// Smith normal form over Z with both transform matrices, for solving integer
// linear systems modulo N and over the rationals mod 1.

#include "hkll/numeric.hpp"

#include <tuple>

namespace hkll {

struct SmithResult {
    IntMat u; // rows x rows, unimodular
    IntMat d; // rows x cols, diagonal, d[0][0] | d[1][1] | ...
    IntMat v; // cols x cols, unimodular
};

namespace detail {

inline IntMat identity_matrix(std::size_t n) {
    IntMat m(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

} // namespace detail

// Row and column reduction with transform tracking; u * input * v == d.
inline SmithResult smith_normal_form(IntMat m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    SmithResult res;
    res.u = detail::identity_matrix(rows);
    res.v = detail::identity_matrix(cols);

    const auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(m[a], m[b]);
        std::swap(res.u[a], res.u[b]);
    };
    const auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(res.v[i][a], res.v[i][b]);
    };
    const auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < cols; ++j) m[dst][j] += f * m[src][j];
        for (std::size_t j = 0; j < rows; ++j) res.u[dst][j] += f * res.u[src][j];
    };
    const auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < rows; ++i) m[i][dst] += f * m[i][src];
        for (std::size_t i = 0; i < cols; ++i) res.v[i][dst] += f * res.v[i][src];
    };
    const auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
        for (std::size_t j = 0; j < rows; ++j) res.u[r][j] = -res.u[r][j];
    };

    const std::size_t steps = rows < cols ? rows : cols;
    for (std::size_t t = 0; t < steps; ++t) {
        // pivot: entry of least magnitude in the remaining block
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                if (!found || boost::multiprecision::abs(m[i][j]) < boost::multiprecision::abs(m[pi][pj])) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                const Int q = m[i][t] / m[t][t];
                add_row(i, t, -q);
                if (m[i][t] != 0) {
                    swap_rows(t, i); // remainder is strictly smaller: descend
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                const Int q = m[t][j] / m[t][t];
                add_col(j, t, -q);
                if (m[t][j] != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility of the remaining block by the pivot
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols && fixed; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        add_row(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (m[t][t] < 0) negate_row(t);
    }
    res.d = std::move(m);
    return res;
}

// Solution (g, x, y) of a*x + b*y = g = gcd(a, b), g >= 0.
inline std::tuple<Int, Int, Int> extended_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const Int q = a / b;
        a -= q * b;
        std::swap(a, b);
        x0 -= q * x1;
        std::swap(x0, x1);
        y0 -= q * y1;
        std::swap(y0, y1);
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

} // namespace hkll
