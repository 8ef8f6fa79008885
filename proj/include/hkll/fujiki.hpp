#pragma once

// Top self-intersection numbers on irreducible holomorphic symplectic
// manifolds via the Fujiki relation, the two standard deformation families,
// and polarization bookkeeping for abelian fibrations.

#include "hkll/lattice.hpp"
#include "hkll/numeric.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace hkll {

// A manifold of dimension 2n with Fujiki constant c: the degree-2n form
// integrates as  D^{2n} = c * q(D)^n.
struct FujikiData {
    int n;
    Rat c;

    FujikiData(int half_dim, Rat constant) : n(half_dim), c(std::move(constant)) {
        if (n < 1) throw std::invalid_argument("FujikiData: n must be positive");
        if (c <= 0) throw std::invalid_argument("FujikiData: Fujiki constant must be positive");
    }
};

inline Rat fujiki_top_intersection(const FujikiData& data, const Rat& q_d) {
    return data.c * rat_pow(q_d, static_cast<unsigned>(data.n));
}

// (2n)! / (2^n n!), the constant of the length-n Hilbert scheme family.
inline Rat fujiki_constant_hilb(int n) {
    if (n < 1) throw std::invalid_argument("fujiki_constant_hilb: n must be positive");
    const auto u = static_cast<unsigned>(n);
    return Rat(factorial(2 * u)) / Rat(int_pow(2, u) * factorial(u));
}

// (n+1) (2n)! / (2^n n!), the constant of the generalized Kummer family.
inline Rat fujiki_constant_kummer(int n) {
    if (n < 1) throw std::invalid_argument("fujiki_constant_kummer: n must be positive");
    return Rat(n + 1) * fujiki_constant_hilb(n);
}

// E^n D^n for isotropic D: polarizing the Fujiki relation gives
// E^n D^n = (2^n (n!)^2 / (2n)!) * c * q(E, D)^n.
inline Rat mixed_intersection(const FujikiData& data, const Rat& q_ed) {
    const auto u = static_cast<unsigned>(data.n);
    const Rat coeff = Rat(int_pow(2, u) * factorial(u) * factorial(u)) / Rat(factorial(2 * u));
    return coeff * data.c * rat_pow(q_ed, u);
}

struct PrincipalPolarizationCheck {
    bool possible;
    Int fibre_integral; // (n+1)! * q(E,D)^n, the restricted top power on a fibre
    Int required;       // n!, what a principal polarization needs
};

// On a generalized Kummer fibration the polarization restricted to an
// n-dimensional fibre integrates to (n+1)! q^n; a principal one needs n!.
inline PrincipalPolarizationCheck principal_polarization_possible(int n, const Int& q_ed) {
    if (n < 1) throw std::invalid_argument("principal_polarization_possible: n must be positive");
    if (q_ed < 1) throw std::invalid_argument("principal_polarization_possible: q must be positive");
    const auto u = static_cast<unsigned>(n);
    PrincipalPolarizationCheck out;
    out.fibre_integral = factorial(u + 1) * int_pow(q_ed, u);
    out.required = factorial(u);
    out.possible = out.fibre_integral == out.required;
    return out;
}

struct PolarizationType {
    Int d1, d2;                              // the type (d1, d2) on an abelian surface fibre
    std::vector<Int> fibre_type;             // (1, ..., 1, g+1), length g
    std::vector<std::pair<Int, Int>> pairs;  // all (d1, d2) with d1 | d2, d1*d2 = g+1
};

// A genus-g curve class of square 2g-2 induces a polarization with
// d1*d2 = g+1 on the associated abelian surface; the pull-back convention
// fixes (1, g+1), and the fibres of the g-fold fibration carry
// (1, ..., 1, g+1).
inline PolarizationType polarization_type_from_genus(const Int& g) {
    if (g < 2) throw std::invalid_argument("polarization_type_from_genus: genus must be at least 2");
    PolarizationType out;
    out.d1 = 1;
    out.d2 = g + 1;
    const auto len = g.convert_to<std::size_t>();
    out.fibre_type.assign(len, Int(1));
    out.fibre_type.back() = g + 1;
    const Int product = g + 1;
    for (const Int& d : positive_divisors(product)) {
        const Int e = product / d;
        if (d <= e && e % d == 0) out.pairs.emplace_back(d, e);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

// Numerical Iitaka dimension of a nef divisor class: 0 when trivial, n when
// isotropic, 2n otherwise.
inline int numerical_iitaka_dimension(const FujikiData& data, const Rat& q_d, bool is_trivial) {
    if (is_trivial) return 0;
    if (q_d < 0) throw std::invalid_argument("numerical_iitaka_dimension: nef class needs q >= 0");
    return q_d == 0 ? data.n : 2 * data.n;
}

// A Beauville-Bogomolov class known through its square, optionally carrying
// the lattice vector it came from; the two must agree when both are present.
class BBClass {
public:
    static BBClass from_value(Rat q_value) { return BBClass{std::move(q_value), std::nullopt}; }

    static BBClass from_vector(LatticeVector v) {
        Rat q{v.square()};
        return BBClass{std::move(q), std::move(v)};
    }

    const Rat& q() const noexcept { return q_; }
    const std::optional<LatticeVector>& source() const noexcept { return source_; }

private:
    BBClass(Rat q_value, std::optional<LatticeVector> src)
        : q_(std::move(q_value)), source_(std::move(src)) {
        if (source_ && Rat(source_->square()) != q_)
            throw std::invalid_argument("BBClass: stored square differs from the vector's square");
    }

    Rat q_;
    std::optional<LatticeVector> source_;
};

} // namespace hkll
