#pragma once

// Weierstrass data of an elliptically fibred K3 surface
//   y^2 z = 4 x^3 - a x z^2 - b z^3,  a in O(8), b in O(12),
// with the degree-24 discriminant  delta = a^3 - 27 b^2, exact singular-fibre
// accounting on P^1 (point at infinity included via homogenization), the
// rescaling action lambda.(a,b) = (lambda^4 a, lambda^6 b), and the moduli
// dimension ledger.

#include "hkll/polynomial.hpp"

#include <optional>

namespace hkll {

// Homogeneous form of fixed degree on P^1. coeffs[i] multiplies t^i s^(d-i);
// setting s = 1 dehomogenizes to a polynomial in the affine coordinate t.
struct BinaryForm {
    int degree;
    RatVec coeffs;

    BinaryForm(int d, RatVec c) : degree(d), coeffs(std::move(c)) {
        if (degree < 0) throw std::invalid_argument("BinaryForm: negative degree");
        if (coeffs.size() != static_cast<std::size_t>(degree) + 1)
            throw std::invalid_argument("BinaryForm: expected degree+1 coefficients");
    }

    static BinaryForm from_poly(const RatPoly& p, int degree) {
        if (p.degree() > degree) throw std::invalid_argument("BinaryForm: polynomial degree too large");
        RatVec c(static_cast<std::size_t>(degree) + 1, Rat(0));
        for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
        return BinaryForm{degree, std::move(c)};
    }

    bool is_zero() const {
        for (const Rat& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    RatPoly dehomogenize() const { return RatPoly{coeffs}; }

    // Vanishing order at the point at infinity (s = 0); the form must be nonzero.
    int ord_at_infinity() const {
        const RatPoly p = dehomogenize();
        if (p.is_zero()) throw std::invalid_argument("BinaryForm: infinite order of zero form");
        return degree - p.degree();
    }

    BinaryForm scaled(const Rat& k) const {
        RatVec c = coeffs;
        for (Rat& x : c) x *= k;
        return BinaryForm{degree, std::move(c)};
    }

    bool operator==(const BinaryForm& o) const { return degree == o.degree && coeffs == o.coeffs; }
};

class WeierstrassModel {
public:
    WeierstrassModel(BinaryForm a, BinaryForm b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.degree != 8) throw std::invalid_argument("WeierstrassModel: a must have degree 8");
        if (b_.degree != 12) throw std::invalid_argument("WeierstrassModel: b must have degree 12");
        if (a_.is_zero() && b_.is_zero())
            throw std::invalid_argument("WeierstrassModel: a and b both vanish");
        minimal_ = compute_minimal();
    }

    const BinaryForm& a() const noexcept { return a_; }
    const BinaryForm& b() const noexcept { return b_; }

    // False when some point of P^1 has ord(a) >= 4 and ord(b) >= 6
    // simultaneously (the model admits a smaller-twist rewrite there).
    bool minimal() const noexcept { return minimal_; }

private:
    bool compute_minimal() const {
        const RatPoly pa = a_.dehomogenize();
        const RatPoly pb = b_.dehomogenize();
        // affine locus with ord(a) >= 4: common roots of a and its first three
        // derivatives; similarly ord(b) >= 6 with five derivatives.
        const auto deep_vanishing = [](const RatPoly& p, int order) -> std::optional<RatPoly> {
            if (p.is_zero()) return std::nullopt; // vanishes to any order everywhere
            RatPoly g = p;
            RatPoly d = p;
            for (int i = 1; i < order; ++i) {
                d = d.derivative();
                g = poly_gcd(g, d);
            }
            return g;
        };
        const auto ga = deep_vanishing(pa, 4);
        const auto gb = deep_vanishing(pb, 6);
        bool affine_bad;
        if (!ga && !gb) affine_bad = true; // unreachable: both forms zero is rejected
        else if (!ga) affine_bad = gb->degree() > 0;
        else if (!gb) affine_bad = ga->degree() > 0;
        else affine_bad = poly_gcd(*ga, *gb).degree() > 0;

        const bool inf_a = a_.is_zero() || a_.ord_at_infinity() >= 4;
        const bool inf_b = b_.is_zero() || b_.ord_at_infinity() >= 6;
        return !(affine_bad || (inf_a && inf_b));
    }

    BinaryForm a_;
    BinaryForm b_;
    bool minimal_ = true;
};

// delta = a^3 - 27 b^2 as a degree-24 form. Identically zero means every
// fibre is singular and the data does not present a K3 surface.
inline BinaryForm discriminant(const WeierstrassModel& w) {
    const RatPoly pa = w.a().dehomogenize();
    const RatPoly pb = w.b().dehomogenize();
    const RatPoly delta = pa * pa * pa - (pb * pb).scaled(Rat(27));
    if (delta.is_zero())
        throw std::domain_error("discriminant: a^3 = 27 b^2, fibration singular everywhere, not a K3 model");
    return BinaryForm::from_poly(delta, 24);
}

enum class FibreType { I1, II, NonGeneric };

inline const char* fibre_type_name(FibreType t) {
    switch (t) {
        case FibreType::I1: return "I1";
        case FibreType::II: return "II";
        default: return "non-generic";
    }
}

// One location block of the singular-fibre divisor: either a single rational
// point (factor t - r, or the point at infinity) or a squarefree factor
// grouping Galois-conjugate irrational roots of the same multiplicity and type.
struct FibreBlock {
    bool at_infinity = false;
    RatPoly factor;   // monic; unused when at_infinity
    int multiplicity = 0;
    int root_count = 0;
    FibreType type = FibreType::NonGeneric;
};

namespace detail {

inline FibreType classify_block(int multiplicity, bool a_vanishes, bool b_vanishes) {
    if (multiplicity == 1 && !a_vanishes) return FibreType::I1;
    if (multiplicity == 2 && a_vanishes && b_vanishes) return FibreType::II;
    return FibreType::NonGeneric;
}

} // namespace detail

// Exact singular-fibre table. Multiplicities over all blocks sum to 24.
// Rational roots are split off individually; what remains of each squarefree
// layer is reported blockwise, subdivided so that the vanishing pattern of a
// and b (hence the fibre type) is constant on each block.
inline std::vector<FibreBlock> fibre_report(const WeierstrassModel& w) {
    const BinaryForm delta = discriminant(w);
    const RatPoly pd = delta.dehomogenize();
    const RatPoly pa = w.a().dehomogenize();
    const RatPoly pb = w.b().dehomogenize();

    std::vector<FibreBlock> blocks;
    const auto push_block = [&blocks](RatPoly factor, int mult, FibreType type) {
        FibreBlock blk;
        blk.factor = std::move(factor);
        blk.multiplicity = mult;
        blk.root_count = blk.factor.degree();
        blk.type = type;
        blocks.push_back(std::move(blk));
    };

    for (const auto& [layer, mult] : squarefree_decomposition(pd)) {
        RatPoly rest = layer;
        for (const Rat& r : rational_roots_squarefree(layer)) {
            const bool va = pa.is_zero() || pa.eval(r) == 0;
            const bool vb = pb.is_zero() || pb.eval(r) == 0;
            const RatPoly lin{RatVec{-r, Rat(1)}};
            rest = rest.exact_div(lin);
            push_block(lin, mult, detail::classify_block(mult, va, vb));
        }
        if (rest.degree() < 1) continue;
        if (mult == 1) {
            // a simple root of delta with a = 0 would force b = 0 there and
            // raise the multiplicity, so the whole residue is nodal
            push_block(rest, mult, FibreType::I1);
        } else if (mult == 2) {
            const RatPoly ga = pa.is_zero() ? rest : poly_gcd(rest, pa);
            const RatPoly gab = pb.is_zero() ? ga : poly_gcd(ga, pb);
            if (gab.degree() > 0) push_block(gab, mult, FibreType::II);
            const RatPoly other = rest.exact_div(gab.degree() > 0 ? gab : RatPoly::constant(Rat(1)));
            if (other.degree() > 0) push_block(other, mult, FibreType::NonGeneric);
        } else {
            push_block(rest, mult, FibreType::NonGeneric);
        }
    }

    const int ord_inf = delta.ord_at_infinity();
    if (ord_inf > 0) {
        const bool va = w.a().is_zero() || w.a().ord_at_infinity() >= 1;
        const bool vb = w.b().is_zero() || w.b().ord_at_infinity() >= 1;
        FibreBlock blk;
        blk.at_infinity = true;
        blk.multiplicity = ord_inf;
        blk.root_count = 1;
        blk.type = detail::classify_block(ord_inf, va, vb);
        blocks.push_back(std::move(blk));
    }

    std::sort(blocks.begin(), blocks.end(), [](const FibreBlock& x, const FibreBlock& y) {
        if (x.at_infinity != y.at_infinity) return !x.at_infinity;
        if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
        if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
        return x.factor.str() < y.factor.str();
    });
    return blocks;
}

inline WeierstrassModel cstar_act(const WeierstrassModel& w, const Rat& lambda) {
    if (lambda == 0) throw std::invalid_argument("cstar_act: lambda must be nonzero");
    return WeierstrassModel{w.a().scaled(rat_pow(lambda, 4)), w.b().scaled(rat_pow(lambda, 6))};
}

namespace detail {

// Coefficientwise ratio of two forms with matching zero pattern.
inline std::optional<Rat> form_ratio(const BinaryForm& from, const BinaryForm& to) {
    std::optional<Rat> ratio;
    for (std::size_t i = 0; i < from.coeffs.size(); ++i) {
        const bool z1 = from.coeffs[i] == 0;
        const bool z2 = to.coeffs[i] == 0;
        if (z1 != z2) return std::nullopt;
        if (z1) continue;
        const Rat r = to.coeffs[i] / from.coeffs[i];
        if (!ratio) ratio = r;
        else if (*ratio != r) return std::nullopt;
    }
    return ratio; // nullopt never reached here: a zero form yields ratio unset
}

} // namespace detail

// Same orbit of the rescaling action over Q: (a2, b2) = (l^4 a1, l^6 b1) for
// some nonzero rational l. Decided by exact coefficient ratios and rational
// perfect-power tests.
inline bool cstar_equivalent(const WeierstrassModel& w1, const WeierstrassModel& w2) {
    const bool a_zero = w1.a().is_zero();
    const bool b_zero = w1.b().is_zero();
    if (a_zero != w2.a().is_zero() || b_zero != w2.b().is_zero()) return false;

    std::optional<Rat> ra, rb;
    if (!a_zero) {
        ra = detail::form_ratio(w1.a(), w2.a());
        if (!ra || *ra <= 0) return false;
    }
    if (!b_zero) {
        rb = detail::form_ratio(w1.b(), w2.b());
        if (!rb || *rb <= 0) return false;
    }
    if (ra && rb) {
        const Rat s = *rb / *ra; // forced value of lambda^2
        if (s <= 0) return false;
        if (s * s != *ra || s * s * s != *rb) return false;
        return exact_rational_kth_root_positive(s, 2).has_value();
    }
    if (ra) return exact_rational_kth_root_positive(*ra, 4).has_value();
    return exact_rational_kth_root_positive(*rb, 6).has_value();
}

struct ModuliAudit {
    int a_coefficients = 9;     // sections of O(8)
    int b_coefficients = 13;    // sections of O(12)
    int rescaling = 1;          // the C* action on (a, b)
    int base_automorphisms = 3; // PGL(2) on the base P^1
    int total = 18;
};

// 9 + 13 - 1 - 3 = 18 moduli of elliptic K3 surfaces with a section.
inline ModuliAudit moduli_dimension_audit() {
    ModuliAudit m;
    if (m.a_coefficients + m.b_coefficients - m.rescaling - m.base_automorphisms != m.total)
        throw std::logic_error("moduli_dimension_audit: ledger out of balance");
    return m;
}

} // namespace hkll
