#pragma once

// Reflections in square -2 classes and the greedy reflection walk that makes
// a divisor class nonnegative against a fixed root list ("nef-ification").

#include "hkll/lattice.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace hkll {

// D |-> D + pair(D, A) * A. Involution; preserves squares; fixes the
// hyperplane orthogonal to A.
inline LatticeVector reflect(const LatticeVector& d, const LatticeVector& root) {
    if (root.square() != -2)
        throw std::invalid_argument("reflect: root must have square -2");
    return d + root.scaled(d.pair(root));
}

struct ReflectionStep {
    std::size_t root_index;
    IntVec before;
    IntVec after;
    Int ample_pairing_before;
    Int ample_pairing_after;
};

struct ReflectionTrace {
    IntVec initial;
    IntVec result;
    Int initial_ample_pairing;
    Int final_ample_pairing;
    std::vector<ReflectionStep> steps;
};

// Walk data: a class d to correct, a finite root list (all of square -2,
// each pairing positively with the ample class), and an ample class of
// positive square that also pairs positively with d.
class ReflectionProblem {
public:
    ReflectionProblem(LatticePtr lattice, IntVec d, std::vector<IntVec> roots, IntVec ample)
        : lattice_(std::move(lattice)),
          d_(std::move(d)),
          roots_(std::move(roots)),
          ample_(std::move(ample)) {
        if (!lattice_) throw std::invalid_argument("ReflectionProblem: null lattice");
        const auto rank = static_cast<std::size_t>(lattice_->rank());
        if (d_.size() != rank || ample_.size() != rank)
            throw std::invalid_argument("ReflectionProblem: vector length differs from rank");
        if (lattice_->square(ample_) <= 0)
            throw std::invalid_argument("ReflectionProblem: ample class must have positive square");
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            if (roots_[i].size() != rank)
                throw std::invalid_argument("ReflectionProblem: root length differs from rank");
            if (lattice_->square(roots_[i]) != -2)
                throw std::invalid_argument("ReflectionProblem: every root must have square -2");
            if (lattice_->pair(roots_[i], ample_) <= 0)
                throw std::invalid_argument(
                    "ReflectionProblem: every root must pair positively with the ample class");
        }
        if (lattice_->pair(d_, ample_) <= 0)
            throw std::invalid_argument("ReflectionProblem: d must pair positively with the ample class");
    }

    const LatticePtr& lattice() const noexcept { return lattice_; }
    const IntVec& d() const noexcept { return d_; }
    const std::vector<IntVec>& roots() const noexcept { return roots_; }
    const IntVec& ample() const noexcept { return ample_; }

private:
    LatticePtr lattice_;
    IntVec d_;
    std::vector<IntVec> roots_;
    IntVec ample_;
};

struct nefify_budget_exhausted : std::runtime_error {
    nefify_budget_exhausted(std::string msg, ReflectionTrace trace)
        : std::runtime_error(std::move(msg)), partial(std::move(trace)) {}
    ReflectionTrace partial;
};

// Repeatedly reflect in the lowest-index root pairing negatively until none
// does. Each step strictly decreases pair(D_k, ample); when the walk stays in
// the positive cone of a Lorentzian span (the geometric situation) that
// sequence is positive, so at most pair(d, ample) steps can occur. The step
// budget defaults to exactly that bound.
inline ReflectionTrace nefify(const ReflectionProblem& problem,
                              std::optional<std::uint64_t> max_steps = std::nullopt) {
    const IntegralLattice& lat = *problem.lattice();
    ReflectionTrace trace;
    trace.initial = problem.d();
    trace.initial_ample_pairing = lat.pair(problem.d(), problem.ample());

    std::uint64_t budget;
    if (max_steps) {
        budget = *max_steps;
    } else {
        const Int& p = trace.initial_ample_pairing; // positive by problem invariant
        budget = p.convert_to<std::uint64_t>();
    }

    IntVec cur = problem.d();
    for (;;) {
        std::optional<std::size_t> neg;
        for (std::size_t i = 0; i < problem.roots().size(); ++i) {
            if (lat.pair(cur, problem.roots()[i]) < 0) { neg = i; break; }
        }
        if (!neg) break;
        if (trace.steps.size() >= budget) {
            trace.result = cur;
            trace.final_ample_pairing = lat.pair(cur, problem.ample());
            std::ostringstream msg;
            msg << "nefify: step budget " << budget << " exhausted after "
                << trace.steps.size() << " reflections";
            throw nefify_budget_exhausted(msg.str(), std::move(trace));
        }
        const IntVec& a = problem.roots()[*neg];
        const Int coeff = lat.pair(cur, a);
        ReflectionStep step;
        step.root_index = *neg;
        step.before = cur;
        step.ample_pairing_before = lat.pair(cur, problem.ample());
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += coeff * a[i];
        step.after = cur;
        step.ample_pairing_after = lat.pair(cur, problem.ample());
        trace.steps.push_back(std::move(step));
    }
    trace.result = cur;
    trace.final_ample_pairing = lat.pair(cur, problem.ample());
    return trace;
}

} // namespace hkll
