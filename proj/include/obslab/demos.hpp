#pragma once

#include <optional>
#include <vector>

#include "obslab/hjr.hpp"

namespace obslab {

// A discrete Heisenberg group of modulus k with its center as distinguished
// subgroup, a flow-scaled character on the center, and the modular
// obstruction the connecting map produces from it: the pure cocycle part
// vanishes and d1(q, r) = (a b' mod k) * w for q = (a, b), r = (a', b').
struct HeisenbergDemo {
    int k = 0;
    Vec w;                        // order-k representative of the flow class
    CharacteristicCocycle chi;    // mu = 0, lamH = 0, lamT(m) = m * w
    ObstructionCocycleData data;  // connecting-map output over the center tower

    const ModularObstruction& ob() const { return data.ob; }
};

// pre: flow's group is the modulus-k Heisenberg group (order k^3, the
// standard encoding) with the center acting trivially on coefficients;
// k * [w] must vanish in the flow cohomology group. A representative of [w]
// with exact additive order dividing k is required and searched for by linear
// solve when w itself does not qualify.
// errors: IncompatibleModulus when k * [w] != 0 or no exact-order
// representative exists; ContextMismatch when the group is not Heisenberg.
HeisenbergDemo build_heisenberg_demo(int k, FlowPtr flow, const Vec& w);

// Outcome of the exhaustive splitting scan.
struct SplittingResult {
    bool split = false;
    Vec b;                     // scanned 1-cochain, |Q| blocks, identity zero
    std::optional<Cochain> f;  // degree-2 witness for the perturbed pair
    i64 candidates = 0;        // number of b examined
    i64 space = 0;             // full search-space size

    bool exhausted() const { return candidates == space; }
};

// Scans every normalized 1-cochain b : Q -> A in lexicographic order and
// tests whether (cQ, d1 + dQ b) is a distinguished standard coboundary.
// On success returns the minimal such b together with the solver witness f,
// both re-verified exactly; otherwise the result certifies that the whole
// space was exhausted without a hit.
// errors: BudgetExceeded; NotACocycle when the input pair is malformed.
SplittingResult splitting_test(const ModularObstruction& ob);

// Tests whether the flow-class 2-cocycle (q, r) -> nu(n_N(q, r)) is a
// coboundary of a 1-cochain in class coordinates (exact linear solve over
// the class module with the induced quotient action). A split obstruction
// always passes this test; the converse is not asserted.
bool necessary_test(const ModularObstruction& ob);

// The alternating pairing (q, r) -> nu(n_N(q, r)) - nu(n_N(r, q)) in class
// coordinates. When the quotient acts trivially on classes, coboundaries are
// symmetric, so a nonzero value anywhere rules out the necessary condition.
struct AlternatingForm {
    int order = 0;           // |Q|
    int coords = 0;          // class-coordinate count
    std::vector<Vec> table;  // q * order + r -> class coordinates
    bool nonzero = false;

    const Vec& at(int q, int r) const {
        return table[static_cast<std::size_t>(q) * order + r];
    }
};
AlternatingForm antisymmetry_invariant(const ModularObstruction& ob);

}  // namespace obslab
