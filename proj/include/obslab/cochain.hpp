#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obslab/exact.hpp"
#include "obslab/module.hpp"

namespace obslab {

// Normalized group cochain with coefficients in a flow module. The group is
// the flow's acting group; values are module elements stored in a dense table
// indexed by argument tuples (row-major, first argument most significant),
// rank entries per tuple. Degree 0 is a single module element. "Normalized"
// means the value is zero whenever any argument is the identity; all
// operations below assume and preserve normalization, and the checks report
// offending tuples.
struct Cochain {
    FlowPtr flow;
    int degree = 0;
    Vec table;

    GroupPtr group() const { return flow->action.group; }
    int order() const { return flow->action.group->order(); }
    int rank() const { return flow->mod.rank(); }

    i64 tuples() const;                        // order^degree
    i64 flat_index(const std::vector<int>& args) const;
    Vec at(const std::vector<int>& args) const;
    void set(const std::vector<int>& args, const Vec& v);
};

Cochain make_cochain(FlowPtr flow, int degree);  // zero cochain
bool same_context(const Cochain& a, const Cochain& b);
Cochain cochain_add(const Cochain& a, const Cochain& b);
Cochain cochain_sub(const Cochain& a, const Cochain& b);
Cochain cochain_neg(const Cochain& a);
bool is_zero(const Cochain& a);

// Twisted coboundary (degree <= 2 input):
// (d c)(g0,...,gn) = alpha_{g0} c(g1,...,gn)
//                    + sum_i (-1)^{i+1} c(..., g_i g_{i+1}, ...)
//                    + (-1)^{n+1} c(g0,...,g_{n-1}).
Cochain coboundary(const Cochain& c);

// Evaluate the coboundary at one tuple without materializing the result
// (works for any input degree <= 3).
Vec coboundary_at(const Cochain& c, const std::vector<int>& args);

struct CocycleCheck {
    bool ok = true;
    std::string reason;        // "not-normalized" or "cocycle-identity"
    std::vector<int> tuple;    // first failing tuple
    int component = -1;
};

CocycleCheck check_normalized(const Cochain& c);
// Normalization plus the cocycle identity over every tuple (naive full scan).
CocycleCheck is_cocycle(const Cochain& c);

// ---- free-coordinate packing ---------------------------------------------------
// Free coordinates of a normalized degree-n cochain: tuples with no identity
// argument, (order-1)^n of them, each with `rank` components. These helpers
// convert between dense tables and free-coordinate vectors for the solvers.

i64 free_count(int order, int degree, int rank);
Vec to_free_coords(const Cochain& c);
Cochain from_free_coords(FlowPtr flow, int degree, const Vec& coords);
// Column moduli for the free coordinates (module moduli repeated per tuple).
Vec free_col_mods(const FlowModule& f, int order, int degree);

// ---- coboundary solver ------------------------------------------------------------
// Factors the linear system "d(witness) = target" once for a given degree; a
// solve is then cheap, so one solver serves many right-hand sides of the same
// shape. Targets must be normalized degree-`degree` cochains; witnesses are
// normalized degree-(degree-1) cochains, lexicographically minimal in
// free-coordinate order.
class CoboundarySolver {
public:
    CoboundarySolver(FlowPtr flow, int degree);

    std::optional<Cochain> solve(const Cochain& target) const;
    const CongruenceSolver& system() const { return *solver_; }
    int degree() const { return degree_; }
    FlowPtr flow() const { return flow_; }

private:
    FlowPtr flow_;
    int degree_;
    std::shared_ptr<CongruenceSolver> solver_;
};

// One-shot convenience: requires the input to pass is_cocycle (NotACocycle
// otherwise), then solves. Returns the witness or nullopt.
std::optional<Cochain> is_coboundary(const Cochain& c);

// ---- cohomology -------------------------------------------------------------------

struct CohomologyGroup {
    std::vector<i64> factors;     // invariant factors > 1
    std::vector<Cochain> basis;   // representative cocycle per factor (re-verified)
    LatticeQuotient quot;         // cocycle lattice / coboundary lattice
    FlowPtr flow;
    int degree = 0;

    i64 order() const;
    // Class coordinates of a cocycle (free-coordinate vector must lie in the
    // cocycle lattice).
    Vec class_coords(const Cochain& c) const;
};

CohomologyGroup cohomology(FlowPtr flow, int degree);

// All cocycle class representatives (one per class), enumerated
// deterministically from the invariant-factor presentation.
std::vector<Cochain> class_representatives(const CohomologyGroup& h);

// ---- brute-force oracle -------------------------------------------------------------
// Enumerates every normalized degree-n table in odometer order and keeps the
// ones passing the naive full cocycle scan. Exponential; budget-guarded.
std::vector<Cochain> enumerate_cocycles(FlowPtr flow, int degree);

// Naive coboundary test: enumerate all degree-(n-1) tables and compare
// coboundaries directly. Returns the first witness in enumeration order.
std::optional<Cochain> oracle_is_coboundary(const Cochain& c);

// Every cocycle table of the given degree, enumerated exactly from the
// kernel lattice of the next coboundary map (no odometer over tables; the
// count is |Z^degree| itself). Budget-guarded.
std::vector<Cochain> lattice_cocycles(FlowPtr flow, int degree);

// Pullback along a quotient projection: (pullback c)(g,...) = c(proj g, ...).
// `target_flow` must be the pullback flow on the parent group.
Cochain pullback_cochain(const Cochain& c, const QuotientPtr& qd, FlowPtr target_flow);

}  // namespace obslab
