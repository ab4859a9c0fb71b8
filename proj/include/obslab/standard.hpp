#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "obslab/cochain.hpp"
#include "obslab/module.hpp"

namespace obslab {

// 2-cochains on the flow extension H x Z whose flow dependence factors through
// a 1-cochain: the full table is m((g,s),(h,t)) = muH(g,h) + alpha_g([s] d(h)),
// where [s] is the flow sum of the flow automorphism theta.
struct StandardTwo {
    FlowPtr flow;  // flow on H (flow->group() is H)
    Cochain muH;   // degree 2 on H
    Vec d;         // |H| x rank, identity block zero

    const FiniteGroup& group() const { return *flow->group(); }
    int order() const { return flow->group()->order(); }
    int rank() const { return flow->rank(); }
    Vec d_at(int h) const;
};

// First violated condition, with the witnessing tuple of group elements.
struct StandardCheck {
    bool ok = true;
    std::string condition;
    std::vector<int> tuple;
};

StandardCheck check_standard_two(const StandardTwo& m);
// Validates; throws NotACocycle naming the violated condition.
StandardTwo make_standard_two(FlowPtr flow, Cochain muH, Vec d);
StandardTwo standard_two_zero(FlowPtr flow);
// Full table value at ((g,s),(h,t)).
Vec expand_two(const StandardTwo& m, int g, i64 s, int h, i64 t);

// 3-cochains on Q x Z of the analogous shape:
// c((p,s),(q,t),(r,u)) = cQ(p,q,r) + alpha_p([s] d1(q,r)).
struct StandardThree {
    FlowPtr flow;  // flow on Q
    Cochain cQ;    // degree 3 on Q
    Vec d1;        // |Q| x |Q| x rank, normalized

    const FiniteGroup& group() const { return *flow->group(); }
    int order() const { return flow->group()->order(); }
    int rank() const { return flow->rank(); }
    Vec d1_at(int q, int r) const;
};

StandardCheck check_standard_three(const StandardThree& c);
StandardThree make_standard_three(FlowPtr flow, Cochain cQ, Vec d1);
StandardThree st3_zero(FlowPtr flow);
Vec expand_three(const StandardThree& c, int p, i64 s, int q, i64 t, int r, i64 u);

StandardThree st3_add(const StandardThree& a, const StandardThree& b);
StandardThree st3_sub(const StandardThree& a, const StandardThree& b);
bool st3_is_zero(const StandardThree& c);

// Coboundary on the flow extension of the pair-shaped 2-cochain
// f((p,s),(q,t)) = a(p,q) + alpha_p([s] b(q)): the result is standard with
// cQ-part = d_Q a and d1-part = (theta-1)a - d_Q b.
StandardThree standard_coboundary_of_pair(const Cochain& a, const Vec& b);
// The distinguished coboundary group: flow-constant cochains only (b = 0).
StandardThree standard_coboundary(const Cochain& a);

// Joint solver for membership in the distinguished coboundary group:
// find a normalized a on Q with cQ = d_Q a and d1 = (theta-1)a.
// Factored once; solve() reuses the factorization with a fresh right side.
class StandardCoboundarySolver {
public:
    explicit StandardCoboundarySolver(FlowPtr flow);
    // Witness a (degree 2 on Q), re-verified before returning.
    std::optional<Cochain> solve(const StandardThree& c) const;
    const FlowPtr& flow() const { return flow_; }

private:
    FlowPtr flow_;
    std::shared_ptr<const CongruenceSolver> solver_;
};

std::optional<Cochain> is_standard_coboundary(const StandardThree& c);

struct H3sEquality {
    bool equal = false;
    std::optional<Cochain> witness;  // a with difference = standard coboundary of a
};
H3sEquality h3s_class_equal(const StandardThree& a, const StandardThree& b);

// Dense 2-cochain on (H x S)^2 for a symmetric window S = {-B..B} of the flow
// group, used as the front door for standardization.
struct WindowTwo {
    FlowPtr flow;
    int window = 0;  // B
    Vec table;       // indexed by ((h,s),(k,t)) row-major, rank-sized blocks

    int span() const { return 2 * window + 1; }
    int points() const { return flow->group()->order() * span(); }
    int point_index(int h, i64 s) const;
    Vec at(int h, i64 s, int k, i64 t) const;
};

WindowTwo make_window_two(FlowPtr flow, int window, Vec table);
// The window table of a standard 2-cochain (test/CLI utility).
WindowTwo window_from_standard(const StandardTwo& m, int window);

struct StandardizeResult {
    StandardTwo two;
    // 1-cochain w on the window points with (d w) = m - expand(two) on every
    // in-window pair; empty means the input was already standard on the nose.
    Vec witness;
    int window = 0;
};

// Reads off (muH, d) from a window 2-cocycle that vanishes on the pure flow
// block, and produces the cobounding witness for the difference.
StandardizeResult standardize_two(const WindowTwo& m);

// All valid StandardTwo values over the flow (exact lattice enumeration).
std::vector<StandardTwo> enumerate_standard_twos(FlowPtr flow);

}  // namespace obslab
