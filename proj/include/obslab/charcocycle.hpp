#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obslab/cochain.hpp"
#include "obslab/group.hpp"
#include "obslab/module.hpp"
#include "obslab/standard.hpp"

namespace obslab {

// Characteristic pair (lambda, mu) for a normal subgroup L of the flow's
// acting group H. mu is a 2-cocycle on L; lambda is stored in two parts fixed
// by the product decomposition (g,s) = (g,0)(1,s) of the flow extension:
//   lambda(m; g,s) = lamH(m;g) + alpha_g([s] lamT(g^-1 m g)).
// Tables are indexed by member positions within L (and group elements for the
// H argument). The setting requires L to act trivially on the coefficients.
struct CharacteristicCocycle {
    FlowPtr flow;        // flow on H
    NormalSubgroup sub;  // L, normal in H
    Vec mu;              // |L| x |L| x rank
    Vec lamH;            // |L| x |H| x rank
    Vec lamT;            // |L| x rank

    const FiniteGroup& group() const { return *flow->group(); }
    int order() const { return flow->group()->order(); }
    int lcount() const { return sub.size(); }
    int rank() const { return flow->rank(); }

    Vec mu_at(int mi, int ni) const;    // member positions
    Vec lamH_at(int mi, int g) const;   // member position, group element
    Vec lamT_at(int mi) const;
    // Full expansion at a group element m of L and any flow step.
    Vec lambda(int m, int g, i64 s) const;
};

struct CharCheck {
    bool ok = true;
    std::string axiom;
    std::vector<int> tuple;
};

// Operational validity: builds the twisted extension E = A x_mu L and checks
// that every lifted map T_(g,s) (flow steps 0 and 1) is an automorphism of E,
// that T restricts to the given action on A and to conjugation on L, that
// T_(1,0) is the identity, and that T respects products on the generators of
// the flow extension (H-pairs and the flow generator).
CharCheck check_char(const CharacteristicCocycle& chi);
// Flow-free part of the axioms only (flow step 0 throughout; lamT ignored).
CharCheck check_char_pure(const CharacteristicCocycle& chi);
// Brute-force cross-check: T_(g,s) . T_(h,t) = T_(gh,s+t) as permutations of
// E for every pair in (H x {0,1})^2, composing tables pointwise.
CharCheck oracle_check_char(const CharacteristicCocycle& chi);

// Validates via check_char; throws NotACocycle naming the failed axiom.
CharacteristicCocycle make_char(FlowPtr flow, NormalSubgroup sub, Vec mu, Vec lamH, Vec lamT);
CharacteristicCocycle char_zero(FlowPtr flow, NormalSubgroup sub);

// The extension A -> E -> L together with the lifted action tables.
struct TwistedExtension {
    GroupPtr total;                      // E, of order |A| * |L|
    std::vector<int> include_a;          // module element index -> E element
    std::vector<int> project_l;          // E element -> member position in L
    std::vector<int> section;            // member position -> E element
    std::vector<std::vector<int>> act0;  // per g: permutation of E at flow step 0
    std::vector<std::vector<int>> act1;  // per g: permutation of E at flow step 1
};

// Requires a valid chi (NotACocycle otherwise).
TwistedExtension make_twisted_extension(const CharacteristicCocycle& chi);

// K = {m in L : lamT(m) is a flow coboundary}, the members whose flow part
// dies in H1 of the flow; always normal in H for valid chi.
NormalSubgroup compute_K(const CharacteristicCocycle& chi);

struct ZLMCheck {
    bool ok = true;
    std::string condition;
    std::vector<int> tuple;
};

// Strict membership test for the (L,M)-compatible subgroup: M inside K, the
// flow part vanishing on M identically, mu torus-valued on M x M, and
// lamH(m; g) torus-valued for every m in M. (The class-level reading applies
// this after normalize_flow_part.)
ZLMCheck in_ZLM(const CharacteristicCocycle& chi, const NormalSubgroup& m);

// Restriction of a standard 2-cocycle to characteristic data on L:
// mu = muH restricted, lamH(m;g) = muH(g, g^-1 m g) - muH(m, g), lamT = d
// restricted. Always valid for valid input (an internal failure aborts).
CharacteristicCocycle res_standard_two(const StandardTwo& m, const NormalSubgroup& sub);

// Perturbation by a torus-valued 2-cocycle xi on H (over the torus flow) and
// a map a: L -> A with a(identity) = 0:
//   mu'   = mu + xi|_LxL + d_L a
//   lamH'(m;g) = lamH(m;g) + xi(g, g^-1 m g) - xi(m, g) + alpha_g(a(g^-1 m g)) - a(m)
//   lamT' = lamT + (theta - 1) a.
CharacteristicCocycle perturb(const CharacteristicCocycle& chi, const Cochain& xi, const Vec& a);
// a-part only (the move that generates the equivalence classes).
CharacteristicCocycle perturb_by(const CharacteristicCocycle& chi, const Vec& a);

// Clears the flow part: finds a with (theta-1) a(m) = -lamT(m) per member and
// returns the perturbed equivalent cocycle with lamT' = 0. Throws
// FlowPartNotCobounding when some lamT(m) is not a flow coboundary.
CharacteristicCocycle normalize_flow_part(const CharacteristicCocycle& chi);

struct CharEquiv {
    bool equal = false;
    std::optional<Vec> witness;  // a with chi2 = perturb_by(chi1, a)
};

// Equivalence of characteristic cocycles: differ by an a-perturbation.
// Exact linear solve; the witness is re-verified by table comparison.
CharEquiv char_equiv(const CharacteristicCocycle& a, const CharacteristicCocycle& b);

// Every valid characteristic cocycle over (flow, sub), enumerated exactly
// from the kernel lattice of the validity conditions (which are linear in
// (mu, lamH, lamT)); each result is re-verified operationally.
std::vector<CharacteristicCocycle> enumerate_chars(FlowPtr flow, const NormalSubgroup& sub);

}  // namespace obslab
