#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obslab/charcocycle.hpp"
#include "obslab/cochain.hpp"
#include "obslab/group.hpp"
#include "obslab/module.hpp"
#include "obslab/standard.hpp"

namespace obslab {

// Quotient tower H -> G = H/M -> Q = H/L for nested normal subgroups
// M <= L <= H, with the coefficient flow descended to each level and the
// torus-coefficient companions used by the connecting maps.
struct Tower {
    FlowPtr flowH;
    FlowPtr flowG;
    FlowPtr flowQ;
    FlowPtr tflowH;  // torus coefficients over H
    FlowPtr tflowG;  // torus coefficients over G
    NormalSubgroup L;    // in H
    NormalSubgroup M;    // in H, contained in L
    QuotientPtr to_G;    // H -> G, kernel M
    QuotientPtr to_Q;    // H -> Q, kernel L
    NormalSubgroup N;    // image of L in G
    QuotientPtr g_to_Q;  // G -> Q, kernel N

    const GroupPtr& H() const { return to_G->parent; }
    const GroupPtr& G() const { return to_G->quot; }
    const GroupPtr& Q() const { return g_to_Q->quot; }
};

// pre: M <= L, both normal in the flow's group, both acting trivially on the
// coefficients (so the flow descends to every level).
Tower make_tower(FlowPtr flowH, NormalSubgroup L, NormalSubgroup M);

// Same construction, but the lower two levels (G, Q, their flows, and the
// G -> Q quotient) are reused from an existing tower so that outputs built on
// either tower are directly comparable. `proj_to_G` maps the new top group
// onto lower.G(); its kernel must be exactly M and the image of L must be
// lower.N.
Tower make_tower_onto(FlowPtr flowH, NormalSubgroup L, NormalSubgroup M,
                      std::vector<int> proj_to_G, const Tower& lower);

// A cocycle-level modular obstruction: a standard 3-cocycle on Q paired with
// an equivariant homomorphism nu from N into the flow cohomology group, tied
// together by the fiber condition class(d1(q, r)) = nu(n_N(q, r)).
struct ModularObstruction {
    Tower tower;
    CrossSection s;       // section of tower.g_to_Q
    StandardThree three;  // over tower.flowQ
    FlowH1 h1;            // flow cohomology of the coefficient module
    std::vector<Vec> nu;  // class coordinates, one per member of tower.N

    const Vec& nu_at(int n_member_pos) const { return nu[n_member_pos]; }
    bool nu_trivial() const;
};

// An obstruction together with the cocycle-level lift zeta of nu that the
// connecting map produced: class(zeta(n)) = nu(n) per member of N.
struct ObstructionCocycleData {
    ModularObstruction ob;
    std::vector<Vec> zeta;  // one module value per member of tower.N
};

// Connecting 3-cocycle of a flowless characteristic cocycle along a section:
// c(p,q,r) = lamH(s.n(q,r)s.^-1; s.(p)) + mu(s.n(q,r)s.^-1, n(p,qr))
//          - mu(n(p,q), n(pq,r)), with n the section cocycle of s.
// pre: chi valid ignoring its flow part; s a section of the quotient of chi's
// group by its distinguished subgroup; flowQ the descended coefficient flow.
// post: the output is a 3-cocycle over flowQ (verified).
Cochain delta_hjr(const CharacteristicCocycle& chi, const CrossSection& s, FlowPtr flowQ);

struct InverseData {
    CharacteristicCocycle chi;  // over the parent group and the section kernel
    Cochain f;                  // degree 2 on the quotient
};

// Inverse construction for the connecting map: from a 3-cocycle xi on the
// quotient and a 2-cochain mu on the parent with coboundary(mu) equal to the
// pullback of xi, build the characteristic cocycle
//   lamH(m; g) = mu(g, g^-1 m g) - mu(m, g),   mu-part = mu on kernel pairs,
// and f(p, q) = mu(s(p), s(q)) - mu(n(p,q), s(pq)); verified exactly:
// xi = coboundary(f) + delta_hjr(chi, s).
// errors: NotCobounding when coboundary(mu) differs from the pullback of xi.
InverseData inverse_from_cobounding(const Cochain& xi, const Cochain& mu, const CrossSection& s);

// Modified connecting map into the fiber product. Sections: s lifts Q into G,
// sH lifts G into H. The flow part of chi is first cleared on M (a
// perturbation supported on M); chi must then lie in the admissible domain.
// post: d1(q,r) = lamT(n_L(q,r)); cQ per the section formula at flow step
// zero; zeta(n) = lamT(sH(n)); fiber condition and equivariance verified.
// errors: NotInZLM; SectionMismatch / ContextMismatch on foreign inputs.
ObstructionCocycleData delta_mod(const CharacteristicCocycle& chi, const Tower& tower,
                                 const CrossSection& s, const CrossSection& sH);

// Cobounding pair for the obstruction of a restricted standard 2-cocycle:
//   a(p,q) = -muH(s.(p), s.(q)) + muH(n_L(p,q), s.(pq)),   b(q) = -d(s.(q)).
// The standard coboundary of (a, b) equals delta_mod(res_standard_two(m, L))
// exactly (verified at construction).
struct CoboundPair {
    Cochain a;  // degree 2 over the quotient flow
    Vec b;      // one module value per quotient element
};
CoboundPair cobound_for_restricted(const StandardTwo& m, const Tower& tower,
                                   const CrossSection& s, const CrossSection& sH);

// The two solved cochains and the torus-valued connecting 3-cocycle on G
// produced from a modular obstruction.
struct PartialData {
    Cochain f;   // degree 2 on Q, module-valued: (theta-1) f = d1 - zeta_nu(n_N)
    Cochain a;   // degree 2 on G, module-valued comparison cochain
    Cochain cG;  // degree 3 on G over torus coefficients
};

// Push an obstruction down to a torus-valued 3-cocycle on G. zeta_nu is the
// canonical representative of nu; f and a are deterministic minimal solutions.
// errors: FiberViolated (fiber condition recheck); TorusCoercionFailed and
// VerificationFailed abort on internal inconsistency.
PartialData partial_map(const ModularObstruction& ob);

// Pullback of partial_map to torus coefficients on the tower's top group.
Cochain inf_map(const ModularObstruction& ob);

// Transport an obstruction to another section of the same quotient:
// d1 shifts by the coboundary of q -> zeta_nu(s'(q) s(q)^-1); cQ and nu are
// unchanged. The fiber condition for the new section cocycle is re-verified.
// errors: SectionMismatch.
ModularObstruction change_section(const ModularObstruction& ob, const CrossSection& s2);

struct ObstructionEq {
    bool equal = false;
    std::string reason;      // which part differed, when not equal
    std::optional<Cochain> witness;  // degree-2 witness for the cocycle parts
};

// Equality in the fiber product group: nu agrees pointwise and the standard
// 3-cocycles are cohomologous. If the sections differ, b is transported to
// a's section first. errors: ContextMismatch for obstructions over different
// towers.
ObstructionEq obstruction_equal(const ModularObstruction& a, const ModularObstruction& b);

// Class comparison behind the exactness checks: the torus-valued connecting
// cocycle of chi's torus restriction to M, against the partial map of chi's
// modular obstruction, both over torus coefficients on G.
struct RestrictionCompare {
    bool equal = false;
    Cochain lhs;  // partial map output
    Cochain rhs;  // connecting cocycle of the restriction
    std::optional<Cochain> witness;  // degree-2 over torus flow on G
};
RestrictionCompare compare_restricted_delta(const CharacteristicCocycle& chi, const Tower& tower,
                                            const CrossSection& s, const CrossSection& sH);

struct ExactnessReport {
    i64 torus_two_cocycles = 0;  // enumerated on H
    i64 chars_total = 0;         // characteristic cocycles enumerated over (H, L)
    i64 chars_admissible = 0;    // of those, in the admissible domain for M
    i64 delta_trivial = 0;       // admissible cocycles with trivial obstruction
    i64 matched_restrictions = 0;  // delta-trivial cocycles exhibited as restrictions
    bool strict_domain_equals_class_domain = true;
    std::vector<std::string> notes;
};

// Exhaustively verifies, over the given tower data:
//   (a) every restriction of a torus-valued 2-cocycle on H has a trivial
//       obstruction, with a constructive cobounding pair;
//   (b) every admissible characteristic cocycle with trivial obstruction is
//       equivalent to such a restriction, with witness;
//   (c) the pullback of the obstruction's partial map to H cobounds, for
//       every admissible characteristic cocycle;
//   (d) the partial map agrees, as a torus class on G, with the connecting
//       cocycle of the torus restriction to M, for every admissible cocycle.
// errors: BudgetExceeded; ExactnessViolation carrying a witness dump.
ExactnessReport verify_exactness(FlowPtr flowH, const NormalSubgroup& L, const NormalSubgroup& M);

}  // namespace obslab
