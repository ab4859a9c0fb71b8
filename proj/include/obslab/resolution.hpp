#pragma once

#include "obslab/charcocycle.hpp"
#include "obslab/cochain.hpp"
#include "obslab/group.hpp"
#include "obslab/hjr.hpp"
#include "obslab/module.hpp"
#include "obslab/standard.hpp"

namespace obslab {

// Resolution of a 3-cocycle: a finite extension of the base group in which
// the lifted cocycle cobounds, together with characteristic data whose
// connecting cocycle reproduces the source class.
struct ResolutionSystem {
    FlowPtr flowG;     // coefficients over the base group
    FlowPtr flowH;     // the same coefficients pulled back to the resolution group
    QuotientPtr to_G;  // resolution group onto the base; kernel M
    NormalSubgroup M;  // abelian kernel inside the resolution group
    CrossSection sH;   // minimal section of to_G
    CharacteristicCocycle chi;  // over (resolution group, M), flow part zero
    Cochain f;       // degree 2 on the base: source = coboundary(f) + connecting cocycle of chi
    Cochain b;       // degree 2 on the resolution group cobounding the lifted source
    Cochain source;  // the resolved 3-cocycle, over flowG
};

// Function-space resolution of a 3-cocycle c on G: form the module of maps
// G -> A with the translated action, push c's standard primitive into the
// quotient by the constants, and let M be the subgroup generated by the
// action-saturation of its range. The resolution group is the extension of G
// by M along that 2-cocycle; the lifted c cobounds there by an explicit b,
// and the characteristic data read off from b has connecting cocycle
// cohomologous to c (exact witness f, re-verified).
// errors: NotACocycle; BudgetExceeded; VerificationFailed on any violated
// internal identity.
ResolutionSystem resolve_three_cocycle(const Cochain& c);

// A modular obstruction realized as the connecting data of explicit
// characteristic data on a resolution tower.
struct ObstructionResolution {
    ResolutionSystem system;  // resolution of the torus-valued connecting cocycle on G
    Tower tower;              // top group = resolution group; lower levels shared with the input
    CharacteristicCocycle chi;        // over the resolution flow and the preimage of N
    ObstructionCocycleData realized;  // connecting data of chi, equal to the input obstruction
    Cochain w;  // degree-2 comparison cochain on Q bridging input and realized data exactly
};

// Realize a modular obstruction: push it to a torus 3-cocycle on G, resolve
// that cocycle, pull everything back to the resolution group, and assemble
// characteristic data there whose connecting data reproduces the input —
// exactly up to the standard coboundary of the returned comparison cochain,
// with the flow-class part unchanged.
// errors: BudgetExceeded; VerificationFailed with the comparison residual.
ObstructionResolution resolve_obstruction(const ModularObstruction& ob);

}  // namespace obslab
