#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obslab/hjr.hpp"

namespace obslab {

// A ready-made tower with a distinguished valid characteristic cocycle on it,
// used by the test suites and the command-line front end.
struct Fixture {
    std::string name;
    FlowPtr flow;  // over the top group, trivial action, identity flow map
    Tower tower;
    CharacteristicCocycle chi;
};

// Cyclic order 4 over Z/2: top group Z/4, middle kernel trivial, quotient
// kernel the order-2 subgroup. chi has lamH(2; g) = g mod 2.
Fixture fixture_c4();
// Klein four-group over Z/2: quotient kernel one coordinate factor.
// chi has lamH(m; g) = the complementary coordinate of g.
Fixture fixture_klein();
// Modulus-2 Heisenberg group over Z/2: quotient kernel the center.
// chi has lamT(c) = c, the flow-scaled character of the splitting demos.
Fixture fixture_heis2();
// The three fixtures above, in that order.
std::vector<Fixture> standard_fixtures();
Fixture fixture_by_name(const std::string& name);

// Catalog of the groups of order <= max_order (max 4), one per isomorphism
// class, in order of increasing size.
std::vector<GroupPtr> small_groups(int max_order);

// Canonical nontrivial action of g on the module: the lexicographically first
// surjection of g onto a two-element group, acting by negation. Returns
// nothing when g has no such surjection or negation is the identity.
std::optional<GroupAction> sign_action(GroupPtr g, const AbelianModule& mod);

// Every cross-section of the quotient (identity at the identity), odometer
// order over coset representatives.
std::vector<CrossSection> enumerate_sections(const QuotientPtr& qd);

}  // namespace obslab
