#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "obslab/exact.hpp"
#include "obslab/group.hpp"

namespace obslab {

// Finite abelian group presented as ⊕_i Z/moduli[i]; elements are vectors of
// canonical residues (0 <= v[i] < moduli[i]).
struct AbelianModule {
    Vec moduli;

    int rank() const { return static_cast<int>(moduli.size()); }
    i64 size() const;
    Vec zero() const { return Vec(moduli.size(), 0); }
    Vec reduce(Vec v) const;
    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;
    Vec scal(i64 k, const Vec& a) const;
    bool is_zero(const Vec& a) const;
    // Mixed-radix index of an element (first coordinate most significant) and
    // its inverse; used for dense tables keyed by module elements.
    i64 index_of(const Vec& v) const;
    Vec from_index(i64 idx) const;
    // Additive order of an element.
    i64 element_order(const Vec& v) const;
};

AbelianModule make_module(Vec moduli);

// Automorphism of an abelian module, given by an integer matrix acting on
// column vectors: out_i = sum_j mat(i,j) * in_j mod moduli[i]. Construction
// checks that the matrix defines a homomorphism (entry (i,j) must be a
// multiple of n_i / gcd(n_i, n_j)) and that the induced map is bijective.
struct ModuleAut {
    AbelianModule mod;
    Mat mat;

    Vec apply(const Vec& v) const;
    bool is_identity() const;
};

ModuleAut make_aut(AbelianModule mod, Mat mat);
ModuleAut identity_aut(const AbelianModule& mod);
ModuleAut compose(const ModuleAut& a, const ModuleAut& b);  // a after b
int aut_order(const ModuleAut& a);
ModuleAut aut_inverse(const ModuleAut& a);

// Action of a finite group on an abelian module by automorphisms; auts[0]
// must be the identity and the assignment must be a homomorphism.
struct GroupAction {
    GroupPtr group;
    AbelianModule mod;
    std::vector<ModuleAut> auts;

    const ModuleAut& at(int g) const { return auts[g]; }
    Vec apply(int g, const Vec& v) const { return auts[g].apply(v); }
};

GroupAction make_action(GroupPtr group, AbelianModule mod, std::vector<ModuleAut> auts);
GroupAction trivial_action(GroupPtr group, const AbelianModule& mod);

// Designated cyclic subgroup of the module that plays the role of the scalar
// circle: its generator must be fixed pointwise by the flow and the action.
struct Torus {
    Vec gen;
    i64 order;  // exact additive order of gen (order 1 means the zero torus)
};

// Coefficient flow: module A, a single flow automorphism theta, a group
// action commuting with theta, and the designated torus.
struct FlowModule {
    AbelianModule mod;
    ModuleAut theta;
    GroupAction action;
    Torus torus;

    GroupPtr group() const { return action.group; }
    int rank() const { return mod.rank(); }
};

using FlowPtr = std::shared_ptr<const FlowModule>;

FlowPtr make_flow(AbelianModule mod, ModuleAut theta, GroupAction action, Vec torus_gen);
// Trivial flow: theta = id, trivial action, torus generated by torus_gen.
FlowPtr make_trivial_flow(GroupPtr group, AbelianModule mod, Vec torus_gen);

// theta^s for any integer s (theta has finite order).
Vec theta_apply(const FlowModule& f, i64 s, const Vec& v);
// Flow cocycle sum [s]_theta a = sum_{0<=j<s} theta^j(a), extended to
// negative s by [-s] = -theta^{-s}[s].
Vec flow_sum(const FlowModule& f, i64 s, const Vec& a);

// Torus membership: the multiple k in [0, order) with v = k * gen, if any.
std::optional<i64> torus_multiple(const FlowModule& f, const Vec& v);

// ---- flow cohomology in degree one -------------------------------------------
// H1 of the single flow automorphism: A / Im(theta - 1), with canonical
// (lexicographically minimal) coset representatives.

struct FlowH1 {
    std::vector<i64> factors;   // invariant factors > 1
    std::vector<Vec> gens;      // canonical ambient representative per factor

    // Lattice of flow coboundaries Im(theta-1) (plus the moduli sublattice).
    RowLattice cobound = RowLattice(0);
    LatticeQuotient quot;

    Vec class_coords(const Vec& a) const { return quot.coords(a); }
    Vec canonical_rep(const Vec& a) const { return cobound.reduce(a); }
    bool is_trivial(const Vec& a) const;
    i64 order() const;

    // Witness b with theta(b) - b = a (lexicographically minimal), when a is
    // a flow coboundary.
    std::optional<Vec> witness(const Vec& a) const;

    std::shared_ptr<CongruenceSolver> solver;  // (theta - 1) x = rhs
};

FlowH1 flow_h1(const FlowModule& f);

// Class of a single element: coboundary flag, class coordinates, witness.
struct FlowClass {
    bool trivial;
    Vec coords;
    std::optional<Vec> witness;
};
FlowClass h1_class(const FlowH1& h1, const Vec& a);

// ---- equivariant homomorphisms into H1 -----------------------------------------
// All homomorphisms nu : N -> H1_theta(A) (N a normal subgroup of the acting
// group) that are equivariant for conjugation upstairs and the induced action
// downstairs. Values are stored two ways: H1-coordinates per member, and the
// canonical ambient representative per member. Deterministic enumeration
// order. Throws ActionNotDescending if some action automorphism fails to map
// Im(theta-1) into itself.

struct EquivariantHom {
    std::vector<Vec> coords;  // per N-member: H1 coordinates
    std::vector<Vec> reps;    // per N-member: canonical ambient representative
};

std::vector<EquivariantHom> enumerate_equivariant_homs(const FlowModule& f, const FlowH1& h1,
                                                       const NormalSubgroup& n);

// Matrix of the action of g on H1 coordinates; throws ActionNotDescending if
// the action does not preserve the flow-coboundary subgroup.
Mat induced_h1_matrix(const FlowModule& f, const FlowH1& h1, int g);

// ---- derived flows ---------------------------------------------------------------

// Same module data, action transported to the quotient group (requires the
// action to be constant on kernel cosets; throws ActionNotDescending).
FlowPtr descend_flow(const FlowPtr& f, const QuotientPtr& qd);
// Same module data, action pulled back along the projection to the parent.
FlowPtr pullback_flow(const FlowPtr& f, const QuotientPtr& qd);
// Rank-one flow over Z/torus_order with trivial theta and action, living on
// the given group; used for torus-valued cocycles.
FlowPtr torus_flow(const FlowPtr& f, GroupPtr group);
// Coerce a module element into the torus flow's rank-one representation;
// throws TorusCoercionFailed when the value is outside the torus.
Vec to_torus_value(const FlowModule& f, const Vec& v);
// Embed a torus-flow value back into the ambient module.
Vec from_torus_value(const FlowModule& f, const Vec& tv);

}  // namespace obslab
