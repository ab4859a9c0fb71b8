#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace obslab {

// Finite group on elements 0..n-1 given by an explicit multiplication table.
// Element 0 is always the identity. Construction validates the full group
// axioms (closure, identity, bijective translations, associativity) and
// precomputes inverses; invalid tables are rejected with InvalidTable.
class FiniteGroup {
public:
    FiniteGroup(std::vector<int> mul_table, std::string label);

    int order() const { return n_; }
    const std::string& label() const { return label_; }

    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    // g m g^{-1}
    int conj(int g, int m) const { return mul(mul(g, m), inv(g)); }
    int pow(int g, long long e) const;
    int element_order(int g) const;
    bool is_abelian() const;

private:
    int n_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::string label_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_cyclic(int n);
GroupPtr make_product(const std::vector<GroupPtr>& parts);
// Order k^3 group of triples (a,b,c) mod k with
// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'); element index ((a*k)+b)*k+c.
GroupPtr make_heisenberg(int k);
GroupPtr make_explicit(std::vector<int> mul_table, std::string label);

// Subgroup of `parent` that is normal under conjugation; members kept sorted,
// with constant-time membership and position lookups.
struct NormalSubgroup {
    GroupPtr parent;
    std::vector<int> members;  // sorted, begins with 0
    std::vector<int> pos;      // element -> index in members, or -1

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int g) const { return pos[g] >= 0; }
    int index_of(int g) const;  // throws InvalidArgument when absent
};

NormalSubgroup make_normal_subgroup(GroupPtr parent, std::vector<int> members);
NormalSubgroup trivial_subgroup(GroupPtr parent);
NormalSubgroup full_subgroup(GroupPtr parent);

std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens);
std::vector<int> center_of(const FiniteGroup& g);

// Quotient parent/kernel. Quotient elements are labeled by their cosets'
// minimal parent elements taken in increasing order, so the identity coset is
// element 0 and labeling is canonical.
struct QuotientData {
    GroupPtr parent;
    NormalSubgroup kernel;
    GroupPtr quot;
    std::vector<int> proj;       // parent element -> quotient element
    std::vector<int> coset_min;  // quotient element -> minimal parent element
};

using QuotientPtr = std::shared_ptr<const QuotientData>;

QuotientPtr make_quotient(GroupPtr parent, NormalSubgroup kernel);
// Quotient presented by an explicit surjective homomorphism onto an existing
// group object (used when the codomain must be a previously constructed
// group rather than a fresh coset-labeled one). Validates the homomorphism
// and derives the kernel.
QuotientPtr make_quotient_onto(GroupPtr parent, GroupPtr quot, std::vector<int> proj);

// Set-theoretic cross-section of a quotient map: proj(sect(q)) = q and
// sect(identity) = identity.
struct CrossSection {
    QuotientPtr qd;
    std::vector<int> sect;
};

CrossSection make_section(QuotientPtr qd, std::vector<int> sect);
CrossSection default_section(QuotientPtr qd);  // minimal coset representatives

// Kernel-valued 2-cocycle of a cross-section:
//   table(p,q) = sect(p) * sect(q) * sect(pq)^{-1}.
// Satisfies the nonabelian cocycle identity
//   sect(p) table(q,r) sect(p)^{-1} * table(p, qr) = table(p,q) * table(pq, r)
// by construction; section_cocycle re-checks it and aborts on violation.
struct SectionCocycle {
    CrossSection section;
    std::vector<int> table;  // q*q entries, kernel elements of the parent

    int at(int p, int q) const;
};

SectionCocycle section_cocycle(const CrossSection& s);

// Factor g = m * sect(p) with p = proj(g); returns (m, p), m in the kernel.
std::pair<int, int> decompose(const CrossSection& s, int g);

// Exhaustive search for a group isomorphism (backtracking over all
// multiplication-respecting bijections, deterministic order). Intended for
// small test groups; budget-charged.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace obslab
