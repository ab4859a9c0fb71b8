// Resolution of torus three-cocycles by map-space extensions, and the full
// obstruction-realization round trip.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "obslab/budget.hpp"
#include "obslab/charcocycle.hpp"
#include "obslab/cochain.hpp"
#include "obslab/errors.hpp"
#include "obslab/fixtures.hpp"
#include "obslab/group.hpp"
#include "obslab/hjr.hpp"
#include "obslab/module.hpp"
#include "obslab/resolution.hpp"
#include "obslab/standard.hpp"

using namespace obslab;

namespace {

// Replay the inverse identity: c = coboundary(f) + delta of the built data.
void check_round_trip(const Cochain& c, const ResolutionSystem& rs) {
    CHECK(check_char(rs.chi).ok);
    Cochain back = cochain_add(coboundary(rs.f), delta_hjr(rs.chi, rs.sH, c.flow));
    CHECK(back.table == c.table);
    // the comparison cochain cobounds the pullback upstairs
    Cochain pb = pullback_cochain(c, rs.to_G, rs.flowH);
    CHECK(coboundary(rs.b).table == pb.table);
}

}  // namespace

TEST_CASE("both torus three-cocycles over the two-element group resolve") {
    FlowPtr flow = make_trivial_flow(make_cyclic(2), make_module({2}), {1});
    Budget::reset();
    auto all = lattice_cocycles(flow, 3);
    CHECK(all.size() == 2);
    bool saw_nontrivial = false;
    for (const Cochain& c : all) {
        ResolutionSystem rs = resolve_three_cocycle(c);
        check_round_trip(c, rs);
        if (!is_zero(c)) {
            saw_nontrivial = true;
            // the classical resolution of the order-two obstruction: a cyclic
            // double cover with a two-element kernel
            CHECK(rs.to_G->parent->order() == 4);
            CHECK(rs.M.size() == 2);
            bool has_order_four = false;
            const FiniteGroup& h = *rs.to_G->parent;
            for (int x = 0; x < 4; ++x) {
                int sq = h.mul(x, x);
                if (sq != 0 && h.mul(sq, sq) == 0) has_order_four = true;
            }
            CHECK(has_order_four);
        }
    }
    CHECK(saw_nontrivial);
}

TEST_CASE("random torus three-cocycles over small groups resolve and round-trip") {
    std::mt19937 rng(101);
    std::vector<FlowPtr> flows = {
        make_trivial_flow(make_cyclic(3), make_module({3}), {1}),
        make_trivial_flow(make_cyclic(4), make_module({2}), {1}),
        make_trivial_flow(make_product({make_cyclic(2), make_cyclic(2)}), make_module({2}), {1}),
    };
    for (const FlowPtr& flow : flows) {
        Budget::reset();
        auto all = lattice_cocycles(flow, 3);
        REQUIRE(!all.empty());
        for (int t = 0; t < 6; ++t) {
            const Cochain& c = all[rng() % all.size()];
            ResolutionSystem rs = resolve_three_cocycle(c);
            check_round_trip(c, rs);
            CHECK(rs.to_G->parent->order() % flow->group()->order() == 0);
        }
    }
}

TEST_CASE("resolving a non-cocycle is refused") {
    FlowPtr flow = make_trivial_flow(make_cyclic(3), make_module({3}), {1});
    Cochain bad = make_cochain(flow, 3);
    bad.set({1, 1, 1}, {1});
    bad.set({2, 2, 2}, {2});
    REQUIRE_FALSE(is_cocycle(bad).ok);
    CHECK_THROWS_AS(resolve_three_cocycle(bad), Error);
}

TEST_CASE("obstruction realization reproduces the fixture obstructions exactly") {
    for (const char* name : {"c4", "klein", "heis2"}) {
        Fixture fx = fixture_by_name(name);
        CAPTURE(fx.name);
        const Tower& t = fx.tower;
        ObstructionCocycleData data = delta_mod(fx.chi, t, default_section(t.g_to_Q),
                                                default_section(t.to_G));
        Budget::reset();
        ObstructionResolution res = resolve_obstruction(data.ob);
        // the realized obstruction lives over the same lower levels
        CHECK(res.tower.flowQ == t.flowQ);
        CHECK(obstruction_equal(res.realized.ob, data.ob).equal);
        // nu is realized on the nose, not just up to equivalence
        CHECK(res.realized.ob.nu == data.ob.nu);
        // the comparison cochain bridges input and realization exactly
        StandardThree diff = st3_sub(data.ob.three, res.realized.ob.three);
        CHECK(st3_is_zero(st3_sub(diff, standard_coboundary(res.w))));
        // the resolved top group projects onto the input's middle group
        CHECK(res.tower.H()->order() % t.G()->order() == 0);
        CHECK(check_char(res.chi).ok);
    }
}
