// Module layer: finite abelian modules, automorphisms, group actions, flows,
// and first flow cohomology checked against hand-computed values.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "obslab/errors.hpp"
#include "obslab/fixtures.hpp"
#include "obslab/group.hpp"
#include "obslab/module.hpp"

using namespace obslab;

TEST_CASE("module arithmetic and indexing round trip") {
    AbelianModule m = make_module({2, 4});
    CHECK(m.size() == 8);
    CHECK(m.add({1, 3}, {1, 2}) == Vec{0, 1});
    CHECK(m.sub({0, 1}, {1, 3}) == Vec{1, 2});
    CHECK(m.neg({1, 1}) == Vec{1, 3});
    CHECK(m.scal(3, {1, 2}) == Vec{1, 2});
    CHECK(m.element_order({0, 1}) == 4);
    CHECK(m.element_order({1, 2}) == 2);
    for (i64 i = 0; i < m.size(); ++i) CHECK(m.index_of(m.from_index(i)) == i);
}

TEST_CASE("automorphism construction validates shape, homomorphism, bijectivity") {
    AbelianModule m = make_module({4});
    Mat triple(1, 1);
    triple.at(0, 0) = 3;
    ModuleAut a = make_aut(m, triple);
    CHECK(a.apply({1}) == Vec{3});
    CHECK(a.apply({2}) == Vec{2});

    Mat doubling(1, 1);
    doubling.at(0, 0) = 2;  // kills the 2-torsion element
    CHECK_THROWS_AS(make_aut(m, doubling), Error);

    AbelianModule mixed = make_module({2, 4});
    Mat bad(2, 2);
    bad.at(0, 0) = 1;
    bad.at(1, 0) = 1;  // Z/2 -> Z/4 entry must be even
    bad.at(1, 1) = 1;
    CHECK_THROWS_AS(make_aut(mixed, bad), Error);
}

TEST_CASE("actions are homomorphic and the identity acts trivially") {
    GroupPtr c2 = make_cyclic(2);
    AbelianModule m = make_module({5});
    auto s = sign_action(c2, m);
    REQUIRE(s.has_value());
    CHECK(s->apply(0, {2}) == Vec{2});
    CHECK(s->apply(1, {2}) == Vec{3});

    // no sign action when negation is trivial on the module
    CHECK_FALSE(sign_action(c2, make_module({2})).has_value());
    // the trivial group admits no nontrivial homomorphism
    CHECK_FALSE(sign_action(make_cyclic(1), m).has_value());
}

TEST_CASE("flow construction requires a fixed torus generator") {
    GroupPtr c2 = make_cyclic(2);
    AbelianModule m = make_module({5});
    auto s = sign_action(c2, m);
    REQUIRE(s.has_value());
    // {1} is negated by the action, so it cannot generate the torus
    CHECK_THROWS_AS(make_flow(m, identity_aut(m), *s, {1}), Error);
    FlowPtr ok = make_flow(m, identity_aut(m), *s, {0});
    CHECK(ok->rank() == 1);

    FlowPtr triv = make_trivial_flow(c2, make_module({4}), {1});
    CHECK(triv->mod.moduli == Vec{4});
}

TEST_CASE("first flow cohomology of the identity flow is the whole module") {
    GroupPtr c2 = make_cyclic(2);
    FlowPtr f = make_trivial_flow(c2, make_module({2, 4}), Vec{1, 0});
    FlowH1 h1 = flow_h1(*f);
    CHECK(h1.order() == 8);
    i64 prod = 1;
    for (std::size_t i = 0; i < h1.factors.size(); ++i) {
        prod *= h1.factors[i];
        if (i + 1 < h1.factors.size()) CHECK(h1.factors[i + 1] % h1.factors[i] == 0);
    }
    CHECK(prod == 8);
    FlowClass c = h1_class(h1, {1, 0});
    CHECK_FALSE(c.trivial);
}

TEST_CASE("negation flow on an odd module has trivial first cohomology") {
    // theta = -1 on Z/5: image of (theta - 1) = image of -2 = everything.
    AbelianModule m = make_module({5});
    Mat neg(1, 1);
    neg.at(0, 0) = 4;
    GroupPtr c1 = make_cyclic(1);
    FlowPtr f = make_flow(m, make_aut(m, neg), trivial_action(c1, m), {0});
    FlowH1 h1 = flow_h1(*f);
    CHECK(h1.factors.empty());
    CHECK(h1.order() == 1);
    for (i64 v = 0; v < 5; ++v) {
        auto w = h1.witness({v});
        REQUIRE(w.has_value());
        // theta(w) - w = v
        Vec img = f->theta.apply(*w);
        CHECK(f->mod.sub(img, *w) == Vec{v});
    }
}

TEST_CASE("class coordinates are additive") {
    GroupPtr c2 = make_cyclic(2);
    FlowPtr f = make_trivial_flow(c2, make_module({6}), {1});
    FlowH1 h1 = flow_h1(*f);
    std::mt19937 rng(5);
    for (int t = 0; t < 50; ++t) {
        Vec a = {static_cast<i64>(rng() % 6)};
        Vec b = {static_cast<i64>(rng() % 6)};
        Vec sum = f->mod.add(a, b);
        Vec ca = h1.class_coords(a), cb = h1.class_coords(b), cs = h1.class_coords(sum);
        for (std::size_t i = 0; i < cs.size(); ++i)
            CHECK(cs[i] == mod_floor(ca[i] + cb[i], h1.factors[i]));
    }
}

TEST_CASE("flows descend along quotients acting trivially on coefficients") {
    GroupPtr c4 = make_cyclic(4);
    FlowPtr f = make_trivial_flow(c4, make_module({2}), {1});
    NormalSubgroup l = make_normal_subgroup(c4, {0, 2});
    QuotientPtr qd = make_quotient(c4, l);
    FlowPtr down = descend_flow(f, qd);
    CHECK(down->group()->order() == 2);
    FlowPtr up = pullback_flow(down, qd);
    CHECK(up->group()->order() == 4);
}

TEST_CASE("torus coercion accepts multiples of the generator only") {
    GroupPtr c2 = make_cyclic(2);
    FlowPtr f = make_trivial_flow(c2, make_module({4}), {2});
    // torus = {0, 2}; rank-one torus flow values embed back as multiples
    CHECK(from_torus_value(*f, {0}) == Vec{0});
    CHECK(from_torus_value(*f, {1}) == Vec{2});
}
