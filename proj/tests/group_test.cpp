// Group layer: table validation, constructions, normal subgroups, quotients,
// cross-sections and their kernel-valued 2-cocycles.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "obslab/errors.hpp"
#include "obslab/group.hpp"

using namespace obslab;

namespace {

// S3 as permutations of {0,1,2}: multiplication by composition, built from
// scratch so subgroup normality tests have a nonabelian reference point.
GroupPtr make_s3() {
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2},  // id
        {1, 2, 0},  // 3-cycle
        {2, 0, 1},  // 3-cycle
        {1, 0, 2},  // transposition
        {0, 2, 1},  // transposition
        {2, 1, 0},  // transposition
    }};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    std::vector<int> table(36);
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            std::array<int, 3> comp{};
            for (int i = 0; i < 3; ++i) comp[i] = perms[x][perms[y][i]];
            table[x * 6 + y] = index_of(comp);
        }
    return make_explicit(std::move(table), "s3");
}

}  // namespace

TEST_CASE("explicit table validation rejects broken tables") {
    CHECK_THROWS_AS(make_explicit({0, 0, 0, 0}, "bad"), Error);  // repeated rows
    CHECK_THROWS_AS(make_explicit({0, 1, 2}, "bad"), Error);     // not square
    CHECK_THROWS_AS(make_explicit({0, 1, 1, 0, 1, 0, 0, 1, 1}, "bad"), Error);
    // tampered cyclic table: no longer a group
    std::vector<int> t = {0, 1, 2, 1, 2, 0, 2, 0, 1};
    std::swap(t[4], t[5]);
    CHECK_THROWS_AS(make_explicit(std::move(t), "bad"), Error);
}

TEST_CASE("standard constructions have the right multiplication") {
    GroupPtr c4 = make_cyclic(4);
    CHECK(c4->order() == 4);
    CHECK(c4->mul(3, 2) == 1);
    CHECK(c4->inv(3) == 1);

    GroupPtr k = make_product({make_cyclic(2), make_cyclic(2)});
    CHECK(k->order() == 4);
    for (int x = 0; x < 4; ++x) CHECK(k->mul(x, x) == 0);  // exponent two

    GroupPtr h = make_heisenberg(2);
    CHECK(h->order() == 8);
    bool abelian = true;
    for (int x = 0; x < 8 && abelian; ++x)
        for (int y = 0; y < 8; ++y)
            if (h->mul(x, y) != h->mul(y, x)) {
                abelian = false;
                break;
            }
    CHECK_FALSE(abelian);
    // exponent divides 4 for k=2 (elements (1,0,0) and (0,1,0) square to center)
    for (int x = 0; x < 8; ++x) CHECK(h->mul(h->mul(x, x), h->mul(x, x)) == 0);
}

TEST_CASE("normality is enforced") {
    GroupPtr s3 = make_s3();
    // the alternating subgroup is normal
    NormalSubgroup a3 = make_normal_subgroup(s3, {0, 1, 2});
    CHECK(a3.size() == 3);
    CHECK(a3.contains(2));
    // a transposition generates a non-normal subgroup
    CHECK_THROWS_AS(make_normal_subgroup(s3, {0, 3}), Error);
    // missing closure
    CHECK_THROWS_AS(make_normal_subgroup(s3, {0, 1}), Error);
}

TEST_CASE("quotients project homomorphically") {
    GroupPtr c4 = make_cyclic(4);
    NormalSubgroup l = make_normal_subgroup(c4, {0, 2});
    QuotientPtr qd = make_quotient(c4, l);
    CHECK(qd->quot->order() == 2);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            CHECK(qd->proj[c4->mul(x, y)] == qd->quot->mul(qd->proj[x], qd->proj[y]));

    GroupPtr h = make_heisenberg(2);
    NormalSubgroup center = make_normal_subgroup(h, {0, 1});
    QuotientPtr hq = make_quotient(h, center);
    CHECK(hq->quot->order() == 4);
    // the quotient by the center of the k=2 group is elementary abelian
    for (int x = 0; x < 4; ++x) CHECK(hq->quot->mul(x, x) == 0);
}

TEST_CASE("sections satisfy the section property and start at the identity") {
    GroupPtr c4 = make_cyclic(4);
    NormalSubgroup l = make_normal_subgroup(c4, {0, 2});
    QuotientPtr qd = make_quotient(c4, l);
    CrossSection s = default_section(qd);
    CHECK(s.sect[0] == 0);
    for (int q = 0; q < 2; ++q) CHECK(qd->proj[s.sect[q]] == q);

    CHECK_THROWS_AS(make_section(qd, {2, 1}), Error);  // identity must lift to identity
    CHECK_THROWS_AS(make_section(qd, {0, 0}), Error);  // wrong coset
    CrossSection s2 = make_section(qd, {0, 3});
    CHECK(s2.sect[1] == 3);
}

TEST_CASE("section cocycle lands in the kernel and satisfies the defining identity") {
    GroupPtr h = make_heisenberg(2);
    NormalSubgroup center = make_normal_subgroup(h, {0, 1});
    QuotientPtr qd = make_quotient(h, center);
    CrossSection s = default_section(qd);
    SectionCocycle n = section_cocycle(s);
    const int qn = qd->quot->order();
    for (int p = 0; p < qn; ++p)
        for (int q = 0; q < qn; ++q) {
            int val = n.at(p, q);
            CHECK(center.contains(val));
            int lhs = h->mul(s.sect[p], s.sect[q]);
            int rhs = h->mul(val, s.sect[qd->quot->mul(p, q)]);
            CHECK(lhs == rhs);
            if (p == 0 || q == 0) CHECK(val == 0);
        }
}
