// Exact integer layer: checked arithmetic, Smith form, row lattices,
// congruence solver, lattice quotients. Solver results are compared against
// brute-force enumeration over small residue boxes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <random>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"
#include "obslab/exact.hpp"

using namespace obslab;

namespace {

// All solutions of a congruence system found by walking the residue box.
std::vector<Vec> brute_solutions(const Mat& a, const Vec& row_mods, const Vec& col_mods,
                                 const Vec& rhs) {
    std::vector<Vec> out;
    Vec x(col_mods.size(), 0);
    while (true) {
        bool ok = true;
        for (int i = 0; i < a.rows && ok; ++i) {
            i64 acc = 0;
            for (int j = 0; j < a.cols; ++j) acc += a.at(i, j) * x[j];
            if (mod_floor(acc - rhs[i], row_mods[i]) != 0) ok = false;
        }
        if (ok) out.push_back(x);
        int pos = static_cast<int>(x.size()) - 1;
        while (pos >= 0 && ++x[pos] == col_mods[pos]) x[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

Mat random_mat(std::mt19937& rng, int rows, int cols, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("checked arithmetic detects overflow") {
    CHECK(checked_add(3, 4) == 7);
    CHECK(checked_mul(-5, 6) == -30);
    CHECK(checked_sub(2, 9) == -7);
    CHECK(checked_neg(-4) == 4);
    const i64 big = std::numeric_limits<i64>::max();
    CHECK_THROWS_AS(checked_add(big, 1), Error);
    CHECK_THROWS_AS(checked_mul(big / 2, 3), Error);
    CHECK_THROWS_AS(checked_neg(std::numeric_limits<i64>::min()), Error);
}

TEST_CASE("floor division and floored remainder on negatives") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod_floor(-7, 2) == 1);
    CHECK(mod_floor(-1, 5) == 4);
    CHECK(mod_floor(10, 5) == 0);
}

TEST_CASE("extended gcd identity on random pairs") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<i64> d(-200, 200);
    for (int t = 0; t < 200; ++t) {
        i64 a = d(rng), b = d(rng);
        ExtGcd e = ext_gcd(a, b);
        CHECK(e.g == gcd_nonneg(a, b));
        CHECK(e.x * a + e.y * b == e.g);
    }
}

TEST_CASE("smith normal form reconstructs the input") {
    std::mt19937 rng(23);
    for (int t = 0; t < 60; ++t) {
        int rows = 1 + static_cast<int>(rng() % 4);
        int cols = 1 + static_cast<int>(rng() % 4);
        Mat a = random_mat(rng, rows, cols, -6, 6);
        SmithResult s = smith_normal_form(a);
        // u * a * v == diag
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                i64 acc = 0;
                for (int p = 0; p < rows; ++p)
                    for (int q = 0; q < cols; ++q) acc += s.u.at(i, p) * a.at(p, q) * s.v.at(q, j);
                i64 expect = (i == j && i < static_cast<int>(s.diag.size())) ? s.diag[i] : 0;
                CHECK(acc == expect);
            }
        // divisibility chain and positivity on the rank prefix
        for (int i = 0; i < s.rank; ++i) {
            CHECK(s.diag[i] > 0);
            if (i + 1 < s.rank) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        }
        // vinv really inverts v
        for (int i = 0; i < cols; ++i)
            for (int j = 0; j < cols; ++j) {
                i64 acc = 0;
                for (int p = 0; p < cols; ++p) acc += s.v.at(i, p) * s.vinv.at(p, j);
                CHECK(acc == (i == j ? 1 : 0));
            }
    }
}

TEST_CASE("row lattice membership and canonical representatives") {
    // Lattice in Z^2 containing the moduli sublattice 6Z x 6Z plus (2,1).
    RowLattice lat = make_lattice(2, {{2, 1}, {6, 0}, {0, 6}});
    CHECK(lat.contains({2, 1}));
    CHECK(lat.contains({4, 2}));
    CHECK(lat.contains({8, 4}));
    CHECK(lat.contains({6, 0}));
    CHECK_FALSE(lat.contains({1, 0}));
    CHECK_FALSE(lat.contains({2, 2}));

    // reduce is idempotent and constant on cosets
    std::mt19937 rng(7);
    std::uniform_int_distribution<i64> d(-12, 12);
    for (int t = 0; t < 100; ++t) {
        Vec x = {d(rng), d(rng)};
        Vec r = lat.reduce(x);
        CHECK(lat.reduce(r) == r);
        Vec shifted = {x[0] + 2, x[1] + 1};
        CHECK(lat.reduce(shifted) == r);
    }
}

TEST_CASE("congruence solver agrees with brute force and is lexicographically minimal") {
    std::mt19937 rng(41);
    int solvable = 0, unsolvable = 0;
    for (int t = 0; t < 150; ++t) {
        int rows = 1 + static_cast<int>(rng() % 3);
        int cols = 1 + static_cast<int>(rng() % 3);
        Vec col_mods(cols), row_mods(rows);
        for (auto& m : col_mods) m = 2 + static_cast<i64>(rng() % 3);  // 2..4
        for (auto& m : row_mods) m = 2 + static_cast<i64>(rng() % 3);
        // Well-formedness: a[i][j] * col_mods[j] == 0 mod row_mods[i]. Use
        // multiples of row_mods[i] / gcd(row_mods[i], col_mods[j]).
        Mat a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                i64 unit = row_mods[i] / gcd_nonneg(row_mods[i], col_mods[j]);
                a.at(i, j) = unit * static_cast<i64>(rng() % 3);
            }
        Vec rhs(rows);
        for (int i = 0; i < rows; ++i) rhs[i] = static_cast<i64>(rng() % row_mods[i]);

        CongruenceSolver solver(a, row_mods, col_mods);
        auto got = solver.solve(rhs);
        auto all = brute_solutions(a, row_mods, col_mods, rhs);
        if (all.empty()) {
            CHECK_FALSE(got.has_value());
            ++unsolvable;
        } else {
            REQUIRE(got.has_value());
            Vec lexmin = all.front();
            for (const Vec& s : all)
                if (s < lexmin) lexmin = s;
            CHECK(*got == lexmin);
            ++solvable;
        }
        // kernel contains the coordinate sublattice
        for (int j = 0; j < cols; ++j) {
            Vec e(cols, 0);
            e[j] = col_mods[j];
            CHECK(solver.kernel().contains(e));
        }
    }
    // the sample must exercise both outcomes
    CHECK(solvable > 0);
    CHECK(unsolvable > 0);
}

TEST_CASE("lattice quotient invariant factors on a known example") {
    // Z^2 (with 4Z x 4Z identified) over the sublattice generated by doubles:
    // quotient (Z/4 x Z/4) / 2(Z/4 x Z/4) = Z/2 x Z/2.
    RowLattice big = make_lattice(2, {{1, 0}, {0, 1}, {4, 0}, {0, 4}});
    RowLattice sub = make_lattice(2, {{2, 0}, {0, 2}, {4, 0}, {0, 4}});
    LatticeQuotient q = lattice_quotient(big, sub);
    CHECK(q.factors == std::vector<i64>{2, 2});
    CHECK(q.order() == 4);
    CHECK(q.coords({2, 0}) == Vec{0, 0});
    CHECK(q.coords({1, 0}) != Vec{0, 0});
    // coords constant on cosets of sub
    CHECK(q.coords({1, 2}) == q.coords({1, 0}));

    Budget::reset();
    auto reps = enumerate_quotient(q, {4, 4});
    CHECK(reps.size() == 4);
}

TEST_CASE("lattice quotient of a skew sublattice") {
    // (Z/6)^1: big = Z + 6Z, sub generated by 4 and 6 -> gcd 2 -> Z/2.
    RowLattice big = make_lattice(1, {{1}, {6}});
    RowLattice sub = make_lattice(1, {{4}, {6}});
    LatticeQuotient q = lattice_quotient(big, sub);
    CHECK(q.factors == std::vector<i64>{2});
    CHECK(q.coords({1}) != Vec{0});
    CHECK(q.coords({2}) == Vec{0});
    CHECK(q.coords({4}) == Vec{0});
}
