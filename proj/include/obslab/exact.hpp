#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace obslab {

using i64 = std::int64_t;
using Vec = std::vector<i64>;

// ---- checked 64-bit arithmetic ---------------------------------------------
// All lattice arithmetic in the library goes through these; an overflow is
// reported honestly instead of wrapping.

i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 checked_neg(i64 a);

// Floor division / floor remainder (remainder has the sign of the modulus).
i64 floor_div(i64 a, i64 b);
// Canonical representative in [0, m); requires m >= 1.
i64 mod_floor(i64 a, i64 m);
i64 gcd_nonneg(i64 a, i64 b);

struct ExtGcd {
    i64 g, x, y;  // g = gcd >= 0, x*a + y*b = g
};
ExtGcd ext_gcd(i64 a, i64 b);

// ---- dense integer matrices --------------------------------------------------

struct Mat {
    int rows = 0;
    int cols = 0;
    Vec a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    i64& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    i64 at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static Mat identity(int n);
};

Vec mat_vec(const Mat& m, const Vec& x);  // m * x
Vec vec_mat(const Vec& x, const Mat& m);  // x^T * m

// ---- Smith normal form -------------------------------------------------------
// u * input * v = diag(d) with u, v unimodular; vinv = v^{-1} is maintained
// alongside so quotient coordinates can be read off without a separate
// inversion. The first `rank` diagonal entries are positive and each divides
// the next; the remaining entries are zero.

struct SmithResult {
    std::vector<i64> diag;
    Mat u;
    Mat v;
    Mat vinv;
    int rank = 0;
};

SmithResult smith_normal_form(Mat a);

// ---- integer row lattices in Hermite (echelon) form --------------------------
// Basis rows have strictly increasing pivot columns with positive pivots;
// after finish(), entries above each pivot are reduced into [0, pivot).
// When the lattice contains the coordinate sublattice {m_j e_j} for the
// ambient moduli, every column is a pivot column and reduce() returns the
// unique all-nonnegative box representative of a coset, which is also its
// lexicographically minimal nonnegative representative.

class RowLattice {
public:
    RowLattice() : cols_(0) {}
    explicit RowLattice(int cols) : cols_(cols) {}

    void add_generator(Vec g);
    void finish();  // reduce above-pivot entries; idempotent

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    Vec reduce(Vec x) const;
    bool contains(const Vec& x) const;
    // Coordinates c with c * basis = x; throws VerificationFailed if x is not
    // in the lattice (callers only use this when membership is guaranteed).
    Vec coords_in_basis(const Vec& x) const;

private:
    int cols_;
    std::vector<Vec> rows_;
    std::vector<int> pivots_;
};

RowLattice make_lattice(int cols, const std::vector<Vec>& gens);

// ---- linear congruence systems -----------------------------------------------
// System: for each row i, sum_j a[i][j] * x_j == rhs_i (mod row_mods[i]),
// with unknowns x_j taken in Z/col_mods[j]. Construction requires the system
// to be well formed: a[i][j] * col_mods[j] == 0 (mod row_mods[i]) for all
// entries, so that the equations are well defined on residues.
//
// The Smith factorization of the augmented matrix is computed once at
// construction; each solve() is then a pair of matrix-vector products plus a
// lattice reduction, so one solver can serve many right-hand sides.

class CongruenceSolver {
public:
    CongruenceSolver(const Mat& a, Vec row_mods, Vec col_mods);

    // Lexicographically minimal solution (coordinates in [0, col_mods[j])),
    // or nullopt when the system is unsolvable.
    std::optional<Vec> solve(const Vec& rhs) const;

    // Lattice of homogeneous solutions in Z^cols; contains the coordinate
    // sublattice of the column moduli.
    const RowLattice& kernel() const { return kernel_; }

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    const Vec& col_mods() const { return col_mods_; }

private:
    int nrows_;
    int ncols_;
    Mat a_;
    Vec row_mods_;
    Vec col_mods_;
    Mat u_;
    Mat v_;
    std::vector<i64> diag_;
    int rank_ = 0;
    RowLattice kernel_;
};

// ---- finite quotients of integer lattices --------------------------------------
// Presents big/sub as a finite abelian group in invariant-factor form.
// `big` must be a full-rank lattice in its ambient space and `sub` a
// finite-index sublattice of it (both are guaranteed in library use because
// both contain the ambient moduli sublattice).

struct LatticeQuotient {
    std::vector<i64> factors;  // invariant factors > 1, each dividing the next
    std::vector<Vec> gens;     // ambient generator per factor, reduced mod `sub`

    // Coordinates of x (which must lie in `big`) in the direct sum
    // ⊕ Z/factors[k]; two vectors get equal coordinates iff they differ by an
    // element of `sub`.
    Vec coords(const Vec& x) const;

    i64 order() const;  // product of the invariant factors

    // internals kept for coordinate computations
    RowLattice big;
    RowLattice sub;
    Mat snf_v;               // from the Smith form of sub expressed in big-coordinates
    std::vector<i64> snf_diag;
    std::vector<int> factor_pos;  // positions k with snf_diag[k] > 1
};

LatticeQuotient lattice_quotient(RowLattice big, RowLattice sub);

// All elements of the finite group big/sub as canonical ambient
// representatives (each reduced mod `sub`), enumerated in odometer order over
// the invariant-factor coordinates with the last coordinate varying fastest.
// `ambient_mods` gives the residue moduli of the ambient coordinates so
// representatives stay inside the standard box. Charges budget.
std::vector<Vec> enumerate_quotient(const LatticeQuotient& q, const Vec& ambient_mods);

}  // namespace obslab
