#include "obslab/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"

namespace obslab {

// ---- checked arithmetic -------------------------------------------------------

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        fail(Error::Kind::ArithmeticOverflow, "integer addition overflow");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r))
        fail(Error::Kind::ArithmeticOverflow, "integer subtraction overflow");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        fail(Error::Kind::ArithmeticOverflow, "integer multiplication overflow");
    return r;
}

i64 checked_neg(i64 a) { return checked_sub(0, a); }

i64 floor_div(i64 a, i64 b) {
    if (b == 0) fail(Error::Kind::InvalidArgument, "division by zero");
    i64 q = a / b;
    i64 r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

i64 mod_floor(i64 a, i64 m) {
    if (m < 1) fail(Error::Kind::InvalidArgument, "modulus must be positive");
    i64 r = a % m;
    if (r < 0) r += m;
    return r;
}

i64 gcd_nonneg(i64 a, i64 b) {
    if (a < 0) a = checked_neg(a);
    if (b < 0) b = checked_neg(b);
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    // Invariants: r0 = x0*a + y0*b, r1 = x1*a + y1*b.
    i64 r0 = a, r1 = b;
    i64 x0 = 1, x1 = 0;
    i64 y0 = 0, y1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = checked_sub(r0, checked_mul(q, r1));
        i64 x2 = checked_sub(x0, checked_mul(q, x1));
        i64 y2 = checked_sub(y0, checked_mul(q, y1));
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    if (r0 < 0) {
        r0 = checked_neg(r0);
        x0 = checked_neg(x0);
        y0 = checked_neg(y0);
    }
    return {r0, x0, y0};
}

// ---- matrices -----------------------------------------------------------------

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Vec mat_vec(const Mat& m, const Vec& x) {
    if (static_cast<int>(x.size()) != m.cols)
        fail(Error::Kind::InvalidArgument, "matrix-vector size mismatch");
    Vec out(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        i64 acc = 0;
        for (int j = 0; j < m.cols; ++j) {
            i64 e = m.at(i, j);
            if (e != 0) acc = checked_add(acc, checked_mul(e, x[j]));
        }
        out[i] = acc;
    }
    return out;
}

Vec vec_mat(const Vec& x, const Mat& m) {
    if (static_cast<int>(x.size()) != m.rows)
        fail(Error::Kind::InvalidArgument, "vector-matrix size mismatch");
    Vec out(m.cols, 0);
    for (int i = 0; i < m.rows; ++i) {
        i64 xi = x[i];
        if (xi == 0) continue;
        for (int j = 0; j < m.cols; ++j) {
            i64 e = m.at(i, j);
            if (e != 0) out[j] = checked_add(out[j], checked_mul(xi, e));
        }
    }
    return out;
}

// ---- Smith normal form -----------------------------------------------------

namespace {

// Row/column elementary operations with mirrored transform updates.
struct SnfWorkspace {
    Mat a, u, v, vinv;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
    }
    // row_i += k * row_j
    void add_row(int i, int j, i64 k) {
        if (k == 0) return;
        for (int c = 0; c < a.cols; ++c)
            a.at(i, c) = checked_add(a.at(i, c), checked_mul(k, a.at(j, c)));
        for (int c = 0; c < u.cols; ++c)
            u.at(i, c) = checked_add(u.at(i, c), checked_mul(k, u.at(j, c)));
    }
    // col_i += k * col_j ; inverse op on vinv is row_j -= k * row_i
    void add_col(int i, int j, i64 k) {
        if (k == 0) return;
        for (int r = 0; r < a.rows; ++r)
            a.at(r, i) = checked_add(a.at(r, i), checked_mul(k, a.at(r, j)));
        for (int r = 0; r < v.rows; ++r)
            v.at(r, i) = checked_add(v.at(r, i), checked_mul(k, v.at(r, j)));
        for (int c = 0; c < vinv.cols; ++c)
            vinv.at(j, c) = checked_sub(vinv.at(j, c), checked_mul(k, vinv.at(i, c)));
    }
    void negate_row(int i) {
        for (int c = 0; c < a.cols; ++c) a.at(i, c) = checked_neg(a.at(i, c));
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = checked_neg(u.at(i, c));
    }
};

}  // namespace

SmithResult smith_normal_form(Mat input) {
    const int rows = input.rows, cols = input.cols;
    SnfWorkspace w;
    w.a = std::move(input);
    w.u = Mat::identity(rows);
    w.v = Mat::identity(cols);
    w.vinv = Mat::identity(cols);

    const int n = std::min(rows, cols);
    Budget::charge(static_cast<i64>(n) * std::max(rows, cols) + 1);

    for (int t = 0; t < n; ++t) {
        // Find a pivot of minimal absolute value in the trailing block.
        int pi = -1, pj = -1;
        i64 best = 0;
        for (int i = t; i < rows; ++i) {
            for (int j = t; j < cols; ++j) {
                i64 e = w.a.at(i, j);
                if (e != 0 && (pi < 0 || std::llabs(e) < best)) {
                    pi = i; pj = j; best = std::llabs(e);
                }
            }
        }
        if (pi < 0) break;  // trailing block is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            Budget::charge(static_cast<i64>(rows - t) + (cols - t));
            for (int i = t + 1; i < rows; ++i) {
                i64 e = w.a.at(i, t);
                if (e == 0) continue;
                i64 q = floor_div(e, w.a.at(t, t));
                w.add_row(i, t, checked_neg(q));
                if (w.a.at(i, t) != 0) {  // remainder smaller than pivot: promote it
                    w.swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                i64 e = w.a.at(t, j);
                if (e == 0) continue;
                i64 q = floor_div(e, w.a.at(t, t));
                w.add_col(j, t, checked_neg(q));
                if (w.a.at(t, j) != 0) {
                    w.swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (w.a.at(t, t) < 0) w.negate_row(t);

        // Enforce divisibility of the trailing block by the pivot.
        bool redo = true;
        while (redo) {
            redo = false;
            i64 p = w.a.at(t, t);
            for (int i = t + 1; i < rows && !redo; ++i) {
                Budget::charge(cols - t);
                for (int j = t + 1; j < cols; ++j) {
                    if (w.a.at(i, j) % p != 0) {
                        w.add_row(t, i, 1);
                        redo = true;
                        break;
                    }
                }
            }
            if (redo) {
                // Re-clear row t / column t after the mixing row addition.
                bool clean2 = false;
                while (!clean2) {
                    clean2 = true;
                    Budget::charge(static_cast<i64>(rows - t) + (cols - t));
                    for (int i = t + 1; i < rows; ++i) {
                        i64 e = w.a.at(i, t);
                        if (e == 0) continue;
                        i64 q = floor_div(e, w.a.at(t, t));
                        w.add_row(i, t, checked_neg(q));
                        if (w.a.at(i, t) != 0) { w.swap_rows(t, i); clean2 = false; }
                    }
                    for (int j = t + 1; j < cols; ++j) {
                        i64 e = w.a.at(t, j);
                        if (e == 0) continue;
                        i64 q = floor_div(e, w.a.at(t, t));
                        w.add_col(j, t, checked_neg(q));
                        if (w.a.at(t, j) != 0) { w.swap_cols(t, j); clean2 = false; }
                    }
                }
                if (w.a.at(t, t) < 0) w.negate_row(t);
            }
        }
    }

    SmithResult res;
    res.diag.assign(n, 0);
    res.rank = 0;
    for (int t = 0; t < n; ++t) {
        res.diag[t] = w.a.at(t, t);
        if (res.diag[t] != 0) ++res.rank;
    }
    res.u = std::move(w.u);
    res.v = std::move(w.v);
    res.vinv = std::move(w.vinv);
    return res;
}

// ---- row lattices ------------------------------------------------------------

void RowLattice::add_generator(Vec g) {
    if (static_cast<int>(g.size()) != cols_)
        fail(Error::Kind::InvalidArgument, "lattice generator has wrong length");
    Budget::charge(static_cast<i64>(cols_) + 1);
    for (int j = 0; j < cols_; ++j) {
        if (g[j] == 0) continue;
        // Locate the basis row with pivot j, if any (pivots_ is sorted).
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), j);
        if (it == pivots_.end() || *it != j) {
            if (g[j] < 0)
                for (auto& e : g) e = checked_neg(e);
            int pos = static_cast<int>(it - pivots_.begin());
            rows_.insert(rows_.begin() + pos, std::move(g));
            pivots_.insert(pivots_.begin() + pos, j);
            return;
        }
        int k = static_cast<int>(it - pivots_.begin());
        Vec& row = rows_[k];
        i64 p = row[j], gj = g[j];
        Budget::charge(static_cast<i64>(cols_ - j) + 1);
        if (gj % p == 0) {
            i64 q = gj / p;
            for (int c = j; c < cols_; ++c)
                g[c] = checked_sub(g[c], checked_mul(q, row[c]));
        } else {
            ExtGcd e = ext_gcd(p, gj);
            i64 pd = p / e.g, gd = gj / e.g;
            Vec nb(cols_, 0), ng(cols_, 0);
            for (int c = j; c < cols_; ++c) {
                nb[c] = checked_add(checked_mul(e.x, row[c]), checked_mul(e.y, g[c]));
                ng[c] = checked_sub(checked_mul(pd, g[c]), checked_mul(gd, row[c]));
            }
            row = std::move(nb);
            g = std::move(ng);
        }
    }
}

void RowLattice::finish() {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        int p = pivots_[k];
        i64 piv = rows_[k][p];
        for (std::size_t i = 0; i < k; ++i) {
            i64 q = floor_div(rows_[i][p], piv);
            if (q == 0) continue;
            Budget::charge(static_cast<i64>(cols_ - p) + 1);
            for (int c = p; c < cols_; ++c)
                rows_[i][c] = checked_sub(rows_[i][c], checked_mul(q, rows_[k][c]));
        }
    }
}

Vec RowLattice::reduce(Vec x) const {
    if (static_cast<int>(x.size()) != cols_)
        fail(Error::Kind::InvalidArgument, "lattice reduce: wrong vector length");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        int p = pivots_[k];
        i64 q = floor_div(x[p], rows_[k][p]);
        if (q == 0) continue;
        for (int c = p; c < cols_; ++c)
            x[c] = checked_sub(x[c], checked_mul(q, rows_[k][c]));
    }
    return x;
}

bool RowLattice::contains(const Vec& x) const {
    Vec r = reduce(x);
    for (i64 e : r)
        if (e != 0) return false;
    return true;
}

Vec RowLattice::coords_in_basis(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_)
        fail(Error::Kind::InvalidArgument, "lattice coords: wrong vector length");
    Vec r = x;
    Vec coords(rows_.size(), 0);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        int p = pivots_[k];
        i64 piv = rows_[k][p];
        if (r[p] % piv != 0)
            fail(Error::Kind::VerificationFailed, "vector not in lattice (pivot division)");
        i64 q = r[p] / piv;
        coords[k] = q;
        if (q != 0)
            for (int c = p; c < cols_; ++c)
                r[c] = checked_sub(r[c], checked_mul(q, rows_[k][c]));
    }
    for (i64 e : r)
        if (e != 0) fail(Error::Kind::VerificationFailed, "vector not in lattice (residue)");
    return coords;
}

RowLattice make_lattice(int cols, const std::vector<Vec>& gens) {
    RowLattice lat(cols);
    for (const Vec& g : gens) lat.add_generator(g);
    lat.finish();
    return lat;
}

// ---- congruence solver ---------------------------------------------------------

CongruenceSolver::CongruenceSolver(const Mat& a, Vec row_mods, Vec col_mods)
    : nrows_(a.rows),
      ncols_(a.cols),
      a_(a),
      row_mods_(std::move(row_mods)),
      col_mods_(std::move(col_mods)),
      kernel_(a.cols) {
    if (static_cast<int>(row_mods_.size()) != nrows_ ||
        static_cast<int>(col_mods_.size()) != ncols_)
        fail(Error::Kind::InvalidArgument, "congruence system: moduli sizes mismatch");
    for (i64 m : row_mods_)
        if (m < 1) fail(Error::Kind::InvalidArgument, "row modulus must be positive");
    for (i64 m : col_mods_)
        if (m < 1) fail(Error::Kind::InvalidArgument, "column modulus must be positive");
    // Well-formedness: each equation must be well defined on residue classes.
    for (int i = 0; i < nrows_; ++i)
        for (int j = 0; j < ncols_; ++j)
            if (mod_floor(checked_mul(a_.at(i, j), col_mods_[j]), row_mods_[i]) != 0)
                fail(Error::Kind::InvalidArgument,
                     "congruence system ill formed at entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");

    // Augment with the row moduli: solutions over Z of  a*x + diag(m)*y = rhs.
    Mat aug(nrows_, ncols_ + nrows_);
    for (int i = 0; i < nrows_; ++i) {
        for (int j = 0; j < ncols_; ++j) aug.at(i, j) = a_.at(i, j);
        aug.at(i, ncols_ + i) = row_mods_[i];
    }
    SmithResult s = smith_normal_form(std::move(aug));
    diag_ = std::move(s.diag);
    rank_ = s.rank;
    u_ = std::move(s.u);
    v_ = std::move(s.v);

    // Homogeneous solution lattice: x-parts of the kernel columns of v, plus
    // the coordinate vectors scaled by the column moduli.
    const int naug = ncols_ + nrows_;
    for (int c = rank_; c < naug; ++c) {
        Vec g(ncols_, 0);
        for (int r = 0; r < ncols_; ++r) g[r] = v_.at(r, c);
        kernel_.add_generator(std::move(g));
    }
    for (int j = 0; j < ncols_; ++j) {
        Vec g(ncols_, 0);
        g[j] = col_mods_[j];
        kernel_.add_generator(std::move(g));
    }
    kernel_.finish();
}

std::optional<Vec> CongruenceSolver::solve(const Vec& rhs) const {
    if (static_cast<int>(rhs.size()) != nrows_)
        fail(Error::Kind::InvalidArgument, "congruence solve: wrong rhs length");
    Budget::charge(static_cast<i64>(nrows_) * nrows_ + static_cast<i64>(ncols_ + nrows_) + 1);
    Vec z = mat_vec(u_, rhs);
    const int naug = ncols_ + nrows_;
    Vec w(naug, 0);
    for (int i = 0; i < nrows_; ++i) {
        if (i < static_cast<int>(diag_.size()) && diag_[i] != 0) {
            if (z[i] % diag_[i] != 0) return std::nullopt;
            w[i] = z[i] / diag_[i];
        } else {
            if (z[i] != 0) return std::nullopt;
        }
    }
    // x = (v * w) restricted to the first ncols_ coordinates.
    Vec x(ncols_, 0);
    Budget::charge(static_cast<i64>(ncols_) * naug + 1);
    for (int r = 0; r < ncols_; ++r) {
        i64 acc = 0;
        for (int c = 0; c < naug; ++c) {
            i64 e = v_.at(r, c);
            if (e != 0 && w[c] != 0) acc = checked_add(acc, checked_mul(e, w[c]));
        }
        x[r] = acc;
    }
    for (int j = 0; j < ncols_; ++j) x[j] = mod_floor(x[j], col_mods_[j]);
    x = kernel_.reduce(std::move(x));

    // Re-verify: an incorrect witness here can only mean a library bug.
    for (int i = 0; i < nrows_; ++i) {
        i64 acc = 0;
        for (int j = 0; j < ncols_; ++j) {
            i64 e = a_.at(i, j);
            if (e != 0) acc = checked_add(acc, checked_mul(e, x[j]));
        }
        if (mod_floor(checked_sub(acc, rhs[i]), row_mods_[i]) != 0)
            fail(Error::Kind::VerificationFailed, "congruence witness failed re-check");
    }
    return x;
}

// ---- finite lattice quotients ---------------------------------------------------

LatticeQuotient lattice_quotient(RowLattice big, RowLattice sub) {
    if (big.cols() != sub.cols())
        fail(Error::Kind::InvalidArgument, "lattice quotient: ambient dimensions differ");
    const int n = big.cols();
    if (big.rank() != n)
        fail(Error::Kind::InvalidArgument, "lattice quotient: big lattice must be full rank");

    // Express each sub-generator in big-coordinates.
    Mat mb(sub.rank(), n);
    for (int i = 0; i < sub.rank(); ++i) {
        Vec c = big.coords_in_basis(sub.basis()[i]);
        for (int j = 0; j < n; ++j) mb.at(i, j) = c[j];
    }
    SmithResult s = smith_normal_form(std::move(mb));
    if (s.rank < n)
        fail(Error::Kind::InvalidArgument, "lattice quotient: sublattice has infinite index");

    LatticeQuotient q;
    q.big = std::move(big);
    q.sub = std::move(sub);
    q.snf_v = std::move(s.v);
    q.snf_diag = std::move(s.diag);
    // Quotient = ⊕_k Z/diag[k] on the basis rows of vinv (in big-coordinates);
    // ambient generators are those rows multiplied back through the big basis.
    for (int k = 0; k < n; ++k) {
        if (q.snf_diag[k] <= 1) continue;
        q.factor_pos.push_back(k);
        q.factors.push_back(q.snf_diag[k]);
        Vec amb(n, 0);
        for (int j = 0; j < n; ++j) {
            i64 coef = s.vinv.at(k, j);
            if (coef == 0) continue;
            const Vec& row = q.big.basis()[j];
            for (int c = 0; c < n; ++c)
                amb[c] = checked_add(amb[c], checked_mul(coef, row[c]));
        }
        q.gens.push_back(q.sub.reduce(std::move(amb)));
    }
    return q;
}

Vec LatticeQuotient::coords(const Vec& x) const {
    Vec c = big.coords_in_basis(x);
    Vec y = vec_mat(c, snf_v);
    Vec out(factors.size(), 0);
    for (std::size_t k = 0; k < factors.size(); ++k)
        out[k] = mod_floor(y[factor_pos[k]], factors[k]);
    return out;
}

i64 LatticeQuotient::order() const {
    i64 n = 1;
    for (i64 f : factors) n = checked_mul(n, f);
    return n;
}

std::vector<Vec> enumerate_quotient(const LatticeQuotient& q, const Vec& ambient_mods) {
    const int n = q.big.cols();
    if (static_cast<int>(ambient_mods.size()) != n)
        fail(Error::Kind::InvalidArgument, "enumerate: ambient moduli length mismatch");
    i64 total = q.order();
    Budget::charge(checked_mul(total, static_cast<i64>(n) + 1));

    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(total));
    Vec idx(q.factors.size(), 0);
    for (i64 step = 0; step < total; ++step) {
        Vec elem(n, 0);
        for (std::size_t k = 0; k < q.factors.size(); ++k) {
            if (idx[k] == 0) continue;
            for (int c = 0; c < n; ++c)
                elem[c] = checked_add(elem[c], checked_mul(idx[k], q.gens[k][c]));
        }
        for (int c = 0; c < n; ++c) elem[c] = mod_floor(elem[c], ambient_mods[c]);
        out.push_back(std::move(elem));
        // odometer, last coordinate fastest
        for (int k = static_cast<int>(q.factors.size()) - 1; k >= 0; --k) {
            if (++idx[k] < q.factors[k]) break;
            idx[k] = 0;
        }
    }
    return out;
}

}  // namespace obslab
