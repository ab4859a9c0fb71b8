#include "obslab/cochain.hpp"

#include <algorithm>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"

namespace obslab {

namespace {

i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

void check_degree(int degree, int max) {
    if (degree < 0 || degree > max)
        fail(Error::Kind::InvalidArgument,
             "unsupported cochain degree " + std::to_string(degree));
}

}  // namespace

i64 Cochain::tuples() const { return ipow(order(), degree); }

i64 Cochain::flat_index(const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != degree)
        fail(Error::Kind::InvalidArgument, "wrong number of cochain arguments");
    i64 idx = 0;
    for (int a : args) {
        if (a < 0 || a >= order())
            fail(Error::Kind::InvalidArgument, "cochain argument out of range");
        idx = idx * order() + a;
    }
    return idx * rank();
}

Vec Cochain::at(const std::vector<int>& args) const {
    i64 base = flat_index(args);
    return Vec(table.begin() + base, table.begin() + base + rank());
}

void Cochain::set(const std::vector<int>& args, const Vec& v) {
    if (static_cast<int>(v.size()) != rank())
        fail(Error::Kind::InvalidArgument, "cochain value has wrong rank");
    i64 base = flat_index(args);
    for (int i = 0; i < rank(); ++i)
        table[base + i] = mod_floor(v[i], flow->mod.moduli[i]);
}

Cochain make_cochain(FlowPtr flow, int degree) {
    check_degree(degree, 3);
    Cochain c;
    c.flow = std::move(flow);
    c.degree = degree;
    c.table.assign(static_cast<std::size_t>(ipow(c.order(), degree)) * c.rank(), 0);
    return c;
}

bool same_context(const Cochain& a, const Cochain& b) {
    return a.flow.get() == b.flow.get() && a.degree == b.degree &&
           a.table.size() == b.table.size();
}

Cochain cochain_add(const Cochain& a, const Cochain& b) {
    if (!same_context(a, b)) fail(Error::Kind::ContextMismatch, "cochain contexts differ");
    Cochain r = a;
    const int rk = a.rank();
    for (std::size_t i = 0; i < r.table.size(); ++i)
        r.table[i] = mod_floor(checked_add(a.table[i], b.table[i]), a.flow->mod.moduli[i % rk]);
    return r;
}

Cochain cochain_sub(const Cochain& a, const Cochain& b) {
    if (!same_context(a, b)) fail(Error::Kind::ContextMismatch, "cochain contexts differ");
    Cochain r = a;
    const int rk = a.rank();
    for (std::size_t i = 0; i < r.table.size(); ++i)
        r.table[i] = mod_floor(checked_sub(a.table[i], b.table[i]), a.flow->mod.moduli[i % rk]);
    return r;
}

Cochain cochain_neg(const Cochain& a) {
    Cochain r = a;
    const int rk = a.rank();
    for (std::size_t i = 0; i < r.table.size(); ++i)
        r.table[i] = mod_floor(checked_neg(a.table[i]), a.flow->mod.moduli[i % rk]);
    return r;
}

bool is_zero(const Cochain& a) {
    for (i64 e : a.table)
        if (e != 0) return false;
    return true;
}

Vec coboundary_at(const Cochain& c, const std::vector<int>& args) {
    const FiniteGroup& g = *c.group();
    const int n = c.degree;
    if (static_cast<int>(args.size()) != n + 1)
        fail(Error::Kind::InvalidArgument, "coboundary evaluation needs degree+1 arguments");
    const AbelianModule& mod = c.flow->mod;

    std::vector<int> head(args.begin() + 1, args.end());
    Vec acc = c.flow->action.apply(args[0], c.at(head));
    // Interior term i merges args[i] and args[i+1] with sign (-1)^{i+1}.
    int sign = -1;
    for (int i = 0; i < n; ++i) {
        std::vector<int> t;
        t.reserve(n);
        for (int j = 0; j <= n; ++j) {
            if (j == i) {
                t.push_back(g.mul(args[i], args[i + 1]));
            } else if (j == i + 1) {
                continue;
            } else {
                t.push_back(args[j]);
            }
        }
        Vec v = c.at(t);
        acc = (sign > 0) ? mod.add(acc, v) : mod.sub(acc, v);
        sign = -sign;
    }
    // Trailing term with sign (-1)^{n+1}.
    std::vector<int> tail(args.begin(), args.end() - 1);
    Vec last = c.at(tail);
    acc = (sign > 0) ? mod.add(acc, last) : mod.sub(acc, last);
    return acc;
}

Cochain coboundary(const Cochain& c) {
    check_degree(c.degree, 2);
    Cochain out = make_cochain(c.flow, c.degree + 1);
    const int n = c.order();
    const int deg = c.degree + 1;
    Budget::charge(ipow(n, deg) * (deg + 1) * c.rank());
    std::vector<int> args(deg, 0);
    for (i64 t = 0; t < ipow(n, deg); ++t) {
        i64 rem = t;
        for (int i = deg - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        out.set(args, coboundary_at(c, args));
    }
    return out;
}

CocycleCheck check_normalized(const Cochain& c) {
    const int n = c.order();
    const int deg = c.degree;
    std::vector<int> args(deg, 0);
    for (i64 t = 0; t < ipow(n, deg); ++t) {
        i64 rem = t;
        bool has_id = (deg == 0) ? false : false;
        for (int i = deg - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        for (int i = 0; i < deg; ++i)
            if (args[i] == 0) has_id = true;
        if (!has_id) continue;
        Vec v = c.at(args);
        for (int k = 0; k < c.rank(); ++k)
            if (v[k] != 0) return CocycleCheck{false, "not-normalized", args, k};
    }
    return CocycleCheck{};
}

CocycleCheck is_cocycle(const Cochain& c) {
    CocycleCheck norm = check_normalized(c);
    if (!norm.ok) return norm;
    const int n = c.order();
    const int deg = c.degree + 1;
    Budget::charge(ipow(n, deg) * (deg + 1) * c.rank());
    std::vector<int> args(deg, 0);
    for (i64 t = 0; t < ipow(n, deg); ++t) {
        i64 rem = t;
        for (int i = deg - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        Vec v = coboundary_at(c, args);
        for (int k = 0; k < c.rank(); ++k)
            if (v[k] != 0) return CocycleCheck{false, "cocycle-identity", args, k};
    }
    return CocycleCheck{};
}

// ---- free coordinates ---------------------------------------------------------

i64 free_count(int order, int degree, int rank) {
    return checked_mul(ipow(order - 1, degree), static_cast<i64>(rank));
}

namespace {

// Free tuples have all arguments nonzero; digits are (arg - 1) in radix
// (order - 1), first argument most significant.
i64 free_tuple_index(const std::vector<int>& args, int order) {
    i64 idx = 0;
    for (int a : args) idx = idx * (order - 1) + (a - 1);
    return idx;
}

std::vector<int> free_tuple_from_index(i64 idx, int order, int degree) {
    std::vector<int> args(degree, 0);
    for (int i = degree - 1; i >= 0; --i) {
        args[i] = static_cast<int>(idx % (order - 1)) + 1;
        idx /= (order - 1);
    }
    return args;
}

}  // namespace

Vec to_free_coords(const Cochain& c) {
    const int n = c.order();
    const i64 tuples = ipow(n - 1, c.degree);
    Vec out(static_cast<std::size_t>(tuples) * c.rank(), 0);
    for (i64 t = 0; t < tuples; ++t) {
        std::vector<int> args = free_tuple_from_index(t, n, c.degree);
        Vec v = c.at(args);
        for (int k = 0; k < c.rank(); ++k) out[t * c.rank() + k] = v[k];
    }
    return out;
}

Cochain from_free_coords(FlowPtr flow, int degree, const Vec& coords) {
    Cochain c = make_cochain(std::move(flow), degree);
    const int n = c.order();
    const i64 tuples = ipow(n - 1, degree);
    if (static_cast<i64>(coords.size()) != tuples * c.rank())
        fail(Error::Kind::InvalidArgument, "free coordinate vector has wrong length");
    for (i64 t = 0; t < tuples; ++t) {
        std::vector<int> args = free_tuple_from_index(t, n, degree);
        Vec v(coords.begin() + t * c.rank(), coords.begin() + (t + 1) * c.rank());
        c.set(args, v);
    }
    return c;
}

Vec free_col_mods(const FlowModule& f, int order, int degree) {
    const i64 tuples = ipow(order - 1, degree);
    Vec mods(static_cast<std::size_t>(tuples) * f.mod.rank());
    for (i64 t = 0; t < tuples; ++t)
        for (int k = 0; k < f.mod.rank(); ++k) mods[t * f.mod.rank() + k] = f.mod.moduli[k];
    return mods;
}

// ---- coboundary solver ------------------------------------------------------------

namespace {

// Matrix of the coboundary operator from degree-(deg-1) free coordinates to
// degree-deg free coordinates.
Mat coboundary_matrix(const FlowModule& f, int deg) {
    const FiniteGroup& g = *f.action.group;
    const int n = g.order();
    const int rk = f.mod.rank();
    const i64 rows_t = ipow(n - 1, deg);
    const i64 cols_t = ipow(n - 1, deg - 1);
    Mat m(static_cast<int>(rows_t * rk), static_cast<int>(cols_t * rk));
    Budget::charge(rows_t * (deg + 1) * rk * rk);

    auto add_term = [&](i64 row_tuple, const std::vector<int>& args, int sign, int act) {
        // Contribution of +-alpha_act(c(args)) to the target tuple's rows.
        bool has_id = false;
        for (int a : args)
            if (a == 0) has_id = true;
        if (has_id) return;  // normalized witness vanishes there
        i64 col_tuple = free_tuple_index(args, n);
        const Mat& am = f.action.auts[act].mat;
        for (int i = 0; i < rk; ++i)
            for (int j = 0; j < rk; ++j) {
                i64& e = m.at(static_cast<int>(row_tuple * rk + i),
                              static_cast<int>(col_tuple * rk + j));
                e = checked_add(e, checked_mul(static_cast<i64>(sign), am.at(i, j)));
            }
    };

    for (i64 t = 0; t < rows_t; ++t) {
        std::vector<int> args = free_tuple_from_index(t, n, deg);
        // alpha_{g0} c(g1..gn)
        add_term(t, std::vector<int>(args.begin() + 1, args.end()), +1, args[0]);
        // interior terms
        int sign = -1;
        for (int i = 0; i + 1 < deg; ++i) {
            std::vector<int> inner;
            inner.reserve(deg - 1);
            for (int j = 0; j < deg; ++j) {
                if (j == i) {
                    inner.push_back(g.mul(args[i], args[i + 1]));
                } else if (j == i + 1) {
                    continue;
                } else {
                    inner.push_back(args[j]);
                }
            }
            add_term(t, inner, sign, 0);
            sign = -sign;
        }
        // trailing term
        add_term(t, std::vector<int>(args.begin(), args.end() - 1), sign, 0);
    }

    // Reduce entries into canonical residues per row modulus.
    for (i64 t = 0; t < rows_t; ++t)
        for (int i = 0; i < rk; ++i)
            for (int cidx = 0; cidx < m.cols; ++cidx) {
                i64& e = m.at(static_cast<int>(t * rk + i), cidx);
                e = mod_floor(e, f.mod.moduli[i]);
            }
    return m;
}

Vec row_mods_for(const FlowModule& f, int order, int degree) {
    return free_col_mods(f, order, degree);
}

}  // namespace

CoboundarySolver::CoboundarySolver(FlowPtr flow, int degree) : flow_(std::move(flow)), degree_(degree) {
    check_degree(degree, 3);
    if (degree == 0)
        fail(Error::Kind::InvalidArgument, "degree-0 cochains have no coboundary witnesses");
    const FlowModule& f = *flow_;
    Mat m = coboundary_matrix(f, degree);
    Vec rmods = row_mods_for(f, f.action.group->order(), degree);
    Vec cmods = free_col_mods(f, f.action.group->order(), degree - 1);
    solver_ = std::make_shared<CongruenceSolver>(m, std::move(rmods), std::move(cmods));
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& target) const {
    if (target.flow.get() != flow_.get() || target.degree != degree_)
        fail(Error::Kind::ContextMismatch, "target does not match the solver's context");
    CocycleCheck norm = check_normalized(target);
    if (!norm.ok) fail(Error::Kind::NotACocycle, "coboundary target is not normalized");
    std::optional<Vec> x = solver_->solve(to_free_coords(target));
    if (!x) return std::nullopt;
    Cochain w = from_free_coords(flow_, degree_ - 1, *x);
    // Safety: the witness must reproduce the target exactly.
    Cochain back = coboundary(w);
    if (back.table != target.table)
        fail(Error::Kind::VerificationFailed, "coboundary witness failed re-check");
    return w;
}

std::optional<Cochain> is_coboundary(const Cochain& c) {
    CocycleCheck cc = is_cocycle(c);
    if (!cc.ok)
        fail(Error::Kind::NotACocycle,
             "input is not a cocycle (" + cc.reason + " at component " +
                 std::to_string(cc.component) + ")");
    CoboundarySolver solver(c.flow, c.degree);
    return solver.solve(c);
}

// ---- cohomology --------------------------------------------------------------------

i64 CohomologyGroup::order() const {
    i64 n = 1;
    for (i64 f : factors) n = checked_mul(n, f);
    return n;
}

Vec CohomologyGroup::class_coords(const Cochain& c) const {
    return quot.coords(to_free_coords(c));
}

CohomologyGroup cohomology(FlowPtr flow, int degree) {
    check_degree(degree, 3);
    const FlowModule& f = *flow;
    const int n = f.action.group->order();
    const int rk = f.mod.rank();
    const int ncols = static_cast<int>(free_count(n, degree, rk));

    // Cocycle lattice: kernel of the next coboundary map (for degree n the
    // conditions live on degree-(n+1) free tuples).
    RowLattice zlat(ncols);
    if (degree < 3) {
        CoboundarySolver next(flow, degree + 1);
        zlat = next.system().kernel();
    } else {
        // Degree 3: build the degree-4 condition matrix directly.
        Mat m = coboundary_matrix(f, 4);
        Vec rmods = row_mods_for(f, n, 4);
        Vec cmods = free_col_mods(f, n, 3);
        CongruenceSolver s(m, std::move(rmods), std::move(cmods));
        zlat = s.kernel();
    }

    // Coboundary lattice: images of the unit witnesses plus the coordinate box.
    RowLattice blat(ncols);
    if (degree >= 1) {
        const i64 wcols = free_count(n, degree - 1, rk);
        for (i64 j = 0; j < wcols; ++j) {
            Vec unit(static_cast<std::size_t>(wcols), 0);
            unit[j] = 1;
            Cochain w = from_free_coords(flow, degree - 1, unit);
            blat.add_generator(to_free_coords(coboundary(w)));
        }
    }
    Vec cmods = free_col_mods(f, n, degree);
    for (int j = 0; j < ncols; ++j) {
        Vec g(ncols, 0);
        g[j] = cmods[j];
        blat.add_generator(std::move(g));
    }
    blat.finish();

    CohomologyGroup h;
    h.flow = flow;
    h.degree = degree;
    h.quot = lattice_quotient(std::move(zlat), std::move(blat));
    h.factors = h.quot.factors;
    for (const Vec& g : h.quot.gens) {
        Cochain rep = from_free_coords(flow, degree, g);
        CocycleCheck cc = is_cocycle(rep);
        if (!cc.ok)
            fail(Error::Kind::VerificationFailed, "cohomology basis element is not a cocycle");
        h.basis.push_back(std::move(rep));
    }
    return h;
}

std::vector<Cochain> class_representatives(const CohomologyGroup& h) {
    Vec mods = free_col_mods(*h.flow, h.flow->action.group->order(), h.degree);
    std::vector<Vec> elems = enumerate_quotient(h.quot, mods);
    std::vector<Cochain> out;
    out.reserve(elems.size());
    for (const Vec& e : elems) out.push_back(from_free_coords(h.flow, h.degree, e));
    return out;
}

// ---- brute-force oracle --------------------------------------------------------------

std::vector<Cochain> enumerate_cocycles(FlowPtr flow, int degree) {
    check_degree(degree, 3);
    const FlowModule& f = *flow;
    const int n = f.action.group->order();
    const int rk = f.mod.rank();
    const i64 ncoords = free_count(n, degree, rk);
    Vec mods = free_col_mods(f, n, degree);

    i64 total = 1;
    for (i64 m : mods) {
        total = checked_mul(total, m);
        if (total > Budget::limit())
            fail(Error::Kind::BudgetExceeded, "cocycle enumeration space too large");
    }
    // Each candidate is scanned over all (degree+1)-tuples.
    Budget::charge(checked_mul(total, ipow(n, degree + 1) * rk));

    std::vector<Cochain> out;
    Vec coords(static_cast<std::size_t>(ncoords), 0);
    for (i64 step = 0; step < total; ++step) {
        Cochain c = from_free_coords(flow, degree, coords);
        if (is_cocycle(c).ok) out.push_back(std::move(c));
        for (i64 k = ncoords - 1; k >= 0; --k) {
            if (++coords[k] < mods[k]) break;
            coords[k] = 0;
            if (k == 0) break;
        }
    }
    return out;
}

std::optional<Cochain> oracle_is_coboundary(const Cochain& c) {
    if (c.degree == 0) fail(Error::Kind::InvalidArgument, "degree-0 cochains have no witnesses");
    const FlowModule& f = *c.flow;
    const int n = c.order();
    const int rk = c.rank();
    const i64 ncoords = free_count(n, c.degree - 1, rk);
    Vec mods = free_col_mods(f, n, c.degree - 1);

    i64 total = 1;
    for (i64 m : mods) {
        total = checked_mul(total, m);
        if (total > Budget::limit())
            fail(Error::Kind::BudgetExceeded, "witness enumeration space too large");
    }
    Budget::charge(checked_mul(total, ipow(n, c.degree) * rk));

    Vec coords(static_cast<std::size_t>(ncoords), 0);
    for (i64 step = 0; step < total; ++step) {
        Cochain w = from_free_coords(c.flow, c.degree - 1, coords);
        if (coboundary(w).table == c.table) return w;
        for (i64 k = ncoords - 1; k >= 0; --k) {
            if (++coords[k] < mods[k]) break;
            coords[k] = 0;
            if (k == 0) break;
        }
    }
    return std::nullopt;
}

std::vector<Cochain> lattice_cocycles(FlowPtr flow, int degree) {
    check_degree(degree, 3);
    if (degree == 0) fail(Error::Kind::InvalidArgument, "degree must be positive");
    const FlowModule& f = *flow;
    const int n = f.action.group->order();
    const int ncols = static_cast<int>(free_count(n, degree, f.mod.rank()));

    // Cocycle lattice: kernel of the next coboundary map.
    Mat m = coboundary_matrix(f, degree + 1);
    Vec rmods = row_mods_for(f, n, degree + 1);
    Vec cmods = free_col_mods(f, n, degree);
    CongruenceSolver s(m, std::move(rmods), cmods);

    RowLattice box(ncols);
    for (int j = 0; j < ncols; ++j) {
        Vec g(static_cast<std::size_t>(ncols), 0);
        g[j] = cmods[j];
        box.add_generator(std::move(g));
    }
    box.finish();

    LatticeQuotient q = lattice_quotient(s.kernel(), std::move(box));
    std::vector<Vec> points = enumerate_quotient(q, cmods);
    std::vector<Cochain> out;
    out.reserve(points.size());
    for (const Vec& p : points) out.push_back(from_free_coords(flow, degree, p));
    return out;
}

Cochain pullback_cochain(const Cochain& c, const QuotientPtr& qd, FlowPtr target_flow) {
    if (qd->quot.get() != c.group().get())
        fail(Error::Kind::ContextMismatch, "cochain does not live on the quotient group");
    if (target_flow->action.group.get() != qd->parent.get())
        fail(Error::Kind::ContextMismatch, "target flow does not live on the parent group");
    Cochain out = make_cochain(std::move(target_flow), c.degree);
    const int n = out.order();
    std::vector<int> args(c.degree, 0), proj_args(c.degree, 0);
    const i64 tuples = out.tuples();
    Budget::charge(tuples * (c.degree + 1));
    for (i64 t = 0; t < tuples; ++t) {
        i64 rem = t;
        for (int i = c.degree - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        for (int i = 0; i < c.degree; ++i) proj_args[i] = qd->proj[args[i]];
        out.set(args, c.at(proj_args));
    }
    return out;
}

}  // namespace obslab
