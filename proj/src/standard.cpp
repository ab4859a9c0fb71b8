#include "obslab/standard.hpp"

#include <algorithm>
#include <utility>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"

namespace obslab {

namespace {

std::string tuple_text(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

Vec block_at(const Vec& table, i64 block, int rank) {
    return Vec(table.begin() + block * rank, table.begin() + (block + 1) * rank);
}

// Reduce a flat table of module elements into canonical residues.
Vec reduce_table(const AbelianModule& mod, Vec t) {
    const int r = mod.rank();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = mod_floor(t[i], mod.moduli[i % r]);
    return t;
}

Vec table_sub(const AbelianModule& mod, const Vec& a, const Vec& b) {
    const int r = mod.rank();
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = mod_floor(checked_sub(a[i], b[i]), mod.moduli[i % r]);
    return out;
}

Vec table_add(const AbelianModule& mod, const Vec& a, const Vec& b) {
    const int r = mod.rank();
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = mod_floor(checked_add(a[i], b[i]), mod.moduli[i % r]);
    return out;
}

}  // namespace

// ---- standard 2-cochains ----------------------------------------------------------

Vec StandardTwo::d_at(int h) const { return block_at(d, h, rank()); }

StandardCheck check_standard_two(const StandardTwo& m) {
    const FlowModule& fm = *m.flow;
    const FiniteGroup& g = *fm.group();
    const int n = g.order();
    const int r = fm.rank();

    if (m.muH.flow != m.flow || m.muH.degree != 2 ||
        static_cast<i64>(m.muH.table.size()) != static_cast<i64>(n) * n * r)
        return {false, "mu-shape", {}};
    if (static_cast<i64>(m.d.size()) != static_cast<i64>(n) * r) return {false, "d-shape", {}};
    if (!fm.mod.is_zero(m.d_at(0))) return {false, "d-normalized", {0}};

    CocycleCheck cc = is_cocycle(m.muH);
    if (!cc.ok)
        return {false, cc.reason == "not-normalized" ? "mu-normalized" : "mu-cocycle", cc.tuple};

    // Linkage at flow step one: theta(mu(h,k)) - mu(h,k) = d(h) + alpha_h(d(k)) - d(hk).
    // Both sides are flow cocycles in the step, so step one implies every step.
    Budget::charge(static_cast<i64>(n) * n * r);
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
            Vec mu = m.muH.at({h, k});
            Vec lhs = fm.mod.sub(fm.theta.apply(mu), mu);
            Vec rhs = fm.mod.sub(fm.mod.add(m.d_at(h), fm.action.apply(h, m.d_at(k))),
                                 m.d_at(g.mul(h, k)));
            if (lhs != rhs) return {false, "linkage", {h, k}};
        }
    return {};
}

StandardTwo make_standard_two(FlowPtr flow, Cochain muH, Vec d) {
    muH.flow = flow;
    muH.table = reduce_table(flow->mod, std::move(muH.table));
    d = reduce_table(flow->mod, std::move(d));
    StandardTwo out{std::move(flow), std::move(muH), std::move(d)};
    StandardCheck sc = check_standard_two(out);
    if (!sc.ok)
        fail(Error::Kind::NotACocycle,
             "standard 2-cochain invalid: " + sc.condition + " at " + tuple_text(sc.tuple));
    return out;
}

StandardTwo standard_two_zero(FlowPtr flow) {
    Cochain mu = make_cochain(flow, 2);
    Vec d(static_cast<std::size_t>(flow->group()->order()) * flow->rank(), 0);
    return {std::move(flow), std::move(mu), std::move(d)};
}

Vec expand_two(const StandardTwo& m, int g, i64 s, int h, i64 t) {
    (void)t;  // the value depends on the first flow component only
    const FlowModule& fm = *m.flow;
    return fm.mod.add(m.muH.at({g, h}), fm.action.apply(g, flow_sum(fm, s, m.d_at(h))));
}

// ---- standard 3-cochains ----------------------------------------------------------

Vec StandardThree::d1_at(int q, int r) const {
    return block_at(d1, static_cast<i64>(q) * order() + r, rank());
}

StandardCheck check_standard_three(const StandardThree& c) {
    const FlowModule& fm = *c.flow;
    const FiniteGroup& g = *fm.group();
    const int n = g.order();
    const int r = fm.rank();

    if (c.cQ.flow != c.flow || c.cQ.degree != 3 ||
        static_cast<i64>(c.cQ.table.size()) != static_cast<i64>(n) * n * n * r)
        return {false, "cQ-shape", {}};
    if (static_cast<i64>(c.d1.size()) != static_cast<i64>(n) * n * r)
        return {false, "d1-shape", {}};
    for (int q = 0; q < n; ++q) {
        if (!fm.mod.is_zero(c.d1_at(q, 0))) return {false, "d1-normalized", {q, 0}};
        if (!fm.mod.is_zero(c.d1_at(0, q))) return {false, "d1-normalized", {0, q}};
    }

    CocycleCheck cc = is_cocycle(c.cQ);
    if (!cc.ok)
        return {false, cc.reason == "not-normalized" ? "cQ-normalized" : "cQ-cocycle", cc.tuple};

    // Linkage at flow step one: (theta-1) cQ = d(d1) as degree-3 tables.
    Cochain d1c{c.flow, 2, c.d1};
    Budget::charge(static_cast<i64>(n) * n * n * r);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int s = 0; s < n; ++s) {
                Vec v = c.cQ.at({p, q, s});
                Vec lhs = fm.mod.sub(fm.theta.apply(v), v);
                if (lhs != coboundary_at(d1c, {p, q, s})) return {false, "linkage", {p, q, s}};
            }
    return {};
}

StandardThree make_standard_three(FlowPtr flow, Cochain cQ, Vec d1) {
    cQ.flow = flow;
    cQ.table = reduce_table(flow->mod, std::move(cQ.table));
    d1 = reduce_table(flow->mod, std::move(d1));
    StandardThree out{std::move(flow), std::move(cQ), std::move(d1)};
    StandardCheck sc = check_standard_three(out);
    if (!sc.ok)
        fail(Error::Kind::NotACocycle,
             "standard 3-cochain invalid: " + sc.condition + " at " + tuple_text(sc.tuple));
    return out;
}

StandardThree st3_zero(FlowPtr flow) {
    Cochain cQ = make_cochain(flow, 3);
    const i64 n = flow->group()->order();
    Vec d1(static_cast<std::size_t>(n * n * flow->rank()), 0);
    return {std::move(flow), std::move(cQ), std::move(d1)};
}

Vec expand_three(const StandardThree& c, int p, i64 s, int q, i64 t, int r, i64 u) {
    (void)t;
    (void)u;
    const FlowModule& fm = *c.flow;
    return fm.mod.add(c.cQ.at({p, q, r}), fm.action.apply(p, flow_sum(fm, s, c.d1_at(q, r))));
}

StandardThree st3_add(const StandardThree& a, const StandardThree& b) {
    if (a.flow != b.flow) fail(Error::Kind::ContextMismatch, "standard cochains over different flows");
    return {a.flow, cochain_add(a.cQ, b.cQ), table_add(a.flow->mod, a.d1, b.d1)};
}

StandardThree st3_sub(const StandardThree& a, const StandardThree& b) {
    if (a.flow != b.flow) fail(Error::Kind::ContextMismatch, "standard cochains over different flows");
    return {a.flow, cochain_sub(a.cQ, b.cQ), table_sub(a.flow->mod, a.d1, b.d1)};
}

bool st3_is_zero(const StandardThree& c) {
    return is_zero(c.cQ) && std::all_of(c.d1.begin(), c.d1.end(), [](i64 v) { return v == 0; });
}

// ---- coboundaries into the standard group ---------------------------------------

StandardThree standard_coboundary_of_pair(const Cochain& a, const Vec& b) {
    FlowPtr flow = a.flow;
    const FlowModule& fm = *flow;
    const FiniteGroup& g = *fm.group();
    const int n = g.order();
    const int r = fm.rank();

    if (a.degree != 2) fail(Error::Kind::InvalidArgument, "pair coboundary needs a degree-2 part");
    CocycleCheck nc = check_normalized(a);
    if (!nc.ok) fail(Error::Kind::InvalidArgument, "degree-2 part must be normalized");
    if (static_cast<i64>(b.size()) != static_cast<i64>(n) * r)
        fail(Error::Kind::InvalidArgument, "flow part must hold one module element per group element");
    if (!fm.mod.is_zero(block_at(b, 0, r)))
        fail(Error::Kind::InvalidArgument, "flow part must vanish at the identity");

    Cochain cQ = coboundary(a);
    Cochain bc{flow, 1, b};
    Vec d1(static_cast<std::size_t>(n) * n * r, 0);
    Budget::charge(static_cast<i64>(n) * n * r);
    for (int q = 0; q < n; ++q)
        for (int s = 0; s < n; ++s) {
            Vec av = a.at({q, s});
            Vec v = fm.mod.sub(fm.mod.sub(fm.theta.apply(av), av), coboundary_at(bc, {q, s}));
            for (int i = 0; i < r; ++i) d1[(static_cast<i64>(q) * n + s) * r + i] = v[i];
        }

    StandardThree out{std::move(flow), std::move(cQ), std::move(d1)};
    StandardCheck sc = check_standard_three(out);
    if (!sc.ok)
        fail(Error::Kind::VerificationFailed,
             "pair coboundary failed validation: " + sc.condition + " at " + tuple_text(sc.tuple));
    return out;
}

StandardThree standard_coboundary(const Cochain& a) {
    Vec b(static_cast<std::size_t>(a.order()) * a.rank(), 0);
    return standard_coboundary_of_pair(a, b);
}

// ---- membership in the distinguished coboundary group ----------------------------

StandardCoboundarySolver::StandardCoboundarySolver(FlowPtr flow) : flow_(std::move(flow)) {
    const FlowModule& fm = *flow_;
    const FiniteGroup& g = *fm.group();
    const int n = g.order();
    const int r = fm.rank();
    const int nf = n - 1;

    const i64 cols = static_cast<i64>(nf) * nf * r;
    const i64 rows3 = static_cast<i64>(nf) * nf * nf * r;
    const i64 rows2 = static_cast<i64>(nf) * nf * r;
    Budget::charge(checked_mul(rows3 + rows2, cols));

    Mat mat(static_cast<int>(rows3 + rows2), static_cast<int>(cols));
    Vec row_mods;
    row_mods.reserve(static_cast<std::size_t>(rows3 + rows2));
    auto col_of = [&](int q, int s, int j) {
        return static_cast<int>((static_cast<i64>(q - 1) * nf + (s - 1)) * r + j);
    };

    // Cocycle rows: d(a)(p,q,s) = alpha_p a(q,s) - a(pq,s) + a(p,qs) - a(p,q).
    int row = 0;
    for (int p = 1; p < n; ++p)
        for (int q = 1; q < n; ++q)
            for (int s = 1; s < n; ++s) {
                const Mat& am = fm.action.at(p).mat;
                const int pq = g.mul(p, q);
                const int qs = g.mul(q, s);
                for (int i = 0; i < r; ++i) {
                    for (int j = 0; j < r; ++j) mat.at(row + i, col_of(q, s, j)) += am.at(i, j);
                    if (pq != 0) mat.at(row + i, col_of(pq, s, i)) -= 1;
                    if (qs != 0) mat.at(row + i, col_of(p, qs, i)) += 1;
                    mat.at(row + i, col_of(p, q, i)) -= 1;
                    row_mods.push_back(fm.mod.moduli[i]);
                }
                row += r;
            }

    // Flow rows: (theta - 1) a(q,s) = d1(q,s).
    for (int q = 1; q < n; ++q)
        for (int s = 1; s < n; ++s) {
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    i64 e = fm.theta.mat.at(i, j) - (i == j ? 1 : 0);
                    mat.at(row + i, col_of(q, s, j)) += e;
                }
                row_mods.push_back(fm.mod.moduli[i]);
            }
            row += r;
        }

    // Reduce entries into canonical residues per row modulus.
    for (int i = 0; i < mat.rows; ++i)
        for (int j = 0; j < mat.cols; ++j) mat.at(i, j) = mod_floor(mat.at(i, j), row_mods[i]);

    Vec col_mods = free_col_mods(fm, n, 2);
    solver_ = std::make_shared<CongruenceSolver>(mat, std::move(row_mods), std::move(col_mods));
}

std::optional<Cochain> StandardCoboundarySolver::solve(const StandardThree& c) const {
    if (c.flow != flow_) fail(Error::Kind::ContextMismatch, "standard cochain over a different flow");
    const FlowModule& fm = *flow_;
    const int n = fm.group()->order();
    const int r = fm.rank();

    Vec rhs = to_free_coords(c.cQ);
    rhs.reserve(rhs.size() + static_cast<std::size_t>(n - 1) * (n - 1) * r);
    for (int q = 1; q < n; ++q)
        for (int s = 1; s < n; ++s) {
            Vec v = c.d1_at(q, s);
            rhs.insert(rhs.end(), v.begin(), v.end());
        }

    std::optional<Vec> sol = solver_->solve(rhs);
    if (!sol) return std::nullopt;
    Cochain a = from_free_coords(flow_, 2, *sol);

    StandardThree back = standard_coboundary(a);
    if (back.cQ.table != c.cQ.table || back.d1 != c.d1)
        fail(Error::Kind::VerificationFailed, "standard coboundary witness failed re-verification");
    return a;
}

std::optional<Cochain> is_standard_coboundary(const StandardThree& c) {
    return StandardCoboundarySolver(c.flow).solve(c);
}

H3sEquality h3s_class_equal(const StandardThree& a, const StandardThree& b) {
    std::optional<Cochain> w = is_standard_coboundary(st3_sub(a, b));
    return {w.has_value(), std::move(w)};
}

// ---- windowed 2-cochains and standardization --------------------------------------

int WindowTwo::point_index(int h, i64 s) const {
    if (s < -window || s > window)
        fail(Error::Kind::InvalidArgument, "flow component outside the window");
    return h * span() + static_cast<int>(s + window);
}

Vec WindowTwo::at(int h, i64 s, int k, i64 t) const {
    i64 block = static_cast<i64>(point_index(h, s)) * points() + point_index(k, t);
    return block_at(table, block, flow->rank());
}

WindowTwo make_window_two(FlowPtr flow, int window, Vec table) {
    if (window < 0) fail(Error::Kind::InvalidArgument, "window must be nonnegative");
    WindowTwo out{std::move(flow), window, {}};
    const i64 p = out.points();
    if (static_cast<i64>(table.size()) != p * p * out.flow->rank())
        fail(Error::Kind::InvalidArgument, "window table has wrong size");
    out.table = reduce_table(out.flow->mod, std::move(table));
    return out;
}

WindowTwo window_from_standard(const StandardTwo& m, int window) {
    WindowTwo out{m.flow, window, {}};
    const int n = m.order();
    const int r = m.rank();
    const i64 p = out.points();
    out.table.assign(static_cast<std::size_t>(p * p * r), 0);
    Budget::charge(p * p * r);
    for (int g = 0; g < n; ++g)
        for (i64 s = -window; s <= window; ++s)
            for (int h = 0; h < n; ++h)
                for (i64 t = -window; t <= window; ++t) {
                    Vec v = expand_two(m, g, s, h, t);
                    i64 base =
                        (static_cast<i64>(out.point_index(g, s)) * p + out.point_index(h, t)) * r;
                    for (int i = 0; i < r; ++i) out.table[base + i] = v[i];
                }
    return out;
}

StandardizeResult standardize_two(const WindowTwo& m) {
    const FlowModule& fm = *m.flow;
    const FiniteGroup& gr = *fm.group();
    const int n = gr.order();
    const int r = fm.rank();
    const int B = m.window;
    if (B < 1) fail(Error::Kind::InvalidArgument, "standardization needs window at least 1");

    // The pure flow block must vanish (the flow direction carries no 2-cohomology).
    for (i64 s = -B; s <= B; ++s)
        for (i64 t = -B; t <= B; ++t)
            if (!fm.mod.is_zero(m.at(0, s, 0, t)))
                fail(Error::Kind::NotNormalizedOnFlow,
                     "window table nonzero on the pure flow block at flow steps (" +
                         std::to_string(s) + "," + std::to_string(t) + ")");

    // Cocycle identity on every in-window triple whose products stay in-window.
    const int span = m.span();
    const i64 pts = m.points();
    Budget::charge(pts * pts * pts * r);
    for (int g = 0; g < n; ++g)
        for (i64 s = -B; s <= B; ++s)
            for (int h = 0; h < n; ++h)
                for (i64 t = -B; t <= B; ++t)
                    for (int k = 0; k < n; ++k)
                        for (i64 u = -B; u <= B; ++u) {
                            if (s + t < -B || s + t > B || t + u < -B || t + u > B) continue;
                            Vec lhs = fm.action.apply(g, theta_apply(fm, s, m.at(h, t, k, u)));
                            Vec v = fm.mod.sub(fm.mod.add(lhs, m.at(g, s, gr.mul(h, k), t + u)),
                                               fm.mod.add(m.at(gr.mul(g, h), s + t, k, u),
                                                          m.at(g, s, h, t)));
                            if (!fm.mod.is_zero(v))
                                fail(Error::Kind::NotACocycle,
                                     "window table violates the cocycle identity at " +
                                         tuple_text({g, static_cast<int>(s), h, static_cast<int>(t),
                                                     k, static_cast<int>(u)}));
                        }

    // Extract the standard part: muH from the flow-zero block, d(h) from the
    // step-one mixed blocks, d(h) = m(1,1; h,0) - m(h,0; 1,1).
    Cochain muH = make_cochain(m.flow, 2);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) muH.set({g, h}, m.at(g, 0, h, 0));
    Vec d(static_cast<std::size_t>(n) * r, 0);
    for (int h = 1; h < n; ++h) {
        Vec v = fm.mod.sub(m.at(0, 1, h, 0), m.at(h, 0, 0, 1));
        for (int i = 0; i < r; ++i) d[static_cast<i64>(h) * r + i] = v[i];
    }
    StandardTwo two = make_standard_two(m.flow, std::move(muH), std::move(d));

    // Difference table; when it vanishes the input was standard on the nose.
    Vec diff(static_cast<std::size_t>(pts * pts * r), 0);
    bool any = false;
    for (int g = 0; g < n; ++g)
        for (i64 s = -B; s <= B; ++s)
            for (int h = 0; h < n; ++h)
                for (i64 t = -B; t <= B; ++t) {
                    Vec v = fm.mod.sub(m.at(g, s, h, t), expand_two(two, g, s, h, t));
                    i64 base = (static_cast<i64>(m.point_index(g, s)) * pts + m.point_index(h, t)) * r;
                    for (int i = 0; i < r; ++i) {
                        diff[base + i] = v[i];
                        any = any || v[i] != 0;
                    }
                }

    StandardizeResult out{std::move(two), Vec(static_cast<std::size_t>(pts) * r, 0), B};
    if (!any) return out;

    // Solve d(w) = diff for a window 1-cochain w with w(identity,0) = 0:
    // d(w)((g,s),(h,t)) = alpha_(g,s) w(h,t) - w(gh, s+t) + w(g,s).
    const int p0 = 0 * span + B;  // index of the identity point
    const int cols_pts = static_cast<int>(pts) - 1;
    auto col_of = [&](int pt, int j) {
        int shifted = pt < p0 ? pt : pt - 1;
        return shifted * r + j;
    };
    std::vector<std::pair<int, int>> pairs;  // constrained (point, point) pairs
    for (int pg = 0; pg < pts; ++pg)
        for (int ph = 0; ph < pts; ++ph) {
            i64 s = pg % span - B, t = ph % span - B;
            if (s + t < -B || s + t > B) continue;
            pairs.emplace_back(pg, ph);
        }
    Mat mat(static_cast<int>(pairs.size()) * r, cols_pts * r);
    Vec row_mods;
    Vec rhs;
    row_mods.reserve(pairs.size() * r);
    rhs.reserve(pairs.size() * r);
    Budget::charge(static_cast<i64>(pairs.size()) * r * cols_pts * r);
    int row = 0;
    for (auto [pg, ph] : pairs) {
        const int g = pg / span, h = ph / span;
        const i64 s = pg % span - B, t = ph % span - B;
        const int prod = m.point_index(gr.mul(g, h), s + t);
        // alpha_(g,s) as a matrix: action of g composed with theta^s.
        Mat act = fm.action.at(g).mat;
        {
            ModuleAut th = fm.theta;
            i64 steps = mod_floor(s, aut_order(fm.theta));
            ModuleAut acc = identity_aut(fm.mod);
            for (i64 i = 0; i < steps; ++i) acc = compose(acc, th);
            act = compose(fm.action.at(g), acc).mat;
        }
        for (int i = 0; i < r; ++i) {
            if (ph != p0)
                for (int j = 0; j < r; ++j) mat.at(row + i, col_of(ph, j)) += act.at(i, j);
            if (prod != p0) mat.at(row + i, col_of(prod, i)) -= 1;
            if (pg != p0) mat.at(row + i, col_of(pg, i)) += 1;
            row_mods.push_back(fm.mod.moduli[i]);
        }
        Vec v = block_at(diff, static_cast<i64>(pg) * pts + ph, r);
        rhs.insert(rhs.end(), v.begin(), v.end());
        row += r;
    }
    for (int i = 0; i < mat.rows; ++i)
        for (int j = 0; j < mat.cols; ++j) mat.at(i, j) = mod_floor(mat.at(i, j), row_mods[i]);
    Vec col_mods(static_cast<std::size_t>(cols_pts) * r);
    for (int pt = 0; pt < cols_pts; ++pt)
        for (int j = 0; j < r; ++j) col_mods[static_cast<i64>(pt) * r + j] = fm.mod.moduli[j];

    CongruenceSolver solver(mat, row_mods, col_mods);
    std::optional<Vec> sol = solver.solve(rhs);
    if (!sol)
        fail(Error::Kind::NotACocycle,
             "window table is not cohomologous to its standard part inside the window");

    Vec w(static_cast<std::size_t>(pts) * r, 0);
    for (int pt = 0; pt < pts; ++pt) {
        if (pt == p0) continue;
        for (int j = 0; j < r; ++j) w[static_cast<i64>(pt) * r + j] = (*sol)[col_of(pt, j)];
    }

    // Re-verify the witness on every constrained pair.
    for (auto [pg, ph] : pairs) {
        const int g = pg / span, h = ph / span;
        const i64 s = pg % span - B, t = ph % span - B;
        Vec acc = fm.action.apply(g, theta_apply(fm, s, block_at(w, ph, r)));
        acc = fm.mod.sub(acc, block_at(w, m.point_index(gr.mul(g, h), s + t), r));
        acc = fm.mod.add(acc, block_at(w, pg, r));
        if (acc != block_at(diff, static_cast<i64>(pg) * pts + ph, r))
            fail(Error::Kind::VerificationFailed, "window witness failed re-verification");
    }
    out.witness = std::move(w);
    return out;
}

// ---- exact enumeration -------------------------------------------------------------

std::vector<StandardTwo> enumerate_standard_twos(FlowPtr flow) {
    const FlowModule& fm = *flow;
    const FiniteGroup& g = *fm.group();
    const int n = g.order();
    const int r = fm.rank();
    const int nf = n - 1;

    // Unknowns: free coordinates of muH, then d at non-identity elements.
    const i64 mu_cols = static_cast<i64>(nf) * nf * r;
    const i64 d_cols = static_cast<i64>(nf) * r;
    const i64 cols = mu_cols + d_cols;
    auto mu_col = [&](int h, int k, int j) {
        return static_cast<int>((static_cast<i64>(h - 1) * nf + (k - 1)) * r + j);
    };
    auto d_col = [&](int h, int j) { return static_cast<int>(mu_cols + static_cast<i64>(h - 1) * r + j); };

    const i64 rows3 = static_cast<i64>(nf) * nf * nf * r;
    const i64 rows2 = static_cast<i64>(nf) * nf * r;
    Budget::charge(checked_mul(rows3 + rows2, cols));
    Mat mat(static_cast<int>(rows3 + rows2), static_cast<int>(cols));
    Vec row_mods;
    row_mods.reserve(static_cast<std::size_t>(rows3 + rows2));

    // Cocycle rows for muH.
    int row = 0;
    for (int p = 1; p < n; ++p)
        for (int q = 1; q < n; ++q)
            for (int s = 1; s < n; ++s) {
                const Mat& am = fm.action.at(p).mat;
                const int pq = g.mul(p, q);
                const int qs = g.mul(q, s);
                for (int i = 0; i < r; ++i) {
                    for (int j = 0; j < r; ++j) mat.at(row + i, mu_col(q, s, j)) += am.at(i, j);
                    if (pq != 0) mat.at(row + i, mu_col(pq, s, i)) -= 1;
                    if (qs != 0) mat.at(row + i, mu_col(p, qs, i)) += 1;
                    mat.at(row + i, mu_col(p, q, i)) -= 1;
                    row_mods.push_back(fm.mod.moduli[i]);
                }
                row += r;
            }

    // Linkage rows: (theta-1) muH(h,k) - d(h) - alpha_h d(k) + d(hk) = 0.
    for (int h = 1; h < n; ++h)
        for (int k = 1; k < n; ++k) {
            const Mat& am = fm.action.at(h).mat;
            const int hk = g.mul(h, k);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    mat.at(row + i, mu_col(h, k, j)) += fm.theta.mat.at(i, j) - (i == j ? 1 : 0);
                    mat.at(row + i, d_col(k, j)) -= am.at(i, j);
                }
                mat.at(row + i, d_col(h, i)) -= 1;
                if (hk != 0) mat.at(row + i, d_col(hk, i)) += 1;
                row_mods.push_back(fm.mod.moduli[i]);
            }
            row += r;
        }

    for (int i = 0; i < mat.rows; ++i)
        for (int j = 0; j < mat.cols; ++j) mat.at(i, j) = mod_floor(mat.at(i, j), row_mods[i]);

    Vec col_mods(static_cast<std::size_t>(cols));
    for (i64 t = 0; t < cols / r; ++t)
        for (int j = 0; j < r; ++j) col_mods[t * r + j] = fm.mod.moduli[j];

    CongruenceSolver solver(mat, std::move(row_mods), col_mods);
    RowLattice box(static_cast<int>(cols));
    for (int j = 0; j < static_cast<int>(cols); ++j) {
        Vec gvec(static_cast<std::size_t>(cols), 0);
        gvec[j] = col_mods[j];
        box.add_generator(std::move(gvec));
    }
    box.finish();
    LatticeQuotient q = lattice_quotient(solver.kernel(), std::move(box));
    std::vector<Vec> points = enumerate_quotient(q, col_mods);

    std::vector<StandardTwo> out;
    out.reserve(points.size());
    for (const Vec& p : points) {
        Cochain mu = from_free_coords(flow, 2, Vec(p.begin(), p.begin() + mu_cols));
        Vec d(static_cast<std::size_t>(n) * r, 0);
        for (int h = 1; h < n; ++h)
            for (int j = 0; j < r; ++j) d[static_cast<i64>(h) * r + j] = p[d_col(h, j)];
        StandardTwo st{flow, std::move(mu), std::move(d)};
        StandardCheck sc = check_standard_two(st);
        if (!sc.ok)
            fail(Error::Kind::VerificationFailed,
                 "enumerated standard 2-cochain failed validation: " + sc.condition);
        out.push_back(std::move(st));
    }
    return out;
}

}  // namespace obslab
