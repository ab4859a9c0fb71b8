#include "obslab/demos.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"
#include "obslab/exact.hpp"

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

// A representative of [w] whose additive order divides k exactly, found by
// solving k*w + (theta - 1)(k*u) = 0 for u when w itself does not qualify.
Vec exact_order_representative(const FlowModule& fm, int k, const Vec& w) {
    const AbelianModule& mod = fm.mod;
    Vec kw = mod.scal(k, w);
    if (kw == mod.zero()) return mod.reduce(w);
    const int r = mod.rank();
    Mat a(r, r);
    for (int i = 0; i < r; ++i) {
        Vec e(static_cast<std::size_t>(r), 0);
        e[i] = 1;
        Vec col = mod.sub(fm.theta.apply(e), e);
        for (int j = 0; j < r; ++j) a.at(j, i) = checked_mul(k, col[j]);
    }
    CongruenceSolver solver(a, mod.moduli, mod.moduli);
    std::optional<Vec> u = solver.solve(mod.neg(kw));
    if (!u)
        fail(Error::Kind::IncompatibleModulus,
             "no representative of the class has additive order dividing " + std::to_string(k));
    Vec rep = mod.add(w, mod.sub(fm.theta.apply(*u), *u));
    if (mod.scal(k, rep) != mod.zero())
        fail(Error::Kind::VerificationFailed, "order-correcting representative is wrong");
    return rep;
}

}  // namespace

HeisenbergDemo build_heisenberg_demo(int k, FlowPtr flow, const Vec& w) {
    if (k < 2) fail(Error::Kind::InvalidArgument, "modulus must be at least 2");
    const FlowModule& fm = *flow;
    const GroupPtr& grp = fm.action.group;
    const FiniteGroup& g = *grp;
    if (g.order() != k * k * k)
        fail(Error::Kind::ContextMismatch, "flow group does not have order k^3");
    GroupPtr model = make_heisenberg(k);
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y)
            if (g.mul(x, y) != model->mul(x, y))
                fail(Error::Kind::ContextMismatch,
                     "flow group is not the modulus-" + std::to_string(k) +
                         " heisenberg group in the standard encoding");
    if (static_cast<int>(w.size()) != fm.rank())
        fail(Error::Kind::InvalidArgument, "class representative has the wrong rank");

    FlowH1 h1 = flow_h1(fm);
    if (!h1_class(h1, fm.mod.scal(k, w)).trivial)
        fail(Error::Kind::IncompatibleModulus,
             "k times the chosen class is nonzero in the flow cohomology group");
    Vec rep = exact_order_representative(fm, k, w);

    // Center = the last-coordinate axis; computed, not assumed.
    std::vector<int> zmem;
    for (int x = 0; x < g.order(); ++x) {
        bool central = true;
        for (int y = 0; y < g.order() && central; ++y)
            if (g.mul(x, y) != g.mul(y, x)) central = false;
        if (central) zmem.push_back(x);
    }
    if (static_cast<int>(zmem.size()) != k)
        fail(Error::Kind::VerificationFailed, "heisenberg center has unexpected order");
    NormalSubgroup center = make_normal_subgroup(grp, std::move(zmem));
    NormalSubgroup trivial = make_normal_subgroup(grp, {0});
    Tower tower = make_tower(flow, center, trivial);
    CrossSection s = default_section(tower.g_to_Q);
    CrossSection sh = default_section(tower.to_G);

    const int r = fm.rank();
    Vec lamt(static_cast<std::size_t>(k) * r, 0);
    for (int i = 0; i < k; ++i) {
        // Center members are exactly the encodings 0..k-1, member i = i-th power.
        Vec v = fm.mod.scal(tower.L.members[i], rep);
        for (int j = 0; j < r; ++j) lamt[static_cast<std::size_t>(i) * r + j] = v[j];
    }
    CharacteristicCocycle chi =
        make_char(flow, tower.L, Vec(static_cast<std::size_t>(k) * k * r, 0),
                  Vec(static_cast<std::size_t>(k) * g.order() * r, 0), std::move(lamt));

    ObstructionCocycleData data = delta_mod(chi, tower, s, sh);

    // The demo's shape is pinned: no pure part, d1 = (a b' mod k) * rep,
    // nu(i-th center power) = i * [rep].
    for (i64 e : data.ob.three.cQ.table)
        if (e != 0)
            fail(Error::Kind::VerificationFailed, "demo pure cocycle part should vanish");
    const FiniteGroup& q = *tower.Q();
    auto ab_of = [&](int qe) {
        int gelt = data.ob.s.sect[qe];
        return std::pair<int, int>(gelt / (k * k), (gelt / k) % k);
    };
    for (int qe = 0; qe < q.order(); ++qe)
        for (int re = 0; re < q.order(); ++re) {
            auto [a1, b1] = ab_of(qe);
            (void)b1;
            auto [a2, b2] = ab_of(re);
            (void)a2;
            if (data.ob.three.d1_at(qe, re) != fm.mod.scal((a1 * b2) % k, rep))
                fail(Error::Kind::VerificationFailed,
                     "demo flow part differs from the pairing at " + tuple_text({qe, re}));
        }
    for (std::size_t i = 0; i < data.ob.tower.N.members.size(); ++i) {
        FlowClass want = h1_class(data.ob.h1, fm.mod.scal(static_cast<i64>(i), rep));
        if (data.ob.nu[i] != want.coords)
            fail(Error::Kind::VerificationFailed, "demo class homomorphism is not i -> i * [w]");
    }
    return {k, std::move(rep), std::move(chi), std::move(data)};
}

SplittingResult splitting_test(const ModularObstruction& ob) {
    const FlowPtr& flowq = ob.tower.flowQ;
    const FlowModule& fm = *flowq;
    const FiniteGroup& q = *fm.action.group;
    const AbelianModule& mod = fm.mod;
    const int n = q.order();
    const int r = fm.rank();

    StandardCheck sc = check_standard_three(ob.three);
    if (!sc.ok)
        fail(Error::Kind::NotACocycle,
             "obstruction pair invalid (" + sc.condition + " at " + tuple_text(sc.tuple) + ")");

    i64 space = 1;
    for (int x = 1; x < n; ++x)
        for (int j = 0; j < r; ++j) space = checked_mul(space, mod.moduli[j]);
    Budget::charge(checked_mul(space, static_cast<i64>(n) * n * r));

    StandardCoboundarySolver solver(flowq);
    Vec b(static_cast<std::size_t>(n) * r, 0);
    const StandardThree& base = ob.three;
    i64 tried = 0;
    while (true) {
        ++tried;
        // d1 perturbed by the coboundary of b; the pure part is untouched.
        Vec d1 = base.d1;
        for (int x = 0; x < n; ++x) {
            Vec bx(b.begin() + static_cast<i64>(x) * r, b.begin() + (static_cast<i64>(x) + 1) * r);
            for (int y = 0; y < n; ++y) {
                Vec by(b.begin() + static_cast<i64>(y) * r,
                       b.begin() + (static_cast<i64>(y) + 1) * r);
                Vec term = fm.action.apply(x, by);
                term = mod.add(term, bx);
                int xy = q.mul(x, y);
                Vec bxy(b.begin() + static_cast<i64>(xy) * r,
                        b.begin() + (static_cast<i64>(xy) + 1) * r);
                term = mod.sub(term, bxy);
                Vec cur = base.d1_at(x, y);
                cur = mod.add(cur, term);
                for (int j = 0; j < r; ++j)
                    d1[(static_cast<i64>(x) * n + y) * r + j] = cur[j];
            }
        }
        StandardThree st{flowq, base.cQ, std::move(d1)};
        if (std::optional<Cochain> f = solver.solve(st)) {
            StandardThree residual = st3_sub(st, standard_coboundary(*f));
            if (!st3_is_zero(residual))
                fail(Error::Kind::VerificationFailed, "splitting witness failed replay");
            return {true, std::move(b), std::move(f), tried, space};
        }
        // Advance the odometer over the non-identity blocks, last coordinate
        // fastest, so candidates appear in lexicographic order.
        int pos = n * r - 1;
        while (pos >= r) {
            if (b[pos] + 1 < mod.moduli[pos % r]) {
                ++b[pos];
                break;
            }
            b[pos] = 0;
            --pos;
        }
        if (pos < r) break;
    }
    SplittingResult out;
    out.split = false;
    out.candidates = tried;
    out.space = space;
    return out;
}

bool necessary_test(const ModularObstruction& ob) {
    const FlowH1& h1 = ob.h1;
    const int fcount = static_cast<int>(h1.factors.size());
    if (fcount == 0) return true;
    const FiniteGroup& q = *ob.tower.Q();
    const int n = q.order();
    const NormalSubgroup& nsub = ob.tower.N;
    SectionCocycle nn = section_cocycle(ob.s);

    auto reduce = [&](Vec v) {
        for (int i = 0; i < fcount; ++i) v[i] = mod_floor(v[i], h1.factors[i]);
        return v;
    };
    std::vector<Vec> z(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            z[static_cast<std::size_t>(x) * n + y] = ob.nu[nsub.index_of(nn.at(x, y))];
    std::vector<Mat> act(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        act[x] = induced_h1_matrix(*ob.tower.flowG, h1, ob.s.sect[x]);

    // The pairing is a 2-cocycle in class coordinates; re-verified, since the
    // solve below is only meaningful for cocycles.
    for (int p = 0; p < n; ++p)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                Vec t = mat_vec(act[p], z[static_cast<std::size_t>(x) * n + y]);
                const Vec& zxy = z[static_cast<std::size_t>(q.mul(p, x)) * n + y];
                const Vec& zpq = z[static_cast<std::size_t>(p) * n + q.mul(x, y)];
                const Vec& zpx = z[static_cast<std::size_t>(p) * n + x];
                for (int i = 0; i < fcount; ++i) t[i] = t[i] - zxy[i] + zpq[i] - zpx[i];
                if (reduce(t) != Vec(static_cast<std::size_t>(fcount), 0))
                    fail(Error::Kind::VerificationFailed,
                         "class pairing is not a cocycle at " + tuple_text({p, x, y}));
            }

    // Solve d(b) = z for a normalized 1-cochain b in class coordinates.
    const int cols = (n - 1) * fcount;
    const int rows = (n - 1) * (n - 1) * fcount;
    Budget::charge(static_cast<i64>(rows) * cols);
    Mat a(rows, cols);
    Vec rhs(static_cast<std::size_t>(rows), 0);
    Vec row_mods(static_cast<std::size_t>(rows), 0);
    Vec col_mods(static_cast<std::size_t>(cols), 0);
    for (int x = 1; x < n; ++x)
        for (int i = 0; i < fcount; ++i) col_mods[static_cast<std::size_t>(x - 1) * fcount + i] = h1.factors[i];
    auto add_block = [&](int row, int y, const Mat* m, i64 sign) {
        if (y == 0) return;  // b(identity) = 0
        int base = (y - 1) * fcount;
        for (int i = 0; i < fcount; ++i)
            for (int j = 0; j < fcount; ++j)
                a.at(row + i, base + j) =
                    checked_add(a.at(row + i, base + j),
                                checked_mul(sign, m ? m->at(i, j) : (i == j ? 1 : 0)));
    };
    int row = 0;
    for (int x = 1; x < n; ++x)
        for (int y = 1; y < n; ++y) {
            add_block(row, y, &act[x], 1);
            add_block(row, q.mul(x, y), nullptr, -1);
            add_block(row, x, nullptr, 1);
            const Vec& zc = z[static_cast<std::size_t>(x) * n + y];
            for (int i = 0; i < fcount; ++i) {
                rhs[row + i] = zc[i];
                row_mods[row + i] = h1.factors[i];
            }
            row += fcount;
        }
    CongruenceSolver solver(a, std::move(row_mods), std::move(col_mods));
    return solver.solve(rhs).has_value();
}

AlternatingForm antisymmetry_invariant(const ModularObstruction& ob) {
    const FlowH1& h1 = ob.h1;
    const int fcount = static_cast<int>(h1.factors.size());
    const FiniteGroup& q = *ob.tower.Q();
    const int n = q.order();
    const NormalSubgroup& nsub = ob.tower.N;
    SectionCocycle nn = section_cocycle(ob.s);

    AlternatingForm out;
    out.order = n;
    out.coords = fcount;
    out.table.assign(static_cast<std::size_t>(n) * n, Vec(static_cast<std::size_t>(fcount), 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Vec& fwd = ob.nu[nsub.index_of(nn.at(x, y))];
            const Vec& bwd = ob.nu[nsub.index_of(nn.at(y, x))];
            Vec v(static_cast<std::size_t>(fcount), 0);
            for (int i = 0; i < fcount; ++i) {
                v[i] = mod_floor(fwd[i] - bwd[i], h1.factors[i]);
                if (v[i] != 0) out.nonzero = true;
            }
            out.table[static_cast<std::size_t>(x) * n + y] = std::move(v);
        }
    for (int x = 0; x < n; ++x)
        if (out.at(x, x) != Vec(static_cast<std::size_t>(fcount), 0))
            fail(Error::Kind::VerificationFailed, "pairing is not alternating on the diagonal");
    return out;
}

}  // namespace obslab
