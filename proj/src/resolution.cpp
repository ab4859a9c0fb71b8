#include "obslab/resolution.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
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

// The module of maps G -> A, one coefficient block per group element, with
// the translated action (g . b)(x) = alpha_g(b(xg)).
struct FunctionSpace {
    const FlowModule* fm = nullptr;
    const FiniteGroup* g = nullptr;

    int r() const { return fm->rank(); }
    int blocks() const { return g->order(); }

    Vec zero() const { return Vec(static_cast<std::size_t>(blocks()) * r(), 0); }
    Vec block(const Vec& b, int x) const {
        return Vec(b.begin() + static_cast<i64>(x) * r(), b.begin() + (static_cast<i64>(x) + 1) * r());
    }
    void set_block(Vec& b, int x, const Vec& v) const {
        for (int j = 0; j < r(); ++j) b[static_cast<i64>(x) * r() + j] = v[j];
    }
    Vec add(const Vec& a, const Vec& b) const {
        Vec out = zero();
        for (int x = 0; x < blocks(); ++x) set_block(out, x, fm->mod.add(block(a, x), block(b, x)));
        return out;
    }
    Vec act(int gelt, const Vec& b) const {
        Vec out = zero();
        for (int x = 0; x < blocks(); ++x)
            set_block(out, x, fm->action.apply(gelt, block(b, g->mul(x, gelt))));
        return out;
    }
    // Coset representative modulo the constants: zero block at the identity.
    Vec canon(const Vec& b) const {
        Vec c = block(b, 0);
        Vec out = zero();
        for (int x = 0; x < blocks(); ++x) set_block(out, x, fm->mod.sub(block(b, x), c));
        return out;
    }
};

Vec rep_of_class(const FlowH1& h1, const AbelianModule& mod, const Vec& coords) {
    Vec v = mod.zero();
    for (std::size_t i = 0; i < h1.factors.size(); ++i)
        v = mod.add(v, mod.scal(coords[i], h1.gens[i]));
    return h1.canonical_rep(v);
}

}  // namespace

ResolutionSystem resolve_three_cocycle(const Cochain& c) {
    if (c.degree != 3) fail(Error::Kind::InvalidArgument, "resolution needs a degree-3 cochain");
    CocycleCheck k = is_cocycle(c);
    if (!k.ok)
        fail(Error::Kind::NotACocycle,
             "input is not a cocycle (" + k.reason + " at " + tuple_text(k.tuple) + ")");

    const FlowModule& fm = *c.flow;
    const FiniteGroup& ggr = *fm.group();
    const int n = ggr.order();
    const int r = fm.rank();
    FunctionSpace fs{&fm, &ggr};
    Budget::charge(static_cast<i64>(n) * n * n * n * r);

    // Standard primitive of the lifted cocycle: u(g,h)(x) = alpha_x^-1(c(x,g,h)).
    std::vector<Vec> u(static_cast<std::size_t>(n) * n, fs.zero());
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            Vec b = fs.zero();
            for (int x = 0; x < n; ++x)
                fs.set_block(b, x, fm.action.apply(ggr.inv(x), c.at({x, g, h})));
            u[static_cast<i64>(g) * n + h] = std::move(b);
        }
    // Its coboundary is the constant embedding of c.
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int kk = 0; kk < n; ++kk) {
                Vec lhs = fs.act(g, u[static_cast<i64>(h) * n + kk]);
                lhs = fs.add(lhs, u[static_cast<i64>(g) * n + ggr.mul(h, kk)]);
                Vec neg = fs.zero();
                for (int x = 0; x < n; ++x)
                    fs.set_block(neg, x,
                                 fm.mod.neg(fm.mod.add(
                                     fs.block(u[static_cast<i64>(ggr.mul(g, h)) * n + kk], x),
                                     fs.block(u[static_cast<i64>(g) * n + h], x))));
                lhs = fs.add(lhs, neg);
                Vec want = c.at({g, h, kk});
                for (int x = 0; x < n; ++x)
                    if (fs.block(lhs, x) != want)
                        fail(Error::Kind::VerificationFailed,
                             "primitive does not cobound the constant embedding at " +
                                 tuple_text({g, h, kk, x}));
            }

    // The kernel subgroup: closure of the action-saturation of range(u),
    // inside the quotient by the constants. u is already in canonical form
    // because c is normalized, so its image needs no adjustment.
    std::set<Vec> gens;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int kk = 0; kk < n; ++kk) {
                Vec v = fs.canon(fs.act(g, u[static_cast<i64>(h) * n + kk]));
                if (v != fs.zero()) gens.insert(std::move(v));
            }
    std::set<Vec> mset;
    mset.insert(fs.zero());
    std::queue<Vec> work;
    work.push(fs.zero());
    while (!work.empty()) {
        Vec e = std::move(work.front());
        work.pop();
        for (const Vec& gvec : gens) {
            Budget::charge(static_cast<i64>(n) * r);
            Vec s = fs.add(e, gvec);
            if (mset.insert(s).second) work.push(std::move(s));
        }
    }
    std::vector<Vec> mlist(mset.begin(), mset.end());
    std::map<Vec, int> mindex;
    for (std::size_t i = 0; i < mlist.size(); ++i) mindex[mlist[i]] = static_cast<int>(i);
    const int mcount = static_cast<int>(mlist.size());
    const int hn = mcount * n;
    Budget::charge(static_cast<i64>(hn) * hn * n * r);

    // Extension of the base by the kernel along u.
    std::vector<int> table(static_cast<std::size_t>(hn) * hn);
    for (int mi = 0; mi < mcount; ++mi)
        for (int g = 0; g < n; ++g)
            for (int ni = 0; ni < mcount; ++ni)
                for (int h = 0; h < n; ++h) {
                    Vec mv = fs.add(mlist[mi], fs.canon(fs.act(g, mlist[ni])));
                    mv = fs.add(mv, u[static_cast<i64>(g) * n + h]);
                    auto it = mindex.find(mv);
                    if (it == mindex.end())
                        fail(Error::Kind::VerificationFailed, "kernel is not closed under the extension");
                    table[(static_cast<i64>(mi) * n + g) * hn + (static_cast<i64>(ni) * n + h)] =
                        it->second * n + ggr.mul(g, h);
                }
    GroupPtr hgrp = make_explicit(std::move(table), "resolution");
    const FiniteGroup& hgr = *hgrp;

    std::vector<int> proj(static_cast<std::size_t>(hn));
    for (int x = 0; x < hn; ++x) proj[x] = x % n;
    QuotientPtr qd = make_quotient_onto(hgrp, fm.action.group, std::move(proj));
    for (int a : qd->kernel.members)
        for (int b2 : qd->kernel.members)
            if (hgr.mul(a, b2) != hgr.mul(b2, a))
                fail(Error::Kind::VerificationFailed, "resolution kernel is not abelian");

    FlowPtr flowH = pullback_flow(c.flow, qd);

    // Cobounding 2-cochain on the resolution group, read off the kernel parts.
    Cochain b = make_cochain(flowH, 2);
    for (int x = 0; x < hn; ++x)
        for (int y = 0; y < hn; ++y) {
            int g = x % n;
            b.set({x, y}, fm.action.apply(g, fs.block(mlist[y / n], g)));
        }
    Cochain lifted = pullback_cochain(c, qd, flowH);
    if (coboundary(b).table != lifted.table)
        fail(Error::Kind::VerificationFailed, "resolution witness does not cobound the lifted cocycle");

    CrossSection sh = default_section(qd);
    InverseData inv = inverse_from_cobounding(c, b, sh);

    NormalSubgroup m = qd->kernel;
    return {c.flow,          std::move(flowH), std::move(qd), std::move(m), std::move(sh),
            std::move(inv.chi), std::move(inv.f), std::move(b), c};
}

ObstructionResolution resolve_obstruction(const ModularObstruction& ob) {
    const Tower& lower = ob.tower;
    const FlowModule& fmG = *lower.flowG;
    const FiniteGroup& ggr = *lower.G();
    PartialData pd = partial_map(ob);
    ResolutionSystem rs = resolve_three_cocycle(pd.cG);

    const GroupPtr& hgrp = rs.to_G->parent;
    const FiniteGroup& hgr = *hgrp;
    const int hn = hgr.order();
    const int r = fmG.rank();

    FlowPtr flowH = pullback_flow(lower.flowG, rs.to_G);
    std::vector<int> lmem;
    for (int x = 0; x < hn; ++x)
        if (lower.N.contains(rs.to_G->proj[x])) lmem.push_back(x);
    NormalSubgroup lres = make_normal_subgroup(hgrp, std::move(lmem));
    Tower tower = make_tower_onto(flowH, std::move(lres), rs.M,
                                  std::vector<int>(rs.to_G->proj), lower);
    CrossSection sh = default_section(tower.to_G);

    const NormalSubgroup& nsub = lower.N;
    std::vector<Vec> znu(nsub.members.size());
    for (std::size_t i = 0; i < nsub.members.size(); ++i)
        znu[i] = rep_of_class(ob.h1, fmG.mod, ob.nu[i]);
    auto off_section = [&](int g) {
        return nsub.index_of(ggr.mul(ob.s.sect[lower.g_to_Q->proj[g]], ggr.inv(g)));
    };
    auto embed_b = [&](int x, int y) { return from_torus_value(*flowH, rs.b.at({x, y})); };

    // u combines the three solved layers; v carries the flow part.
    Budget::charge(static_cast<i64>(hn) * hn * r);
    Cochain u = make_cochain(flowH, 2);
    for (int x = 0; x < hn; ++x)
        for (int y = 0; y < hn; ++y) {
            int g = rs.to_G->proj[x], h = rs.to_G->proj[y];
            Vec v = pd.a.at({g, h});
            v = fmG.mod.add(v, embed_b(x, y));
            v = fmG.mod.add(v, pd.f.at({tower.to_Q->proj[x], tower.to_Q->proj[y]}));
            u.set({x, y}, v);
        }
    std::vector<Vec> vtab(static_cast<std::size_t>(hn));
    for (int x = 0; x < hn; ++x) vtab[x] = znu[off_section(rs.to_G->proj[x])];

    // The lifted cocycle part cobounds through u ...
    Cochain cq_lift = pullback_cochain(ob.three.cQ, tower.to_Q, flowH);
    Cochain du = coboundary(u);
    if (du.table != cq_lift.table)
        fail(Error::Kind::VerificationFailed, "resolution bridge: u does not cobound the lifted part");
    // ... and u's flow defect together with v's coboundary matches the lifted d1.
    for (int x = 0; x < hn; ++x)
        for (int y = 0; y < hn; ++y) {
            Vec uv = u.at({x, y});
            Vec lhs = fmG.mod.sub(flowH->theta.apply(uv), uv);
            lhs = fmG.mod.add(lhs, flowH->action.apply(x, vtab[y]));
            lhs = fmG.mod.sub(lhs, vtab[hgr.mul(x, y)]);
            lhs = fmG.mod.add(lhs, vtab[x]);
            if (lhs != ob.three.d1_at(tower.to_Q->proj[x], tower.to_Q->proj[y]))
                fail(Error::Kind::VerificationFailed,
                     "resolution bridge: flow defect mismatch at " + tuple_text({x, y}));
        }

    // Characteristic data read off from (u, v).
    const NormalSubgroup& lsub = tower.L;
    const int l = lsub.size();
    CharacteristicCocycle chi{flowH, lsub, Vec(static_cast<std::size_t>(l) * l * r, 0),
                              Vec(static_cast<std::size_t>(l) * hn * r, 0),
                              Vec(static_cast<std::size_t>(l) * r, 0)};
    for (int mi = 0; mi < l; ++mi)
        for (int ni = 0; ni < l; ++ni) {
            Vec v = u.at({lsub.members[mi], lsub.members[ni]});
            for (int j = 0; j < r; ++j) chi.mu[(static_cast<i64>(mi) * l + ni) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi)
        for (int x = 0; x < hn; ++x) {
            int m = lsub.members[mi];
            Vec v = fmG.mod.sub(u.at({x, hgr.conj(hgr.inv(x), m)}), u.at({m, x}));
            for (int j = 0; j < r; ++j) chi.lamH[(static_cast<i64>(mi) * hn + x) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi) {
        Vec v = fmG.mod.neg(vtab[lsub.members[mi]]);
        for (int j = 0; j < r; ++j) chi.lamT[static_cast<i64>(mi) * r + j] = v[j];
    }
    CharCheck cc = check_char(chi);
    if (!cc.ok)
        fail(Error::Kind::VerificationFailed,
             "realized data invalid: " + cc.axiom + " at " + tuple_text(cc.tuple));
    ZLMCheck z = in_ZLM(chi, tower.M);
    if (!z.ok)
        fail(Error::Kind::VerificationFailed,
             "realized data leaves the admissible domain: " + z.condition + " at " +
                 tuple_text(z.tuple));

    ObstructionCocycleData realized = delta_mod(chi, tower, ob.s, sh);
    if (realized.ob.nu != ob.nu)
        fail(Error::Kind::VerificationFailed, "realized flow-class part differs from the input");

    // Comparison cochain on Q bridging the input and realized data exactly.
    const FiniteGroup& qgr = *lower.Q();
    const int qn = qgr.order();
    std::vector<int> sdot_vals(static_cast<std::size_t>(qn));
    for (int q = 0; q < qn; ++q) sdot_vals[q] = sh.sect[ob.s.sect[q]];
    CrossSection sdot = make_section(tower.to_Q, std::move(sdot_vals));
    SectionCocycle nn = section_cocycle(ob.s);
    SectionCocycle nl = section_cocycle(sdot);
    Cochain w = make_cochain(lower.flowQ, 2);
    for (int p = 0; p < qn; ++p)
        for (int q = 0; q < qn; ++q) {
            int pq = qgr.mul(p, q);
            Vec v = fmG.mod.sub(pd.a.at({ob.s.sect[p], ob.s.sect[q]}),
                                pd.a.at({nn.at(p, q), ob.s.sect[pq]}));
            v = fmG.mod.add(v, embed_b(sdot.sect[p], sdot.sect[q]));
            v = fmG.mod.sub(v, embed_b(nl.at(p, q), sdot.sect[pq]));
            v = fmG.mod.add(v, pd.f.at({p, q}));
            w.set({p, q}, v);
        }
    StandardThree diff = st3_sub(ob.three, realized.ob.three);
    StandardThree bridge = standard_coboundary(w);
    StandardThree residual = st3_sub(diff, bridge);
    if (!st3_is_zero(residual)) {
        std::string msg = "comparison cochain does not bridge the difference;";
        for (std::size_t i = 0; i < residual.cQ.table.size(); ++i)
            if (residual.cQ.table[i] != 0) {
                msg += " cocycle residual at flat index " + std::to_string(i);
                break;
            }
        for (std::size_t i = 0; i < residual.d1.size(); ++i)
            if (residual.d1[i] != 0) {
                msg += " flow residual at flat index " + std::to_string(i);
                break;
            }
        fail(Error::Kind::VerificationFailed, msg);
    }
    return {std::move(rs), std::move(tower), std::move(chi), std::move(realized), std::move(w)};
}

}  // namespace obslab
