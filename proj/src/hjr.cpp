#include "obslab/hjr.hpp"

#include <algorithm>
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

void check_nested(const FlowPtr& flowH, const NormalSubgroup& l, const NormalSubgroup& m) {
    const GroupPtr& hg = flowH->action.group;
    if (l.parent != hg || m.parent != hg)
        fail(Error::Kind::ContextMismatch, "subgroups live on a different group than the flow");
    for (int x : m.members)
        if (!l.contains(x))
            fail(Error::Kind::InvalidArgument, "inner subgroup is not contained in the outer one");
    for (int x : l.members)
        if (!flowH->action.at(x).is_identity())
            fail(Error::Kind::InvalidArgument,
                 "the outer subgroup must act trivially on the coefficients");
}

NormalSubgroup image_subgroup(const QuotientPtr& qd, const NormalSubgroup& l) {
    std::vector<int> members;
    for (int x : l.members) members.push_back(qd->proj[x]);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return make_normal_subgroup(qd->quot, std::move(members));
}

void finish_tower(Tower& t) {
    // G -> Q projection: factor the H -> Q projection through H -> G.
    const int gn = t.G()->order();
    std::vector<int> proj_gq(static_cast<std::size_t>(gn));
    for (int g = 0; g < gn; ++g) proj_gq[g] = t.to_Q->proj[t.to_G->coset_min[g]];
    t.g_to_Q = make_quotient_onto(t.G(), t.to_Q->quot, std::move(proj_gq));
    if (t.g_to_Q->kernel.members != t.N.members)
        fail(Error::Kind::VerificationFailed, "tower mid-level kernel mismatch");
}

// Members of M with a nonzero flow part get it cleared by a perturbation
// supported on M; unsolvable members make the cocycle inadmissible.
CharacteristicCocycle clear_flow_on_M(const CharacteristicCocycle& chi, const NormalSubgroup& m) {
    const FlowModule& fm = *chi.flow;
    bool any = false;
    Vec a(static_cast<std::size_t>(chi.lcount()) * chi.rank(), 0);
    FlowH1 h1 = flow_h1(fm);
    for (int x : m.members) {
        int mi = chi.sub.index_of(x);
        Vec part = chi.lamT_at(mi);
        if (fm.mod.is_zero(part)) continue;
        std::optional<Vec> w = h1.witness(fm.mod.neg(part));
        if (!w)
            fail(Error::Kind::NotInZLM,
                 "flow part at member " + std::to_string(x) + " does not cobound");
        for (int j = 0; j < chi.rank(); ++j) a[static_cast<i64>(mi) * chi.rank() + j] = (*w)[j];
        any = true;
    }
    return any ? perturb_by(chi, a) : chi;
}

Vec rep_of_class(const FlowH1& h1, const AbelianModule& mod, const Vec& coords) {
    Vec v = mod.zero();
    for (std::size_t i = 0; i < h1.factors.size(); ++i)
        v = mod.add(v, mod.scal(coords[i], h1.gens[i]));
    return h1.canonical_rep(v);
}

Vec reduce_coords(const FlowH1& h1, Vec coords) {
    for (std::size_t i = 0; i < h1.factors.size(); ++i)
        coords[i] = mod_floor(coords[i], h1.factors[i]);
    return coords;
}

void require_tower_sections(const Tower& tower, const CrossSection& s, const CrossSection& sH) {
    if (s.qd != tower.g_to_Q)
        fail(Error::Kind::SectionMismatch, "section does not lift the tower's bottom quotient");
    if (sH.qd != tower.to_G)
        fail(Error::Kind::SectionMismatch, "section does not lift the tower's top quotient");
}

// Section of H -> Q obtained by composing the two level sections.
CrossSection composed_section(const Tower& tower, const CrossSection& s, const CrossSection& sH) {
    std::vector<int> sect(static_cast<std::size_t>(tower.Q()->order()));
    for (int q = 0; q < tower.Q()->order(); ++q) sect[q] = sH.sect[s.sect[q]];
    return make_section(tower.to_Q, std::move(sect));
}

}  // namespace

bool ModularObstruction::nu_trivial() const {
    for (const Vec& c : nu)
        if (!std::all_of(c.begin(), c.end(), [](i64 v) { return v == 0; })) return false;
    return true;
}

Tower make_tower(FlowPtr flowH, NormalSubgroup l, NormalSubgroup m) {
    check_nested(flowH, l, m);
    Tower t;
    t.flowH = flowH;
    t.L = l;
    t.M = m;
    t.to_G = make_quotient(flowH->action.group, std::move(m));
    t.to_Q = make_quotient(flowH->action.group, std::move(l));
    t.N = image_subgroup(t.to_G, t.L);
    t.flowG = descend_flow(flowH, t.to_G);
    t.flowQ = descend_flow(flowH, t.to_Q);
    t.tflowH = torus_flow(flowH, flowH->action.group);
    t.tflowG = torus_flow(t.flowG, t.to_G->quot);
    finish_tower(t);
    return t;
}

Tower make_tower_onto(FlowPtr flowH, NormalSubgroup l, NormalSubgroup m,
                      std::vector<int> proj_to_G, const Tower& lower) {
    check_nested(flowH, l, m);
    const GroupPtr& hg = flowH->action.group;
    if (flowH->mod.moduli != lower.flowG->mod.moduli || flowH->theta.mat.a != lower.flowG->theta.mat.a ||
        flowH->torus.gen != lower.flowG->torus.gen)
        fail(Error::Kind::ContextMismatch, "coefficient data differs from the lower tower");

    Tower t;
    t.flowH = flowH;
    t.L = std::move(l);
    t.M = std::move(m);
    t.to_G = make_quotient_onto(hg, lower.G(), std::move(proj_to_G));
    if (t.to_G->kernel.members != t.M.members)
        fail(Error::Kind::InvalidArgument, "projection kernel is not the inner subgroup");
    for (int h = 0; h < hg->order(); ++h)
        if (flowH->action.at(h).mat.a != lower.flowG->action.at(t.to_G->proj[h]).mat.a)
            fail(Error::Kind::ContextMismatch, "top action is not the pullback of the lower action");
    NormalSubgroup n = image_subgroup(t.to_G, t.L);
    if (n.members != lower.N.members)
        fail(Error::Kind::InvalidArgument, "outer subgroup does not project onto the lower kernel");
    t.N = lower.N;
    std::vector<int> proj_hq(static_cast<std::size_t>(hg->order()));
    for (int h = 0; h < hg->order(); ++h) proj_hq[h] = lower.g_to_Q->proj[t.to_G->proj[h]];
    t.to_Q = make_quotient_onto(hg, lower.Q(), std::move(proj_hq));
    if (t.to_Q->kernel.members != t.L.members)
        fail(Error::Kind::InvalidArgument, "composed projection kernel is not the outer subgroup");
    t.g_to_Q = lower.g_to_Q;
    t.flowG = lower.flowG;
    t.flowQ = lower.flowQ;
    t.tflowG = lower.tflowG;
    t.tflowH = torus_flow(flowH, hg);
    return t;
}

Cochain delta_hjr(const CharacteristicCocycle& chi, const CrossSection& s, FlowPtr flowQ) {
    const GroupPtr& hg = chi.flow->action.group;
    if (s.qd->parent != hg)
        fail(Error::Kind::ContextMismatch, "section lifts a quotient of a different group");
    if (s.qd->kernel.members != chi.sub.members)
        fail(Error::Kind::ContextMismatch,
             "section kernel differs from the cocycle's distinguished subgroup");
    if (!flowQ || flowQ->action.group != s.qd->quot || flowQ->mod.moduli != chi.flow->mod.moduli)
        fail(Error::Kind::ContextMismatch, "quotient flow does not match the section");
    CharCheck cc = check_char_pure(chi);
    if (!cc.ok)
        fail(Error::Kind::NotACocycle,
             "characteristic data invalid: " + cc.axiom + " at " + tuple_text(cc.tuple));

    const FiniteGroup& hgr = *hg;
    const FiniteGroup& qgr = *s.qd->quot;
    SectionCocycle nl = section_cocycle(s);
    const int qn = qgr.order();
    Budget::charge(static_cast<i64>(qn) * qn * qn);

    Cochain c = make_cochain(flowQ, 3);
    for (int p = 0; p < qn; ++p)
        for (int q = 0; q < qn; ++q)
            for (int r = 0; r < qn; ++r) {
                int sp = s.sect[p];
                int conj = hgr.conj(sp, nl.at(q, r));
                Vec v = chi.lamH_at(chi.sub.index_of(conj), sp);
                v = chi.flow->mod.add(
                    v, chi.mu_at(chi.sub.index_of(conj), chi.sub.index_of(nl.at(p, qgr.mul(q, r)))));
                v = chi.flow->mod.sub(
                    v, chi.mu_at(chi.sub.index_of(nl.at(p, q)), chi.sub.index_of(nl.at(qgr.mul(p, q), r))));
                c.set({p, q, r}, v);
            }
    CocycleCheck k = is_cocycle(c);
    if (!k.ok)
        fail(Error::Kind::VerificationFailed,
             "connecting cochain is not a cocycle (" + k.reason + " at " + tuple_text(k.tuple) + ")");
    return c;
}

InverseData inverse_from_cobounding(const Cochain& xi, const Cochain& mu, const CrossSection& s) {
    const QuotientPtr& qd = s.qd;
    if (xi.degree != 3 || xi.flow->action.group != qd->quot)
        fail(Error::Kind::InvalidArgument, "first input must be a degree-3 cochain on the quotient");
    if (mu.degree != 2 || mu.flow->action.group != qd->parent)
        fail(Error::Kind::InvalidArgument, "second input must be a degree-2 cochain on the parent");
    if (xi.flow->mod.moduli != mu.flow->mod.moduli)
        fail(Error::Kind::ContextMismatch, "cochains take values in different modules");
    CocycleCheck k = is_cocycle(xi);
    if (!k.ok)
        fail(Error::Kind::NotACocycle,
             "input is not a cocycle (" + k.reason + " at " + tuple_text(k.tuple) + ")");

    Cochain lifted = pullback_cochain(xi, qd, mu.flow);
    if (coboundary(mu).table != lifted.table)
        fail(Error::Kind::NotCobounding, "the parent cochain does not cobound the lifted cocycle");

    const FiniteGroup& g = *qd->parent;
    const NormalSubgroup& n = qd->kernel;
    const AbelianModule& mod = mu.flow->mod;
    const int l = n.size();
    const int gn = g.order();
    const int r = mod.rank();

    CharacteristicCocycle chi{mu.flow, n, Vec(static_cast<std::size_t>(l) * l * r, 0),
                              Vec(static_cast<std::size_t>(l) * gn * r, 0),
                              Vec(static_cast<std::size_t>(l) * r, 0)};
    for (int mi = 0; mi < l; ++mi)
        for (int ni = 0; ni < l; ++ni) {
            Vec v = mu.at({n.members[mi], n.members[ni]});
            for (int j = 0; j < r; ++j) chi.mu[(static_cast<i64>(mi) * l + ni) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi)
        for (int x = 0; x < gn; ++x) {
            int inner = g.conj(g.inv(x), n.members[mi]);
            Vec v = mod.sub(mu.at({x, inner}), mu.at({n.members[mi], x}));
            for (int j = 0; j < r; ++j) chi.lamH[(static_cast<i64>(mi) * gn + x) * r + j] = v[j];
        }
    CharCheck cc = check_char_pure(chi);
    if (!cc.ok)
        fail(Error::Kind::VerificationFailed,
             "inverse construction produced invalid data: " + cc.axiom + " at " + tuple_text(cc.tuple));

    SectionCocycle nn = section_cocycle(s);
    const FiniteGroup& qgr = *qd->quot;
    Cochain f = make_cochain(xi.flow, 2);
    for (int p = 0; p < qgr.order(); ++p)
        for (int q = 0; q < qgr.order(); ++q) {
            Vec v = mod.sub(mu.at({s.sect[p], s.sect[q]}), mu.at({nn.at(p, q), s.sect[qgr.mul(p, q)]}));
            f.set({p, q}, v);
        }

    Cochain rebuilt = cochain_add(coboundary(f), delta_hjr(chi, s, xi.flow));
    if (rebuilt.table != xi.table)
        fail(Error::Kind::VerificationFailed,
             "inverse construction does not reproduce the cocycle");
    return {std::move(chi), std::move(f)};
}

ObstructionCocycleData delta_mod(const CharacteristicCocycle& chi, const Tower& tower,
                                 const CrossSection& s, const CrossSection& sH) {
    if (chi.flow != tower.flowH)
        fail(Error::Kind::ContextMismatch, "cocycle does not live over the tower's flow");
    if (chi.sub.members != tower.L.members)
        fail(Error::Kind::ContextMismatch, "cocycle subgroup differs from the tower's outer subgroup");
    require_tower_sections(tower, s, sH);
    CharCheck cc = check_char(chi);
    if (!cc.ok)
        fail(Error::Kind::NotACocycle,
             "characteristic cocycle invalid: " + cc.axiom + " at " + tuple_text(cc.tuple));

    CharacteristicCocycle work = clear_flow_on_M(chi, tower.M);
    ZLMCheck z = in_ZLM(work, tower.M);
    if (!z.ok)
        fail(Error::Kind::NotInZLM,
             "cocycle is outside the admissible domain: " + z.condition + " at " + tuple_text(z.tuple));

    const FlowModule& fm = *tower.flowH;
    const FiniteGroup& qgr = *tower.Q();
    const int qn = qgr.order();
    const int r = fm.rank();

    CrossSection sdot = composed_section(tower, s, sH);
    Cochain cq = delta_hjr(work, sdot, tower.flowQ);

    SectionCocycle nl = section_cocycle(sdot);  // values in L, as elements of H
    Vec d1(static_cast<std::size_t>(qn) * qn * r, 0);
    for (int q = 0; q < qn; ++q)
        for (int rr = 0; rr < qn; ++rr) {
            Vec v = work.lamT_at(work.sub.index_of(nl.at(q, rr)));
            for (int j = 0; j < r; ++j) d1[(static_cast<i64>(q) * qn + rr) * r + j] = v[j];
        }
    StandardThree three{tower.flowQ, std::move(cq), std::move(d1)};
    StandardCheck sc = check_standard_three(three);
    if (!sc.ok)
        fail(Error::Kind::VerificationFailed,
             "connecting data is not standard: " + sc.condition + " at " + tuple_text(sc.tuple));

    FlowH1 h1 = flow_h1(*tower.flowG);
    const NormalSubgroup& n = tower.N;
    std::vector<Vec> zeta(n.members.size());
    std::vector<Vec> nu(n.members.size());
    for (std::size_t i = 0; i < n.members.size(); ++i) {
        zeta[i] = work.lamT_at(work.sub.index_of(sH.sect[n.members[i]]));
        nu[i] = reduce_coords(h1, h1.class_coords(zeta[i]));
    }

    // nu is a homomorphism into the flow classes.
    const FiniteGroup& ggr = *tower.G();
    for (std::size_t i = 0; i < n.members.size(); ++i)
        for (std::size_t j = 0; j < n.members.size(); ++j) {
            int prod = ggr.mul(n.members[i], n.members[j]);
            Vec sum = reduce_coords(h1, h1.class_coords(fm.mod.add(zeta[i], zeta[j])));
            if (sum != nu[n.index_of(prod)])
                fail(Error::Kind::VerificationFailed,
                     "flow classes are not additive on the kernel at " +
                         tuple_text({n.members[i], n.members[j]}));
        }
    // nu is equivariant for conjugation upstairs and the induced action downstairs.
    for (int g = 0; g < ggr.order(); ++g) {
        Mat ind = induced_h1_matrix(*tower.flowG, h1, g);
        for (std::size_t i = 0; i < n.members.size(); ++i) {
            Vec moved = reduce_coords(h1, mat_vec(ind, nu[i]));
            if (moved != nu[n.index_of(ggr.conj(g, n.members[i]))])
                fail(Error::Kind::VerificationFailed,
                     "flow classes are not equivariant at " + tuple_text({g, n.members[i]}));
        }
    }
    // Fiber condition tying d1 to nu along the section cocycle of s.
    SectionCocycle nn = section_cocycle(s);  // values in N, as elements of G
    for (int q = 0; q < qn; ++q)
        for (int rr = 0; rr < qn; ++rr) {
            Vec cls = reduce_coords(h1, h1.class_coords(three.d1_at(q, rr)));
            if (cls != nu[n.index_of(nn.at(q, rr))])
                fail(Error::Kind::VerificationFailed,
                     "fiber condition fails at " + tuple_text({q, rr}));
        }

    ModularObstruction ob{tower, s, std::move(three), std::move(h1), std::move(nu)};
    return {std::move(ob), std::move(zeta)};
}

CoboundPair cobound_for_restricted(const StandardTwo& m, const Tower& tower,
                                   const CrossSection& s, const CrossSection& sH) {
    if (m.flow != tower.flowH)
        fail(Error::Kind::ContextMismatch, "cocycle does not live over the tower's flow");
    require_tower_sections(tower, s, sH);

    const FlowModule& fm = *tower.flowH;
    const FiniteGroup& qgr = *tower.Q();
    const int qn = qgr.order();
    const int r = fm.rank();

    CrossSection sdot = composed_section(tower, s, sH);
    SectionCocycle nl = section_cocycle(sdot);

    Cochain a = make_cochain(tower.flowQ, 2);
    for (int p = 0; p < qn; ++p)
        for (int q = 0; q < qn; ++q) {
            Vec v = fm.mod.sub(m.muH.at({nl.at(p, q), sdot.sect[qgr.mul(p, q)]}),
                               m.muH.at({sdot.sect[p], sdot.sect[q]}));
            a.set({p, q}, v);
        }
    Vec b(static_cast<std::size_t>(qn) * r, 0);
    for (int q = 0; q < qn; ++q) {
        Vec v = fm.mod.neg(m.d_at(sdot.sect[q]));
        for (int j = 0; j < r; ++j) b[static_cast<i64>(q) * r + j] = v[j];
    }

    CharacteristicCocycle chi = res_standard_two(m, tower.L);
    ObstructionCocycleData ocd = delta_mod(chi, tower, s, sH);
    StandardThree bound = standard_coboundary_of_pair(a, b);
    StandardThree diff = st3_sub(ocd.ob.three, bound);
    if (!st3_is_zero(diff))
        fail(Error::Kind::VerificationFailed,
             "cobounding pair does not reproduce the restricted obstruction");
    return {std::move(a), std::move(b)};
}

PartialData partial_map(const ModularObstruction& ob) {
    const Tower& tower = ob.tower;
    const FlowModule& fmQ = *tower.flowQ;
    const FlowModule& fmG = *tower.flowG;
    const FiniteGroup& qgr = *tower.Q();
    const FiniteGroup& ggr = *tower.G();
    const NormalSubgroup& n = tower.N;
    const int qn = qgr.order();
    const int gn = ggr.order();

    std::vector<Vec> znu(n.members.size());
    for (std::size_t i = 0; i < n.members.size(); ++i)
        znu[i] = rep_of_class(ob.h1, fmG.mod, ob.nu[i]);

    // f on the bottom quotient: (theta - 1) f(q, r) = d1(q, r) - znu(n_N(q, r)).
    SectionCocycle nn = section_cocycle(ob.s);
    Cochain f = make_cochain(tower.flowQ, 2);
    for (int q = 0; q < qn; ++q)
        for (int rr = 0; rr < qn; ++rr) {
            Vec rhs = fmQ.mod.sub(ob.three.d1_at(q, rr), znu[n.index_of(nn.at(q, rr))]);
            std::optional<Vec> w = ob.h1.witness(rhs);
            if (!w)
                fail(Error::Kind::FiberViolated,
                     "fiber condition fails at " + tuple_text({q, rr}));
            f.set({q, rr}, *w);
        }

    // a on the middle group: the defect of q -> znu(s(pi(g)) g^-1) from being a
    // cocycle is a flow coboundary; a is its minimal solution.
    auto off_section = [&](int g) {
        return n.index_of(ggr.mul(ob.s.sect[tower.g_to_Q->proj[g]], ggr.inv(g)));
    };
    Cochain ac = make_cochain(tower.flowG, 2);
    for (int g = 0; g < gn; ++g)
        for (int h = 0; h < gn; ++h) {
            Vec rhs = znu[n.index_of(nn.at(tower.g_to_Q->proj[g], tower.g_to_Q->proj[h]))];
            rhs = fmG.mod.sub(rhs, znu[off_section(g)]);
            rhs = fmG.mod.sub(rhs, fmG.action.apply(g, znu[off_section(h)]));
            rhs = fmG.mod.add(rhs, znu[off_section(ggr.mul(g, h))]);
            std::optional<Vec> w = ob.h1.witness(rhs);
            if (!w)
                fail(Error::Kind::VerificationFailed,
                     "section defect does not cobound at " + tuple_text({g, h}));
            ac.set({g, h}, *w);
        }

    Cochain lifted = pullback_cochain(ob.three.cQ, tower.g_to_Q, tower.flowG);
    Cochain fl = pullback_cochain(f, tower.g_to_Q, tower.flowG);
    Cochain ca = cochain_sub(cochain_sub(lifted, coboundary(fl)), coboundary(ac));

    Cochain cg = make_cochain(tower.tflowG, 3);
    for (int g = 0; g < gn; ++g)
        for (int h = 0; h < gn; ++h)
            for (int k = 0; k < gn; ++k) {
                Vec v = ca.at({g, h, k});
                std::optional<i64> mult = torus_multiple(fmG, v);
                if (!mult)
                    fail(Error::Kind::TorusCoercionFailed,
                         "connecting value outside the torus at " + tuple_text({g, h, k}));
                cg.set({g, h, k}, Vec{*mult});
            }
    CocycleCheck kk = is_cocycle(cg);
    if (!kk.ok)
        fail(Error::Kind::VerificationFailed,
             "torus connecting cochain is not a cocycle (" + kk.reason + " at " +
                 tuple_text(kk.tuple) + ")");
    return {std::move(f), std::move(ac), std::move(cg)};
}

Cochain inf_map(const ModularObstruction& ob) {
    PartialData pd = partial_map(ob);
    return pullback_cochain(pd.cG, ob.tower.to_G, ob.tower.tflowH);
}

ModularObstruction change_section(const ModularObstruction& ob, const CrossSection& s2) {
    if (s2.qd != ob.s.qd)
        fail(Error::Kind::SectionMismatch, "sections lift different quotients");
    const Tower& tower = ob.tower;
    const FlowModule& fmQ = *tower.flowQ;
    const FiniteGroup& ggr = *tower.G();
    const FiniteGroup& qgr = *tower.Q();
    const NormalSubgroup& n = tower.N;
    const int qn = qgr.order();
    const int r = fmQ.rank();

    std::vector<Vec> znu(n.members.size());
    for (std::size_t i = 0; i < n.members.size(); ++i)
        znu[i] = rep_of_class(ob.h1, fmQ.mod, ob.nu[i]);
    auto shift = [&](int q) {
        return znu[n.index_of(ggr.mul(s2.sect[q], ggr.inv(ob.s.sect[q])))];
    };

    Vec d1 = ob.three.d1;
    for (int q = 0; q < qn; ++q)
        for (int rr = 0; rr < qn; ++rr) {
            Vec v = ob.three.d1_at(q, rr);
            v = fmQ.mod.add(v, shift(q));
            v = fmQ.mod.add(v, fmQ.action.apply(q, shift(rr)));
            v = fmQ.mod.sub(v, shift(qgr.mul(q, rr)));
            for (int j = 0; j < r; ++j) d1[(static_cast<i64>(q) * qn + rr) * r + j] = v[j];
        }
    StandardThree three{tower.flowQ, ob.three.cQ, std::move(d1)};
    StandardCheck sc = check_standard_three(three);
    if (!sc.ok)
        fail(Error::Kind::VerificationFailed,
             "transported data is not standard: " + sc.condition + " at " + tuple_text(sc.tuple));

    SectionCocycle nn2 = section_cocycle(s2);
    for (int q = 0; q < qn; ++q)
        for (int rr = 0; rr < qn; ++rr) {
            Vec cls = reduce_coords(ob.h1, ob.h1.class_coords(three.d1_at(q, rr)));
            if (cls != ob.nu[n.index_of(nn2.at(q, rr))])
                fail(Error::Kind::VerificationFailed,
                     "fiber condition fails after transport at " + tuple_text({q, rr}));
        }
    return {tower, s2, std::move(three), ob.h1, ob.nu};
}

ObstructionEq obstruction_equal(const ModularObstruction& a, const ModularObstruction& b) {
    if (a.tower.flowQ != b.tower.flowQ || a.s.qd != b.s.qd || a.tower.N.members != b.tower.N.members)
        fail(Error::Kind::ContextMismatch, "obstructions live over different quotient data");
    const ModularObstruction* rhs = &b;
    ModularObstruction moved;
    if (b.s.sect != a.s.sect) {
        moved = change_section(b, a.s);
        rhs = &moved;
    }
    if (a.nu != rhs->nu) return {false, "flow-class part differs", std::nullopt};
    H3sEquality eq = h3s_class_equal(a.three, rhs->three);
    if (!eq.equal) return {false, "cocycle classes differ", std::nullopt};
    return {true, "", std::move(eq.witness)};
}

RestrictionCompare compare_restricted_delta(const CharacteristicCocycle& chi, const Tower& tower,
                                            const CrossSection& s, const CrossSection& sH) {
    ObstructionCocycleData ocd = delta_mod(chi, tower, s, sH);
    PartialData pd = partial_map(ocd.ob);

    CharacteristicCocycle work = clear_flow_on_M(chi, tower.M);
    ZLMCheck z = in_ZLM(work, tower.M);
    if (!z.ok)
        fail(Error::Kind::NotInZLM,
             "cocycle is outside the admissible domain: " + z.condition + " at " + tuple_text(z.tuple));

    // Torus-valued restriction of the cleared cocycle to the inner subgroup.
    const FlowModule& fm = *tower.flowH;
    const NormalSubgroup& m = tower.M;
    const int l = m.size();
    const int hn = tower.H()->order();
    CharacteristicCocycle chim{tower.tflowH, m, Vec(static_cast<std::size_t>(l) * l, 0),
                               Vec(static_cast<std::size_t>(l) * hn, 0),
                               Vec(static_cast<std::size_t>(l), 0)};
    for (int mi = 0; mi < l; ++mi)
        for (int ni = 0; ni < l; ++ni) {
            Vec v = work.mu_at(work.sub.index_of(m.members[mi]), work.sub.index_of(m.members[ni]));
            chim.mu[static_cast<i64>(mi) * l + ni] = *torus_multiple(fm, v);
        }
    for (int mi = 0; mi < l; ++mi)
        for (int g = 0; g < hn; ++g) {
            Vec v = work.lamH_at(work.sub.index_of(m.members[mi]), g);
            chim.lamH[static_cast<i64>(mi) * hn + g] = *torus_multiple(fm, v);
        }

    Cochain rhs = delta_hjr(chim, sH, tower.tflowG);
    Cochain diff = cochain_sub(pd.cG, rhs);
    std::optional<Cochain> witness = is_coboundary(diff);
    return {witness.has_value(), std::move(pd.cG), std::move(rhs), std::move(witness)};
}

ExactnessReport verify_exactness(FlowPtr flowH, const NormalSubgroup& l, const NormalSubgroup& m) {
    Tower tower = make_tower(std::move(flowH), l, m);
    CrossSection s = default_section(tower.g_to_Q);
    CrossSection sH = default_section(tower.to_G);
    const FlowModule& fm = *tower.flowH;
    ExactnessReport rep;

    auto violation = [&](const std::string& what, const std::string& detail) {
        fail(Error::Kind::ExactnessViolation, what + ": " + detail);
    };
    auto vec_text = [](const Vec& v) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(v[i]);
        }
        return out + "]";
    };
    auto table_text = [&](const CharacteristicCocycle& chi) {
        return "mu=" + vec_text(chi.mu) + " lamH=" + vec_text(chi.lamH) +
               " lamT=" + vec_text(chi.lamT);
    };

    StandardCoboundarySolver solver_q(tower.flowQ);

    // Restrictions of torus-valued 2-cocycles on the whole group.
    std::vector<Cochain> torus2 = lattice_cocycles(tower.tflowH, 2);
    rep.torus_two_cocycles = static_cast<i64>(torus2.size());
    std::vector<CharacteristicCocycle> images;
    images.reserve(torus2.size());
    const int hn = tower.H()->order();
    for (std::size_t i = 0; i < torus2.size(); ++i) {
        Cochain mu0 = make_cochain(tower.flowH, 2);
        for (int g = 0; g < hn; ++g)
            for (int h = 0; h < hn; ++h) mu0.set({g, h}, from_torus_value(fm, torus2[i].at({g, h})));
        StandardTwo st = make_standard_two(tower.flowH, std::move(mu0),
                                           Vec(static_cast<std::size_t>(hn) * fm.rank(), 0));
        CharacteristicCocycle chi = res_standard_two(st, tower.L);
        ObstructionCocycleData ocd = delta_mod(chi, tower, s, sH);
        if (!ocd.ob.nu_trivial())
            violation("restriction image has a nontrivial flow-class part",
                      "input " + std::to_string(i));
        if (!solver_q.solve(ocd.ob.three))
            violation("restriction image is not a standard coboundary", "input " + std::to_string(i));
        cobound_for_restricted(st, tower, s, sH);  // constructive witness, verified inside
        images.push_back(std::move(chi));
    }

    // Every admissible characteristic cocycle, and its obstruction.
    std::vector<CharacteristicCocycle> chars = enumerate_chars(tower.flowH, tower.L);
    rep.chars_total = static_cast<i64>(chars.size());
    CoboundarySolver solver_h3(tower.tflowH, 3);
    for (std::size_t ci = 0; ci < chars.size(); ++ci) {
        const CharacteristicCocycle& chi = chars[ci];
        bool strict = in_ZLM(chi, tower.M).ok;
        bool admissible = true;
        try {
            CharacteristicCocycle cleared = clear_flow_on_M(chi, tower.M);
            admissible = in_ZLM(cleared, tower.M).ok;
        } catch (const Error& e) {
            if (e.kind() != Error::Kind::NotInZLM) throw;
            admissible = false;
        }
        if (strict != admissible) rep.strict_domain_equals_class_domain = false;
        if (!admissible) continue;
        ++rep.chars_admissible;

        ObstructionCocycleData ocd = delta_mod(chi, tower, s, sH);

        Cochain inflated = inf_map(ocd.ob);
        if (!solver_h3.solve(inflated))
            violation("inflated obstruction does not cobound", table_text(chi));

        RestrictionCompare rc = compare_restricted_delta(chi, tower, s, sH);
        if (!rc.equal)
            violation("partial map disagrees with the restricted connecting cocycle",
                      table_text(chi));

        bool trivial = ocd.ob.nu_trivial() && solver_q.solve(ocd.ob.three).has_value();
        if (!trivial) continue;
        ++rep.delta_trivial;
        bool matched = false;
        for (const CharacteristicCocycle& img : images)
            if (char_equiv(chi, img).equal) {
                matched = true;
                break;
            }
        if (!matched)
            violation("obstruction-trivial cocycle is not equivalent to any restriction",
                      table_text(chi));
        ++rep.matched_restrictions;
    }
    rep.notes.push_back(rep.strict_domain_equals_class_domain
                            ? "strict and cleared admissibility agree on every enumerated cocycle"
                            : "some cocycles are admissible only after clearing the flow part");
    return rep;
}

}  // namespace obslab
