#include "obslab/module.hpp"

#include <algorithm>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"

namespace obslab {

// ---- AbelianModule -----------------------------------------------------------

i64 AbelianModule::size() const {
    i64 n = 1;
    for (i64 m : moduli) n = checked_mul(n, m);
    return n;
}

Vec AbelianModule::reduce(Vec v) const {
    if (v.size() != moduli.size())
        fail(Error::Kind::InvalidArgument, "module element has wrong rank");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], moduli[i]);
    return v;
}

Vec AbelianModule::add(const Vec& a, const Vec& b) const {
    Vec r(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
        r[i] = mod_floor(checked_add(a[i], b[i]), moduli[i]);
    return r;
}

Vec AbelianModule::sub(const Vec& a, const Vec& b) const {
    Vec r(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
        r[i] = mod_floor(checked_sub(a[i], b[i]), moduli[i]);
    return r;
}

Vec AbelianModule::neg(const Vec& a) const {
    Vec r(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) r[i] = mod_floor(checked_neg(a[i]), moduli[i]);
    return r;
}

Vec AbelianModule::scal(i64 k, const Vec& a) const {
    Vec r(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) r[i] = mod_floor(checked_mul(k, a[i]), moduli[i]);
    return r;
}

bool AbelianModule::is_zero(const Vec& a) const {
    for (i64 e : a)
        if (e != 0) return false;
    return true;
}

i64 AbelianModule::index_of(const Vec& v) const {
    i64 idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        idx = checked_add(checked_mul(idx, moduli[i]), mod_floor(v[i], moduli[i]));
    return idx;
}

Vec AbelianModule::from_index(i64 idx) const {
    Vec v(moduli.size(), 0);
    for (int i = rank() - 1; i >= 0; --i) {
        v[i] = idx % moduli[i];
        idx /= moduli[i];
    }
    return v;
}

i64 AbelianModule::element_order(const Vec& v) const {
    i64 o = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        i64 m = moduli[i];
        i64 oi = m / gcd_nonneg(v[i], m);
        o = checked_mul(o / gcd_nonneg(o, oi), oi);
    }
    return o;
}

AbelianModule make_module(Vec moduli) {
    for (i64 m : moduli)
        if (m < 1) fail(Error::Kind::InvalidArgument, "module modulus must be positive");
    return AbelianModule{std::move(moduli)};
}

// ---- ModuleAut ----------------------------------------------------------------

Vec ModuleAut::apply(const Vec& v) const {
    Vec r(mod.moduli.size(), 0);
    for (int i = 0; i < mat.rows; ++i) {
        i64 acc = 0;
        for (int j = 0; j < mat.cols; ++j) {
            i64 e = mat.at(i, j);
            if (e != 0) acc = checked_add(acc, checked_mul(e, v[j]));
        }
        r[i] = mod_floor(acc, mod.moduli[i]);
    }
    return r;
}

bool ModuleAut::is_identity() const {
    for (int i = 0; i < mat.rows; ++i)
        for (int j = 0; j < mat.cols; ++j) {
            i64 want = (i == j) ? 1 : 0;
            if (mod_floor(mat.at(i, j) - want, mod.moduli[i]) != 0) return false;
        }
    return true;
}

ModuleAut make_aut(AbelianModule mod, Mat mat) {
    const int r = mod.rank();
    if (mat.rows != r || mat.cols != r)
        fail(Error::Kind::InvalidArgument, "automorphism matrix has wrong shape");
    // Homomorphism condition: entry (i,j) must be a multiple of n_i/gcd(n_i,n_j).
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            i64 need = mod.moduli[i] / gcd_nonneg(mod.moduli[i], mod.moduli[j]);
            if (mod_floor(mat.at(i, j), need) != 0)
                fail(Error::Kind::InvalidArgument,
                     "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") does not define a homomorphism");
            mat.at(i, j) = mod_floor(mat.at(i, j), mod.moduli[i]);
        }
    ModuleAut a{std::move(mod), std::move(mat)};
    // Bijectivity by exhaustion over the (small) module.
    i64 sz = a.mod.size();
    Budget::charge(checked_mul(sz, static_cast<i64>(r) + 1));
    std::vector<char> hit(static_cast<std::size_t>(sz), 0);
    for (i64 idx = 0; idx < sz; ++idx) {
        i64 out = a.mod.index_of(a.apply(a.mod.from_index(idx)));
        if (hit[static_cast<std::size_t>(out)])
            fail(Error::Kind::InvalidArgument, "matrix is not bijective on the module");
        hit[static_cast<std::size_t>(out)] = 1;
    }
    return a;
}

ModuleAut identity_aut(const AbelianModule& mod) {
    return make_aut(mod, Mat::identity(mod.rank()));
}

ModuleAut compose(const ModuleAut& a, const ModuleAut& b) {
    const int r = a.mod.rank();
    Mat m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            i64 acc = 0;
            for (int k = 0; k < r; ++k)
                acc = checked_add(acc, checked_mul(a.mat.at(i, k), b.mat.at(k, j)));
            m.at(i, j) = mod_floor(acc, a.mod.moduli[i]);
        }
    return make_aut(a.mod, std::move(m));
}

int aut_order(const ModuleAut& a) {
    ModuleAut acc = a;
    int k = 1;
    while (!acc.is_identity()) {
        acc = compose(acc, a);
        ++k;
        if (k > 1000000) fail(Error::Kind::BudgetExceeded, "automorphism order too large");
    }
    return k;
}

ModuleAut aut_inverse(const ModuleAut& a) {
    int k = aut_order(a);
    ModuleAut acc = identity_aut(a.mod);
    for (int i = 0; i < k - 1; ++i) acc = compose(acc, a);
    return acc;
}

// ---- GroupAction ---------------------------------------------------------------

GroupAction make_action(GroupPtr group, AbelianModule mod, std::vector<ModuleAut> auts) {
    if (!group) fail(Error::Kind::InvalidArgument, "action needs a group");
    if (static_cast<int>(auts.size()) != group->order())
        fail(Error::Kind::InvalidArgument, "action needs one automorphism per group element");
    for (const ModuleAut& a : auts)
        if (a.mod.moduli != mod.moduli)
            fail(Error::Kind::InvalidArgument, "action automorphism over a different module");
    if (!auts[0].is_identity())
        fail(Error::Kind::InvalidArgument, "action must send the identity to the identity map");
    const int n = group->order();
    Budget::charge(static_cast<i64>(n) * n * mod.rank() * mod.rank());
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            ModuleAut gh = compose(auts[g], auts[h]);
            const ModuleAut& want = auts[group->mul(g, h)];
            for (int i = 0; i < mod.rank(); ++i)
                for (int j = 0; j < mod.rank(); ++j)
                    if (mod_floor(gh.mat.at(i, j) - want.mat.at(i, j), mod.moduli[i]) != 0)
                        fail(Error::Kind::InvalidArgument,
                             "action is not a homomorphism at pair (" + std::to_string(g) + "," +
                                 std::to_string(h) + ")");
        }
    return GroupAction{std::move(group), std::move(mod), std::move(auts)};
}

GroupAction trivial_action(GroupPtr group, const AbelianModule& mod) {
    std::vector<ModuleAut> auts(group->order(), identity_aut(mod));
    return make_action(std::move(group), mod, std::move(auts));
}

// ---- FlowModule ----------------------------------------------------------------

FlowPtr make_flow(AbelianModule mod, ModuleAut theta, GroupAction action, Vec torus_gen) {
    if (theta.mod.moduli != mod.moduli || action.mod.moduli != mod.moduli)
        fail(Error::Kind::InvalidArgument, "flow parts disagree on the module");
    // theta must commute with every action automorphism.
    for (int g = 0; g < action.group->order(); ++g) {
        ModuleAut ab = compose(theta, action.auts[g]);
        ModuleAut ba = compose(action.auts[g], theta);
        for (int i = 0; i < mod.rank(); ++i)
            for (int j = 0; j < mod.rank(); ++j)
                if (mod_floor(ab.mat.at(i, j) - ba.mat.at(i, j), mod.moduli[i]) != 0)
                    fail(Error::Kind::InvalidArgument,
                         "flow does not commute with the action of element " + std::to_string(g));
    }
    torus_gen = mod.reduce(std::move(torus_gen));
    Vec tg = theta.apply(torus_gen);
    if (tg != torus_gen)
        fail(Error::Kind::InvalidArgument, "torus generator is not fixed by the flow");
    for (int g = 0; g < action.group->order(); ++g)
        if (action.apply(g, torus_gen) != torus_gen)
            fail(Error::Kind::InvalidArgument, "torus generator is not fixed by the action");
    Torus torus{torus_gen, mod.element_order(torus_gen)};
    auto f = std::make_shared<FlowModule>();
    f->mod = std::move(mod);
    f->theta = std::move(theta);
    f->action = std::move(action);
    f->torus = std::move(torus);
    return f;
}

FlowPtr make_trivial_flow(GroupPtr group, AbelianModule mod, Vec torus_gen) {
    ModuleAut theta = identity_aut(mod);
    GroupAction act = trivial_action(std::move(group), mod);
    return make_flow(std::move(mod), std::move(theta), std::move(act), std::move(torus_gen));
}

Vec theta_apply(const FlowModule& f, i64 s, const Vec& v) {
    int k = aut_order(f.theta);
    i64 e = mod_floor(s, k);
    Vec r = f.mod.reduce(v);
    for (i64 i = 0; i < e; ++i) r = f.theta.apply(r);
    return r;
}

Vec flow_sum(const FlowModule& f, i64 s, const Vec& a) {
    if (s >= 0) {
        Vec acc = f.mod.zero();
        Vec cur = f.mod.reduce(a);
        for (i64 j = 0; j < s; ++j) {
            acc = f.mod.add(acc, cur);
            cur = f.theta.apply(cur);
        }
        return acc;
    }
    // [-t] = -theta^{-t}[t] with t = -s.
    Vec pos = flow_sum(f, -s, a);
    return f.mod.neg(theta_apply(f, s, pos));
}

std::optional<i64> torus_multiple(const FlowModule& f, const Vec& v) {
    Vec r = f.mod.reduce(v);
    Vec acc = f.mod.zero();
    for (i64 k = 0; k < f.torus.order; ++k) {
        if (acc == r) return k;
        acc = f.mod.add(acc, f.torus.gen);
    }
    return std::nullopt;
}

// ---- flow cohomology -------------------------------------------------------------

bool FlowH1::is_trivial(const Vec& a) const {
    for (i64 c : class_coords(a))
        if (c != 0) return false;
    return true;
}

i64 FlowH1::order() const {
    i64 n = 1;
    for (i64 f : factors) n = checked_mul(n, f);
    return n;
}

std::optional<Vec> FlowH1::witness(const Vec& a) const { return solver->solve(a); }

FlowH1 flow_h1(const FlowModule& f) {
    const int r = f.mod.rank();
    // (theta - 1) as a congruence system over the module.
    Mat tm(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            tm.at(i, j) = mod_floor(f.theta.mat.at(i, j) - (i == j ? 1 : 0), f.mod.moduli[i]);

    FlowH1 h1;
    h1.solver = std::make_shared<CongruenceSolver>(tm, f.mod.moduli, f.mod.moduli);

    // Coboundary lattice: columns of (theta - 1) plus the moduli sublattice.
    RowLattice cob(r);
    for (int j = 0; j < r; ++j) {
        Vec g(r, 0);
        for (int i = 0; i < r; ++i) g[i] = tm.at(i, j);
        cob.add_generator(std::move(g));
    }
    for (int j = 0; j < r; ++j) {
        Vec g(r, 0);
        g[j] = f.mod.moduli[j];
        cob.add_generator(std::move(g));
    }
    cob.finish();

    // Ambient lattice: all of A (unit vectors).
    RowLattice big(r);
    for (int j = 0; j < r; ++j) {
        Vec g(r, 0);
        g[j] = 1;
        big.add_generator(std::move(g));
    }
    big.finish();

    h1.cobound = cob;
    h1.quot = lattice_quotient(std::move(big), std::move(cob));
    h1.factors = h1.quot.factors;
    for (const Vec& g : h1.quot.gens) h1.gens.push_back(h1.cobound.reduce(g));
    return h1;
}

FlowClass h1_class(const FlowH1& h1, const Vec& a) {
    FlowClass c;
    c.coords = h1.class_coords(a);
    c.trivial = true;
    for (i64 e : c.coords)
        if (e != 0) c.trivial = false;
    if (c.trivial) {
        c.witness = h1.witness(a);
        if (!c.witness)
            fail(Error::Kind::VerificationFailed,
                 "class computed trivial but no flow witness exists");
    }
    return c;
}

// ---- equivariant homomorphisms ---------------------------------------------------

Mat induced_h1_matrix(const FlowModule& f, const FlowH1& h1, int g) {
    // The action must preserve the flow-coboundary subgroup to descend.
    for (const Vec& row : h1.cobound.basis()) {
        Vec img = f.action.apply(g, f.mod.reduce(row));
        if (!h1.cobound.contains(img))
            fail(Error::Kind::ActionNotDescending,
                 "action of element " + std::to_string(g) +
                     " does not preserve flow coboundaries");
    }
    const int k = static_cast<int>(h1.factors.size());
    Mat m(k, k);
    for (int j = 0; j < k; ++j) {
        Vec img = f.action.apply(g, h1.gens[j]);
        Vec coords = h1.class_coords(img);
        for (int i = 0; i < k; ++i) m.at(i, j) = coords[i];
    }
    return m;
}

std::vector<EquivariantHom> enumerate_equivariant_homs(const FlowModule& f, const FlowH1& h1,
                                                       const NormalSubgroup& n) {
    if (n.parent.get() != f.action.group.get())
        fail(Error::Kind::InvalidArgument, "subgroup does not belong to the acting group");
    const FiniteGroup& gg = *f.action.group;
    const int nn = n.size();
    const int k = static_cast<int>(h1.factors.size());

    // Unknowns: nu(member_i) in ⊕ Z/factors, for each member (the identity
    // member's value is pinned to zero by explicit equations).
    const int ncols = nn * k;
    Vec col_mods(ncols);
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < k; ++j) col_mods[i * k + j] = h1.factors[j];

    std::vector<Vec> rows;
    Vec row_mods;
    auto add_row = [&](Vec&& row, i64 mod) {
        rows.push_back(std::move(row));
        row_mods.push_back(mod);
    };

    // nu(identity) = 0.
    for (int j = 0; j < k; ++j) {
        Vec row(ncols, 0);
        row[n.index_of(0) * k + j] = 1;
        add_row(std::move(row), h1.factors[j]);
    }
    // Homomorphism: nu(a) + nu(b) - nu(ab) = 0.
    for (int ia = 0; ia < nn; ++ia)
        for (int ib = 0; ib < nn; ++ib) {
            int iab = n.index_of(gg.mul(n.members[ia], n.members[ib]));
            for (int j = 0; j < k; ++j) {
                Vec row(ncols, 0);
                row[ia * k + j] += 1;
                row[ib * k + j] += 1;
                row[iab * k + j] -= 1;
                add_row(std::move(row), h1.factors[j]);
            }
        }
    // Equivariance: nu(g a g^{-1}) - induced(g) nu(a) = 0.
    std::vector<Mat> induced(gg.order());
    for (int g = 0; g < gg.order(); ++g) induced[g] = induced_h1_matrix(f, h1, g);
    for (int g = 0; g < gg.order(); ++g)
        for (int ia = 0; ia < nn; ++ia) {
            int ic = n.index_of(gg.conj(g, n.members[ia]));
            for (int i = 0; i < k; ++i) {
                Vec row(ncols, 0);
                row[ic * k + i] += 1;
                for (int j = 0; j < k; ++j)
                    row[ia * k + j] = checked_sub(row[ia * k + j], induced[g].at(i, j));
                add_row(std::move(row), h1.factors[i]);
            }
        }

    Mat a(static_cast<int>(rows.size()), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < ncols; ++j) a.at(static_cast<int>(i), j) = rows[i][j];
    CongruenceSolver solver(a, row_mods, col_mods);

    // All solutions: the kernel lattice modulo the coordinate box.
    RowLattice box(ncols);
    for (int j = 0; j < ncols; ++j) {
        Vec g(ncols, 0);
        g[j] = col_mods[j];
        box.add_generator(std::move(g));
    }
    box.finish();
    LatticeQuotient solq = lattice_quotient(solver.kernel(), std::move(box));
    std::vector<Vec> sols = enumerate_quotient(solq, col_mods);

    std::sort(sols.begin(), sols.end());
    std::vector<EquivariantHom> out;
    out.reserve(sols.size());
    for (const Vec& s : sols) {
        EquivariantHom h;
        h.coords.resize(nn);
        h.reps.resize(nn);
        for (int i = 0; i < nn; ++i) {
            Vec coords(s.begin() + static_cast<long>(i) * k, s.begin() + static_cast<long>(i + 1) * k);
            Vec amb = f.mod.zero();
            for (int j = 0; j < k; ++j)
                amb = f.mod.add(amb, f.mod.scal(coords[j], h1.gens[j]));
            h.coords[i] = std::move(coords);
            h.reps[i] = h1.canonical_rep(amb);
        }
        out.push_back(std::move(h));
    }
    return out;
}

// ---- derived flows ----------------------------------------------------------------

FlowPtr descend_flow(const FlowPtr& f, const QuotientPtr& qd) {
    if (qd->parent.get() != f->action.group.get())
        fail(Error::Kind::InvalidArgument, "quotient does not match the acting group");
    const int q = qd->quot->order();
    std::vector<ModuleAut> auts;
    auts.reserve(q);
    for (int c = 0; c < q; ++c) auts.push_back(f->action.auts[qd->coset_min[c]]);
    // The action must be constant on cosets.
    for (int g = 0; g < qd->parent->order(); ++g) {
        const ModuleAut& want = auts[qd->proj[g]];
        const ModuleAut& have = f->action.auts[g];
        for (int i = 0; i < f->mod.rank(); ++i)
            for (int j = 0; j < f->mod.rank(); ++j)
                if (mod_floor(want.mat.at(i, j) - have.mat.at(i, j), f->mod.moduli[i]) != 0)
                    fail(Error::Kind::ActionNotDescending,
                         "action is not constant on the coset of element " + std::to_string(g));
    }
    GroupAction act = make_action(qd->quot, f->mod, std::move(auts));
    return make_flow(f->mod, f->theta, std::move(act), f->torus.gen);
}

FlowPtr pullback_flow(const FlowPtr& f, const QuotientPtr& qd) {
    if (qd->quot.get() != f->action.group.get())
        fail(Error::Kind::InvalidArgument, "quotient codomain does not match the acting group");
    std::vector<ModuleAut> auts;
    auts.reserve(qd->parent->order());
    for (int g = 0; g < qd->parent->order(); ++g)
        auts.push_back(f->action.auts[qd->proj[g]]);
    GroupAction act = make_action(qd->parent, f->mod, std::move(auts));
    return make_flow(f->mod, f->theta, std::move(act), f->torus.gen);
}

FlowPtr torus_flow(const FlowPtr& f, GroupPtr group) {
    AbelianModule m = make_module({f->torus.order});
    return make_trivial_flow(std::move(group), m, Vec{1});
}

Vec to_torus_value(const FlowModule& f, const Vec& v) {
    std::optional<i64> k = torus_multiple(f, v);
    if (!k) fail(Error::Kind::TorusCoercionFailed, "value lies outside the designated torus");
    return Vec{*k};
}

Vec from_torus_value(const FlowModule& f, const Vec& tv) {
    if (tv.size() != 1) fail(Error::Kind::InvalidArgument, "torus value must have rank one");
    return f.mod.scal(mod_floor(tv[0], f.torus.order), f.torus.gen);
}

}  // namespace obslab
