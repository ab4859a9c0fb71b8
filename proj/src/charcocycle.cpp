#include "obslab/charcocycle.hpp"

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

Vec reduce_table(const AbelianModule& mod, Vec t) {
    const int r = mod.rank();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = mod_floor(t[i], mod.moduli[i % r]);
    return t;
}

// Shape and setting preconditions shared by every entry point.
void precheck(const CharacteristicCocycle& chi) {
    if (!chi.flow || !chi.sub.parent)
        fail(Error::Kind::InvalidArgument, "characteristic cocycle missing its context");
    if (chi.sub.parent != chi.flow->action.group)
        fail(Error::Kind::ContextMismatch, "subgroup and flow live on different groups");
    const i64 l = chi.lcount();
    const i64 n = chi.order();
    const i64 r = chi.rank();
    if (static_cast<i64>(chi.mu.size()) != l * l * r ||
        static_cast<i64>(chi.lamH.size()) != l * n * r ||
        static_cast<i64>(chi.lamT.size()) != l * r)
        fail(Error::Kind::InvalidArgument, "characteristic tables have wrong sizes");
    for (int m : chi.sub.members)
        if (!chi.flow->action.at(m).is_identity())
            fail(Error::Kind::InvalidArgument,
                 "the distinguished subgroup must act trivially on the coefficients");
}

// Extension tables: element encoding e = (module index) * |L| + member position.
struct ExtTables {
    i64 asize = 0;
    int l = 0;
    std::vector<int> mul;                // |E| x |E|
    std::vector<std::vector<int>> act0;  // per g
    std::vector<std::vector<int>> act1;
};

int ext_size(const ExtTables& t) { return static_cast<int>(t.asize) * t.l; }

std::vector<int> act_table(const CharacteristicCocycle& chi, int g, i64 s) {
    const FlowModule& fm = *chi.flow;
    const FiniteGroup& gr = chi.group();
    const int l = chi.lcount();
    const i64 asize = fm.mod.size();
    std::vector<int> out(static_cast<std::size_t>(asize) * l);
    for (i64 ai = 0; ai < asize; ++ai) {
        Vec a = fm.mod.from_index(ai);
        Vec moved = fm.action.apply(g, theta_apply(fm, s, a));
        for (int mi = 0; mi < l; ++mi) {
            int gm = gr.conj(g, chi.sub.members[mi]);
            Vec val = fm.mod.add(moved, chi.lambda(gm, g, s));
            out[ai * l + mi] = static_cast<int>(fm.mod.index_of(val)) * l + chi.sub.index_of(gm);
        }
    }
    return out;
}

ExtTables build_tables(const CharacteristicCocycle& chi, bool with_flow = true) {
    const FlowModule& fm = *chi.flow;
    const FiniteGroup& gr = chi.group();
    ExtTables t;
    t.asize = fm.mod.size();
    t.l = chi.lcount();
    const int e = ext_size(t);
    Budget::charge(static_cast<i64>(e) * e + 2ll * gr.order() * e);
    t.mul.assign(static_cast<std::size_t>(e) * e, 0);
    for (i64 ai = 0; ai < t.asize; ++ai)
        for (int mi = 0; mi < t.l; ++mi)
            for (i64 bi = 0; bi < t.asize; ++bi)
                for (int ni = 0; ni < t.l; ++ni) {
                    Vec sum = fm.mod.add(fm.mod.add(fm.mod.from_index(ai), fm.mod.from_index(bi)),
                                         chi.mu_at(mi, ni));
                    int mn = gr.mul(chi.sub.members[mi], chi.sub.members[ni]);
                    int enc = static_cast<int>(fm.mod.index_of(sum)) * t.l + chi.sub.index_of(mn);
                    t.mul[(ai * t.l + mi) * e + (bi * t.l + ni)] = enc;
                }
    t.act0.reserve(gr.order());
    t.act1.reserve(gr.order());
    for (int g = 0; g < gr.order(); ++g) {
        t.act0.push_back(act_table(chi, g, 0));
        if (with_flow) t.act1.push_back(act_table(chi, g, 1));
    }
    return t;
}

// Normalization and mu-cocycle conditions common to the full and pure checks;
// the pure check ignores the flow part.
CharCheck check_base(const CharacteristicCocycle& chi, bool with_flow) {
    const FlowModule& fm = *chi.flow;
    const FiniteGroup& gr = chi.group();
    const int l = chi.lcount();
    const int n = chi.order();

    for (int mi = 0; mi < l; ++mi) {
        if (!fm.mod.is_zero(chi.mu_at(mi, 0)) || !fm.mod.is_zero(chi.mu_at(0, mi)))
            return {false, "mu-normalized", {chi.sub.members[mi]}};
    }
    for (int g = 0; g < n; ++g)
        if (!fm.mod.is_zero(chi.lamH_at(0, g))) return {false, "lambda-normalized", {0, g}};
    if (with_flow && !fm.mod.is_zero(chi.lamT_at(0))) return {false, "lambda-normalized", {0}};
    for (int mi = 0; mi < l; ++mi)
        if (!fm.mod.is_zero(chi.lamH_at(mi, 0)))
            return {false, "identity-action", {chi.sub.members[mi]}};

    Budget::charge(static_cast<i64>(l) * l * l);
    for (int mi = 0; mi < l; ++mi)
        for (int ni = 0; ni < l; ++ni)
            for (int pi = 0; pi < l; ++pi) {
                int m = chi.sub.members[mi], nn = chi.sub.members[ni], p = chi.sub.members[pi];
                Vec v = fm.mod.sub(chi.mu_at(ni, pi),
                                   chi.mu_at(chi.sub.index_of(gr.mul(m, nn)), pi));
                v = fm.mod.add(v, chi.mu_at(mi, chi.sub.index_of(gr.mul(nn, p))));
                v = fm.mod.sub(v, chi.mu_at(mi, ni));
                if (!fm.mod.is_zero(v)) return {false, "mu-cocycle", {m, nn, p}};
            }
    return {};
}

// Automorphism, restriction, projection, and generator-relation checks over
// the extension tables; `steps` selects which flow steps are exercised.
CharCheck check_operational(const CharacteristicCocycle& chi, const ExtTables& t, bool with_flow) {
    const FlowModule& fm = *chi.flow;
    const FiniteGroup& gr = chi.group();
    const int n = gr.order();
    const int l = t.l;
    const int e = ext_size(t);

    auto tables_for = [&](i64 s) -> const std::vector<std::vector<int>>& {
        return s == 0 ? t.act0 : t.act1;
    };
    const i64 smax = with_flow ? 1 : 0;

    // Restriction to the coefficients is the given action; the induced map on
    // members is conjugation.
    for (int g = 0; g < n; ++g)
        for (i64 s = 0; s <= smax; ++s) {
            const std::vector<int>& act = tables_for(s)[g];
            for (i64 ai = 0; ai < t.asize; ++ai) {
                Vec moved = fm.action.apply(g, theta_apply(fm, s, fm.mod.from_index(ai)));
                int want = static_cast<int>(fm.mod.index_of(moved)) * l;
                if (act[ai * l] != want)
                    return {false, "a-restriction", {g, static_cast<int>(s), static_cast<int>(ai)}};
            }
            for (int mi = 0; mi < l; ++mi) {
                int gm = gr.conj(g, chi.sub.members[mi]);
                if (act[mi] % l != chi.sub.index_of(gm))
                    return {false, "l-conjugation", {g, static_cast<int>(s), chi.sub.members[mi]}};
            }
        }

    // The identity of the flow extension acts as the identity.
    for (int x = 0; x < e; ++x)
        if (t.act0[0][x] != x) return {false, "identity-action", {x}};

    // Each lifted map is an automorphism of E.
    Budget::charge((smax + 1) * static_cast<i64>(n) * e * e);
    for (int g = 0; g < n; ++g)
        for (i64 s = 0; s <= smax; ++s) {
            const std::vector<int>& act = tables_for(s)[g];
            for (int x = 0; x < e; ++x)
                for (int y = 0; y < e; ++y)
                    if (act[t.mul[static_cast<i64>(x) * e + y]] !=
                        t.mul[static_cast<i64>(act[x]) * e + act[y]])
                        return {false, "automorphism", {g, static_cast<int>(s), x, y}};
        }

    // Products of generators: the H-part is multiplicative.
    Budget::charge(static_cast<i64>(n) * n * e);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int gh = gr.mul(g, h);
            for (int x = 0; x < e; ++x)
                if (t.act0[g][t.act0[h][x]] != t.act0[gh][x])
                    return {false, "homomorphism", {g, h, x}};
        }

    if (with_flow) {
        // The flow generator commutes with the H-part and composes to the
        // mixed maps: T_(1,1) T_(g,0) = T_(g,1) = T_(g,0) T_(1,1).
        for (int g = 0; g < n; ++g)
            for (int x = 0; x < e; ++x) {
                if (t.act1[0][t.act0[g][x]] != t.act1[g][x])
                    return {false, "flow-commutation", {g, x}};
                if (t.act0[g][t.act1[0][x]] != t.act1[g][x])
                    return {false, "flow-commutation", {g, x}};
            }
    }
    return {};
}

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            i64 v = a.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                out.at(i, j) = checked_add(out.at(i, j), checked_mul(v, b.at(k, j)));
        }
    return out;
}

// alpha_g . theta^s as a matrix (s >= 0 small).
Mat alpha_theta_mat(const FlowModule& fm, int g, int s) {
    Mat th = Mat::identity(fm.rank());
    for (int i = 0; i < s; ++i) th = mat_mul(fm.theta.mat, th);
    return mat_mul(fm.action.at(g).mat, th);
}

// Flow sum matrix [s] = sum_{0<=j<s} theta^j (s >= 0 small).
Mat flow_sum_mat(const FlowModule& fm, int s) {
    Mat out(fm.rank(), fm.rank());
    Mat pw = Mat::identity(fm.rank());
    for (int j = 0; j < s; ++j) {
        for (int i = 0; i < fm.rank(); ++i)
            for (int k = 0; k < fm.rank(); ++k) out.at(i, k) = checked_add(out.at(i, k), pw.at(i, k));
        pw = mat_mul(fm.theta.mat, pw);
    }
    return out;
}

}  // namespace

// ---- accessors -----------------------------------------------------------------

Vec CharacteristicCocycle::mu_at(int mi, int ni) const {
    return block_at(mu, static_cast<i64>(mi) * lcount() + ni, rank());
}

Vec CharacteristicCocycle::lamH_at(int mi, int g) const {
    return block_at(lamH, static_cast<i64>(mi) * order() + g, rank());
}

Vec CharacteristicCocycle::lamT_at(int mi) const { return block_at(lamT, mi, rank()); }

Vec CharacteristicCocycle::lambda(int m, int g, i64 s) const {
    const FlowModule& fm = *flow;
    int inner = group().conj(group().inv(g), m);
    Vec v = flow_sum(fm, s, lamT_at(sub.index_of(inner)));
    return fm.mod.add(lamH_at(sub.index_of(m), g), fm.action.apply(g, v));
}

// ---- validation ------------------------------------------------------------------

CharCheck check_char(const CharacteristicCocycle& chi) {
    precheck(chi);
    CharCheck base = check_base(chi, /*with_flow=*/true);
    if (!base.ok) return base;
    ExtTables t = build_tables(chi);
    return check_operational(chi, t, /*with_flow=*/true);
}

CharCheck check_char_pure(const CharacteristicCocycle& chi) {
    precheck(chi);
    CharCheck base = check_base(chi, /*with_flow=*/false);
    if (!base.ok) return base;
    ExtTables t = build_tables(chi, /*with_flow=*/false);
    return check_operational(chi, t, /*with_flow=*/false);
}

CharCheck oracle_check_char(const CharacteristicCocycle& chi) {
    precheck(chi);
    CharCheck base = check_base(chi, /*with_flow=*/true);
    if (!base.ok) return base;

    const FiniteGroup& gr = chi.group();
    const int n = gr.order();
    ExtTables t = build_tables(chi);
    const int e = ext_size(t);

    // Bijectivity of every lifted map.
    for (int g = 0; g < n; ++g)
        for (i64 s = 0; s <= 1; ++s) {
            const std::vector<int>& act = s == 0 ? t.act0[g] : t.act1[g];
            std::vector<char> seen(static_cast<std::size_t>(e), 0);
            for (int x = 0; x < e; ++x) seen[act[x]] = 1;
            for (int x = 0; x < e; ++x)
                if (!seen[x]) return {false, "bijection", {g, static_cast<int>(s)}};
        }

    // Full composition law over (H x {0,1})^2, including flow step two on the
    // right-hand side, expanded directly from the stored parts.
    Budget::charge(4ll * n * n * e);
    for (int g = 0; g < n; ++g)
        for (i64 s = 0; s <= 1; ++s)
            for (int h = 0; h < n; ++h)
                for (i64 u = 0; u <= 1; ++u) {
                    const std::vector<int>& left = s == 0 ? t.act0[g] : t.act1[g];
                    const std::vector<int>& right = u == 0 ? t.act0[h] : t.act1[h];
                    std::vector<int> target = act_table(chi, gr.mul(g, h), s + u);
                    for (int x = 0; x < e; ++x)
                        if (left[right[x]] != target[x])
                            return {false, "composition",
                                    {g, static_cast<int>(s), h, static_cast<int>(u), x}};
                }
    return {};
}

CharacteristicCocycle make_char(FlowPtr flow, NormalSubgroup sub, Vec mu, Vec lamH, Vec lamT) {
    const AbelianModule& mod = flow->mod;
    CharacteristicCocycle chi{std::move(flow), std::move(sub), reduce_table(mod, std::move(mu)),
                              reduce_table(mod, std::move(lamH)), reduce_table(mod, std::move(lamT))};
    CharCheck cc = check_char(chi);
    if (!cc.ok)
        fail(Error::Kind::NotACocycle,
             "characteristic cocycle invalid: " + cc.axiom + " at " + tuple_text(cc.tuple));
    return chi;
}

CharacteristicCocycle char_zero(FlowPtr flow, NormalSubgroup sub) {
    const i64 l = sub.size();
    const i64 n = flow->group()->order();
    const i64 r = flow->rank();
    CharacteristicCocycle chi{std::move(flow), std::move(sub), Vec(static_cast<std::size_t>(l * l * r), 0),
                              Vec(static_cast<std::size_t>(l * n * r), 0),
                              Vec(static_cast<std::size_t>(l * r), 0)};
    precheck(chi);
    return chi;
}

TwistedExtension make_twisted_extension(const CharacteristicCocycle& chi) {
    CharCheck cc = check_char(chi);
    if (!cc.ok)
        fail(Error::Kind::NotACocycle,
             "characteristic cocycle invalid: " + cc.axiom + " at " + tuple_text(cc.tuple));
    ExtTables t = build_tables(chi);
    const int e = ext_size(t);

    TwistedExtension out;
    out.total = make_explicit(t.mul, "twisted-extension");
    out.include_a.resize(static_cast<std::size_t>(t.asize));
    for (i64 ai = 0; ai < t.asize; ++ai) out.include_a[ai] = static_cast<int>(ai) * t.l;
    out.project_l.resize(static_cast<std::size_t>(e));
    for (int x = 0; x < e; ++x) out.project_l[x] = x % t.l;
    out.section.resize(static_cast<std::size_t>(t.l));
    for (int mi = 0; mi < t.l; ++mi) out.section[mi] = mi;
    out.act0 = std::move(t.act0);
    out.act1 = std::move(t.act1);
    return out;
}

// ---- derived data ------------------------------------------------------------------

NormalSubgroup compute_K(const CharacteristicCocycle& chi) {
    precheck(chi);
    FlowH1 h1 = flow_h1(*chi.flow);
    std::vector<int> members;
    for (int mi = 0; mi < chi.lcount(); ++mi)
        if (h1.is_trivial(chi.lamT_at(mi))) members.push_back(chi.sub.members[mi]);
    return make_normal_subgroup(chi.flow->action.group, std::move(members));
}

ZLMCheck in_ZLM(const CharacteristicCocycle& chi, const NormalSubgroup& m) {
    precheck(chi);
    if (m.parent != chi.sub.parent)
        fail(Error::Kind::ContextMismatch, "candidate subgroup lives on a different group");
    for (int x : m.members)
        if (!chi.sub.contains(x))
            fail(Error::Kind::InvalidArgument, "candidate subgroup is not inside the cocycle's subgroup");

    const FlowModule& fm = *chi.flow;
    FlowH1 h1 = flow_h1(fm);
    for (int x : m.members) {
        int mi = chi.sub.index_of(x);
        if (!h1.is_trivial(chi.lamT_at(mi))) return {false, "k-containment", {x}};
    }
    for (int x : m.members) {
        int mi = chi.sub.index_of(x);
        if (!fm.mod.is_zero(chi.lamT_at(mi))) return {false, "flow-part-nonzero", {x}};
    }
    for (int x : m.members)
        for (int y : m.members) {
            Vec v = chi.mu_at(chi.sub.index_of(x), chi.sub.index_of(y));
            if (!torus_multiple(fm, v)) return {false, "mu-outside-torus", {x, y}};
        }
    for (int x : m.members)
        for (int g = 0; g < chi.order(); ++g) {
            Vec v = chi.lamH_at(chi.sub.index_of(x), g);
            if (!torus_multiple(fm, v)) return {false, "lamH-outside-torus", {x, g}};
        }
    return {};
}

CharacteristicCocycle res_standard_two(const StandardTwo& m, const NormalSubgroup& sub) {
    if (sub.parent != m.flow->action.group)
        fail(Error::Kind::ContextMismatch, "subgroup lives on a different group than the cocycle");
    const FlowModule& fm = *m.flow;
    const FiniteGroup& gr = *fm.group();
    const int l = sub.size();
    const int n = gr.order();
    const int r = fm.rank();

    CharacteristicCocycle chi{m.flow, sub, Vec(static_cast<std::size_t>(l) * l * r, 0),
                              Vec(static_cast<std::size_t>(l) * n * r, 0),
                              Vec(static_cast<std::size_t>(l) * r, 0)};
    precheck(chi);

    for (int mi = 0; mi < l; ++mi)
        for (int ni = 0; ni < l; ++ni) {
            Vec v = m.muH.at({sub.members[mi], sub.members[ni]});
            for (int j = 0; j < r; ++j) chi.mu[(static_cast<i64>(mi) * l + ni) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi)
        for (int g = 0; g < n; ++g) {
            int x = sub.members[mi];
            int inner = gr.conj(gr.inv(g), x);
            Vec v = fm.mod.sub(m.muH.at({g, inner}), m.muH.at({x, g}));
            for (int j = 0; j < r; ++j) chi.lamH[(static_cast<i64>(mi) * n + g) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi) {
        Vec v = m.d_at(sub.members[mi]);
        for (int j = 0; j < r; ++j) chi.lamT[static_cast<i64>(mi) * r + j] = v[j];
    }

    CharCheck cc = check_char(chi);
    if (!cc.ok)
        fail(Error::Kind::VerificationFailed,
             "restriction of a valid standard 2-cocycle failed validation: " + cc.axiom + " at " +
                 tuple_text(cc.tuple));
    return chi;
}

// ---- perturbation ------------------------------------------------------------------

CharacteristicCocycle perturb(const CharacteristicCocycle& chi, const Cochain& xi, const Vec& a) {
    precheck(chi);
    const FlowModule& fm = *chi.flow;
    const FiniteGroup& gr = chi.group();
    const int l = chi.lcount();
    const int n = chi.order();
    const int r = chi.rank();

    if (xi.degree != 2 || xi.flow->action.group != chi.flow->action.group || xi.rank() != 1 ||
        xi.flow->mod.moduli != Vec{fm.torus.order})
        fail(Error::Kind::InvalidXi, "perturbation cocycle must be a torus-valued 2-cochain on H");
    CocycleCheck cc = is_cocycle(xi);
    if (!cc.ok)
        fail(Error::Kind::InvalidXi,
             "perturbation cochain is not a cocycle (" + cc.reason + " at " + tuple_text(cc.tuple) + ")");
    if (static_cast<i64>(a.size()) != static_cast<i64>(l) * r)
        fail(Error::Kind::InvalidArgument, "perturbation map must hold one value per member");
    Vec a0 = block_at(a, 0, r);
    if (!fm.mod.is_zero(reduce_table(fm.mod, a0)))
        fail(Error::Kind::InvalidArgument, "perturbation map must vanish at the identity");

    auto xi_val = [&](int g, int h) { return from_torus_value(fm, xi.at({g, h})); };
    auto a_at = [&](int mi) { return reduce_table(fm.mod, block_at(a, mi, r)); };

    CharacteristicCocycle out = chi;
    for (int mi = 0; mi < l; ++mi)
        for (int ni = 0; ni < l; ++ni) {
            int x = chi.sub.members[mi], y = chi.sub.members[ni];
            Vec v = chi.mu_at(mi, ni);
            v = fm.mod.add(v, xi_val(x, y));
            // members act trivially, so the coboundary of a on L is a(y) - a(xy) + a(x)
            v = fm.mod.add(v, a_at(ni));
            v = fm.mod.sub(v, a_at(chi.sub.index_of(gr.mul(x, y))));
            v = fm.mod.add(v, a_at(mi));
            for (int j = 0; j < r; ++j) out.mu[(static_cast<i64>(mi) * l + ni) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi)
        for (int g = 0; g < n; ++g) {
            int x = chi.sub.members[mi];
            int inner = gr.conj(gr.inv(g), x);
            Vec v = chi.lamH_at(mi, g);
            v = fm.mod.add(v, xi_val(g, inner));
            v = fm.mod.sub(v, xi_val(x, g));
            v = fm.mod.add(v, fm.action.apply(g, a_at(chi.sub.index_of(inner))));
            v = fm.mod.sub(v, a_at(mi));
            for (int j = 0; j < r; ++j) out.lamH[(static_cast<i64>(mi) * n + g) * r + j] = v[j];
        }
    for (int mi = 0; mi < l; ++mi) {
        Vec av = a_at(mi);
        Vec v = fm.mod.add(chi.lamT_at(mi), fm.mod.sub(fm.theta.apply(av), av));
        for (int j = 0; j < r; ++j) out.lamT[static_cast<i64>(mi) * r + j] = v[j];
    }

    CharCheck ck = check_char(out);
    if (!ck.ok)
        fail(Error::Kind::VerificationFailed,
             "perturbation of a valid cocycle failed validation: " + ck.axiom + " at " +
                 tuple_text(ck.tuple));
    return out;
}

CharacteristicCocycle perturb_by(const CharacteristicCocycle& chi, const Vec& a) {
    Cochain zero = make_cochain(torus_flow(chi.flow, chi.flow->action.group), 2);
    return perturb(chi, zero, a);
}

CharacteristicCocycle normalize_flow_part(const CharacteristicCocycle& chi) {
    precheck(chi);
    const FlowModule& fm = *chi.flow;
    FlowH1 h1 = flow_h1(fm);
    const int l = chi.lcount();
    const int r = chi.rank();

    Vec a(static_cast<std::size_t>(l) * r, 0);
    for (int mi = 0; mi < l; ++mi) {
        std::optional<Vec> w = h1.witness(fm.mod.neg(chi.lamT_at(mi)));
        if (!w)
            fail(Error::Kind::FlowPartNotCobounding,
                 "flow part at member " + std::to_string(chi.sub.members[mi]) +
                     " is not a flow coboundary");
        for (int j = 0; j < r; ++j) a[static_cast<i64>(mi) * r + j] = (*w)[j];
    }
    CharacteristicCocycle out = perturb_by(chi, a);
    if (!std::all_of(out.lamT.begin(), out.lamT.end(), [](i64 v) { return v == 0; }))
        fail(Error::Kind::VerificationFailed, "flow part nonzero after clearing");
    return out;
}

CharEquiv char_equiv(const CharacteristicCocycle& a, const CharacteristicCocycle& b) {
    precheck(a);
    precheck(b);
    if (a.flow != b.flow || a.sub.members != b.sub.members)
        fail(Error::Kind::ContextMismatch, "characteristic cocycles over different data");

    const FlowModule& fm = *a.flow;
    const FiniteGroup& gr = a.group();
    const int l = a.lcount();
    const int n = a.order();
    const int r = a.rank();
    const int lf = l - 1;
    const int cols = lf * r;
    auto col_of = [&](int mi, int j) { return (mi - 1) * r + j; };

    const i64 rows = (static_cast<i64>(lf) * lf + static_cast<i64>(lf) * n + lf) * r;
    Budget::charge(rows * cols);
    Mat mat(static_cast<int>(rows), cols);
    Vec row_mods;
    Vec rhs;
    row_mods.reserve(static_cast<std::size_t>(rows));
    rhs.reserve(static_cast<std::size_t>(rows));
    int row = 0;

    auto push_rhs = [&](const Vec& v) {
        for (int j = 0; j < r; ++j) {
            rhs.push_back(v[j]);
            row_mods.push_back(fm.mod.moduli[j]);
        }
    };
    auto add_block = [&](int base_row, int mi, const Mat& coeff, i64 sign) {
        if (mi == 0) return;  // a vanishes at the identity
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                mat.at(base_row + i, col_of(mi, j)) =
                    checked_add(mat.at(base_row + i, col_of(mi, j)),
                                checked_mul(sign, coeff.at(i, j)));
    };
    const Mat eye = Mat::identity(r);

    // mu difference rows: a(n) - a(mn) + a(m) = mu_b - mu_a (members act trivially).
    for (int mi = 1; mi < l; ++mi)
        for (int ni = 1; ni < l; ++ni) {
            int mn = a.sub.index_of(gr.mul(a.sub.members[mi], a.sub.members[ni]));
            add_block(row, ni, eye, 1);
            add_block(row, mn, eye, -1);
            add_block(row, mi, eye, 1);
            push_rhs(fm.mod.sub(b.mu_at(mi, ni), a.mu_at(mi, ni)));
            row += r;
        }
    // lamH difference rows: alpha_g(a(g^-1 m g)) - a(m) = lamH_b - lamH_a.
    for (int mi = 1; mi < l; ++mi)
        for (int g = 0; g < n; ++g) {
            int inner = a.sub.index_of(gr.conj(gr.inv(g), a.sub.members[mi]));
            add_block(row, inner, fm.action.at(g).mat, 1);
            add_block(row, mi, eye, -1);
            push_rhs(fm.mod.sub(b.lamH_at(mi, g), a.lamH_at(mi, g)));
            row += r;
        }
    // lamT difference rows: (theta - 1) a(m) = lamT_b - lamT_a.
    for (int mi = 1; mi < l; ++mi) {
        add_block(row, mi, fm.theta.mat, 1);
        add_block(row, mi, eye, -1);
        push_rhs(fm.mod.sub(b.lamT_at(mi), a.lamT_at(mi)));
        row += r;
    }

    Vec col_mods(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) col_mods[c] = fm.mod.moduli[c % r];
    for (int i = 0; i < mat.rows; ++i)
        for (int c = 0; c < cols; ++c) mat.at(i, c) = mod_floor(mat.at(i, c), row_mods[i]);

    CongruenceSolver solver(mat, row_mods, col_mods);
    std::optional<Vec> sol = solver.solve(rhs);
    if (!sol) return {};

    Vec witness(static_cast<std::size_t>(l) * r, 0);
    for (int mi = 1; mi < l; ++mi)
        for (int j = 0; j < r; ++j) witness[static_cast<i64>(mi) * r + j] = (*sol)[col_of(mi, j)];

    CharacteristicCocycle moved = perturb_by(a, witness);
    if (moved.mu != b.mu || moved.lamH != b.lamH || moved.lamT != b.lamT)
        fail(Error::Kind::VerificationFailed, "equivalence witness does not transport the cocycle");
    return {true, witness};
}

// ---- enumeration -------------------------------------------------------------------

std::vector<CharacteristicCocycle> enumerate_chars(FlowPtr flow, const NormalSubgroup& sub) {
    CharacteristicCocycle probe = char_zero(flow, sub);  // runs the shared preconditions
    const FlowModule& fm = *flow;
    const FiniteGroup& gr = *fm.group();
    const int l = sub.size();
    const int n = gr.order();
    const int r = fm.rank();
    const int lf = l - 1;

    // Unknown layout: mu on nonidentity pairs, then lamH on (nonidentity member,
    // nonidentity g), then lamT on nonidentity members.
    const int mu_cols = lf * lf * r;
    const int lamH_cols = lf * (n - 1) * r;
    const int lamT_cols = lf * r;
    const int cols = mu_cols + lamH_cols + lamT_cols;
    auto mu_col = [&](int mi, int ni, int j) { return ((mi - 1) * lf + (ni - 1)) * r + j; };
    auto lamH_col = [&](int mi, int g, int j) {
        return mu_cols + ((mi - 1) * (n - 1) + (g - 1)) * r + j;
    };
    auto lamT_col = [&](int mi, int j) { return mu_cols + lamH_cols + (mi - 1) * r + j; };

    const i64 nrows = (static_cast<i64>(lf) * lf * lf + 2ll * n * lf * lf + 4ll * n * n * lf) * r;
    Budget::charge(nrows * cols);
    Mat mat(static_cast<int>(nrows), cols);
    Vec row_mods(static_cast<std::size_t>(nrows));
    {
        i64 k = 0;
        while (k < nrows) {
            for (int j = 0; j < r; ++j) row_mods[k + j] = fm.mod.moduli[j];
            k += r;
        }
    }
    int row = 0;

    auto add_mu = [&](int base_row, int mi, int ni, const Mat& coeff, i64 sign) {
        if (mi == 0 || ni == 0) return;  // normalized
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                mat.at(base_row + i, mu_col(mi, ni, j)) =
                    checked_add(mat.at(base_row + i, mu_col(mi, ni, j)),
                                checked_mul(sign, coeff.at(i, j)));
    };
    // lambda(x; g, s) = lamH(x; g) + alpha_g [s] lamT(g^-1 x g), as coefficient
    // blocks premultiplied by `pre`.
    auto add_lambda = [&](int base_row, int x, int g, int s, const Mat& pre, i64 sign) {
        int xi = sub.index_of(x);
        if (xi != 0 && g != 0)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    mat.at(base_row + i, lamH_col(xi, g, j)) =
                        checked_add(mat.at(base_row + i, lamH_col(xi, g, j)),
                                    checked_mul(sign, pre.at(i, j)));
        if (s > 0) {
            int inner = sub.index_of(gr.conj(gr.inv(g), x));
            if (inner != 0) {
                Mat coeff = mat_mul(pre, mat_mul(fm.action.at(g).mat, flow_sum_mat(fm, s)));
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j)
                        mat.at(base_row + i, lamT_col(inner, j)) =
                            checked_add(mat.at(base_row + i, lamT_col(inner, j)),
                                        checked_mul(sign, coeff.at(i, j)));
            }
        }
    };
    const Mat eye = Mat::identity(r);

    // mu cocycle rows over nonidentity member triples.
    for (int mi = 1; mi < l; ++mi)
        for (int ni = 1; ni < l; ++ni)
            for (int pi = 1; pi < l; ++pi) {
                int m = sub.members[mi], nn = sub.members[ni], p = sub.members[pi];
                add_mu(row, ni, pi, eye, 1);
                add_mu(row, sub.index_of(gr.mul(m, nn)), pi, eye, -1);
                add_mu(row, mi, sub.index_of(gr.mul(nn, p)), eye, 1);
                add_mu(row, mi, ni, eye, -1);
                row += r;
            }
    // Compatibility of mu with every lifted map: lambda(m) + lambda(n) + mu(m,n)
    // = alpha_g theta^s mu(g^-1 m g, g^-1 n g) + lambda(mn), for s in {0,1}.
    for (int g = 0; g < n; ++g)
        for (int s = 0; s <= 1; ++s)
            for (int mi = 1; mi < l; ++mi)
                for (int ni = 1; ni < l; ++ni) {
                    int m = sub.members[mi], nn = sub.members[ni];
                    add_lambda(row, m, g, s, eye, 1);
                    add_lambda(row, nn, g, s, eye, 1);
                    add_mu(row, mi, ni, eye, 1);
                    int cm = sub.index_of(gr.conj(gr.inv(g), m));
                    int cn = sub.index_of(gr.conj(gr.inv(g), nn));
                    add_mu(row, cm, cn, alpha_theta_mat(fm, g, s), -1);
                    add_lambda(row, gr.mul(m, nn), g, s, eye, -1);
                    row += r;
                }
    // Composition of lifted maps on the section: alpha_g theta^s applied to
    // lambda(g^-1 m g; h, t), plus lambda(m; g, s), equals lambda(m; gh, s+t).
    for (int g = 0; g < n; ++g)
        for (int s = 0; s <= 1; ++s)
            for (int h = 0; h < n; ++h)
                for (int t = 0; t <= 1; ++t)
                    for (int mi = 1; mi < l; ++mi) {
                        int m = sub.members[mi];
                        int mg = gr.conj(gr.inv(g), m);
                        add_lambda(row, mg, h, t, alpha_theta_mat(fm, g, s), 1);
                        add_lambda(row, m, g, s, eye, 1);
                        add_lambda(row, m, gr.mul(g, h), s + t, eye, -1);
                        row += r;
                    }

    Vec col_mods(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) col_mods[c] = fm.mod.moduli[c % r];
    for (int i = 0; i < mat.rows; ++i)
        for (int c = 0; c < cols; ++c) mat.at(i, c) = mod_floor(mat.at(i, c), row_mods[i]);

    CongruenceSolver solver(mat, row_mods, col_mods);
    RowLattice box(cols);
    for (int c = 0; c < cols; ++c) {
        Vec gen(static_cast<std::size_t>(cols), 0);
        gen[c] = col_mods[c];
        box.add_generator(gen);
    }
    box.finish();
    LatticeQuotient q = lattice_quotient(solver.kernel(), box);
    std::vector<Vec> points = enumerate_quotient(q, col_mods);

    std::vector<CharacteristicCocycle> out;
    out.reserve(points.size());
    for (const Vec& pt : points) {
        CharacteristicCocycle chi = probe;
        for (int mi = 1; mi < l; ++mi)
            for (int ni = 1; ni < l; ++ni)
                for (int j = 0; j < r; ++j)
                    chi.mu[(static_cast<i64>(mi) * l + ni) * r + j] =
                        mod_floor(pt[mu_col(mi, ni, j)], fm.mod.moduli[j]);
        for (int mi = 1; mi < l; ++mi)
            for (int g = 1; g < n; ++g)
                for (int j = 0; j < r; ++j)
                    chi.lamH[(static_cast<i64>(mi) * n + g) * r + j] =
                        mod_floor(pt[lamH_col(mi, g, j)], fm.mod.moduli[j]);
        for (int mi = 1; mi < l; ++mi)
            for (int j = 0; j < r; ++j)
                chi.lamT[static_cast<i64>(mi) * r + j] =
                    mod_floor(pt[lamT_col(mi, j)], fm.mod.moduli[j]);
        CharCheck cc = check_char(chi);
        if (!cc.ok)
            fail(Error::Kind::VerificationFailed,
                 "enumerated table failed validation: " + cc.axiom + " at " + tuple_text(cc.tuple));
        out.push_back(std::move(chi));
    }
    return out;
}

}  // namespace obslab
