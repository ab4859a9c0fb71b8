#include "obslab/fixtures.hpp"

#include <utility>

#include "obslab/errors.hpp"

namespace obslab {

namespace {

FlowPtr two_torsion_flow(GroupPtr g) {
    return make_trivial_flow(std::move(g), make_module({2}), {1});
}

Fixture build(std::string name, FlowPtr flow, std::vector<int> lmem, std::vector<int> mmem,
              Vec mu, Vec lamh, Vec lamt) {
    const GroupPtr& grp = flow->action.group;
    NormalSubgroup l = make_normal_subgroup(grp, std::move(lmem));
    NormalSubgroup m = make_normal_subgroup(grp, std::move(mmem));
    Tower tower = make_tower(flow, l, std::move(m));
    CharacteristicCocycle chi =
        make_char(flow, std::move(l), std::move(mu), std::move(lamh), std::move(lamt));
    return {std::move(name), std::move(flow), std::move(tower), std::move(chi)};
}

}  // namespace

Fixture fixture_c4() {
    FlowPtr flow = two_torsion_flow(make_cyclic(4));
    Vec lamh(2 * 4, 0);
    for (int g = 0; g < 4; ++g) lamh[static_cast<std::size_t>(1) * 4 + g] = g % 2;
    return build("c4", std::move(flow), {0, 2}, {0}, Vec(2 * 2, 0), std::move(lamh), Vec(2, 0));
}

Fixture fixture_klein() {
    // Element encoding (x, y) -> 2x + y; the kernel is the y-axis {0, 1}.
    FlowPtr flow = two_torsion_flow(make_product({make_cyclic(2), make_cyclic(2)}));
    Vec lamh(2 * 4, 0);
    for (int g = 0; g < 4; ++g) lamh[static_cast<std::size_t>(1) * 4 + g] = g / 2;
    return build("klein", std::move(flow), {0, 1}, {0}, Vec(2 * 2, 0), std::move(lamh),
                 Vec(2, 0));
}

Fixture fixture_heis2() {
    FlowPtr flow = two_torsion_flow(make_heisenberg(2));
    // Center = {(0,0,0), (0,0,1)} = encodings {0, 1}; lamT(c) = c.
    Vec lamt = {0, 1};
    return build("heis2", std::move(flow), {0, 1}, {0}, Vec(2 * 2, 0), Vec(2 * 8, 0),
                 std::move(lamt));
}

std::vector<Fixture> standard_fixtures() {
    std::vector<Fixture> out;
    out.push_back(fixture_c4());
    out.push_back(fixture_klein());
    out.push_back(fixture_heis2());
    return out;
}

Fixture fixture_by_name(const std::string& name) {
    if (name == "c4") return fixture_c4();
    if (name == "klein") return fixture_klein();
    if (name == "heis2") return fixture_heis2();
    fail(Error::Kind::InvalidArgument,
         "unknown fixture '" + name + "' (expected c4, klein, or heis2)");
}

std::vector<GroupPtr> small_groups(int max_order) {
    if (max_order < 1 || max_order > 4)
        fail(Error::Kind::InvalidArgument, "catalog covers orders 1 through 4");
    std::vector<GroupPtr> out;
    out.push_back(make_cyclic(1));
    if (max_order >= 2) out.push_back(make_cyclic(2));
    if (max_order >= 3) out.push_back(make_cyclic(3));
    if (max_order >= 4) {
        out.push_back(make_cyclic(4));
        out.push_back(make_product({make_cyclic(2), make_cyclic(2)}));
    }
    return out;
}

std::optional<GroupAction> sign_action(GroupPtr g, const AbelianModule& mod) {
    const FiniteGroup& gr = *g;
    const int n = gr.order();
    ModuleAut neg = make_aut(mod, [&] {
        Mat m(mod.rank(), mod.rank());
        for (int i = 0; i < mod.rank(); ++i) m.at(i, i) = mod.moduli[i] - 1;
        return m;
    }());
    bool neg_trivial = true;
    for (int i = 0; i < mod.rank(); ++i)
        if (mod.moduli[i] > 2) neg_trivial = false;
    if (neg_trivial || n < 2 || n > 30) return std::nullopt;

    // phi : G -> Z/2, phi(identity) = 0, scanned in lexicographic order over
    // (phi(1), ..., phi(n-1)).
    for (long long c = 1; c < (1LL << (n - 1)); ++c) {
        std::vector<int> phi(static_cast<std::size_t>(n), 0);
        for (int i = 1; i < n; ++i) phi[i] = static_cast<int>((c >> (n - 1 - i)) & 1);
        bool hom = true;
        for (int x = 0; x < n && hom; ++x)
            for (int y = 0; y < n && hom; ++y)
                if (phi[gr.mul(x, y)] != (phi[x] + phi[y]) % 2) hom = false;
        if (!hom) continue;
        std::vector<ModuleAut> auts;
        auts.reserve(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) auts.push_back(phi[x] ? neg : identity_aut(mod));
        return make_action(std::move(g), mod, std::move(auts));
    }
    return std::nullopt;
}

std::vector<CrossSection> enumerate_sections(const QuotientPtr& qd) {
    const int qn = qd->quot->order();
    std::vector<std::vector<int>> cosets(static_cast<std::size_t>(qn));
    for (int x = 0; x < qd->parent->order(); ++x) cosets[qd->proj[x]].push_back(x);

    std::vector<CrossSection> out;
    std::vector<int> pick(static_cast<std::size_t>(qn), 0);
    while (true) {
        std::vector<int> sect(static_cast<std::size_t>(qn));
        sect[0] = 0;
        for (int q = 1; q < qn; ++q) sect[q] = cosets[q][pick[q]];
        out.push_back(make_section(qd, std::move(sect)));
        int pos = qn - 1;
        while (pos >= 1) {
            if (pick[pos] + 1 < static_cast<int>(cosets[pos].size())) {
                ++pick[pos];
                break;
            }
            pick[pos] = 0;
            --pos;
        }
        if (pos < 1) break;
    }
    return out;
}

}  // namespace obslab
