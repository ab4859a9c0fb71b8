#include "obslab/group.hpp"

#include <algorithm>
#include <set>

#include "obslab/budget.hpp"
#include "obslab/errors.hpp"
#include "obslab/exact.hpp"

namespace obslab {

FiniteGroup::FiniteGroup(std::vector<int> mul_table, std::string label)
    : label_(std::move(label)) {
    std::size_t sz = mul_table.size();
    int n = 0;
    while (static_cast<std::size_t>(n) * n < sz) ++n;
    if (static_cast<std::size_t>(n) * n != sz || n == 0)
        fail(Error::Kind::InvalidTable, "multiplication table size is not a positive square");
    n_ = n;
    mul_ = std::move(mul_table);

    for (std::size_t i = 0; i < mul_.size(); ++i)
        if (mul_[i] < 0 || mul_[i] >= n_)
            fail(Error::Kind::InvalidTable, "table entry out of range at flat index " +
                                                std::to_string(i));
    for (int g = 0; g < n_; ++g)
        if (mul(0, g) != g || mul(g, 0) != g)
            fail(Error::Kind::InvalidTable,
                 "element 0 is not a two-sided identity at " + std::to_string(g));

    // Rows and columns must be permutations (cancellation).
    std::vector<char> seen(n_);
    for (int g = 0; g < n_; ++g) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int h = 0; h < n_; ++h) {
            int e = mul(g, h);
            if (seen[e])
                fail(Error::Kind::InvalidTable, "row " + std::to_string(g) + " repeats element " +
                                                    std::to_string(e));
            seen[e] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int h = 0; h < n_; ++h) {
            int e = mul(h, g);
            if (seen[e])
                fail(Error::Kind::InvalidTable, "column " + std::to_string(g) +
                                                    " repeats element " + std::to_string(e));
            seen[e] = 1;
        }
    }

    Budget::charge(static_cast<i64>(n_) * n_ * n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    fail(Error::Kind::InvalidTable,
                         "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")");

    inv_.assign(n_, -1);
    for (int g = 0; g < n_; ++g) {
        for (int h = 0; h < n_; ++h) {
            if (mul(g, h) == 0) {
                inv_[g] = h;
                break;
            }
        }
        if (inv_[g] < 0 || mul(inv_[g], g) != 0)
            fail(Error::Kind::InvalidTable, "element " + std::to_string(g) + " has no inverse");
    }
}

int FiniteGroup::pow(int g, long long e) const {
    if (e < 0) return pow(inv(g), -e);
    int acc = 0;
    for (long long i = 0; i < e; ++i) acc = mul(acc, g);
    return acc;
}

int FiniteGroup::element_order(int g) const {
    int acc = g, k = 1;
    while (acc != 0) {
        acc = mul(acc, g);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

GroupPtr make_cyclic(int n) {
    if (n < 1) fail(Error::Kind::InvalidArgument, "cyclic group order must be positive");
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return std::make_shared<FiniteGroup>(std::move(t), "cyclic:" + std::to_string(n));
}

GroupPtr make_product(const std::vector<GroupPtr>& parts) {
    if (parts.empty()) fail(Error::Kind::InvalidArgument, "product of no groups");
    long long order = 1;
    for (const auto& p : parts) order *= p->order();
    if (order > 100000) fail(Error::Kind::InvalidArgument, "product group too large");
    int n = static_cast<int>(order);

    // Mixed-radix encoding, first factor most significant.
    auto decode = [&](int idx) {
        std::vector<int> digits(parts.size());
        for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i) {
            digits[i] = idx % parts[i]->order();
            idx /= parts[i]->order();
        }
        return digits;
    };
    auto encode = [&](const std::vector<int>& digits) {
        int idx = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) idx = idx * parts[i]->order() + digits[i];
        return idx;
    };

    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        std::vector<int> da = decode(a);
        for (int b = 0; b < n; ++b) {
            std::vector<int> db = decode(b);
            std::vector<int> dc(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) dc[i] = parts[i]->mul(da[i], db[i]);
            t[static_cast<std::size_t>(a) * n + b] = encode(dc);
        }
    }
    std::string label = "product(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) label += ",";
        label += parts[i]->label();
    }
    label += ")";
    return std::make_shared<FiniteGroup>(std::move(t), std::move(label));
}

GroupPtr make_heisenberg(int k) {
    if (k < 2) fail(Error::Kind::InvalidArgument, "heisenberg modulus must be at least 2");
    if (k > 20) fail(Error::Kind::InvalidArgument, "heisenberg modulus too large");
    int n = k * k * k;
    auto enc = [&](int a, int b, int c) { return (a * k + b) * k + c; };
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                for (int a2 = 0; a2 < k; ++a2)
                    for (int b2 = 0; b2 < k; ++b2)
                        for (int c2 = 0; c2 < k; ++c2)
                            t[static_cast<std::size_t>(enc(a, b, c)) * n + enc(a2, b2, c2)] =
                                enc((a + a2) % k, (b + b2) % k, (c + c2 + a * b2) % k);
    return std::make_shared<FiniteGroup>(std::move(t), "heisenberg:" + std::to_string(k));
}

GroupPtr make_explicit(std::vector<int> mul_table, std::string label) {
    return std::make_shared<FiniteGroup>(std::move(mul_table), std::move(label));
}

int NormalSubgroup::index_of(int g) const {
    if (g < 0 || g >= parent->order() || pos[g] < 0)
        fail(Error::Kind::InvalidArgument,
             "element " + std::to_string(g) + " is not a subgroup member");
    return pos[g];
}

NormalSubgroup make_normal_subgroup(GroupPtr parent, std::vector<int> members) {
    if (!parent) fail(Error::Kind::InvalidArgument, "subgroup needs a parent group");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int m : members)
        if (m < 0 || m >= parent->order())
            fail(Error::Kind::InvalidArgument, "subgroup member out of range");
    if (members.empty() || members[0] != 0)
        fail(Error::Kind::NotNormal, "subgroup must contain the identity");

    NormalSubgroup s;
    s.parent = parent;
    s.members = std::move(members);
    s.pos.assign(parent->order(), -1);
    for (int i = 0; i < s.size(); ++i) s.pos[s.members[i]] = i;

    for (int m : s.members) {
        if (!s.contains(parent->inv(m)))
            fail(Error::Kind::NotNormal, "subgroup not closed under inverse at " +
                                             std::to_string(m));
        for (int n : s.members)
            if (!s.contains(parent->mul(m, n)))
                fail(Error::Kind::NotNormal, "subgroup not closed under product at (" +
                                                 std::to_string(m) + "," + std::to_string(n) +
                                                 ")");
    }
    Budget::charge(static_cast<i64>(parent->order()) * s.size());
    for (int g = 0; g < parent->order(); ++g)
        for (int m : s.members)
            if (!s.contains(parent->conj(g, m)))
                fail(Error::Kind::NotNormal, "conjugation by " + std::to_string(g) +
                                                 " moves member " + std::to_string(m) +
                                                 " outside the subgroup");
    return s;
}

NormalSubgroup trivial_subgroup(GroupPtr parent) {
    return make_normal_subgroup(std::move(parent), {0});
}

NormalSubgroup full_subgroup(GroupPtr parent) {
    std::vector<int> all(parent->order());
    for (int i = 0; i < parent->order(); ++i) all[i] = i;
    return make_normal_subgroup(std::move(parent), std::move(all));
}

std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
    std::set<int> have{0};
    std::vector<int> frontier{0};
    for (int x : gens)
        if (have.insert(x).second) frontier.push_back(x);
    while (!frontier.empty()) {
        Budget::charge(static_cast<i64>(frontier.size()) * have.size());
        std::vector<int> next;
        for (int x : frontier) {
            std::vector<int> snapshot(have.begin(), have.end());
            for (int y : snapshot) {
                for (int z : {g.mul(x, y), g.mul(y, x), g.inv(x)})
                    if (have.insert(z).second) next.push_back(z);
            }
        }
        frontier = std::move(next);
    }
    return std::vector<int>(have.begin(), have.end());
}

std::vector<int> center_of(const FiniteGroup& g) {
    std::vector<int> out;
    for (int z = 0; z < g.order(); ++z) {
        bool central = true;
        for (int x = 0; x < g.order() && central; ++x)
            if (g.mul(z, x) != g.mul(x, z)) central = false;
        if (central) out.push_back(z);
    }
    return out;
}

QuotientPtr make_quotient(GroupPtr parent, NormalSubgroup kernel) {
    if (kernel.parent.get() != parent.get())
        fail(Error::Kind::InvalidArgument, "kernel does not belong to the parent group");
    const int n = parent->order();

    // Coset of g keyed by its minimal member.
    std::vector<int> key(n, -1);
    for (int g = 0; g < n; ++g) {
        int best = -1;
        for (int m : kernel.members) {
            int e = parent->mul(m, g);
            if (best < 0 || e < best) best = e;
        }
        key[g] = best;
    }
    std::vector<int> keys;
    for (int g = 0; g < n; ++g)
        if (key[g] == g) keys.push_back(g);
    std::sort(keys.begin(), keys.end());

    std::vector<int> proj(n, -1);
    for (int g = 0; g < n; ++g)
        proj[g] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), key[g]) -
                                   keys.begin());

    const int q = static_cast<int>(keys.size());
    std::vector<int> t(static_cast<std::size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            t[static_cast<std::size_t>(a) * q + b] = proj[parent->mul(keys[a], keys[b])];

    auto data = std::make_shared<QuotientData>();
    data->parent = parent;
    data->kernel = std::move(kernel);
    data->quot = make_explicit(std::move(t), parent->label() + "/" +
                                                 std::to_string(data->kernel.size()));
    data->proj = std::move(proj);
    data->coset_min = std::move(keys);
    return data;
}

QuotientPtr make_quotient_onto(GroupPtr parent, GroupPtr quot, std::vector<int> proj) {
    if (static_cast<int>(proj.size()) != parent->order())
        fail(Error::Kind::InvalidArgument, "projection has wrong length");
    for (int v : proj)
        if (v < 0 || v >= quot->order())
            fail(Error::Kind::InvalidArgument, "projection value out of range");
    if (proj[0] != 0) fail(Error::Kind::InvalidArgument, "projection must send identity to identity");
    Budget::charge(static_cast<i64>(parent->order()) * parent->order());
    for (int a = 0; a < parent->order(); ++a)
        for (int b = 0; b < parent->order(); ++b)
            if (proj[parent->mul(a, b)] != quot->mul(proj[a], proj[b]))
                fail(Error::Kind::InvalidArgument, "projection is not a homomorphism at (" +
                                                       std::to_string(a) + "," +
                                                       std::to_string(b) + ")");
    std::vector<char> hit(quot->order(), 0);
    for (int v : proj) hit[v] = 1;
    for (int v = 0; v < quot->order(); ++v)
        if (!hit[v]) fail(Error::Kind::InvalidArgument, "projection is not surjective");

    std::vector<int> kernel_members;
    for (int g = 0; g < parent->order(); ++g)
        if (proj[g] == 0) kernel_members.push_back(g);

    auto data = std::make_shared<QuotientData>();
    data->parent = parent;
    data->kernel = make_normal_subgroup(parent, kernel_members);
    data->quot = quot;
    data->proj = std::move(proj);
    data->coset_min.assign(quot->order(), -1);
    for (int g = parent->order() - 1; g >= 0; --g) data->coset_min[data->proj[g]] = g;
    return data;
}

CrossSection make_section(QuotientPtr qd, std::vector<int> sect) {
    if (!qd) fail(Error::Kind::InvalidArgument, "section needs quotient data");
    if (static_cast<int>(sect.size()) != qd->quot->order())
        fail(Error::Kind::InvalidArgument, "section has wrong length");
    for (int q = 0; q < qd->quot->order(); ++q) {
        int g = sect[q];
        if (g < 0 || g >= qd->parent->order() || qd->proj[g] != q)
            fail(Error::Kind::InvalidArgument,
                 "section value " + std::to_string(g) + " does not project to " +
                     std::to_string(q));
    }
    if (sect[0] != 0)
        fail(Error::Kind::InvalidArgument, "section must send identity to identity");
    return CrossSection{std::move(qd), std::move(sect)};
}

CrossSection default_section(QuotientPtr qd) {
    if (!qd) fail(Error::Kind::InvalidArgument, "section needs quotient data");
    std::vector<int> sect = qd->coset_min;
    return make_section(std::move(qd), std::move(sect));
}

int SectionCocycle::at(int p, int q) const {
    int n = section.qd->quot->order();
    return table[static_cast<std::size_t>(p) * n + q];
}

SectionCocycle section_cocycle(const CrossSection& s) {
    const FiniteGroup& parent = *s.qd->parent;
    const FiniteGroup& quot = *s.qd->quot;
    const int q = quot.order();
    SectionCocycle out;
    out.section = s;
    out.table.assign(static_cast<std::size_t>(q) * q, 0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            int v = parent.mul(parent.mul(s.sect[a], s.sect[b]), parent.inv(s.sect[quot.mul(a, b)]));
            if (!s.qd->kernel.contains(v))
                fail(Error::Kind::VerificationFailed, "section cocycle value escapes the kernel");
            out.table[static_cast<std::size_t>(a) * q + b] = v;
        }
    // Nonabelian cocycle identity; holds by construction, so a violation is a bug.
    Budget::charge(static_cast<i64>(q) * q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                int lhs = parent.mul(parent.conj(s.sect[a], out.at(b, c)), out.at(a, quot.mul(b, c)));
                int rhs = parent.mul(out.at(a, b), out.at(quot.mul(a, b), c));
                if (lhs != rhs)
                    fail(Error::Kind::VerificationFailed, "section cocycle identity violated");
            }
    return out;
}

std::pair<int, int> decompose(const CrossSection& s, int g) {
    int p = s.qd->proj[g];
    int m = s.qd->parent->mul(g, s.qd->parent->inv(s.sect[p]));
    return {m, p};
}

namespace {

// Elements are assigned in index order, so element x has an image exactly
// when x <= next. Every product relation is therefore checked as soon as the
// last of {x, y, xy} receives an image, making a completed assignment a
// verified isomorphism.
bool iso_backtrack(const FiniteGroup& a, const FiniteGroup& b, std::vector<int>& map,
                   std::vector<char>& used, int next) {
    const int n = a.order();
    if (next == n) return true;
    Budget::charge(static_cast<i64>(n) * n);
    for (int img = 0; img < n; ++img) {
        if (used[img]) continue;
        if (a.element_order(next) != b.element_order(img)) continue;
        map[next] = img;
        used[img] = 1;
        bool ok = true;
        for (int x = 0; x <= next && ok; ++x)
            for (int y = 0; y <= next && ok; ++y) {
                int xy = a.mul(x, y);
                if (xy <= next && b.mul(map[x], map[y]) != map[xy]) ok = false;
            }
        if (ok && iso_backtrack(a, b, map, used, next + 1)) return true;
        map[next] = -1;
        used[img] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return std::nullopt;
    const int n = a.order();
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    map[0] = 0;
    used[0] = 1;
    if (!iso_backtrack(a, b, map, used, 1)) return std::nullopt;
    return map;
}

}  // namespace obslab
