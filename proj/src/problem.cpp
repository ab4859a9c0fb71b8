#include "obslab/problem.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "obslab/errors.hpp"

namespace obslab {

namespace {

struct Lines {
    std::vector<std::pair<int, std::vector<std::string>>> rows;  // line number + tokens
    std::size_t pos = 0;

    bool done() const { return pos >= rows.size(); }
    const std::vector<std::string>& peek() const { return rows[pos].second; }
    int line() const { return rows[pos < rows.size() ? pos : rows.size() - 1].first; }
};

[[noreturn]] void bad(int line, const std::string& msg) {
    fail(Error::Kind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

Lines tokenize(const std::string& text) {
    Lines out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) out.rows.emplace_back(line, std::move(toks));
    }
    return out;
}

i64 parse_int(const std::string& s, int line) {
    std::size_t used = 0;
    i64 v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        bad(line, "expected an integer, got '" + s + "'");
    }
    if (used != s.size()) bad(line, "expected an integer, got '" + s + "'");
    return v;
}

Vec parse_ints(const std::vector<std::string>& toks, std::size_t from, int line) {
    Vec out;
    for (std::size_t i = from; i < toks.size(); ++i) out.push_back(parse_int(toks[i], line));
    return out;
}

std::vector<int> to_int_list(const Vec& v, int line) {
    std::vector<int> out;
    for (i64 x : v) {
        if (x < 0 || x > 1'000'000) bad(line, "index out of range");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

// Reads `rows` continuation lines of exactly `cols` integers each.
Mat read_matrix(Lines& in, int rows, int cols, int decl_line) {
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (in.done()) bad(decl_line, "table truncated: expected " + std::to_string(rows) + " rows");
        const auto& [line, toks] = in.rows[in.pos];
        Vec vals = parse_ints(toks, 0, line);
        if (static_cast<int>(vals.size()) != cols)
            bad(line, "expected " + std::to_string(cols) + " entries per row");
        for (int c = 0; c < cols; ++c) m.at(r, c) = vals[c];
        ++in.pos;
    }
    return m;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
    Lines in = tokenize(text);
    ProblemSpec p;

    std::optional<AbelianModule> mod;
    std::optional<ModuleAut> theta;
    bool theta_identity = false;
    enum class Act { Unset, Trivial, Sign, Explicit };
    Act act = Act::Unset;
    std::vector<Mat> act_mats;
    std::optional<Vec> torus;

    while (!in.done()) {
        const auto [line, toks] = in.rows[in.pos];
        ++in.pos;
        const std::string& key = toks[0];
        if (key == "group") {
            if (p.group) bad(line, "group declared twice");
            if (toks.size() < 2) bad(line, "group needs a family");
            const std::string& fam = toks[1];
            if (fam == "cyclic") {
                if (toks.size() != 3) bad(line, "usage: group cyclic <n>");
                p.group = make_cyclic(static_cast<int>(parse_int(toks[2], line)));
            } else if (fam == "product") {
                std::vector<GroupPtr> parts;
                for (std::size_t i = 2; i < toks.size(); ++i)
                    parts.push_back(make_cyclic(static_cast<int>(parse_int(toks[i], line))));
                if (parts.empty()) bad(line, "usage: group product <n1> <n2> ...");
                p.group = make_product(parts);
            } else if (fam == "heisenberg") {
                if (toks.size() != 3) bad(line, "usage: group heisenberg <k>");
                p.group = make_heisenberg(static_cast<int>(parse_int(toks[2], line)));
            } else if (fam == "explicit") {
                if (toks.size() != 3) bad(line, "usage: group explicit <n>");
                int n = static_cast<int>(parse_int(toks[2], line));
                if (n < 1 || n > 64) bad(line, "explicit table order out of range");
                Mat m = read_matrix(in, n, n, line);
                std::vector<int> table;
                table.reserve(static_cast<std::size_t>(n) * n);
                for (i64 e : m.a) {
                    if (e < 0 || e >= n) bad(line, "table entry out of range");
                    table.push_back(static_cast<int>(e));
                }
                p.group = make_explicit(std::move(table), "explicit:" + std::to_string(n));
            } else {
                bad(line, "unknown group family '" + fam + "'");
            }
        } else if (key == "module") {
            if (mod) bad(line, "module declared twice");
            Vec moduli = parse_ints(toks, 1, line);
            if (moduli.empty()) bad(line, "module needs at least one modulus");
            mod = make_module(std::move(moduli));
        } else if (key == "theta") {
            if (theta || theta_identity) bad(line, "theta declared twice");
            if (toks.size() != 2) bad(line, "usage: theta identity | theta matrix");
            if (!mod) bad(line, "theta must come after module");
            if (toks[1] == "identity") {
                theta_identity = true;
            } else if (toks[1] == "matrix") {
                theta = make_aut(*mod, read_matrix(in, mod->rank(), mod->rank(), line));
            } else {
                bad(line, "usage: theta identity | theta matrix");
            }
        } else if (key == "action") {
            if (act != Act::Unset) bad(line, "action declared twice");
            if (toks.size() != 2) bad(line, "usage: action trivial | sign | explicit");
            if (!p.group || !mod) bad(line, "action must come after group and module");
            if (toks[1] == "trivial") {
                act = Act::Trivial;
            } else if (toks[1] == "sign") {
                act = Act::Sign;
            } else if (toks[1] == "explicit") {
                act = Act::Explicit;
                for (int g = 0; g < p.group->order(); ++g)
                    act_mats.push_back(read_matrix(in, mod->rank(), mod->rank(), line));
            } else {
                bad(line, "usage: action trivial | sign | explicit");
            }
        } else if (key == "torus") {
            if (torus) bad(line, "torus declared twice");
            torus = parse_ints(toks, 1, line);
        } else if (key == "subgroup") {
            if (toks.size() < 3) bad(line, "usage: subgroup L|M <members>");
            auto members = to_int_list(parse_ints(toks, 2, line), line);
            if (toks[1] == "L") {
                if (p.lmem) bad(line, "subgroup L declared twice");
                p.lmem = std::move(members);
            } else if (toks[1] == "M") {
                if (p.mmem) bad(line, "subgroup M declared twice");
                p.mmem = std::move(members);
            } else {
                bad(line, "subgroup name must be L or M");
            }
        } else if (key == "section") {
            if (toks.size() < 3) bad(line, "usage: section s|sH <values>");
            auto values = to_int_list(parse_ints(toks, 2, line), line);
            if (toks[1] == "s") {
                if (p.sect_s) bad(line, "section s declared twice");
                p.sect_s = std::move(values);
            } else if (toks[1] == "sH") {
                if (p.sect_sh) bad(line, "section sH declared twice");
                p.sect_sh = std::move(values);
            } else {
                bad(line, "section name must be s or sH");
            }
        } else if (key == "chi") {
            if (toks.size() < 3) bad(line, "usage: chi mu|lamH|lamT <indices> <coords>");
            if (!mod) bad(line, "chi must come after module");
            p.has_chi = true;
            ProblemSpec::ChiEntry e;
            std::size_t idx;
            if (toks[1] == "mu") {
                e.part = 0;
                idx = 4;
            } else if (toks[1] == "lamH") {
                e.part = 1;
                idx = 4;
            } else if (toks[1] == "lamT") {
                e.part = 2;
                idx = 3;
            } else {
                bad(line, "chi part must be mu, lamH, or lamT");
            }
            if (toks.size() < idx) bad(line, "chi entry is missing indices");
            e.i = static_cast<int>(parse_int(toks[2], line));
            e.g = e.part == 2 ? 0 : static_cast<int>(parse_int(toks[3], line));
            e.v = parse_ints(toks, idx, line);
            if (static_cast<int>(e.v.size()) != mod->rank())
                bad(line, "chi entry needs " + std::to_string(mod->rank()) + " coordinates");
            p.chi_entries.push_back(std::move(e));
        } else if (key == "cocycle") {
            if (p.degree) bad(line, "cocycle degree declared twice");
            if (toks.size() != 2) bad(line, "usage: cocycle <degree>");
            int d = static_cast<int>(parse_int(toks[1], line));
            if (d < 0 || d > 4) bad(line, "cocycle degree out of range");
            p.degree = d;
        } else if (key == "entry") {
            if (!p.degree) bad(line, "entry must come after cocycle");
            if (!mod) bad(line, "entry must come after module");
            Vec all = parse_ints(toks, 1, line);
            if (static_cast<int>(all.size()) != *p.degree + mod->rank())
                bad(line, "entry needs " + std::to_string(*p.degree) + " group arguments and " +
                              std::to_string(mod->rank()) + " coordinates");
            std::vector<int> args;
            for (int i = 0; i < *p.degree; ++i) args.push_back(static_cast<int>(all[i]));
            Vec v(all.begin() + *p.degree, all.end());
            p.entries.emplace_back(std::move(args), std::move(v));
        } else if (key == "window") {
            if (toks.size() != 2) bad(line, "usage: window <radius>");
            int w = static_cast<int>(parse_int(toks[1], line));
            if (w < 1 || w > 8) bad(line, "window radius out of range");
            p.window = w;
        } else if (key == "seed") {
            if (toks.size() != 2) bad(line, "usage: seed <n>");
            p.seed = parse_int(toks[1], line);
        } else {
            bad(line, "unknown keyword '" + key + "'");
        }
    }

    if (!p.group) fail(Error::Kind::ParseError, "problem declares no group");
    if (!mod) fail(Error::Kind::ParseError, "problem declares no module");
    ModuleAut th = theta ? *theta : identity_aut(*mod);
    GroupAction action = [&] {
        switch (act) {
            case Act::Sign: {
                // Same canonical choice the fixture catalog makes; declared
                // here so problem files can request it by name.
                const FiniteGroup& gr = *p.group;
                for (long long c = 1; c < (1LL << (gr.order() - 1)); ++c) {
                    std::vector<int> phi(static_cast<std::size_t>(gr.order()), 0);
                    for (int i = 1; i < gr.order(); ++i)
                        phi[i] = static_cast<int>((c >> (gr.order() - 1 - i)) & 1);
                    bool hom = true;
                    for (int x = 0; x < gr.order() && hom; ++x)
                        for (int y = 0; y < gr.order() && hom; ++y)
                            if (phi[gr.mul(x, y)] != (phi[x] + phi[y]) % 2) hom = false;
                    if (!hom) continue;
                    Mat neg(mod->rank(), mod->rank());
                    for (int i = 0; i < mod->rank(); ++i) neg.at(i, i) = mod->moduli[i] - 1;
                    std::vector<ModuleAut> auts;
                    for (int x = 0; x < gr.order(); ++x)
                        auts.push_back(phi[x] ? make_aut(*mod, neg) : identity_aut(*mod));
                    return make_action(p.group, *mod, std::move(auts));
                }
                fail(Error::Kind::ParseError, "group admits no sign action");
            }
            case Act::Explicit: {
                std::vector<ModuleAut> auts;
                for (Mat& m : act_mats) auts.push_back(make_aut(*mod, std::move(m)));
                return make_action(p.group, *mod, std::move(auts));
            }
            case Act::Trivial:
            case Act::Unset:
                return trivial_action(p.group, *mod);
        }
        fail(Error::Kind::ParseError, "unreachable action state");
    }();
    Vec tg = torus ? *torus : Vec(static_cast<std::size_t>(mod->rank()), 0);
    if (static_cast<int>(tg.size()) != mod->rank())
        fail(Error::Kind::ParseError, "torus generator needs one coordinate per modulus");
    p.flow = make_flow(*mod, std::move(th), std::move(action), std::move(tg));
    return p;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Error::Kind::ParseError, "cannot read problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

Tower problem_tower(const ProblemSpec& p) {
    if (!p.lmem) fail(Error::Kind::ParseError, "problem declares no subgroup L");
    NormalSubgroup l = make_normal_subgroup(p.group, *p.lmem);
    NormalSubgroup m = make_normal_subgroup(p.group, p.mmem ? *p.mmem : std::vector<int>{0});
    return make_tower(p.flow, std::move(l), std::move(m));
}

CharacteristicCocycle problem_chi(const ProblemSpec& p) {
    if (!p.lmem) fail(Error::Kind::ParseError, "problem declares no subgroup L");
    if (!p.has_chi) fail(Error::Kind::ParseError, "problem declares no chi data");
    NormalSubgroup l = make_normal_subgroup(p.group, *p.lmem);
    const int lc = l.size();
    const int n = p.group->order();
    const int r = p.flow->rank();
    Vec mu(static_cast<std::size_t>(lc) * lc * r, 0);
    Vec lamh(static_cast<std::size_t>(lc) * n * r, 0);
    Vec lamt(static_cast<std::size_t>(lc) * r, 0);
    for (const auto& e : p.chi_entries) {
        if (e.i < 0 || e.i >= lc)
            fail(Error::Kind::ParseError, "chi index out of range of the subgroup");
        if (e.part == 0) {
            if (e.g < 0 || e.g >= lc)
                fail(Error::Kind::ParseError, "chi mu second index out of range");
            for (int j = 0; j < r; ++j) mu[(static_cast<i64>(e.i) * lc + e.g) * r + j] = e.v[j];
        } else if (e.part == 1) {
            if (e.g < 0 || e.g >= n)
                fail(Error::Kind::ParseError, "chi lamH group element out of range");
            for (int j = 0; j < r; ++j) lamh[(static_cast<i64>(e.i) * n + e.g) * r + j] = e.v[j];
        } else {
            for (int j = 0; j < r; ++j) lamt[static_cast<i64>(e.i) * r + j] = e.v[j];
        }
    }
    return make_char(p.flow, std::move(l), std::move(mu), std::move(lamh), std::move(lamt));
}

Cochain problem_cochain(const ProblemSpec& p) {
    if (!p.degree) fail(Error::Kind::ParseError, "problem declares no cocycle degree");
    Cochain c = make_cochain(p.flow, *p.degree);
    const int n = p.group->order();
    for (const auto& [args, v] : p.entries) {
        for (int a : args)
            if (a < 0 || a >= n) fail(Error::Kind::ParseError, "entry group argument out of range");
        c.set(args, p.flow->mod.reduce(v));
    }
    return c;
}

CrossSection problem_section_s(const ProblemSpec& p, const Tower& t) {
    if (!p.sect_s) return default_section(t.g_to_Q);
    return make_section(t.g_to_Q, *p.sect_s);
}

CrossSection problem_section_sh(const ProblemSpec& p, const Tower& t) {
    if (!p.sect_sh) return default_section(t.to_G);
    return make_section(t.to_G, *p.sect_sh);
}

GroupPtr parse_group_arg(const std::string& text) {
    if (text == "klein") return make_product({make_cyclic(2), make_cyclic(2)});
    std::size_t colon = text.find(':');
    std::string fam = colon == std::string::npos ? text : text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto ints = [&] {
        std::vector<int> out;
        std::istringstream in(rest);
        std::string piece;
        while (std::getline(in, piece, ','))
            out.push_back(static_cast<int>(parse_int(piece, 0)));
        return out;
    };
    if (fam == "cyclic") {
        auto v = ints();
        if (v.size() != 1) fail(Error::Kind::ParseError, "usage: cyclic:<n>");
        return make_cyclic(v[0]);
    }
    if (fam == "product") {
        auto v = ints();
        if (v.empty()) fail(Error::Kind::ParseError, "usage: product:<n1>,<n2>,...");
        std::vector<GroupPtr> parts;
        for (int n : v) parts.push_back(make_cyclic(n));
        return make_product(parts);
    }
    if (fam == "heisenberg") {
        auto v = ints();
        if (v.size() != 1) fail(Error::Kind::ParseError, "usage: heisenberg:<k>");
        return make_heisenberg(v[0]);
    }
    fail(Error::Kind::ParseError, "unknown group '" + text + "'");
}

AbelianModule parse_module_arg(const std::string& text) {
    if (text.empty() || (text[0] != 'Z' && text[0] != 'z'))
        fail(Error::Kind::ParseError, "module shorthand looks like Z2 or Z2xZ4");
    Vec moduli;
    std::istringstream in(text);
    std::string piece;
    while (std::getline(in, piece, 'x')) {
        if (piece.empty() || (piece[0] != 'Z' && piece[0] != 'z'))
            fail(Error::Kind::ParseError, "module shorthand looks like Z2 or Z2xZ4");
        moduli.push_back(parse_int(piece.substr(1), 0));
    }
    return make_module(std::move(moduli));
}

}  // namespace obslab
