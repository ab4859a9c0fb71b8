#include "obslab/report.hpp"

#include <cstdint>
#include <sstream>

#include "obslab/errors.hpp"

namespace obslab {

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

Json json_of_vec(const Vec& v) {
    Json a = Json::array();
    for (i64 x : v) a.push_back(x);
    return a;
}

Json json_of_cochain(const Cochain& c) {
    const int n = c.flow->group()->order();
    const int r = c.flow->rank();
    Json entries = Json::array();
    std::vector<int> args(static_cast<std::size_t>(c.degree), 0);
    i64 tuples = 1;
    for (int i = 0; i < c.degree; ++i) tuples *= n;
    for (i64 t = 0; t < tuples; ++t) {
        i64 rest = t;
        for (int i = c.degree - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rest % n);
            rest /= n;
        }
        bool zero = true;
        for (int j = 0; j < r; ++j)
            if (c.table[t * r + j] != 0) zero = false;
        if (zero) continue;
        Json e;
        e["at"] = Json::array();
        for (int a : args) e["at"].push_back(a);
        e["value"] = Json::array();
        for (int j = 0; j < r; ++j) e["value"].push_back(c.table[t * r + j]);
        entries.push_back(std::move(e));
    }
    Json out;
    out["degree"] = c.degree;
    out["rank"] = r;
    out["entries"] = std::move(entries);
    return out;
}

Json json_of_standard_three(const StandardThree& c) {
    Json out;
    out["pure"] = json_of_cochain(c.cQ);
    const int n = c.order();
    const int r = c.rank();
    Json d1 = Json::array();
    for (int q = 0; q < n; ++q)
        for (int t = 0; t < n; ++t) {
            Vec v = c.d1_at(q, t);
            bool zero = true;
            for (i64 x : v)
                if (x != 0) zero = false;
            if (zero) continue;
            Json e;
            e["at"] = Json::array({q, t});
            e["value"] = json_of_vec(v);
            d1.push_back(std::move(e));
        }
    out["flow"] = std::move(d1);
    return out;
}

Json make_report(const std::string& command) {
    Json r;
    r["command"] = command;
    r["inputs"] = Json::object();
    r["results"] = Json::object();
    r["verdict"] = "";
    r["timing"] = nullptr;
    return r;
}

void add_input_digest(Json& report, const std::string& name, const std::string& content) {
    report["inputs"][name] = fnv1a_hex(content);
}

void set_verdict(Json& report, const std::string& verdict) { report["verdict"] = verdict; }

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace {

void render_node(const Json& j, std::ostream& out, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_structured())) {
                out << pad << k << ":\n";
                render_node(v, out, indent + 1);
            } else if (v.is_array()) {
                out << pad << k << ": " << v.dump() << "\n";
            } else {
                out << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured()) {
                out << pad << "-\n";
                render_node(v, out, indent + 1);
            } else {
                out << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        out << pad << j.dump() << "\n";
    }
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    render_node(report, out, 0);
    return out.str();
}

namespace {

[[noreturn]] void bad_json(const std::string& what) {
    fail(Error::Kind::ParseError, "malformed report data: " + what);
}

i64 int_at(const Json& j) {
    if (!j.is_number_integer()) bad_json("expected an integer");
    return j.get<i64>();
}

}  // namespace

Cochain cochain_from_json(const Json& j, FlowPtr flow) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("entries"))
        bad_json("cochain needs degree and entries");
    i64 degree = int_at(j["degree"]);
    if (degree < 0 || degree > 4) bad_json("cochain degree out of range");
    const int n = flow->group()->order();
    const int r = flow->rank();
    Cochain c = make_cochain(flow, static_cast<int>(degree));
    if (!j["entries"].is_array()) bad_json("entries must be an array");
    for (const Json& e : j["entries"]) {
        if (!e.is_object() || !e.contains("at") || !e.contains("value"))
            bad_json("entry needs at and value");
        if (!e["at"].is_array() || static_cast<i64>(e["at"].size()) != degree)
            bad_json("entry position has the wrong arity");
        std::vector<int> args;
        for (const Json& x : e["at"]) {
            i64 v = int_at(x);
            if (v < 0 || v >= n) bad_json("entry position out of range");
            args.push_back(static_cast<int>(v));
        }
        if (!e["value"].is_array() || static_cast<int>(e["value"].size()) != r)
            bad_json("entry value has the wrong rank");
        Vec v;
        for (const Json& x : e["value"]) v.push_back(int_at(x));
        c.set(args, flow->mod.reduce(v));
    }
    return c;
}

StandardThree standard_three_from_json(const Json& j, FlowPtr flow) {
    if (!j.is_object() || !j.contains("pure") || !j.contains("flow"))
        bad_json("standard pair needs pure and flow parts");
    Cochain cq = cochain_from_json(j["pure"], flow);
    if (cq.degree != 3) bad_json("pure part must have degree 3");
    const int n = flow->group()->order();
    const int r = flow->rank();
    Vec d1(static_cast<std::size_t>(n) * n * r, 0);
    if (!j["flow"].is_array()) bad_json("flow part must be an array");
    for (const Json& e : j["flow"]) {
        if (!e.is_object() || !e.contains("at") || !e.contains("value"))
            bad_json("flow entry needs at and value");
        if (!e["at"].is_array() || e["at"].size() != 2) bad_json("flow entry position has arity 2");
        i64 q = int_at(e["at"][0]), t = int_at(e["at"][1]);
        if (q < 0 || q >= n || t < 0 || t >= n) bad_json("flow entry position out of range");
        if (!e["value"].is_array() || static_cast<int>(e["value"].size()) != r)
            bad_json("flow entry value has the wrong rank");
        Vec v;
        for (const Json& x : e["value"]) v.push_back(int_at(x));
        v = flow->mod.reduce(v);
        for (int i = 0; i < r; ++i) d1[(q * n + t) * r + i] = v[i];
    }
    return {flow, std::move(cq), std::move(d1)};
}

}  // namespace obslab
