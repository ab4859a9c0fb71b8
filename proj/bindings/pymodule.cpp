// Python bindings: a thin functional surface over the core library. Handles
// are opaque value wrappers; composite results come back as plain dicts so
// the python side needs no extra types.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obslab/budget.hpp"
#include "obslab/charcocycle.hpp"
#include "obslab/cochain.hpp"
#include "obslab/demos.hpp"
#include "obslab/errors.hpp"
#include "obslab/fixtures.hpp"
#include "obslab/group.hpp"
#include "obslab/hjr.hpp"
#include "obslab/module.hpp"
#include "obslab/problem.hpp"
#include "obslab/report.hpp"
#include "obslab/resolution.hpp"
#include "obslab/standard.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace obslab;

namespace {

struct PyGroup {
    GroupPtr p;
};

struct PyFlow {
    FlowPtr p;
};

struct PyCochain {
    Cochain c;
};

struct PyObstruction {
    ModularObstruction ob;
};

// A resolved working context: either a built-in fixture or a parsed problem
// description, mirroring what the command line accepts.
struct Workspace {
    FlowPtr flow;
    std::optional<Tower> tower;
    std::optional<CharacteristicCocycle> chi;
    std::optional<ProblemSpec> spec;
    std::string name;

    const Tower& tower_ref() const {
        if (!tower) fail(Error::Kind::InvalidArgument, "context has no subgroup tower");
        return *tower;
    }
    const CharacteristicCocycle& chi_ref() const {
        if (!chi) fail(Error::Kind::InvalidArgument, "context has no characteristic data");
        return *chi;
    }
    CrossSection s() const {
        if (spec) return problem_section_s(*spec, tower_ref());
        return default_section(tower_ref().g_to_Q);
    }
    CrossSection sh() const {
        if (spec) return problem_section_sh(*spec, tower_ref());
        return default_section(tower_ref().to_G);
    }
};

Workspace context_from_fixture(const std::string& name) {
    Fixture f = fixture_by_name(name);
    return {f.flow, f.tower, f.chi, std::nullopt, f.name};
}

Workspace context_from_problem(const std::string& text) {
    ProblemSpec p = parse_problem(text);
    Workspace c;
    c.flow = p.flow;
    c.name = "problem";
    if (p.lmem) {
        c.tower = problem_tower(p);
        if (p.has_chi) c.chi = problem_chi(p);
    }
    c.spec = std::move(p);
    return c;
}

py::list nu_list(const ModularObstruction& ob) {
    py::list out;
    for (const Vec& v : ob.nu) out.append(v);
    return out;
}

ObstructionCocycleData run_delta_mod(const Workspace& c) {
    return delta_mod(c.chi_ref(), c.tower_ref(), c.s(), c.sh());
}

}  // namespace

PYBIND11_MODULE(obslab, m) {
    m.doc() = "finite twisted-cohomology workbench";
    py::register_exception<Error>(m, "Error");
    Budget::reset();

    py::class_<PyGroup>(m, "Group")
        .def_property_readonly("order", [](const PyGroup& g) { return g.p->order(); })
        .def("mul", [](const PyGroup& g, int x, int y) { return g.p->mul(x, y); })
        .def("inv", [](const PyGroup& g, int x) { return g.p->inv(x); });

    m.def("cyclic", [](int n) { return PyGroup{make_cyclic(n)}; }, "n"_a);
    m.def("product", [](const std::vector<int>& moduli) {
        std::vector<GroupPtr> parts;
        for (int n : moduli) parts.push_back(make_cyclic(n));
        return PyGroup{make_product(parts)};
    }, "moduli"_a);
    m.def("heisenberg", [](int k) { return PyGroup{make_heisenberg(k)}; }, "k"_a);
    m.def("group_from_table", [](std::vector<int> table, const std::string& label) {
        return PyGroup{make_explicit(std::move(table), label)};
    }, "table"_a, "label"_a = "explicit");

    py::class_<PyFlow>(m, "Flow")
        .def_property_readonly("rank", [](const PyFlow& f) { return f.p->rank(); })
        .def_property_readonly("moduli", [](const PyFlow& f) { return f.p->mod.moduli; })
        .def_property_readonly("group", [](const PyFlow& f) { return PyGroup{f.p->group()}; });

    m.def("trivial_flow", [](const PyGroup& g, const Vec& moduli, const Vec& torus_gen) {
        return PyFlow{make_trivial_flow(g.p, make_module(moduli), torus_gen)};
    }, "group"_a, "moduli"_a, "torus_gen"_a);
    m.def("sign_flow", [](const PyGroup& g, const Vec& moduli) {
        AbelianModule mod = make_module(moduli);
        auto act = sign_action(g.p, mod);
        if (!act) fail(Error::Kind::InvalidArgument, "group admits no sign action here");
        // Negation fixes no nonzero generator, so the designated torus is zero.
        return PyFlow{make_flow(mod, identity_aut(mod), std::move(*act),
                                Vec(moduli.size(), 0))};
    }, "group"_a, "moduli"_a);

    py::class_<PyCochain>(m, "Cochain")
        .def_property_readonly("degree", [](const PyCochain& c) { return c.c.degree; })
        .def_property_readonly("rank", [](const PyCochain& c) { return c.c.rank(); })
        .def("at", [](const PyCochain& c, const std::vector<int>& args) { return c.c.at(args); })
        .def("is_cocycle", [](const PyCochain& c) { return is_cocycle(c.c).ok; })
        .def("is_coboundary", [](const PyCochain& c) -> std::optional<PyCochain> {
            auto w = is_coboundary(c.c);
            if (!w) return std::nullopt;
            return PyCochain{std::move(*w)};
        })
        .def("coboundary", [](const PyCochain& c) { return PyCochain{coboundary(c.c)}; })
        .def("to_json", [](const PyCochain& c) { return json_of_cochain(c.c).dump(); });

    m.def("cohomology", [](const PyFlow& f, int degree) {
        CohomologyGroup h = cohomology(f.p, degree);
        return py::dict("factors"_a = h.factors, "order"_a = h.order());
    }, "flow"_a, "degree"_a);
    m.def("cocycle_counts", [](const PyFlow& f, int degree) {
        return py::dict(
            "solver"_a = static_cast<i64>(lattice_cocycles(f.p, degree).size()),
            "enumeration"_a = static_cast<i64>(enumerate_cocycles(f.p, degree).size()));
    }, "flow"_a, "degree"_a);

    py::class_<PyObstruction>(m, "Obstruction")
        .def_property_readonly("nu", [](const PyObstruction& o) { return nu_list(o.ob); })
        .def_property_readonly("nu_trivial",
                               [](const PyObstruction& o) { return o.ob.nu_trivial(); })
        .def("pair_json",
             [](const PyObstruction& o) { return json_of_standard_three(o.ob.three).dump(); });

    py::class_<Workspace>(m, "Context")
        .def_property_readonly("name", [](const Workspace& c) { return c.name; })
        .def_property_readonly("flow", [](const Workspace& c) { return PyFlow{c.flow}; })
        .def("chi_valid", [](const Workspace& c) { return check_char(c.chi_ref()).ok; })
        .def("delta_hjr", [](const Workspace& c) {
            const Tower& t = c.tower_ref();
            CrossSection s = c.spec ? (c.spec->sect_s
                                           ? make_section(t.to_Q, *c.spec->sect_s)
                                           : default_section(t.to_Q))
                                    : default_section(t.to_Q);
            return PyCochain{delta_hjr(c.chi_ref(), s, t.flowQ)};
        })
        .def("delta_mod", [](const Workspace& c) { return PyObstruction{run_delta_mod(c).ob}; })
        .def("partial", [](const Workspace& c) {
            PartialData pd = partial_map(run_delta_mod(c).ob);
            return py::dict("f"_a = PyCochain{std::move(pd.f)},
                            "a"_a = PyCochain{std::move(pd.a)},
                            "connecting"_a = PyCochain{std::move(pd.cG)});
        })
        .def("exactness", [](const Workspace& c) {
            const Tower& t = c.tower_ref();
            ExactnessReport r = verify_exactness(c.flow, t.L, t.M);
            return py::dict("torus_two_cocycles"_a = r.torus_two_cocycles,
                            "chars_total"_a = r.chars_total,
                            "chars_admissible"_a = r.chars_admissible,
                            "delta_trivial"_a = r.delta_trivial,
                            "matched_restrictions"_a = r.matched_restrictions,
                            "strict_domain_equals_class_domain"_a =
                                r.strict_domain_equals_class_domain,
                            "notes"_a = r.notes);
        })
        .def("cochain", [](const Workspace& c) {
            if (!c.spec || !c.spec->degree)
                fail(Error::Kind::InvalidArgument, "context declares no cochain");
            return PyCochain{problem_cochain(*c.spec)};
        });

    m.def("fixture", &context_from_fixture, "name"_a);
    m.def("problem", &context_from_problem, "text"_a);
    m.def("fixture_names", [] {
        std::vector<std::string> names;
        for (const Fixture& f : standard_fixtures()) names.push_back(f.name);
        return names;
    });

    m.def("heisenberg_demo", [](int k, const std::string& nu, int modulus) {
        int mval = modulus > 0 ? modulus : k;
        GroupPtr g = make_heisenberg(k);
        FlowPtr flow = make_trivial_flow(g, make_module({mval}), {1});
        Vec w = {nu == "zero" ? 0 : 1};
        if (nu != "zero" && nu != "injective")
            fail(Error::Kind::InvalidArgument, "nu must be 'injective' or 'zero'");
        HeisenbergDemo demo = build_heisenberg_demo(k, flow, w);
        return PyObstruction{demo.ob()};
    }, "k"_a, "nu"_a = "injective", "modulus"_a = 0);

    m.def("splitting_test", [](const PyObstruction& o) {
        SplittingResult r = splitting_test(o.ob);
        py::dict out("split"_a = r.split, "space"_a = r.space, "candidates"_a = r.candidates,
                     "exhausted"_a = r.exhausted());
        if (r.split) {
            out["b"] = r.b;
            out["f"] = PyCochain{*r.f};
        }
        return out;
    }, "ob"_a);
    m.def("necessary_test", [](const PyObstruction& o) { return necessary_test(o.ob); }, "ob"_a);
    m.def("alternating_form", [](const PyObstruction& o) {
        AlternatingForm a = antisymmetry_invariant(o.ob);
        return py::dict("nonzero"_a = a.nonzero, "order"_a = a.order);
    }, "ob"_a);

    m.def("change_section", [](const PyObstruction& o, const std::vector<int>& values) {
        CrossSection s2 = make_section(o.ob.tower.g_to_Q, values);
        return PyObstruction{change_section(o.ob, s2)};
    }, "ob"_a, "values"_a);
    m.def("obstruction_equal", [](const PyObstruction& a, const PyObstruction& b) {
        ObstructionEq eq = obstruction_equal(a.ob, b.ob);
        return py::dict("equal"_a = eq.equal, "reason"_a = eq.reason);
    }, "a"_a, "b"_a);

    m.def("resolve_obstruction", [](const PyObstruction& o) {
        ObstructionResolution res = resolve_obstruction(o.ob);
        ObstructionEq eq = obstruction_equal(res.realized.ob, o.ob);
        return py::dict("resolved_order"_a = res.tower.H()->order(),
                        "kernel_order"_a = res.tower.M.size(), "realizes"_a = eq.equal);
    }, "ob"_a);
    m.def("resolve_cocycle", [](const PyCochain& c) {
        ResolutionSystem rs = resolve_three_cocycle(c.c);
        return py::dict("resolved_order"_a = rs.to_G->parent->order(),
                        "kernel_order"_a = rs.M.size());
    }, "cocycle"_a);

    m.def("budget_reset", [] { Budget::reset(); });
}
