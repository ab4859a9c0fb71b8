"""Smoke tests for the python bindings: one pass over each exposed operation.

Runnable under pytest or directly (python test_smoke.py).
"""

import json

import obslab


def test_groups():
    g = obslab.cyclic(4)
    assert g.order == 4
    assert g.mul(3, 2) == 1
    assert g.inv(1) == 3
    h = obslab.heisenberg(2)
    assert h.order == 8
    k = obslab.product([2, 2])
    assert k.order == 4


def test_cohomology_and_oracle_agree():
    flow = obslab.trivial_flow(obslab.cyclic(2), [2], [1])
    h2 = obslab.cohomology(flow, 2)
    assert h2["factors"] == [2]
    assert h2["order"] == 2
    counts = obslab.cocycle_counts(flow, 2)
    assert counts["solver"] == counts["enumeration"]


def test_sign_flow():
    flow = obslab.sign_flow(obslab.cyclic(2), [3])
    h1 = obslab.cohomology(flow, 1)
    assert h1["order"] >= 1


def test_fixture_pipeline():
    assert obslab.fixture_names() == ["c4", "klein", "heis2"]
    ctx = obslab.fixture("c4")
    assert ctx.chi_valid()
    d = ctx.delta_hjr()
    assert d.degree == 3
    assert d.is_cocycle()
    ob = ctx.delta_mod()
    assert len(ob.nu) > 0
    pair = json.loads(ob.pair_json())
    assert "pure" in pair and "flow" in pair
    parts = ctx.partial()
    assert parts["connecting"].is_cocycle()


def test_problem_text():
    ctx = obslab.problem(
        """
        group cyclic 4
        module 2
        subgroup L 0 2
        chi lamH 1 1 1
        chi lamH 1 3 1
        """
    )
    assert ctx.chi_valid()
    assert ctx.delta_hjr().is_cocycle()


def test_heisenberg_demo():
    ob = obslab.heisenberg_demo(2, nu="injective")
    r = obslab.splitting_test(ob)
    assert not r["split"]
    assert r["exhausted"]
    assert not obslab.necessary_test(ob)
    assert obslab.alternating_form(ob)["nonzero"]

    ob0 = obslab.heisenberg_demo(2, nu="zero")
    r0 = obslab.splitting_test(ob0)
    assert r0["split"]
    assert obslab.necessary_test(ob0)


def test_resolution():
    ob = obslab.fixture("c4").delta_mod()
    out = obslab.resolve_obstruction(ob)
    assert out["realizes"]
    assert out["resolved_order"] % 4 == 0


def test_section_transport():
    ob = obslab.fixture("c4").delta_mod()
    moved = obslab.change_section(ob, [0, 3])
    eq = obslab.obstruction_equal(ob, moved)
    assert eq["equal"], eq["reason"]


def main():
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"PASS {name}")
            except Exception as exc:  # noqa: BLE001 - report and continue
                failed += 1
                print(f"FAIL {name}: {exc}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
