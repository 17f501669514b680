import json
import time

import pytest

from laxcat import fixtures as fx
from laxcat.errors import MissingLimit
from laxcat.fincat import constant_functor, enumerate_functors, identity_functor
from laxcat.laxcomma import LaxObject, Workspace, cartesian_lift, enumerate_lax_hom, probe_objects
from laxcat.laxstruct import coproduct_laxcomma, initial_laxcomma, lax_iso
from laxcat.toolkit import (
    FAIL,
    PASS,
    SKIPPED,
    CheckReport,
    check_adjunctions,
    check_descent,
    check_extensivity,
    check_l_pullback_zero,
    check_lattice,
    check_lu_pullback,
    check_strict_initial,
    check_topologicity,
    extensivity_failure,
    extensivity_suite,
    initial_lift,
    run_batch,
    verify_initial_lift,
)


def pt(X, name):
    return LaxObject(constant_functor(fx.one(), X, X.obj(name)), f"pt:{name}")


# -- reports


def test_report_invariants():
    with pytest.raises(ValueError):
        CheckReport("x", FAIL)
    with pytest.raises(ValueError):
        CheckReport("x", SKIPPED)
    with pytest.raises(ValueError):
        CheckReport("x", "maybe")
    assert CheckReport("x", PASS).exit_code == 0
    assert CheckReport("x", FAIL, witnesses=("w",)).exit_code == 1
    assert CheckReport("x", SKIPPED, reason="r").exit_code == 2


def test_report_rendering_excludes_timing():
    r = CheckReport("x", FAIL, "why", ("w1", "w2"), ("p",), timing=1.5)
    assert r.render() == "check x: fail\n  reason: why\n  witness: w1\n  witness: w2\n  probes: p"
    assert "timing" not in r.to_json()
    assert json.loads(r.to_json(timing=True))["timing"] == 1.5
    assert set(r.as_dict()) == {"name", "verdict", "reason", "witnesses", "probes"}


def test_run_batch_keeps_input_order():
    def task(k):
        def run():
            time.sleep(0.002 * (5 - k))
            return k
        return run

    assert run_batch([task(k) for k in range(5)], jobs=4) == list(range(5))


# -- lattice and strictness


@pytest.mark.parametrize("X, verdict", [(fx.x3, PASS), (fx.diamond, PASS), (fx.v_poset, FAIL), (fx.wedge_top, FAIL)])
def test_check_lattice(X, verdict):
    r = check_lattice(X())
    assert r.verdict == verdict
    if verdict == FAIL:
        assert r.witnesses


def test_check_strict_initial():
    assert check_strict_initial(fx.x2()).verdict == PASS
    r = check_strict_initial(fx.zero_with_endo())
    assert r.verdict == FAIL and r.witnesses


# -- initial lifts and topologicity


def test_singleton_lift_is_cartesian(ws3):
    A = fx.arrow()
    for o in [LaxObject(a) for a in enumerate_functors(A, ws3.X)]:
        lift = initial_lift(ws3, A, [(identity_functor(A), o)])
        cart = cartesian_lift(o, identity_functor(A))
        assert lift.obj.structure.omap == cart.dom.structure.omap
        assert lift.morphisms[0].components == cart.components


def test_lift_is_meet(ws3):
    X = ws3.X
    one = fx.one()
    sources = [(identity_functor(one), pt(X, "m")), (identity_functor(one), pt(X, "1"))]
    lift = initial_lift(ws3, one, sources)
    assert [X.objects[x] for x in lift.obj.structure.omap] == ["m"]
    assert verify_initial_lift(lift, sources, probe_objects(ws3, limit=3)) is None


def test_empty_family_over_v():
    ws = Workspace(fx.v_poset())
    with pytest.raises(MissingLimit):
        initial_lift(ws, fx.one(), [])


@pytest.mark.parametrize("X", [fx.x2, fx.x3, fx.diamond])
def test_topologicity_passes_on_lattices(X):
    r = check_topologicity(X())
    assert r.verdict == PASS and r.reason == "finite-scale verdict"
    assert len(r.probes) == 3


def test_topologicity_fails_on_v():
    r = check_topologicity(fx.v_poset())
    assert r.verdict == FAIL
    assert r.witnesses == ("no initial lift: empty family over One",)


def test_topologicity_fails_on_missing_meet():
    r = check_topologicity(fx.wedge_top())
    assert r.verdict == FAIL
    assert "family over One" in r.witnesses[0] and "One:p" in r.witnesses[0] and "One:q" in r.witnesses[0]


def test_topologicity_non_thin():
    r = check_topologicity(fx.cyclic_group(2))
    assert r.verdict == FAIL and "U is not faithful" in r.witnesses


# -- extensivity


def test_extensive_at_injection(ws2):
    o1, o2 = pt(ws2.X, "0"), pt(ws2.X, "1")
    cp = coproduct_laxcomma(ws2, o1, o2)
    for leg in cp.legs:
        assert extensivity_failure(ws2, leg, o1, o2) is None


def test_extensive_at_initial(ws2):
    o1, o2 = pt(ws2.X, "0"), pt(ws2.X, "1")
    cp = coproduct_laxcomma(ws2, o1, o2)
    (m,) = enumerate_lax_hom(initial_laxcomma(ws2), cp.obj)
    assert extensivity_failure(ws2, m, o1, o2) is None


@pytest.mark.parametrize("X", [fx.x2, fx.x3])
def test_extensivity_suite(X):
    ws = Workspace(X())
    inst = extensivity_suite(ws)
    assert len(inst) >= 10
    r = check_extensivity(ws, inst)
    assert r.verdict == PASS and len(r.probes) == len(inst)


def test_extensivity_skipped_without_initial():
    r = check_extensivity(Workspace(fx.v_poset()))
    assert r.verdict == SKIPPED and "initial" in r.reason


# -- the remaining checks


@pytest.mark.parametrize("X", [fx.x2, fx.x3, fx.diamond])
def test_adjunctions(X):
    assert check_adjunctions(Workspace(X())).verdict == PASS


def test_adjunctions_skipped():
    assert check_adjunctions(Workspace(fx.v_poset())).verdict == SKIPPED


@pytest.mark.parametrize("X", [fx.x2, fx.x3, fx.diamond, fx.v_poset, fx.span, fx.cyclic_group, fx.zero_with_endo])
def test_descent_check(X):
    r = check_descent(X())
    assert r.verdict == PASS
    assert any("effective-descent" in w for w in r.witnesses)


@pytest.mark.parametrize("X", [fx.x2, fx.x3])
def test_pullback_checks(X):
    ws = Workspace(X())
    assert check_lu_pullback(ws).verdict == PASS
    assert check_l_pullback_zero(ws).verdict == PASS


def test_pullback_checks_skipped():
    ws = Workspace(fx.zero_with_endo())
    for r in (check_lu_pullback(ws), check_l_pullback_zero(ws)):
        assert r.verdict == SKIPPED and "strict initial" in r.reason


def test_coproduct_unit_law(ws3):
    z = initial_laxcomma(ws3)
    o = probe_objects(ws3, limit=5)[-1]
    assert lax_iso(coproduct_laxcomma(ws3, o, z).obj, o) is not None
