import dataclasses
import itertools

import pytest
from hypothesis import given, strategies as st

from laxcat import fixtures as fx
from laxcat.errors import BijectiveFailure, NoInitialObject, NotComposable, NoTerminalObject, NotParallel
from laxcat.fincat import (
    compose_functors,
    constant_functor,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    identity_nat,
)
from laxcat.laxcomma import (
    L,
    LaxObject,
    LaxTwoCell,
    R,
    Truncation,
    U,
    Workspace,
    adjunction_L_U,
    adjunction_U_R,
    cartesian_lift,
    compose_lax,
    enumerate_lax_hom,
    enumerate_two_cells,
    identity_lax,
    is_strict,
    lax_morphism,
    probe_objects,
    strict_morphism,
    two_cell_check,
    verify_adjunction,
    verify_cartesian,
    vertical_part,
)


def pt(X, name):
    return LaxObject(constant_functor(fx.one(), X, X.obj(name)), f"pt:{name}")


def at(W, Y, y):
    return constant_functor(W, Y, Y.obj(y))


# -- composition and identities


def test_identity_is_neutral(ws3):
    X = ws3.X
    a, b = pt(X, "0"), pt(X, "m")
    (m,) = enumerate_lax_hom(a, b)
    assert compose_lax(identity_lax(b), m) == m == compose_lax(m, identity_lax(a))


def test_chain_composite_cell():
    X = fx.x3()
    a, b, c = pt(X, "0"), pt(X, "m"), pt(X, "1")
    idf = identity_functor(fx.one())
    g = lax_morphism(a, b, idf, [X.mor("0<=m")])
    h = lax_morphism(b, c, idf, [X.mor("m<=1")])
    assert X.morphisms[compose_lax(h, g).components[0]] == "0<=1"
    assert not is_strict(g)


def test_strict_closed_under_composition():
    X = fx.x3()
    A = fx.arrow()
    o = LaxObject(at(A, X, "m"))
    p = pt(X, "m")
    f = strict_morphism(p, o, at(fx.one(), A, "s"))
    g = strict_morphism(o, p, constant_functor(A, fx.one(), 0))
    assert is_strict(f) and is_strict(g) and is_strict(compose_lax(g, f))


def test_not_composable(ws2):
    a, b = pt(ws2.X, "0"), pt(ws2.X, "1")
    (m,) = enumerate_lax_hom(a, b)
    with pytest.raises(NotComposable):
        compose_lax(m, m)


def test_identity_on_point():
    o = pt(fx.x2(), "0")
    i = identity_lax(o)
    assert i.functor == identity_functor(fx.one()) and is_strict(i)
    assert compose_lax(i, i) == i


def test_cartesian_lift_of_any_functor_is_strict():
    X = fx.x3()
    o = LaxObject(fx.structures(fx.arrow(), X)[3])
    for f in enumerate_functors(fx.arrow(), fx.arrow()):
        assert is_strict(cartesian_lift(o, f))


# -- hom enumeration


def test_hom_counts_x2():
    X = fx.x2()
    top, bot = pt(X, "1"), pt(X, "0")
    assert len(enumerate_lax_hom(top, top)) == 1
    assert len(enumerate_lax_hom(bot, top)) == 1
    assert enumerate_lax_hom(top, bot) == []


# -- 2-cells


def test_two_cell_identity():
    X = fx.x3()
    a, b = pt(X, "0"), pt(X, "1")
    (m,) = enumerate_lax_hom(a, b)
    assert two_cell_check(LaxTwoCell(m, m, identity_nat(m.functor)))


def test_two_cells_between_strict_morphisms():
    X = fx.x3()
    A = fx.arrow()
    cod = LaxObject(at(A, X, "m"))
    dom = pt(X, "m")
    ms = strict_morphism(dom, cod, at(fx.one(), A, "s"))
    mt = strict_morphism(dom, cod, at(fx.one(), A, "t"))
    assert len(enumerate_two_cells(ms, mt)) == 1
    assert enumerate_two_cells(mt, ms) == []
    # over the structure low: s -> 0, t -> m, the pasted cell is forced to 0<=m
    low = LaxObject(fx.structures(A, X)[1])
    assert [X.objects[x] for x in low.structure.omap] == ["0", "m"]
    bot = pt(X, "0")
    m1 = lax_morphism(bot, low, at(fx.one(), A, "s"), [X.ids[0]])
    m2 = lax_morphism(bot, low, at(fx.one(), A, "t"), [X.mor("0<=m")])
    (zeta,) = enumerate_nat_trans(m1.functor, m2.functor)
    assert two_cell_check(LaxTwoCell(m1, m2, zeta))


def test_two_cell_mismatch():
    X = fx.idempotent()
    o = LaxObject(constant_functor(fx.one(), X, 0), "star")
    i = identity_lax(o)
    e = lax_morphism(o, o, identity_functor(fx.one()), [X.mor("e")])
    assert not two_cell_check(LaxTwoCell(i, e, identity_nat(i.functor)))
    assert two_cell_check(LaxTwoCell(e, e, identity_nat(e.functor)))


def test_two_cell_not_parallel():
    X = fx.x2()
    a, b = pt(X, "0"), pt(X, "1")
    (m,) = enumerate_lax_hom(a, b)
    with pytest.raises(NotParallel):
        two_cell_check(LaxTwoCell(m, identity_lax(a), identity_nat(m.functor)))


# -- U, L, R


def test_U_strips_structure():
    X = fx.x3()
    o = LaxObject(fx.structures(fx.arrow(), X)[2])
    assert U(o) == fx.arrow()
    (m, *_) = enumerate_lax_hom(o, o)
    assert U(m) == m.functor


def test_L_and_R(ws2):
    X = ws2.X
    assert L(ws2, fx.one()).structure.omap == (X.obj("0"),)
    assert R(ws2, fx.arrow()).structure.omap == (X.obj("1"), X.obj("1"))
    for W in fx.small_bases():
        assert U(L(ws2, W)) == W
    for f in enumerate_functors(fx.arrow(), fx.span()):
        assert is_strict(L(ws2, f))


def test_L_R_need_initial_terminal():
    ws = Workspace(fx.v_poset())
    with pytest.raises(NoInitialObject):
        L(ws, fx.one())
    with pytest.raises(NoTerminalObject):
        R(ws, fx.one())


def test_hom_bijection_counts(ws2):
    for W in fx.small_bases():
        for o in probe_objects(ws2, limit=6):
            assert len(enumerate_functors(W, U(o))) == len(enumerate_lax_hom(L(ws2, W), o))
            assert len(enumerate_functors(U(o), W)) == len(enumerate_lax_hom(o, R(ws2, W)))


def test_adjunctions_on_three_object_truncation(ws2):
    bases = [fx.empty(), fx.one(), fx.arrow()]
    objs = probe_objects(ws2, limit=3)
    assert verify_adjunction(adjunction_L_U(ws2), bases, objs)
    assert verify_adjunction(adjunction_U_R(ws2), objs, bases)


def test_corrupted_unit_detected(ws2):
    adj = adjunction_L_U(ws2)

    def bad_unit(W):
        return constant_functor(W, W, W.n_obj - 1) if W.n_obj > 1 else identity_functor(W)

    with pytest.raises(BijectiveFailure):
        verify_adjunction(dataclasses.replace(adj, unit=bad_unit), [fx.arrow()], probe_objects(ws2, limit=3))


# -- cartesian lifts


def test_cartesian_lift_identity():
    o = LaxObject(fx.structures(fx.arrow(), fx.x3())[4])
    assert cartesian_lift(o, identity_functor(fx.arrow())).cell == identity_lax(o).cell
    assert cartesian_lift(o, identity_functor(fx.arrow())).functor == identity_functor(fx.arrow())


def test_cartesian_lift_restricts():
    X = fx.x3()
    o = LaxObject(fx.structures(fx.arrow(), X)[4])
    lift = cartesian_lift(o, at(fx.one(), fx.arrow(), "s"))
    assert lift.dom.structure.omap == (o.structure.omap[0],)


def test_cartesian_factorization_on_truncation(ws3):
    o = LaxObject(fx.structures(fx.arrow(), ws3.X)[3])
    trunc = Truncation(probe_objects(ws3, limit=3), ws3)
    for f in enumerate_functors(fx.one(), fx.arrow()):
        assert verify_cartesian(cartesian_lift(o, f), trunc)


# -- properties


xs = st.sampled_from([fx.x2, fx.x3, fx.idempotent])


@given(xs, st.integers(2, 5))
def test_truncation_category_laws(X, k):
    ws = Workspace(X())
    T = Truncation(probe_objects(ws, limit=k), ws)
    n = T.n_obj
    for i, j in itertools.product(range(n), repeat=2):
        for f in T.hom(i, j):
            assert compose_lax(identity_lax(T.objs[j]), f) == f == compose_lax(f, identity_lax(T.objs[i]))
            assert U(compose_lax(identity_lax(T.objs[j]), f)) == U(f)
    for i, j, k2, l in itertools.product(range(n), repeat=4):
        for f in T.hom(i, j):
            for g in T.hom(j, k2):
                gf = compose_lax(g, f)
                assert U(gf) == compose_functors(U(g), U(f))
                for h in T.hom(k2, l):
                    assert compose_lax(h, gf) == compose_lax(compose_lax(h, g), f)


@given(xs, st.integers(2, 5))
def test_unique_vertical_factorization(X, k):
    ws = Workspace(X())
    objs = probe_objects(ws, limit=k)
    for a, b in itertools.product(objs, repeat=2):
        for m in enumerate_lax_hom(a, b):
            lift = cartesian_lift(b, m.functor)
            v = vertical_part(m)
            assert v.functor == identity_functor(a.base)
            assert compose_lax(lift, v) == m


@given(st.sampled_from([fx.x2, fx.x3]), st.integers(1, 4))
def test_triangle_identities(X, k):
    ws = Workspace(X())
    objs = probe_objects(ws, limit=k)
    assert verify_adjunction(adjunction_L_U(ws), [fx.one(), fx.two_points()], objs)
    assert verify_adjunction(adjunction_U_R(ws), objs, [fx.one(), fx.two_points()])
