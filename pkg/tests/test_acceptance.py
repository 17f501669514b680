"""The nine acceptance criteria, one test each.

Every test records a one-line verdict in ``RESULTS``; ``conftest.py`` prints
those lines at the end of the session.  Run standalone with
``python3 tests/test_acceptance.py``.
"""

import functools
import random
import subprocess
import sys
import time

import pytest

from laxcat import fixtures as fx
from laxcat.descent import Grade, classify_descent, pullbacks_of, verify_L_pullback_zero, verify_LU_pullback
from laxcat.errors import CoequalizerNotFiniteWithinBound, MissingLimit
from laxcat.fincat import (
    compose_functors,
    constant_functor,
    count_nat_trans,
    enumerate_functors,
    raw_data,
    validate_category,
)
from laxcat.laxcomma import (
    L,
    R,
    U,
    Workspace,
    adjunction_L_U,
    adjunction_U_R,
    enumerate_lax_hom,
    lax_documents,
    probe_objects,
    verify_adjunction,
)
from laxcat.laxstruct import (
    LimitResult,
    cat_coequalizer,
    coequalizer_laxcomma,
    coproduct_laxcomma,
    exponential_laxcomma,
    initial_laxcomma,
    left_kan,
    product_laxcomma,
    pullback_laxcomma,
    terminal_laxcomma,
    verify_coequalizer,
    verify_colimit,
    verify_currying,
    verify_limit,
    window,
)
from laxcat.presentation import Environment, elaborate, parse, serialize, serialize_many
from laxcat.toolkit import check_topologicity, l_pullback_suite, lax_morphism_suite
from laxcat.univprop import twisted

from instances import cospans, distinct_parallel_pairs, object_pairs, parallel_pairs, pool

RESULTS: dict[int, str] = {}

LATTICES = [fx.x2, fx.x3, fx.diamond]


def criterion(n: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as e:
                RESULTS[n] = f"criterion {n} {title}: FAIL ({type(e).__name__}: {str(e)[:120]})"
                raise
            dt = time.perf_counter() - t0
            RESULTS[n] = f"criterion {n} {title}: PASS ({detail}; {dt:.1f}s)"
            print(RESULTS[n])

        return run

    return wrap


@criterion(1, "category-law suite")
def test_category_laws():
    rng = random.Random(1)
    t0 = time.perf_counter()
    for i in range(100):
        c = fx.random_category(rng, f"R{i}")
        assert c.n_obj <= 5 and c.n_mor <= 12
        text = serialize(c)
        back = elaborate(parse(text), Environment())
        assert back == c and serialize(back) == text
        validate_category(raw_data(back))
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    return "100 presentations round-trip and validate"


@criterion(2, "construction vs oracle")
def test_constructions_vs_oracle():
    t0 = time.perf_counter()
    total = 0
    for X in LATTICES:
        ws = Workspace(X())
        t, z = terminal_laxcomma(ws), initial_laxcomma(ws)
        pairs = object_pairs(ws.X, 20, seed=2)
        for (o1, o2), (m1, m2) in zip(pairs, cospans(ws.X, 20, seed=2)):
            assert verify_limit(window(ws, [o1, t]), [], LimitResult(t, ()))
            assert verify_colimit(window(ws, [o2, z]), [], LimitResult(z, ()))
            p = product_laxcomma(ws, o1, o2)
            assert verify_limit(window(ws, [o1, o2, p.obj]), [o1, o2], p)
            c = coproduct_laxcomma(ws, o1, o2)
            assert verify_colimit(window(ws, [o1, o2, c.obj]), [o1, o2], c)
            pb = pullback_laxcomma(ws, m1, m2)
            assert verify_limit(window(ws, [m1.dom, m2.dom, m1.cod, pb.obj]), None, pb, (m1, m2))
            total += 5
    assert time.perf_counter() - t0 < 120
    return f"{total} instances over X2, X3, Diamond"


@criterion(3, "exponential bijection")
def test_exponential_bijection():
    t0 = time.perf_counter()
    ws = Workspace(fx.x3())
    objs = pool(ws.X, [fx.empty(), fx.one(), fx.arrow()])
    homs = {id(o): [m for z in objs for m in enumerate_lax_hom(z, o)] for o in objs}
    n = 0
    for o1 in objs:
        for o2 in objs:
            e = exponential_laxcomma(ws, o1, o2)
            for o3 in objs:
                lhs, rhs = verify_currying(ws, o1, o2, o3, exp=e, tests=homs[id(o3)])
                assert lhs == rhs
                n += 1
    assert time.perf_counter() - t0 < 300
    return f"{n} triples over {len(objs)} objects, naturality on every morphism"


@criterion(4, "Kan adjunction")
def test_kan_counts():
    A, S = fx.arrow(), fx.span()
    fs = enumerate_functors(fx.two_points(), A) + enumerate_functors(A, S) + enumerate_functors(fx.one(), S)
    n = 0
    for X in (fx.x2(), fx.x3()):
        for f in fs:
            for a in enumerate_functors(f.source, X):
                lan = left_kan(f, a)
                for b in enumerate_functors(f.target, X):
                    assert count_nat_trans(lan.extension, b) == count_nat_trans(a, compose_functors(b, f))
                n += 1
    assert n >= 20
    return f"{n} pairs (f, a)"


@criterion(5, "coequalizers")
def test_coequalizers():
    n = 0
    for X in LATTICES:
        ws = Workspace(X())
        for m1, m2 in distinct_parallel_pairs(ws.X, 6) + parallel_pairs(ws.X, 6, seed=9):
            r = coequalizer_laxcomma(ws, m1, m2)
            assert verify_coequalizer(window(ws, [m1.dom, m1.cod, r.obj]), m1, m2, r)
            n += 1
    assert n >= 10
    A = fx.arrow()
    with pytest.raises(CoequalizerNotFiniteWithinBound):
        cat_coequalizer(constant_functor(fx.one(), A, 0), constant_functor(fx.one(), A, 1))
    return f"{n} pairs; s, t: One -> Two reports the bound"


@criterion(6, "adjoint chain")
def test_adjoint_chain():
    ws = Workspace(fx.x2())
    objs = probe_objects(ws, limit=4)
    assert len(objs) == 4
    bases = fx.small_bases()
    assert verify_adjunction(adjunction_L_U(ws), bases, objs)
    assert verify_adjunction(adjunction_U_R(ws), objs, bases)
    for W in bases:
        for o in objs:
            assert len(enumerate_functors(W, U(o))) == len(enumerate_lax_hom(L(ws, W), o))
            assert len(enumerate_functors(U(o), W)) == len(enumerate_lax_hom(o, R(ws, W)))
    return f"L -| U -| R on {len(objs)} objects and {len(bases)} bases"


DESCENT_FIXTURES = [fx.x2, fx.x3, fx.diamond, fx.v_poset, fx.wedge_top, fx.span, fx.arrow, fx.fork,
                    fx.cyclic_group, fx.idempotent, fx.zero_with_endo]


@criterion(7, "descent")
def test_descent():
    classified = stable = 0
    for make in DESCENT_FIXTURES:
        C = make()
        for x in range(C.n_obj):
            assert classify_descent(C, C.ids[x]).grade == Grade.EFFECTIVE
        for q in range(C.n_mor):
            try:
                dc = classify_descent(C, q)
            except MissingLimit:
                continue
            classified += 1
            assert dc.equivalence <= dc.fully_faithful <= dc.faithful
            assert (dc.grade >= Grade.EFFECTIVE) <= dc.equivalence
            assert (dc.grade >= Grade.DESCENT) <= dc.fully_faithful
            assert (dc.grade >= Grade.ALMOST) <= dc.faithful
            if dc.grade == Grade.EFFECTIVE:
                for _, q2 in pullbacks_of(C, q):
                    try:
                        assert classify_descent(C, q2).grade == Grade.EFFECTIVE
                    except MissingLimit:
                        continue
                    stable += 1
    pb_checks = 0
    for X in (fx.x2, fx.x3):
        ws = Workspace(X())
        ms = lax_morphism_suite(ws, limit=24)
        inst = l_pullback_suite(ws, limit=24)
        assert len(ms) >= 10 and len(inst) >= 10
        assert all(verify_LU_pullback(ws, m) for m in ms)
        assert all(verify_L_pullback_zero(ws, p, m) for p, m in inst)
        pb_checks += len(ms) + len(inst)
    return f"{classified} morphisms graded, {stable} pullbacks stable, {pb_checks} L/U pullback instances"


@criterion(8, "topologicity dichotomy")
def test_topologicity():
    for X in LATTICES:
        assert check_topologicity(X()).verdict == "pass"
    v = check_topologicity(fx.v_poset())
    assert v.verdict == "fail" and v.witnesses == ("no initial lift: empty family over One",)
    lam = check_topologicity(fx.wedge_top())
    assert lam.verdict == "fail" and lam.witnesses[0].startswith("no initial lift: family over One:")
    return "X2, X3, Diamond pass; V and Lambda fail with witnesses"


def _cli_inputs(d):
    X = fx.x3()
    (c1, c2), = cospans(X, 1, seed=3)
    (p1, p2), = distinct_parallel_pairs(X, 1)
    for name, m in [("c1", c1), ("c2", c2), ("p1", p1), ("p2", p2)]:
        (d / f"{name}.fcat").write_text(serialize_many(lax_documents(m, name)))
    P = twisted(fx.arrow())
    T = enumerate_functors(P, X)[5].renamed("T")
    (d / "T.fcat").write_text(serialize_many([fx.arrow(), P, X, T]))
    (d / "lan.fcat").write_text(
        "functor pt_s : One -> Two { objects: pt -> s; }\nfunctor a0 : One -> X3 { objects: pt -> m; }\n")


CLI_RUNS = [
    ["compute", "terminal", "--workspace", "X3.fcat"],
    ["compute", "initial", "--workspace", "X3.fcat"],
    ["compute", "product", "--workspace", "X3.fcat", "--in", "arrows.fcat"],
    ["compute", "coproduct", "--workspace", "X3.fcat", "--in", "arrows.fcat"],
    ["compute", "exponential", "--workspace", "X3.fcat", "--in", "arrows.fcat"],
    ["compute", "pullback", "--workspace", "X3.fcat", "--in", "c1.fcat", "c2.fcat"],
    ["compute", "coequalizer", "--workspace", "X3.fcat", "--in", "p1.fcat", "p2.fcat"],
    ["compute", "lan", "--in", "lan.fcat"],
    ["compute", "end", "--in", "T.fcat"],
] + [
    ["check", name, "X2.fcat", "X3.fcat", "Diamond.fcat", "V.fcat", "Lambda.fcat", "Z2.fcat"]
    for name in ("extensivity", "topologicity", "lattice", "strict-initial", "adjunctions",
                 "descent-classify", "lu-pullback", "l-pullback-zero")
]


@criterion(9, "determinism")
def test_cli_determinism(tmp_path):
    _cli_inputs(tmp_path)
    settings = [[], ["--jobs", "4", "--shuffle-seed", "13"]]
    for argv in CLI_RUNS:
        outs = []
        for extra in settings:
            p = subprocess.run([sys.executable, "-m", "laxcat", *extra, *argv], cwd=tmp_path,
                               capture_output=True)
            assert p.returncode in (0, 1, 2), p.stderr.decode()
            outs.append((p.returncode, p.stdout))
        assert outs[0] == outs[1], argv
        assert outs[0][1]
    return f"{len(CLI_RUNS)} commands byte-identical across settings"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
