import random
from array import array

import pytest
from hypothesis import given, strategies as st

from laxcat import _kernels_py, fixtures as fx, kernels
from laxcat.fincat import enumerate_functors

pytestmark = pytest.mark.skipif("cython" not in kernels.available_backends(), reason="compiled kernels not built")

LIMIT = 100_000


def c_impl():
    from laxcat import _kernels_c

    return _kernels_c


def functors(impl, W, Y):
    kw, ky = W.kview(), Y.kview()
    return list(impl.functor_search(
        W.n_obj, kw["dom"], kw["cod"], kw["ids"], kw["comp"],
        Y.n_obj, Y.n_mor, ky["ids"], ky["comp"], ky["hom_start"], ky["hom_len"], ky["hom_items"], LIMIT,
    ))


def nats(impl, F, G):
    W, Y = F.source, F.target
    kw, ky = W.kview(), Y.kview()
    return list(impl.nat_trans_search(
        W.n_obj, kw["dom"], kw["cod"], kw["nonid"],
        array("i", F.omap), array("i", F.mmap), array("i", G.omap), array("i", G.mmap),
        Y.n_obj, Y.n_mor, ky["comp"], ky["hom_start"], ky["hom_len"], ky["hom_items"], LIMIT,
    ))


def test_switching_backends():
    before = kernels.BACKEND
    try:
        kernels.use_backend("python")
        assert kernels.BACKEND == "python"
        kernels.use_backend("cython")
        assert kernels.BACKEND == "cython"
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")
    finally:
        kernels.use_backend(before)


@given(st.integers(0, 10_000))
def test_functor_search_agrees(seed):
    rng = random.Random(seed)
    W, Y = fx.random_category(rng, "W"), fx.random_category(rng, "Y")
    assert functors(_kernels_py, W, Y) == functors(c_impl(), W, Y)


@given(st.integers(0, 10_000))
def test_nat_trans_search_agrees(seed):
    rng = random.Random(seed)
    W, Y = fx.random_category(rng, "W"), fx.random_category(rng, "Y")
    fs = enumerate_functors(W, Y)[:6]
    for F in fs:
        for G in fs:
            assert nats(_kernels_py, F, G) == nats(c_impl(), F, G)


@given(st.integers(0, 10_000))
def test_associativity_scan_agrees(seed):
    rng = random.Random(seed)
    c = fx.random_category(rng, "C")
    comp = array("i", c.kview()["comp"])
    assert _kernels_py.associativity_violation(comp, c.n_mor) is None
    assert c_impl().associativity_violation(comp, c.n_mor) is None
    nonid = [i for i, v in enumerate(comp) if v >= 0]
    k = rng.choice(nonid)
    comp[k] = rng.randrange(c.n_mor)
    assert _kernels_py.associativity_violation(comp, c.n_mor) == c_impl().associativity_violation(comp, c.n_mor)


def test_limit_marker_agrees():
    W, Y = fx.two_points(), fx.cyclic_group(3)
    kw, ky = W.kview(), Y.kview()
    args = (W.n_obj, kw["dom"], kw["cod"], kw["ids"], kw["comp"],
            Y.n_obj, Y.n_mor, ky["ids"], ky["comp"], ky["hom_start"], ky["hom_len"], ky["hom_items"], 0)
    assert list(_kernels_py.functor_search(*args)) == list(c_impl().functor_search(*args))
