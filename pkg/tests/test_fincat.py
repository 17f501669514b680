import itertools

import pytest
from hypothesis import given, strategies as st

from laxcat import fixtures as fx
from laxcat.errors import (
    AssociativityViolation,
    IdentityLawViolation,
    NonTotalComposition,
    NotParallel,
    ObjectNotFound,
    SizeLimitExceeded,
)
from laxcat.config import using_bounds
from laxcat.fincat import (
    brute_force_functors,
    check_laws,
    comma_over,
    constant_functor,
    coproduct_category,
    count_functors,
    enumerate_functors,
    enumerate_nat_trans,
    evaluation_functor,
    find_isomorphism,
    functor_category,
    identity_functor,
    is_equivalence,
    is_essentially_surjective,
    is_faithful,
    is_full,
    is_fully_faithful,
    is_thin,
    opposite,
    product_category,
    raw_data,
    validate_category,
    vcomp,
    identity_nat,
)


def at(C, name):
    return constant_functor(fx.one(), C, C.obj(name))


# -- validate_category


def test_validate_one():
    c = validate_category(raw_data(fx.one()))
    assert (c.n_obj, c.n_mor) == (1, 1)


def test_validate_x2():
    c = validate_category(raw_data(fx.x2()))
    assert (c.n_obj, c.n_mor) == (2, 3)


def test_corrupted_identity_law():
    raw = raw_data(fx.x2())
    raw["compose"][("id_1", "0<=1")] = "id_0"
    with pytest.raises(IdentityLawViolation):
        validate_category(raw)


def test_missing_composite_is_nontotal():
    raw = raw_data(fx.x3())
    del raw["compose"][("m<=1", "0<=m")]
    with pytest.raises(NonTotalComposition):
        validate_category(raw)


def test_associativity_violation_names_triple():
    raw = raw_data(fx.cyclic_group(3))
    raw["compose"][("g1", "g1")] = "g1"
    with pytest.raises(AssociativityViolation) as info:
        validate_category(raw)
    assert len(info.value.triple) == 3


def test_unknown_object():
    with pytest.raises(ObjectNotFound):
        validate_category({"objects": ["a"], "morphisms": [("id", "a", "b")], "identities": {"a": "id"}})


def test_size_guard():
    with using_bounds(max_objects=2):
        with pytest.raises(SizeLimitExceeded):
            validate_category(raw_data(fx.x3()))


# -- enumeration


@pytest.mark.parametrize("W, n", [(fx.one, 2), (fx.arrow, 3), (fx.empty, 1)])
def test_enumerate_functors_counts(W, n):
    assert len(enumerate_functors(W(), fx.x2())) == n


def test_enumerate_functors_canonical_order():
    fs = enumerate_functors(fx.arrow(), fx.x2())
    keys = [(F.omap, F.mmap) for F in fs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumerate_nat_trans():
    X = fx.x2()
    c0, c1 = at(X, "0"), at(X, "1")
    assert len(enumerate_nat_trans(c0, c0)) == 1
    (only,) = enumerate_nat_trans(c0, c1)
    assert X.morphisms[only.components[0]] == "0<=1"
    assert enumerate_nat_trans(c1, c0) == []


def test_enumerate_nat_trans_not_parallel():
    with pytest.raises(NotParallel):
        enumerate_nat_trans(at(fx.x2(), "0"), constant_functor(fx.arrow(), fx.x2(), 0))


# -- functor categories and products


def test_functor_category_over_one_is_target():
    fc = functor_category(fx.one(), fx.x2())
    assert find_isomorphism(fc.category, fx.x2()) is not None


def test_functor_category_arrow_x2():
    fc = functor_category(fx.arrow(), fx.x2())
    assert (fc.category.n_obj, fc.category.n_mor) == (3, 6)


def test_functor_category_empty_source():
    fc = functor_category(fx.empty(), fx.x2())
    assert find_isomorphism(fc.category, fx.one()) is not None


def test_product_with_one():
    assert find_isomorphism(product_category(fx.one(), fx.arrow()), fx.arrow()) is not None


def test_coproduct_two_two():
    c = coproduct_category(fx.arrow(), fx.arrow())
    assert (c.n_obj, c.n_mor) == (4, 6)


def test_opposite_reverses_chain():
    op = opposite(fx.x2())
    assert is_thin(op)
    assert op.hom(op.obj("1"), op.obj("0"))
    assert not op.hom(op.obj("0"), op.obj("1"))


# -- comma categories


def test_comma_identity_on_one():
    C, _ = comma_over(identity_functor(fx.one()), 0)
    assert (C.n_obj, C.n_mor) == (1, 1)


def test_comma_point_into_x2():
    X = fx.x2()
    C, P = comma_over(at(X, "0"), X.obj("1"))
    assert C.n_obj == 1 and P.target == fx.one()


def test_comma_identity_on_arrow_at_t():
    A = fx.arrow()
    C, _ = comma_over(identity_functor(A), A.obj("t"))
    # objects (s, s<=t) and (t, id_t); one non-identity triangle between them
    assert (C.n_obj, C.n_mor) == (2, 3)


def test_comma_unknown_object():
    with pytest.raises(ObjectNotFound):
        comma_over(identity_functor(fx.one()), 5)


# -- functor properties


def test_identity_is_equivalence():
    assert is_equivalence(identity_functor(fx.x3()))


def test_constant_collapsing_parallel_arrows():
    # Z2 has parallel distinct arrows and every hom-set inhabited
    F = constant_functor(fx.cyclic_group(2), fx.one(), 0)
    assert is_full(F) and not is_faithful(F)
    # in Par the hom-set b -> a is empty, so the constant functor is not full
    G = constant_functor(fx.parallel_pair(), fx.one(), 0)
    assert not is_full(G) and not is_faithful(G)


def test_constant_from_arrow_faithful_not_equivalence():
    F = constant_functor(fx.arrow(), fx.one(), 0)
    assert is_faithful(F) and not is_equivalence(F)


def test_inclusion_of_bottom():
    F = at(fx.x2(), "0")
    assert is_fully_faithful(F) and not is_essentially_surjective(F)


# -- properties


small = st.sampled_from([fx.empty, fx.one, fx.arrow, fx.two_points, fx.span, fx.parallel_pair, fx.x3, fx.v_poset])
targets = st.sampled_from([fx.x2, fx.x3, fx.v_poset, fx.idempotent, fx.parallel_pair, fx.arrow])


@given(small, targets)
def test_enumeration_matches_brute_force(W, Y):
    W, Y = W(), Y()
    if W.n_obj > 3 or Y.n_obj > 3:
        return
    fast = [(F.omap, F.mmap) for F in enumerate_functors(W, Y)]
    slow = sorted(brute_force_functors(W, Y))
    assert sorted(map(lambda t: (tuple(t[0]), tuple(t[1])), slow)) == sorted(fast)
    assert count_functors(W, Y) == len(fast)


@given(st.integers(0, 10_000))
def test_random_categories_satisfy_laws(seed):
    import random

    c = fx.random_category(random.Random(seed), "R")
    assert check_laws(c) is c


@given(targets)
def test_functor_category_over_one_via_evaluation(Y):
    Y = Y()
    fc = functor_category(fx.one(), Y)
    ev = evaluation_functor(fx.one(), Y, 0)
    assert ev.source == fc.category
    assert is_equivalence(ev)
    assert find_isomorphism(fc.category, Y) is not None


@given(small, st.sampled_from([fx.x2, fx.x3, fx.arrow]))
def test_functor_category_composition_associative_unital(W, Y):
    fc = functor_category(W(), Y()).category
    for f in range(fc.n_mor):
        assert fc.compose(fc.ids[fc.cod[f]], f) == f == fc.compose(f, fc.ids[fc.dom[f]])
    for h, g, f in itertools.product(range(fc.n_mor), repeat=3):
        if fc.dom[h] == fc.cod[g] and fc.dom[g] == fc.cod[f]:
            assert fc.compose(h, fc.compose(g, f)) == fc.compose(fc.compose(h, g), f)


def test_vcomp_identity():
    F = at(fx.x3(), "m")
    i = identity_nat(F)
    assert vcomp(i, i) == i
