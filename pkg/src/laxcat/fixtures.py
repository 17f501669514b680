"""Standard small categories and seeded random generators.

The random generators feed the property tests and the acceptance suite;
every generator takes an explicit ``random.Random`` so runs are
reproducible.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product as cartesian

from .fincat import (
    FinCategory,
    Functor,
    build_category,
    coproduct_category,
    enumerate_functors,
    free_category,
    thin_category,
)


def _closure(elements, pairs):
    leq = {(e, e) for e in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for c, d in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return leq


def poset(name: str, elements, covers) -> FinCategory:
    return thin_category(name, elements, _closure(list(elements), covers))


@lru_cache(maxsize=None)
def one() -> FinCategory:
    """Terminal category: object ``pt``."""
    return thin_category("One", ["pt"], [("pt", "pt")])


@lru_cache(maxsize=None)
def empty() -> FinCategory:
    return thin_category("Empty", [], [])


@lru_cache(maxsize=None)
def arrow() -> FinCategory:
    """Walking arrow: ``s -> t`` (morphism ``s<=t``)."""
    return poset("Two", ["s", "t"], [("s", "t")])


@lru_cache(maxsize=None)
def two_points() -> FinCategory:
    """Discrete category on two objects (``One+One``)."""
    return coproduct_category(one(), one())


@lru_cache(maxsize=None)
def span() -> FinCategory:
    """``l <- c -> r``."""
    return poset("Span", ["c", "l", "r"], [("c", "l"), ("c", "r")])


@lru_cache(maxsize=None)
def parallel_pair() -> FinCategory:
    """Two objects with two distinct parallel arrows ``u, v: a -> b``."""
    return free_category("Par", ["a", "b"], [("u", "a", "b"), ("v", "a", "b")])


@lru_cache(maxsize=None)
def x2() -> FinCategory:
    return poset("X2", ["0", "1"], [("0", "1")])


@lru_cache(maxsize=None)
def x3() -> FinCategory:
    return poset("X3", ["0", "m", "1"], [("0", "m"), ("m", "1")])


@lru_cache(maxsize=None)
def v_poset() -> FinCategory:
    """Two incomparable points ``p, q``."""
    return poset("V", ["p", "q"], [])


@lru_cache(maxsize=None)
def diamond() -> FinCategory:
    """Four-element lattice ``0 < a, b < 1``."""
    return poset("Diamond", ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@lru_cache(maxsize=None)
def wedge_top() -> FinCategory:
    """``p, q < 1`` with no meet of ``p`` and ``q``."""
    return poset("Lambda", ["p", "q", "1"], [("p", "1"), ("q", "1")])


@lru_cache(maxsize=None)
def cyclic_group(n: int = 2) -> FinCategory:
    """One object, morphisms ``g0..g(n-1)`` composing as ``Z/n``."""
    mlist = [(f"g{k}" if k else "id_star", 0, 0) for k in range(n)]
    return build_category(f"Z{n}", ["star"], mlist, [0], lambda g, f: (g + f) % n)


@lru_cache(maxsize=None)
def idempotent() -> FinCategory:
    """One object with a non-identity idempotent ``e`` (``e o e = e``)."""
    return build_category("Idem", ["star"], [("id_star", 0, 0), ("e", 0, 0)], [0], lambda g, f: max(g, f))


@lru_cache(maxsize=None)
def zero_with_endo() -> FinCategory:
    """A zero object ``z`` that is not strict.

    ``z`` is a retract of ``y`` via ``i: z -> y``, ``t: y -> z`` with
    ``t o i = id_z`` and ``i o t = e``, a non-identity idempotent.  ``z`` is
    initial and terminal, yet ``t`` into it is not invertible.
    """
    names = ["id_z", "i", "t", "id_y", "e"]
    ends = {"id_z": (0, 0), "i": (0, 1), "t": (1, 0), "id_y": (1, 1), "e": (1, 1)}
    table = {
        ("t", "i"): "id_z", ("i", "t"): "e", ("e", "i"): "i", ("t", "e"): "t", ("e", "e"): "e",
    }
    idx = {n: k for k, n in enumerate(names)}

    def compose(g, f):
        gn, fn = names[g], names[f]
        if gn.startswith("id_"):
            return f
        if fn.startswith("id_"):
            return g
        return idx[table[(gn, fn)]]

    return build_category(
        "ZeroEndo", ["z", "y"], [(n, *ends[n]) for n in names], [0, 3], compose
    )


@lru_cache(maxsize=None)
def fork() -> FinCategory:
    """``k: e -> a`` equalizing the distinct pair ``u, v: a -> b``; ``w = u o k = v o k``."""
    names = ["id_e", "id_a", "id_b", "k", "u", "v", "w"]
    ends = {"id_e": (0, 0), "id_a": (1, 1), "id_b": (2, 2), "k": (0, 1), "u": (1, 2), "v": (1, 2), "w": (0, 2)}

    def compose(g, f):
        if names[g].startswith("id_"):
            return f
        if names[f].startswith("id_"):
            return g
        return names.index("w")

    return build_category("Fork", ["e", "a", "b"], [(n, *ends[n]) for n in names], [0, 1, 2], compose)


def structures(W: FinCategory, X: FinCategory) -> list[Functor]:
    return enumerate_functors(W, X)


def small_bases() -> list[FinCategory]:
    return [empty(), one(), arrow(), two_points(), span()]


# -- random presentations ---------------------------------------------------------


def random_poset(rng: random.Random, name: str, n: int | None = None) -> FinCategory:
    n = n if n is not None else rng.randint(1, 4)
    elems = [f"e{i}" for i in range(n)]
    covers = [(elems[i], elems[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
    return poset(name, elems, covers)


def random_dag(rng: random.Random, name: str, max_morphisms: int = 12) -> FinCategory:
    while True:
        n = rng.randint(1, 4)
        objs = [f"v{i}" for i in range(n)]
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                for _ in range(rng.choice([0, 0, 1, 1, 2])):
                    edges.append((f"a{len(edges)}", objs[i], objs[j]))
        try:
            c = free_category(name, objs, edges)
        except Exception:
            continue
        if c.n_mor <= max_morphisms:
            return c


def random_monoid(rng: random.Random, name: str, max_size: int = 8) -> FinCategory:
    """Transformation monoid on a small set, generated by 1-2 random maps."""
    while True:
        k = rng.randint(2, 3)
        gens = [tuple(rng.randrange(k) for _ in range(k)) for _ in range(rng.randint(1, 2))]
        ident = tuple(range(k))
        elems = [ident]
        frontier = [ident]
        while frontier and len(elems) <= max_size:
            nxt = []
            for e in frontier:
                for g in gens:
                    ge = tuple(g[e[i]] for i in range(k))
                    if ge not in elems:
                        elems.append(ge)
                        nxt.append(ge)
            frontier = nxt
        if len(elems) <= max_size:
            break
    idx = {e: i for i, e in enumerate(elems)}
    names = ["id_star"] + ["t" + "".join(map(str, e)) for e in elems[1:]]

    def compose(g, f):
        eg, ef = elems[g], elems[f]
        return idx[tuple(eg[ef[i]] for i in range(k))]

    return build_category(name, ["star"], [(nm, 0, 0) for nm in names], [0], compose)


def random_category(rng: random.Random, name: str) -> FinCategory:
    kind = rng.choice(["poset", "dag", "monoid", "sum"])
    if kind == "poset":
        return random_poset(rng, name)
    if kind == "dag":
        return random_dag(rng, name)
    if kind == "monoid":
        return random_monoid(rng, name)
    a = random_poset(rng, "A", rng.randint(1, 2))
    b = random_monoid(rng, "B", 4)
    c = coproduct_category(a, b)
    return FinCategory(name, c.objects, c.morphisms, c.dom, c.cod, c.ids, c.comp)


def random_functor(rng: random.Random, W: FinCategory, X: FinCategory) -> Functor | None:
    fs = enumerate_functors(W, X)
    return rng.choice(fs) if fs else None


def all_pairs(xs):
    return list(cartesian(xs, xs))

