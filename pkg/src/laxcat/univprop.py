"""Brute-force universal properties in finite categories.

Everything here works on any *category-like* value: an object exposing
``n_obj``, ``objects`` (names), ``hom(x, y)``, ``compose(g, f)`` and
``identity(x)``, plus ``ends(m)`` when domains must be recovered from a
morphism.  :class:`~laxcat.fincat.FinCategory` qualifies, and so do the
finite windows into the lax comma category.

A limit is decided by its definition: a cone is limiting when, for every
object ``x``, composing with the legs is a bijection from ``hom(x, apex)``
onto the cones with apex ``x``.  Searches return the canonically least
witness (smallest apex index, then first cone in enumeration order), or
``None`` when there is none.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .config import candidate_order, shuffle_seed
from .errors import MissingExponential, MissingLimit, MissingProducts, NotACone
from .fincat import (
    FinCategory,
    Functor,
    free_category,
    is_skeletal,
    is_thin,
    iso_between,
    is_iso,
    opposite,
    product_category,
    thin_category,
)


def ends(C, m) -> tuple[int, int]:
    if isinstance(C, FinCategory):
        return C.dom[m], C.cod[m]
    return C.ends(m)


# -- shapes ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def discrete(n: int) -> FinCategory:
    return thin_category(f"Disc{n}", [str(i) for i in range(n)], [(str(i), str(i)) for i in range(n)])


@lru_cache(maxsize=None)
def parallel_shape() -> FinCategory:
    """``u, v: a -> b``."""
    return free_category("Par", ["a", "b"], [("u", "a", "b"), ("v", "a", "b")])


@lru_cache(maxsize=None)
def cospan_shape() -> FinCategory:
    """``l -> c <- r``."""
    return thin_category("Cospan", ["l", "r", "c"], [("l", "l"), ("r", "r"), ("c", "c"), ("l", "c"), ("r", "c")])


@lru_cache(maxsize=None)
def span_shape() -> FinCategory:
    """``l <- c -> r``."""
    return thin_category("Span", ["c", "l", "r"], [("c", "c"), ("l", "l"), ("r", "r"), ("c", "l"), ("c", "r")])


# -- diagrams and cones --------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    """A functor from a finite shape into a category-like target."""

    shape: FinCategory
    target: Any
    omap: tuple
    mmap: tuple

    @classmethod
    def of(cls, F: Functor) -> "Diagram":
        return cls(F.source, F.target, F.omap, F.mmap)

    def opposite(self) -> "Diagram":
        return Diagram(opposite(self.shape), _Op(self.target), self.omap, self.mmap)


@dataclass(frozen=True)
class Cone:
    apex: int
    legs: tuple


@dataclass(frozen=True)
class Cocone:
    apex: int
    legs: tuple


class _Op:
    """Opposite of a category-like value (same objects, reversed homs)."""

    def __init__(self, c):
        self.c = c
        self.objects = c.objects
        self.n_obj = c.n_obj

    def hom(self, x, y):
        return self.c.hom(y, x)

    def compose(self, g, f):
        return self.c.compose(f, g)

    def identity(self, x):
        return self.c.identity(x)

    def ends(self, m):
        d, c = ends(self.c, m)
        return c, d


def _constraints(d: Diagram, reverse: bool):
    """Per shape object ``k``: the non-identity shape morphisms whose later end is ``k``."""
    S = d.shape
    out: list[list[tuple[int, int, int]]] = [[] for _ in range(S.n_obj)]
    for u in S.nonidentities():
        j, k = S.dom[u], S.cod[u]
        out[max(j, k)].append((u, j, k))
    return out


def _legs_search(d: Diagram, x: int, co: bool, first_only: bool = False) -> list[tuple]:
    C, S = d.target, d.shape
    n = S.n_obj
    cons = _constraints(d, co)
    cand = [C.hom(d.omap[j], x) if co else C.hom(x, d.omap[j]) for j in range(n)]
    out: list[tuple] = []
    legs: list = [None] * n

    def ok(k):
        for u, j, kk in cons[k]:
            if co:
                # leg_j = leg_k o D(u)
                if C.compose(legs[kk], d.mmap[u]) != legs[j]:
                    return False
            elif C.compose(d.mmap[u], legs[j]) != legs[kk]:
                return False
        return True

    def rec(k):
        if k == n:
            out.append(tuple(legs))
            return first_only
        for m in cand[k]:
            legs[k] = m
            if ok(k) and rec(k + 1):
                return True
        return False

    rec(0)
    return out


def cones(d: Diagram, x: int) -> list[tuple]:
    """Every cone over ``d`` with apex ``x``, as leg tuples."""
    return _legs_search(d, x, co=False)


def cocones(d: Diagram, x: int) -> list[tuple]:
    return _legs_search(d, x, co=True)


def is_cone(d: Diagram, c: Cone) -> bool:
    C, S = d.target, d.shape
    if len(c.legs) != S.n_obj:
        return False
    for j, leg in enumerate(c.legs):
        if leg not in C.hom(c.apex, d.omap[j]):
            return False
    return all(C.compose(d.mmap[u], c.legs[S.dom[u]]) == c.legs[S.cod[u]] for u in range(S.n_mor))


def is_cocone(d: Diagram, c: Cocone) -> bool:
    C, S = d.target, d.shape
    if len(c.legs) != S.n_obj:
        return False
    for j, leg in enumerate(c.legs):
        if leg not in C.hom(d.omap[j], c.apex):
            return False
    return all(C.compose(c.legs[S.cod[u]], d.mmap[u]) == c.legs[S.dom[u]] for u in range(S.n_mor))


def _universal(d: Diagram, apex: int, legs: tuple, co: bool, counts=None) -> bool:
    C = d.target
    for x in range(C.n_obj):
        maps = C.hom(apex, x) if co else C.hom(x, apex)
        if counts is not None and len(maps) != counts[x]:
            return False
        if co:
            induced = [tuple(C.compose(m, leg) for leg in legs) for m in maps]
        else:
            induced = [tuple(C.compose(leg, m) for leg in legs) for m in maps]
        if len(set(induced)) != len(induced):
            return False
        found = set(cocones(d, x) if co else cones(d, x))
        if set(induced) != found:
            return False
    return True


def is_limit(d: Diagram, c: Cone) -> bool:
    """True iff every cone factors through ``c`` by exactly one morphism."""
    if not is_cone(d, c):
        raise NotACone(f"legs at {d.target.objects[c.apex]} do not form a cone")
    return _universal(d, c.apex, c.legs, co=False)


def is_colimit(d: Diagram, c: Cocone) -> bool:
    if not is_cocone(d, c):
        raise NotACone(f"legs at {d.target.objects[c.apex]} do not form a cocone")
    return _universal(d, c.apex, c.legs, co=True)


def _find(d: Diagram, co: bool):
    C = d.target
    counts = [len(cocones(d, x) if co else cones(d, x)) for x in range(C.n_obj)]
    best = None
    shuffled = shuffle_seed() is not None
    for apex in candidate_order(range(C.n_obj), "apex"):
        if best is not None and apex > best[0]:
            continue
        # a limit apex has exactly as many maps in as there are cones
        if any(len(C.hom(apex, x) if co else C.hom(x, apex)) != counts[x] for x in range(C.n_obj)):
            continue
        cands = cocones(d, apex) if co else cones(d, apex)
        for k in candidate_order(range(len(cands)), f"legs{apex}"):
            if best is not None and (apex, k) >= best[:2]:
                continue
            if _universal(d, apex, cands[k], co, counts):
                best = (apex, k, cands[k])
                if not shuffled:
                    break
        if best is not None and not shuffled:
            break
    if best is None:
        return None
    return (Cocone if co else Cone)(best[0], best[2])


def find_limit(d: Diagram) -> Cone | None:
    """Canonically least limiting cone, or ``None``."""
    return _find(d, co=False)


def find_colimit(d: Diagram) -> Cocone | None:
    return _find(d, co=True)


def mediator(d: Diagram, limit: Cone, x: int, legs) -> Any:
    """The unique ``m: x -> apex`` with ``limit.legs[j] o m = legs[j]``."""
    C = d.target
    legs = tuple(legs)
    for m in C.hom(x, limit.apex):
        if all(C.compose(l, m) == g for l, g in zip(limit.legs, legs)):
            return m
    raise MissingLimit("no mediating morphism (not a cone or not a limit)")


def comediator(d: Diagram, colimit: Cocone, x: int, legs) -> Any:
    C = d.target
    legs = tuple(legs)
    for m in C.hom(colimit.apex, x):
        if all(C.compose(m, l) == g for l, g in zip(colimit.legs, legs)):
            return m
    raise MissingLimit("no mediating morphism out of the colimit")


# -- common shapes in a category ---------------------------------------------------------


def discrete_diagram(C, xs) -> Diagram:
    xs = tuple(xs)
    S = discrete(len(xs))
    return Diagram(S, C, xs, tuple(C.identity(x) for x in xs))


def parallel_diagram(C, f, g) -> Diagram:
    (x, y), (x2, y2) = ends(C, f), ends(C, g)
    if (x, y) != (x2, y2):
        raise NotACone("parallel pair with different ends")
    S = parallel_shape()
    mm = [None] * S.n_mor
    mm[S.ids[0]], mm[S.ids[1]] = C.identity(x), C.identity(y)
    mm[S.mor("u")], mm[S.mor("v")] = f, g
    return Diagram(S, C, (x, y), tuple(mm))


def cospan_diagram(C, f, g) -> Diagram:
    """``f: x -> z <- y: g``."""
    (x, z), (y, z2) = ends(C, f), ends(C, g)
    if z != z2:
        raise NotACone("cospan legs with different codomains")
    S = cospan_shape()
    mm = [None] * S.n_mor
    for o, obj in zip(range(3), (x, y, z)):
        mm[S.ids[o]] = C.identity(obj)
    mm[S.mor("l<=c")], mm[S.mor("r<=c")] = f, g
    return Diagram(S, C, (x, y, z), tuple(mm))


def span_diagram(C, f, g) -> Diagram:
    """``f: z -> x``, ``g: z -> y``."""
    (z, x), (z2, y) = ends(C, f), ends(C, g)
    if z != z2:
        raise NotACone("span legs with different domains")
    S = span_shape()
    mm = [None] * S.n_mor
    for o, obj in zip(range(3), (z, x, y)):
        mm[S.ids[o]] = C.identity(obj)
    mm[S.mor("c<=l")], mm[S.mor("c<=r")] = f, g
    return Diagram(S, C, (z, x, y), tuple(mm))


def find_terminal(C) -> int | None:
    c = find_limit(discrete_diagram(C, ()))
    return None if c is None else c.apex


def find_initial(C) -> int | None:
    c = find_colimit(discrete_diagram(C, ()))
    return None if c is None else c.apex


def find_product(C, xs) -> Cone | None:
    return find_limit(discrete_diagram(C, xs))


def find_coproduct(C, xs) -> Cocone | None:
    return find_colimit(discrete_diagram(C, xs))


def find_equalizer(C, f, g) -> Cone | None:
    return find_limit(parallel_diagram(C, f, g))


def find_coequalizer(C, f, g) -> Cocone | None:
    return find_colimit(parallel_diagram(C, f, g))


def find_pullback(C, f, g) -> Cone | None:
    """Legs ordered as the cospan objects: ``(to dom f, to dom g, to the corner)``."""
    return find_limit(cospan_diagram(C, f, g))


def find_pushout(C, f, g) -> Cocone | None:
    return find_colimit(span_diagram(C, f, g))


def iterated_product(C, xs) -> tuple[int, tuple]:
    """``((x0 x x1) x x2) ...`` with composite projections; the empty product is terminal."""
    xs = list(xs)
    if not xs:
        t = find_terminal(C)
        if t is None:
            raise MissingLimit("terminal object")
        return t, ()
    apex, legs = xs[0], [C.identity(xs[0])]
    for x in xs[1:]:
        cone = find_product(C, (apex, x))
        if cone is None:
            raise MissingProducts(f"product {C.objects[apex]} x {C.objects[x]}")
        legs = [C.compose(l, cone.legs[0]) for l in legs] + [cone.legs[1]]
        apex = cone.apex
    return apex, tuple(legs)


def tuple_into(C, apex: int, legs, x: int, comps) -> Any:
    """The unique ``m: x -> apex`` with ``legs[i] o m = comps[i]``."""
    for m in C.hom(x, apex):
        if all(C.compose(l, m) == c for l, c in zip(legs, comps)):
            return m
    raise MissingLimit("no mediating morphism into the product")


# -- exponentials --------------------------------------------------------------------


@dataclass(frozen=True)
class Exponential:
    obj: int
    ev: Any
    product: Cone  # the chosen product obj x base


def find_exponential(C, x: int, y: int) -> Exponential | None:
    """``x => y``: an object ``e`` with ``ev: e*x -> y`` such that every
    ``k: z*x -> y`` is ``ev o (h*x)`` for exactly one ``h: z -> e``."""
    prods = []
    for z in range(C.n_obj):
        p = find_product(C, (z, x))
        if p is None:
            raise MissingProducts(f"product {C.objects[z]} x {C.objects[x]}")
        prods.append(p)

    def times_x(h, z, e):
        pz, pe = prods[z], prods[e]
        return tuple_into(C, pe.apex, pe.legs, pz.apex, (C.compose(h, pz.legs[0]), pz.legs[1]))

    best = None
    shuffled = shuffle_seed() is not None
    for e in candidate_order(range(C.n_obj), "exp"):
        if best is not None and e > best[0]:
            continue
        evs = C.hom(prods[e].apex, y)
        for k in candidate_order(range(len(evs)), f"ev{e}"):
            if best is not None and (e, k) >= best[:2]:
                continue
            ev = evs[k]
            good = True
            for z in range(C.n_obj):
                curried = [C.compose(ev, times_x(h, z, e)) for h in C.hom(z, e)]
                target = C.hom(prods[z].apex, y)
                if len(set(curried)) != len(curried) or set(curried) != set(target):
                    good = False
                    break
            if good:
                best = (e, k, ev)
                if not shuffled:
                    break
        if best is not None and not shuffled:
            break
    if best is None:
        return None
    return Exponential(best[0], best[2], prods[best[0]])


def exponential(C, x: int, y: int) -> Exponential:
    e = find_exponential(C, x, y)
    if e is None:
        raise MissingExponential(C.objects[x], C.objects[y])
    return e


# -- order-theoretic checks --------------------------------------------------------------


def strict_initial_check(c: FinCategory) -> bool:
    """An initial object exists and every morphism into it is invertible."""
    z = find_initial(c)
    if z is None:
        return False
    return all(is_iso(c, m) for m in range(c.n_mor) if c.cod[m] == z)


def complete_lattice_check(c: FinCategory) -> bool:
    """Thin, skeletal, with top, bottom and all binary meets and joins."""
    if c.n_obj == 0 or not is_thin(c) or not is_skeletal(c):
        return False
    if find_terminal(c) is None or find_initial(c) is None:
        return False
    for x in range(c.n_obj):
        for y in range(x + 1, c.n_obj):
            if find_product(c, (x, y)) is None or find_coproduct(c, (x, y)) is None:
                return False
    return True


def missing_meet(c: FinCategory) -> tuple[int, ...] | None:
    """A family (possibly empty) without a greatest lower bound, or ``None``."""
    if find_terminal(c) is None:
        return ()
    for x in range(c.n_obj):
        for y in range(x + 1, c.n_obj):
            if find_product(c, (x, y)) is None:
                return (x, y)
    return None


# -- ends ------------------------------------------------------------------------------


@dataclass(frozen=True)
class End:
    apex: int
    projections: tuple  # one per object w, apex -> T(w,w)
    equalizer: Cone | None = None


def _twisted_source(W: FinCategory) -> FinCategory:
    return product_category(opposite(W), W)


def end_of(T: Functor, W: FinCategory | None = None) -> End:
    """End of ``T: W^op x W -> C`` as the equalizer of ``t0, t1``.

    ``t0, t1: prod_w T(w,w) -> prod_{h: w -> y} T(w,y)`` have components
    ``T(w,h) o pi_w`` and ``T(h,y) o pi_y``.  Both products are iterated
    binary products in canonical index order.
    """
    C = T.target
    W = W if W is not None else _find_base(T.source)
    n, mW = W.n_obj, W.n_mor

    def Tob(w, y):
        return T.omap[w * n + y]

    def Tmor(f, g):  # (f^op, g)
        return T.mmap[f * mW + g]

    diag = [Tob(w, w) for w in range(n)]
    p0, legs0 = iterated_product(C, diag)
    index = [(w, y, h) for w in range(n) for y in range(n) for h in W.hom(w, y)]
    p1, legs1 = iterated_product(C, [Tob(w, y) for w, y, _ in index])
    c0 = [C.compose(Tmor(W.ids[w], h), legs0[w]) for w, y, h in index]
    c1 = [C.compose(Tmor(h, W.ids[y]), legs0[y]) for w, y, h in index]
    t0 = tuple_into(C, p1, legs1, p0, c0)
    t1 = tuple_into(C, p1, legs1, p0, c1)
    eq = find_equalizer(C, t0, t1)
    if eq is None:
        raise MissingLimit(f"equalizer for the end of {T.name}")
    e = eq.legs[0]
    return End(eq.apex, tuple(C.compose(l, e) for l in legs0), eq)


def _find_base(P: FinCategory) -> FinCategory:
    W = P._cache.get("twisted_base")
    if W is None:
        raise ValueError("end_of needs a functor whose source was built by twisted(W)")
    return W


@lru_cache(maxsize=None)
def twisted(W: FinCategory) -> FinCategory:
    """``W^op x W``, remembering ``W`` for :func:`end_of`."""
    P = _twisted_source(W)
    P._cache["twisted_base"] = W
    return P


def wedges(T: Functor, W: FinCategory, x: int) -> list[tuple]:
    """Every wedge ``x -> T(w,w)``: ``T(w,h) o om_w = T(h,y) o om_y`` for ``h: w -> y``."""
    C = T.target
    n, mW = W.n_obj, W.n_mor
    out: list[tuple] = []
    legs: list = [None] * n

    def ok(k):
        for h in range(mW):
            w, y = W.dom[h], W.cod[h]
            if max(w, y) != k:
                continue
            lhs = C.compose(T.mmap[W.ids[w] * mW + h], legs[w])
            rhs = C.compose(T.mmap[h * mW + W.ids[y]], legs[y])
            if lhs != rhs:
                return False
        return True

    def rec(k):
        if k == n:
            out.append(tuple(legs))
            return
        for m in C.hom(x, T.omap[k * n + k]):
            legs[k] = m
            if ok(k):
                rec(k + 1)

    rec(0)
    return out


def end_by_wedges(T: Functor, W: FinCategory) -> End | None:
    """Independent oracle: the canonically least universal wedge."""
    C = T.target
    all_w = [wedges(T, W, x) for x in range(C.n_obj)]
    for e in range(C.n_obj):
        if any(len(C.hom(x, e)) != len(all_w[x]) for x in range(C.n_obj)):
            continue
        for om in all_w[e]:
            good = True
            for x in range(C.n_obj):
                induced = [tuple(C.compose(l, m) for l in om) for m in C.hom(x, e)]
                if len(set(induced)) != len(induced) or set(induced) != set(all_w[x]):
                    good = False
                    break
            if good:
                return End(e, om)
    return None


def same_up_to_iso(C: FinCategory, a: End, b: End) -> bool:
    """Two ends agree when an iso between apexes carries one family to the other."""
    for m in C.hom(a.apex, b.apex):
        if is_iso(C, m) and all(C.compose(pb, m) == pa for pa, pb in zip(a.projections, b.projections)):
            return True
    return False


__all__ = [
    "Cocone", "Cone", "Diagram", "End", "Exponential", "cocones", "comediator", "complete_lattice_check",
    "cones", "cospan_diagram", "discrete", "discrete_diagram", "end_by_wedges", "end_of", "ends",
    "exponential", "find_coequalizer", "find_colimit", "find_coproduct", "find_equalizer",
    "find_exponential", "find_initial", "find_limit", "find_product", "find_pullback", "find_pushout",
    "find_terminal", "is_cocone", "is_colimit", "is_cone", "is_limit", "iso_between", "iterated_product",
    "mediator", "missing_meet", "parallel_diagram", "same_up_to_iso", "span_diagram",
    "strict_initial_check", "tuple_into", "twisted", "wedges",
]
