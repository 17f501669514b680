"""Descent in finite categories and instance checks for ``L`` and ``U``.

For a morphism ``q: u -> v`` of a finite category with the needed
pullbacks, the change-of-base functor ``q*`` is built from canonical
pullbacks, the monad ``q* Sigma_q`` is computed on the slice over ``u``,
and the Eilenberg-Moore comparison decides the grade.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import univprop
from .config import bounds
from .errors import (
    MissingPullbacks,
    NotAPullbackSquare,
    NotFullyFaithful,
    ObjectNotFound,
    SizeLimitExceeded,
    StrictInitialMissing,
)
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    build_category,
    check_functor,
    is_equivalence,
    is_faithful,
    is_fully_faithful,
    iso_between,
)
from .laxcomma import (
    L,
    LaxMorphism,
    LaxObject,
    Workspace,
    compose_lax,
    enumerate_lax_hom,
    identity_lax,
    iota,
)
from .laxstruct import cat_pullback, pullback_laxcomma


# -- slices -------------------------------------------------------------------------------


@dataclass(frozen=True)
class SliceCategory:
    """``C / v``: objects are morphisms into ``v``, morphisms commuting triangles."""

    category: FinCategory
    base: FinCategory
    target: int
    carriers: tuple  # slice object -> morphism of the base into v
    maps: tuple  # slice morphism -> underlying morphism of the base

    def object_of(self, m: int) -> int:
        return self.carriers.index(m)

    def morphism_of(self, h: int, src: int, tgt: int) -> int:
        """The slice morphism ``src -> tgt`` with underlying ``h``."""
        C = self.category
        for k in C.hom(src, tgt):
            if self.maps[k] == h:
                return k
        raise ObjectNotFound(f"{self.base.morphisms[h]} is not a triangle")


def slice(C: FinCategory, v) -> SliceCategory:
    v = C.obj(v) if isinstance(v, str) else v
    if not 0 <= v < C.n_obj:
        raise ObjectNotFound(str(v))
    carriers = [m for m in range(C.n_mor) if C.cod[m] == v]
    pos = {m: k for k, m in enumerate(carriers)}
    triangles = []
    for s in carriers:
        for t in carriers:
            for h in C.hom(C.dom[s], C.dom[t]):
                if C.compose(t, h) == s:
                    triangles.append((h, pos[s], pos[t]))
    triangles.sort(key=lambda x: (not C.is_identity(x[0]), x[1], x[2], x[0]))
    tpos = {tri: k for k, tri in enumerate(triangles)}
    names = [C.morphisms[m] for m in carriers]
    mors = [
        (f"id_{names[s]}" if C.is_identity(h) else f"({C.morphisms[h]},{names[s]})", s, t)
        for h, s, t in triangles
    ]
    S = build_category(
        f"{C.name}/{C.objects[v]}",
        names,
        mors,
        [tpos[(C.ids[C.dom[m]], k, k)] for k, m in enumerate(carriers)],
        lambda g, f: tpos[(C.compose(triangles[g][0], triangles[f][0]), triangles[f][1], triangles[g][2])],
    )
    return SliceCategory(S, C, v, tuple(carriers), tuple(h for h, _, _ in triangles))


# -- change of base -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ChangeOfBase:
    q: int
    over_v: SliceCategory
    over_u: SliceCategory
    functor: Functor  # q*: C/v -> C/u
    cones: tuple  # per object of C/v, the chosen pullback cone (to x, to u, to v)


def _pullback_cone(C: FinCategory, m: int, q: int):
    cone = univprop.find_pullback(C, m, q)
    if cone is None:
        raise MissingPullbacks(f"pullback of {C.morphisms[m]} along {C.morphisms[q]}")
    return cone


def change_of_base(C: FinCategory, q) -> ChangeOfBase:
    q = C.mor(q) if isinstance(q, str) else q
    u, v = C.dom[q], C.cod[q]
    Sv, Su = slice(C, v), slice(C, u)
    cones = [_pullback_cone(C, m, q) for m in Sv.carriers]
    diags = [univprop.cospan_diagram(C, m, q) for m in Sv.carriers]
    omap = [Su.object_of(c.legs[1]) for c in cones]
    mmap = []
    for k in range(Sv.category.n_mor):
        s, t = Sv.category.dom[k], Sv.category.cod[k]
        h = Sv.maps[k]
        src = cones[s]
        legs = (C.compose(h, src.legs[0]), src.legs[1], src.legs[2])
        med = univprop.mediator(diags[t], cones[t], src.apex, legs)
        mmap.append(Su.morphism_of(med, omap[s], omap[t]))
    F = check_functor(Functor(Sv.category, Su.category, omap, mmap, f"{C.morphisms[q]}*"))
    return ChangeOfBase(q, Sv, Su, F, tuple(cones))


def sigma(C: FinCategory, q: int) -> Functor:
    """``Sigma_q: C/u -> C/v``, postcomposition with ``q``."""
    u, v = C.dom[q], C.cod[q]
    Su, Sv = slice(C, u), slice(C, v)
    omap = [Sv.object_of(C.compose(q, m)) for m in Su.carriers]
    S = Su.category
    mmap = [Sv.morphism_of(Su.maps[k], omap[S.dom[k]], omap[S.cod[k]]) for k in range(S.n_mor)]
    return check_functor(Functor(Su.category, Sv.category, omap, mmap, f"Sigma_{C.morphisms[q]}"))


# -- the monad ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class DescentMonad:
    cb: ChangeOfBase
    sigma: Functor
    T: Functor
    unit: tuple  # per object c of C/u: c -> T c
    mult: tuple  # per object c: T T c -> T c
    counit: tuple  # per object n of C/v: Sigma q* n -> n


def descent_monad(C: FinCategory, q) -> DescentMonad:
    q = C.mor(q) if isinstance(q, str) else q
    cb = change_of_base(C, q)
    Sg = sigma(C, q)
    qs = cb.functor
    Su, Sv = cb.over_u, cb.over_v
    T = Functor(Su.category, Su.category,
                [qs.omap[o] for o in Sg.omap], [qs.mmap[m] for m in Sg.mmap], "T")
    check_functor(T)
    unit = []
    for c in range(Su.category.n_obj):
        m = Su.carriers[c]
        n = Sg.omap[c]
        diag = univprop.cospan_diagram(C, Sv.carriers[n], q)
        x = C.dom[m]
        med = univprop.mediator(diag, cb.cones[n], x, (C.ids[x], m, C.compose(q, m)))
        unit.append(Su.morphism_of(med, c, T.omap[c]))
    counit = []
    for n in range(Sv.category.n_obj):
        pb = cb.cones[n]
        counit.append(Sv.morphism_of(pb.legs[0], Sg.omap[qs.omap[n]], n))
    mult = tuple(qs.mmap[counit[Sg.omap[c]]] for c in range(Su.category.n_obj))
    return DescentMonad(cb, Sg, T, tuple(unit), mult, tuple(counit))


def monad_law_violations(md: DescentMonad) -> list[str]:
    """Names of the failing monad laws at the first offending object."""
    S = md.cb.over_u.category
    T, eta, mu = md.T, md.unit, md.mult
    bad = []
    for c in range(S.n_obj):
        one = S.ids[T.omap[c]]
        if S.compose(mu[c], T.mmap[eta[c]]) != one:
            bad.append(f"left unit at {S.objects[c]}")
        if S.compose(mu[c], eta[T.omap[c]]) != one:
            bad.append(f"right unit at {S.objects[c]}")
        if S.compose(mu[c], T.mmap[mu[c]]) != S.compose(mu[c], mu[T.omap[c]]):
            bad.append(f"associativity at {S.objects[c]}")
    return bad


def check_monad(md: DescentMonad) -> bool:
    return not monad_law_violations(md)


# -- Eilenberg-Moore -----------------------------------------------------------------------------


@dataclass(frozen=True)
class EMAlgebra:
    carrier: int
    structure: int  # T(carrier) -> carrier


def em_algebras(md: DescentMonad) -> list[EMAlgebra]:
    S = md.cb.over_u.category
    T = md.T
    out = []
    for c in range(S.n_obj):
        for s in S.hom(T.omap[c], c):
            if S.compose(s, md.unit[c]) != S.ids[c]:
                continue
            if S.compose(s, T.mmap[s]) != S.compose(s, md.mult[c]):
                continue
            out.append(EMAlgebra(c, s))
            if len(out) > bounds().max_objects:
                raise SizeLimitExceeded(f"more than {bounds().max_objects} algebras")
    return out


def em_category(md: DescentMonad) -> tuple[FinCategory, list[EMAlgebra], list[int]]:
    """The category of algebras; returns it with the algebras and underlying maps."""
    S = md.cb.over_u.category
    T = md.T
    algs = em_algebras(md)
    mors = []
    for i, A in enumerate(algs):
        for j, B in enumerate(algs):
            for h in S.hom(A.carrier, B.carrier):
                if S.compose(B.structure, T.mmap[h]) == S.compose(h, A.structure):
                    mors.append((h, i, j))
    if len(mors) > bounds().max_morphisms:
        raise SizeLimitExceeded(f"algebra category has {len(mors)} morphisms")
    mors.sort(key=lambda x: (not S.is_identity(x[0]), x[1], x[2], x[0]))
    pos = {(h, i, j): k for k, (h, i, j) in enumerate(mors)}
    names = [f"({S.objects[A.carrier]},{S.morphisms[A.structure]})" for A in algs]

    def comp(g, f):
        hg, _, j = mors[g]
        hf, i, _ = mors[f]
        return pos[(S.compose(hg, hf), i, j)]

    E = build_category(
        "EM",
        names,
        [(f"id_{names[i]}" if S.is_identity(h) else f"{S.morphisms[h]}:{names[i]}", i, j) for h, i, j in mors],
        [pos[(S.ids[A.carrier], i, i)] for i, A in enumerate(algs)],
        comp,
    )
    return E, algs, [h for h, _, _ in mors]


def comparison(md: DescentMonad) -> Functor:
    """``K: C/v -> EM``: ``n`` goes to ``(q* n, q*(counit_n))``."""
    E, algs, under = em_category(md)
    qs = md.cb.functor
    Sv = md.cb.over_v.category
    apos = {(A.carrier, A.structure): k for k, A in enumerate(algs)}
    omap = [apos[(qs.omap[n], qs.mmap[md.counit[n]])] for n in range(Sv.n_obj)]
    mmap = []
    for k in range(Sv.n_mor):
        i, j = omap[Sv.dom[k]], omap[Sv.cod[k]]
        h = qs.mmap[k]
        mmap.append(next(e for e in range(E.n_mor) if E.dom[e] == i and E.cod[e] == j and under[e] == h))
    return check_functor(Functor(Sv, E, omap, mmap, "K"))


class Grade(enum.IntEnum):
    NOT_ALMOST = 0
    ALMOST = 1
    DESCENT = 2
    EFFECTIVE = 3

    @property
    def label(self) -> str:
        return ("not-almost", "almost-descent", "descent", "effective-descent")[self]


@dataclass(frozen=True)
class DescentClass:
    q: str
    grade: Grade
    faithful: bool
    fully_faithful: bool
    equivalence: bool
    comparison: Functor = field(compare=False, repr=False)

    def render(self) -> str:
        K = self.comparison
        return (
            f"{self.q}: {self.grade.label} "
            f"(faithful={self.faithful}, fully_faithful={self.fully_faithful}, "
            f"equivalence={self.equivalence}; slice {K.source.n_obj}/{K.source.n_mor}, "
            f"algebras {K.target.n_obj}/{K.target.n_mor})"
        )


def classify_descent(C: FinCategory, q) -> DescentClass:
    q = C.mor(q) if isinstance(q, str) else q
    K = comparison(descent_monad(C, q))
    fa = is_faithful(K)
    ff = fa and is_fully_faithful(K)
    eq = ff and is_equivalence(K)
    grade = Grade.EFFECTIVE if eq else Grade.DESCENT if ff else Grade.ALMOST if fa else Grade.NOT_ALMOST
    return DescentClass(C.morphisms[q], grade, fa, ff, eq, K)


def is_regular_epi(C: FinCategory, q) -> bool | None:
    """Is ``q`` the coequalizer of its kernel pair?  ``None`` without a kernel pair."""
    q = C.mor(q) if isinstance(q, str) else q
    kp = univprop.find_pullback(C, q, q)
    if kp is None:
        return None
    k1, k2 = kp.legs[0], kp.legs[1]
    d = univprop.parallel_diagram(C, k1, k2)
    return univprop.is_colimit(d, univprop.Cocone(C.cod[q], (C.compose(q, k1), q)))


def pullbacks_of(C: FinCategory, q: int) -> list[tuple[int, int]]:
    """``(g, q')`` for each ``g`` into the codomain of ``q`` with a pullback ``q' = g*(q)``."""
    out = []
    for g in range(C.n_mor):
        if C.cod[g] != C.cod[q]:
            continue
        cone = univprop.find_pullback(C, q, g)
        if cone is not None:
            out.append((g, cone.legs[1]))
    return out


# -- reflection along fully faithful functors ------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """A functor into a category-like ``target`` (a FinCategory or a window)."""

    source: FinCategory
    target: object
    omap: tuple
    mmap: tuple


def _check_fully_faithful(V) -> None:
    X, N = V.source, V.target
    for x in range(X.n_obj):
        for y in range(X.n_obj):
            image = [V.mmap[m] for m in X.hom(x, y)]
            if len(set(image)) != len(image) or set(image) != set(N.hom(V.omap[x], V.omap[y])):
                raise NotFullyFaithful(f"{X.objects[x]}, {X.objects[y]}")


def _isomorphic(N, i: int, j: int) -> bool:
    back = N.hom(j, i)
    for m in N.hom(i, j):
        for n in back:
            if N.compose(n, m) == N.identity(i) and N.compose(m, n) == N.identity(j):
                return True
    return False


def obstruction_check(V, q: int, square: univprop.Cone, p) -> bool:
    """Is the corner ``n`` of the pullback of ``V(q)`` along ``p: n -> V(b)`` in the image of ``V``?

    ``square`` is a cone over the cospan ``(V(q), p)`` with legs to
    ``V(e)``, ``n`` and ``V(b)``; it must be a pullback.
    """
    N = V.target
    _check_fully_faithful(V)
    d = univprop.cospan_diagram(N, V.mmap[q], p)
    if not univprop.is_cone(d, square) or not univprop.is_limit(d, square):
        raise NotAPullbackSquare("the given square is not a pullback")
    n = d.omap[1]
    return any(_isomorphic(N, V.omap[x], n) for x in range(V.source.n_obj))


def identity_embedding(C: FinCategory) -> Embedding:
    return Embedding(C, C, tuple(range(C.n_obj)), tuple(range(C.n_mor)))


def _require_strict(ws: Workspace) -> int:
    if not ws.has_initial() or not univprop.strict_initial_check(ws.X):
        raise StrictInitialMissing(ws.X.name)
    return ws.initial()


def verify_L_pullback_zero(ws: Workspace, p: Functor, probe: LaxMorphism) -> bool:
    """The pullback of ``L(p)`` against ``probe: (W, d) -> L(B)`` has structure ``0``.

    Also checks that ``d`` is itself ``0`` up to isomorphism and that the
    base of the pullback is the pullback in Cat.
    """
    zero = _require_strict(ws)
    X = ws.X
    Lp = L(ws, p)
    if probe.cod != Lp.cod:
        raise ObjectNotFound("probe does not land in L(B)")
    res = pullback_laxcomma(ws, Lp, probe)
    s = res.obj.structure
    ok = all(x == zero or iso_between(X, x, zero) is not None for x in s.omap)
    ok = ok and all(x == zero or iso_between(X, x, zero) is not None for x in probe.dom.structure.omap)
    ok = ok and all(X.is_identity(c) for c in res.legs[0].components)
    P, _, _ = cat_pullback(p, probe.functor)
    return ok and res.obj.base == P


def verify_LU_pullback(ws: Workspace, m: LaxMorphism) -> bool:
    """``LU(m)`` is the pullback of ``m`` along ``(id, iota_b)``, up to isomorphism over ``L(Y)``."""
    _require_strict(ws)
    res = pullback_laxcomma(ws, iota(ws, m.cod), m)
    LU = L(ws, m.functor)
    if LU.cod != res.legs[0].cod:
        return False
    back = enumerate_lax_hom(LU.dom, res.obj)
    for k in enumerate_lax_hom(res.obj, LU.dom):
        if compose_lax(LU, k) != res.legs[0]:
            continue
        for k2 in back:
            if compose_lax(k2, k) == identity_lax(res.obj) and compose_lax(k, k2) == identity_lax(LU.dom):
                return True
    return False


__all__ = [
    "ChangeOfBase", "DescentClass", "DescentMonad", "EMAlgebra", "Embedding", "Grade", "SliceCategory",
    "change_of_base", "check_monad", "classify_descent", "comparison", "descent_monad", "em_algebras",
    "em_category", "identity_embedding", "is_regular_epi", "monad_law_violations", "obstruction_check",
    "pullbacks_of", "sigma", "slice", "verify_LU_pullback", "verify_L_pullback_zero",
]
