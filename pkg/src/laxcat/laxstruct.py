"""Limits, colimits and exponentials in the lax comma category.

Each construction is explicit: products and pullbacks are computed
pointwise in ``X`` over the corresponding construction in ``Cat``,
coproducts copair structures, coequalizers go through pointwise left Kan
extensions, and exponentials are ends of pointwise exponentials.  The
``verify_*`` helpers re-check a result against the brute-force oracle on a
finite window.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import univprop
from .config import bounds
from .errors import (
    CoequalizerNotFiniteWithinBound,
    MissingColimit,
    MissingEnd,
    MissingExponential,
    MissingLimit,
    MissingProducts,
    MissingPullbacks,
    NoCommonCodomain,
    NotParallel,
    ShapeMismatch,
    SizeLimitExceeded,
)
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    build_category,
    check_functor,
    check_nat,
    comma_over,
    compose_functors,
    copair_functor,
    coproduct_category,
    enumerate_functors,
    enumerate_nat_trans,
    functor_category,
    identity_functor,
    identity_nat,
    injection,
    product_category,
    product_functor,
    projection,
    unique_names,
    vcomp,
    whisker_right,
)
from .laxcomma import (
    Adjunction,
    LaxMorphism,
    LaxObject,
    Truncation,
    Workspace,
    World,
    compose_lax,
    enumerate_lax_hom,
    identity_lax,
    probe_objects,
)
from .univprop import Cocone, Cone, Diagram, comediator, mediator, tuple_into


def _mk(dom: LaxObject, cod: LaxObject, f: Functor, comps) -> LaxMorphism:
    return LaxMorphism(dom, cod, f, NatTrans(dom.structure, compose_functors(cod.structure, f), comps))


def _strict(dom: LaxObject, cod: LaxObject, f: Functor) -> LaxMorphism:
    X = dom.X
    return _mk(dom, cod, f, [X.ids[x] for x in dom.structure.omap])


@dataclass(frozen=True)
class LimitResult:
    """An object with its cone (projections) or cocone (injections) legs."""

    obj: LaxObject
    legs: tuple


# -- terminal object and products -----------------------------------------------------------


def terminal_laxcomma(ws: Workspace) -> LaxObject:
    """``(One, const 1)``."""
    from .fixtures import one

    t = ws.terminal()
    X = ws.X
    return LaxObject(Functor(one(), X, [t], [X.ids[t]], f"const({X.objects[t]})"), "terminal")


def _product_cone(ws: Workspace, x: int, y: int) -> Cone:
    p = ws.product(x, y)
    if p is None:
        raise MissingProducts(f"product {ws.X.objects[x]} x {ws.X.objects[y]}")
    return p


def product_laxcomma(ws: Workspace, o1: LaxObject, o2: LaxObject) -> LimitResult:
    """``(W x Y, a x b)`` with ``(a x b)(w, y) = a(w) x b(y)``."""
    X = ws.X
    W, Y = o1.base, o2.base
    a, b = o1.structure, o2.structure
    P = product_category(W, Y)
    nY, mY = Y.n_obj, Y.n_mor
    cones = [_product_cone(ws, a.omap[i // nY], b.omap[i % nY]) for i in range(P.n_obj)]
    mmap = []
    for m in range(P.n_mor):
        u, v = m // mY, m % mY
        src, tgt = cones[P.dom[m]], cones[P.cod[m]]
        comps = (X.compose(a.mmap[u], src.legs[0]), X.compose(b.mmap[v], src.legs[1]))
        mmap.append(tuple_into(X, tgt.apex, tgt.legs, src.apex, comps))
    name = f"prod({o1.name},{o2.name})"
    s = check_functor(Functor(P, X, [c.apex for c in cones], mmap, name))
    obj = LaxObject(s, name)
    p1 = _mk(obj, o1, projection(W, Y, 0), [c.legs[0] for c in cones])
    p2 = _mk(obj, o2, projection(W, Y, 1), [c.legs[1] for c in cones])
    return LimitResult(obj, (p1, p2))


def product_family_laxcomma(ws: Workspace, objs) -> LimitResult:
    """Iterated binary products ``((o1 x o2) x o3) ...``; empty family gives the terminal object."""
    objs = list(objs)
    if not objs:
        return LimitResult(terminal_laxcomma(ws), ())
    acc = LimitResult(objs[0], (identity_lax(objs[0]),))
    for o in objs[1:]:
        step = product_laxcomma(ws, acc.obj, o)
        legs = tuple(compose_lax(l, step.legs[0]) for l in acc.legs) + (step.legs[1],)
        acc = LimitResult(step.obj, legs)
    return acc


def product_map(ws: Workspace, m1: LaxMorphism, m2: LaxMorphism) -> LaxMorphism:
    """``m1 x m2`` between the chosen products."""
    X = ws.X
    src = product_laxcomma(ws, m1.dom, m2.dom).obj
    tgt = product_laxcomma(ws, m1.cod, m2.cod).obj
    F = product_functor(m1.functor, m2.functor)
    nZ = m2.dom.base.n_obj
    comps = []
    for i in range(src.base.n_obj):
        w, z = i // nZ, i % nZ
        cs = _product_cone(ws, m1.dom.structure.omap[w], m2.dom.structure.omap[z])
        ct = _product_cone(ws, tgt_w := m1.cod.structure.omap[m1.functor.omap[w]],
                           m2.cod.structure.omap[m2.functor.omap[z]])
        del tgt_w
        legs = (X.compose(m1.cell[w], cs.legs[0]), X.compose(m2.cell[z], cs.legs[1]))
        comps.append(tuple_into(X, ct.apex, ct.legs, cs.apex, legs))
    return _mk(src, tgt, F, comps)


# -- pullbacks -----------------------------------------------------------------------------------


def cat_pullback(f: Functor, g: Functor) -> tuple[FinCategory, Functor, Functor]:
    """The pullback of ``f: W -> Y <- Z: g`` in Cat, as a subcategory of ``W x Z``."""
    W, Z = f.source, g.source
    full = product_category(W, Z)
    nZ, mZ = Z.n_obj, Z.n_mor
    objs = [i for i in range(full.n_obj) if f.omap[i // nZ] == g.omap[i % nZ]]
    mors = [m for m in range(full.n_mor) if f.mmap[m // mZ] == g.mmap[m % mZ]]
    oidx = {o: k for k, o in enumerate(objs)}
    midx = {m: k for k, m in enumerate(mors)}
    P = build_category(
        f"pb({W.name},{Z.name})",
        [full.objects[o] for o in objs],
        [(full.morphisms[m], oidx[full.dom[m]], oidx[full.cod[m]]) for m in mors],
        [midx[full.ids[o]] for o in objs],
        lambda b, a: midx[full.compose(mors[b], mors[a])],
    )
    j = Functor(P, W, [o // nZ for o in objs], [m // mZ for m in mors], f"pi1({P.name})")
    h = Functor(P, Z, [o % nZ for o in objs], [m % mZ for m in mors], f"pi2({P.name})")
    return P, j, h


def pullback_laxcomma(ws: Workspace, m1: LaxMorphism, m2: LaxMorphism) -> LimitResult:
    """Pullback of ``(f, gamma): (W, a) -> (Y, b) <- (Z, c): (g, chi)``.

    Over the Cat pullback ``P`` with projections ``j, h``, the structure at
    ``t`` is the pullback in ``X`` of ``gamma_{j t}`` against ``chi_{h t}``.
    """
    if m1.cod != m2.cod:
        raise NoCommonCodomain(f"{m1.cod.name} and {m2.cod.name} differ")
    X = ws.X
    a, c = m1.dom.structure, m2.dom.structure
    P, j, h = cat_pullback(m1.functor, m2.functor)
    cones, diags = [], []
    for t in range(P.n_obj):
        w, z = j.omap[t], h.omap[t]
        p = ws.pullback(m1.cell[w], m2.cell[z])
        if p is None:
            raise MissingPullbacks(
                f"pullback of {X.morphisms[m1.cell[w]]} and {X.morphisms[m2.cell[z]]}"
            )
        cones.append(p)
        diags.append(univprop.cospan_diagram(X, m1.cell[w], m2.cell[z]))
    mmap = []
    for m in range(P.n_mor):
        s, t = P.dom[m], P.cod[m]
        u, v = j.mmap[m], h.mmap[m]
        src = cones[s]
        l0 = X.compose(a.mmap[u], src.legs[0])
        l1 = X.compose(c.mmap[v], src.legs[1])
        corner = X.compose(m1.cell[j.omap[t]], l0)
        mmap.append(mediator(diags[t], cones[t], src.apex, (l0, l1, corner)))
    name = f"pb({m1.dom.name},{m2.dom.name})"
    d = check_functor(Functor(P, X, [p.apex for p in cones], mmap, name))
    obj = LaxObject(d, name)
    q1 = _mk(obj, m1.dom, j, [p.legs[0] for p in cones])
    q2 = _mk(obj, m2.dom, h, [p.legs[1] for p in cones])
    return LimitResult(obj, (q1, q2))


# -- initial object and coproducts -----------------------------------------------------------


def initial_laxcomma(ws: Workspace) -> LaxObject:
    """``(Empty, !)``; the hypothesis that ``X`` has an initial object is checked."""
    from .fixtures import empty

    ws.initial()
    return LaxObject(Functor(empty(), ws.X, [], [], "empty"), "initial")


def coproduct_laxcomma(ws: Workspace, o1: LaxObject, o2: LaxObject) -> LimitResult:
    """``(W1 + W2, [a1, a2])`` with strict injections."""
    ws.initial()
    s = copair_functor(o1.structure, o2.structure)
    name = f"copair({o1.name},{o2.name})"
    obj = LaxObject(s.renamed(name), name)
    i1 = _strict(o1, obj, injection(o1.base, o2.base, 0))
    i2 = _strict(o2, obj, injection(o1.base, o2.base, 1))
    return LimitResult(obj, (i1, i2))


def coproduct_family_laxcomma(ws: Workspace, objs) -> LimitResult:
    objs = list(objs)
    if not objs:
        return LimitResult(initial_laxcomma(ws), ())
    acc = LimitResult(objs[0], (identity_lax(objs[0]),))
    for o in objs[1:]:
        step = coproduct_laxcomma(ws, acc.obj, o)
        legs = tuple(compose_lax(step.legs[0], l) for l in acc.legs) + (step.legs[1],)
        acc = LimitResult(step.obj, legs)
    return acc


# -- pointwise left Kan extensions ---------------------------------------------------------------


@dataclass(frozen=True)
class LanResult:
    """``lan_f a`` with its unit and, per object ``y``, the comma-shaped colimit used."""

    f: Functor
    a: Functor
    extension: Functor
    unit: NatTrans
    certificates: tuple  # per y: (diagram, cocone, comma objects (w, h))


@dataclass(frozen=True)
class MateCell:
    phi: NatTrans
    mate: NatTrans


def _comma_objects(f: Functor, y: int):
    W, Y = f.source, f.target
    return [(w, h) for w in range(W.n_obj) for h in Y.hom(f.omap[w], y)]


@lru_cache(maxsize=4096)
def left_kan(f: Functor, a: Functor) -> LanResult:
    """``lan_f a (y) = colim_{(w, h: f w -> y)} a(w)``."""
    if a.source != f.source:
        raise ShapeMismatch(f"{a.name} is not defined on the source of {f.name}")
    Y, X = f.target, a.target
    certs = []
    for y in range(Y.n_obj):
        _, P = comma_over(f, y)
        D = Diagram.of(compose_functors(a, P))
        cc = univprop.find_colimit(D)
        if cc is None:
            raise MissingColimit(f"lan_{f.name} {a.name} at {Y.objects[y]}")
        certs.append((D, cc, tuple(_comma_objects(f, y))))
    mmap = []
    for v in range(Y.n_mor):
        D, cc, objs = certs[Y.dom[v]]
        _, cc2, objs2 = certs[Y.cod[v]]
        pos2 = {o: k for k, o in enumerate(objs2)}
        legs = [cc2.legs[pos2[(w, Y.compose(v, h))]] for w, h in objs]
        mmap.append(comediator(D, cc, cc2.apex, legs))
    ext = check_functor(Functor(Y, X, [c[1].apex for c in certs], mmap, f"lan({f.name},{a.name})"))
    comps = []
    for w in range(f.source.n_obj):
        y = f.omap[w]
        _, cc, objs = certs[y]
        comps.append(cc.legs[objs.index((w, Y.ids[y]))])
    unit = check_nat(NatTrans(a, compose_functors(ext, f), comps))
    return LanResult(f, a, ext, unit, tuple(certs))


def transpose(lan: LanResult, b: Functor, phi: NatTrans) -> NatTrans:
    """``phi: a => b o f`` to ``phi^t: lan_f a => b``."""
    if phi.source != lan.a or phi.target != compose_functors(b, lan.f):
        raise ShapeMismatch(f"{phi.name} is not a cell {lan.a.name} => {b.name} o {lan.f.name}")
    X = b.target
    comps = []
    for y, (D, cc, objs) in enumerate(lan.certificates):
        legs = [X.compose(b.mmap[h], phi.components[w]) for w, h in objs]
        comps.append(comediator(D, cc, b.omap[y], legs))
    return check_nat(NatTrans(lan.extension, b, comps))


def restrict_transpose(lan: LanResult, psi: NatTrans) -> NatTrans:
    """``psi: lan_f a => b`` to ``(psi * f) . unit: a => b o f``."""
    return vcomp(whisker_right(psi, lan.f), lan.unit)


def mate(phi: NatTrans, lan: LanResult, b: Functor) -> MateCell:
    t = transpose(lan, b, phi)
    if restrict_transpose(lan, t).components != phi.components:
        raise ShapeMismatch("transpose does not restrict back to the given cell")
    return MateCell(phi, t)


def lan_on_cell(f: Functor, alpha: NatTrans) -> NatTrans:
    """``lan_f(alpha): lan_f a => lan_f a'``."""
    la, la2 = left_kan(f, alpha.source), left_kan(f, alpha.target)
    return transpose(la, la2.extension, vcomp(la2.unit, alpha))


def fibre_world(W: FinCategory, X: FinCategory) -> World:
    """``Cat[W, X]``: functors and natural transformations."""
    del W, X
    return World(enumerate_nat_trans, lambda b, a: vcomp(b, a), identity_nat, "fibre")


def lan_adjunction(f: Functor, X: FinCategory) -> Adjunction:
    """``lan_f -| f^*`` between ``Cat[W, X]`` and ``Cat[Y, X]``."""
    W, Y = f.source, f.target
    return Adjunction(
        f"lan_{f.name} -| {f.name}*",
        fibre_world(W, X),
        fibre_world(Y, X),
        lambda a: left_kan(f, a).extension,
        lambda al: lan_on_cell(f, al),
        lambda b: compose_functors(b, f),
        lambda be: whisker_right(be, f),
        lambda a: left_kan(f, a).unit,
        lambda b: transpose(left_kan(f, compose_functors(b, f)), b, identity_nat(compose_functors(b, f))),
    )


def opcartesian_lift(dom: LaxObject, f: Functor) -> LaxMorphism:
    """``(W, a) --(f, unit)--> (Y, lan_f a)``."""
    lan = left_kan(f, dom.structure)
    cod = LaxObject(lan.extension, f"lan({f.name},{dom.name})")
    return _mk(dom, cod, f, lan.unit.components)


# -- coequalizers in Cat ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatCoequalizer:
    category: FinCategory
    quotient: Functor


def cat_coequalizer(F: Functor, G: Functor) -> CatCoequalizer:
    """Coequalizer of ``F, G: A -> B`` in Cat.

    Objects are identified by ``F(a) ~ G(a)``.  Morphisms are paths of
    non-identity morphisms of ``B`` modulo the congruence generated by the
    composition of ``B`` and ``F(u) ~ G(u)``; the quotient is enumerated
    Todd-Coxeter style (one coset table per starting object).  Paths longer
    than the saturation depth, or too many elements, abort with
    :class:`CoequalizerNotFiniteWithinBound`: the quotient may be infinite.
    """
    if F.source != G.source or F.target != G.target:
        raise NotParallel("coequalizer of non-parallel functors")
    A, B = F.source, F.target
    bnd = bounds()
    # object classes
    parent = list(range(B.n_obj))

    def ofind(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(A.n_obj):
        r1, r2 = ofind(F.omap[x]), ofind(G.omap[x])
        if r1 != r2:
            parent[max(r1, r2)] = min(r1, r2)
    reps = sorted({ofind(x) for x in range(B.n_obj)})
    cls = {r: k for k, r in enumerate(reps)}
    oc = [cls[ofind(x)] for x in range(B.n_obj)]
    gens = B.nonidentities()
    gdom = {g: oc[B.dom[g]] for g in gens}
    gcod = {g: oc[B.cod[g]] for g in gens}

    def word(m):
        return () if B.is_identity(m) else (m,)

    relations: list[tuple[int, tuple, tuple]] = []
    for f in gens:
        for g in gens:
            h = B.compose(g, f)
            if h >= 0:
                relations.append((gdom[f], (f, g), word(h)))
    for u in range(A.n_mor):
        wf, wg = word(F.mmap[u]), word(G.mmap[u])
        if wf != wg:
            relations.append((oc[F.omap[A.dom[u]]], wf, wg))
    by_start: dict[int, list] = {}
    for s, u, v in relations:
        by_start.setdefault(s, []).append((u, v))
    out_gens: dict[int, list[int]] = {}
    for g in gens:
        out_gens.setdefault(gdom[g], []).append(g)

    src: list[int] = []
    tgt: list[int] = []
    words: list[tuple] = []
    table: list[dict[int, int]] = []
    alive: list[bool] = []
    rep = []

    def find(e):
        while rep[e] != e:
            rep[e] = rep[rep[e]]
            e = rep[e]
        return e

    def new(s, t, w):
        if len(w) > bnd.saturation_depth or len(src) >= bnd.max_elements:
            raise CoequalizerNotFiniteWithinBound(bnd.saturation_depth)
        src.append(s)
        tgt.append(t)
        words.append(w)
        table.append({})
        alive.append(True)
        rep.append(len(rep))
        return len(src) - 1

    def step(e, g):
        e = find(e)
        n = table[e].get(g)
        if n is None:
            n = new(src[e], gcod[g], words[e] + (g,))
            table[e][g] = n
        return find(n)

    def trace(e, w):
        for g in w:
            e = step(e, g)
        return e

    def merge(a, b):
        queue = deque([(a, b)])
        changed = False
        while queue:
            x, y = queue.popleft()
            x, y = find(x), find(y)
            if x == y:
                continue
            changed = True
            if y < x:
                x, y = y, x
            rep[y] = x
            alive[y] = False
            for g, t in table[y].items():
                if g in table[x]:
                    queue.append((table[x][g], t))
                else:
                    table[x][g] = t
            table[y] = {}
        return changed

    for k in range(len(reps)):
        new(k, k, ())
    while True:
        changed = False
        i = 0
        while i < len(src):
            if alive[i]:
                for u, v in by_start.get(tgt[i], ()):
                    if not alive[i]:
                        break
                    changed |= merge(trace(i, u), trace(i, v))
                if alive[i]:
                    for g in out_gens.get(tgt[i], ()):
                        if g not in table[i]:
                            step(i, g)
                            changed = True
            i += 1
        if not changed:
            break

    elems = [e for e in range(len(src)) if alive[e]]
    eidx = {e: k for k, e in enumerate(elems)}
    onames = [B.objects[r] for r in reps]

    def ename(e):
        w = words[e]
        if not w:
            return "id_" + onames[src[e]]
        s = B.morphisms[w[0]]
        for g in w[1:]:
            s = f"{B.morphisms[g]}({s})"
        return s

    mlist = [(ename(e), src[e], tgt[e]) for e in elems]
    ids = [eidx[find(k)] for k in range(len(reps))]

    def comp(gk, fk):
        return eidx[trace(elems[fk], words[elems[gk]])]

    if len(elems) > bnd.max_morphisms:
        raise SizeLimitExceeded(f"coequalizer has {len(elems)} morphisms")
    C = build_category(f"coeq({F.name},{G.name})", onames, mlist, ids, comp)
    q = Functor(
        B, C, oc,
        [eidx[trace(find(oc[B.dom[m]]), word(m))] for m in range(B.n_mor)],
        f"q({C.name})",
    )
    check_functor(q)
    if compose_functors(q, F) != compose_functors(q, G):
        raise ShapeMismatch("quotient does not coequalize")
    return CatCoequalizer(C, q)


# -- coequalizers in the lax comma category ----------------------------------------------------------


@dataclass(frozen=True)
class CoequalizerResult:
    obj: LaxObject
    quotient: LaxMorphism
    cat: CatCoequalizer
    legs: tuple  # the two transformations lan_{jf} a => lan_j b
    lan_b: LanResult
    lan_a: LanResult


def coequalizer_laxcomma(ws: Workspace, m1: LaxMorphism, m2: LaxMorphism) -> CoequalizerResult:
    """Coequalizer of ``(f, gamma), (g, chi): (W, a) => (Y, b)``.

    With ``j: Y -> C`` the coequalizer of ``f, g`` in Cat, the two legs
    ``lan_{jf} a => lan_j b`` are the transposes of ``(eta_b * f) . gamma``
    and ``(eta_b * g) . chi``; ``d`` is their pointwise coequalizer ``q``
    and the quotient is ``(j, (q * j) . eta_b)``.
    """
    if m1.dom != m2.dom or m1.cod != m2.cod:
        raise NotParallel("coequalizer of non-parallel lax morphisms")
    X = ws.X
    a, b = m1.dom.structure, m1.cod.structure
    cq = cat_coequalizer(m1.functor, m2.functor)
    C, j = cq.category, cq.quotient
    jf = compose_functors(j, m1.functor)
    if jf != compose_functors(j, m2.functor):
        raise ShapeMismatch("j o f differs from j o g")
    lan_b = left_kan(j, b)
    lan_a = left_kan(jf, a)
    Lb = lan_b.extension

    def leg(m):
        comps = [X.compose(lan_b.unit[m.functor.omap[w]], m.cell[w]) for w in range(a.source.n_obj)]
        return transpose(lan_a, Lb, NatTrans(a, compose_functors(Lb, jf), comps))

    l1, l2 = leg(m1), leg(m2)
    cocones, diags = [], []
    for c in range(C.n_obj):
        cc = univprop.find_coequalizer(X, l1[c], l2[c])
        if cc is None:
            raise MissingColimit(f"coequalizer of {X.morphisms[l1[c]]} and {X.morphisms[l2[c]]}")
        cocones.append(cc)
        diags.append(univprop.parallel_diagram(X, l1[c], l2[c]))
    mmap = []
    for u in range(C.n_mor):
        c, c2 = C.dom[u], C.cod[u]
        q2 = cocones[c2].legs[1]
        legs = (X.compose(q2, X.compose(Lb.mmap[u], l1[c])), X.compose(q2, Lb.mmap[u]))
        mmap.append(comediator(diags[c], cocones[c], cocones[c2].apex, legs))
    name = f"coeq({m1.dom.name},{m1.cod.name})"
    d = check_functor(Functor(C, X, [cc.apex for cc in cocones], mmap, name))
    obj = LaxObject(d, name)
    phi_t = NatTrans(Lb, d, [cc.legs[1] for cc in cocones])
    phi = restrict_transpose(lan_b, phi_t)
    quotient = _mk(m1.cod, obj, j, phi.components)
    return CoequalizerResult(obj, quotient, cq, (l1, l2), lan_b, lan_a)


def explicit_leg(m: LaxMorphism, j: Functor) -> NatTrans:
    """The same leg via ``lan_{jf} a -> lan_j lan_f a -> lan_j b``.

    The first map is the comparison of iterated extensions, the second is
    ``lan_j`` of the transpose of ``gamma`` along ``f``.  Used as an
    independent cross-check of :func:`coequalizer_laxcomma`.
    """
    a, b, f = m.dom.structure, m.cod.structure, m.functor
    X = a.target
    lan_f = left_kan(f, a)
    g_flat = transpose(lan_f, b, m.cell)
    jf = compose_functors(j, f)
    lan_jf = left_kan(jf, a)
    lan_j_lanf = left_kan(j, lan_f.extension)
    comps = [
        X.compose(lan_j_lanf.unit[f.omap[w]], lan_f.unit[w]) for w in range(a.source.n_obj)
    ]
    kappa = transpose(lan_jf, lan_j_lanf.extension, NatTrans(a, compose_functors(lan_j_lanf.extension, jf), comps))
    return vcomp(lan_on_cell(j, g_flat), kappa)


# -- exponentials ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentialResult:
    obj: LaxObject
    ev: LaxMorphism  # exp x (W, a) -> (Y, b)
    functors: object  # FunctorCategory
    ends: tuple


def _exp(ws: Workspace, x: int, y: int):
    e = ws.exponential(x, y)
    if e is None:
        raise MissingExponential(ws.X.objects[x], ws.X.objects[y])
    return e


def exp_map(ws: Workspace, p: int, r: int) -> int:
    """``p => r: (x => y) -> (x1 => y1)`` for ``p: x1 -> x`` and ``r: y -> y1``."""
    X = ws.X
    x1, x = X.dom[p], X.cod[p]
    y, y1 = X.dom[r], X.cod[r]
    e, e1 = _exp(ws, x, y), _exp(ws, x1, y1)
    src = _product_cone(ws, e.obj, x1)
    # ev o (e x p)
    exp_p = tuple_into(X, e.product.apex, e.product.legs, src.apex, (src.legs[0], X.compose(p, src.legs[1])))
    target = X.compose(r, X.compose(e.ev, exp_p))
    for t in X.hom(e.obj, e1.obj):
        tx = tuple_into(X, e1.product.apex, e1.product.legs, src.apex, (X.compose(t, src.legs[0]), src.legs[1]))
        if X.compose(e1.ev, tx) == target:
            return t
    raise MissingExponential(X.objects[x1], X.objects[y1])


def exponential_laxcomma(ws: Workspace, o1: LaxObject, o2: LaxObject) -> ExponentialResult:
    """``(W, a) => (Y, b) = (Cat[W, Y], b^a)`` with ``b^a(h) = end_w (a(w) => b(h w))``."""
    X = ws.X
    W, Y = o1.base, o2.base
    a, b = o1.structure, o2.structure
    fc = functor_category(W, Y)
    Fn = fc.category
    Tw = univprop.twisted(W)
    n, mW = W.n_obj, W.n_mor
    ends = []
    for h in fc.functors:
        omap, mmap = [], []
        for i in range(Tw.n_obj):
            w, w2 = i // n, i % n
            omap.append(_exp(ws, a.omap[w], b.omap[h.omap[w2]]).obj)
        for m in range(Tw.n_mor):
            u, v = m // mW, m % mW  # u: w1 -> w in W, v: w' -> w1'
            mmap.append(exp_map(ws, a.mmap[u], b.mmap[h.mmap[v]]))
        T = check_functor(Functor(Tw, X, omap, mmap, f"T({h.name})"))
        try:
            ends.append(univprop.end_of(T, W))
        except MissingLimit:
            raise MissingEnd(f"end for {h.name}") from None
    emap = []
    for alpha in fc.transformations:
        i, k = fc.object_of(alpha.source), fc.object_of(alpha.target)
        e1, e2 = ends[i], ends[k]
        want = [
            X.compose(exp_map(ws, X.ids[a.omap[w]], b.mmap[alpha.components[w]]), e1.projections[w])
            for w in range(n)
        ]
        hit = None
        for m in X.hom(e1.apex, e2.apex):
            if all(X.compose(e2.projections[w], m) == want[w] for w in range(n)):
                hit = m
                break
        if hit is None:
            raise MissingEnd(f"no induced map for {alpha.name}")
        emap.append(hit)
    name = f"exp({o1.name},{o2.name})"
    s = check_functor(Functor(Fn, X, [e.apex for e in ends], emap, name))
    obj = LaxObject(s, name)
    # evaluation (Cat[W,Y] x W, b^a x a) -> (Y, b)
    prod = product_laxcomma(ws, obj, o1).obj
    P = prod.base
    ev_om = [fc.functors[i // n].omap[i % n] for i in range(P.n_obj)]
    ev_mm = []
    for m in range(P.n_mor):
        t, u = m // mW, m % mW
        alpha = fc.transformations[t]
        ev_mm.append(Y.compose(alpha.components[W.cod[u]], alpha.source.mmap[u]))
    evf = check_functor(Functor(P, Y, ev_om, ev_mm, f"ev({Fn.name})"))
    comps = []
    for i in range(P.n_obj):
        hi, w = i // n, i % n
        x, y = a.omap[w], b.omap[fc.functors[hi].omap[w]]
        ex = _exp(ws, x, y)
        src = _product_cone(ws, ends[hi].apex, x)
        pw = tuple_into(X, ex.product.apex, ex.product.legs, src.apex,
                        (X.compose(ends[hi].projections[w], src.legs[0]), src.legs[1]))
        comps.append(X.compose(ex.ev, pw))
    ev = LaxMorphism(prod, o2, evf, check_nat(NatTrans(prod.structure, compose_functors(b, evf), comps)))
    return ExponentialResult(obj, ev, fc, tuple(ends))


def uncurry(ws: Workspace, exp: ExponentialResult, m: LaxMorphism, o1: LaxObject) -> LaxMorphism:
    """``ev o (m x id)``: ``(Z, c) x (W, a) -> (Y, b)`` from ``m: (Z, c) -> exp``."""
    return compose_lax(exp.ev, product_map(ws, m, identity_lax(o1)))


def verify_currying(ws: Workspace, o1: LaxObject, o2: LaxObject, o3: LaxObject,
                    exp: ExponentialResult | None = None, tests=()) -> tuple[int, int]:
    """Check that uncurrying is a bijection ``Hom(Z, exp) -> Hom(Z x W, Y)``.

    ``o1 = (W, a)``, ``o2 = (Y, b)``, ``o3 = (Z, c)``.  ``tests`` are
    morphisms ``n: (Z', c') -> (Z, c)``; for each the square
    ``uncurry(m o n) = uncurry(m) o (n x id)`` is checked.  Returns both
    hom-set sizes; raises :class:`~laxcat.errors.BijectiveFailure` on a
    mismatch.
    """
    from .errors import BijectiveFailure

    exp = exp or exponential_laxcomma(ws, o1, o2)
    lhs_obj = product_laxcomma(ws, o3, o1).obj
    lhs = enumerate_lax_hom(lhs_obj, o2)
    rhs = enumerate_lax_hom(o3, exp.obj)
    images = [uncurry(ws, exp, m, o1) for m in rhs]
    if len(lhs) != len(rhs) or len(set(images)) != len(images) or set(images) != set(lhs):
        raise BijectiveFailure(f"currying fails: {len(lhs)} vs {len(rhs)}", (o1, o2, o3))
    for n in tests:
        if n.cod != o3:
            continue
        nx = product_map(ws, n, identity_lax(o1))
        for m in rhs:
            if uncurry(ws, exp, compose_lax(m, n), o1) != compose_lax(uncurry(ws, exp, m, o1), nx):
                raise BijectiveFailure("currying is not natural", (n, m))
    return len(lhs), len(rhs)


# -- oracle verification on windows ----------------------------------------------------------------


def window(ws: Workspace, objs, probes: int = 3) -> Truncation:
    """The given objects followed by ``probes`` canonical extra objects."""
    return Truncation(list(objs) + probe_objects(ws, limit=probes), ws)


def verify_limit(trunc: Truncation, diagram_objs, result: LimitResult, morphisms=None) -> bool:
    """Is ``result`` a limit in the window of the discrete family or cospan given?"""
    T = trunc
    if morphisms is None:
        d = univprop.discrete_diagram(T, [T.index(o) for o in diagram_objs])
        return univprop.is_limit(d, Cone(T.index(result.obj), tuple(result.legs)))
    m1, m2 = morphisms
    d = univprop.cospan_diagram(T, m1, m2)
    corner = compose_lax(m1, result.legs[0])
    return univprop.is_limit(d, Cone(T.index(result.obj), (result.legs[0], result.legs[1], corner)))


def verify_colimit(trunc: Truncation, diagram_objs, result: LimitResult) -> bool:
    T = trunc
    d = univprop.discrete_diagram(T, [T.index(o) for o in diagram_objs])
    return univprop.is_colimit(d, Cocone(T.index(result.obj), tuple(result.legs)))


def verify_coequalizer(trunc: Truncation, m1: LaxMorphism, m2: LaxMorphism, res: CoequalizerResult) -> bool:
    T = trunc
    d = univprop.parallel_diagram(T, m1, m2)
    legs = (compose_lax(res.quotient, m1), res.quotient)
    return univprop.is_colimit(d, Cocone(T.index(res.obj), legs))


def lax_iso(o1: LaxObject, o2: LaxObject) -> tuple[LaxMorphism, LaxMorphism] | None:
    """An isomorphism ``o1 -> o2`` with its inverse, by exhaustive search."""
    i1, i2 = identity_lax(o1), identity_lax(o2)
    back = enumerate_lax_hom(o2, o1)
    for m in enumerate_lax_hom(o1, o2):
        for n in back:
            if compose_lax(n, m) == i1 and compose_lax(m, n) == i2:
                return m, n
    return None


__all__ = [
    "CatCoequalizer", "CoequalizerResult", "ExponentialResult", "LanResult", "LimitResult", "MateCell",
    "cat_coequalizer", "cat_pullback", "coequalizer_laxcomma", "coproduct_family_laxcomma",
    "coproduct_laxcomma", "exp_map", "explicit_leg", "exponential_laxcomma", "fibre_world",
    "initial_laxcomma", "lan_adjunction", "lan_on_cell", "lax_iso", "left_kan", "mate", "opcartesian_lift",
    "product_family_laxcomma", "product_laxcomma", "product_map", "pullback_laxcomma",
    "restrict_transpose", "terminal_laxcomma", "transpose", "uncurry", "verify_coequalizer",
    "verify_colimit", "verify_currying", "verify_limit", "window",
]
