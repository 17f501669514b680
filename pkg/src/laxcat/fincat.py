"""Finite categories, functors and natural transformations.

Objects and morphisms are addressed by integer index; names are kept for
rendering and for name-based equality.  Composition is a flat table,
``comp[g * M + f]`` holding the index of ``g o f`` or -1 when ``cod f !=
dom g``.  Values are immutable once built.

Constructed categories follow one naming scheme: pairs render as
``(a,b)``, tagged sums as ``inl:a`` / ``inr:b``, the identity of an object
``o`` is ``id_o``, and clashes get a numeric ``_2``, ``_3``... suffix.
"""

from __future__ import annotations

from array import array
from functools import lru_cache
from itertools import product as cartesian

from . import kernels
from .config import bounds, check_size
from .errors import (
    AssociativityViolation,
    IdentityLawViolation,
    NonTotalComposition,
    NotAFunctor,
    NotNatural,
    NotParallel,
    ObjectNotFound,
    SizeLimitExceeded,
    ValidationError,
)


def unique_names(names):
    """Resolve clashes by appending ``_2``, ``_3``, ... in order of appearance."""
    seen: dict[str, int] = {}
    taken = set(names)
    out = []
    for n in names:
        if n not in seen:
            seen[n] = 1
            out.append(n)
            continue
        k = seen[n]
        while True:
            k += 1
            cand = f"{n}_{k}"
            if cand not in taken:
                break
        seen[n] = k
        taken.add(cand)
        out.append(cand)
    return out


class FinCategory:
    """A finite category with a total composition table on composable pairs."""

    __slots__ = (
        "name", "objects", "morphisms", "dom", "cod", "ids", "comp",
        "_hash", "_obj_index", "_mor_index", "_homs", "_kview", "_is_id",
        "_cache", "__weakref__",
    )

    def __init__(self, name, objects, morphisms, dom, cod, ids, comp):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.ids = tuple(ids)
        self.comp = tuple(comp)
        self._hash = None
        self._obj_index = None
        self._mor_index = None
        self._homs = None
        self._kview = None
        self._is_id = None
        self._cache = {}

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.objects, self.morphisms, self.dom, self.cod, self.ids, self.comp)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return hash(self) == hash(other) and self._key() == other._key()

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    # -- lookups -------------------------------------------------------------

    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.morphisms)

    def obj(self, name: str) -> int:
        if self._obj_index is None:
            self._obj_index = {n: i for i, n in enumerate(self.objects)}
        try:
            return self._obj_index[name]
        except KeyError:
            raise ObjectNotFound(f"{name!r} is not an object of {self.name}") from None

    def mor(self, name: str) -> int:
        if self._mor_index is None:
            self._mor_index = {n: i for i, n in enumerate(self.morphisms)}
        try:
            return self._mor_index[name]
        except KeyError:
            raise ObjectNotFound(f"{name!r} is not a morphism of {self.name}") from None

    def compose(self, g: int, f: int) -> int:
        """``g o f``; -1 when not composable."""
        return self.comp[g * len(self.morphisms) + f]

    def identity(self, x: int) -> int:
        return self.ids[x]

    def is_identity(self, m: int) -> bool:
        if self._is_id is None:
            flags = [False] * len(self.morphisms)
            for i in self.ids:
                flags[i] = True
            self._is_id = tuple(flags)
        return self._is_id[m]

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        if self._homs is None:
            homs: dict[tuple[int, int], list[int]] = {}
            for m in range(len(self.morphisms)):
                homs.setdefault((self.dom[m], self.cod[m]), []).append(m)
            self._homs = {k: tuple(v) for k, v in homs.items()}
        return self._homs.get((x, y), ())

    def nonidentities(self) -> list[int]:
        return [m for m in range(len(self.morphisms)) if not self.is_identity(m)]

    def kview(self):
        """Integer arrays consumed by the search kernels."""
        if self._kview is None:
            n = len(self.objects)
            start, length, items = [], [], []
            for x in range(n):
                for y in range(n):
                    h = self.hom(x, y)
                    start.append(len(items))
                    length.append(len(h))
                    items.extend(h)
            self._kview = {
                "dom": array("i", self.dom),
                "cod": array("i", self.cod),
                "ids": array("i", self.ids),
                "comp": array("i", self.comp),
                "hom_start": array("i", start),
                "hom_len": array("i", length),
                "hom_items": array("i", items),
                "nonid": array("i", self.nonidentities()),
            }
        return self._kview

    def describe(self, m: int) -> str:
        return f"{self.morphisms[m]}: {self.objects[self.dom[m]]} -> {self.objects[self.cod[m]]}"


def build_category(name, objects, morphisms, identities, compose, *, check=True):
    """Assemble a category from ``(name, dom, cod)`` triples and a composition rule.

    ``compose(g, f)`` is only called on composable pairs and must return a
    morphism index.  Names are made unique.
    """
    objects = unique_names(list(objects))
    m = len(morphisms)
    if check:
        check_size(name, len(objects), m)
    names = unique_names([t[0] for t in morphisms])
    dom = [t[1] for t in morphisms]
    cod = [t[2] for t in morphisms]
    comp = [-1] * (m * m)
    by_dom: dict[int, list[int]] = {}
    for f in range(m):
        by_dom.setdefault(dom[f], []).append(f)
    for f in range(m):
        for g in by_dom.get(cod[f], ()):
            comp[g * m + f] = compose(g, f)
    return FinCategory(name, objects, names, dom, cod, identities, comp)


# -- validation ----------------------------------------------------------------


def check_laws(c: FinCategory) -> FinCategory:
    """Re-assert totality, identity laws, typing of composites and associativity."""
    m = c.n_mor
    n = c.n_obj
    for x in range(n):
        i = c.ids[x]
        if not (0 <= i < m) or c.dom[i] != x or c.cod[i] != x:
            raise IdentityLawViolation(
                c.morphisms[i] if 0 <= i < m else str(i),
                f"identity of {c.objects[x]} is not an endomorphism of it",
            )
    for f in range(m):
        for g in range(m):
            defined = c.comp[g * m + f] >= 0
            if defined != (c.cod[f] == c.dom[g]):
                what = "missing" if not defined else "defined on non-composable pair"
                raise NonTotalComposition(
                    f"composite {c.morphisms[g]} o {c.morphisms[f]} {what}",
                    (c.morphisms[g], c.morphisms[f]),
                )
    for f in range(m):
        if c.compose(c.ids[c.cod[f]], f) != f or c.compose(f, c.ids[c.dom[f]]) != f:
            raise IdentityLawViolation(c.morphisms[f])
    for f in range(m):
        for g in range(m):
            h = c.comp[g * m + f]
            if h >= 0 and (c.dom[h] != c.dom[f] or c.cod[h] != c.cod[g]):
                raise NonTotalComposition(
                    f"composite {c.morphisms[g]} o {c.morphisms[f]} = {c.morphisms[h]} "
                    "has the wrong domain or codomain",
                    (c.morphisms[g], c.morphisms[f]),
                )
    bad = kernels.associativity_violation(c.kview()["comp"], m)
    if bad is not None:
        h, g, f = bad
        raise AssociativityViolation(c.morphisms[h], c.morphisms[g], c.morphisms[f])
    return c


def validate_category(raw) -> FinCategory:
    """Validate raw category data given by names.

    ``raw`` is a mapping with ``objects`` (names), ``morphisms`` (triples
    ``(name, dom, cod)``), ``identities`` (object -> morphism name) and
    ``compose`` (``(g, f) -> h`` by name); ``name`` is optional.  Returns a
    :class:`FinCategory` or raises the first violated law.
    """
    if isinstance(raw, FinCategory):
        return check_laws(raw)
    name = raw.get("name", "C")
    objects = list(raw["objects"])
    if len(set(objects)) != len(objects):
        raise ValidationError("duplicate object name")
    oidx = {o: i for i, o in enumerate(objects)}
    morphisms = [tuple(t) for t in raw["morphisms"]]
    mnames = [t[0] for t in morphisms]
    if len(set(mnames)) != len(mnames):
        raise ValidationError("duplicate morphism name")
    midx = {nm: i for i, nm in enumerate(mnames)}
    for nm, d, cd in morphisms:
        for o in (d, cd):
            if o not in oidx:
                raise ObjectNotFound(f"morphism {nm} refers to unknown object {o!r}")
    check_size(name, len(objects), len(morphisms))
    identities = raw["identities"]
    ids = []
    for o in objects:
        if o not in identities or identities[o] not in midx:
            raise IdentityLawViolation(str(identities.get(o)), f"object {o} has no identity")
        ids.append(midx[identities[o]])
    m = len(morphisms)
    comp = [-1] * (m * m)
    for (g, f), h in dict(raw.get("compose", {})).items():
        for nm in (g, f, h):
            if nm not in midx:
                raise ObjectNotFound(f"composition refers to unknown morphism {nm!r}")
        comp[midx[g] * m + midx[f]] = midx[h]
    return check_laws(
        FinCategory(
            name,
            objects,
            mnames,
            [oidx[t[1]] for t in morphisms],
            [oidx[t[2]] for t in morphisms],
            ids,
            comp,
        )
    )


def raw_data(c: FinCategory) -> dict:
    """Inverse of :func:`validate_category` (names only)."""
    m = c.n_mor
    return {
        "name": c.name,
        "objects": list(c.objects),
        "morphisms": [(c.morphisms[i], c.objects[c.dom[i]], c.objects[c.cod[i]]) for i in range(m)],
        "identities": {c.objects[x]: c.morphisms[c.ids[x]] for x in range(c.n_obj)},
        "compose": {
            (c.morphisms[g], c.morphisms[f]): c.morphisms[c.comp[g * m + f]]
            for g in range(m)
            for f in range(m)
            if c.comp[g * m + f] >= 0
        },
    }


# -- functors and natural transformations ------------------------------------


class Functor:
    __slots__ = ("source", "target", "omap", "mmap", "name", "_hash")

    def __init__(self, source: FinCategory, target: FinCategory, omap, mmap, name: str | None = None):
        self.source = source
        self.target = target
        self.omap = tuple(omap)
        self.mmap = tuple(mmap)
        self.name = name if name is not None else _tuple_name(target.objects, self.omap)
        self._hash = None

    def _key(self):
        return (self.source, self.target, self.omap, self.mmap)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Functor):
            return NotImplemented
        return self.omap == other.omap and self.mmap == other.mmap and self._key() == other._key()

    def __repr__(self):
        return f"Functor({self.name!r}: {self.source.name} -> {self.target.name})"

    def fobj(self, x: int) -> int:
        return self.omap[x]

    def fmor(self, m: int) -> int:
        return self.mmap[m]

    def renamed(self, name: str) -> "Functor":
        return Functor(self.source, self.target, self.omap, self.mmap, name)


def _tuple_name(names, idx) -> str:
    return "(" + ",".join(names[i] for i in idx) + ")"


def check_functor(F: Functor) -> Functor:
    W, Y = F.source, F.target
    if len(F.omap) != W.n_obj or len(F.mmap) != W.n_mor:
        raise NotAFunctor(f"{F.name}: maps have the wrong length")
    for m in range(W.n_mor):
        fm = F.mmap[m]
        if Y.dom[fm] != F.omap[W.dom[m]] or Y.cod[fm] != F.omap[W.cod[m]]:
            raise NotAFunctor(f"{F.name} does not preserve the ends of {W.morphisms[m]}")
    for x in range(W.n_obj):
        if F.mmap[W.ids[x]] != Y.ids[F.omap[x]]:
            raise NotAFunctor(f"{F.name} does not preserve the identity of {W.objects[x]}")
    mw = W.n_mor
    for g in range(mw):
        for f in range(mw):
            h = W.comp[g * mw + f]
            if h >= 0 and Y.compose(F.mmap[g], F.mmap[f]) != F.mmap[h]:
                raise NotAFunctor(
                    f"{F.name} does not preserve {W.morphisms[g]} o {W.morphisms[f]}"
                )
    return F


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, range(c.n_obj), range(c.n_mor), f"id({c.name})")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G o F``."""
    if F.target != G.source:
        raise NotAFunctor(f"cannot compose {G.name} after {F.name}")
    return Functor(
        F.source,
        G.target,
        [G.omap[o] for o in F.omap],
        [G.mmap[m] for m in F.mmap],
        f"{G.name}({F.name})",
    )


def constant_functor(source: FinCategory, target: FinCategory, y: int, name: str | None = None) -> Functor:
    return Functor(
        source,
        target,
        [y] * source.n_obj,
        [target.ids[y]] * source.n_mor,
        name or f"const({target.objects[y]})",
    )


class NatTrans:
    __slots__ = ("source", "target", "components", "name", "_hash")

    def __init__(self, source: Functor, target: Functor, components, name: str | None = None):
        self.source = source
        self.target = target
        self.components = tuple(components)
        self.name = name if name is not None else _tuple_name(source.target.morphisms, self.components)
        self._hash = None

    def _key(self):
        return (self.source, self.target, self.components)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.components == other.components and self._key() == other._key()

    def __repr__(self):
        return f"NatTrans({self.name!r}: {self.source.name} => {self.target.name})"

    def __getitem__(self, w: int) -> int:
        return self.components[w]


def _check_parallel(F: Functor, G: Functor) -> None:
    if F.source != G.source or F.target != G.target:
        raise NotParallel(f"{F.name} and {G.name} are not parallel")


def check_nat(alpha: NatTrans) -> NatTrans:
    F, G = alpha.source, alpha.target
    _check_parallel(F, G)
    W, Y = F.source, F.target
    for w in range(W.n_obj):
        c = alpha.components[w]
        if Y.dom[c] != F.omap[w] or Y.cod[c] != G.omap[w]:
            raise NotNatural(f"component at {W.objects[w]} has the wrong type")
    for m in range(W.n_mor):
        d, c = W.dom[m], W.cod[m]
        if Y.compose(G.mmap[m], alpha.components[d]) != Y.compose(alpha.components[c], F.mmap[m]):
            raise NotNatural(f"naturality fails at {W.morphisms[m]}")
    return alpha


def identity_nat(F: Functor) -> NatTrans:
    return NatTrans(F, F, [F.target.ids[o] for o in F.omap], f"id_{F.name}")


def is_identity_nat(alpha: NatTrans) -> bool:
    Y = alpha.source.target
    return all(Y.is_identity(c) for c in alpha.components)


def vcomp(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Vertical composite ``beta . alpha``."""
    if alpha.target != beta.source:
        raise NotParallel("vertical composition of non-matching transformations")
    Y = alpha.source.target
    return NatTrans(
        alpha.source,
        beta.target,
        [Y.compose(b, a) for a, b in zip(alpha.components, beta.components)],
    )


def whisker_right(alpha: NatTrans, H: Functor) -> NatTrans:
    """``alpha * H``: components ``alpha_{H v}``."""
    return NatTrans(
        compose_functors(alpha.source, H),
        compose_functors(alpha.target, H),
        [alpha.components[H.omap[v]] for v in range(H.source.n_obj)],
    )


def whisker_left(K: Functor, alpha: NatTrans) -> NatTrans:
    """``K * alpha``: components ``K(alpha_w)``."""
    return NatTrans(
        compose_functors(K, alpha.source),
        compose_functors(K, alpha.target),
        [K.mmap[c] for c in alpha.components],
    )


# -- enumeration ----------------------------------------------------------------


def _limit_hit(what: str):
    raise SizeLimitExceeded(f"{what}: enumeration exceeds {bounds().max_enumeration} values")


@lru_cache(maxsize=4096)
def _functor_tuples(W: FinCategory, Y: FinCategory, limit: int):
    kw, ky = W.kview(), Y.kview()
    out = kernels.functor_search(
        W.n_obj, kw["dom"], kw["cod"], kw["ids"], kw["comp"],
        Y.n_obj, Y.n_mor, ky["ids"], ky["comp"],
        ky["hom_start"], ky["hom_len"], ky["hom_items"], limit,
    )
    return tuple(out)


@lru_cache(maxsize=4096)
def _enumerate_functors(W: FinCategory, Y: FinCategory, limit: int):
    raw = _functor_tuples(W, Y, limit)
    if raw and raw[-1] is None:
        _limit_hit(f"functors {W.name} -> {Y.name}")
    names = unique_names([_tuple_name(Y.objects, om) for om, _ in raw])
    return tuple(Functor(W, Y, om, mm, nm) for (om, mm), nm in zip(raw, names))


def enumerate_functors(W: FinCategory, Y: FinCategory) -> list[Functor]:
    """Every functor ``W -> Y``, ordered lexicographically by (omap, mmap)."""
    return list(_enumerate_functors(W, Y, bounds().max_enumeration))


def count_functors(W: FinCategory, Y: FinCategory) -> int:
    return len(_enumerate_functors(W, Y, bounds().max_enumeration))


@lru_cache(maxsize=16384)
def _nat_tuples(F: Functor, G: Functor, limit: int):
    W, Y = F.source, F.target
    kw, ky = W.kview(), Y.kview()
    out = kernels.nat_trans_search(
        W.n_obj, kw["dom"], kw["cod"], kw["nonid"],
        array("i", F.omap), array("i", F.mmap), array("i", G.omap), array("i", G.mmap),
        Y.n_obj, Y.n_mor, ky["comp"], ky["hom_start"], ky["hom_len"], ky["hom_items"], limit,
    )
    if out and out[-1] is None:
        _limit_hit(f"transformations {F.name} => {G.name}")
    return tuple(out)


def enumerate_nat_trans(F: Functor, G: Functor) -> list[NatTrans]:
    """Every natural transformation ``F => G`` in lexicographic component order."""
    _check_parallel(F, G)
    return [NatTrans(F, G, c) for c in _nat_tuples(F, G, bounds().max_enumeration)]


def count_nat_trans(F: Functor, G: Functor) -> int:
    _check_parallel(F, G)
    return len(_nat_tuples(F, G, bounds().max_enumeration))


def brute_force_functors(W: FinCategory, Y: FinCategory) -> list[tuple]:
    """Unfiltered generate-and-test over every object and morphism map.

    Independent of the kernels; exponential, only for tiny inputs.
    """
    out = []
    for omap in cartesian(range(Y.n_obj), repeat=W.n_obj):
        for mmap in cartesian(range(Y.n_mor), repeat=W.n_mor):
            F = Functor(W, Y, omap, mmap, "")
            try:
                check_functor(F)
            except NotAFunctor:
                continue
            out.append((tuple(omap), tuple(mmap)))
    return out


# -- standard constructions ---------------------------------------------------------


def opposite(c: FinCategory) -> FinCategory:
    m = c.n_mor
    comp = [-1] * (m * m)
    for g in range(m):
        for f in range(m):
            h = c.comp[g * m + f]
            if h >= 0:
                comp[f * m + g] = h
    return FinCategory(f"op({c.name})", c.objects, c.morphisms, c.cod, c.dom, c.ids, comp)


def product_category(a: FinCategory, b: FinCategory) -> FinCategory:
    """``a x b`` with object ``(i, j)`` at index ``i * |b| + j`` (same for morphisms)."""
    na, nb, ma, mb = a.n_obj, b.n_obj, a.n_mor, b.n_mor
    check_size(f"({a.name},{b.name})", na * nb, ma * mb)
    objects = [f"({x},{y})" for x in a.objects for y in b.objects]
    names, dom, cod = [], [], []
    for f in range(ma):
        for g in range(mb):
            if a.is_identity(f) and b.is_identity(g):
                names.append("id_" + objects[a.dom[f] * nb + b.dom[g]])
            else:
                names.append(f"({a.morphisms[f]},{b.morphisms[g]})")
            dom.append(a.dom[f] * nb + b.dom[g])
            cod.append(a.cod[f] * nb + b.cod[g])
    ids = [a.ids[x] * mb + b.ids[y] for x in range(na) for y in range(nb)]
    mm = ma * mb
    comp = [-1] * (mm * mm)
    for f2 in range(ma):
        for f1 in range(ma):
            h1 = a.comp[f2 * ma + f1]
            if h1 < 0:
                continue
            for g2 in range(mb):
                for g1 in range(mb):
                    h2 = b.comp[g2 * mb + g1]
                    if h2 >= 0:
                        comp[(f2 * mb + g2) * mm + (f1 * mb + g1)] = h1 * mb + h2
    return FinCategory(f"({a.name},{b.name})", objects, unique_names(names), dom, cod, ids, comp)


def projection(a: FinCategory, b: FinCategory, side: int) -> Functor:
    p = product_category(a, b)
    nb, mb = b.n_obj, b.n_mor
    if side == 0:
        return Functor(p, a, [i // nb for i in range(p.n_obj)], [m // mb for m in range(p.n_mor)], f"pi1({p.name})")
    return Functor(p, b, [i % nb for i in range(p.n_obj)], [m % mb for m in range(p.n_mor)], f"pi2({p.name})")


def pair_functor(F: Functor, G: Functor) -> Functor:
    """``<F, G>: Z -> A x B``."""
    if F.source != G.source:
        raise NotParallel("pairing needs a common source")
    a, b = F.target, G.target
    p = product_category(a, b)
    return Functor(
        F.source, p,
        [x * b.n_obj + y for x, y in zip(F.omap, G.omap)],
        [f * b.n_mor + g for f, g in zip(F.mmap, G.mmap)],
        f"pair({F.name},{G.name})",
    )


def product_functor(F: Functor, G: Functor) -> Functor:
    """``F x G: A x B -> A' x B'``."""
    src = product_category(F.source, G.source)
    tgt = product_category(F.target, G.target)
    nb, mb = G.source.n_obj, G.source.n_mor
    nb2, mb2 = G.target.n_obj, G.target.n_mor
    return Functor(
        src, tgt,
        [F.omap[i // nb] * nb2 + G.omap[i % nb] for i in range(src.n_obj)],
        [F.mmap[m // mb] * mb2 + G.mmap[m % mb] for m in range(src.n_mor)],
        f"prod({F.name},{G.name})",
    )


def coproduct_category(a: FinCategory, b: FinCategory) -> FinCategory:
    """``a + b``: objects of ``a`` first (``inl:``), then ``b`` (``inr:``)."""
    na, ma, mb = a.n_obj, a.n_mor, b.n_mor
    check_size(f"{a.name}+{b.name}", na + b.n_obj, ma + mb)
    objects = [f"inl:{x}" for x in a.objects] + [f"inr:{y}" for y in b.objects]
    names = []
    for f in range(ma):
        names.append("id_" + objects[a.dom[f]] if a.is_identity(f) else f"inl:{a.morphisms[f]}")
    for g in range(mb):
        names.append("id_" + objects[na + b.dom[g]] if b.is_identity(g) else f"inr:{b.morphisms[g]}")
    dom = list(a.dom) + [na + d for d in b.dom]
    cod = list(a.cod) + [na + d for d in b.cod]
    ids = list(a.ids) + [ma + i for i in b.ids]
    m = ma + mb
    comp = [-1] * (m * m)
    for g in range(ma):
        for f in range(ma):
            comp[g * m + f] = a.comp[g * ma + f]
    for g in range(mb):
        for f in range(mb):
            h = b.comp[g * mb + f]
            comp[(ma + g) * m + ma + f] = h + ma if h >= 0 else -1
    return FinCategory(f"{a.name}+{b.name}", objects, unique_names(names), dom, cod, ids, comp)


def injection(a: FinCategory, b: FinCategory, side: int) -> Functor:
    s = coproduct_category(a, b)
    if side == 0:
        return Functor(a, s, range(a.n_obj), range(a.n_mor), f"inl({s.name})")
    return Functor(
        b, s,
        [a.n_obj + i for i in range(b.n_obj)],
        [a.n_mor + m for m in range(b.n_mor)],
        f"inr({s.name})",
    )


def copair_functor(F: Functor, G: Functor) -> Functor:
    """``[F, G]: A + B -> Z``."""
    if F.target != G.target:
        raise NotParallel("copairing needs a common target")
    s = coproduct_category(F.source, G.source)
    return Functor(s, F.target, F.omap + G.omap, F.mmap + G.mmap, f"copair({F.name},{G.name})")


class FunctorCategory:
    """``Cat[W, Y]`` together with the functors and transformations it indexes."""

    def __init__(self, category: FinCategory, functors, transformations):
        self.category = category
        self.functors = list(functors)
        self.transformations = list(transformations)
        self._fidx = {F: i for i, F in enumerate(self.functors)}
        self._tidx = {t: i for i, t in enumerate(self.transformations)}

    def object_of(self, F: Functor) -> int:
        return self._fidx[F]

    def morphism_of(self, alpha: NatTrans) -> int:
        return self._tidx[alpha]

    def __repr__(self):
        return f"FunctorCategory({self.category!r})"


@lru_cache(maxsize=512)
def functor_category(W: FinCategory, Y: FinCategory) -> FunctorCategory:
    functors = enumerate_functors(W, Y)
    b = bounds()
    if len(functors) > b.max_objects:
        raise SizeLimitExceeded(f"Fun({W.name},{Y.name}) has {len(functors)} objects")
    trans, triples = [], []
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for t in enumerate_nat_trans(F, G):
                trans.append(t)
                triples.append((i, j))
                if len(trans) > b.max_morphisms:
                    raise SizeLimitExceeded(f"Fun({W.name},{Y.name}) exceeds {b.max_morphisms} morphisms")
    index = {(t.source, t.target, t.components): k for k, t in enumerate(trans)}
    ids = [index[(F, F, identity_nat(F).components)] for F in functors]
    names = []
    for k, t in enumerate(trans):
        i, j = triples[k]
        names.append("id_" + functors[i].name if k == ids[i] else t.name)
    for k in ids:
        trans[k] = NatTrans(trans[k].source, trans[k].target, trans[k].components, names[k])

    def compose(g, f):
        v = vcomp(trans[g], trans[f])
        return index[(v.source, v.target, v.components)]

    cat = build_category(
        f"Fun({W.name},{Y.name})",
        [F.name for F in functors],
        [(names[k], triples[k][0], triples[k][1]) for k in range(len(trans))],
        ids,
        compose,
        check=False,
    )
    trans = [NatTrans(t.source, t.target, t.components, cat.morphisms[k]) for k, t in enumerate(trans)]
    functors = [F.renamed(cat.objects[i]) for i, F in enumerate(functors)]
    return FunctorCategory(cat, functors, trans)


def evaluation_functor(W: FinCategory, Y: FinCategory, w: int) -> Functor:
    fc = functor_category(W, Y)
    return Functor(
        fc.category, Y,
        [F.omap[w] for F in fc.functors],
        [t.components[w] for t in fc.transformations],
        f"ev({W.objects[w]})",
    )


def comma_over(f: Functor, y: int) -> tuple[FinCategory, Functor]:
    """The comma category ``f | y`` with its projection to ``W``.

    Objects are pairs ``(w, h: f(w) -> y)``; a morphism ``(w, h) -> (w', h')``
    is ``u: w -> w'`` with ``h' o f(u) = h``.
    """
    W, Y = f.source, f.target
    if not 0 <= y < Y.n_obj:
        raise ObjectNotFound(f"object {y} not in {Y.name}")
    objs = [(w, h) for w in range(W.n_obj) for h in Y.hom(f.omap[w], y)]
    morphs = []
    for i, (w, h) in enumerate(objs):
        for j, (w2, h2) in enumerate(objs):
            for u in W.hom(w, w2):
                if Y.compose(h2, f.mmap[u]) == h:
                    morphs.append((i, j, u))
    midx = {t: k for k, t in enumerate(morphs)}
    onames = [f"({W.objects[w]},{Y.morphisms[h]})" for w, h in objs]
    mlist = []
    for i, j, u in morphs:
        if i == j and W.is_identity(u):
            mlist.append(("id_" + onames[i], i, j))
        else:
            mlist.append((f"({W.morphisms[u]},{Y.morphisms[objs[i][1]]},{Y.morphisms[objs[j][1]]})", i, j))
    ids = [midx[(i, i, W.ids[w])] for i, (w, _) in enumerate(objs)]

    def compose(g, fm):
        i, _, u = morphs[fm]
        _, k, v = morphs[g]
        return midx[(i, k, W.compose(v, u))]

    cat = build_category(f"comma({f.name},{Y.objects[y]})", onames, mlist, ids, compose)
    proj = Functor(cat, W, [w for w, _ in objs], [u for _, _, u in morphs], f"P({cat.name})")
    return cat, proj


# -- isomorphisms and functor properties --------------------------------------------


def inverse(c: FinCategory, m: int) -> int | None:
    for n in c.hom(c.cod[m], c.dom[m]):
        if c.compose(n, m) == c.ids[c.dom[m]] and c.compose(m, n) == c.ids[c.cod[m]]:
            return n
    return None


def is_iso(c: FinCategory, m: int) -> bool:
    return inverse(c, m) is not None


def iso_between(c: FinCategory, x: int, y: int) -> int | None:
    for m in c.hom(x, y):
        if is_iso(c, m):
            return m
    return None


def is_faithful(F: Functor) -> bool:
    W = F.source
    for x in range(W.n_obj):
        for y in range(W.n_obj):
            images = [F.mmap[m] for m in W.hom(x, y)]
            if len(set(images)) != len(images):
                return False
    return True


def is_full(F: Functor) -> bool:
    W, Y = F.source, F.target
    for x in range(W.n_obj):
        for y in range(W.n_obj):
            images = {F.mmap[m] for m in W.hom(x, y)}
            if len(images) != len(Y.hom(F.omap[x], F.omap[y])):
                return False
    return True


def is_fully_faithful(F: Functor) -> bool:
    return is_faithful(F) and is_full(F)


def is_essentially_surjective(F: Functor) -> bool:
    Y = F.target
    image = set(F.omap)
    return all(any(iso_between(Y, x, y) is not None for x in image) for y in range(Y.n_obj))


def is_equivalence(F: Functor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)


def find_isomorphism(a: FinCategory, b: FinCategory) -> Functor | None:
    """Exhaustive search for an isomorphism of categories ``a -> b``."""
    if a.n_obj != b.n_obj or a.n_mor != b.n_mor:
        return None
    if sorted(len(a.hom(x, y)) for x in range(a.n_obj) for y in range(a.n_obj)) != sorted(
        len(b.hom(x, y)) for x in range(b.n_obj) for y in range(b.n_obj)
    ):
        return None
    for F in enumerate_functors(a, b):
        if len(set(F.omap)) == a.n_obj and len(set(F.mmap)) == a.n_mor:
            return F
    return None


def is_thin(c: FinCategory) -> bool:
    return all(len(c.hom(x, y)) <= 1 for x in range(c.n_obj) for y in range(c.n_obj))


def is_skeletal(c: FinCategory) -> bool:
    return all(iso_between(c, x, y) is None for x in range(c.n_obj) for y in range(c.n_obj) if x != y)


# -- small builders -------------------------------------------------------------------


def thin_category(name: str, elements, leq) -> FinCategory:
    """Thin category on ``elements`` with a morphism ``a<=b`` for each pair in ``leq``.

    ``leq`` must already be reflexive and transitive.
    """
    elements = list(elements)
    idx = {e: i for i, e in enumerate(elements)}
    rel = {(idx[a], idx[b]) for a, b in leq}
    n = len(elements)
    pairs = [(i, i) for i in range(n)]
    pairs += [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) in rel]
    pidx = {p: k for k, p in enumerate(pairs)}
    mlist = [
        ("id_" + elements[i] if i == j else f"{elements[i]}<={elements[j]}", i, j) for i, j in pairs
    ]
    ids = [pidx[(i, i)] for i in range(len(elements))]

    def compose(g, f):
        return pidx[(pairs[f][0], pairs[g][1])]

    return build_category(name, elements, mlist, ids, compose)


def free_category(name: str, objects, edges) -> FinCategory:
    """Free category on a finite acyclic graph; ``edges`` are ``(name, src, tgt)``.

    Paths are named by nesting, ``e2(e1)`` for ``e2`` after ``e1``.
    """
    objects = list(objects)
    oidx = {o: i for i, o in enumerate(objects)}
    out_edges: dict[int, list[int]] = {}
    for k, (_, s, _) in enumerate(edges):
        out_edges.setdefault(oidx[s], []).append(k)
    paths: list[tuple[int, tuple[int, ...]]] = [(i, ()) for i in range(len(objects))]
    frontier = list(paths)
    b = bounds()
    while frontier:
        nxt = []
        for start, path in frontier:
            end = oidx[edges[path[-1]][2]] if path else start
            for k in out_edges.get(end, ()):
                p = (start, path + (k,))
                nxt.append(p)
                if len(paths) + len(nxt) > b.max_morphisms:
                    raise SizeLimitExceeded(f"free category {name} exceeds {b.max_morphisms} morphisms")
        paths.extend(nxt)
        frontier = nxt
    paths.sort(key=lambda p: (len(p[1]) > 0, p[0], len(p[1]), p[1]))
    pidx = {p: i for i, p in enumerate(paths)}

    def end_of(p):
        return oidx[edges[p[1][-1]][2]] if p[1] else p[0]

    def pname(p):
        if not p[1]:
            return "id_" + objects[p[0]]
        s = edges[p[1][0]][0]
        for k in p[1][1:]:
            s = f"{edges[k][0]}({s})"
        return s

    mlist = [(pname(p), p[0], end_of(p)) for p in paths]
    ids = [pidx[(i, ())] for i in range(len(objects))]

    def compose(g, f):
        pf, pg = paths[f], paths[g]
        return pidx[(pf[0], pf[1] + pg[1])]

    return build_category(name, objects, mlist, ids, compose)
