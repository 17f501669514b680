"""The lax comma category over a fixed finite base ``X``.

An object is a functor ``a: W -> X``; a morphism ``(W, a) -> (Y, b)`` is a
pair ``(f, gamma)`` of a functor ``f: W -> Y`` and any natural
transformation ``gamma: a => b o f``.  Composition pastes the cells,
``(g, chi) o (f, gamma) = (g o f, (chi * f) . gamma)``.

The category is large, so universal properties are checked on a
:class:`Truncation`: a finite list of objects with *complete* hom-sets
between them.  Verdicts are therefore relative to the listed probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .errors import (
    BijectiveFailure,
    NoInitialObject,
    NotComposable,
    NotParallel,
    NoTerminalObject,
    SizeLimitExceeded,
)
from .config import bounds
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    build_category,
    check_functor,
    check_nat,
    compose_functors,
    constant_functor,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    identity_nat,
    is_identity_nat,
    unique_names,
)
from . import univprop


class Workspace:
    """A base category ``X`` together with the structure chosen in it.

    Chosen (co)limits are the canonically least ones found by the oracle
    and are cached, so every construction over the same ``X`` agrees.
    """

    def __init__(self, X: FinCategory):
        self.X = X
        self._cache: dict[Any, Any] = {}

    def __repr__(self):
        return f"Workspace({self.X.name})"

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def initial(self) -> int:
        z = self._memo("initial", lambda: univprop.find_initial(self.X))
        if z is None:
            raise NoInitialObject(self.X.name)
        return z

    def terminal(self) -> int:
        t = self._memo("terminal", lambda: univprop.find_terminal(self.X))
        if t is None:
            raise NoTerminalObject(self.X.name)
        return t

    def has_initial(self) -> bool:
        return self._memo("initial", lambda: univprop.find_initial(self.X)) is not None

    def has_terminal(self) -> bool:
        return self._memo("terminal", lambda: univprop.find_terminal(self.X)) is not None

    def to_initial(self, x: int) -> int:
        """The unique morphism ``0 -> x``."""
        return self.X.hom(self.initial(), x)[0]

    def to_terminal(self, x: int) -> int:
        return self.X.hom(x, self.terminal())[0]

    def product(self, x: int, y: int):
        return self._memo(("product", x, y), lambda: univprop.find_product(self.X, (x, y)))

    def pullback(self, f: int, g: int):
        return self._memo(("pullback", f, g), lambda: univprop.find_pullback(self.X, f, g))

    def coproduct(self, x: int, y: int):
        return self._memo(("coproduct", x, y), lambda: univprop.find_coproduct(self.X, (x, y)))

    def exponential(self, x: int, y: int):
        return self._memo(("exp", x, y), lambda: univprop.find_exponential(self.X, x, y))


# -- values ------------------------------------------------------------------------------


class LaxObject:
    """``(W, a)`` with ``a: W -> X``."""

    __slots__ = ("structure", "name")

    def __init__(self, structure: Functor, name: str | None = None):
        self.structure = structure
        self.name = name or structure.name

    @property
    def base(self) -> FinCategory:
        return self.structure.source

    @property
    def X(self) -> FinCategory:
        return self.structure.target

    def __eq__(self, other):
        return isinstance(other, LaxObject) and self.structure == other.structure

    def __hash__(self):
        return hash(self.structure)

    def __repr__(self):
        return f"LaxObject({self.base.name}, {self.name})"

    def renamed(self, name: str) -> "LaxObject":
        return LaxObject(self.structure.renamed(name), name)


def lax_object(structure: Functor, name: str | None = None) -> LaxObject:
    check_functor(structure)
    return LaxObject(structure, name)


class LaxMorphism:
    """``(f, gamma): (W, a) -> (Y, b)`` with ``gamma: a => b o f``."""

    __slots__ = ("dom", "cod", "functor", "cell", "_hash")

    def __init__(self, dom: LaxObject, cod: LaxObject, functor: Functor, cell: NatTrans):
        self.dom = dom
        self.cod = cod
        self.functor = functor
        self.cell = cell
        self._hash = None

    def _key(self):
        return (self.dom, self.cod, self.functor.omap, self.functor.mmap, self.cell.components)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, LaxMorphism) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        X = self.dom.X
        comps = ",".join(X.morphisms[c] for c in self.cell.components)
        return f"LaxMorphism({self.dom.name} -> {self.cod.name}, f={self.functor.name}, [{comps}])"

    @property
    def components(self) -> tuple[int, ...]:
        return self.cell.components


def _cell(a: Functor, b: Functor, f: Functor, comps) -> NatTrans:
    return NatTrans(a, compose_functors(b, f), comps)


def lax_morphism(dom: LaxObject, cod: LaxObject, f: Functor, components) -> LaxMorphism:
    """Build and check ``(f, gamma)`` from the components of ``gamma``."""
    if f.source != dom.base or f.target != cod.base:
        raise NotComposable(f"{f.name} does not go from {dom.base.name} to {cod.base.name}")
    check_functor(f)
    cell = check_nat(_cell(dom.structure, cod.structure, f, components))
    return LaxMorphism(dom, cod, f, cell)


def compose_lax(g: LaxMorphism, f: LaxMorphism) -> LaxMorphism:
    """``(g, chi) o (f, gamma)``: components ``chi_{f w} o gamma_w``."""
    if f.cod != g.dom:
        raise NotComposable(f"{g.dom.name} is not {f.cod.name}")
    X = f.dom.X
    fw = f.functor.omap
    comps = [X.compose(g.cell.components[fw[w]], f.cell.components[w]) for w in range(len(fw))]
    h = compose_functors(g.functor, f.functor)
    return LaxMorphism(f.dom, g.cod, h, NatTrans(f.dom.structure, compose_functors(g.cod.structure, h), comps))


def identity_lax(o: LaxObject) -> LaxMorphism:
    """``(id_W, id_a)``."""
    idf = identity_functor(o.base)
    return LaxMorphism(o, o, idf, NatTrans(o.structure, compose_functors(o.structure, idf),
                                           identity_nat(o.structure).components))


def is_strict(m: LaxMorphism) -> bool:
    return is_identity_nat(m.cell)


def strict_morphism(dom: LaxObject, cod: LaxObject, f: Functor) -> LaxMorphism:
    """``(f, id)``; needs ``a = b o f``."""
    X = dom.X
    return lax_morphism(dom, cod, f, [X.ids[x] for x in dom.structure.omap])


def enumerate_lax_hom(dom: LaxObject, cod: LaxObject) -> list[LaxMorphism]:
    """All ``(f, gamma)``, functors in canonical order, then cells."""
    out = []
    for f in enumerate_functors(dom.base, cod.base):
        bf = compose_functors(cod.structure, f)
        for gamma in enumerate_nat_trans(dom.structure, bf):
            out.append(LaxMorphism(dom, cod, f, gamma))
            if len(out) > bounds().max_enumeration:
                raise SizeLimitExceeded(f"hom({dom.name}, {cod.name}) is too large")
    return out


# -- 2-cells -----------------------------------------------------------------------------


@dataclass(frozen=True)
class LaxTwoCell:
    """``zeta: f => f'`` between parallel ``(f, gamma), (f', gamma')``."""

    dom: LaxMorphism
    cod: LaxMorphism
    cell: NatTrans


def two_cell_check(z: LaxTwoCell) -> bool:
    """``b(zeta_w) o gamma_w = gamma'_w`` for every ``w``."""
    m1, m2 = z.dom, z.cod
    if m1.dom != m2.dom or m1.cod != m2.cod:
        raise NotParallel("2-cell between non-parallel lax morphisms")
    if z.cell.source != m1.functor or z.cell.target != m2.functor:
        raise NotParallel("2-cell does not go between the underlying functors")
    X = m1.dom.X
    b = m1.cod.structure
    return all(
        X.compose(b.mmap[z.cell.components[w]], m1.cell.components[w]) == m2.cell.components[w]
        for w in range(m1.dom.base.n_obj)
    )


def enumerate_two_cells(m1: LaxMorphism, m2: LaxMorphism) -> list[LaxTwoCell]:
    out = []
    for zeta in enumerate_nat_trans(m1.functor, m2.functor):
        z = LaxTwoCell(m1, m2, zeta)
        if two_cell_check(z):
            out.append(z)
    return out


# -- the fibration and its adjoints ---------------------------------------------------------


def U(v):
    """Forget the structure: ``(W, a) -> W`` and ``(f, gamma) -> f``."""
    if isinstance(v, LaxObject):
        return v.base
    if isinstance(v, LaxMorphism):
        return v.functor
    raise TypeError(type(v).__name__)


def L(ws: Workspace, v):
    """Left adjoint of ``U``: ``W -> (W, const 0)``, ``f -> (f, iota)``."""
    z = ws.initial()
    if isinstance(v, FinCategory):
        return LaxObject(constant_functor(v, ws.X, z), f"L({v.name})")
    if isinstance(v, Functor):
        dom, cod = L(ws, v.source), L(ws, v.target)
        return LaxMorphism(dom, cod, v, _cell(dom.structure, cod.structure, v, [ws.X.ids[z]] * v.source.n_obj))
    raise TypeError(type(v).__name__)


def R(ws: Workspace, v):
    """Right adjoint of ``U``: ``W -> (W, const 1)``."""
    t = ws.terminal()
    if isinstance(v, FinCategory):
        return LaxObject(constant_functor(v, ws.X, t), f"R({v.name})")
    if isinstance(v, Functor):
        dom, cod = R(ws, v.source), R(ws, v.target)
        return LaxMorphism(dom, cod, v, _cell(dom.structure, cod.structure, v, [ws.X.ids[t]] * v.source.n_obj))
    raise TypeError(type(v).__name__)


def iota(ws: Workspace, o: LaxObject) -> LaxMorphism:
    """``(id, iota_b): LU(Y, b) -> (Y, b)``, the counit of ``L -| U``."""
    Y = o.base
    dom = L(ws, Y)
    comps = [ws.to_initial(x) for x in o.structure.omap]
    return LaxMorphism(dom, o, identity_functor(Y), _cell(dom.structure, o.structure, identity_functor(Y), comps))


def bang(ws: Workspace, o: LaxObject) -> LaxMorphism:
    """``(id, !): (W, a) -> RU(W, a)``, the unit of ``U -| R``."""
    W = o.base
    cod = R(ws, W)
    comps = [ws.to_terminal(x) for x in o.structure.omap]
    return LaxMorphism(o, cod, identity_functor(W), _cell(o.structure, cod.structure, identity_functor(W), comps))


def cartesian_lift(cod: LaxObject, f: Functor) -> LaxMorphism:
    """``(W, b o f) --(f, id)--> (Y, b)``."""
    bf = compose_functors(cod.structure, f)
    dom = LaxObject(bf, f"{cod.name}({f.name})")
    return LaxMorphism(dom, cod, f, NatTrans(bf, bf, identity_nat(bf).components))


def vertical_part(m: LaxMorphism) -> LaxMorphism:
    """``(id, gamma): (W, a) -> (W, b o f)``; ``m`` is the lift after this."""
    lift = cartesian_lift(m.cod, m.functor)
    W = m.dom.base
    idf = identity_functor(W)
    return LaxMorphism(m.dom, lift.dom, idf, NatTrans(m.dom.structure, compose_functors(lift.dom.structure, idf),
                                                      m.cell.components))


# -- finite windows ---------------------------------------------------------------------------


class Truncation:
    """Finitely many objects of the lax comma category with all morphisms between them.

    Category-like: usable directly by the :mod:`laxcat.univprop` oracles.
    """

    def __init__(self, objects, workspace: Workspace | None = None):
        objs: list[LaxObject] = []
        for o in objects:
            if o not in objs:
                objs.append(o)
        self.objs = objs
        self.workspace = workspace
        self.objects = tuple(unique_names([o.name for o in objs]))
        self.n_obj = len(objs)
        self._index = {o: i for i, o in enumerate(objs)}
        self._homs: dict[tuple[int, int], tuple[LaxMorphism, ...]] = {}
        self._comp: dict[tuple[LaxMorphism, LaxMorphism], LaxMorphism] = {}

    def __repr__(self):
        return f"Truncation({', '.join(self.objects)})"

    def index(self, o: LaxObject) -> int:
        return self._index[o]

    def hom(self, i: int, j: int) -> tuple[LaxMorphism, ...]:
        key = (i, j)
        if key not in self._homs:
            self._homs[key] = tuple(enumerate_lax_hom(self.objs[i], self.objs[j]))
        return self._homs[key]

    def compose(self, g: LaxMorphism, f: LaxMorphism) -> LaxMorphism:
        key = (g, f)
        r = self._comp.get(key)
        if r is None:
            r = self._comp[key] = compose_lax(g, f)
        return r

    def identity(self, i: int) -> LaxMorphism:
        return identity_lax(self.objs[i])

    def ends(self, m: LaxMorphism) -> tuple[int, int]:
        return self._index[m.dom], self._index[m.cod]

    def size(self) -> int:
        return sum(len(self.hom(i, j)) for i in range(self.n_obj) for j in range(self.n_obj))

    def to_fincategory(self, name: str = "T") -> tuple[FinCategory, list[LaxMorphism]]:
        """The window as an ordinary finite category, with its morphism list."""
        morphs: list[LaxMorphism] = []
        for i in range(self.n_obj):
            for j in range(self.n_obj):
                morphs.extend(self.hom(i, j))
        idx = {m: k for k, m in enumerate(morphs)}
        ids = [idx[self.identity(i)] for i in range(self.n_obj)]
        names = [f"m{k}" for k in range(len(morphs))]
        for i, k in enumerate(ids):
            names[k] = "id_" + self.objects[i]
        return build_category(
            name,
            self.objects,
            [(names[k], self._index[m.dom], self._index[m.cod]) for k, m in enumerate(morphs)],
            ids,
            lambda g, f: idx[compose_lax(morphs[g], morphs[f])],
        ), morphs


def probe_objects(ws: Workspace, bases=None, limit: int = 3) -> list[LaxObject]:
    """Canonical extra objects: structures on small bases, in enumeration order.

    The first ``limit`` objects of the sequence ``(One, x)`` for ``x`` in
    ``X``, then ``(Two, a)`` and ``(One+One, a)`` for each structure ``a``.
    """
    from . import fixtures

    bases = bases if bases is not None else [fixtures.one(), fixtures.arrow(), fixtures.two_points()]
    out: list[LaxObject] = []
    for W in bases:
        for a in enumerate_functors(W, ws.X):
            out.append(LaxObject(a, f"{W.name}:{a.name}"))
            if len(out) >= limit:
                return out
    return out


# -- adjunctions -----------------------------------------------------------------------------


class World:
    """Hom-sets, composition and identities of one side of an adjunction."""

    def __init__(self, hom: Callable, compose: Callable, identity: Callable, name: str = ""):
        self.hom = hom
        self.compose = compose
        self.identity = identity
        self.name = name


CAT = World(enumerate_functors, compose_functors, identity_functor, "Cat")
LAX = World(enumerate_lax_hom, compose_lax, identity_lax, "Cat//X")


@dataclass
class Adjunction:
    """``left -| right`` between worlds ``C`` (domain of ``left``) and ``D``."""

    name: str
    C: World
    D: World
    left_obj: Callable
    left_mor: Callable
    right_obj: Callable
    right_mor: Callable
    unit: Callable  # c -> (c -> right(left(c)))
    counit: Callable  # d -> (left(right(d)) -> d)


def adjunction_L_U(ws: Workspace) -> Adjunction:
    return Adjunction(
        "L -| U", CAT, LAX,
        lambda W: L(ws, W), lambda f: L(ws, f),
        U, U,
        identity_functor,
        lambda o: iota(ws, o),
    )


def adjunction_U_R(ws: Workspace) -> Adjunction:
    return Adjunction(
        "U -| R", LAX, CAT,
        U, U,
        lambda W: R(ws, W), lambda f: R(ws, f),
        lambda o: bang(ws, o),
        identity_functor,
    )


def verify_adjunction(adj: Adjunction, c_probes, d_probes) -> bool:
    """Check the adjunction on finite probe sets; raise on the first failure.

    For every ``c``, ``d``: ``h -> right(h) o unit_c`` is a bijection
    ``D(left c, d) -> C(c, right d)`` (counts and injectivity), natural in
    both variables along every probe morphism; unit and counit are natural
    and satisfy both triangle identities.
    """
    C, D = adj.C, adj.D
    c_probes, d_probes = list(c_probes), list(d_probes)

    def phi(c, h):
        return C.compose(adj.right_mor(h), adj.unit(c))

    for c in c_probes:
        Lc = adj.left_obj(c)
        for d in d_probes:
            lhs = D.hom(Lc, d)
            rhs = C.hom(c, adj.right_obj(d))
            images = [phi(c, h) for h in lhs]
            if len(lhs) != len(rhs) or len(set(images)) != len(images) or set(images) != set(rhs):
                raise BijectiveFailure(
                    f"{adj.name}: hom bijection fails ({len(lhs)} vs {len(rhs)})", (c, d)
                )
    # naturality of the bijection in c and in d
    for c in c_probes:
        for c2 in c_probes:
            for u in C.hom(c2, c):
                Lu = adj.left_mor(u)
                for d in d_probes:
                    for h in D.hom(adj.left_obj(c), d):
                        if phi(c2, D.compose(h, Lu)) != C.compose(phi(c, h), u):
                            raise BijectiveFailure(f"{adj.name}: not natural in the left variable", (c2, c, d))
    for d in d_probes:
        for d2 in d_probes:
            for k in D.hom(d, d2):
                Rk = adj.right_mor(k)
                for c in c_probes:
                    for h in D.hom(adj.left_obj(c), d):
                        if phi(c, D.compose(k, h)) != C.compose(Rk, phi(c, h)):
                            raise BijectiveFailure(f"{adj.name}: not natural in the right variable", (c, d, d2))
    # unit and counit naturality
    for c in c_probes:
        for c2 in c_probes:
            for u in C.hom(c2, c):
                RLu = adj.right_mor(adj.left_mor(u))
                if C.compose(RLu, adj.unit(c2)) != C.compose(adj.unit(c), u):
                    raise BijectiveFailure(f"{adj.name}: unit not natural", (c2, c))
    for d in d_probes:
        for d2 in d_probes:
            for k in D.hom(d, d2):
                LRk = adj.left_mor(adj.right_mor(k))
                if D.compose(k, adj.counit(d)) != D.compose(adj.counit(d2), LRk):
                    raise BijectiveFailure(f"{adj.name}: counit not natural", (d, d2))
    # triangle identities
    for c in c_probes:
        Lc = adj.left_obj(c)
        if D.compose(adj.counit(Lc), adj.left_mor(adj.unit(c))) != D.identity(Lc):
            raise BijectiveFailure(f"{adj.name}: first triangle identity fails", (c,))
    for d in d_probes:
        Rd = adj.right_obj(d)
        if C.compose(adj.right_mor(adj.counit(d)), adj.unit(Rd)) != C.identity(Rd):
            raise BijectiveFailure(f"{adj.name}: second triangle identity fails", (d,))
    return True


def verify_cartesian(lift: LaxMorphism, trunc: Truncation) -> bool:
    """Every ``m`` into ``lift.cod`` whose functor is ``f o k`` factors uniquely over ``k``."""
    f = lift.functor
    for i in range(trunc.n_obj):
        src = trunc.objs[i]
        for m in enumerate_lax_hom(src, lift.cod):
            for k in enumerate_functors(src.base, lift.dom.base):
                if compose_functors(f, k) != m.functor:
                    continue
                over_k = [n for n in enumerate_lax_hom(src, lift.dom) if n.functor == k]
                hits = [n for n in over_k if compose_lax(lift, n) == m]
                if len(hits) != 1:
                    return False
    return True


# -- serialization -----------------------------------------------------------------------------


def lax_documents(v, name: str = "a") -> list:
    """Values whose documents together describe a lax object or morphism."""
    if isinstance(v, LaxObject):
        return [v.base, v.structure.renamed(name)]
    if isinstance(v, LaxMorphism):
        a = v.dom.structure.renamed(f"{name}_dom")
        b = v.cod.structure.renamed(f"{name}_cod")
        f = v.functor.renamed(f"{name}_f")
        bf = compose_functors(b, f).renamed(f"{b.name} . {f.name}")
        cell = NatTrans(a, bf, v.cell.components, f"{name}_cell")
        return [v.dom.base, v.cod.base, a, b, f, cell]
    raise TypeError(type(v).__name__)


__all__ = [
    "Adjunction", "CAT", "LAX", "L", "LaxMorphism", "LaxObject", "LaxTwoCell", "R", "Truncation", "U",
    "Workspace", "World", "adjunction_L_U", "adjunction_U_R", "bang", "cartesian_lift", "compose_lax",
    "enumerate_lax_hom", "enumerate_two_cells", "identity_lax", "iota", "is_strict", "lax_documents",
    "lax_morphism", "lax_object", "probe_objects", "strict_morphism", "two_cell_check", "vertical_part",
    "verify_adjunction", "verify_cartesian",
]
