"""Property checkers producing :class:`CheckReport` verdicts.

Every report is byte-stable: witnesses are rendered by name in canonical
order, and the measured timing is kept out of both renderings unless asked
for.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import fixtures, univprop
from .descent import (
    Grade,
    classify_descent,
    is_regular_epi,
    pullbacks_of,
    verify_L_pullback_zero,
    verify_LU_pullback,
)
from .errors import (
    BijectiveFailure,
    CoequalizerNotFiniteWithinBound,
    MissingColimit,
    MissingLimit,
    ShapeMismatch,
    StrictInitialMissing,
)
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    compose_functors,
    copair_functor,
    enumerate_functors,
    identity_functor,
    is_thin,
    iso_between,
)
from .laxcomma import (
    L,
    LaxMorphism,
    LaxObject,
    Workspace,
    adjunction_L_U,
    adjunction_U_R,
    compose_lax,
    enumerate_lax_hom,
    identity_lax,
    probe_objects,
    verify_adjunction,
)
from .laxstruct import coproduct_laxcomma, pullback_laxcomma
from .univprop import tuple_into

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
EXIT_CODES = {PASS: 0, FAIL: 1, SKIPPED: 2}


@dataclass
class CheckReport:
    name: str
    verdict: str
    reason: str = ""
    witnesses: tuple = ()
    probes: tuple = ()
    timing: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.verdict not in EXIT_CODES:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError("a failing report needs a witness")
        if self.verdict == SKIPPED and not self.reason:
            raise ValueError("a skipped report needs the unmet hypothesis")
        self.witnesses = tuple(self.witnesses)
        self.probes = tuple(self.probes)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "name": self.name,
            "verdict": self.verdict,
            "reason": self.reason,
            "witnesses": list(self.witnesses),
            "probes": list(self.probes),
        }
        if timing:
            d["timing"] = round(self.timing, 6)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2)

    def render(self, timing: bool = False) -> str:
        lines = [f"check {self.name}: {self.verdict}"]
        if self.reason:
            lines.append(f"  reason: {self.reason}")
        lines += [f"  witness: {w}" for w in self.witnesses]
        if self.probes:
            lines.append(f"  probes: {', '.join(self.probes)}")
        if timing:
            lines.append(f"  timing: {self.timing:.3f}s")
        return "\n".join(lines)


def _timed(fn):
    def run(*args, **kwargs) -> CheckReport:
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.timing = time.perf_counter() - t0
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def run_batch(tasks, jobs: int = 1) -> list:
    """Run zero-argument callables, results in input order."""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _names(objs) -> tuple[str, ...]:
    return tuple(o.name for o in objs)


# -- lattice properties ------------------------------------------------------------------------


@_timed
def check_lattice(X: FinCategory) -> CheckReport:
    if univprop.complete_lattice_check(X):
        return CheckReport("lattice", PASS)
    return CheckReport("lattice", FAIL, witnesses=_lattice_witness(X))


def _lattice_witness(X: FinCategory) -> tuple[str, ...]:
    if X.n_obj == 0:
        return ("empty category: no top or bottom",)
    if not is_thin(X):
        for x in range(X.n_obj):
            for y in range(X.n_obj):
                h = X.hom(x, y)
                if len(h) > 1:
                    return (f"parallel morphisms {X.morphisms[h[0]]}, {X.morphisms[h[1]]}",)
    for x in range(X.n_obj):
        for y in range(x + 1, X.n_obj):
            if iso_between(X, x, y) is not None:
                return (f"isomorphic distinct objects {X.objects[x]}, {X.objects[y]}",)
    gap = univprop.missing_meet(X)
    if gap == ():
        return ("no top element",)
    if gap is not None:
        return (f"no meet of {X.objects[gap[0]]}, {X.objects[gap[1]]}",)
    if univprop.find_initial(X) is None:
        return ("no bottom element",)
    for x in range(X.n_obj):
        for y in range(x + 1, X.n_obj):
            if univprop.find_coproduct(X, (x, y)) is None:
                return (f"no join of {X.objects[x]}, {X.objects[y]}",)
    return ("not a complete lattice",)


@_timed
def check_strict_initial(X: FinCategory) -> CheckReport:
    z = univprop.find_initial(X)
    if z is None:
        return CheckReport("strict-initial", SKIPPED, reason=f"{X.name} has no initial object")
    for m in range(X.n_mor):
        if X.cod[m] == z and iso_between(X, X.dom[m], z) is None:
            return CheckReport("strict-initial", FAIL, witnesses=(f"{X.morphisms[m]}: {X.objects[X.dom[m]]} -> {X.objects[z]} is not invertible",))
    return CheckReport("strict-initial", PASS)


# -- topologicity ----------------------------------------------------------------------------


@dataclass(frozen=True)
class InitialLift:
    obj: LaxObject
    morphisms: tuple


def initial_lift(ws: Workspace, W: FinCategory, sources) -> InitialLift:
    """The initial lift of ``(f_i: W -> Y_i, (Y_i, b_i))``: ``a(w) = prod_i b_i(f_i w)``."""
    X = ws.X
    sources = list(sources)
    for f, o in sources:
        if f.source != W or f.target != o.base:
            raise ShapeMismatch(f"{f.name} does not go from {W.name} to {o.base.name}")
    cones = []
    for w in range(W.n_obj):
        cones.append(univprop.iterated_product(X, [o.structure.omap[f.omap[w]] for f, o in sources]))
    mmap = []
    for u in range(W.n_mor):
        (sa, sl), (ta, tl) = cones[W.dom[u]], cones[W.cod[u]]
        comps = [X.compose(o.structure.mmap[f.mmap[u]], sl[i]) for i, (f, o) in enumerate(sources)]
        mmap.append(tuple_into(X, ta, tl, sa, comps))
    name = "lift(" + ",".join(o.name for _, o in sources) + ")"
    a = Functor(W, X, [c[0] for c in cones], mmap, name)
    obj = LaxObject(a, name)
    morphisms = []
    for i, (f, o) in enumerate(sources):
        cell = NatTrans(a, compose_functors(o.structure, f), [cones[w][1][i] for w in range(W.n_obj)])
        morphisms.append(LaxMorphism(obj, o, f, cell))
    return InitialLift(obj, tuple(morphisms))


def verify_initial_lift(lift: InitialLift, sources, probes) -> tuple | None:
    """``None`` if initial against every probe; otherwise a witness ``(probe, g)``.

    For a probe ``(Z, c)`` and ``g: Z -> W``, the lax morphisms over ``g``
    into the lift must correspond bijectively, by postcomposition, to
    families of lax morphisms over ``f_i g`` into the sources.
    """
    W = lift.obj.base
    for p in probes:
        outs = [enumerate_lax_hom(p, o) for _, o in sources]
        into = enumerate_lax_hom(p, lift.obj)
        for g in enumerate_functors(p.base, W):
            fams = []
            for (f, _), hs in zip(sources, outs):
                fams.append([h for h in hs if h.functor == compose_functors(f, g)])
            expected = 1
            for fam in fams:
                expected *= len(fam)
            over = [m for m in into if m.functor == g]
            images = {tuple(compose_lax(l, m) for l in lift.morphisms) for m in over}
            if len(over) != expected or len(images) != expected:
                return (p, g)
    return None


def _family_suite(ws: Workspace, budget: int):
    X = ws.X
    one, two = fixtures.one(), fixtures.arrow()
    suite = [(one, [])]
    for W in (one, two):
        objs = [LaxObject(a, f"{W.name}:{a.name}") for a in enumerate_functors(W, X)]
        idW = identity_functor(W)
        for o in objs:
            suite.append((W, [(idW, o)]))
        for i, o in enumerate(objs):
            for o2 in objs[i + 1:]:
                suite.append((W, [(idW, o), (idW, o2)]))
    # sources along a non-identity functor
    for o in [LaxObject(a, f"Two:{a.name}") for a in enumerate_functors(two, X)]:
        for f in enumerate_functors(one, two):
            suite.append((one, [(f, o)]))
    return suite[:budget]


def _family_label(W: FinCategory, sources) -> str:
    if not sources:
        return f"empty family over {W.name}"
    return f"family over {W.name}: " + ", ".join(f"{f.name} to {o.name}" for f, o in sources)


@_timed
def check_topologicity(X: FinCategory, budget: int = 40, probes: int = 3) -> CheckReport:
    """Finite-scale verdict: complete lattice, corroborated by computing initial lifts."""
    ws = Workspace(X)
    lattice = univprop.complete_lattice_check(X)
    reason = "finite-scale verdict"
    if not lattice:
        if X.n_obj and not is_thin(X):
            return CheckReport("topologicity", FAIL, reason, _lattice_witness(X) + ("U is not faithful",))
        gap = univprop.missing_meet(X)
        if gap is not None:
            W = fixtures.one()
            idW = identity_functor(W)
            sources = [(idW, LaxObject(Functor(W, X, [x], [X.ids[x]], f"const({X.objects[x]})"), f"One:{X.objects[x]}")) for x in gap]
            try:
                initial_lift(ws, W, sources)
            except MissingLimit:
                return CheckReport("topologicity", FAIL, reason, (f"no initial lift: {_family_label(W, sources)}",))
            return CheckReport("topologicity", FAIL, reason, (f"lift unexpectedly found for {_family_label(W, sources)}",))
        return CheckReport("topologicity", FAIL, reason, _lattice_witness(X))
    pr = probe_objects(ws, limit=probes)
    for W, sources in _family_suite(ws, budget):
        try:
            lift = initial_lift(ws, W, sources)
        except MissingLimit as e:
            return CheckReport("topologicity", FAIL, reason, (f"{e} for {_family_label(W, sources)}",), _names(pr))
        bad = verify_initial_lift(lift, sources, pr)
        if bad is not None:
            return CheckReport("topologicity", FAIL, reason,
                               (f"lift of {_family_label(W, sources)} not initial against {bad[0].name} via {bad[1].name}",), _names(pr))
    return CheckReport("topologicity", PASS, reason, probes=_names(pr))


# -- extensivity ---------------------------------------------------------------------------------


def copair_lax(m1: LaxMorphism, m2: LaxMorphism, dom: LaxObject) -> LaxMorphism:
    """``[m1, m2]`` out of the chosen coproduct ``dom`` of their domains."""
    f = copair_functor(m1.functor, m2.functor)
    cod = m1.cod
    return LaxMorphism(dom, cod, f, NatTrans(dom.structure, compose_functors(cod.structure, f),
                                             list(m1.components) + list(m2.components)))


def extensivity_failure(ws: Workspace, m: LaxMorphism, o1: LaxObject, o2: LaxObject) -> str | None:
    """``None`` when the coproduct ``o1 + o2`` is extensive at ``m``, else a description."""
    cp = coproduct_laxcomma(ws, o1, o2)
    if m.cod != cp.obj:
        raise ShapeMismatch("instance does not land in the coproduct")
    p1 = pullback_laxcomma(ws, m, cp.legs[0])
    p2 = pullback_laxcomma(ws, m, cp.legs[1])
    sum_ = coproduct_laxcomma(ws, p1.obj, p2.obj)
    cmp = copair_lax(p1.legs[0], p2.legs[0], sum_.obj)
    back = enumerate_lax_hom(m.dom, sum_.obj)
    if not any(compose_lax(k, cmp) == identity_lax(sum_.obj) and compose_lax(cmp, k) == identity_lax(m.dom) for k in back):
        return f"comparison from the sum of pullbacks into {m.dom.name} is not invertible"
    disj = pullback_laxcomma(ws, cp.legs[0], cp.legs[1])
    if disj.obj.base.n_obj:
        return "the injections are not disjoint"
    return None


def extensivity_suite(ws: Workspace, limit: int = 24):
    """``(m, o1, o2)`` with ``m`` ranging over lax morphisms from probes into ``o1 + o2``."""
    objs = probe_objects(ws, limit=4)
    out = []
    for i, o1 in enumerate(objs):
        for o2 in objs[i:]:
            cp = coproduct_laxcomma(ws, o1, o2).obj
            for src in objs[:3]:
                for m in enumerate_lax_hom(src, cp):
                    out.append((m, o1, o2))
    return out[:limit]


@_timed
def check_extensivity(ws: Workspace, instances=None) -> CheckReport:
    try:
        ws.initial()
    except MissingColimit as e:
        return CheckReport("extensivity", SKIPPED, reason=str(e))
    instances = list(instances) if instances is not None else extensivity_suite(ws)
    for m, o1, o2 in instances:
        bad = extensivity_failure(ws, m, o1, o2)
        if bad:
            return CheckReport("extensivity", FAIL, witnesses=(f"{m.dom.name} -> {o1.name}+{o2.name}: {bad}",))
    return CheckReport("extensivity", PASS, witnesses=(), probes=tuple(
        f"{m.dom.name} -> {o1.name}+{o2.name}" for m, o1, o2 in instances))


# -- adjunctions ----------------------------------------------------------------------------------


def small_categories() -> list[FinCategory]:
    return [fixtures.empty(), fixtures.one(), fixtures.arrow(), fixtures.two_points()]


@_timed
def check_adjunctions(ws: Workspace, probes: int = 4) -> CheckReport:
    """``L -| U -| R`` on a window of ``probes`` lax objects and four small categories."""
    objs = probe_objects(ws, bases=[fixtures.one(), fixtures.arrow()], limit=probes)
    cats = small_categories()
    try:
        ws.initial()
        ws.terminal()
    except MissingLimit as e:
        return CheckReport("adjunctions", SKIPPED, reason=str(e))
    except MissingColimit as e:
        return CheckReport("adjunctions", SKIPPED, reason=str(e))
    try:
        verify_adjunction(adjunction_L_U(ws), cats, objs)
        verify_adjunction(adjunction_U_R(ws), objs, cats)
    except BijectiveFailure as e:
        return CheckReport("adjunctions", FAIL, witnesses=(str(e),), probes=_names(objs))
    return CheckReport("adjunctions", PASS, probes=_names(objs) + tuple(c.name for c in cats))


# -- descent ------------------------------------------------------------------------------------------


@_timed
def check_descent(C: FinCategory) -> CheckReport:
    """Classify every morphism with the needed pullbacks and cross-check the grades."""
    lines, problems = [], []
    grades = {}
    for q in range(C.n_mor):
        try:
            dc = classify_descent(C, q)
        except MissingLimit as e:
            lines.append(f"{C.morphisms[q]}: skipped ({e})")
            continue
        grades[q] = dc.grade
        lines.append(dc.render())
        if dc.grade >= Grade.EFFECTIVE and not (dc.equivalence and dc.fully_faithful and dc.faithful):
            problems.append(f"{dc.q}: effective without an equivalence")
        if dc.grade >= Grade.DESCENT and not (dc.fully_faithful and dc.faithful):
            problems.append(f"{dc.q}: descent without full faithfulness")
        if dc.grade >= Grade.ALMOST and not dc.faithful:
            problems.append(f"{dc.q}: almost descent without faithfulness")
        if C.is_identity(q) and dc.grade != Grade.EFFECTIVE:
            problems.append(f"{dc.q}: identity not effective")
        if dc.grade == Grade.EFFECTIVE and is_regular_epi(C, q) is False:
            problems.append(f"{dc.q}: effective but not a regular epimorphism")
    for q, g in grades.items():
        if g != Grade.EFFECTIVE:
            continue
        for h, q2 in pullbacks_of(C, q):
            try:
                g2 = classify_descent(C, q2).grade
            except MissingLimit:
                continue
            if g2 != Grade.EFFECTIVE:
                problems.append(f"pullback of {C.morphisms[q]} along {C.morphisms[h]} is {g2.label}")
    if problems:
        return CheckReport("descent-classify", FAIL, witnesses=tuple(problems))
    return CheckReport("descent-classify", PASS, witnesses=tuple(lines))


def lax_morphism_suite(ws: Workspace, limit: int = 24) -> list[LaxMorphism]:
    objs = probe_objects(ws, bases=[fixtures.one(), fixtures.arrow()], limit=8)
    out = []
    for o in objs:
        for o2 in objs:
            out.extend(enumerate_lax_hom(o, o2))
    return out[:limit]


@_timed
def check_lu_pullback(ws: Workspace, morphisms=None) -> CheckReport:
    try:
        if not (ws.has_initial() and univprop.strict_initial_check(ws.X)):
            raise StrictInitialMissing(ws.X.name)
        ms = list(morphisms) if morphisms is not None else lax_morphism_suite(ws)
        for m in ms:
            if not verify_LU_pullback(ws, m):
                return CheckReport("lu-pullback", FAIL, witnesses=(repr(m),))
    except StrictInitialMissing as e:
        return CheckReport("lu-pullback", SKIPPED, reason=f"no strict initial object in {e}")
    except (MissingLimit, MissingColimit) as e:
        return CheckReport("lu-pullback", SKIPPED, reason=str(e))
    return CheckReport("lu-pullback", PASS, probes=tuple(f"{m.dom.name} -> {m.cod.name}" for m in ms))


def l_pullback_suite(ws: Workspace, limit: int = 24) -> list[tuple[Functor, LaxMorphism]]:
    cats = [fixtures.one(), fixtures.arrow(), fixtures.two_points()]
    objs = probe_objects(ws, bases=[fixtures.one(), fixtures.arrow()], limit=8)
    out = []
    for E in cats:
        for B in cats:
            LB = L(ws, B)
            for p in enumerate_functors(E, B):
                for o in objs + [L(ws, c) for c in cats]:
                    for m in enumerate_lax_hom(o, LB):
                        out.append((p, m))
    return out[:limit]


@_timed
def check_l_pullback_zero(ws: Workspace, instances=None) -> CheckReport:
    try:
        if not (ws.has_initial() and univprop.strict_initial_check(ws.X)):
            raise StrictInitialMissing(ws.X.name)
        inst = list(instances) if instances is not None else l_pullback_suite(ws)
        for p, m in inst:
            if not verify_L_pullback_zero(ws, p, m):
                return CheckReport("l-pullback-zero", FAIL, witnesses=(f"{p.name} against {m!r}",))
    except StrictInitialMissing as e:
        return CheckReport("l-pullback-zero", SKIPPED, reason=f"no strict initial object in {e}")
    except (MissingLimit, MissingColimit) as e:
        return CheckReport("l-pullback-zero", SKIPPED, reason=str(e))
    return CheckReport("l-pullback-zero", PASS, probes=tuple(f"{p.name} against {m.dom.name}" for p, m in inst))


def hypothesis_error(e: Exception) -> bool:
    """Errors that mean a hypothesis of a construction is unmet."""
    return isinstance(e, (MissingLimit, MissingColimit, StrictInitialMissing, CoequalizerNotFiniteWithinBound))


__all__ = [
    "CheckReport", "EXIT_CODES", "FAIL", "InitialLift", "PASS", "SKIPPED", "check_adjunctions",
    "check_descent", "check_extensivity", "check_l_pullback_zero", "check_lattice", "check_lu_pullback",
    "check_strict_initial", "check_topologicity", "copair_lax", "extensivity_failure", "extensivity_suite",
    "hypothesis_error", "initial_lift", "l_pullback_suite", "lax_morphism_suite", "run_batch",
    "small_categories", "verify_initial_lift",
]
