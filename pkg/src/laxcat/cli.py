"""Command-line interface: ``laxcat validate|compute|check|oracle``.

Exit codes: 0 pass or computation done, 1 verified failure with a witness,
2 hypothesis unmet (skipped), 3 input error.  Diagnostics go to stderr;
results go to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import univprop
from .config import shuffled_candidates
from .errors import (
    LaxcatError,
    NoCommonCodomain,
    NotComposable,
    NotParallel,
    ObjectNotFound,
    PresentationError,
    ShapeMismatch,
    ValidationError,
)
from .fincat import FinCategory, Functor, NatTrans, compose_functors, identity_functor
from .laxcomma import LaxMorphism, LaxObject, Truncation, Workspace, compose_lax, lax_documents, probe_objects
from .presentation import Environment, corpus_dir, load_corpus, parse_documents, elaborate, serialize_many
from . import laxstruct, toolkit

EXIT_OK, EXIT_FAIL, EXIT_SKIPPED, EXIT_INPUT = 0, 1, 2, 3

CONSTRUCTIONS = ("terminal", "initial", "product", "pullback", "coproduct", "coequalizer", "exponential", "lan", "end")
CHECKS = (
    "extensivity", "topologicity", "lattice", "strict-initial", "adjunctions",
    "descent-classify", "lu-pullback", "l-pullback-zero",
)
INPUT_ERRORS = (
    PresentationError, ValidationError, ObjectNotFound, ShapeMismatch, NotParallel,
    NoCommonCodomain, NotComposable, OSError,
)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def resolve(path: str) -> Path:
    """A path as given, or the bundled corpus file of that name."""
    p = Path(path)
    if p.exists():
        return p
    q = corpus_dir() / path
    if q.exists():
        return q
    raise InputError(f"{path}: no such file")


@dataclass
class Inputs:
    env: Environment
    X: FinCategory | None = None
    objects: list = field(default_factory=list)
    morphisms: list = field(default_factory=list)
    functors: list = field(default_factory=list)
    categories: list = field(default_factory=list)
    values: list = field(default_factory=list)


def _load(env: Environment, path: str, into: Inputs, X: FinCategory | None) -> None:
    p = resolve(path)
    text = p.read_text(encoding="utf-8")
    try:
        docs = parse_documents(text)
        for doc in docs:
            v = elaborate(doc, env)
            env.add(doc.name, v)
            into.values.append(v)
            if isinstance(v, FinCategory):
                into.categories.append(v)
            elif isinstance(v, Functor):
                into.functors.append(v)
                if X is not None and v.target == X:
                    into.objects.append(LaxObject(v, doc.name))
            elif isinstance(v, NatTrans):
                into.morphisms.append(_lax_from_doc(env, doc, v))
    except PresentationError as e:
        raise InputError(f"{p}:{e}") from None
    except (ValidationError, ObjectNotFound, ShapeMismatch, NotComposable) as e:
        line = getattr(e, "line", None)
        where = f"{p}:{line}:{e.col}" if line is not None else str(p)
        raise InputError(f"{where}: {type(e).__name__}: {e}") from None


def _lax_from_doc(env: Environment, doc, cell: NatTrans) -> LaxMorphism:
    src, tgt = doc.header
    if len(src) != 1:
        raise InputError(f"{doc.name}: the source of a lax morphism cell must be a single functor")
    a, b = env.functor(src[0]), env.functor(tgt[0])
    if len(tgt) == 1:
        f = identity_functor(a.source)
    else:
        f = env.functor(tgt[-1])
        for part in reversed(tgt[1:-1]):
            f = compose_functors(env.functor(part), f)
    return LaxMorphism(LaxObject(a, src[0]), LaxObject(b, tgt[0]), f, cell)


def load_inputs(workspace: str | None, files) -> Inputs:
    env = load_corpus(Environment())
    inp = Inputs(env)
    if workspace:
        ws_in = Inputs(env)
        _load(env, workspace, ws_in, None)
        if not ws_in.categories:
            raise InputError(f"{workspace}: no category document")
        inp.X = ws_in.categories[0]
    for f in files or ():
        _load(env, f, inp, inp.X)
    return inp


def _need(items, n: int, what: str):
    if len(items) < n:
        raise InputError(f"expected {n} {what}, got {len(items)}")
    return items[:n]


# -- compute -------------------------------------------------------------------------------


def compute(construction: str, inp: Inputs) -> list:
    """The values to serialize for a construction."""
    X = inp.X
    if X is None and construction not in ("lan", "end"):
        raise InputError("--workspace is required")
    ws = Workspace(X) if X is not None else None
    out: list = [X] if X is not None else []
    if construction == "terminal":
        out += lax_documents(laxstruct.terminal_laxcomma(ws), "terminal")
    elif construction == "initial":
        out += lax_documents(laxstruct.initial_laxcomma(ws), "initial")
    elif construction in ("product", "coproduct"):
        o1, o2 = _need(inp.objects, 2, "structure functors into the workspace")
        fn = laxstruct.product_laxcomma if construction == "product" else laxstruct.coproduct_laxcomma
        res = fn(ws, o1, o2)
        leg = "proj" if construction == "product" else "inj"
        out += lax_documents(res.obj, construction)
        for i, m in enumerate(res.legs, 1):
            out += lax_documents(m, f"{leg}{i}")
    elif construction == "pullback":
        m1, m2 = _need(inp.morphisms, 2, "lax morphisms")
        res = laxstruct.pullback_laxcomma(ws, m1, m2)
        out += lax_documents(res.obj, "pullback")
        for i, m in enumerate(res.legs, 1):
            out += lax_documents(m, f"proj{i}")
    elif construction == "coequalizer":
        m1, m2 = _need(inp.morphisms, 2, "lax morphisms")
        res = laxstruct.coequalizer_laxcomma(ws, m1, m2)
        out += lax_documents(res.obj, "coequalizer")
        out += lax_documents(res.quotient, "quotient")
    elif construction == "exponential":
        o1, o2 = _need(inp.objects, 2, "structure functors into the workspace")
        res = laxstruct.exponential_laxcomma(ws, o1, o2)
        out += lax_documents(res.obj, "exponential")
    elif construction == "lan":
        f, a = _need(inp.functors, 2, "functors (f, then a)")
        res = laxstruct.left_kan(f, a)
        ext = res.extension.renamed("lan")
        unit = NatTrans(a, compose_functors(ext, f).renamed(f"lan . {f.name}"), res.unit.components, "lan_unit")
        out = [f.source, f.target, a.target, f, a, ext, unit]
    elif construction == "end":
        (T,) = _need(inp.functors, 1, "functor")
        W = _twisted_base(inp.env, T.source)
        e = univprop.end_of(T, W)
        from .fixtures import one

        out = [one(), T.target, Functor(one(), T.target, [e.apex], [T.target.ids[e.apex]], "end")]
    else:
        raise InputError(f"unknown construction {construction!r}")
    return out


def _twisted_base(env: Environment, P: FinCategory) -> FinCategory:
    """``W`` for a source category named ``(op(W),W)``."""
    from .presentation import _split_top

    name = P.name
    if name.startswith("(") and name.endswith(")"):
        parts = _split_top(name[1:-1], ",")
        if len(parts) == 2 and parts[0] == f"op({parts[1]})":
            W = env.category(parts[1])
            if W is not None and univprop.twisted(W) == P:
                return W
    raise InputError(f"the source of an end functor must be (op(W),W), got {name}")


# -- oracle ----------------------------------------------------------------------------------


def oracle(kind: str, inp: Inputs, result: Inputs, probes: int) -> toolkit.CheckReport:
    X = inp.X
    ws = Workspace(X)
    legs = result.morphisms
    if not legs and not result.objects:
        raise InputError("the result file holds no structure into the workspace")
    if kind == "limit":
        apex = legs[0].dom if legs else result.objects[0]
    else:
        apex = legs[0].cod if legs else result.objects[0]
    extra = probe_objects(ws, limit=probes)
    base = inp.objects + [m.dom for m in inp.morphisms] + [m.cod for m in inp.morphisms]
    T = Truncation(base + [apex] + extra, ws)
    if len(inp.morphisms) >= 2:
        m1, m2 = inp.morphisms[:2]
        if kind == "limit":
            d = univprop.cospan_diagram(T, m1, m2)
            ok = univprop.is_limit(d, univprop.Cone(T.index(apex), (legs[0], legs[1], compose_lax(m1, legs[0]))))
        else:
            d = univprop.parallel_diagram(T, m1, m2)
            q = legs[-1]
            ok = univprop.is_colimit(d, univprop.Cocone(T.index(apex), (compose_lax(q, m1), q)))
    else:
        d = univprop.discrete_diagram(T, [T.index(o) for o in inp.objects])
        if kind == "limit":
            ok = univprop.is_limit(d, univprop.Cone(T.index(apex), tuple(legs)))
        else:
            ok = univprop.is_colimit(d, univprop.Cocone(T.index(apex), tuple(legs)))
    names = tuple(o.name for o in extra)
    if ok:
        return toolkit.CheckReport(f"oracle-{kind}", toolkit.PASS, probes=names)
    return toolkit.CheckReport(f"oracle-{kind}", toolkit.FAIL, witnesses=(f"{apex.name} is not universal",), probes=names)


# -- checks ------------------------------------------------------------------------------------


def run_check(name: str, X: FinCategory, probes: int) -> toolkit.CheckReport:
    ws = Workspace(X)
    if name == "lattice":
        return toolkit.check_lattice(X)
    if name == "strict-initial":
        return toolkit.check_strict_initial(X)
    if name == "topologicity":
        return toolkit.check_topologicity(X, probes=probes)
    if name == "extensivity":
        return toolkit.check_extensivity(ws)
    if name == "adjunctions":
        return toolkit.check_adjunctions(ws, probes=max(probes, 4))
    if name == "descent-classify":
        return toolkit.check_descent(X)
    if name == "lu-pullback":
        return toolkit.check_lu_pullback(ws)
    if name == "l-pullback-zero":
        return toolkit.check_l_pullback_zero(ws)
    raise InputError(f"unknown check {name!r}")


# -- entry point -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="laxcat", description="Finite computations in lax comma categories.")
    p.add_argument("--shuffle-seed", type=int, default=None,
                   help="evaluate searches in a shuffled candidate order (results are unchanged)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for batches")
    p.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="parse, elaborate and print canonical text")
    v.add_argument("files", nargs="+")
    v.add_argument("--out")

    c = sub.add_parser("compute", help="run a construction")
    c.add_argument("construction", choices=CONSTRUCTIONS)
    c.add_argument("--workspace")
    c.add_argument("--in", dest="inputs", nargs="*", default=[])
    c.add_argument("--out")

    k = sub.add_parser("check", help="run a property check on one or more categories")
    k.add_argument("name", choices=CHECKS)
    k.add_argument("files", nargs="*")
    k.add_argument("--workspace")
    k.add_argument("--probes", type=int, default=3)

    o = sub.add_parser("oracle", help="re-verify a computed (co)limit by brute force")
    o.add_argument("kind", choices=("limit", "colimit"))
    o.add_argument("--workspace", required=True)
    o.add_argument("--in", dest="inputs", nargs="*", default=[])
    o.add_argument("--result", required=True)
    o.add_argument("--probes", type=int, default=3)
    for sp in (v, c, k, o):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--shuffle-seed", type=int, default=argparse.SUPPRESS)
    return p


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _reports(reports, as_json: bool) -> str:
    if as_json:
        data = [r.as_dict() for r in reports]
        return json.dumps(data[0] if len(data) == 1 else data, indent=2)
    return "\n".join(r.render() for r in reports)


def _dispatch(args) -> int:
    if args.command == "validate":
        texts = []
        for f in args.files:
            inp = load_inputs(None, [f])
            texts.append(serialize_many(inp.values))
        _emit("\n".join(texts), args.out)
        return EXIT_OK
    if args.command == "compute":
        inp = load_inputs(args.workspace, args.inputs)
        _emit(serialize_many(compute(args.construction, inp)), args.out)
        return EXIT_OK
    if args.command == "check":
        files = list(args.files) + ([args.workspace] if args.workspace else [])
        if not files:
            raise InputError("no category given")
        cats = []
        for f in files:
            inp = load_inputs(f, [])
            cats.append(inp.X)
        reports = toolkit.run_batch([lambda X=X: run_check(args.name, X, args.probes) for X in cats], args.jobs)
        _emit(_reports(reports, args.json), None)
        return max(r.exit_code for r in reports)
    if args.command == "oracle":
        inp = load_inputs(args.workspace, args.inputs)
        res = Inputs(inp.env, inp.X)
        _load(inp.env, args.result, res, inp.X)
        rep = oracle(args.kind, inp, res, args.probes)
        _emit(_reports([rep], args.json), None)
        return rep.exit_code
    raise InputError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    ctx = shuffled_candidates(args.shuffle_seed) if args.shuffle_seed is not None else contextlib.nullcontext()
    try:
        with ctx:
            return _dispatch(args)
    except InputError as e:
        print(f"laxcat: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as e:
        print(f"laxcat: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LaxcatError as e:
        if toolkit.hypothesis_error(e):
            print(f"laxcat: skipped: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_SKIPPED
        print(f"laxcat: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
