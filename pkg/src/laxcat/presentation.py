"""Text format for finite categories, functors and natural transformations.

Five document kinds share one lexer::

    poset X3 { 0 <= m <= 1 }

    freeacyclic Par { objects: a, b; edges: u: a -> b, v: a -> b; }

    category Z2 {
      objects: star;
      morphisms: g: star -> star;
      compose: g . g = id_star;
    }

    functor F : Two -> X3 { objects: s -> 0, t -> m; morphisms: s<=t -> 0<=m; }

    nattrans k : F => G { components: s -> 0<=1, t -> m<=1; }

Identities are implicit (``id_<object>``) unless an ``identities:`` section
names them, and composites with an identity are never listed.  Names may
contain ``()<=,:+-`` so constructed names like ``(a,b)``, ``inl:x`` or
``a<=b`` are written verbatim; ``,`` separates only outside parentheses
and ``:`` ends a name only when a non-name character follows.

A file holds any number of documents.  Functors and transformations refer
to categories and functors by name; besides declared names, ``op(C)``,
``(A,B)``, ``A+B``, ``Fun(A,B)``, ``id(C)`` and ``G(F)`` resolve to the
corresponding constructions.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    CyclicGraph,
    DuplicateName,
    ElaborationError,
    FcatSyntaxError,
    LaxcatError,
    NotAntisymmetric,
    UnknownReference,
)
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    check_functor,
    check_nat,
    compose_functors,
    coproduct_category,
    free_category,
    functor_category,
    identity_functor,
    opposite,
    product_category,
    thin_category,
    validate_category,
)

NAME_CHARS = frozenset(string.ascii_letters + string.digits + "_()<=,:+-")
KINDS = ("category", "poset", "freeacyclic", "functor", "nattrans")

_SECTIONS = {
    "category": ("objects", "identities", "morphisms", "compose"),
    "freeacyclic": ("objects", "edges"),
    "functor": ("objects", "morphisms"),
    "nattrans": ("components",),
}
# declaration tag produced by each section
_TAG = {
    ("category", "objects"): "object",
    ("category", "identities"): "identity",
    ("category", "morphisms"): "morphism",
    ("category", "compose"): "compose",
    ("freeacyclic", "objects"): "object",
    ("freeacyclic", "edges"): "edge",
    ("functor", "objects"): "object",
    ("functor", "morphisms"): "morphism",
    ("nattrans", "components"): "component",
}


# -- tokens ---------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _scan_name(text: str, pos: int) -> int:
    depth = 0
    i, n = pos, len(text)
    while i < n:
        c = text[i]
        if c not in NAME_CHARS:
            break
        nxt = text[i + 1] if i + 1 < n else ""
        if c in "-=" and nxt == ">":
            break
        if depth == 0:
            if c == ",":
                break
            if c == ":" and (nxt not in NAME_CHARS or nxt in ",:" or nxt == ""):
                break
        if c == "(":
            depth += 1
        elif c == ")":
            if depth == 0:
                break
            depth -= 1
        i += 1
    return i


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    pos, n = 0, len(text)
    line, line_start = 1, 0
    while pos < n:
        c = text[pos]
        if c == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if c in " \t\r":
            pos += 1
            continue
        if c == "#":
            while pos < n and text[pos] != "\n":
                pos += 1
            continue
        col = pos - line_start + 1
        two = text[pos:pos + 2]
        if two in ("->", "=>"):
            toks.append(Token(two, two, line, col))
            pos += 2
            continue
        if c in "{};.,:":
            toks.append(Token(c, c, line, col))
            pos += 1
            continue
        if c in NAME_CHARS:
            end = _scan_name(text, pos)
            if end == pos:
                raise FcatSyntaxError(line, col, "a name", c)
            word = text[pos:end]
            toks.append(Token(word if word in ("<=", "=") else "name", word, line, col))
            pos = end
            continue
        raise FcatSyntaxError(line, col, "a name or punctuation", c)
    col = pos - line_start + 1
    toks.append(Token("eof", "", line, col))
    return toks


# -- syntax tree ------------------------------------------------------------------


@dataclass(frozen=True)
class Decl:
    """One declaration; ``tag`` says what ``values`` hold.

    category: ``object (x)``, ``identity (name, x)``, ``morphism (name, dom,
    cod)`` or ``morphism (name,)`` marking an identity's position,
    ``compose (g, f, h)``.  poset: ``chain (a, b, ...)``.  freeacyclic:
    ``object``, ``edge (name, src, tgt)``.  functor: ``object (x, y)``,
    ``morphism (f, g)``.  nattrans: ``component (x, m)``.
    """

    tag: str
    values: tuple[str, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PresentationDoc:
    kind: str
    name: str
    header: tuple[tuple[str, ...], ...] = ()
    body: tuple[Decl, ...] = ()
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def decls(self, tag: str) -> list[Decl]:
        return [d for d in self.body if d.tag == tag]


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise FcatSyntaxError(t.line, t.col, what or repr(kind), t.text or "end of input")
        return self.next()

    def name(self, what: str = "a name") -> Token:
        return self.expect("name", what)

    # -- documents

    def documents(self) -> list[PresentationDoc]:
        docs = []
        seen: dict[str, PresentationDoc] = {}
        while self.peek().kind != "eof":
            d = self.document()
            if d.name in seen:
                raise DuplicateName(f"document {d.name!r} declared twice", d.line, d.col)
            seen[d.name] = d
            docs.append(d)
        return docs

    def document(self) -> PresentationDoc:
        kw = self.peek()
        if kw.kind != "name" or kw.text not in KINDS:
            raise FcatSyntaxError(kw.line, kw.col, "one of " + ", ".join(KINDS), kw.text or "end of input")
        self.next()
        name = self.name("a document name").text
        header: tuple[tuple[str, ...], ...] = ()
        if kw.text == "functor":
            self.expect(":")
            src = self.name("a source category").text
            self.expect("->")
            tgt = self.name("a target category").text
            header = ((src,), (tgt,))
        elif kw.text == "nattrans":
            self.expect(":")
            src = self.functor_expr()
            self.expect("=>")
            tgt = self.functor_expr()
            header = (src, tgt)
        self.expect("{")
        if kw.text == "poset":
            body = self.poset_body()
        else:
            body = self.sectioned_body(kw.text)
        self.expect("}")
        doc = PresentationDoc(kw.text, name, header, tuple(body), kw.line, kw.col)
        _check_document(doc)
        return doc

    def functor_expr(self) -> tuple[str, ...]:
        parts = [self.name("a functor name").text]
        while self.accept("."):
            parts.append(self.name("a functor name").text)
        return tuple(parts)

    def poset_body(self) -> list[Decl]:
        body = []
        while self.peek().kind == "name":
            first = self.next()
            chain = _split_chain(first)
            while self.accept("<="):
                chain += _split_chain(self.name())
            body.append(Decl("chain", tuple(chain), first.line, first.col))
            if not (self.accept(",") or self.accept(";")):
                break
        return body

    def sectioned_body(self, kind: str) -> list[Decl]:
        allowed = _SECTIONS[kind]
        found: dict[str, list[Decl]] = {}
        while self.peek().kind == "name":
            head = self.next()
            if head.text not in allowed:
                raise FcatSyntaxError(head.line, head.col, "a section (" + ", ".join(allowed) + ")", head.text)
            if head.text in found:
                raise DuplicateName(f"section {head.text!r} repeated", head.line, head.col)
            self.expect(":")
            items: list[Decl] = []
            if self.peek().kind != ";":
                items.append(self.item(kind, head.text))
                while self.accept(","):
                    items.append(self.item(kind, head.text))
            self.expect(";", "',' or ';'")
            found[head.text] = items
        # canonical section order so equal documents compare equal
        return [d for s in allowed for d in found.get(s, ())]

    def item(self, kind: str, section: str) -> Decl:
        tag = _TAG[(kind, section)]
        first = self.name()
        vals = [first.text]
        if tag == "morphism" and kind == "category":
            if self.accept(":"):
                vals.append(self.name("a domain").text)
                self.expect("->")
                vals.append(self.name("a codomain").text)
        elif tag == "edge":
            self.expect(":")
            vals.append(self.name("a source").text)
            self.expect("->")
            vals.append(self.name("a target").text)
        elif tag == "identity":
            self.expect(":")
            vals.append(self.name("an object").text)
        elif tag == "compose":
            self.expect(".")
            vals.append(self.name().text)
            self.expect("=")
            vals.append(self.name().text)
        elif tag in ("morphism", "component") or (tag == "object" and kind == "functor"):
            self.expect("->")
            vals.append(self.name().text)
        return Decl(tag, tuple(vals), first.line, first.col)


def _split_top(s: str, sep: str) -> list[str]:
    parts, depth, start, i = [], 0, 0, 0
    while i < len(s):
        c = s[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif depth == 0 and s.startswith(sep, i):
            parts.append(s[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(s[start:])
    return parts


def _split_chain(tok: Token) -> list[str]:
    parts = _split_top(tok.text, "<=")
    if any(p == "" for p in parts):
        raise FcatSyntaxError(tok.line, tok.col, "an element on both sides of '<='", tok.text)
    return parts


def _check_document(doc: PresentationDoc) -> None:
    """Names are unique and every reference inside the document resolves."""

    def unique(decls, what, key=lambda d: d.values[0]):
        seen = set()
        for d in decls:
            k = key(d)
            if k in seen:
                raise DuplicateName(f"{what} {k!r} declared twice", d.line, d.col)
            seen.add(k)
        return seen

    def known(d, name, pool, what):
        if name not in pool:
            raise UnknownReference(f"unknown {what} {name!r}", d.line, d.col)

    if doc.kind == "category":
        objects = unique(doc.decls("object"), "object")
        idnames = {}
        for d in doc.decls("identity"):
            known(d, d.values[1], objects, "object")
            if d.values[1] in idnames.values():
                raise DuplicateName(f"object {d.values[1]!r} has two identities", d.line, d.col)
            idnames[d.values[0]] = d.values[1]
        unique(doc.decls("identity"), "identity")
        for x in objects:
            if x not in idnames.values():
                idnames["id_" + x] = x
        full = [d for d in doc.decls("morphism") if len(d.values) == 3]
        for d in full:
            known(d, d.values[1], objects, "object")
            known(d, d.values[2], objects, "object")
            if d.values[0] in idnames:
                raise DuplicateName(f"morphism {d.values[0]!r} clashes with an identity", d.line, d.col)
        unique(doc.decls("morphism"), "morphism")
        morphs = {d.values[0] for d in full} | set(idnames)
        for d in doc.decls("morphism"):
            if len(d.values) == 1:
                known(d, d.values[0], idnames, "identity")
        for d in doc.decls("compose"):
            for nm in d.values:
                known(d, nm, morphs, "morphism")
        unique(doc.decls("compose"), "composite", key=lambda d: d.values[:2])
    elif doc.kind == "freeacyclic":
        objects = unique(doc.decls("object"), "object")
        unique(doc.decls("edge"), "edge")
        for d in doc.decls("edge"):
            known(d, d.values[1], objects, "object")
            known(d, d.values[2], objects, "object")
    elif doc.kind == "functor":
        unique(doc.decls("object"), "object mapping for")
        unique(doc.decls("morphism"), "morphism mapping for")
    elif doc.kind == "nattrans":
        unique(doc.decls("component"), "component at")


def parse_documents(text: str) -> list[PresentationDoc]:
    """Parse every document in ``text``."""
    return _Parser(text).documents()


def parse(text: str) -> PresentationDoc:
    """Parse exactly one document."""
    p = _Parser(text)
    doc = p.document()
    t = p.peek()
    if t.kind != "eof":
        raise FcatSyntaxError(t.line, t.col, "end of input", t.text)
    return doc


# -- elaboration -------------------------------------------------------------------


class Environment:
    """Named values available to functor and transformation documents."""

    def __init__(self, values=None):
        self.values: dict[str, object] = dict(values or {})

    def add(self, name: str, value) -> None:
        self.values[name] = value

    def load(self, text: str) -> list:
        out = []
        for doc in parse_documents(text):
            v = elaborate(doc, self)
            self.add(doc.name, v)
            out.append(v)
        return out

    def load_file(self, path) -> list:
        return self.load(Path(path).read_text(encoding="utf-8"))

    def category(self, name: str) -> FinCategory | None:
        v = self.values.get(name)
        if isinstance(v, FinCategory):
            return v
        if v is not None:
            return None
        if name.startswith("op(") and name.endswith(")"):
            inner = self.category(name[3:-1])
            return opposite(inner) if inner is not None else None
        if name.startswith("Fun(") and name.endswith(")"):
            parts = _split_top(name[4:-1], ",")
            if len(parts) == 2:
                a, b = (self.category(p) for p in parts)
                if a is not None and b is not None:
                    return functor_category(a, b).category
        if name.startswith("(") and name.endswith(")"):
            parts = _split_top(name[1:-1], ",")
            if len(parts) == 2:
                a, b = (self.category(p) for p in parts)
                if a is not None and b is not None:
                    return product_category(a, b)
        parts = _split_top(name, "+")
        if len(parts) >= 2:
            a = self.category("+".join(parts[:-1]))
            b = self.category(parts[-1])
            if a is not None and b is not None:
                return coproduct_category(a, b)
        return None

    def functor(self, name: str) -> Functor | None:
        v = self.values.get(name)
        if isinstance(v, Functor):
            return v
        if v is not None:
            return None
        if name.startswith("id(") and name.endswith(")"):
            c = self.category(name[3:-1])
            if c is not None:
                return identity_functor(c)
        if name.endswith(")"):
            # "G(F)": split at the first top-level opening parenthesis
            depth = 0
            for i, ch in enumerate(name):
                if ch == "(" and depth == 0 and i > 0:
                    G, F = self.functor(name[:i]), self.functor(name[i + 1:-1])
                    if G is not None and F is not None and F.target == G.source:
                        return compose_functors(G, F).renamed(name)
                    break
                depth += ch == "("
                depth -= ch == ")"
        return None


def _at(exc: LaxcatError, line: int, col: int) -> LaxcatError:
    if getattr(exc, "line", None) is None:
        exc.line, exc.col = line, col
    return exc


def elaborate(doc: PresentationDoc, env: Environment | None = None):
    """Turn a parsed document into a validated value."""
    env = env or Environment()
    try:
        if doc.kind == "category":
            return _elab_category(doc)
        if doc.kind == "poset":
            return _elab_poset(doc)
        if doc.kind == "freeacyclic":
            return _elab_free(doc)
        if doc.kind == "functor":
            return _elab_functor(doc, env)
        return _elab_nattrans(doc, env)
    except LaxcatError as exc:
        raise _at(exc, doc.line, doc.col)


def _elab_category(doc: PresentationDoc) -> FinCategory:
    objects = [d.values[0] for d in doc.decls("object")]
    identities = {d.values[1]: d.values[0] for d in doc.decls("identity")}
    for x in objects:
        identities.setdefault(x, "id_" + x)
    id_obj = {v: k for k, v in identities.items()}
    listed = doc.decls("morphism")
    placed = {d.values[0] for d in listed if len(d.values) == 1}
    morphisms = [(identities[x], x, x) for x in objects if identities[x] not in placed]
    for d in listed:
        if len(d.values) == 1:
            x = id_obj[d.values[0]]
            morphisms.append((d.values[0], x, x))
        else:
            morphisms.append(d.values)
    compose = {}
    for nm, dm, cd in morphisms:
        compose[(identities[cd], nm)] = nm
        compose[(nm, identities[dm])] = nm
    for d in doc.decls("compose"):
        compose[(d.values[0], d.values[1])] = d.values[2]
    return validate_category(
        {
            "name": doc.name,
            "objects": objects,
            "morphisms": morphisms,
            "identities": identities,
            "compose": compose,
        }
    )


def _elab_poset(doc: PresentationDoc) -> FinCategory:
    elements: list[str] = []
    leq: set[tuple[str, str]] = set()
    for d in doc.decls("chain"):
        for e in d.values:
            if e not in elements:
                elements.append(e)
                leq.add((e, e))
        for a, b in zip(d.values, d.values[1:]):
            if (a, b) in leq:
                continue
            # close under transitivity through the new pair
            below = {x for x, y in leq if y == a}
            above = {y for x, y in leq if x == b}
            leq |= {(x, y) for x in below for y in above}
            if (b, a) in leq and a != b:
                raise NotAntisymmetric(f"{a} <= {b} and {b} <= {a}", d.line, d.col)
    return thin_category(doc.name, elements, leq)


def _elab_free(doc: PresentationDoc) -> FinCategory:
    objects = [d.values[0] for d in doc.decls("object")]
    edges = [d.values for d in doc.decls("edge")]
    succ: dict[str, list[str]] = {o: [] for o in objects}
    for _, s, t in edges:
        succ[s].append(t)
    state: dict[str, int] = {}
    for root in objects:
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                d = next(e for e in doc.decls("edge") if e.values[1] == node and e.values[2] == nxt)
                raise CyclicGraph(f"edge {d.values[0]} closes a cycle", d.line, d.col)
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return free_category(doc.name, objects, edges)


def _need_category(env: Environment, name: str, doc: PresentationDoc) -> FinCategory:
    c = env.category(name)
    if c is None:
        raise UnknownReference(f"unknown category {name!r}", doc.line, doc.col)
    return c


def _lookup(c: FinCategory, name: str, d: Decl, what: str) -> int:
    table = c.objects if what == "object" else c.morphisms
    if name not in table:
        raise UnknownReference(f"{name!r} is not {'an' if what == 'object' else 'a'} {what} of {c.name}", d.line, d.col)
    return table.index(name)


def _elab_functor(doc: PresentationDoc, env: Environment) -> Functor:
    W = _need_category(env, doc.header[0][0], doc)
    Y = _need_category(env, doc.header[1][0], doc)
    omap: list[int | None] = [None] * W.n_obj
    for d in doc.decls("object"):
        omap[_lookup(W, d.values[0], d, "object")] = _lookup(Y, d.values[1], d, "object")
    for x, y in enumerate(omap):
        if y is None:
            raise ElaborationError(f"object {W.objects[x]} is not mapped", doc.line, doc.col)
    mmap: list[int | None] = [None] * W.n_mor
    for x in range(W.n_obj):
        mmap[W.ids[x]] = Y.ids[omap[x]]
    for d in doc.decls("morphism"):
        mmap[_lookup(W, d.values[0], d, "morphism")] = _lookup(Y, d.values[1], d, "morphism")
    for m, v in enumerate(mmap):
        if v is None:
            forced = Y.hom(omap[W.dom[m]], omap[W.cod[m]])
            if len(forced) != 1:
                raise ElaborationError(f"morphism {W.morphisms[m]} is not mapped", doc.line, doc.col)
            mmap[m] = forced[0]
    return check_functor(Functor(W, Y, omap, mmap, doc.name))


def _functor_expr(env: Environment, parts, doc: PresentationDoc) -> Functor:
    fs = []
    for p in parts:
        F = env.functor(p)
        if F is None:
            raise UnknownReference(f"unknown functor {p!r}", doc.line, doc.col)
        fs.append(F)
    out = fs[-1]
    for G in reversed(fs[:-1]):
        if out.target != G.source:
            raise ElaborationError(f"cannot compose {G.name} after {out.name}", doc.line, doc.col)
        out = compose_functors(G, out)
    return out.renamed(" . ".join(parts)) if len(parts) > 1 else out


def _elab_nattrans(doc: PresentationDoc, env: Environment) -> NatTrans:
    F = _functor_expr(env, doc.header[0], doc)
    G = _functor_expr(env, doc.header[1], doc)
    if F.source != G.source or F.target != G.target:
        raise ElaborationError(f"{F.name} and {G.name} are not parallel", doc.line, doc.col)
    W, Y = F.source, F.target
    comps: list[int | None] = [None] * W.n_obj
    for d in doc.decls("component"):
        comps[_lookup(W, d.values[0], d, "object")] = _lookup(Y, d.values[1], d, "morphism")
    for w, c in enumerate(comps):
        if c is None:
            forced = Y.hom(F.omap[w], G.omap[w])
            if len(forced) != 1:
                raise ElaborationError(f"component at {W.objects[w]} is missing", doc.line, doc.col)
            comps[w] = forced[0]
    return check_nat(NatTrans(F, G, comps, doc.name))


# -- serialization -------------------------------------------------------------------


def to_doc(value, name: str | None = None) -> PresentationDoc:
    """The canonical document for a category, functor or transformation."""
    if isinstance(value, PresentationDoc):
        return value
    if isinstance(value, FinCategory):
        c = value
        body = [Decl("object", (x,)) for x in c.objects]
        body += [
            Decl("identity", (c.morphisms[c.ids[x]], c.objects[x]))
            for x in range(c.n_obj)
            if c.morphisms[c.ids[x]] != "id_" + c.objects[x]
        ]
        default_order = tuple(c.ids) == tuple(range(c.n_obj))
        for m in range(c.n_mor):
            if c.is_identity(m):
                if not default_order:
                    body.append(Decl("morphism", (c.morphisms[m],)))
            else:
                body.append(Decl("morphism", (c.morphisms[m], c.objects[c.dom[m]], c.objects[c.cod[m]])))
        mm = c.n_mor
        for g in range(mm):
            if c.is_identity(g):
                continue
            for f in range(mm):
                h = c.comp[g * mm + f]
                if h >= 0 and not c.is_identity(f):
                    body.append(Decl("compose", (c.morphisms[g], c.morphisms[f], c.morphisms[h])))
        return PresentationDoc("category", name or c.name, (), tuple(body))
    if isinstance(value, Functor):
        F = value
        W, Y = F.source, F.target
        body = [Decl("object", (W.objects[x], Y.objects[F.omap[x]])) for x in range(W.n_obj)]
        body += [Decl("morphism", (W.morphisms[m], Y.morphisms[F.mmap[m]])) for m in W.nonidentities()]
        return PresentationDoc("functor", name or F.name, ((W.name,), (Y.name,)), tuple(body))
    if isinstance(value, NatTrans):
        a = value
        W, Y = a.source.source, a.source.target
        body = [Decl("component", (W.objects[w], Y.morphisms[a.components[w]])) for w in range(W.n_obj)]
        header = (tuple(a.source.name.split(" . ")), tuple(a.target.name.split(" . ")))
        return PresentationDoc("nattrans", name or a.name, header, tuple(body))
    raise TypeError(f"cannot serialize {type(value).__name__}")


_LABEL = {
    "object": "objects",
    "identity": "identities",
    "morphism": "morphisms",
    "compose": "compose",
    "edge": "edges",
    "component": "components",
}


def _render_decl(kind: str, d: Decl) -> str:
    v = d.values
    if d.tag == "compose":
        return f"{v[0]} . {v[1]} = {v[2]}"
    if d.tag == "identity":
        return f"{v[0]}: {v[1]}"
    if d.tag == "edge" or (d.tag == "morphism" and kind == "category" and len(v) == 3):
        return f"{v[0]}: {v[1]} -> {v[2]}"
    if len(v) == 2:
        return f"{v[0]} -> {v[1]}"
    return v[0]


def format_doc(doc: PresentationDoc) -> str:
    head = f"{doc.kind} {doc.name}"
    if doc.kind == "functor":
        head += f" : {doc.header[0][0]} -> {doc.header[1][0]}"
    elif doc.kind == "nattrans":
        head += f" : {' . '.join(doc.header[0])} => {' . '.join(doc.header[1])}"
    if doc.kind == "poset":
        items = [" <= ".join(d.values) for d in doc.decls("chain")]
        inline = f"{head} {{ {', '.join(items)} }}" if items else f"{head} {{ }}"
        if len(inline) <= 72:
            return inline + "\n"
        return head + " {\n" + ",\n".join("  " + i for i in items) + "\n}\n"
    lines = []
    sections = _SECTIONS[doc.kind]
    for s in sections:
        tag = _TAG[(doc.kind, s)]
        items = [_render_decl(doc.kind, d) for d in doc.decls(tag)]
        if not items and s != sections[0]:
            continue
        if s == "objects" or len(items) <= 1:
            lines.append(f"  {s}: {', '.join(items)};")
        else:
            lines.append(f"  {s}:")
            lines += [f"    {i}," for i in items[:-1]] + [f"    {items[-1]};"]
    if len(lines) == 1:
        return f"{head} {{ {lines[0].strip()} }}\n"
    return head + " {\n" + "\n".join(lines) + "\n}\n"


def serialize(value, name: str | None = None) -> str:
    """Canonical text: LF line ends, two-space indent, trailing newline."""
    return format_doc(to_doc(value, name))


def serialize_many(values) -> str:
    """Several documents separated by blank lines; repeated names are kept once."""
    seen: dict[str, str] = {}
    for v in values:
        doc = to_doc(v)
        text = format_doc(doc)
        if doc.name in seen and seen[doc.name] != text:
            raise DuplicateName(f"two different documents named {doc.name!r}", 0, 0)
        seen.setdefault(doc.name, text)
    return "\n".join(seen.values())


# -- bundled corpus -------------------------------------------------------------------


def corpus_dir() -> Path:
    return Path(__file__).with_name("corpus")


def corpus_files() -> list[Path]:
    return sorted(corpus_dir().glob("*.fcat"))


def load_corpus(env: Environment | None = None) -> Environment:
    """Load the bundled ``.fcat`` files, base categories first."""
    env = env or Environment()
    pending = corpus_files()
    while pending:
        stuck = []
        for p in pending:
            snapshot = dict(env.values)
            try:
                env.load_file(p)
            except UnknownReference:
                env.values = snapshot
                stuck.append(p)
        if len(stuck) == len(pending):
            env.load_file(stuck[0])  # surfaces the unresolved reference
        pending = stuck
    return env
