"""Line-based text serialization and the command-line driver.

Documents are UTF-8 text, one declaration per line, '#' starting a comment.
Five kinds:

    category NAME
    multigraph NAME truncation K [symmetric]
    multicat NAME truncation K
    functor NAME
    multifunctor NAME

followed by body lines:

    object TOKEN
    mor TOKEN : a -> b                  (category)
    mor TOKEN : (a1, ..., ak) -> b      (multigraph / multicat)
    comp g f = h                        (category)
    comp g (f1 f2 ... fn) = h           (multicat)
    act f (p0 p1 ... pk-1) = g          (zero-based permutation images)
    map object a -> b                   (functor / multifunctor)
    map mor f -> g

Identity morphisms are implicit and named id_TOKEN; declaring one, or a unit
composition entry that matches the unit law, or an identity image in a map
document, is never necessary and the canonical printer omits all three.  The
printer sorts every section, so print is deterministic and
print(parse(print(x))) == print(x) byte for byte.
"""

import argparse
import random
import re
import sys

from . import samplers
from .colimits import (
    PushoutConstructionError,
    bounded_pushout_oracle,
    is_isomorphic_over_cocone,
    pushout_cat_ff,
    pushout_multicat_along_E,
    pushout_multicat_e_square,
    verify_pushout,
)
from .constructions import (
    cell_multigraph,
    com_multicat,
    counit_E,
    discrete,
    e_lower,
    e_on_functor,
    e_raise,
    embed_E,
    extend_u,
    extension_map,
    factor_cofibration_style,
    factor_through_image,
    forget_sym,
    free_category,
    free_symmulticat,
    indiscrete,
    interval_graph,
    is_composite_free,
    restrict_u,
    restriction_map,
    sym,
    tensor,
    truncate,
    underlying_1,
    underlying_functor,
    underlying_multigraph,
)
from .core import (
    BudgetExceededError,
    FiniteCategory,
    Functor,
    Graph,
    MultiFunctor,
    MultiGraph,
    Signature,
    TruncatedSymMulticat,
    _arg_tuples,
    enumerate_functors,
    enumerate_graph_maps,
    enumerate_multifunctors,
    find_isomorphism,
    find_multicat_isomorphism,
    functor_violations,
    id_token,
    identity_functor,
    identity_multifunctor,
    is_id_token,
    is_locally_bijective,
    multifunctor_violations,
    rename_category,
    rename_multicat,
    validate_category,
    validate_multicat,
    validate_multigraph,
)
from .karoubi import (
    idempotents,
    idempotents_split,
    is_morita_equivalence,
    is_morita_multi_equivalence,
    kar_category,
    kar_functor,
    kar_multicat,
    kar_multifunctor,
)
from .modelcheck import (
    LiftingProblem,
    check_61_premises,
    generating_I,
    generating_J,
    has_lifting,
    is_cofibration,
    is_equivalence,
    is_essentially_surjective,
    is_full_faithful,
    is_isofibration,
    is_multi_equivalence,
    is_multi_fibration,
    is_trivial_fibration,
    rlp,
)

from dataclasses import dataclass


class DocumentError(Exception):
    """Base for everything wrong with a document's text or content."""


class ParseError(DocumentError):
    """A line that does not fit the grammar."""

    def __init__(self, msg, line, column, token=None):
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        if token is not None:
            where += f": {token!r}"
        super().__init__(f"{where}: {msg}")


class SemanticError(DocumentError):
    """Well-formed lines that do not assemble into a structure."""

    def __init__(self, msg, lines=()):
        self.lines = tuple(lines)
        if self.lines:
            noun = "lines" if len(self.lines) > 1 else "line"
            msg = f"{msg} ({noun} {', '.join(str(n) for n in self.lines)})"
        super().__init__(msg)


@dataclass(frozen=True)
class Document:
    kind: str      # category | multigraph | multicat | functor | multifunctor
    name: str
    value: object  # the structure, or (obj_map, mor_map) for map documents


# ---------------------------------------------------------------------------
# lexing

_ATOM = re.compile(r"[():,=]|[^\s():,=#]+")
_PUNCT = {"(", ")", ":", ",", "=", "->"}
_KINDS = ("category", "multigraph", "multicat", "functor", "multifunctor")


def _lex(text):
    rows = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        atoms = [(m.start() + 1, m.group()) for m in _ATOM.finditer(body)]
        if atoms:
            rows.append((n, atoms))
    return rows


class _Line:
    def __init__(self, lineno, atoms):
        self.lineno = lineno
        self.atoms = atoms
        self.pos = 0

    def peek(self):
        if self.pos < len(self.atoms):
            return self.atoms[self.pos][1]
        return None

    def take(self, what):
        if self.pos >= len(self.atoms):
            col, tok = self.atoms[-1]
            raise ParseError(f"expected {what}", self.lineno, col + len(tok))
        col, tok = self.atoms[self.pos]
        self.pos += 1
        return col, tok

    def token(self, what="a token"):
        col, tok = self.take(what)
        if tok in _PUNCT:
            raise ParseError(f"expected {what}", self.lineno, col, tok)
        return tok

    def literal(self, lit):
        col, tok = self.take(f"{lit!r}")
        if tok != lit:
            raise ParseError(f"expected {lit!r}", self.lineno, col, tok)

    def integer(self, what="an integer"):
        col, tok = self.take(what)
        if not re.fullmatch(r"\d+", tok):
            raise ParseError(f"expected {what}", self.lineno, col, tok)
        return int(tok)

    def end(self):
        if self.pos < len(self.atoms):
            col, tok = self.atoms[self.pos]
            raise ParseError("unexpected trailing token", self.lineno, col, tok)


# ---------------------------------------------------------------------------
# parsing

def parse(text):
    """Parse one document.  Grammar problems raise ParseError with a line
    and column; shape problems (duplicates, dangling tokens, missing
    composites) raise SemanticError with the offending line numbers."""
    rows = _lex(text)
    if not rows:
        raise ParseError("empty document", 1, 1)
    head = _Line(*rows[0])
    col, kind = head.take("a document kind")
    if kind not in _KINDS:
        raise ParseError("unknown document kind", head.lineno, col, kind)
    name = head.token("a document name")
    truncation = None
    symmetric = False
    if kind in ("multigraph", "multicat"):
        head.literal("truncation")
        truncation = head.integer("a truncation bound")
        if kind == "multigraph" and head.peek() == "symmetric":
            head.take("symmetric")
            symmetric = True
    head.end()
    body = [_Line(*row) for row in rows[1:]]
    if kind == "category":
        value = _parse_category(body)
    elif kind == "multigraph":
        value = _parse_multigraph(body, truncation, symmetric)
    elif kind == "multicat":
        value = _parse_multicat(body, truncation)
    else:
        value = _parse_map(body)
    return Document(kind, name, value)


def _declared(ln, keyword):
    col, kw = ln.take("a declaration")
    if kw != keyword:
        raise ParseError("unknown declaration", ln.lineno, col, kw)


def _new_object(objects, ln):
    t = ln.token("an object token")
    if t in objects:
        raise SemanticError(f"duplicate object {t!r}", (objects[t], ln.lineno))
    objects[t] = ln.lineno
    return t


def _new_mor_token(mors, ln, allow_id=False):
    col, t = ln.take("a morphism token")
    if t in _PUNCT:
        raise ParseError("expected a morphism token", ln.lineno, col, t)
    if is_id_token(t) and not allow_id:
        raise SemanticError(
            f"identity morphisms are implicit, cannot declare {t!r}",
            (ln.lineno,))
    if t in mors:
        raise SemanticError(f"duplicate morphism {t!r}",
                            (mors[t][-1], ln.lineno))
    return t


def _paren_tokens(ln, what):
    ln.literal("(")
    out = []
    while True:
        nxt = ln.peek()
        if nxt is None:
            ln.take(")")
        if nxt == ")":
            ln.take(")")
            return tuple(out)
        if nxt == ",":
            ln.take(",")
            continue
        out.append(ln.token(what))


def _paren_ints(ln, what):
    ln.literal("(")
    out = []
    while True:
        nxt = ln.peek()
        if nxt is None:
            ln.take(")")
        if nxt == ")":
            ln.take(")")
            return tuple(out)
        if nxt == ",":
            ln.take(",")
            continue
        out.append(ln.integer(what))


def _check_objects(objects, sig_tokens, lineno):
    for a in sig_tokens:
        if a not in objects:
            raise SemanticError(f"unknown object {a!r}", (lineno,))


def _parse_category(body):
    objects, mors, comps = {}, {}, {}
    for ln in body:
        col, kw = ln.take("a declaration")
        if kw == "object":
            _new_object(objects, ln)
            ln.end()
        elif kw == "mor":
            t = _new_mor_token(mors, ln)
            ln.literal(":")
            a = ln.token("a source object")
            ln.literal("->")
            b = ln.token("a target object")
            ln.end()
            mors[t] = (a, b, ln.lineno)
        elif kw == "comp":
            g = ln.token("a morphism token")
            f = ln.token("a morphism token")
            ln.literal("=")
            h = ln.token("a morphism token")
            ln.end()
            if (g, f) in comps:
                raise SemanticError(f"duplicate composite ({g!r}, {f!r})",
                                    (comps[(g, f)][1], ln.lineno))
            comps[(g, f)] = (h, ln.lineno)
        else:
            raise ParseError("unknown declaration", ln.lineno, col, kw)

    sig = {id_token(a): (a, a) for a in objects}
    for t, (a, b, n) in mors.items():
        _check_objects(objects, (a, b), n)
        sig[t] = (a, b)
    for (g, f), (h, n) in comps.items():
        for t in (g, f, h):
            if t not in sig:
                raise SemanticError(f"unknown morphism {t!r}", (n,))
        if sig[g][0] != sig[f][1]:
            raise SemanticError(
                f"composite ({g!r}, {f!r}) is not composable", (n,))
        if sig[h] != (sig[f][0], sig[g][1]):
            raise SemanticError(
                f"composite ({g!r}, {f!r}) = {h!r} has the wrong signature",
                (n,))

    identities = {a: id_token(a) for a in objects}
    idset = set(identities.values())
    comp = {}
    for f, (a, b) in sig.items():
        comp[(identities[b], f)] = f
        comp[(f, identities[a])] = f
    for (g, f), (h, _) in comps.items():
        comp[(g, f)] = h
    for f, (a, b) in sig.items():
        for g, (b2, c) in sig.items():
            if b2 != b or g in idset or f in idset:
                continue
            if (g, f) not in comp:
                raise SemanticError(f"missing composite ({g!r}, {f!r})",
                                    (mors[g][2], mors[f][2]))
    homs = {}
    for t, pair in sig.items():
        homs.setdefault(pair, []).append(t)
    try:
        return FiniteCategory(tuple(objects), homs, identities, comp)
    except ValueError as exc:
        raise SemanticError(str(exc)) from exc


def _parse_multi_body(body, kk, keywords, allow_id=False):
    objects, mors, comps, acts = {}, {}, {}, {}
    for ln in body:
        col, kw = ln.take("a declaration")
        if kw not in keywords:
            raise ParseError("unknown declaration", ln.lineno, col, kw)
        if kw == "object":
            _new_object(objects, ln)
            ln.end()
        elif kw == "mor":
            t = _new_mor_token(mors, ln, allow_id)
            ln.literal(":")
            inputs = _paren_tokens(ln, "an input object")
            ln.literal("->")
            out = ln.token("an output object")
            ln.end()
            if len(inputs) > kk:
                raise SemanticError(
                    f"morphism {t!r} has arity {len(inputs)}, "
                    f"exceeding the truncation {kk}", (ln.lineno,))
            mors[t] = (inputs, out, ln.lineno)
        elif kw == "comp":
            g = ln.token("a morphism token")
            fs = _paren_tokens(ln, "an argument morphism")
            ln.literal("=")
            h = ln.token("a morphism token")
            ln.end()
            if not fs:
                raise SemanticError(
                    "nullary composites are implicit", (ln.lineno,))
            if (g, fs) in comps:
                raise SemanticError(
                    f"duplicate composite for {g!r} {list(fs)}",
                    (comps[(g, fs)][1], ln.lineno))
            comps[(g, fs)] = (h, ln.lineno)
        else:
            m = ln.token("a morphism token")
            p = _paren_ints(ln, "a permutation image")
            ln.literal("=")
            m2 = ln.token("a morphism token")
            ln.end()
            if sorted(p) != list(range(len(p))):
                raise SemanticError(
                    f"{p!r} is not a permutation", (ln.lineno,))
            if tuple(p) == tuple(range(len(p))):
                raise SemanticError(
                    "identity permutation actions are implicit", (ln.lineno,))
            if (m, p) in acts:
                raise SemanticError(f"duplicate action entry for {m!r}",
                                    (acts[(m, p)][1], ln.lineno))
            acts[(m, p)] = (m2, ln.lineno)
    return objects, mors, comps, acts


def _multi_sigs(objects, mors, identities=True):
    sig = {}
    if identities:
        sig = {id_token(a): Signature((a,), a) for a in objects}
    for t, (inputs, out, n) in mors.items():
        _check_objects(objects, inputs + (out,), n)
        sig[t] = Signature(inputs, out)
    return sig


def _check_actions(acts, sig):
    for (m, p), (m2, n) in acts.items():
        if m not in sig or m2 not in sig:
            bad = m if m not in sig else m2
            raise SemanticError(f"unknown morphism {bad!r}", (n,))
        if len(p) != sig[m].arity:
            raise SemanticError(
                f"permutation length {len(p)} does not match the arity "
                f"of {m!r}", (n,))


def _parse_multicat(body, kk):
    objects, mors, comps, acts = _parse_multi_body(
        body, kk, ("object", "mor", "comp", "act"))
    sig = _multi_sigs(objects, mors)
    _check_actions(acts, sig)
    for (g, fs), (h, n) in comps.items():
        for t in (g,) + fs + (h,):
            if t not in sig:
                raise SemanticError(f"unknown morphism {t!r}", (n,))
        s = sig[g]
        if len(fs) != s.arity:
            raise SemanticError(
                f"{g!r} takes {s.arity} arguments, got {len(fs)}", (n,))
        if any(sig[f].output != s.inputs[t] for t, f in enumerate(fs)):
            raise SemanticError(
                f"composite for {g!r} has mismatched argument outputs", (n,))
        if sum(sig[f].arity for f in fs) > kk:
            raise SemanticError(
                f"composite for {g!r} exceeds the truncation {kk}", (n,))

    identities = {a: id_token(a) for a in objects}
    homs = {}
    for t, s in sig.items():
        homs.setdefault(s, []).append(t)
    comp = {}
    for t, s in sig.items():
        comp[(identities[s.output], (t,))] = t
        if s.arity >= 1:
            comp[(t, tuple(identities[x] for x in s.inputs))] = t
    for (g, fs), (h, _) in comps.items():
        comp[(g, fs)] = h
    action = {key: m2 for key, (m2, _) in acts.items()}
    try:
        mc = TruncatedSymMulticat(tuple(objects), homs, kk, identities,
                                  action, comp)
    except ValueError as exc:
        raise SemanticError(str(exc)) from exc

    from . import perms
    for t, s in sig.items():
        if s.arity < 2:
            continue
        for p in perms.all_perms(s.arity):
            if perms.is_identity(p):
                continue
            if (t, p) not in action:
                raise SemanticError(
                    f"missing action entry for {t!r} under {p!r}",
                    (mors[t][2],) if t in mors else ())
    for g, s in sig.items():
        if s.arity == 0:
            continue
        for fs in _arg_tuples(mc, s.inputs, kk):
            if (g, fs) not in comp:
                raise SemanticError(
                    f"missing composite for {g!r} {list(fs)}",
                    (mors[g][2],) if g in mors else ())
    return mc


def _parse_multigraph(body, kk, symmetric):
    keywords = ("object", "mor", "act") if symmetric else ("object", "mor")
    objects, mors, _, acts = _parse_multi_body(body, kk, keywords,
                                               allow_id=True)
    sig = _multi_sigs(objects, mors, identities=False)
    _check_actions(acts, sig)
    if symmetric:
        from . import perms
        for t, s in sig.items():
            if s.arity < 2:
                continue
            for p in perms.all_perms(s.arity):
                if perms.is_identity(p):
                    continue
                if (t, p) not in acts:
                    raise SemanticError(
                        f"missing action entry for {t!r} under {p!r}",
                        (mors[t][2],))
    homs = {}
    for t, s in sig.items():
        homs.setdefault(s, []).append(t)
    action = {key: m2 for key, (m2, _) in acts.items()}
    try:
        return MultiGraph(tuple(objects), homs, kk, symmetric, action)
    except ValueError as exc:
        raise SemanticError(str(exc)) from exc


def _parse_map(body):
    obj_map, mor_map = {}, {}
    obj_lines, mor_lines = {}, {}
    for ln in body:
        col, kw = ln.take("a declaration")
        if kw != "map":
            raise ParseError("unknown declaration", ln.lineno, col, kw)
        col, which = ln.take("'object' or 'mor'")
        if which not in ("object", "mor"):
            raise ParseError("expected 'object' or 'mor'",
                             ln.lineno, col, which)
        src = ln.token("a token")
        ln.literal("->")
        dst = ln.token("a token")
        ln.end()
        table, seen = ((obj_map, obj_lines) if which == "object"
                       else (mor_map, mor_lines))
        if which == "mor" and is_id_token(src):
            raise SemanticError(
                f"identity images are implicit, cannot map {src!r}",
                (ln.lineno,))
        if src in table:
            raise SemanticError(f"duplicate map entry for {src!r}",
                                (seen[src], ln.lineno))
        table[src] = dst
        seen[src] = ln.lineno
    return (obj_map, mor_map)


# ---------------------------------------------------------------------------
# printing

def to_document(x, name):
    """Wrap a structure or map in a Document, stripping implicit identity
    images from maps."""
    if isinstance(x, FiniteCategory):
        return Document("category", name, x)
    if isinstance(x, TruncatedSymMulticat):
        return Document("multicat", name, x)
    if isinstance(x, MultiGraph):
        return Document("multigraph", name, x)
    if isinstance(x, Graph):
        return Document("multigraph", name, _graph_up(x))
    if isinstance(x, Functor):
        kind = "functor"
    elif isinstance(x, MultiFunctor):
        kind = "multifunctor"
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    mor_map = {f: v for f, v in x.mor_map.items() if not is_id_token(f)}
    return Document(kind, name, (dict(x.obj_map), mor_map))


def _graph_up(g):
    homs = {Signature((a,), b): toks for (a, b), toks in g.edges.items()}
    return MultiGraph(g.objects, homs, 1, False, {})


def _graph_down(g, lines=()):
    if g.symmetric or any(s.arity != 1 for s in g.homs):
        raise SemanticError("expected a plain multigraph with unary cells",
                            lines)
    edges = {}
    for s, toks in g.homs.items():
        edges[(s.inputs[0], s.output)] = toks
    return Graph(g.objects, edges)


def _identity_names(x):
    for a in x.objects:
        if x.identities[a] != id_token(a):
            raise SemanticError(
                f"identity of {a!r} is named {x.identities[a]!r}; "
                f"the document grammar requires {id_token(a)!r}")
    for m in x.morphisms:
        if is_id_token(m) and m not in set(x.identities.values()):
            raise SemanticError(
                f"non-identity morphism {m!r} uses the reserved "
                f"identity prefix")
    return set(x.identities.values())


def _print_category(lines, name, cat):
    lines.append(f"category {name}")
    idset = _identity_names(cat)
    for a in cat.objects:
        lines.append(f"object {a}")
    for f in cat.morphisms:
        if f in idset:
            continue
        lines.append(f"mor {f} : {cat.source(f)} -> {cat.target(f)}")
    for (g, f) in sorted(cat.comp):
        h = cat.comp[(g, f)]
        if (f in idset and h == g) or (g in idset and h == f):
            continue
        lines.append(f"comp {g} {f} = {h}")


def _print_multi(lines, header, x, idset):
    lines.append(header)
    for a in x.objects:
        lines.append(f"object {a}")
    for m in x.morphisms:
        if m in idset:
            continue
        s = x.signature(m)
        lines.append(f"mor {m} : ({', '.join(s.inputs)}) -> {s.output}")
    for (m, p) in sorted(x.action):
        imgs = " ".join(str(i) for i in p)
        lines.append(f"act {m} ({imgs}) = {x.action[(m, p)]}")


def _print_multicat(lines, name, mc):
    idset = _identity_names(mc)
    _print_multi(lines, f"multicat {name} truncation {mc.arity_bound}",
                 mc, idset)
    for (g, fs) in sorted(mc.comp):
        h = mc.comp[(g, fs)]
        if g in idset and len(fs) == 1 and h == fs[0]:
            continue
        s = mc.signature(g)
        if fs == tuple(mc.identities[a] for a in s.inputs) and h == g:
            continue
        lines.append(f"comp {g} ({' '.join(fs)}) = {h}")


def _print_multigraph(lines, name, g):
    header = f"multigraph {name} truncation {g.arity_bound}"
    if g.symmetric:
        header += " symmetric"
    _print_multi(lines, header, g, set())


def _print_map(lines, kind, name, value):
    obj_map, mor_map = value
    lines.append(f"{kind} {name}")
    for a in sorted(obj_map):
        lines.append(f"map object {a} -> {obj_map[a]}")
    for f in sorted(mor_map):
        if is_id_token(f):
            continue
        lines.append(f"map mor {f} -> {mor_map[f]}")


def print_document(doc):
    """Canonical text for a document; deterministic, implicit parts omitted."""
    lines = []
    if doc.kind == "category":
        _print_category(lines, doc.name, doc.value)
    elif doc.kind == "multicat":
        _print_multicat(lines, doc.name, doc.value)
    elif doc.kind == "multigraph":
        _print_multigraph(lines, doc.name, doc.value)
    elif doc.kind in ("functor", "multifunctor"):
        value = doc.value
        if isinstance(value, (Functor, MultiFunctor)):
            value = to_document(value, doc.name).value
        _print_map(lines, doc.kind, doc.name, value)
    else:
        raise SemanticError(f"unknown document kind {doc.kind!r}")
    return "\n".join(lines) + "\n"


def resolve_map(doc, dom, cod):
    """Turn a parsed map document into a Functor or MultiFunctor between the
    given endpoints, filling in the implicit identity images."""
    if doc.kind == "functor":
        if not (isinstance(dom, FiniteCategory)
                and isinstance(cod, FiniteCategory)):
            raise SemanticError(
                f"functor document {doc.name!r} needs category endpoints")
        cls = Functor
    elif doc.kind == "multifunctor":
        if not (isinstance(dom, TruncatedSymMulticat)
                and isinstance(cod, TruncatedSymMulticat)):
            raise SemanticError(
                f"multifunctor document {doc.name!r} needs "
                f"multicategory endpoints")
        cls = MultiFunctor
    else:
        raise SemanticError(f"{doc.name!r} is not a map document")
    obj_map, mor_map = doc.value
    objset = set(dom.objects)
    for a, im in obj_map.items():
        if a not in objset:
            raise SemanticError(f"map {doc.name!r}: unknown object {a!r}")
        if im not in set(cod.objects):
            raise SemanticError(f"map {doc.name!r}: unknown image {im!r}")
    for a in dom.objects:
        if a not in obj_map:
            raise SemanticError(f"map {doc.name!r}: no image for "
                                f"object {a!r}")
    full = {}
    for a in dom.objects:
        full[dom.identities[a]] = cod.identities[obj_map[a]]
    dom_mors = set(dom.morphisms)
    cod_mors = set(cod.morphisms)
    for f, im in mor_map.items():
        if f not in dom_mors:
            raise SemanticError(f"map {doc.name!r}: unknown morphism {f!r}")
        if im not in cod_mors:
            raise SemanticError(f"map {doc.name!r}: unknown image {im!r}")
        full[f] = im
    for f in dom_mors:
        if f not in full:
            raise SemanticError(f"map {doc.name!r}: no image for "
                                f"morphism {f!r}")
    return cls(dom, cod, dict(obj_map), full)


# ---------------------------------------------------------------------------
# the driver

def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SemanticError(f"cannot read {path}: {exc.strerror}") from exc


def load(path):
    return parse(_read(path))


def _want(doc, *kinds):
    if doc.kind not in kinds:
        raise SemanticError(
            f"{doc.name!r} is a {doc.kind} document, expected "
            f"{' or '.join(kinds)}")
    return doc.value


def _load_map(path, dom, cod):
    doc = load(path)
    _want(doc, "functor", "multifunctor")
    return resolve_map(doc, dom, cod)


def _emit(docs, notes=()):
    chunks = ["".join(f"# {note}\n" for note in notes)] if notes else []
    chunks += [print_document(d) for d in docs]
    sys.stdout.write("\n".join(chunks))


def _structure(path):
    doc = load(path)
    _want(doc, "category", "multicat", "multigraph")
    return doc


def _endpoint_kind(doc):
    return "category" if doc.kind == "functor" else "multicat"


def _usage(msg):
    print(f"usage error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _take_files(args, n, shape):
    if len(args.args) != n:
        _usage(f"expected {shape}")
    return args.args


# --- validate ---------------------------------------------------------------

_VALIDATORS = {
    "category": validate_category,
    "multicat": validate_multicat,
    "multigraph": validate_multigraph,
}


def _report(doc, rep):
    v = doc.value
    if rep.ok:
        print(f"ok {doc.name} {doc.kind} objects={len(v.objects)} "
              f"morphisms={len(v.morphisms)}")
        return 0
    print(f"invalid {doc.name} {doc.kind}")
    for viol in rep.violations:
        print(f"violation {viol.tag} {viol.witness!r}")
    return 1


def _cmd_validate(args):
    code = 0
    for path in args.args:
        doc = load(path)
        if doc.kind not in _VALIDATORS:
            raise SemanticError(
                f"{doc.name!r} is a map document; use: check map MAP DOM COD")
        rep = _VALIDATORS[doc.kind](doc.value, args.budget)
        code = max(code, _report(doc, rep))
    return code


# --- construct ---------------------------------------------------------------

def _k_of(args, fallback=2):
    return args.K if args.K is not None else fallback


def _op_e(args):
    (path,) = _take_files(args, 1, "construct e CATEGORY")
    cat = _want(load(path), "category")
    return [to_document(embed_E(cat, _k_of(args)), "e")], False


def _op_underlying(args):
    (path,) = _take_files(args, 1, "construct underlying MULTICAT")
    mc = _want(load(path), "multicat")
    return [to_document(underlying_1(mc), "underlying")], False


def _op_underlying_graph(args):
    (path,) = _take_files(args, 1, "construct underlying-graph MULTICAT")
    mc = _want(load(path), "multicat")
    return [to_document(underlying_multigraph(mc), "underlying_graph")], False


def _op_sym(args):
    (path,) = _take_files(args, 1, "construct sym MULTIGRAPH")
    g = _want(load(path), "multigraph")
    if g.symmetric:
        raise SemanticError("sym expects a plain multigraph")
    return [to_document(sym(g), "sym")], False


def _op_forget_sym(args):
    (path,) = _take_files(args, 1, "construct forget-sym MULTIGRAPH")
    g = _want(load(path), "multigraph")
    if not g.symmetric:
        raise SemanticError("forget-sym expects a symmetric multigraph")
    return [to_document(forget_sym(g), "forget_sym")], False


def _op_free_category(args):
    (path,) = _take_files(args, 1, "construct free-category MULTIGRAPH")
    doc = load(path)
    g = _graph_down(_want(doc, "multigraph"))
    res = free_category(g, length_bound=args.depth or 6)
    return [to_document(res.category, "free")], not res.exact


def _op_free_multicat(args):
    (path,) = _take_files(args, 1, "construct free-multicat MULTIGRAPH")
    g = _want(load(path), "multigraph")
    if not g.symmetric:
        raise SemanticError("free-multicat expects a symmetric multigraph")
    notes = [f"composite-free {str(is_composite_free(g)).lower()}"]
    res = free_symmulticat(g, args.K, depth_bound=args.depth or 3,
                           budget=args.budget)
    doc = to_document(res.multicat, "free")
    return [doc], (not res.exact, notes)


def _op_com(args):
    _take_files(args, 0, "construct com (no files; use --K)")
    return [to_document(com_multicat(_k_of(args)), "com")], False


def _op_discrete(args):
    if not args.args:
        _usage("construct discrete TOKEN...")
    return [to_document(discrete(tuple(args.args)), "discrete")], False


def _op_indiscrete(args):
    if not args.args:
        _usage("construct indiscrete TOKEN...")
    return [to_document(indiscrete(tuple(args.args)), "indiscrete")], False


def _op_cell(args):
    if not args.args or not re.fullmatch(r"\d+", args.args[0]):
        _usage("construct cell ARITY [TOKEN...]")
    k = int(args.args[0])
    tokens = tuple(args.args[1:]) or ("f",)
    g = cell_multigraph(k, tokens, max(_k_of(args), k, 1))
    return [to_document(g, "cell")], False


def _op_interval(args):
    tokens = tuple(args.args) or ("u",)
    return [to_document(interval_graph(tokens), "interval")], False


def _op_truncate(args):
    (path,) = _take_files(args, 1, "construct truncate FILE (use --K)")
    doc = load(path)
    x = _want(doc, "multicat", "multigraph")
    if args.K is None:
        _usage("truncate needs --K")
    return [to_document(truncate(x, args.K), "truncate")], False


def _op_tensor(args):
    p1, p2 = _take_files(args, 2, "construct tensor M N")
    m = _want(load(p1), "multicat")
    n = _want(load(p2), "multicat")
    return [to_document(tensor(m, n), "tensor")], False


def _op_restrict(args):
    upath, tpath = _take_files(args, 2, "construct restrict UMAP TARGET")
    udoc = load(upath)
    _want(udoc, "functor", "multifunctor")
    u = dict(udoc.value[0])
    target = _want(load(tpath), "category", "multicat")
    for im in u.values():
        if im not in set(target.objects):
            raise SemanticError(f"restrict: unknown image {im!r}")
    return [to_document(restrict_u(u, target), "restrict"),
            to_document(restriction_map(u, target), "restriction")], False


def _op_extend(args):
    if len(args.args) < 3:
        _usage("construct extend UMAP M TOKEN...")
    udoc = load(args.args[0])
    _want(udoc, "functor", "multifunctor")
    u = dict(udoc.value[0])
    mc = _want(load(args.args[1]), "multicat")
    objects = tuple(args.args[2:])
    return [to_document(extend_u(u, mc, objects), "extend"),
            to_document(extension_map(u, mc, objects), "extension")], False


def _factor(args, factorize, names):
    mpath, dpath, cpath = _take_files(args, 3, "construct ... MAP DOM COD")
    ddoc, cdoc = _structure(dpath), _structure(cpath)
    f = _load_map(mpath, ddoc.value, cdoc.value)
    first, second = factorize(f)
    return [to_document(first.cod, "middle"),
            to_document(first, names[0]),
            to_document(second, names[1])], False


def _op_factor_image(args):
    return _factor(args, factor_through_image, ("corestriction", "inclusion"))


def _op_factor_cof(args):
    return _factor(args, factor_cofibration_style, ("cofibration", "second"))


def _op_counit(args):
    (path,) = _take_files(args, 1, "construct counit MULTICAT")
    mc = _want(load(path), "multicat")
    cu = counit_E(mc)
    return [to_document(cu.dom, "e_underlying"),
            to_document(cu, "counit")], False


def _op_e_map(args):
    mpath, dpath, cpath = _take_files(args, 3, "construct e-map F DOM COD")
    ddoc, cdoc = _structure(dpath), _structure(cpath)
    fun = _load_map(mpath, _want(ddoc, "category"), _want(cdoc, "category"))
    return [to_document(e_on_functor(fun, _k_of(args)), "e_map")], False


def _op_transpose_up(args):
    mpath, apath, mcpath = _take_files(args, 3, "construct transpose-up F A M")
    a = _want(load(apath), "category")
    mc = _want(load(mcpath), "multicat")
    fun = _load_map(mpath, a, underlying_1(mc))
    return [to_document(e_raise(a, mc, fun), "transpose")], False


def _op_transpose_down(args):
    mpath, dpath, cpath = _take_files(args, 3,
                                      "construct transpose-down X EA M")
    ea = _want(load(dpath), "multicat")
    mc = _want(load(cpath), "multicat")
    mfun = _load_map(mpath, ea, mc)
    return [to_document(e_lower(mfun), "transpose")], False


def _op_underlying_map(args):
    mpath, dpath, cpath = _take_files(args, 3,
                                      "construct underlying-map X M N")
    m = _want(load(dpath), "multicat")
    n = _want(load(cpath), "multicat")
    mfun = _load_map(mpath, m, n)
    return [to_document(underlying_functor(mfun), "underlying_map")], False


def _op_id(args):
    (path,) = _take_files(args, 1, "construct id FILE")
    doc = _structure(path)
    if doc.kind == "category":
        return [to_document(identity_functor(doc.value), "id")], False
    if doc.kind == "multicat":
        return [to_document(identity_multifunctor(doc.value), "id")], False
    raise SemanticError("construct id expects a category or multicat")


def _op_rename(args):
    if len(args.args) < 3 or len(args.args) % 2 == 0:
        _usage("construct rename FILE OLD NEW [OLD NEW ...]")
    doc = _structure(args.args[0])
    x = _want(doc, "category", "multicat")
    pairs = list(zip(args.args[1::2], args.args[2::2]))
    obj_ren = {o: n for o, n in pairs if o in set(x.objects)}
    mor_ren = {o: n for o, n in pairs if o in set(x.morphisms)}
    missing = [o for o, _ in pairs
               if o not in obj_ren and o not in mor_ren]
    if missing:
        raise SemanticError(f"rename: unknown token {missing[0]!r}")
    if isinstance(x, FiniteCategory):
        out = rename_category(x, obj_ren, mor_ren)
    else:
        out = rename_multicat(x, obj_ren, mor_ren)
    return [to_document(out, doc.name)], False


_CONSTRUCT = {
    "e": _op_e,
    "underlying": _op_underlying,
    "underlying-graph": _op_underlying_graph,
    "underlying-map": _op_underlying_map,
    "sym": _op_sym,
    "forget-sym": _op_forget_sym,
    "free-category": _op_free_category,
    "free-multicat": _op_free_multicat,
    "com": _op_com,
    "discrete": _op_discrete,
    "indiscrete": _op_indiscrete,
    "cell": _op_cell,
    "interval": _op_interval,
    "truncate": _op_truncate,
    "tensor": _op_tensor,
    "restrict": _op_restrict,
    "extend": _op_extend,
    "factor-image": _op_factor_image,
    "factor-cof": _op_factor_cof,
    "counit": _op_counit,
    "e-map": _op_e_map,
    "transpose-up": _op_transpose_up,
    "transpose-down": _op_transpose_down,
    "id": _op_id,
    "rename": _op_rename,
}


def _cmd_construct(args):
    if args.op not in _CONSTRUCT:
        _usage(f"unknown construct operation {args.op!r}; choose from "
               f"{', '.join(sorted(_CONSTRUCT))}")
    docs, inexact = _CONSTRUCT[args.op](args)
    notes = []
    if isinstance(inexact, tuple):
        inexact, extra = inexact
        notes += extra
    notes.append(f"exact {str(not inexact).lower()}")
    _emit(docs, notes)
    if inexact and not args.allow_inexact:
        print("inexact result; pass --allow-inexact to accept",
              file=sys.stderr)
        return 1
    return 0


# --- pushout -----------------------------------------------------------------

def _span_cat(args):
    a, b, c, fp, ip = _take_files(args, 5, "pushout cat A B C F I")
    A = _want(load(a), "category")
    B = _want(load(b), "category")
    C = _want(load(c), "category")
    f = _load_map(fp, A, B)
    i = _load_map(ip, A, C)
    return f, i, (lambda: pushout_cat_ff(f, i, args.budget))


def _span_multicat(args):
    mp, bp, ip = _take_files(args, 3, "pushout multicat M B I")
    m = _want(load(mp), "multicat")
    b = _want(load(bp), "category")
    i = _load_map(ip, underlying_1(m), b)
    f = counit_E(m)
    emap = e_on_functor(i, m.arity_bound)
    return f, emap, (lambda: pushout_multicat_along_E(m, i, args.budget))


def _span_square(args):
    ap, bp, mp, xp, jp = _take_files(args, 5, "pushout square A B M X J")
    a = _want(load(ap), "category")
    b = _want(load(bp), "category")
    m = _want(load(mp), "multicat")
    x = _load_map(xp, embed_E(a, m.arity_bound), m)
    j = _load_map(jp, a, b)
    emap = e_on_functor(j, m.arity_bound)
    return x, emap, (lambda: pushout_multicat_e_square(x, emap, args.budget))


_SPANS = {"cat": _span_cat, "multicat": _span_multicat, "square": _span_square}


def _cmd_pushout(args):
    if args.form not in _SPANS:
        _usage(f"unknown pushout form {args.form!r}; choose from "
               f"{', '.join(sorted(_SPANS))}")
    f, i, run = _SPANS[args.form](args)
    if args.oracle:
        res = bounded_pushout_oracle(f, i, args.budget)
    else:
        res = run()
    notes = [f"provenance {res.provenance}",
             f"exact {str(res.exact).lower()}"]
    code = 0
    if args.verify:
        multi = isinstance(f, MultiFunctor)
        kk = f.cod.arity_bound if multi else 1
        targets = samplers.standard_test_targets(kk)
        if not multi:
            targets = [underlying_1(t) for t in targets]
        rep = verify_pushout((f, i), res, targets, args.budget)
        notes.append(f"verified {str(rep.ok).lower()} "
                     f"cocones {rep.stats['cocones']}")
        if not rep.ok:
            code = 1
    _emit([to_document(res.object, "pushout"),
           to_document(res.leg1, "leg1"),
           to_document(res.leg2, "leg2")], notes)
    if not res.exact and not args.allow_inexact:
        print("inexact pushout; pass --allow-inexact to accept",
              file=sys.stderr)
        return 1
    return code


# --- kar ---------------------------------------------------------------------

def _cmd_kar(args):
    if len(args.args) == 1:
        doc = _structure(args.args[0])
        if doc.kind == "category":
            res = kar_category(doc.value)
        elif doc.kind == "multicat":
            res = kar_multicat(doc.value)
        else:
            raise SemanticError("kar expects a category or multicat")
        _emit([to_document(res.object, "kar"),
               to_document(res.alpha, "alpha")])
        return 0
    if len(args.args) == 3:
        mdoc = load(args.args[0])
        _want(mdoc, "functor", "multifunctor")
        ddoc, cdoc = _structure(args.args[1]), _structure(args.args[2])
        f = resolve_map(mdoc, ddoc.value, cdoc.value)
        if isinstance(f, Functor):
            kf = kar_functor(f)
        else:
            kf = kar_multifunctor(f, args.budget)
        _emit([to_document(kf.dom, "kar_dom"),
               to_document(kf.cod, "kar_cod"),
               to_document(kf, "kar_map")])
        return 0
    _usage("kar FILE, or kar MAP DOM COD")


# --- check -------------------------------------------------------------------

def _pred_map(args):
    mpath, dpath, cpath = _take_files(args, 3, "check map MAP DOM COD")
    ddoc, cdoc = _structure(dpath), _structure(cpath)
    f = _load_map(mpath, ddoc.value, cdoc.value)
    viols = (functor_violations(f) if isinstance(f, Functor)
             else multifunctor_violations(f))
    if not viols:
        print("ok")
        return 0
    print("invalid")
    for viol in viols:
        print(f"violation {viol.tag} {viol.witness!r}")
    return 1


def _resolved(args, shape="check PRED MAP DOM COD"):
    mpath, dpath, cpath = _take_files(args, 3, shape)
    ddoc, cdoc = _structure(dpath), _structure(cpath)
    return resolve_map(load(mpath), ddoc.value, cdoc.value)


def _bool_pred(pred, kinds=(Functor, MultiFunctor)):
    def run(args):
        f = _resolved(args)
        if not isinstance(f, kinds):
            want = " or ".join(k.__name__ for k in kinds)
            raise SemanticError(f"predicate needs a {want} document")
        return 0 if pred(f) else 1
    return run


def _pred_split(args):
    (path,) = _take_files(args, 1, "check split FILE")
    doc = _structure(path)
    cat = (doc.value if doc.kind == "category"
           else underlying_1(_want(doc, "multicat", "category")))
    print(f"# idempotents {len(idempotents(cat))}")
    return 0 if idempotents_split(cat) else 1


def _pred_iso(args):
    p1, p2 = _take_files(args, 2, "check iso A B")
    d1, d2 = _structure(p1), _structure(p2)
    if d1.kind != d2.kind:
        raise SemanticError("iso expects two documents of the same kind")
    if d1.kind == "category":
        found = find_isomorphism(d1.value, d2.value, args.budget)
    elif d1.kind == "multicat":
        found = find_multicat_isomorphism(d1.value, d2.value, args.budget)
    else:
        raise SemanticError("iso expects categories or multicats")
    return 0 if found is not None else 1


def _pred_hom_count(args):
    p1, p2 = _take_files(args, 2, "check hom-count A B")
    d1, d2 = _structure(p1), _structure(p2)
    if d1.kind != d2.kind:
        raise SemanticError("hom-count expects two documents of "
                            "the same kind")
    enum = {"category": enumerate_functors,
            "multicat": enumerate_multifunctors,
            "multigraph": enumerate_graph_maps}[d1.kind]
    print(len(enum(d1.value, d2.value, args.budget)))
    return 0


_CHECKS = {
    "map": _pred_map,
    "ff": _bool_pred(is_full_faithful, (Functor,)),
    "ess-surj": _bool_pred(is_essentially_surjective, (Functor,)),
    "equivalence": _bool_pred(is_equivalence, (Functor,)),
    "isofibration": _bool_pred(is_isofibration, (Functor,)),
    "multi-equivalence": _bool_pred(is_multi_equivalence, (MultiFunctor,)),
    "multi-fibration": _bool_pred(is_multi_fibration, (MultiFunctor,)),
    "trivial-fibration": _bool_pred(is_trivial_fibration),
    "cofibration": _bool_pred(is_cofibration),
    "locally-bijective": _bool_pred(is_locally_bijective),
    "morita": _bool_pred(is_morita_equivalence, (Functor,)),
    "morita-multi": _bool_pred(is_morita_multi_equivalence, (MultiFunctor,)),
    "split": _pred_split,
    "iso": _pred_iso,
    "hom-count": _pred_hom_count,
}


def _cmd_check(args):
    if args.pred not in _CHECKS:
        _usage(f"unknown predicate {args.pred!r}; choose from "
               f"{', '.join(sorted(_CHECKS))}")
    code = _CHECKS[args.pred](args)
    if args.pred not in ("map", "hom-count"):
        print("true" if code == 0 else "false")
    return code


# --- lift --------------------------------------------------------------------

def _cmd_lift(args):
    if args.rlp:
        a, b, x, y, ip, pp = _take_files(args, 6, "lift --rlp A B X Y I P")
    else:
        a, b, x, y, ip, pp, tp, bp = _take_files(
            args, 8, "lift A B X Y I P TOP BOTTOM")
    da, db, dx, dy = (_structure(p) for p in (a, b, x, y))
    i = _load_map(ip, da.value, db.value)
    p = _load_map(pp, dx.value, dy.value)
    if args.rlp:
        ok = rlp(p, i, args.budget)
        print("true" if ok else "false")
        return 0 if ok else 1
    top = _load_map(tp, da.value, dx.value)
    bottom = _load_map(bp, db.value, dy.value)
    found, lifts = has_lifting(LiftingProblem(i, p, top, bottom), args.budget)
    docs = [to_document(h, f"lift{n}") for n, h in enumerate(lifts)]
    _emit(docs, [f"lifts {len(lifts)}"])
    return 0 if found else 1


# --- gensets -----------------------------------------------------------------

def _cmd_gensets(args):
    kk = _k_of(args)
    sets = []
    if args.label in ("I", "both"):
        sets.append(generating_I(kk))
    if args.label in ("J", "both"):
        sets.append(generating_J(kk))
    docs, notes = [], []
    for gs in sets:
        notes.append(f"{gs.label} truncation {kk} maps {len(gs.maps)}")
        for n, m in enumerate(gs.maps):
            tag = f"{gs.label}{n}"
            docs += [to_document(m.dom, f"{tag}_dom"),
                     to_document(m.cod, f"{tag}_cod"),
                     to_document(m, tag)]
    _emit(docs, notes)
    return 0


# --- premises ----------------------------------------------------------------

def _cmd_premises(args):
    kk = _k_of(args)
    rng = random.Random(args.seed)
    maps = [samplers.random_multifunctor(rng, kk) for _ in range(args.maps)]
    points = None
    if args.pushouts:
        points = []
        while len(points) < args.pushouts:
            m = samplers.random_multicat(rng, kk)
            if m.objects:
                points.append((m, rng.choice(m.objects)))
    rep = check_61_premises(maps, generating_I(kk), generating_J(kk),
                            points, args.budget)
    print(f"# premises truncation {kk} seed {args.seed} maps {len(maps)} "
          f"pushouts {len(points) if points is not None else 'derived'}")
    if rep.stats:
        for key in sorted(rep.stats):
            print(f"# {key} {rep.stats[key]}")
    if rep.ok:
        print("ok")
        return 0
    print("failed")
    for viol in rep.violations:
        print(f"violation {viol.tag} {viol.witness!r}")
    return 1


# ---------------------------------------------------------------------------
# operation coverage: each public operation and a subcommand that reaches it

OPERATIONS = {
    # core
    "build_category": "premises",
    "build_multicat": "premises",
    "check_token": "validate",
    "compose_functors": "pushout",
    "compose_multifunctors": "kar",
    "enumerate_functors": "check",
    "enumerate_graph_maps": "check",
    "enumerate_multifunctors": "check",
    "find_isomorphism": "check",
    "find_multicat_isomorphism": "check",
    "fresh_token": "kar",
    "full_subcategory": "kar",
    "functor_violations": "check",
    "id_token": "validate",
    "identity_functor": "construct",
    "identity_multifunctor": "construct",
    "is_id_token": "validate",
    "is_locally_bijective": "check",
    "multifunctor_violations": "check",
    "rename_category": "construct",
    "rename_multicat": "construct",
    "sig1": "validate",
    "validate_category": "validate",
    "validate_multicat": "validate",
    "validate_multigraph": "validate",
    # constructions
    "embed_E": "construct",
    "underlying_1": "construct",
    "counit_E": "construct",
    "e_on_functor": "construct",
    "e_lower": "construct",
    "e_raise": "construct",
    "underlying_functor": "construct",
    "sym": "construct",
    "sym_map": "gensets",
    "forget_sym": "construct",
    "underlying_multigraph": "construct",
    "cell_multigraph": "construct",
    "interval_graph": "construct",
    "free_category": "construct",
    "is_composite_free": "construct",
    "free_symmulticat": "construct",
    "free_multifunctor": "gensets",
    "restrict_u": "construct",
    "restriction_map": "construct",
    "extend_u": "construct",
    "extension_map": "construct",
    "factor_through_image": "construct",
    "factor_cofibration_style": "construct",
    "tensor": "construct",
    "com_multicat": "construct",
    "discrete": "construct",
    "indiscrete": "construct",
    "truncate": "construct",
    # colimits
    "coend_set": "pushout",
    "pushout_cat_ff": "pushout",
    "pushout_multicat_along_E": "pushout",
    "pushout_multicat_e_square": "pushout",
    "bounded_pushout_oracle": "pushout",
    "verify_pushout": "pushout",
    "is_isomorphic_over_cocone": "pushout",
    # karoubi
    "idempotents": "check",
    "idempotents_split": "check",
    "kar_category": "kar",
    "kar_multicat": "kar",
    "kar_functor": "kar",
    "kar_multifunctor": "kar",
    "is_morita_equivalence": "check",
    "is_morita_multi_equivalence": "check",
    # modelcheck
    "isos_of": "check",
    "is_full_faithful": "check",
    "is_essentially_surjective": "check",
    "is_equivalence": "check",
    "is_isofibration": "check",
    "is_multi_equivalence": "check",
    "is_multi_fibration": "check",
    "is_trivial_fibration": "check",
    "is_cofibration": "check",
    "has_lifting": "lift",
    "rlp": "lift",
    "generating_I": "gensets",
    "generating_J": "gensets",
    "check_61_premises": "premises",
}


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser():
    top = argparse.ArgumentParser(
        prog="finmulticat",
        description="Finite categories and truncated symmetric "
                    "multicategories over line-based documents.")
    top.add_argument("--format", choices=("canonical",), default="canonical",
                     help="output format (only canonical exists)")
    sub = top.add_subparsers(dest="cmd", required=True, metavar="SUBCOMMAND")

    def common(p, seed=False):
        p.add_argument("--budget", type=int, default=None,
                       help="abort with exit code 3 past this many steps")
        p.add_argument("--K", type=int, default=None,
                       help="arity truncation bound (default 2)")
        p.add_argument("--allow-inexact", action="store_true",
                       help="exit 0 even when a result is marked inexact")
        if seed:
            p.add_argument("--seed", type=int, default=0,
                           help="RNG seed for sampling")

    p = sub.add_parser("validate", help="check documents against the laws")
    p.add_argument("args", nargs="+", metavar="FILE")
    common(p)
    p.set_defaults(run=_cmd_validate)

    p = sub.add_parser("construct", help="run a construction on documents")
    p.add_argument("op", metavar="OP",
                   help=f"one of: {', '.join(sorted(_CONSTRUCT))}")
    p.add_argument("args", nargs="*", metavar="ARG")
    p.add_argument("--depth", type=int, default=None,
                   help="depth bound for the free constructions")
    common(p)
    p.set_defaults(run=_cmd_construct)

    p = sub.add_parser("pushout", help="pushout of a span of documents")
    p.add_argument("form", metavar="FORM", help="cat, multicat, or square")
    p.add_argument("args", nargs="*", metavar="FILE")
    p.add_argument("--oracle", action="store_true",
                   help="use the congruence-closure oracle")
    p.add_argument("--verify", action="store_true",
                   help="check the universal property on standard targets")
    common(p)
    p.set_defaults(run=_cmd_pushout)

    p = sub.add_parser("kar", help="idempotent completion")
    p.add_argument("args", nargs="+", metavar="FILE")
    common(p)
    p.set_defaults(run=_cmd_kar)

    p = sub.add_parser("check", help="predicates on documents and maps")
    p.add_argument("pred", metavar="PRED",
                   help=f"one of: {', '.join(sorted(_CHECKS))}")
    p.add_argument("args", nargs="*", metavar="FILE")
    common(p)
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("lift", help="solve or refute a lifting problem")
    p.add_argument("args", nargs="+", metavar="FILE")
    p.add_argument("--rlp", action="store_true",
                   help="test the right lifting property over all squares")
    common(p)
    p.set_defaults(run=_cmd_lift)

    p = sub.add_parser("gensets", help="print the generating sets")
    p.add_argument("--label", choices=("I", "J", "both"), default="both")
    common(p)
    p.set_defaults(run=_cmd_gensets)

    p = sub.add_parser("premises", help="sampled premise check")
    p.add_argument("--maps", type=int, default=20)
    p.add_argument("--pushouts", type=int, default=10)
    common(p, seed=True)
    p.set_defaults(run=_cmd_premises)

    return top


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (DocumentError, PushoutConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
