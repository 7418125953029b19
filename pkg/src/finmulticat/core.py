"""Finite categories, arity-truncated symmetric multicategories, and their maps.

Everything is a plain table over string tokens: homs, identities, composition
and symmetric-group actions are dicts.  Morphism tokens are unique within a
carrier, so a token determines its signature.  All iteration and all derived
names follow sorted token order, which makes every construction and every
printed document deterministic.  Instances are treated as immutable once
built; operations return new instances.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from . import perms

DEFAULT_BUDGET = 5_000_000

RESERVED = set("(),:=#")


class BudgetExceededError(Exception):
    """Raised when an enumeration or validation exceeds its search budget."""


class Budget:
    def __init__(self, limit=DEFAULT_BUDGET, label="search"):
        self.limit = limit if limit is not None else DEFAULT_BUDGET
        self.used = 0
        self.label = label

    def spend(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(f"{self.label} budget exceeded ({self.limit})")


def check_token(tok):
    if not tok or any(c.isspace() or c in RESERVED for c in tok):
        raise ValueError(f"bad token {tok!r}: tokens are nonempty and free of whitespace and {''.join(sorted(RESERVED))}")


def id_token(obj):
    return "id_" + obj


def is_id_token(tok):
    return tok.startswith("id_")


def fresh_token(base, taken):
    """base if unused, else base~2, base~3, ... deterministically."""
    if base not in taken:
        return base
    n = 2
    while f"{base}~{n}" in taken:
        n += 1
    return f"{base}~{n}"


class Signature(NamedTuple):
    inputs: tuple
    output: str

    @property
    def arity(self):
        return len(self.inputs)


def sig1(a, b):
    return Signature((a,), b)


def sig_key(sig):
    return (len(sig.inputs), sig.inputs, sig.output)


class Violation(NamedTuple):
    tag: str
    witness: tuple


@dataclass
class ValidationReport:
    ok: bool
    violations: tuple
    stats: dict = None

    def tags(self):
        return sorted({v.tag for v in self.violations})


# ---------------------------------------------------------------------------
# carriers


@dataclass(eq=True)
class FiniteCategory:
    objects: tuple
    homs: dict          # (src, tgt) -> sorted tuple of morphism tokens, nonempty only
    identities: dict    # obj -> token
    comp: dict          # (g, f) -> g∘f for f: a->b, g: b->c

    _sig: dict = field(init=False, repr=False, compare=False)
    _by_source: dict = field(init=False, repr=False, compare=False)
    _by_target: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.objects = tuple(sorted(self.objects))
        homs = {}
        sig = {}
        for pair in sorted(self.homs):
            toks = tuple(sorted(self.homs[pair]))
            if not toks:
                continue
            homs[pair] = toks
            for t in toks:
                if t in sig:
                    raise ValueError(f"duplicate morphism token {t!r}")
                sig[t] = pair
        self.homs = homs
        self._sig = sig
        by_s, by_t = {}, {}
        for t in sorted(sig):
            a, b = sig[t]
            by_s.setdefault(a, []).append(t)
            by_t.setdefault(b, []).append(t)
        self._by_source = {k: tuple(v) for k, v in by_s.items()}
        self._by_target = {k: tuple(v) for k, v in by_t.items()}

    def hom(self, a, b):
        return self.homs.get((a, b), ())

    @property
    def morphisms(self):
        return tuple(sorted(self._sig))

    def has_mor(self, m):
        return m in self._sig

    def source(self, m):
        return self._sig[m][0]

    def target(self, m):
        return self._sig[m][1]

    def identity(self, a):
        return self.identities[a]

    def compose(self, g, f):
        return self.comp[(g, f)]

    def is_identity_mor(self, m):
        a, b = self._sig[m]
        return a == b and self.identities.get(a) == m

    def endos(self, a):
        return self.hom(a, a)


def build_category(objects, mors=None, comp=None):
    """Assemble a category from non-identity data.

    mors maps token -> (src, tgt); comp maps (g, f) -> h for non-unit pairs.
    Identities id_x and all unit composition entries are filled in.
    """
    objects = tuple(sorted(objects))
    homs = {}
    identities = {}
    for a in objects:
        identities[a] = id_token(a)
        homs[(a, a)] = [id_token(a)]
    for tok in sorted(mors or {}):
        src, tgt = (mors or {})[tok]
        check_token(tok)
        if is_id_token(tok):
            raise ValueError(f"morphism token {tok!r} uses the reserved id_ prefix")
        if src not in objects or tgt not in objects:
            raise ValueError(f"morphism {tok!r} references unknown object")
        homs.setdefault((src, tgt), []).append(tok)
    table = dict(comp or {})
    cat = FiniteCategory(objects, {k: tuple(v) for k, v in homs.items()}, identities, {})
    full = {}
    for m in cat.morphisms:
        a, b = cat._sig[m]
        full[(identities[b], m)] = m
        full[(m, identities[a])] = m
    full.update(table)
    return FiniteCategory(cat.objects, cat.homs, identities, full)


@dataclass(eq=True)
class Graph:
    """Directed multigraph: generators for free categories."""

    objects: tuple
    edges: dict     # (src, tgt) -> sorted tuple of edge tokens

    def __post_init__(self):
        self.objects = tuple(sorted(self.objects))
        seen = set()
        edges = {}
        for pair in sorted(self.edges):
            toks = tuple(sorted(self.edges[pair]))
            if not toks:
                continue
            for t in toks:
                if t in seen:
                    raise ValueError(f"duplicate edge token {t!r}")
                seen.add(t)
            edges[pair] = toks
        self.edges = edges


@dataclass(eq=True)
class MultiGraph:
    """Arity-truncated multigraph; optionally carries Σ_k actions."""

    objects: tuple
    homs: dict          # Signature -> sorted tuple of tokens
    arity_bound: int
    symmetric: bool = False
    action: dict = field(default_factory=dict)   # (token, perm) -> token

    _sig: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.objects = tuple(sorted(self.objects))
        homs = {}
        sig = {}
        for s in sorted(self.homs, key=sig_key):
            toks = tuple(sorted(self.homs[s]))
            if not toks:
                continue
            homs[s] = toks
            for t in toks:
                if t in sig:
                    raise ValueError(f"duplicate token {t!r}")
                sig[t] = s
        self.homs = homs
        self._sig = sig

    def hom(self, s):
        return self.homs.get(s, ())

    @property
    def morphisms(self):
        return tuple(sorted(self._sig))

    def signature(self, m):
        return self._sig[m]

    def act(self, p, m):
        if perms.is_identity(p):
            return m
        return self.action[(m, p)]


@dataclass(eq=True)
class TruncatedSymMulticat:
    objects: tuple
    homs: dict          # Signature -> sorted tuple of tokens
    arity_bound: int
    identities: dict    # obj -> token at ((a,), a)
    action: dict        # (token, perm) -> token, perm non-identity, arity >= 2
    comp: dict          # (g, (f_1..f_n)) -> token, n = arity(g) >= 1

    _sig: dict = field(init=False, repr=False, compare=False)
    _by_output: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.objects = tuple(sorted(self.objects))
        homs = {}
        sig = {}
        for s in sorted(self.homs, key=sig_key):
            toks = tuple(sorted(self.homs[s]))
            if not toks:
                continue
            homs[s] = toks
            for t in toks:
                if t in sig:
                    raise ValueError(f"duplicate morphism token {t!r}")
                sig[t] = s
        self.homs = homs
        self._sig = sig
        by_out = {}
        for t in sorted(sig):
            by_out.setdefault(sig[t].output, []).append(t)
        self._by_output = {k: tuple(v) for k, v in by_out.items()}

    def hom(self, s):
        return self.homs.get(s, ())

    @property
    def morphisms(self):
        return tuple(sorted(self._sig))

    def has_mor(self, m):
        return m in self._sig

    def signature(self, m):
        return self._sig[m]

    def arity(self, m):
        return len(self._sig[m].inputs)

    def identity(self, a):
        return self.identities[a]

    def act(self, p, m):
        if perms.is_identity(p):
            return m
        return self.action[(m, p)]

    def compose(self, g, fs):
        if len(fs) == 0:
            return g
        return self.comp[(g, tuple(fs))]

    def is_identity_mor(self, m):
        s = self._sig[m]
        return s.arity == 1 and self.identities.get(s.output) == m


def close_action_entries(entries):
    """Close partial Σ-action entries under composition; conflicts raise."""
    table = dict(entries)
    changed = True
    while changed:
        changed = False
        for (f, p), v in list(table.items()):
            for (g, q), w in list(table.items()):
                if g != v or len(p) != len(q):
                    continue
                key = (f, perms.compose(q, p))
                if perms.is_identity(key[1]):
                    if w != f:
                        raise ValueError(f"inconsistent action entries around {f!r}")
                    continue
                if key in table:
                    if table[key] != w:
                        raise ValueError(f"inconsistent action entries around {f!r}")
                else:
                    table[key] = w
                    changed = True
    return table


def build_multicat(objects, arity_bound, mors=None, comp=None, action=None):
    """Assemble a multicategory from non-implicit data.

    mors maps token -> Signature (identities excluded); comp lists non-unit
    entries; action entries may be partial (e.g. adjacent transpositions
    only) and are closed under composition.  Unit composition entries and
    identities are filled in; validation stays with validate_multicat.
    """
    objects = tuple(sorted(objects))
    homs = {}
    identities = {}
    for a in objects:
        identities[a] = id_token(a)
        homs[sig1(a, a)] = [id_token(a)]
    for tok in sorted(mors or {}):
        s = (mors or {})[tok]
        check_token(tok)
        if is_id_token(tok):
            raise ValueError(f"morphism token {tok!r} uses the reserved id_ prefix")
        if s.output not in objects or any(x not in objects for x in s.inputs):
            raise ValueError(f"morphism {tok!r} references unknown object")
        homs.setdefault(s, []).append(tok)
    mc = TruncatedSymMulticat(objects, {k: tuple(v) for k, v in homs.items()},
                              arity_bound, identities, {}, {})
    table = close_action_entries(action or {})
    full_comp = {}
    for g in mc.morphisms:
        s = mc.signature(g)
        if s.arity >= 1:
            full_comp[(g, tuple(id_token(x) for x in s.inputs))] = g
    for f in mc.morphisms:
        out = mc.signature(f).output
        full_comp[(identities[out], (f,))] = f
    full_comp.update(comp or {})
    return TruncatedSymMulticat(mc.objects, mc.homs, arity_bound, identities,
                                table, full_comp)


# ---------------------------------------------------------------------------
# maps


@dataclass(eq=True)
class Functor:
    dom: FiniteCategory
    cod: FiniteCategory
    obj_map: dict
    mor_map: dict

    def on_obj(self, a):
        return self.obj_map[a]

    def on_mor(self, m):
        return self.mor_map[m]


@dataclass(eq=True)
class MultiFunctor:
    dom: TruncatedSymMulticat
    cod: TruncatedSymMulticat
    obj_map: dict
    mor_map: dict

    def on_obj(self, a):
        return self.obj_map[a]

    def on_mor(self, m):
        return self.mor_map[m]


@dataclass(eq=True)
class MultiGraphMap:
    dom: MultiGraph
    cod: MultiGraph
    obj_map: dict
    mor_map: dict


def identity_functor(c):
    return Functor(c, c, {a: a for a in c.objects}, {m: m for m in c.morphisms})


def identity_multifunctor(m):
    return MultiFunctor(m, m, {a: a for a in m.objects}, {t: t for t in m.morphisms})


def compose_functors(g, f):
    if f.cod != g.dom:
        raise ValueError("functors not composable")
    return Functor(f.dom, g.cod,
                   {a: g.obj_map[v] for a, v in f.obj_map.items()},
                   {m: g.mor_map[v] for m, v in f.mor_map.items()})


def compose_multifunctors(g, f):
    if f.cod != g.dom:
        raise ValueError("multifunctors not composable")
    return MultiFunctor(f.dom, g.cod,
                        {a: g.obj_map[v] for a, v in f.obj_map.items()},
                        {m: g.mor_map[v] for m, v in f.mor_map.items()})


def full_subcategory(cat, objects):
    """Full subcategory on the given objects; all tokens are preserved."""
    keep = set(objects)
    for a in keep:
        if a not in cat.objects:
            raise ValueError(f"unknown object {a!r}")
    homs = {k: v for k, v in cat.homs.items() if k[0] in keep and k[1] in keep}
    alive = {m for ms in homs.values() for m in ms}
    return FiniteCategory(
        tuple(sorted(keep)),
        homs,
        {a: m for a, m in cat.identities.items() if a in keep},
        {k: v for k, v in cat.comp.items()
         if k[0] in alive and k[1] in alive},
    )


def is_locally_bijective(fun):
    """True when the map restricts to a bijection on every hom set.

    Accepts a Functor or a MultiFunctor.  Objects need not be injective;
    the comparison is hom(s) -> hom(image of s) for each signature s of
    the domain, against the full hom set of the codomain.
    """
    dom, cod = fun.dom, fun.cod
    if isinstance(fun, Functor):
        doms = [((a, b), dom.hom(a, b)) for a in dom.objects for b in dom.objects]
        target = lambda k: cod.hom(fun.obj_map[k[0]], fun.obj_map[k[1]])
    else:
        doms = []
        seen = set()
        for s in dom.homs:
            seen.add(s)
            doms.append((s, dom.hom(s)))
        for k in range(dom.arity_bound + 1):
            for ins in product(dom.objects, repeat=k):
                for out in dom.objects:
                    s = Signature(ins, out)
                    if s not in seen:
                        doms.append((s, ()))
        target = lambda s: cod.hom(Signature(
            tuple(fun.obj_map[a] for a in s.inputs), fun.obj_map[s.output]))
    for key, ms in doms:
        image = {fun.mor_map[m] for m in ms}
        if len(image) != len(ms) or len(image) != len(target(key)):
            return False
    return True


def functor_violations(fun):
    """Structure-preservation defects of a Functor, as Violation tuples."""
    out = []
    dom, cod = fun.dom, fun.cod
    for a in dom.objects:
        if fun.obj_map.get(a) not in cod.objects:
            out.append(Violation("map-object", (a,)))
    for m in dom.morphisms:
        v = fun.mor_map.get(m)
        if v is None or not cod.has_mor(v):
            out.append(Violation("map-morphism", (m,)))
            continue
        a, b = dom._sig[m]
        if cod._sig[v] != (fun.obj_map.get(a), fun.obj_map.get(b)):
            out.append(Violation("map-signature", (m, v)))
    if out:
        return out
    for a in dom.objects:
        if fun.mor_map[dom.identity(a)] != cod.identity(fun.obj_map[a]):
            out.append(Violation("map-identity", (a,)))
    for (g, f), h in sorted(dom.comp.items()):
        want = cod.comp.get((fun.mor_map[g], fun.mor_map[f]))
        if want != fun.mor_map[h]:
            out.append(Violation("map-comp", (g, f)))
    return out


def multifunctor_violations(fun):
    out = []
    dom, cod = fun.dom, fun.cod
    if dom.arity_bound != cod.arity_bound:
        out.append(Violation("map-truncation", (dom.arity_bound, cod.arity_bound)))
        return out
    for a in dom.objects:
        if fun.obj_map.get(a) not in cod.objects:
            out.append(Violation("map-object", (a,)))
    for m in dom.morphisms:
        v = fun.mor_map.get(m)
        if v is None or not cod.has_mor(v):
            out.append(Violation("map-morphism", (m,)))
            continue
        s = dom.signature(m)
        want = Signature(tuple(fun.obj_map.get(x) for x in s.inputs), fun.obj_map.get(s.output))
        if cod.signature(v) != want:
            out.append(Violation("map-signature", (m, v)))
    if out:
        return out
    for a in dom.objects:
        if fun.mor_map[dom.identity(a)] != cod.identity(fun.obj_map[a]):
            out.append(Violation("map-identity", (a,)))
    for (m, p), m2 in sorted(dom.action.items()):
        if cod.act(p, fun.mor_map[m]) != fun.mor_map[m2]:
            out.append(Violation("map-action", (m, p)))
    for (g, fs), h in sorted(dom.comp.items()):
        want = cod.comp.get((fun.mor_map[g], tuple(fun.mor_map[f] for f in fs)))
        if want != fun.mor_map[h]:
            out.append(Violation("map-comp", (g, fs)))
    return out


# ---------------------------------------------------------------------------
# validation


def _arg_tuples(mc, inputs, kmax):
    """All tuples (f_1..f_n) with output(f_t) = inputs[t] and Σ arity ≤ kmax."""
    n = len(inputs)

    def rec(t, remaining):
        if t == n:
            yield ()
            return
        for f in mc._by_output.get(inputs[t], ()):
            k = mc.signature(f).arity
            if k > remaining:
                continue
            for rest in rec(t + 1, remaining - k):
                yield (f,) + rest

    yield from rec(0, kmax)


def validate_category(cat, budget=None):
    b = Budget(budget, "validation")
    v = []
    objset = set(cat.objects)
    for (a0, b0) in cat.homs:
        if a0 not in objset or b0 not in objset:
            v.append(Violation("dangling-token", (a0, b0)))
    for a in cat.objects:
        t = cat.identities.get(a)
        if t is None or cat._sig.get(t) != (a, a):
            v.append(Violation("identity-missing", (a,)))
    for extra in sorted(set(cat.identities) - objset):
        v.append(Violation("dangling-token", (extra,)))
    known = lambda m: m in cat._sig
    for (g, f), h in sorted(cat.comp.items()):
        b.spend()
        if not (known(g) and known(f) and known(h)):
            v.append(Violation("dangling-token", (g, f, h)))
            continue
        if cat.source(g) != cat.target(f):
            v.append(Violation("comp-signature", (g, f)))
            continue
        if cat._sig[h] != (cat.source(f), cat.target(g)):
            v.append(Violation("comp-signature", (g, f, h)))
    for f in cat.morphisms:
        a0, b0 = cat._sig[f]
        for g in cat._by_source.get(b0, ()):
            b.spend()
            if (g, f) not in cat.comp:
                v.append(Violation("comp-missing", (g, f)))
    if any(x.tag in ("dangling-token", "comp-missing", "identity-missing",
                     "comp-signature") for x in v):
        return ValidationReport(False, tuple(v))
    for f in cat.morphisms:
        a0, b0 = cat._sig[f]
        if cat.comp[(cat.identity(b0), f)] != f:
            v.append(Violation("unit-law", (cat.identity(b0), f)))
        if cat.comp[(f, cat.identity(a0))] != f:
            v.append(Violation("unit-law", (f, cat.identity(a0))))
    for f in cat.morphisms:
        fb = cat._sig[f][1]
        for g in cat._by_source.get(fb, ()):
            gc = cat._sig[g][1]
            for h in cat._by_source.get(gc, ()):
                b.spend()
                if cat.comp[(h, cat.comp[(g, f)])] != cat.comp[(cat.comp[(h, g)], f)]:
                    v.append(Violation("associativity", (h, g, f)))
    return ValidationReport(not v, tuple(v))


def validate_multicat(mc, budget=None):
    b = Budget(budget, "validation")
    v = []
    objset = set(mc.objects)
    kk = mc.arity_bound
    for s in mc.homs:
        if s.output not in objset or any(x not in objset for x in s.inputs):
            v.append(Violation("dangling-token", (s,)))
        if s.arity > kk:
            v.append(Violation("arity-bound", (s,)))
    for a in mc.objects:
        t = mc.identities.get(a)
        if t is None or mc._sig.get(t) != sig1(a, a):
            v.append(Violation("identity-missing", (a,)))
    for extra in sorted(set(mc.identities) - objset):
        v.append(Violation("dangling-token", (extra,)))

    known = lambda m: m in mc._sig
    # action closure and typing
    for (m, p), m2 in sorted(mc.action.items()):
        b.spend()
        if not known(m) or not known(m2):
            v.append(Violation("dangling-token", (m, m2)))
            continue
        s = mc.signature(m)
        if len(p) != s.arity or s.arity < 2 or perms.is_identity(p) or sorted(p) != list(range(s.arity)):
            v.append(Violation("action-signature", (m, p)))
            continue
        if mc.signature(m2) != Signature(perms.apply_to(p, s.inputs), s.output):
            v.append(Violation("action-signature", (m, p, m2)))
    for s in sorted(mc.homs, key=sig_key):
        if s.arity < 2:
            continue
        for m in mc.homs[s]:
            for p in perms.all_perms(s.arity):
                if perms.is_identity(p):
                    continue
                b.spend()
                if (m, p) not in mc.action:
                    v.append(Violation("action-missing", (m, p)))

    # comp closure and typing
    for (g, fs), h in sorted(mc.comp.items()):
        b.spend()
        if not known(g) or not known(h) or any(not known(f) for f in fs):
            v.append(Violation("dangling-token", (g,) + tuple(fs) + (h,)))
            continue
        s = mc.signature(g)
        if len(fs) != s.arity or s.arity == 0:
            v.append(Violation("comp-signature", (g, fs)))
            continue
        argsigs = [mc.signature(f) for f in fs]
        if any(a.output != s.inputs[t] for t, a in enumerate(argsigs)) or \
                sum(a.arity for a in argsigs) > kk:
            v.append(Violation("comp-signature", (g, fs)))
            continue
        want = Signature(sum((a.inputs for a in argsigs), ()), s.output)
        if mc.signature(h) != want:
            v.append(Violation("comp-signature", (g, fs, h)))
    for g in mc.morphisms:
        s = mc.signature(g)
        if s.arity == 0:
            continue
        for fs in _arg_tuples(mc, s.inputs, kk):
            b.spend()
            if (g, fs) not in mc.comp:
                v.append(Violation("comp-missing", (g, fs)))

    hard = ("dangling-token", "comp-missing", "action-missing",
            "identity-missing", "comp-signature", "action-signature", "arity-bound")
    if any(x.tag in hard for x in v):
        return ValidationReport(False, tuple(v))

    # group action law
    for s in sorted(mc.homs, key=sig_key):
        k = s.arity
        if k < 2:
            continue
        allp = perms.all_perms(k)
        for m in mc.homs[s]:
            for q in allp:
                mq = mc.act(q, m)
                for p in allp:
                    b.spend()
                    if mc.act(p, mq) != mc.act(perms.compose(p, q), m):
                        v.append(Violation("action-group-law", (m, p, q)))

    # unit laws
    for g in mc.morphisms:
        s = mc.signature(g)
        if s.arity >= 1:
            ids = tuple(mc.identity(x) for x in s.inputs)
            if mc.comp[(g, ids)] != g:
                v.append(Violation("unit-law", (g, ids)))
        if mc.comp[(mc.identity(s.output), (g,))] != g:
            v.append(Violation("unit-law", (mc.identity(s.output), g)))

    # equivariance in the outer morphism
    for (g, fs), h in sorted(mc.comp.items()):
        n = len(fs)
        if n < 2:
            continue
        ks = tuple(mc.signature(f).arity for f in fs)
        for p in perms.all_perms(n):
            if perms.is_identity(p):
                continue
            b.spend()
            lhs = mc.comp.get((mc.act(p, g), perms.apply_to(p, fs)))
            if lhs != mc.act(perms.block(p, ks), h):
                v.append(Violation("equivariance-root", (g, fs, p)))

    # equivariance in each argument slot
    for (g, fs), h in sorted(mc.comp.items()):
        ks = tuple(mc.signature(f).arity for f in fs)
        for t, f in enumerate(fs):
            if ks[t] < 2:
                continue
            for tau in perms.transpositions(ks[t]):
                b.spend()
                fs2 = fs[:t] + (mc.act(tau, f),) + fs[t + 1:]
                big = perms.direct_sum([perms.identity(k) if j != t else tau
                                        for j, k in enumerate(ks)])
                if mc.comp.get((g, fs2)) != mc.act(big, h):
                    v.append(Violation("equivariance-slot", (g, fs, t, tau)))

    # associativity
    for (g, fs), h in sorted(mc.comp.items()):
        inner_choices = []
        for f in fs:
            fsig = mc.signature(f)
            opts = [((), f)] if fsig.arity == 0 else None
            if opts is None:
                opts = [(hs, mc.comp[(f, hs)])
                        for hs in _arg_tuples(mc, fsig.inputs, kk)]
            inner_choices.append(opts)
        for pick in product(*inner_choices):
            hss = sum((hs for hs, _ in pick), ())
            total = sum(mc.signature(x).arity for x in hss)
            if total > kk or len(hss) == 0:
                continue
            b.spend()
            left = mc.comp.get((h, hss))
            right = mc.comp.get((g, tuple(r for _, r in pick)))
            if left != right:
                v.append(Violation("associativity", (g, fs, hss)))

    return ValidationReport(not v, tuple(v))


def validate_multigraph(g, budget=None):
    """Shape checks for a multigraph: dangling tokens, arity bound, and,
    when symmetric, a total well-typed group action."""
    b = Budget(budget, "validation")
    v = []
    objset = set(g.objects)
    kk = g.arity_bound
    for s in g.homs:
        if s.output not in objset or any(x not in objset for x in s.inputs):
            v.append(Violation("dangling-token", (s,)))
        if s.arity > kk:
            v.append(Violation("arity-bound", (s,)))
    if not g.symmetric:
        if g.action:
            v.append(Violation("action-signature", ("not symmetric",)))
        return ValidationReport(not v, tuple(v))
    sig_of = {m: s for s, ms in g.homs.items() for m in ms}
    for (m, p), m2 in sorted(g.action.items()):
        b.spend()
        if m not in sig_of or m2 not in sig_of:
            v.append(Violation("dangling-token", (m, m2)))
            continue
        s = sig_of[m]
        if len(p) != s.arity or s.arity < 2 or perms.is_identity(p) or \
                sorted(p) != list(range(s.arity)):
            v.append(Violation("action-signature", (m, p)))
            continue
        if sig_of[m2] != Signature(perms.apply_to(p, s.inputs), s.output):
            v.append(Violation("action-signature", (m, p, m2)))
    for s in sorted(g.homs, key=sig_key):
        if s.arity < 2:
            continue
        for m in g.homs[s]:
            for p in perms.all_perms(s.arity):
                if perms.is_identity(p):
                    continue
                b.spend()
                if (m, p) not in g.action:
                    v.append(Violation("action-missing", (m, p)))
    if any(x.tag != "action-group-law" for x in v):
        return ValidationReport(False, tuple(v))
    for s in sorted(g.homs, key=sig_key):
        k = s.arity
        if k < 2:
            continue
        allp = perms.all_perms(k)
        act = lambda p, m: m if perms.is_identity(p) else g.action[(m, p)]
        for m in g.homs[s]:
            for q in allp:
                for p in allp:
                    b.spend()
                    if act(p, act(q, m)) != act(perms.compose(p, q), m):
                        v.append(Violation("action-group-law", (m, p, q)))
    return ValidationReport(not v, tuple(v))


# ---------------------------------------------------------------------------
# enumeration


def _assignments(keys, candidates, forced, check, budget):
    """Backtracking product over sorted keys; check(key, partial) prunes."""
    keys = list(keys)

    def rec(i, partial):
        if i == len(keys):
            yield dict(partial)
            return
        k = keys[i]
        opts = candidates(k, partial)
        if k in forced:
            opts = [v for v in opts if v == forced[k]]
        for val in opts:
            budget.spend()
            partial[k] = val
            if check(k, partial):
                yield from rec(i + 1, partial)
            del partial[k]

    yield from rec(0, {})


def enumerate_functors(dom, cod, budget=None, forced_obj=None, forced_mor=None):
    """All functors dom -> cod in canonical order."""
    b = Budget(budget, "functor enumeration")
    forced_obj = forced_obj or {}
    forced_mor = forced_mor or {}
    out = []
    mors = [m for m in dom.morphisms if not dom.is_identity_mor(m)]
    pos = {m: i for i, m in enumerate(mors)}
    completes = {}
    for (g, f), h in dom.comp.items():
        ps = [pos[x] for x in (g, f, h) if x in pos]
        completes.setdefault(max(ps, default=-1), []).append((g, f))

    for omap in _assignments(dom.objects, lambda k, p: cod.objects,
                             forced_obj, lambda k, p: True, b):
        imap = {dom.identity(a): cod.identity(omap[a]) for a in dom.objects}
        bad = any(m in forced_mor and forced_mor[m] != v for m, v in imap.items())
        if bad:
            continue

        def candidates(m, partial):
            a0, b0 = dom._sig[m]
            return cod.hom(omap[a0], omap[b0])

        def check(m, partial):
            for (g, f) in completes.get(pos[m], ()):
                gi = imap.get(g) or partial.get(g)
                fi = imap.get(f) or partial.get(f)
                hi = imap.get(dom.comp[(g, f)]) or partial.get(dom.comp[(g, f)])
                if gi is None or fi is None or hi is None:
                    continue
                if cod.comp.get((gi, fi)) != hi:
                    return False
            return True

        forced2 = {m: v for m, v in forced_mor.items() if m in set(mors)}
        for mmap in _assignments(mors, candidates, forced2, check, b):
            full = dict(imap)
            full.update(mmap)
            ok = all(cod.comp.get((full[g], full[f])) == full[h]
                     for (g, f), h in dom.comp.items())
            if ok:
                out.append(Functor(dom, cod, omap, full))
    return out


def enumerate_multifunctors(dom, cod, budget=None, forced_obj=None, forced_mor=None):
    """All multifunctors dom -> cod in canonical order (equal truncation)."""
    if dom.arity_bound != cod.arity_bound:
        raise ValueError("truncation mismatch")
    b = Budget(budget, "multifunctor enumeration")
    forced_obj = forced_obj or {}
    forced_mor = forced_mor or {}
    out = []
    mors = [m for m in dom.morphisms if not dom.is_identity_mor(m)]
    pos = {m: i for i, m in enumerate(mors)}

    comp_at = {}
    for (g, fs), h in dom.comp.items():
        ps = [pos[x] for x in (g,) + fs + (h,) if x in pos]
        comp_at.setdefault(max(ps, default=-1), []).append(((g, fs), h))
    act_at = {}
    for (m, p), m2 in dom.action.items():
        ps = [pos[x] for x in (m, m2) if x in pos]
        act_at.setdefault(max(ps, default=-1), []).append(((m, p), m2))

    for omap in _assignments(dom.objects, lambda k, p: cod.objects,
                             forced_obj, lambda k, p: True, b):
        imap = {dom.identity(a): cod.identity(omap[a]) for a in dom.objects}
        if any(m in forced_mor and forced_mor[m] != v for m, v in imap.items()):
            continue

        def lookup(x, partial):
            return imap.get(x) or partial.get(x)

        def candidates(m, partial):
            s = dom.signature(m)
            return cod.hom(Signature(tuple(omap[x] for x in s.inputs), omap[s.output]))

        def check(m, partial):
            i = pos[m]
            for (g, fs), h in comp_at.get(i, ()):
                gi, hi = lookup(g, partial), lookup(h, partial)
                fi = tuple(lookup(f, partial) for f in fs)
                if gi is None or hi is None or any(x is None for x in fi):
                    continue
                if cod.comp.get((gi, fi)) != hi:
                    return False
            for (m0, p), m2 in act_at.get(i, ()):
                a0, a2 = lookup(m0, partial), lookup(m2, partial)
                if a0 is None or a2 is None:
                    continue
                if cod.action.get((a0, p)) != a2:
                    return False
            return True

        forced2 = {m: v for m, v in forced_mor.items() if m in pos}
        for mmap in _assignments(mors, candidates, forced2, check, b):
            full = dict(imap)
            full.update(mmap)
            out.append(MultiFunctor(dom, cod, omap, full))
    return out


def enumerate_graph_maps(dom, cod, budget=None):
    """Maps of multigraphs; respects Σ actions when both are symmetric."""
    b = Budget(budget, "graph map enumeration")
    if dom.arity_bound != cod.arity_bound:
        raise ValueError("truncation mismatch")
    out = []
    mors = list(dom.morphisms)
    pos = {m: i for i, m in enumerate(mors)}
    act_at = {}
    if dom.symmetric and cod.symmetric:
        for (m, p), m2 in dom.action.items():
            act_at.setdefault(max(pos[m], pos[m2]), []).append(((m, p), m2))

    for omap in _assignments(dom.objects, lambda k, p: cod.objects, {},
                             lambda k, p: True, b):
        def candidates(m, partial):
            s = dom.signature(m)
            return cod.hom(Signature(tuple(omap[x] for x in s.inputs), omap[s.output]))

        def check(m, partial):
            for (m0, p), m2 in act_at.get(pos[m], ()):
                a0, a2 = partial.get(m0), partial.get(m2)
                if a0 is None or a2 is None:
                    continue
                if cod.action.get((a0, p)) != a2:
                    return False
            return True

        for mmap in _assignments(mors, candidates, {}, check, b):
            out.append(MultiGraphMap(dom, cod, omap, mmap))
    return out


def _hom_profile_cat(cat, a):
    ins = sorted(len(cat.hom(x, a)) for x in cat.objects)
    outs = sorted(len(cat.hom(a, x)) for x in cat.objects)
    return (tuple(ins), tuple(outs))


def find_isomorphism(dom, cod, budget=None):
    """An isomorphism of categories dom -> cod, or None (canonical first hit)."""
    if len(dom.objects) != len(cod.objects) or len(dom.morphisms) != len(cod.morphisms):
        return None
    b = Budget(budget, "isomorphism search")
    mors = [m for m in dom.morphisms if not dom.is_identity_mor(m)]

    def obj_choices(a, partial):
        prof = _hom_profile_cat(dom, a)
        used = set(partial.values())
        return [x for x in cod.objects
                if x not in used and _hom_profile_cat(cod, x) == prof]

    for omap in _assignments(dom.objects, obj_choices, {}, lambda k, p: True, b):
        if any(len(dom.hom(x, y)) != len(cod.hom(omap[x], omap[y]))
               for x in dom.objects for y in dom.objects):
            continue
        imap = {dom.identity(a): cod.identity(omap[a]) for a in dom.objects}

        def candidates(m, partial):
            a0, b0 = dom._sig[m]
            used = set(partial.values())
            return [x for x in cod.hom(omap[a0], omap[b0])
                    if x not in used and not cod.is_identity_mor(x)]

        def check(m, partial):
            for (g, f), h in dom.comp.items():
                gi = imap.get(g) or partial.get(g)
                fi = imap.get(f) or partial.get(f)
                hi = imap.get(h) or partial.get(h)
                if gi is None or fi is None or hi is None:
                    continue
                if cod.comp.get((gi, fi)) != hi:
                    return False
            return True

        for mmap in _assignments(mors, candidates, {}, check, b):
            full = dict(imap)
            full.update(mmap)
            return Functor(dom, cod, omap, full)
    return None


def find_multicat_isomorphism(dom, cod, budget=None):
    """An isomorphism of multicategories dom -> cod, or None."""
    if dom.arity_bound != cod.arity_bound:
        return None
    if len(dom.objects) != len(cod.objects) or len(dom.morphisms) != len(cod.morphisms):
        return None
    b = Budget(budget, "isomorphism search")
    mors = [m for m in dom.morphisms if not dom.is_identity_mor(m)]
    pos = {m: i for i, m in enumerate(mors)}
    comp_at = {}
    for (g, fs), h in dom.comp.items():
        ps = [pos[x] for x in (g,) + fs + (h,) if x in pos]
        comp_at.setdefault(max(ps, default=-1), []).append(((g, fs), h))
    act_at = {}
    for (m, p), m2 in dom.action.items():
        act_at.setdefault(max(pos[m], pos[m2]), []).append(((m, p), m2))

    def obj_choices(a, partial):
        used = set(partial.values())
        return [x for x in cod.objects if x not in used]

    for omap in _assignments(dom.objects, obj_choices, {}, lambda k, p: True, b):
        sizes_ok = True
        for s, toks in dom.homs.items():
            s2 = Signature(tuple(omap[x] for x in s.inputs), omap[s.output])
            if len(cod.hom(s2)) != len(toks):
                sizes_ok = False
                break
        if not sizes_ok:
            continue
        if len(dom.homs) != len(cod.homs):
            continue
        imap = {dom.identity(a): cod.identity(omap[a]) for a in dom.objects}

        def lookup(x, partial):
            return imap.get(x) or partial.get(x)

        def candidates(m, partial):
            s = dom.signature(m)
            used = set(partial.values())
            s2 = Signature(tuple(omap[x] for x in s.inputs), omap[s.output])
            return [x for x in cod.hom(s2)
                    if x not in used and not cod.is_identity_mor(x)]

        def check(m, partial):
            for (g, fs), h in comp_at.get(pos[m], ()):
                gi, hi = lookup(g, partial), lookup(h, partial)
                fi = tuple(lookup(f, partial) for f in fs)
                if gi is None or hi is None or any(x is None for x in fi):
                    continue
                if cod.comp.get((gi, fi)) != hi:
                    return False
            for (m0, p), m2 in act_at.get(pos[m], ()):
                a0, a2 = lookup(m0, partial), lookup(m2, partial)
                if a0 is None or a2 is None:
                    continue
                if cod.action.get((a0, p)) != a2:
                    return False
            return True

        for mmap in _assignments(mors, candidates, {}, check, b):
            full = dict(imap)
            full.update(mmap)
            return MultiFunctor(dom, cod, omap, full)
    return None


def rename_category(cat, obj_ren=None, mor_ren=None):
    """Transport a category along token renamings (bijective where given)."""
    obj_ren = obj_ren or {}
    mor_ren = mor_ren or {}
    ro = lambda a: obj_ren.get(a, a)
    rm = lambda m: mor_ren.get(m, m)
    return FiniteCategory(
        tuple(ro(a) for a in cat.objects),
        {(ro(a), ro(b)): tuple(rm(m) for m in toks) for (a, b), toks in cat.homs.items()},
        {ro(a): rm(t) for a, t in cat.identities.items()},
        {(rm(g), rm(f)): rm(h) for (g, f), h in cat.comp.items()})


def rename_multicat(mc, obj_ren=None, mor_ren=None):
    obj_ren = obj_ren or {}
    mor_ren = mor_ren or {}
    ro = lambda a: obj_ren.get(a, a)
    rm = lambda m: mor_ren.get(m, m)
    rs = lambda s: Signature(tuple(ro(x) for x in s.inputs), ro(s.output))
    return TruncatedSymMulticat(
        tuple(ro(a) for a in mc.objects),
        {rs(s): tuple(rm(m) for m in toks) for s, toks in mc.homs.items()},
        mc.arity_bound,
        {ro(a): rm(t) for a, t in mc.identities.items()},
        {(rm(m), p): rm(m2) for (m, p), m2 in mc.action.items()},
        {(rm(g), tuple(rm(f) for f in fs)): rm(h) for (g, fs), h in mc.comp.items()})
