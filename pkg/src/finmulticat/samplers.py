"""Seeded generators of small instances for tests and empirical checks.

Everything here is driven by a caller-supplied random.Random, so a seed
pins down the whole corpus.  Sizes stay tiny on purpose: at most three
objects and a handful of elements per hom, which keeps exhaustive
enumeration honest and failures reproducible.
"""

import itertools
from functools import lru_cache

from .core import (
    BudgetExceededError,
    FiniteCategory,
    Graph,
    MultiGraph,
    Signature,
    TruncatedSymMulticat,
    build_category,
    enumerate_functors,
    enumerate_multifunctors,
    identity_multifunctor,
)
from .constructions import (
    cell_multigraph,
    com_multicat,
    embed_E,
    e_on_functor,
    free_category,
    free_symmulticat,
    indiscrete,
    is_composite_free,
    sym,
    tensor,
)
from .karoubi import kar_category, kar_multicat


# ---------------------------------------------------------------------------
# fixed small categories


def walking_arrow():
    return build_category(["x", "y"], {"a": ("x", "y")})


def walking_idempotent():
    return build_category(["*"], {"e": ("*", "*")}, {("e", "e"): "e"})


def walking_iso():
    # [x, y]: two objects, a pair of mutually inverse arrows
    return indiscrete(["x", "y"])


def terminal_category():
    return build_category(["*"])


def parallel_pair():
    return build_category(["x", "y"], {"a": ("x", "y"), "b": ("x", "y")})


@lru_cache(maxsize=None)
def small_monoids(n_max=3):
    """Associative unital tables on {0..n-1} with 0 the unit, n <= n_max.

    Found once by exhaustive search; the count is tiny at this size.
    """
    out = []
    for n in range(1, n_max + 1):
        others = list(range(1, n))
        cells = list(itertools.product(others, repeat=2))
        for vals in itertools.product(range(n), repeat=len(cells)):
            t = {(0, i): i for i in range(n)}
            t.update({(i, 0): i for i in range(n)})
            t.update(dict(zip(cells, vals)))
            if all(t[(t[(a, b)], c)] == t[(a, t[(b, c)])]
                   for a in range(n) for b in range(n) for c in range(n)):
                out.append((n, t))
    return tuple(out)


def monoid_category(n, table):
    toks = {i: f"g{i}" for i in range(1, n)}
    toks[0] = "id_*"
    mors = {toks[i]: ("*", "*") for i in range(1, n)}
    comp = {(toks[a], toks[b]): toks[v] for (a, b), v in table.items()}
    return build_category(["*"], mors, comp)


# ---------------------------------------------------------------------------
# random categories


def random_preorder_category(rng, max_objects=3):
    """Thin category from the reflexive-transitive closure of a relation."""
    n = rng.randint(1, max_objects)
    objs = [f"a{i}" for i in range(n)]
    rel = {(o, o) for o in objs}
    for x in objs:
        for y in objs:
            if x != y and rng.random() < 0.4:
                rel.add((x, y))
    changed = True
    while changed:
        changed = False
        for x, y in list(rel):
            for y2, z in list(rel):
                if y2 == y and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    mors = {f"{x}_{y}": (x, y) for x, y in sorted(rel) if x != y}
    cat = build_category(objs, mors)
    comp = dict(cat.comp)
    tok = {(x, y): t for t, (x, y) in mors.items()}
    for x, y in sorted(rel):
        for y2, z in sorted(rel):
            if y2 != y:
                continue
            f = tok.get((x, y), cat.identities[x])
            g = tok.get((y, z), cat.identities[y])
            h = tok.get((x, z), cat.identities[x])
            comp[(g, f)] = h
    return FiniteCategory(cat.objects, cat.homs, cat.identities, comp)


def random_acyclic_free_category(rng, max_objects=3):
    """Path category of a random acyclic graph; finite, so always exact."""
    n = rng.randint(2, max_objects)
    objs = [f"a{i}" for i in range(n)]
    edges = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(rng.randint(0, 2)):
                edges.setdefault((objs[i], objs[j]), []).append(f"u{k}")
                k += 1
    res = free_category(Graph(tuple(objs), {p: tuple(v)
                                            for p, v in edges.items()}))
    return res.category


def random_monoid_category(rng, n_max=3):
    n, table = rng.choice(small_monoids(n_max))
    return monoid_category(n, table)


def random_category(rng, max_objects=3, allow_monoids=True):
    kinds = ["preorder", "free", "fixed"]
    if allow_monoids:
        kinds += ["monoid", "kar"]
    kind = rng.choice(kinds)
    if kind == "preorder":
        return random_preorder_category(rng, max_objects)
    if kind == "free":
        return random_acyclic_free_category(rng, max_objects)
    if kind == "monoid":
        return random_monoid_category(rng)
    if kind == "kar":
        base = rng.choice([walking_idempotent(), random_monoid_category(rng)])
        return kar_category(base).object
    return rng.choice([walking_arrow(), walking_idempotent(), walking_iso(),
                       terminal_category(), parallel_pair(),
                       indiscrete(["x", "y"])])


# ---------------------------------------------------------------------------
# random multigraphs and multicategories


def random_multigraph(rng, arity_bound, symmetric=False, max_objects=2):
    """Composite-free multigraph: no object is both an input and an output,
    so the free multicategory on it is finite and the closure exact."""
    n = rng.randint(1, max_objects)
    ins = [f"x{i}" for i in range(n)]
    outs = ["*"]
    homs = {}
    t = 0
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(0, min(2, arity_bound))
        sig = Signature(tuple(rng.choice(ins) for _ in range(k)), "*")
        homs.setdefault(sig, []).append(f"c{t}")
        t += 1
    g = MultiGraph(tuple(ins) + tuple(outs),
                   {s: tuple(v) for s, v in homs.items()}, arity_bound)
    assert is_composite_free(g)
    return sym(g) if symmetric else g


def random_multicat(rng, arity_bound, allow_idempotents=True):
    kinds = ["E", "com", "free", "tensor"]
    if allow_idempotents:
        kinds += ["kar"]
    kind = rng.choice(kinds)
    if kind == "E":
        return embed_E(random_category(rng, max_objects=2), arity_bound)
    if kind == "com":
        return com_multicat(arity_bound)
    if kind == "free":
        g = random_multigraph(rng, arity_bound, symmetric=True)
        return free_symmulticat(g, arity_bound).multicat
    if kind == "tensor":
        c = rng.choice([walking_arrow(), terminal_category(),
                        walking_idempotent()])
        return tensor(embed_E(c, arity_bound), com_multicat(arity_bound))
    base = rng.choice([walking_idempotent(), random_monoid_category(rng)])
    return kar_multicat(embed_E(base, arity_bound)).object


def random_multifunctor(rng, arity_bound, budget=200_000):
    """A structure-preserving map between two sampled multicategories.

    Falls back to an identity when a sampled pair admits no map or the
    enumeration budget runs out, so the stream never stalls.
    """
    for _ in range(6):
        kind = rng.choice(["enum", "E", "alpha", "terminal"])
        try:
            if kind == "enum":
                dom = random_multicat(rng, arity_bound)
                cod = random_multicat(rng, arity_bound)
                found = enumerate_multifunctors(dom, cod, budget)
                if found:
                    return rng.choice(found)
            elif kind == "E":
                c = random_category(rng, max_objects=2)
                d = random_category(rng, max_objects=2)
                found = enumerate_functors(c, d, budget)
                if found:
                    return e_on_functor(rng.choice(found), arity_bound)
            elif kind == "alpha":
                m = random_multicat(rng, arity_bound,
                                    allow_idempotents=False)
                return kar_multicat(m).alpha
            else:
                m = random_multicat(rng, arity_bound)
                cod = com_multicat(arity_bound)
                found = enumerate_multifunctors(m, cod, budget)
                if found:
                    return found[0]
        except BudgetExceededError:
            continue
    return identity_multifunctor(random_multicat(rng, arity_bound))


def standard_test_targets(arity_bound):
    """Small receiving multicategories for universal-property checks."""
    out = [
        embed_E(terminal_category(), arity_bound),
        embed_E(walking_arrow(), arity_bound),
        embed_E(walking_iso(), arity_bound),
        embed_E(walking_idempotent(), arity_bound),
        embed_E(kar_category(walking_idempotent()).object, arity_bound),
        com_multicat(arity_bound),
        free_symmulticat(sym(cell_multigraph(min(2, arity_bound), ("c",),
                                             arity_bound)),
                         arity_bound).multicat,
    ]
    return [m for m in out if len(m.objects) <= 2 and len(m.morphisms) <= 12]


# ---------------------------------------------------------------------------
# single-entry table mutations


def category_mutants(cat):
    """Every single-entry corruption of the comp and identity tables."""
    out = []
    for key in sorted(cat.comp):
        old = cat.comp[key]
        src = cat.source(key[1])
        tgt = cat.target(key[0])
        alts = [m for m in cat.hom(src, tgt) if m != old]
        if not alts:
            alts = [m for m in cat.morphisms if m != old][:1]
        for alt in alts:
            comp = dict(cat.comp)
            comp[key] = alt
            out.append(("comp", key, alt,
                        FiniteCategory(cat.objects, cat.homs,
                                       dict(cat.identities), comp)))
    for a in cat.objects:
        old = cat.identities[a]
        for alt in [m for m in cat.morphisms if m != old]:
            ids = dict(cat.identities)
            ids[a] = alt
            out.append(("identity", a, alt,
                        FiniteCategory(cat.objects, cat.homs, ids,
                                       dict(cat.comp))))
    return out


def multicat_mutants(mc):
    """Every single-entry corruption of comp, action, and identity tables."""
    out = []

    def rebuild(identities=None, action=None, comp=None):
        return TruncatedSymMulticat(
            mc.objects, mc.homs, mc.arity_bound,
            identities if identities is not None else dict(mc.identities),
            action if action is not None else dict(mc.action),
            comp if comp is not None else dict(mc.comp))

    for key in sorted(mc.comp):
        old = mc.comp[key]
        sig = mc.signature(old)
        alts = [m for m in mc.hom(sig) if m != old]
        if not alts:
            alts = [m for m in mc.morphisms if m != old][:1]
        for alt in alts:
            comp = dict(mc.comp)
            comp[key] = alt
            out.append(("comp", key, alt, rebuild(comp=comp)))
    for key in sorted(mc.action):
        old = mc.action[key]
        sig = mc.signature(old)
        alts = [m for m in mc.hom(sig) if m != old]
        if not alts:
            alts = [m for m in mc.morphisms if m != old][:1]
        for alt in alts:
            action = dict(mc.action)
            action[key] = alt
            out.append(("action", key, alt, rebuild(action=action)))
    for a in mc.objects:
        old = mc.identities[a]
        for alt in [m for m in mc.morphisms if m != old]:
            ids = dict(mc.identities)
            ids[a] = alt
            out.append(("identity", a, alt, rebuild(identities=ids)))
    return out


def rigid_categories(rng):
    """Families whose tables admit no second valid completion, so every
    single-entry corruption is detectable.

    Thin categories qualify (no same-signature alternatives exist at all),
    as do categories whose only composable pairs involve identities.  Free
    path categories do not: a composite parallel to another morphism can be
    redirected without breaking any law.
    """
    kind = rng.choice(["preorder", "preorder", "fixed"])
    if kind == "preorder":
        return random_preorder_category(rng)
    return rng.choice([walking_arrow(), walking_iso(), terminal_category(),
                       parallel_pair(), indiscrete(["x", "y"])])


def rigid_multicats(rng, arity_bound):
    kind = rng.choice(["E", "com", "free"])
    if kind == "E":
        return embed_E(rigid_categories(rng), arity_bound)
    if kind == "com":
        return com_multicat(arity_bound)
    g = random_multigraph(rng, arity_bound, symmetric=True)
    return free_symmulticat(g, arity_bound).multicat
