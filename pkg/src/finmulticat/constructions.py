"""Transports between categories, multigraphs and multicategories.

Covers the arity-1 embedding and its underlying-category partner,
symmetrization of multigraphs, cell and interval generators, free
constructions (exact on composite-free generators, bounded otherwise),
restriction and extension along object maps, the componentwise tensor
with its commutative unit, and discrete/indiscrete categories.
"""

from dataclasses import dataclass

from . import perms, trees
from .core import (Budget, FiniteCategory, Functor, Graph, MultiFunctor,
                   MultiGraph, MultiGraphMap, Signature, TruncatedSymMulticat,
                   _arg_tuples, build_category, check_token, fresh_token,
                   id_token, sig1)


def embed_E(cat, arity_bound):
    """E: homs concentrated in arity 1, empty elsewhere."""
    if arity_bound < 1:
        raise ValueError("arity bound must be at least 1")
    homs = {sig1(a, b): toks for (a, b), toks in cat.homs.items()}
    comp = {(g, (f,)): h for (g, f), h in cat.comp.items()}
    return TruncatedSymMulticat(cat.objects, homs, arity_bound,
                                dict(cat.identities), {}, comp)


def underlying_1(mc):
    """The category of unary morphisms."""
    homs = {(s.inputs[0], s.output): toks
            for s, toks in mc.homs.items() if s.arity == 1}
    comp = {(g, fs[0]): h for (g, fs), h in mc.comp.items()
            if len(fs) == 1 and mc.arity(g) == 1 and mc.arity(fs[0]) == 1}
    return FiniteCategory(mc.objects, homs, dict(mc.identities), comp)


def counit_E(mc):
    """The identity-on-tokens map E(M₁) → M."""
    dom = embed_E(underlying_1(mc), mc.arity_bound)
    return MultiFunctor(dom, mc, {a: a for a in dom.objects},
                        {m: m for m in dom.morphisms})


def e_on_functor(fun, arity_bound):
    return MultiFunctor(embed_E(fun.dom, arity_bound),
                        embed_E(fun.cod, arity_bound),
                        dict(fun.obj_map), dict(fun.mor_map))


def e_lower(mfun):
    """Transpose a multifunctor out of an E-image to its unary functor."""
    return Functor(underlying_1(mfun.dom), underlying_1(mfun.cod),
                   dict(mfun.obj_map),
                   {m: v for m, v in mfun.mor_map.items()
                    if mfun.dom.arity(m) == 1})


def e_raise(cat, mc, fun):
    """Transpose a functor cat → underlying_1(mc) across the adjunction."""
    return MultiFunctor(embed_E(cat, mc.arity_bound), mc,
                        dict(fun.obj_map), dict(fun.mor_map))


def underlying_functor(mfun):
    return Functor(underlying_1(mfun.dom), underlying_1(mfun.cod),
                   dict(mfun.obj_map),
                   {m: mfun.mor_map[m] for m in mfun.dom.morphisms
                    if mfun.dom.arity(m) == 1})


def sym(g):
    """Symmetrize a multigraph: one element per (σ, generator) pair.

    The identity-σ copy keeps the generator's token, so the original graph
    sits inside the result literally; other copies are tagged.
    """
    return _sym_data(g)[0]


def sym_map(gmap):
    """Symmetrize a map of plain multigraphs copy-by-copy."""
    gd, td = _sym_data(gmap.dom)
    gc, tc = _sym_data(gmap.cod)
    mor = {t: tc[(p, gmap.mor_map[f])] for (p, f), t in td.items()}
    return MultiGraphMap(gd, gc, dict(gmap.obj_map), mor)


def _sym_data(g):
    taken = set(g.morphisms)
    tok = {}
    for f in g.morphisms:
        k = g.signature(f).arity
        for p in perms.all_perms(k):
            if perms.is_identity(p):
                tok[(p, f)] = f
            else:
                t = fresh_token(f + "@" + perms.perm_token(p), taken)
                taken.add(t)
                tok[(p, f)] = t
    homs = {}
    action = {}
    for f in g.morphisms:
        s = g.signature(f)
        k = s.arity
        for p in perms.all_perms(k):
            s2 = Signature(perms.apply_to(p, s.inputs), s.output)
            homs.setdefault(s2, []).append(tok[(p, f)])
            for q in perms.all_perms(k):
                if not perms.is_identity(q):
                    action[(tok[(p, f)], q)] = tok[(perms.compose(q, p), f)]
    return MultiGraph(g.objects, {s: tuple(v) for s, v in homs.items()},
                      g.arity_bound, True, action), tok


def forget_sym(g):
    return MultiGraph(g.objects, dict(g.homs), g.arity_bound, False, {})


def underlying_multigraph(mc):
    return MultiGraph(mc.objects, dict(mc.homs), mc.arity_bound, True,
                      dict(mc.action))


def cell_multigraph(k, tokens, arity_bound=None):
    """Objects 1..k and ∗; the given tokens at ((1..k);∗), nothing else."""
    if k < 0:
        raise ValueError("arity must be nonnegative")
    bound = arity_bound if arity_bound is not None else max(k, 1)
    if k > bound:
        raise ValueError("cell arity exceeds the bound")
    objs = tuple(str(i) for i in range(1, k + 1)) + ("*",)
    tokens = tuple(sorted(tokens))
    for t in tokens:
        check_token(t)
    homs = {}
    if tokens:
        homs[Signature(tuple(str(i) for i in range(1, k + 1)), "*")] = tokens
    return MultiGraph(objs, homs, bound, False, {})


def interval_graph(tokens):
    """Two objects 0 and 1 with the given edges from 0 to 1."""
    tokens = tuple(sorted(tokens))
    for t in tokens:
        check_token(t)
    return Graph(("0", "1"), {("0", "1"): tokens} if tokens else {})


@dataclass
class FreeCategoryResult:
    category: FiniteCategory
    exact: bool
    paths: dict     # token -> tuple of edges, composition order


def free_category(graph, length_bound=6):
    """Path category on a graph, truncated at the given path length.

    Exact when every path has length below the bound (in particular for
    acyclic graphs with the default bound); otherwise the composition
    table is partial and the result is flagged.
    """
    src = {}
    tgt = {}
    for (a, b), toks in graph.edges.items():
        for e in toks:
            src[e], tgt[e] = a, b
    # a path is a tuple (e_n, ..., e_1), applied right to left
    edges_from = {}
    for e in sorted(src):
        edges_from.setdefault(src[e], []).append(e)
    frontier = {a: [()] for a in graph.objects}
    all_paths = []       # (path, src, tgt)
    for a in graph.objects:
        all_paths.append(((), a, a))
    exact = True
    for _ in range(length_bound):
        nxt = {}
        for a in sorted(frontier):
            for p in frontier[a]:
                head = tgt[p[0]] if p else a
                for e in edges_from.get(head, ()):
                    q = (e,) + p
                    all_paths.append((q, a, tgt[e]))
                    nxt.setdefault(a, []).append(q)
        frontier = nxt
        if not frontier:
            break
    if frontier:
        # a full extra level would exist; probe one step further
        for a in sorted(frontier):
            for p in frontier[a]:
                head = tgt[p[0]] if p else a
                if edges_from.get(head):
                    exact = False
                    break
            if not exact:
                break
    taken = set()
    token_of = {}
    for q, a, b in sorted(all_paths, key=lambda t: (len(t[0]), t[0])):
        if not q:
            token_of[(q, a)] = id_token(a)
            taken.add(id_token(a))
    for q, a, b in sorted(all_paths, key=lambda t: (len(t[0]), t[0])):
        if q:
            t = fresh_token(".".join(q), taken)
            taken.add(t)
            token_of[(q, a)] = t
    homs = {}
    identities = {}
    for q, a, b in all_paths:
        t = token_of[(q, a)]
        homs.setdefault((a, b), []).append(t)
        if not q:
            identities[a] = t
    comp = {}
    for q1, a1, b1 in all_paths:
        for q2, a2, b2 in all_paths:
            if a2 != b1:
                continue
            q = q2 + q1
            if len(q) > length_bound:
                continue
            comp[(token_of[(q2, a2)], token_of[(q1, a1)])] = token_of[(q, a1)]
    cat = FiniteCategory(graph.objects,
                         {k: tuple(v) for k, v in homs.items()},
                         identities, comp)
    return FreeCategoryResult(cat, exact,
                              {t: q for (q, a), t in token_of.items()})


@dataclass
class FreeMulticatResult:
    multicat: TruncatedSymMulticat
    exact: bool
    elements: dict   # token -> canonical element
    tokens: dict     # canonical element -> token


def is_composite_free(g):
    outs = {s.output for s in g.homs}
    ins = {x for s in g.homs for x in s.inputs}
    return not (outs & ins)


def free_symmulticat(g, arity_bound=None, depth_bound=3, budget=None):
    """Free symmetric multicategory on a symmetric multigraph.

    Elements are grafting trees with a leaf wiring, identified along the
    generator Σ action.  Exact iff the closure saturates with no tree
    pushed past depth_bound; composites whose arity would exceed the
    truncation are simply undefined, not approximated.
    """
    if not g.symmetric:
        raise ValueError("free_symmulticat expects a symmetric multigraph")
    kk = arity_bound if arity_bound is not None else g.arity_bound
    if any(s.arity > kk for s in g.homs):
        raise ValueError("generator arity exceeds the bound")
    b = Budget(budget, "free closure")
    gens = trees.GenSystem(dict(g._sig), lambda p, t: g.action[(t, p)])
    known = {}
    order = []

    def add(el):
        if el not in known:
            known[el] = None
            order.append(el)
            return True
        return False

    for a in g.objects:
        add(trees.ident(a))
    for f in g.morphisms:
        add(trees.canonical(gens, trees.gen_elem(gens, f)))

    blocked = False
    while True:
        grown = False
        by_out = {}
        for el in order:
            s = trees.elem_signature(gens, el)
            by_out.setdefault(s.output, []).append((el, s))
        for el in list(order):
            s = trees.elem_signature(gens, el)
            k = s.arity
            for p in perms.all_perms(k):
                if perms.is_identity(p):
                    continue
                b.spend()
                if add(trees.act_elem(gens, p, el)):
                    grown = True
            if k == 0 or trees.is_ident(el):
                continue
            stacks = [by_out.get(x, ()) for x in s.inputs]

            def rec(t, budget_left, acc):
                nonlocal grown, blocked
                if t == k:
                    b.spend()
                    comp = trees.compose_elems(gens, el, acc)
                    if trees.is_ident(comp) or trees.tree_depth(comp[2]) <= depth_bound:
                        if add(comp):
                            grown = True
                    else:
                        blocked = True
                    return
                for a2, s2 in stacks[t]:
                    if s2.arity > budget_left:
                        continue
                    rec(t + 1, budget_left - s2.arity, acc + [a2])

            rec(0, kk, [])
        if not grown:
            break

    ordered = sorted(known)
    taken = set()
    tokens = {}
    for a in g.objects:
        tokens[trees.ident(a)] = id_token(a)
        taken.add(id_token(a))
    for f in sorted(g.morphisms):
        el = trees.canonical(gens, trees.gen_elem(gens, f))
        if el not in tokens:
            t = fresh_token(f, taken)
            taken.add(t)
            tokens[el] = t
    w = 0
    for el in ordered:
        if el not in tokens:
            t = fresh_token(f"w{w}", taken)
            taken.add(t)
            tokens[el] = t
            w += 1

    homs = {}
    identities = {}
    for el in ordered:
        s = trees.elem_signature(gens, el)
        homs.setdefault(s, []).append(tokens[el])
        if trees.is_ident(el):
            identities[el[1]] = tokens[el]
    action = {}
    comp = {}
    for el in ordered:
        s = trees.elem_signature(gens, el)
        k = s.arity
        if k >= 2:
            for p in perms.all_perms(k):
                if not perms.is_identity(p):
                    im = trees.act_elem(gens, p, el)
                    if im in tokens:
                        action[(tokens[el], p)] = tokens[im]
        if k >= 1:
            by_out = {}
            for e2 in ordered:
                s2 = trees.elem_signature(gens, e2)
                by_out.setdefault(s2.output, []).append((e2, s2))
            stacks = [by_out.get(x, ()) for x in s.inputs]

            def fill(t, budget_left, acc):
                if t == k:
                    val = trees.compose_elems(gens, el, acc)
                    if val in tokens:
                        comp[(tokens[el], tuple(tokens[x] for x in acc))] = tokens[val]
                    return
                for e2, s2 in stacks[t]:
                    if s2.arity > budget_left:
                        continue
                    fill(t + 1, budget_left - s2.arity, acc + [e2])

            fill(0, kk, [])
    mc = TruncatedSymMulticat(g.objects, {s: tuple(v) for s, v in homs.items()},
                              kk, identities, action, comp)
    return FreeMulticatResult(mc, not blocked, {t: e for e, t in tokens.items()},
                              tokens)


def free_multifunctor(gmap, res_dom, res_cod):
    """Lift a map of symmetric multigraphs to the free multicategories."""
    gens_cod = trees.GenSystem(
        {t: s for t, s in gmap.cod._sig.items()},
        lambda p, t: gmap.cod.action[(t, p)])
    mor_map = {}
    for tok, el in res_dom.elements.items():
        if trees.is_ident(el):
            im = trees.ident(gmap.obj_map[el[1]])
        else:
            im = trees.canonical(gens_cod,
                                 ("e", el[1], trees.relabel(el[2],
                                                            lambda t: gmap.mor_map[t])))
        if im not in res_cod.tokens:
            raise ValueError("image element missing; codomain closure incomplete")
        mor_map[tok] = res_cod.tokens[im]
    return MultiFunctor(res_dom.multicat, res_cod.multicat,
                        dict(gmap.obj_map), mor_map)


# ---------------------------------------------------------------------------
# restriction and extension along object maps


def _restrict_tables_multicat(u, mc):
    aobjs = tuple(sorted(u))
    if any(v not in set(mc.objects) for v in u.values()):
        raise ValueError("object map lands outside the codomain")
    injective = len(set(u.values())) == len(u)
    taken = set()
    name = {}      # (A-sig, B-token) -> token
    for k in range(mc.arity_bound + 1):
        for ins in _tuples(aobjs, k):
            for out in aobjs:
                s = Signature(ins, out)
                bs = Signature(tuple(u[x] for x in ins), u[out])
                for m in mc.hom(bs):
                    if s.arity == 1 and s.inputs[0] == s.output and \
                            m == mc.identity(u[s.output]):
                        t = id_token(s.output)
                    elif injective:
                        t = m
                    else:
                        t = fresh_token(m + "@" + ".".join(s.inputs + (s.output,)),
                                        taken)
                    taken.add(t)
                    name[(s, m)] = t
    return aobjs, name


def _tuples(items, k):
    if k == 0:
        yield ()
        return
    for rest in _tuples(items, k - 1):
        for x in items:
            yield rest + (x,)


def restrict_u(u, b):
    """u*B: homs reindexed along an object map u into Ob(B)."""
    if isinstance(b, FiniteCategory):
        return _restriction_category(u, b)[0]
    return _restriction_multicat(u, b)[0]


def restriction_map(u, b):
    """The canonical full and faithful map u*B → B."""
    if isinstance(b, FiniteCategory):
        return _restriction_category(u, b)[1]
    return _restriction_multicat(u, b)[1]


def _restriction_multicat(u, mc):
    aobjs, name = _restrict_tables_multicat(u, mc)
    homs = {}
    for (s, m), t in name.items():
        homs.setdefault(s, []).append(t)
    identities = {a: id_token(a) for a in aobjs}
    shell = TruncatedSymMulticat(aobjs, {s: tuple(v) for s, v in homs.items()},
                                 mc.arity_bound, identities, {}, {})
    action = {}
    comp = {}
    back = {t: key for key, t in name.items()}   # token -> (A-sig, B-token)
    for t in shell.morphisms:
        s, m = back[t]
        k = s.arity
        if k >= 2:
            for p in perms.all_perms(k):
                if perms.is_identity(p):
                    continue
                s2 = Signature(perms.apply_to(p, s.inputs), s.output)
                action[(t, p)] = name[(s2, mc.act(p, m))]
        if k >= 1:
            for fs in _arg_tuples(shell, s.inputs, mc.arity_bound):
                parts = [back[f] for f in fs]
                val = mc.comp[(m, tuple(bm for _, bm in parts))]
                rsig = Signature(sum((ps.inputs for ps, _ in parts), ()), s.output)
                comp[(t, fs)] = name[(rsig, val)]
    out = TruncatedSymMulticat(aobjs, shell.homs, mc.arity_bound, identities,
                               action, comp)
    canon = MultiFunctor(out, mc, dict(u), {t: back[t][1] for t in out.morphisms})
    return out, canon


def _restriction_category(u, cat):
    aobjs = tuple(sorted(u))
    if any(v not in set(cat.objects) for v in u.values()):
        raise ValueError("object map lands outside the codomain")
    injective = len(set(u.values())) == len(u)
    taken = set()
    name = {}
    for a in aobjs:
        for a2 in aobjs:
            for m in cat.hom(u[a], u[a2]):
                if a == a2 and m == cat.identity(u[a]):
                    t = id_token(a)
                elif injective:
                    t = m
                else:
                    t = fresh_token(m + "@" + a + "." + a2, taken)
                taken.add(t)
                name[(a, a2, m)] = t
    homs = {}
    for (a, a2, m), t in name.items():
        homs.setdefault((a, a2), []).append(t)
    back = {t: key for key, t in name.items()}
    comp = {}
    for t1 in sorted(back):
        a, bmid, m1 = back[t1]
        for t2 in sorted(back):
            b2, c, m2 = back[t2]
            if b2 != bmid:
                continue
            comp[(t2, t1)] = name[(a, c, cat.comp[(m2, m1)])]
    out = FiniteCategory(aobjs, {k: tuple(v) for k, v in homs.items()},
                         {a: id_token(a) for a in aobjs}, comp)
    canon = Functor(out, cat, dict(u), {t: back[t][2] for t in out.morphisms})
    return out, canon


def factor_through_image(f):
    """Image factorization f = (u*N → N) ∘ f^u with f^u object-identical."""
    u = dict(f.obj_map)
    if isinstance(f, Functor):
        un, canon = _restriction_category(u, f.cod)
        lut = {}
        for t in un.morphisms:
            a, a2 = un._sig[t]
            lut[(a, a2, canon.mor_map[t])] = t
        first = Functor(f.dom, un, {a: a for a in f.dom.objects},
                        {m: lut[(f.dom.source(m), f.dom.target(m), f.mor_map[m])]
                         for m in f.dom.morphisms})
        return first, canon
    un, canon = _restriction_multicat(u, f.cod)
    lut = {}
    for t in un.morphisms:
        lut[(un.signature(t), canon.mor_map[t])] = t
    first = MultiFunctor(f.dom, un, {a: a for a in f.dom.objects},
                         {m: lut[(f.dom.signature(m), f.mor_map[m])]
                          for m in f.dom.morphisms})
    return first, canon


def extend_u(u, mc, objects):
    """u_!M along an injective object map into the given object set."""
    return _extension(u, mc, objects)[0]


def extension_map(u, mc, objects):
    """The cocartesian unit M → u_!M."""
    return _extension(u, mc, objects)[1]


def _extension(u, mc, objects):
    vals = list(u.values())
    if len(set(vals)) != len(vals):
        raise ValueError("u_! implemented for injective u only")
    objects = tuple(sorted(objects))
    if any(v not in set(objects) for v in vals):
        raise ValueError("object map lands outside the target objects")
    if sorted(u) != list(mc.objects):
        raise ValueError("object map domain mismatch")
    ren = {}
    for a in mc.objects:
        ren[mc.identity(a)] = id_token(u[a])
    r = lambda m: ren.get(m, m)
    rs = lambda s: Signature(tuple(u[x] for x in s.inputs), u[s.output])
    homs = {rs(s): tuple(sorted(r(m) for m in toks))
            for s, toks in mc.homs.items()}
    identities = {u[a]: id_token(u[a]) for a in mc.objects}
    comp = {(r(g), tuple(r(f) for f in fs)): r(h)
            for (g, fs), h in mc.comp.items()}
    fresh = [q for q in objects if q not in set(vals)]
    for q in fresh:
        identities[q] = id_token(q)
        homs[sig1(q, q)] = (id_token(q),)
        comp[(id_token(q), (id_token(q),))] = id_token(q)
    action = {(r(m), p): r(m2) for (m, p), m2 in mc.action.items()}
    out = TruncatedSymMulticat(objects, homs, mc.arity_bound, identities,
                               action, comp)
    unit = MultiFunctor(mc, out, dict(u), {m: r(m) for m in mc.morphisms})
    return out, unit


def factor_cofibration_style(f):
    """Factor f: M → N as a cofibration followed by an object-identical map.

    With Ob(f) injective the middle object is u_!M; otherwise the image
    factorization through u*N is used and the object-identical part comes
    first.
    """
    u = dict(f.obj_map)
    if len(set(u.values())) == len(u):
        mid, first = _extension(u, f.dom, f.cod.objects)
        ren = {f.dom.identity(a): id_token(u[a]) for a in f.dom.objects}
        second_map = {}
        for m in f.dom.morphisms:
            second_map[ren.get(m, m)] = f.mor_map[m]
        for q in mid.objects:
            if q not in set(u.values()):
                second_map[mid.identity(q)] = f.cod.identity(q)
        second = MultiFunctor(mid, f.cod, {q: q for q in mid.objects}, second_map)
        return first, second
    return factor_through_image(f)


# ---------------------------------------------------------------------------
# tensor and unit


def tensor(m, n):
    """Componentwise tensor: pairs of objects, pairs of same-arity morphisms."""
    if m.arity_bound != n.arity_bound:
        raise ValueError("tensor requires a shared truncation")
    kk = m.arity_bound
    taken_obj = set()
    obj_tok = {}
    for a in m.objects:
        for b in n.objects:
            t = fresh_token(a + "&" + b, taken_obj)
            taken_obj.add(t)
            obj_tok[(a, b)] = t
    taken = set()
    mor_tok = {}
    homs = {}
    identities = {}
    msigs = sorted(m.homs, key=lambda s: (s.arity, s))
    nsigs_by_k = {}
    for s in n.homs:
        nsigs_by_k.setdefault(s.arity, []).append(s)
    for s1 in msigs:
        for s2 in sorted(nsigs_by_k.get(s1.arity, [])):
            sig = Signature(tuple(obj_tok[(x, y)]
                                  for x, y in zip(s1.inputs, s2.inputs)),
                            obj_tok[(s1.output, s2.output)])
            for f in m.hom(s1):
                for g in n.hom(s2):
                    if m.is_identity_mor(f) and n.is_identity_mor(g):
                        t = id_token(sig.output)
                        identities[sig.output] = t
                    else:
                        t = fresh_token(f + "*" + g, taken)
                    taken.add(t)
                    mor_tok[(f, g)] = t
                    homs.setdefault(sig, []).append(t)
    ncomp_idx = {}
    for (g2, f2s), h2 in n.comp.items():
        key = (g2, tuple(n.arity(x) for x in f2s))
        ncomp_idx.setdefault((n.arity(g2), key[1]), []).append((g2, f2s, h2))
    comp = {}
    for (g1, f1s), h1 in m.comp.items():
        prof = tuple(m.arity(x) for x in f1s)
        for g2, f2s, h2 in ncomp_idx.get((len(f1s), prof), ()):
            if (g1, g2) not in mor_tok:
                continue
            if any((x, y) not in mor_tok for x, y in zip(f1s, f2s)):
                continue
            comp[(mor_tok[(g1, g2)],
                  tuple(mor_tok[(x, y)] for x, y in zip(f1s, f2s)))] = \
                mor_tok[(h1, h2)]
    action = {}
    for (f, g) in mor_tok:
        k = m.arity(f)
        if k >= 2:
            for p in perms.all_perms(k):
                if not perms.is_identity(p):
                    action[(mor_tok[(f, g)], p)] = mor_tok[(m.act(p, f),
                                                            n.act(p, g))]
    objects = tuple(obj_tok[(a, b)] for a in m.objects for b in n.objects)
    return TruncatedSymMulticat(objects, {s: tuple(v) for s, v in homs.items()},
                                kk, identities, action, comp)


def com_multicat(arity_bound):
    """The commutative unit: one object, one morphism in every arity."""
    objs = ("*",)
    homs = {sig1("*", "*"): ("id_*",)}
    elems = {1: "id_*"}
    for k in range(arity_bound + 1):
        if k == 1:
            continue
        homs[Signature(("*",) * k, "*")] = (f"c{k}",)
        elems[k] = f"c{k}"
    identities = {"*": "id_*"}
    action = {}
    for k in range(2, arity_bound + 1):
        for p in perms.all_perms(k):
            if not perms.is_identity(p):
                action[(elems[k], p)] = elems[k]
    shell = TruncatedSymMulticat(objs, homs, arity_bound, identities, action, {})
    comp = {}
    for g in shell.morphisms:
        k = shell.arity(g)
        if k == 0:
            continue
        for fs in _arg_tuples(shell, ("*",) * k, arity_bound):
            total = sum(shell.arity(f) for f in fs)
            comp[(g, fs)] = elems[total]
    return TruncatedSymMulticat(objs, homs, arity_bound, identities, action,
                                comp)


def discrete(objects):
    """Identities only."""
    return build_category(objects)


def indiscrete(objects):
    """Exactly one morphism between every ordered pair of objects."""
    objects = tuple(sorted(objects))
    taken = set()
    tok = {}
    for a in objects:
        tok[(a, a)] = id_token(a)
        taken.add(id_token(a))
    mors = {}
    for a in objects:
        for b in objects:
            if a != b:
                t = fresh_token(a + "." + b, taken)
                taken.add(t)
                tok[(a, b)] = t
                mors[t] = (a, b)
    comp = {}
    for a in objects:
        for b in objects:
            for c in objects:
                comp[(tok[(b, c)], tok[(a, b)])] = tok[(a, c)]
    return build_category(objects, mors, comp)


def truncate(x, arity_bound):
    """Drop all data above the given arity bound."""
    if arity_bound > x.arity_bound:
        raise ValueError("can only truncate downwards")
    if isinstance(x, MultiGraph):
        homs = {s: t for s, t in x.homs.items() if s.arity <= arity_bound}
        keep = {t for toks in homs.values() for t in toks}
        action = {(m, p): v for (m, p), v in x.action.items() if m in keep}
        return MultiGraph(x.objects, homs, arity_bound, x.symmetric, action)
    homs = {s: t for s, t in x.homs.items() if s.arity <= arity_bound}
    keep = {t for toks in homs.values() for t in toks}
    action = {(m, p): v for (m, p), v in x.action.items() if m in keep}
    comp = {}
    for (g, fs), h in x.comp.items():
        if g in keep and h in keep and all(f in keep for f in fs):
            comp[(g, fs)] = h
    return TruncatedSymMulticat(x.objects, homs, arity_bound,
                                dict(x.identities), action, comp)
