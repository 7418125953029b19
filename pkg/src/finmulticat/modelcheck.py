"""Folklore model-structure predicates and the lifting-property machinery.

Everything is decided by exhaustive search in finite data: equivalences,
isofibrations, trivial fibrations, cofibrations, diagonal fillers for
lifting squares, the generating sets I and J, and an empirical harness
that replays the premises behind the transfer theorem on seeded samples.

Lifting searches enumerate candidate maps in lexicographic order (objects
first, then morphisms), so the first lift found is a canonical witness.
"""

from typing import NamedTuple

from .core import (
    BudgetExceededError,
    Functor,
    MultiFunctor,
    MultiGraphMap,
    ValidationReport,
    Violation,
    build_category,
    compose_functors,
    compose_multifunctors,
    enumerate_functors,
    enumerate_multifunctors,
    is_locally_bijective,
)
from .constructions import (
    cell_multigraph,
    e_on_functor,
    free_multifunctor,
    free_symmulticat,
    indiscrete,
    sym,
    sym_map,
    underlying_functor,
)
from .colimits import pushout_multicat_e_square


class LiftingProblem(NamedTuple):
    i: object       # left map
    p: object       # right map
    top: object     # i.dom -> p.dom
    bottom: object  # i.cod -> p.cod


class GeneratingSet(NamedTuple):
    label: str
    maps: tuple
    truncation: int


# ---------------------------------------------------------------------------
# predicates


def isos_of(cat):
    """Token -> inverse token, for every invertible morphism."""
    out = {}
    for u in cat.morphisms:
        a, b2 = cat.source(u), cat.target(u)
        for v in cat.hom(b2, a):
            if cat.comp[(v, u)] == cat.identities[a] and \
                    cat.comp[(u, v)] == cat.identities[b2]:
                out[u] = v
                break
    return out


def is_full_faithful(fun):
    return is_locally_bijective(fun)


def is_essentially_surjective(fun):
    isos = isos_of(fun.cod)
    images = set(fun.obj_map.values())
    for d in fun.cod.objects:
        if d in images:
            continue
        if not any(u in isos for o in images for u in fun.cod.hom(o, d)):
            return False
    return True


def is_equivalence(fun):
    return is_full_faithful(fun) and is_essentially_surjective(fun)


def is_isofibration(fun):
    """Every isomorphism out of an image object lifts to one upstairs."""
    dom, cod = fun.dom, fun.cod
    isos_d = isos_of(dom)
    isos_c = isos_of(cod)
    for x in dom.objects:
        fx = fun.obj_map[x]
        for v in isos_c:
            if cod.source(v) != fx:
                continue
            if not any(dom.source(u) == x and fun.mor_map[u] == v
                       for u in isos_d):
                return False
    return True


def is_multi_equivalence(mfun):
    return is_locally_bijective(mfun) and \
        is_essentially_surjective(underlying_functor(mfun))


def is_multi_fibration(mfun):
    # the fibration condition lives entirely in arity one
    return is_isofibration(underlying_functor(mfun))


def is_trivial_fibration(mfun):
    surj = set(mfun.obj_map.values()) == set(mfun.cod.objects)
    return surj and is_locally_bijective(mfun)


def is_cofibration(mfun):
    vals = list(mfun.obj_map.values())
    return len(set(vals)) == len(vals)


# ---------------------------------------------------------------------------
# lifting squares


def _ops(f):
    if isinstance(f, MultiFunctor):
        return compose_multifunctors, enumerate_multifunctors
    return compose_functors, enumerate_functors


def _same_map(f, g):
    return f.obj_map == g.obj_map and f.mor_map == g.mor_map


def has_lifting(prob, budget=None):
    """All diagonal fillers of a commuting square, in canonical order."""
    i, p, top, bottom = prob
    comp, enum = _ops(i)
    if not _same_map(comp(p, top), comp(bottom, i)):
        raise ValueError("lifting square does not commute")
    forced_obj, forced_mor = {}, {}
    for x, im in i.obj_map.items():
        if forced_obj.setdefault(im, top.obj_map[x]) != top.obj_map[x]:
            return False, ()
    for t, im in i.mor_map.items():
        if forced_mor.setdefault(im, top.mor_map[t]) != top.mor_map[t]:
            return False, ()
    lifts = tuple(h for h in enum(i.cod, p.dom, budget,
                                  forced_obj, forced_mor)
                  if _same_map(comp(p, h), bottom))
    return bool(lifts), lifts


def rlp(p, i, budget=None):
    """Whether p has the right lifting property against i.

    Quantifies over every commuting square: tops are enumerated outright,
    and for each top the bottoms are enumerated with the boundary values
    forced by commutativity.
    """
    comp, enum = _ops(i)
    for top in enum(i.dom, p.dom, budget):
        pt = comp(p, top)
        forced_obj, forced_mor = {}, {}
        ok = True
        for x, im in i.obj_map.items():
            if forced_obj.setdefault(im, pt.obj_map[x]) != pt.obj_map[x]:
                ok = False
                break
        for t, im in i.mor_map.items():
            if not ok:
                break
            if forced_mor.setdefault(im, pt.mor_map[t]) != pt.mor_map[t]:
                ok = False
        if not ok:
            continue
        for bottom in enum(i.cod, p.cod, budget, forced_obj, forced_mor):
            found, _ = has_lifting(LiftingProblem(i, p, top, bottom), budget)
            if not found:
                return False
    return True


# ---------------------------------------------------------------------------
# generating sets


def _cell_inclusion(k, dom_tokens, cod_tokens, mor_map, arity_bound):
    gd = cell_multigraph(k, dom_tokens, arity_bound)
    gc = cell_multigraph(k, cod_tokens, arity_bound)
    gmap = MultiGraphMap(gd, gc, {o: o for o in gd.objects}, dict(mor_map))
    rd = free_symmulticat(sym(gd), arity_bound)
    rc = free_symmulticat(sym(gc), arity_bound)
    return free_multifunctor(sym_map(gmap), rd, rc)


def generating_I(arity_bound):
    """The object map plus both cell maps in every arity up to the bound."""
    if arity_bound < 1:
        raise ValueError("truncation must be at least 1")
    empty = build_category([])
    one = build_category(["*"])
    maps = [e_on_functor(Functor(empty, one, {}, {}), arity_bound)]
    for k in range(arity_bound + 1):
        maps.append(_cell_inclusion(k, (), ("f",), {}, arity_bound))
        maps.append(_cell_inclusion(k, ("f0", "f1"), ("f",),
                                    {"f0": "f", "f1": "f"}, arity_bound))
    return GeneratingSet("I", tuple(maps), arity_bound)


def generating_J(arity_bound=2):
    """The single generating trivial cofibration: E applied to picking the
    far end of the invertible interval."""
    one = build_category(["*"])
    interval = indiscrete(["x", "y"])
    delta = Functor(one, interval, {"*": "y"}, {"id_*": "id_y"})
    return GeneratingSet("J", (e_on_functor(delta, arity_bound),),
                         arity_bound)


# ---------------------------------------------------------------------------
# empirical harness


def check_61_premises(sample_maps, gen_i, gen_j, pushout_points=None,
                      budget=None):
    """Replay the transfer-theorem premises on a finite sample.

    (a) right lifting against all of I coincides with being a trivial
        fibration; (b) being an equivalence with right lifting against J
        coincides with right lifting against I; (c) pushouts of the J map
        along arbitrary attachments are equivalences.  Every counterexample
        is reported; a budget overrun on one item is recorded per item and
        the sweep continues.
    """
    v = []
    for idx, f in enumerate(sample_maps):
        try:
            ri = all(rlp(f, m, budget) for m in gen_i.maps)
            tf = is_trivial_fibration(f)
            if ri != tf:
                v.append(Violation("premise-a", (idx, ri, tf)))
            rj = all(rlp(f, m, budget) for m in gen_j.maps)
            w = is_multi_equivalence(f)
            if (w and rj) != ri:
                v.append(Violation("premise-b", (idx, w, rj, ri)))
        except BudgetExceededError:
            v.append(Violation("budget-exceeded", ("map", idx)))

    jmap = gen_j.maps[0]
    if pushout_points is None:
        pushout_points = []
        seen = []
        for f in sample_maps:
            for m in (f.dom, f.cod):
                if not any(m is o for o in seen):
                    seen.append(m)
                    pushout_points.extend((m, o) for o in m.objects)
    for idx, (m, o) in enumerate(pushout_points):
        try:
            x = MultiFunctor(jmap.dom, m, {"*": o},
                             {"id_*": m.identities[o]})
            res = pushout_multicat_e_square(x, jmap, budget)
            if not is_multi_equivalence(res.leg1):
                v.append(Violation("premise-c", (idx, o)))
        except BudgetExceededError:
            v.append(Violation("budget-exceeded", ("pushout", idx)))

    stats = {"maps": len(sample_maps), "pushouts": len(pushout_points),
             "truncation": gen_i.truncation}
    return ValidationReport(not v, tuple(v), stats)
