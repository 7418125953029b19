"""Idempotent completion (Karoubi envelope) and Morita equivalences.

For categories the completion is written out directly: objects are pairs
(x, e) with e an idempotent endomorphism, and a morphism (x, e) -> (y, e')
is an h : x -> y satisfying e'.h.e = h.  The identity of (x, e) is e itself.

For multicategories the completion is assembled one object at a time: the
arity-one category is completed first, and each genuinely new object is then
attached by a pushout along the arity-one inclusion.  Multifunctors are
completed via the mediating map out of those pushouts rather than by a
hand-rolled formula.
"""

from typing import NamedTuple

from .core import (
    FiniteCategory,
    Functor,
    id_token,
    compose_multifunctors,
    enumerate_multifunctors,
    fresh_token,
    full_subcategory,
    identity_multifunctor,
    is_locally_bijective,
)
from .constructions import underlying_1, underlying_functor
from .colimits import PushoutConstructionError, pushout_multicat_along_E


class KarResult(NamedTuple):
    object: object
    alpha: object


def idempotents(cat):
    """All pairs (x, e) with e an idempotent endomorphism of x.

    Identity morphisms are included.  Pairs come out in object order, then
    in hom order, so the listing is stable.
    """
    out = []
    for x in cat.objects:
        for e in cat.hom(x, x):
            if cat.comp[(e, e)] == e:
                out.append((x, e))
    return out


def _kar_data(cat):
    idems = idempotents(cat)
    otok, taken = {}, set()
    # identity pairs claim the bare object tokens first
    for x, e in idems:
        if e == cat.identities[x]:
            otok[(x, e)] = x
            taken.add(x)
    for x, e in idems:
        if (x, e) not in otok:
            t = fresh_token(f"{x}.{e}", taken)
            taken.add(t)
            otok[(x, e)] = t

    # a copy of h keeps its old token when both idempotents are identities,
    # so the embedding is token-identity on split categories; the copy of e
    # serving as the identity of (x, e) gets the id_ name that role demands
    mtok, mtaken = {}, set()
    homs, elems = {}, {}
    for x, e in idems:
        for y, e2 in idems:
            ms = [h for h in cat.homs.get((x, y), ())
                  if cat.comp[(e2, cat.comp[(h, e)])] == h]
            if not ms:
                continue
            plain = e == cat.identities[x] and e2 == cat.identities[y]
            for h in ms:
                if h == e and (y, e2) == (x, e):
                    base = id_token(otok[(x, e)])
                elif plain:
                    base = h
                else:
                    base = f"{h}.{e}.{e2}"
                t = fresh_token(base, mtaken)
                mtaken.add(t)
                mtok[(h, e, e2)] = t
            key = (otok[(x, e)], otok[(y, e2)])
            homs[key] = tuple(sorted(mtok[(h, e, e2)] for h in ms))
            elems[key] = [(h, e, e2) for h in ms]

    identities = {otok[(x, e)]: mtok[(e, e, e)] for x, e in idems}
    comp = {}
    for (p, q), fs in elems.items():
        for (q2, r), gs in elems.items():
            if q2 != q:
                continue
            for h, e, e2 in fs:
                for g, _, e3 in gs:
                    comp[(mtok[(g, e2, e3)], mtok[(h, e, e2)])] = \
                        mtok[(cat.comp[(g, h)], e, e3)]
    kc = FiniteCategory(tuple(otok.values()), homs, identities, comp)
    alpha = Functor(
        cat, kc,
        {x: otok[(x, cat.identities[x])] for x in cat.objects},
        {h: mtok[(h, cat.identities[s], cat.identities[t])]
         for (s, t), hs in cat.homs.items() for h in hs})
    return kc, alpha, otok, mtok


def kar_category(cat):
    """Idempotent completion of a category, with the canonical embedding.

    Returns (completion, alpha) where alpha sends x to (x, id_x).  On a
    category whose idempotents are all identities alpha is token-identity.
    """
    kc, alpha, _, _ = _kar_data(cat)
    return KarResult(kc, alpha)


def idempotents_split(cat):
    """Whether every idempotent e : x -> x factors as s.r = e, r.s = id."""
    for x, e in idempotents(cat):
        if not any(cat.comp[(s, r)] == e
                   and cat.comp[(r, s)] == cat.identities[y]
                   for y in cat.objects
                   for r in cat.hom(x, y)
                   for s in cat.hom(y, x)):
            return False
    return True


def _has_retract(cat, d, sources):
    # r.s = id_d with r starting from one of the given objects
    for o in sources:
        for r in cat.hom(o, d):
            for s in cat.hom(d, o):
                if cat.comp[(r, s)] == cat.identities[d]:
                    return True
    return False


def is_morita_equivalence(fun):
    """Locally bijective, and every target object a retract of an image."""
    if not is_locally_bijective(fun):
        return False
    cod = fun.cod
    images = sorted(set(fun.obj_map.values()))
    return all(_has_retract(cod, d, images) for d in cod.objects)


def kar_functor(fun):
    """The completed functor, sending (x, e) to (F x, F e)."""
    kc, _, otok_c, mtok_c = _kar_data(fun.dom)
    kd, _, otok_d, mtok_d = _kar_data(fun.cod)
    obj_map = {t: otok_d[(fun.obj_map[x], fun.mor_map[e])]
               for (x, e), t in otok_c.items()}
    mor_map = {t: mtok_d[(fun.mor_map[h], fun.mor_map[e], fun.mor_map[e2])]
               for (h, e, e2), t in mtok_c.items()}
    return Functor(kc, kd, obj_map, mor_map)


def _kar_multicat_data(mc):
    m1 = underlying_1(mc)
    ck, _, otok, mtok = _kar_data(m1)

    # to_obj / to_mor express the arity-one part of the completion so far
    # in ck's tokens; they are rebuilt after every attachment
    to_obj = {x: otok[(x, m1.identities[x])] for x in mc.objects}
    to_mor = {h: mtok[(h, m1.identities[m1.source(h)],
                       m1.identities[m1.target(h)])]
              for h in m1.morphisms}
    cur = mc
    alpha = identity_multifunctor(mc)
    attached = sorted(to_obj.values())
    for q in (t for t in ck.objects if t not in set(attached)):
        b = full_subcategory(ck, attached + [q])
        inc = Functor(underlying_1(cur), b, dict(to_obj), dict(to_mor))
        res = pushout_multicat_along_E(cur, inc)
        to_obj = {res.leg1.obj_map[o]: t for o, t in to_obj.items()}
        to_obj[res.leg2.obj_map[q]] = q
        nxt = {res.leg1.mor_map[h]: t for h, t in to_mor.items()}
        for bt, im in res.leg2.mor_map.items():
            if b.source(bt) == q or b.target(bt) == q:
                nxt[im] = bt
        to_mor = nxt
        alpha = compose_multifunctors(res.leg1, alpha)
        cur = res.object
        attached = sorted(attached + [q])
    j_obj = {t: o for o, t in to_obj.items()}
    j_mor = {t: h for h, t in to_mor.items()}
    return KarResult(cur, alpha), j_obj, j_mor


def kar_multicat(mc):
    """Idempotent completion of a multicategory.

    Splits the idempotents of the arity-one category, then attaches every
    new object by a pushout along the corresponding full inclusion.  Returns
    (completion, alpha) with alpha the composite of the attachment legs.
    """
    res, _, _ = _kar_multicat_data(mc)
    return res


def kar_multifunctor(mfun, budget=None):
    """The completed multifunctor, induced by the pushout universal property.

    The completion of the domain is a colimit under the domain itself and
    the completed arity-one category, so a multifunctor out of it is pinned
    down by where those two legs go; the one candidate is found by search.
    """
    km, jm_obj, jm_mor = _kar_multicat_data(mfun.dom)
    kn, jn_obj, jn_mor = _kar_multicat_data(mfun.cod)
    kf = kar_functor(underlying_functor(mfun))

    forced_obj, forced_mor = {}, {}
    for x, im in km.alpha.obj_map.items():
        forced_obj[im] = kn.alpha.obj_map[mfun.obj_map[x]]
    for t, im in km.alpha.mor_map.items():
        forced_mor[im] = kn.alpha.mor_map[mfun.mor_map[t]]
    for o, im in jm_obj.items():
        want = jn_obj[kf.obj_map[o]]
        if forced_obj.setdefault(im, want) != want:
            raise PushoutConstructionError(
                f"legs disagree on object {im!r}")
    for t, im in jm_mor.items():
        want = jn_mor[kf.mor_map[t]]
        if forced_mor.setdefault(im, want) != want:
            raise PushoutConstructionError(
                f"legs disagree on morphism {im!r}")

    found = enumerate_multifunctors(km.object, kn.object, budget,
                                    forced_obj, forced_mor)
    if len(found) != 1:
        raise PushoutConstructionError(
            f"expected a unique mediating multifunctor, found {len(found)}")
    return found[0]


def is_morita_multi_equivalence(mfun):
    """Locally bijective on every signature, retracts onto all objects."""
    if not is_locally_bijective(mfun):
        return False
    n1 = underlying_1(mfun.cod)
    images = sorted(set(mfun.obj_map.values()))
    return all(_has_retract(n1, d, images) for d in n1.objects)
