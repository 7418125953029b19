import pytest

import finmulticat as fm
from finmulticat import samplers
from finmulticat.colimits import UnionFind

ONE = samplers.terminal_category()
E = samplers.walking_idempotent()
ARROW = samplers.walking_arrow()
ISO = samplers.walking_iso()
Z2 = samplers.monoid_category(2, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})


# ---------------------------------------------------------------------------
# union-find


def test_union_find():
    uf = UnionFind()
    for x in "dcba":
        uf.add(x)
    assert len(uf) == 4
    assert uf.union("c", "d")
    assert not uf.union("d", "c")
    uf.union("a", "c")
    assert uf.rep("d") == "a"
    assert uf.rep("b") == "b"
    assert uf.classes() == {"a": ("a", "c", "d"), "b": ("b",)}
    assert len(uf) == 2


# ---------------------------------------------------------------------------
# coends


def hom_weight(cat):
    """W(x, y) = Hom(x, y); the coend is the set of conjugacy classes."""
    weight, lact, ract = {}, {}, {}
    for x in cat.objects:
        for y in cat.objects:
            weight[(x, y)] = cat.hom(x, y)
    for m in cat.morphisms:
        x, x2 = cat.source(m), cat.target(m)
        for y in cat.objects:
            for w in cat.hom(x2, y):
                lact[(m, y, w)] = cat.comp[(w, m)]
            for w in cat.hom(y, x):
                ract[(y, m, w)] = cat.comp[(m, w)]
    return fm.CoendProblem(cat, weight, lact, ract)


@pytest.mark.parametrize("cat,n", [(ARROW, 2), (ISO, 1), (E, 2), (Z2, 2)])
def test_hom_coend_class_counts(cat, n):
    res = fm.coend_set(hom_weight(cat))
    assert len(res.classes) == n


def test_custom_coend_instance():
    # weight on the walking arrow merging w1 with v but leaving w2 alone
    weight = {("x", "x"): ("w1", "w2"), ("y", "y"): ("v",),
              ("y", "x"): ("u",), ("x", "y"): ("z",)}
    lact = {("id_x", "x", "w1"): "w1", ("id_x", "x", "w2"): "w2",
            ("id_y", "y", "v"): "v", ("id_y", "x", "u"): "u",
            ("id_x", "y", "z"): "z",
            ("a", "x", "u"): "w1", ("a", "y", "v"): "z"}
    ract = {("x", "id_x", "w1"): "w1", ("x", "id_x", "w2"): "w2",
            ("y", "id_y", "v"): "v", ("y", "id_x", "u"): "u",
            ("x", "id_y", "z"): "z",
            ("x", "a", "w1"): "z", ("x", "a", "w2"): "z", ("y", "a", "u"): "v"}
    res = fm.coend_set(fm.CoendProblem(ARROW, weight, lact, ract))
    assert res.classes == {("x", "w1"): (("x", "w1"), ("y", "v")),
                           ("x", "w2"): (("x", "w2"),)}
    assert res.inject[("y", "v")] == ("x", "w1")


def test_coend_rejects_nonfunctorial_weight():
    weight = {("x", "x"): ("w1", "w2"), ("y", "y"): (),
              ("x", "y"): (), ("y", "x"): ()}
    lact = {("id_x", "x", "w1"): "w2", ("id_x", "x", "w2"): "w2"}
    ract = {("x", "id_x", "w1"): "w1", ("x", "id_x", "w2"): "w2"}
    with pytest.raises(ValueError):
        fm.coend_set(fm.CoendProblem(ARROW, weight, lact, ract))


# ---------------------------------------------------------------------------
# category pushouts along full and faithful inclusions


def span1():
    f = fm.Functor(ONE, E, {"*": "*"}, {"id_*": "id_*"})
    i = fm.Functor(ONE, ARROW, {"*": "x"}, {"id_*": "id_x"})
    return f, i


def span2():
    f = fm.Functor(ONE, ISO, {"*": "x"}, {"id_*": "id_x"})
    i = fm.Functor(ONE, ARROW, {"*": "x"}, {"id_*": "id_x"})
    return f, i


def cat_targets():
    return [fm.underlying_1(t) for t in samplers.standard_test_targets(1)]


def test_pushout_attaches_free_arrow_to_idempotent():
    f, i = span1()
    res = fm.pushout_cat_ff(f, i)
    # f is not full, so the object-identical stage ran through the oracle
    assert res.provenance == "oracle" and res.exact
    q = res.object
    assert q.objects == ("*", "y")
    assert q.morphisms == ("a.e", "a.id_*", "e", "id_*", "id_y")
    assert q.hom("*", "y") == ("a.e", "a.id_*")
    assert q.compose("a.id_*", "e") == "a.e"
    assert res.leg2.mor_map["a"] == "a.id_*"
    assert fm.validate_category(q).ok


def test_pushout_formula_case():
    f, i = span2()
    res = fm.pushout_cat_ff(f, i)
    assert res.provenance == "formula" and res.exact
    q = res.object
    # the new object collides with iso's y and gets a fresh token
    assert q.objects == ("x", "y", "y~2")
    assert q.hom("x", "y~2") == ("a.id_x",)
    assert q.hom("y", "y~2") == ("a.y.x",)
    assert q.hom("y~2", "x") == ()
    assert fm.validate_category(q).ok
    rep = fm.verify_pushout((f, i), res, cat_targets())
    assert rep.ok
    assert rep.stats["cocones"] == 23


def test_pushout_agrees_with_oracle():
    for mk in (span1, span2):
        f, i = mk()
        res = fm.pushout_cat_ff(f, i)
        ora = fm.bounded_pushout_oracle(f, i)
        assert ora.exact
        assert fm.is_isomorphic_over_cocone(res, ora) is not None


def test_pushout_rejects_bad_spans():
    f, _ = span1()
    collapse = fm.Functor(ARROW, E, {"x": "*", "y": "*"},
                          {"a": "e", "id_x": "id_*", "id_y": "id_*"})
    with pytest.raises(ValueError):
        fm.pushout_cat_ff(f, collapse)  # i not full and faithful
    with pytest.raises(ValueError):
        fm.pushout_cat_ff(collapse, span1()[1])  # mismatched span feet


def test_verify_pushout_flags_wrong_candidates():
    f, i = span2()
    res = fm.pushout_cat_ff(f, i)
    # candidate that forgot the new object entirely
    fake = fm.PushoutResult(ISO, fm.identity_functor(ISO),
                            fm.Functor(ARROW, ISO, {"x": "x", "y": "y"},
                                       {"a": "x.y", "id_x": "id_x",
                                        "id_y": "id_y"}),
                            "formula", True)
    rep = fm.verify_pushout((f, i), fake, [ARROW])
    assert not rep.ok
    assert "pushout-existence" in rep.tags()
    # candidate with a junk extra object: mediators are no longer unique
    q = res.object
    padded = fm.FiniteCategory(q.objects + ("junk",),
                               {**q.homs, ("junk", "junk"): ("id_junk",)},
                               {**q.identities, "junk": "id_junk"}, dict(q.comp))
    fat = fm.PushoutResult(padded, res.leg1, res.leg2, "formula", True)
    rep2 = fm.verify_pushout((f, i), fat, [ARROW])
    assert not rep2.ok
    assert "pushout-uniqueness" in rep2.tags()


# ---------------------------------------------------------------------------
# multicategory pushouts along E


def test_attach_object_to_com():
    com3 = fm.com_multicat(3)
    m1 = fm.underlying_1(com3)
    b = fm.build_category(["*", "y"], {"b": ("*", "y")})
    inc = fm.Functor(m1, b, {"*": "*"}, {"id_*": "id_*"})
    res = fm.pushout_multicat_along_E(com3, inc)
    assert res.provenance == "formula" and res.exact
    q = res.object
    assert q.objects == ("*", "y")
    assert q.morphisms == ("c0", "c2", "c3", "id_*", "id_y", "n0", "n1", "n2", "n3")
    # one new element per arity, fully symmetric
    for k in range(4):
        assert q.hom(fm.Signature(("*",) * k, "y")) == (f"n{k}",)
    assert q.act((1, 0), "n2") == "n2"
    assert q.compose("n2", ("c2", "id_*")) == "n3"
    assert q.compose("n1", ("c0",)) == "n0"
    assert fm.validate_multicat(q).ok
    rep = fm.verify_pushout((fm.counit_E(com3), fm.e_on_functor(inc, 3)),
                            res, samplers.standard_test_targets(3))
    assert rep.ok


def test_along_E_commutes_with_E():
    # pushing E(e) out along a category inclusion lands on E of the pushout
    ee = fm.embed_E(E, 2)
    b = fm.build_category(["*", "y"],
                          {"e": ("*", "*"), "b": ("*", "y"), "be": ("*", "y")},
                          {("e", "e"): "e", ("b", "e"): "be", ("be", "e"): "be"})
    inc = fm.Functor(E, b, {"*": "*"}, {"e": "e", "id_*": "id_*"})
    res = fm.pushout_multicat_along_E(ee, inc)
    assert res.exact
    assert fm.find_multicat_isomorphism(res.object, fm.embed_E(b, 2)) is not None


def test_e_square_pushout():
    com3 = fm.com_multicat(3)
    x = fm.MultiFunctor(fm.embed_E(ONE, 3), com3, {"*": "*"}, {"id_*": "id_*"})
    j = fm.Functor(ONE, ARROW, {"*": "x"}, {"id_*": "id_x"})
    res = fm.pushout_multicat_e_square(x, fm.e_on_functor(j, 3))
    assert res.exact
    q = res.object
    assert len(q.objects) == 2 and len(q.morphisms) == 9
    new = sorted(set(q.objects) - {"*"})[0]
    for k in range(4):
        assert len(q.hom(fm.Signature(("*",) * k, new))) == 1
    assert fm.validate_multicat(q).ok


def test_multicat_oracle_agrees_with_formula():
    com2 = fm.com_multicat(2)
    m1 = fm.underlying_1(com2)
    b = fm.build_category(["*", "y"], {"b": ("*", "y")})
    inc = fm.Functor(m1, b, {"*": "*"}, {"id_*": "id_*"})
    res = fm.pushout_multicat_along_E(com2, inc)
    ora = fm.bounded_pushout_oracle(fm.counit_E(com2), fm.e_on_functor(inc, 2))
    assert ora.exact
    assert fm.is_isomorphic_over_cocone(res, ora) is not None


def test_oracle_reports_inexact_when_capped():
    f, i = span1()
    capped = fm.bounded_pushout_oracle(f, i, max_rounds=0)
    assert not capped.exact
