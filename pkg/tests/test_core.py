import random

import pytest

import finmulticat as fm
from finmulticat import samplers

# Z/2 as a one-object category: the nonidentity endo squares to the identity.
Z2 = samplers.monoid_category(2, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})

CATS = {
    "one": samplers.terminal_category(),
    "e": samplers.walking_idempotent(),
    "arrow": samplers.walking_arrow(),
    "iso": samplers.walking_iso(),
    "pp": samplers.parallel_pair(),
    "z2": Z2,
}


# ---------------------------------------------------------------------------
# tokens and budgets


def test_token_checks():
    fm.check_token("f2'")
    for bad in ["", "a b", "x#y", "p(q", "a,b", "u:v", "g=h", "s)"]:
        with pytest.raises(ValueError):
            fm.check_token(bad)


def test_id_tokens():
    assert fm.id_token("x") == "id_x"
    assert fm.is_id_token("id_x")
    assert not fm.is_id_token("idx")
    assert fm.fresh_token("f", {"f"}) == "f~2"
    assert fm.fresh_token("f", {"f", "f~2"}) == "f~3"
    assert fm.fresh_token("g", {"f"}) == "g"


def test_budget_exhaustion():
    b = fm.Budget(5, label="probe")
    b.spend(5)
    with pytest.raises(fm.BudgetExceededError):
        b.spend()


# ---------------------------------------------------------------------------
# building categories


def test_build_fills_identities_and_units():
    cat = samplers.walking_arrow()
    assert cat.objects == ("x", "y")
    assert cat.morphisms == ("a", "id_x", "id_y")
    assert cat.identity("x") == "id_x"
    assert cat.compose("id_y", "a") == "a"
    assert cat.compose("a", "id_x") == "a"
    assert cat.hom("y", "x") == ()
    assert cat.source("a") == "x" and cat.target("a") == "y"
    assert cat.is_identity_mor("id_x") and not cat.is_identity_mor("a")


def test_build_rejects_bad_data():
    with pytest.raises(ValueError):
        fm.build_category(["x"], {"id_x": ("x", "x")})
    with pytest.raises(ValueError):
        fm.build_category(["x"], {"f": ("x", "z")})
    with pytest.raises(ValueError):
        fm.FiniteCategory(("x",), {("x", "x"): ("f", "f")}, {"x": "id_x"}, {})


@pytest.mark.parametrize("name", sorted(CATS))
def test_fixture_categories_validate(name):
    rep = fm.validate_category(CATS[name])
    assert rep.ok, rep.violations


def test_validate_flags_missing_composite():
    cat = samplers.walking_idempotent()
    broken = fm.FiniteCategory(cat.objects, cat.homs, cat.identities,
                               {k: v for k, v in cat.comp.items() if k != ("e", "e")})
    rep = fm.validate_category(broken)
    assert not rep.ok
    assert ("comp-missing", ("e", "e")) in rep.violations


def test_validate_flags_unit_law():
    cat = fm.build_category(["*"], {"e": ("*", "*")},
                            {("e", "e"): "e", ("id_*", "e"): "id_*"})
    rep = fm.validate_category(cat)
    assert "unit-law" in rep.tags()


def test_validate_flags_associativity():
    # Z/3 addition with one corrupted cell: (g1 g2) g2 = g2 but g1 (g2 g2) = id
    cat = fm.build_category(["*"], {"g1": ("*", "*"), "g2": ("*", "*")},
                            {("g1", "g1"): "g2", ("g1", "g2"): "id_*",
                             ("g2", "g1"): "id_*", ("g2", "g2"): "g2"})
    rep = fm.validate_category(cat)
    assert not rep.ok
    assert "associativity" in rep.tags()


def test_mutants_of_rigid_categories_are_invalid():
    rng = random.Random(7)
    for _ in range(10):
        cat = samplers.rigid_categories(rng)
        assert fm.validate_category(cat).ok
        for kind, key, alt, mutant in samplers.category_mutants(cat):
            assert not fm.validate_category(mutant).ok, (kind, key, alt)


# ---------------------------------------------------------------------------
# functor enumeration

FUNCTOR_COUNTS = [
    ("one", "e", 1),
    ("e", "e", 2),
    ("arrow", "e", 2),
    ("iso", "e", 1),
    ("pp", "arrow", 3),
    ("arrow", "pp", 4),
    ("z2", "z2", 2),
    ("e", "z2", 1),
    ("z2", "e", 1),
    ("iso", "z2", 2),
    ("pp", "pp", 6),
    ("arrow", "iso", 4),
    ("e", "arrow", 2),
    ("pp", "e", 4),
    ("iso", "iso", 4),
    ("iso", "arrow", 2),
]


@pytest.mark.parametrize("dom,cod,n", FUNCTOR_COUNTS)
def test_functor_counts(dom, cod, n):
    funs = fm.enumerate_functors(CATS[dom], CATS[cod])
    assert len(funs) == n
    for f in funs:
        assert not fm.functor_violations(f)


def test_enumerate_functors_forced():
    pp, arrow = CATS["pp"], CATS["arrow"]
    funs = fm.enumerate_functors(pp, arrow, forced_obj={"x": "x", "y": "y"})
    assert len(funs) == 1
    assert funs[0].mor_map["a"] == "a"
    funs = fm.enumerate_functors(pp, arrow, forced_obj={"x": "y", "y": "x"})
    assert funs == []


def test_functor_violations_detects_comp_failure():
    e = CATS["e"]
    bad = fm.Functor(e, e, {"*": "*"}, {"e": "id_*", "id_*": "id_*"})
    tags = [v.tag for v in fm.functor_violations(bad)]
    assert tags == []  # e ↦ id happens to respect e∘e = e
    bad2 = fm.Functor(CATS["z2"], CATS["z2"], {"*": "*"}, {"g1": "g1", "id_*": "g1"})
    tags = {v.tag for v in fm.functor_violations(bad2)}
    assert "map-identity" in tags


def test_identity_and_composition_of_functors():
    arrow = CATS["arrow"]
    ide = fm.identity_functor(arrow)
    assert not fm.functor_violations(ide)
    funs = fm.enumerate_functors(arrow, CATS["e"])
    for f in funs:
        g = fm.compose_functors(f, ide)
        assert g.obj_map == f.obj_map and g.mor_map == f.mor_map


def test_enumeration_respects_budget():
    pp = CATS["pp"]
    with pytest.raises(fm.BudgetExceededError):
        fm.enumerate_functors(pp, pp, budget=2)


# ---------------------------------------------------------------------------
# isomorphisms, renaming, subcategories


def test_find_isomorphism_on_renamed_copy():
    pp = CATS["pp"]
    other = fm.rename_category(pp, {"x": "s", "y": "t"},
                               {"a": "u", "b": "v", "id_x": "id_s", "id_y": "id_t"})
    iso = fm.find_isomorphism(pp, other)
    assert iso is not None
    assert iso.obj_map == {"x": "s", "y": "t"}
    assert sorted(iso.mor_map.values()) == ["id_s", "id_t", "u", "v"]
    assert fm.find_isomorphism(pp, CATS["arrow"]) is None
    assert fm.find_isomorphism(CATS["e"], Z2) is None  # same profile, no iso


def test_rename_category_roundtrip():
    cat = Z2
    there = fm.rename_category(cat, {"*": "o"}, {"g1": "h"})
    back = fm.rename_category(there, {"o": "*"}, {"h": "g1"})
    assert back == cat


def test_full_subcategory():
    pp = CATS["pp"]
    sub = fm.full_subcategory(pp, ["x"])
    assert sub.objects == ("x",)
    assert sub.morphisms == ("id_x",)


def test_locally_bijective_functors():
    one, arrow = CATS["one"], CATS["arrow"]
    incl = fm.Functor(one, arrow, {"*": "x"}, {"id_*": "id_x"})
    assert fm.is_locally_bijective(incl)
    collapse = fm.enumerate_functors(arrow, CATS["e"])
    # a ↦ id_* is a bijection hom(x,y) → hom(*,*)? no: |hom(*,*)| = 2
    assert all(not fm.is_locally_bijective(f) for f in collapse)


# ---------------------------------------------------------------------------
# multicategories


def mc_pair():
    # one object, two binary operations swapped by the transposition
    sig = fm.Signature(("a", "a"), "a")
    return fm.build_multicat(["a"], 2, {"m": sig, "n": sig}, {},
                             {("m", (1, 0)): "n", ("n", (1, 0)): "m"})


def test_build_multicat_closes_units_and_action():
    mc = mc_pair()
    assert mc.arity_bound == 2
    assert mc.morphisms == ("id_a", "m", "n")
    assert mc.compose("m", ("id_a", "id_a")) == "m"
    assert mc.act((1, 0), "m") == "n"
    assert mc.act((0, 1), "m") == "m"
    assert mc.signature("m") == fm.Signature(("a", "a"), "a")
    assert fm.validate_multicat(mc).ok


def test_validate_multicat_flags_broken_action():
    mc = mc_pair()
    action = dict(mc.action)
    action[("n", (1, 0))] = "n"
    broken = fm.TruncatedSymMulticat(mc.objects, mc.homs, 2, mc.identities,
                                     action, mc.comp)
    rep = fm.validate_multicat(broken)
    assert not rep.ok
    assert "action-group-law" in rep.tags()


def test_validate_multicat_flags_arity_bound():
    mc = fm.build_multicat(["a"], 1, {"m": fm.Signature(("a", "a"), "a")})
    assert "arity-bound" in fm.validate_multicat(mc).tags()


def test_multicat_mutants_are_invalid():
    rng = random.Random(11)
    for _ in range(6):
        mc = samplers.rigid_multicats(rng, 2)
        assert fm.validate_multicat(mc).ok
        for kind, key, alt, mutant in samplers.multicat_mutants(mc):
            assert not fm.validate_multicat(mutant).ok, (kind, key, alt)


def test_enumerate_multifunctors_and_iso():
    mc = mc_pair()
    funs = fm.enumerate_multifunctors(mc, mc)
    # id_a is forced; (m,n) ↦ (m,n) or (n,m), equivariantly
    assert len(funs) == 2
    for f in funs:
        assert not fm.multifunctor_violations(f)
    other = fm.rename_multicat(mc, {"a": "b"}, {"m": "p", "n": "q"})
    iso = fm.find_multicat_isomorphism(mc, other)
    assert iso is not None and iso.obj_map == {"a": "b"}
    assert fm.find_multicat_isomorphism(mc, fm.build_multicat(["a"], 2)) is None


def test_multifunctor_violations_detects_action_failure():
    mc = mc_pair()
    bad = fm.MultiFunctor(mc, mc, {"a": "a"},
                          {"id_a": "id_a", "m": "m", "n": "n"})
    # skew the target action so m, n both land on m after the swap
    tags = {v.tag for v in fm.multifunctor_violations(
        fm.MultiFunctor(mc, mc, {"a": "a"},
                        {"id_a": "id_a", "m": "m", "n": "m"}))}
    assert "map-action" in tags
    assert not fm.multifunctor_violations(bad)


def test_multifunctor_truncation_mismatch():
    mc1 = fm.build_multicat(["a"], 1)
    mc2 = fm.build_multicat(["a"], 2)
    f = fm.MultiFunctor(mc1, mc2, {"a": "a"}, {"id_a": "id_a"})
    assert "map-truncation" in {v.tag for v in fm.multifunctor_violations(f)}


# ---------------------------------------------------------------------------
# multigraphs


def test_validate_multigraph():
    sig = fm.Signature(("a", "a"), "a")
    g = fm.MultiGraph(("a",), {sig: ("m", "n")}, 2,
                      True, {("m", (1, 0)): "n", ("n", (1, 0)): "m"})
    assert fm.validate_multigraph(g).ok
    missing = fm.MultiGraph(("a",), {sig: ("m", "n")}, 2, True, {("m", (1, 0)): "n"})
    rep = fm.validate_multigraph(missing)
    assert "action-missing" in rep.tags()
    plain = fm.MultiGraph(("a",), {sig: ("m",)}, 2, False, {("m", (1, 0)): "m"})
    assert "action-signature" in fm.validate_multigraph(plain).tags()


def test_enumerate_graph_maps():
    sig = fm.Signature(("a", "a"), "a")
    g = fm.MultiGraph(("a",), {sig: ("m",)}, 2)
    h = fm.MultiGraph(("a",), {sig: ("p", "q")}, 2)
    assert len(fm.enumerate_graph_maps(g, h)) == 2
    assert len(fm.enumerate_graph_maps(h, h)) == 4
