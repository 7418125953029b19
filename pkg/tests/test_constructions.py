import pytest

import finmulticat as fm
from finmulticat import samplers

Z2 = samplers.monoid_category(2, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})

CATS = {
    "one": samplers.terminal_category(),
    "e": samplers.walking_idempotent(),
    "arrow": samplers.walking_arrow(),
    "iso": samplers.walking_iso(),
    "pp": samplers.parallel_pair(),
    "z2": Z2,
}


def binary_pair():
    sig = fm.Signature(("a", "a"), "a")
    return fm.build_multicat(["a"], 2, {"m": sig, "n": sig}, {},
                             {("m", (1, 0)): "n", ("n", (1, 0)): "m"})


# ---------------------------------------------------------------------------
# E and its adjunction


@pytest.mark.parametrize("name", sorted(CATS))
def test_embed_E_roundtrip(name):
    cat = CATS[name]
    mc = fm.embed_E(cat, 2)
    assert fm.validate_multicat(mc).ok
    assert all(s.arity == 1 for s in mc.homs)
    assert fm.underlying_1(mc) == cat


def test_embed_E_requires_positive_bound():
    with pytest.raises(ValueError):
        fm.embed_E(CATS["one"], 0)


# |Hom(EC, M)| = |Hom(C, M₁)|: E ⊣ (_)₁
ADJUNCTION_COUNTS = [
    ("e", lambda: fm.com_multicat(2), 1),
    ("arrow", lambda: fm.com_multicat(2), 1),
    ("iso", lambda: fm.com_multicat(3), 1),
    ("one", lambda: fm.com_multicat(3), 1),
    ("e", lambda: fm.embed_E(CATS["e"], 2), 2),
    ("arrow", lambda: fm.embed_E(CATS["iso"], 2), 4),
    ("pp", lambda: fm.embed_E(CATS["arrow"], 2), 3),
    ("z2", lambda: fm.embed_E(Z2, 3), 2),
]


@pytest.mark.parametrize("cname,mk,n", ADJUNCTION_COUNTS)
def test_E_adjunction_counts(cname, mk, n):
    cat, mc = CATS[cname], mk()
    upper = fm.enumerate_multifunctors(fm.embed_E(cat, mc.arity_bound), mc)
    lower = fm.enumerate_functors(cat, fm.underlying_1(mc))
    assert len(upper) == len(lower) == n


def test_transposes_are_mutually_inverse():
    arrow, m = CATS["arrow"], fm.embed_E(CATS["iso"], 2)
    m1 = fm.underlying_1(m)
    for f in fm.enumerate_functors(arrow, m1):
        up = fm.e_raise(arrow, m, f)
        assert not fm.multifunctor_violations(up)
        back = fm.e_lower(up)
        assert back.obj_map == f.obj_map and back.mor_map == f.mor_map


def test_counit_E():
    mc = fm.com_multicat(3)
    eps = fm.counit_E(mc)
    assert not fm.multifunctor_violations(eps)
    assert eps.dom.arity_bound == 3
    # on an E-image the counit is an isomorphism
    em = fm.embed_E(CATS["pp"], 2)
    eps2 = fm.counit_E(em)
    assert eps2.dom == em
    assert all(eps2.mor_map[t] == t for t in em.morphisms)


def test_e_on_functor_and_underlying_functor():
    f = fm.Functor(CATS["arrow"], CATS["e"], {"x": "*", "y": "*"},
                   {"a": "e", "id_x": "id_*", "id_y": "id_*"})
    lifted = fm.e_on_functor(f, 2)
    assert not fm.multifunctor_violations(lifted)
    dropped = fm.underlying_functor(lifted)
    assert dropped.mor_map == f.mor_map


# ---------------------------------------------------------------------------
# symmetrization of multigraphs


def test_sym_orbits():
    g = fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m",)}, 2)
    sg = fm.sym(g)
    assert sg.symmetric
    assert fm.validate_multigraph(sg).ok
    assert sorted(sg.morphisms) == ["m", "m@s10"]
    assert sg.act((1, 0), "m") == "m@s10"
    assert fm.forget_sym(sg).action == {}


# |Hom_sym(Sym G, H)| = |Hom(G, U H)|
def _two_gen_sym():
    sig = fm.Signature(("a", "a"), "a")
    return fm.sym(fm.MultiGraph(("a",), {sig: ("p", "q")}, 2))


def _g4():
    return fm.MultiGraph(("u", "v"),
                         {fm.Signature(("u", "u"), "v"): ("m",),
                          fm.Signature(("v",), "u"): ("w",)}, 2)


def _h4():
    return fm.sym(fm.MultiGraph(("u", "v"),
                                {fm.Signature(("u", "u"), "v"): ("p", "q"),
                                 fm.Signature(("v",), "u"): ("r",),
                                 fm.Signature(("u",), "u"): ("s",)}, 2))


SYM_ADJUNCTION = [
    (lambda: fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m",)}, 2),
     _two_gen_sym, 4),
    (lambda: fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m", "n")}, 2),
     _two_gen_sym, 16),
    (_g4, _h4, 4),
]


@pytest.mark.parametrize("mkg,mkh,n", SYM_ADJUNCTION)
def test_sym_adjunction_counts(mkg, mkh, n):
    g, h = mkg(), mkh()
    upper = fm.enumerate_graph_maps(fm.sym(g), h)
    lower = fm.enumerate_graph_maps(g, fm.forget_sym(h))
    assert len(upper) == len(lower) == n


def test_sym_map_is_equivariant():
    g = fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m",)}, 2)
    h = fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("p", "q")}, 2)
    gmap = fm.MultiGraphMap(g, h, {"a": "a"}, {"m": "q"})
    s = fm.sym_map(gmap)
    assert s.mor_map["m"] == "q"
    assert s.mor_map["m@s10"] == "q@s10"
    for (f, p), f2 in s.dom.action.items():
        assert s.cod.act(p, s.mor_map[f]) == s.mor_map[f2]


# ---------------------------------------------------------------------------
# cells and intervals


def test_cell_multigraph():
    c = fm.cell_multigraph(2, ("s",))
    assert c.objects == ("*", "1", "2")
    assert c.hom(fm.Signature(("1", "2"), "*")) == ("s",)
    assert c.arity_bound == 2
    assert fm.cell_multigraph(0, ("b",)).arity_bound == 1
    assert fm.cell_multigraph(1, ()).morphisms == ()
    with pytest.raises(ValueError):
        fm.cell_multigraph(3, ("s",), arity_bound=2)


def test_interval_graph():
    i = fm.interval_graph(("h", "k"))
    assert i.objects == ("0", "1")
    assert i.edges[("0", "1")] == ("h", "k")
    assert fm.interval_graph(()).edges == {}


# ---------------------------------------------------------------------------
# free categories


def test_free_category_on_chain():
    g = fm.Graph(("a", "b", "c"), {("a", "b"): ("f",), ("b", "c"): ("g",)})
    res = fm.free_category(g)
    assert res.exact
    cat = res.category
    assert cat.hom("a", "c") == ("g.f",)
    assert cat.compose("g", "f") == "g.f"
    assert res.paths["g.f"] == ("g", "f")
    assert fm.validate_category(cat).ok


def test_free_category_on_interval():
    res = fm.free_category(fm.interval_graph(("h",)))
    assert res.exact
    assert res.category.morphisms == ("h", "id_0", "id_1")


def test_free_category_loop_truncates():
    g = fm.Graph(("a",), {("a", "a"): ("e",)})
    res = fm.free_category(g, length_bound=3)
    assert not res.exact
    assert res.category.morphisms == ("e", "e.e", "e.e.e", "id_a")
    # the table is partial: e.e.e ∘ e falls off the bound
    assert ("e.e.e", "e") not in res.category.comp


# ---------------------------------------------------------------------------
# free symmetric multicategories


def test_free_symmulticat_binary_generator():
    g = fm.sym(fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m",)}, 3))
    res = fm.free_symmulticat(g, 3)
    assert res.exact
    mc = res.multicat
    assert fm.validate_multicat(mc).ok
    by_arity = {}
    for s, toks in mc.homs.items():
        by_arity[s.arity] = by_arity.get(s.arity, 0) + len(toks)
    # Catalan(n-1) · n! planar trees with leaf labellings
    assert by_arity == {1: 1, 2: 2, 3: 12}


def test_free_symmulticat_unary_tower_is_inexact():
    g = fm.MultiGraph(("a",), {fm.Signature(("a",), "a"): ("u",)}, 1, True, {})
    res = fm.free_symmulticat(g, 1, depth_bound=3)
    assert not res.exact
    assert len(res.multicat.morphisms) == 4


def test_free_symmulticat_rejects_plain_graph():
    g = fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m",)}, 2)
    with pytest.raises(ValueError):
        fm.free_symmulticat(g, 2)


def test_is_composite_free():
    assert fm.is_composite_free(fm.cell_multigraph(2, ("s",)))
    g = fm.MultiGraph(("a",), {fm.Signature(("a", "a"), "a"): ("m",)}, 2)
    assert not fm.is_composite_free(g)


def test_free_multifunctor():
    sig = fm.Signature(("a", "a"), "a")
    g = fm.sym(fm.MultiGraph(("a",), {sig: ("m",)}, 2))
    h = fm.sym(fm.MultiGraph(("a",), {sig: ("p", "q")}, 2))
    gm = fm.MultiGraphMap(g, h, {"a": "a"}, {"m": "p", "m@s10": "p@s10"})
    rg, rh = fm.free_symmulticat(g, 2), fm.free_symmulticat(h, 2)
    lifted = fm.free_multifunctor(gm, rg, rh)
    assert not fm.multifunctor_violations(lifted)
    assert lifted.mor_map["m"] == "p"


# ---------------------------------------------------------------------------
# Com and tensor


def test_com_multicat():
    com = fm.com_multicat(3)
    assert fm.validate_multicat(com).ok
    assert com.morphisms == ("c0", "c2", "c3", "id_*")
    assert com.compose("c2", ("c2", "id_*")) == "c3"
    assert com.compose("c2", ("c0", "id_*")) == "id_*"
    assert com.act((1, 0), "c2") == "c2"


def test_tensor_hom_sizes_multiply():
    mcp = binary_pair()
    t = fm.tensor(mcp, mcp)
    assert fm.validate_multicat(t).ok
    assert t.objects == ("a&a",)
    binary = fm.Signature(("a&a", "a&a"), "a&a")
    assert len(t.hom(binary)) == 4
    assert len(t.morphisms) == 5


def test_tensor_unit():
    mcp = binary_pair()
    t = fm.tensor(mcp, fm.com_multicat(2))
    assert fm.find_multicat_isomorphism(t, mcp) is not None
    t2 = fm.tensor(fm.com_multicat(2), fm.com_multicat(2))
    assert fm.find_multicat_isomorphism(t2, fm.com_multicat(2)) is not None


def test_tensor_requires_matching_truncation():
    with pytest.raises(ValueError):
        fm.tensor(fm.com_multicat(2), fm.com_multicat(3))


# ---------------------------------------------------------------------------
# discrete, indiscrete, truncation


def test_discrete_and_indiscrete():
    d = fm.discrete(["a", "b"])
    assert d.morphisms == ("id_a", "id_b")
    i = fm.indiscrete(["a", "b", "c"])
    assert fm.validate_category(i).ok
    assert all(len(i.hom(x, y)) == 1 for x in i.objects for y in i.objects)
    assert i.compose("b.c", "a.b") == "a.c"


def test_truncate_com():
    assert fm.truncate(fm.com_multicat(3), 2) == fm.com_multicat(2)
    assert fm.truncate(fm.com_multicat(2), 2) == fm.com_multicat(2)
    with pytest.raises(ValueError):
        fm.truncate(fm.com_multicat(2), 3)


def test_truncate_multigraph():
    c = fm.cell_multigraph(3, ("s",))
    t = fm.truncate(c, 2)
    assert t.morphisms == ()
    assert t.arity_bound == 2


# ---------------------------------------------------------------------------
# restriction and extension


def test_restrict_category():
    u = {"z": "x"}
    r = fm.restrict_u(u, CATS["arrow"])
    assert r.objects == ("z",)
    assert len(r.morphisms) == 1
    f = fm.restriction_map(u, CATS["arrow"])
    assert fm.is_locally_bijective(f)
    assert not fm.functor_violations(f)


def test_restrict_multicat():
    u = {"z": "*"}
    r = fm.restrict_u(u, fm.com_multicat(3))
    assert fm.find_multicat_isomorphism(r, fm.com_multicat(3)) is not None
    f = fm.restriction_map(u, fm.com_multicat(3))
    assert not fm.multifunctor_violations(f)


def test_extend_multicat():
    mcp = binary_pair()
    ext = fm.extend_u({"a": "b"}, mcp, ["b", "c"])
    assert ext.objects == ("b", "c")
    assert len(ext.hom(fm.Signature(("b", "b"), "b"))) == 2
    assert fm.validate_multicat(ext).ok
    unit = fm.extension_map({"a": "b"}, mcp, ["b", "c"])
    assert not fm.multifunctor_violations(unit)
    with pytest.raises(ValueError):
        fm.extend_u({"a": "b", "a2": "b"}, mcp, ["b"])


def test_factor_through_image():
    f = fm.Functor(CATS["arrow"], CATS["e"], {"x": "*", "y": "*"},
                   {"a": "e", "id_x": "id_*", "id_y": "id_*"})
    first, canon = fm.factor_through_image(f)
    assert not fm.functor_violations(first)
    assert not fm.functor_violations(canon)
    whole = fm.compose_functors(canon, first)
    assert whole.obj_map == f.obj_map and whole.mor_map == f.mor_map
    assert first.obj_map == {"x": "x", "y": "y"}


def test_factor_cofibration_style():
    mcp = binary_pair()
    com = fm.com_multicat(2)
    # injective on objects: the middle object is the extension
    f = fm.MultiFunctor(mcp, fm.extend_u({"a": "b"}, mcp, ["b", "c"]),
                        {"a": "b"}, {"id_a": "id_b", "m": "m", "n": "n"})
    first, second = fm.factor_cofibration_style(f)
    assert not fm.multifunctor_violations(first)
    assert not fm.multifunctor_violations(second)
    whole = fm.compose_multifunctors(second, first)
    assert whole.obj_map == f.obj_map and whole.mor_map == f.mor_map
    # non-injective object part falls back to the image factorization
    g = fm.MultiFunctor(mcp, com, {"a": "*"},
                        {"id_a": "id_*", "m": "c2", "n": "c2"})
    first2, second2 = fm.factor_cofibration_style(g)
    whole2 = fm.compose_multifunctors(second2, first2)
    assert whole2.obj_map == g.obj_map and whole2.mor_map == g.mor_map
