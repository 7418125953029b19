"""Planar trees over typed generators, and free-multicategory elements.

An element of a free symmetric multicategory is a pair (sigma, tree): a
planar tree whose nodes are generator tokens, together with a permutation
wiring the planar leaf positions to the element's actual input positions
(actual slot sigma[i] is planar leaf i).  Two pairs describe the same
element exactly when they differ by relabelling nodes along the generator
action and rewiring accordingly; canonical() picks the minimum encoding of
that orbit, so elements compare by equality of canonical forms.
"""

from . import perms
from .core import Signature

LEAF = ("l",)


def node(tok, children):
    return ("n", tok) + tuple(children)


def is_leaf(t):
    return t[0] == "l"


def node_token(t):
    return t[1]


def node_children(t):
    return t[2:]


class GenSystem:
    """Generator alphabet: signatures plus a Σ action on tokens."""

    def __init__(self, sigs, act=None):
        self.sigs = dict(sigs)
        self._act = act

    def sig(self, tok):
        return self.sigs[tok]

    def act(self, p, tok):
        if perms.is_identity(p):
            return tok
        return self._act(p, tok)


def ident(obj):
    return ("id", obj)


def elem(sigma, tree):
    return ("e", sigma, tree)


def is_ident(el):
    return el[0] == "id"


def tree_depth(t):
    if is_leaf(t):
        return 0
    return 1 + max((tree_depth(c) for c in node_children(t)), default=0)


def tree_size(t):
    if is_leaf(t):
        return 0
    return 1 + sum(tree_size(c) for c in node_children(t))


def tree_inputs(gens, t):
    s = gens.sig(node_token(t))
    out = []
    for i, c in enumerate(node_children(t)):
        if is_leaf(c):
            out.append(s.inputs[i])
        else:
            out.extend(tree_inputs(gens, c))
    return tuple(out)


def tree_output(gens, t):
    return gens.sig(node_token(t)).output


def relabel(t, f):
    if is_leaf(t):
        return t
    return node(f(node_token(t)), tuple(relabel(c, f) for c in node_children(t)))


def elem_signature(gens, el):
    if is_ident(el):
        return Signature((el[1],), el[1])
    _, sigma, tree = el
    return Signature(perms.apply_to(sigma, tree_inputs(gens, tree)),
                     tree_output(gens, tree))


def subst(tree, sub):
    """Replace the planar leaves of tree left to right; None keeps a leaf."""
    it = iter(sub)

    def rec(t):
        if is_leaf(t):
            s = next(it)
            return t if s is None else s
        return node(node_token(t), tuple(rec(c) for c in node_children(t)))

    out = rec(tree)
    for _ in it:
        raise ValueError("substitution arity mismatch")
    return out


def _variants(gens, tree):
    """All node-relabelled planarizations with their leaf rewirings."""
    if is_leaf(tree):
        yield tree, perms.identity(1)
        return
    tok = node_token(tree)
    cs = node_children(tree)
    n = len(cs)
    from itertools import product
    child_vs = [list(_variants(gens, c)) for c in cs]
    for combo in product(*child_vs):
        ts = tuple(t for t, _ in combo)
        ps = [p for _, p in combo]
        counts = tuple(len(p) for p in ps)
        for rho in perms.all_perms(n):
            tok2 = gens.act(rho, tok)
            ts2 = perms.apply_to(rho, ts)
            lp = perms.compose(perms.block(rho, counts), perms.direct_sum(ps))
            yield node(tok2, ts2), lp


def canonical(gens, el):
    if is_ident(el):
        return el
    _, sigma, tree = el
    best = None
    for t2, lp in _variants(gens, tree):
        cand = ("e", perms.compose(sigma, perms.inverse(lp)), t2)
        if best is None or cand < best:
            best = cand
    return best


def act_elem(gens, p, el):
    if perms.is_identity(p):
        return el
    _, sigma, tree = el
    return canonical(gens, ("e", perms.compose(p, sigma), tree))


def gen_elem(gens, tok):
    k = gens.sig(tok).arity
    return ("e", perms.identity(k), node(tok, (LEAF,) * k))


def compose_elems(gens, g_el, args):
    """Composite g_el ∘ (args), args indexed by actual input slots."""
    if is_ident(g_el):
        return args[0]
    _, sigma, tree = g_el
    k = len(sigma)
    if len(args) != k:
        raise ValueError("composition arity mismatch")
    planar = [args[sigma[i]] for i in range(k)]
    ks, sub, inner = [], [], []
    for a in planar:
        if is_ident(a):
            ks.append(1)
            sub.append(None)
            inner.append(perms.identity(1))
        else:
            _, si, ti = a
            ks.append(len(si))
            sub.append(ti)
            inner.append(si)
    total = perms.compose(perms.block(sigma, tuple(ks)), perms.direct_sum(inner))
    return canonical(gens, ("e", total, subst(tree, sub)))
