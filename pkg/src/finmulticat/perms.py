"""Permutations of {0,...,k-1} as image tuples.

A permutation p sends position i to position p[i].  Acting on a tuple,
``apply_to(p, a)[p[i]] = a[i]``, i.e. the entry at position j of the result
is ``a[inverse(p)[j]]``.  Composition is function composition: apply q first,
then p.
"""

from itertools import permutations as _permutations


def identity(k):
    return tuple(range(k))


def is_identity(p):
    return all(p[i] == i for i in range(len(p)))


def compose(p, q):
    """(p∘q)[i] = p[q[i]]."""
    if len(p) != len(q):
        raise ValueError("arity mismatch in permutation composition")
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def apply_to(p, items):
    """Left action on tuples: the slot i entry moves to slot p[i]."""
    if len(p) != len(items):
        raise ValueError("arity mismatch in permutation action")
    out = [None] * len(items)
    for i, x in enumerate(items):
        out[p[i]] = x
    return tuple(out)


def all_perms(k):
    return [tuple(p) for p in _permutations(range(k))]


def transpositions(k):
    """Adjacent transpositions (i i+1), generators of the symmetric group."""
    out = []
    for i in range(k - 1):
        p = list(range(k))
        p[i], p[i + 1] = p[i + 1], p[i]
        out.append(tuple(p))
    return out


def block(p, sizes):
    """Block permutation: move contiguous blocks of the given sizes like p
    moves single positions.  Block i occupies its slice of the source; it
    lands where p sends position i, with target offsets computed from the
    reordered sizes."""
    k = len(p)
    if len(sizes) != k:
        raise ValueError("sizes must match permutation length")
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    inv = inverse(p)
    tstarts = []
    acc = 0
    for j in range(k):
        tstarts.append(acc)
        acc += sizes[inv[j]]
    out = [0] * sum(sizes)
    for i in range(k):
        for t in range(sizes[i]):
            out[starts[i] + t] = tstarts[p[i]] + t
    return tuple(out)


def direct_sum(ps):
    """τ_1 ⊕ ... ⊕ τ_n acting blockwise."""
    out = []
    off = 0
    for p in ps:
        out.extend(off + j for j in p)
        off += len(p)
    return tuple(out)


def perm_token(p):
    if len(p) > 9:
        raise ValueError("permutation tokens support arity <= 9")
    return "s" + "".join(str(i) for i in p)
