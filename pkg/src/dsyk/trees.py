"""Canonical rooted unordered trees and their growth combinatorics.

A tree is encoded as a nested tuple: each vertex is the sorted tuple of its
children's encodings, so ``()`` is a single vertex and ``((), ())`` is a
root with two leaf children.  Sorting makes the encoding unique per
isomorphism class, hence plain ``==`` decides isomorphism.

Each vertex represents one interaction arc of an open melon diagram; a
growth step attaches one new leaf somewhere, a contraction removes one
childless vertex.  ``TreeSpace`` interns encodings into integer ids and
caches the attach/remove adjacency so that repeated sweeps over large
diagram states stay cheap.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial


@lru_cache(maxsize=None)
def n_vertices(enc) -> int:
    return 1 + sum(n_vertices(c) for c in enc)


@lru_cache(maxsize=None)
def _subtree_size_product(enc) -> int:
    p = n_vertices(enc)
    for c in enc:
        p *= _subtree_size_product(c)
    return p


def linear_extensions(enc) -> int:
    """Number of vertex orderings in which every vertex precedes its children.

    This is the number of distinct ways the tree can be built by adding one
    arc at a time; by the hook-length formula it equals n!/prod(subtree sizes).
    """
    return factorial(n_vertices(enc)) // _subtree_size_product(enc)


@lru_cache(maxsize=None)
def automorphisms(enc) -> int:
    """Order of the automorphism group of the rooted tree."""
    a = 1
    run = 1
    for i, c in enumerate(enc):
        a *= automorphisms(c)
        if i > 0 and c == enc[i - 1]:
            run += 1
        else:
            run = 1
        a *= run  # accumulates factorial of each equal-children run
    return a


def canonical(children) -> tuple:
    """Canonical encoding from an iterable of child encodings."""
    return tuple(sorted(children))


@lru_cache(maxsize=None)
def attachments(enc, max_children=None):
    """Distinct trees obtained by attaching one new leaf at some vertex.

    With ``max_children`` set, vertices already carrying that many children
    do not accept the new leaf.
    """
    out = set()
    if max_children is None or len(enc) < max_children:
        out.add(canonical(enc + ((),)))
    for i, child in enumerate(enc):
        rest = enc[:i] + enc[i + 1:]
        for sub in attachments(child, max_children):
            out.add(canonical(rest + (sub,)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def leaf_removals(enc):
    """Map removed-leaf results to leaf multiplicities.

    Returns a tuple of (tree, m) pairs where m counts the individual
    childless vertices of ``enc`` whose removal yields that tree.  The root
    itself is never removed here; a single vertex has no removable leaves.
    """
    counts = {}
    for i, child in enumerate(enc):
        rest = enc[:i] + enc[i + 1:]
        if child == ():
            counts[canonical(rest)] = counts.get(canonical(rest), 0) + 1
        else:
            for sub, m in leaf_removals(child):
                t = canonical(rest + (sub,))
                counts[t] = counts.get(t, 0) + m
    return tuple(sorted(counts.items()))


@lru_cache(maxsize=None)
def slot_factor_product(enc, q: int) -> int:
    """Product over vertices of (q-1)(q-2)...(q-c) with c the child count.

    This is the disorder-averaged vertex weight accumulated by filling c of
    the q-1 available Majorana slots of each arc with further arcs.
    """
    p = 1
    for j in range(len(enc)):
        p *= q - 1 - j
    for c in enc:
        p *= slot_factor_product(c, q)
    return p


def enumerate_trees(n: int, max_children=None):
    """All canonical trees with exactly n vertices (n >= 1)."""
    if n == 1:
        return [()]
    out = set()
    for t in enumerate_trees(n - 1, max_children):
        out.update(attachments(t, max_children))
    return sorted(out)


class TreeSpace:
    """Interned tree registry with cached growth/contraction adjacency.

    Ids are dense integers; id 0 is the empty diagram (no arcs, the bare
    initial fermion) and id 1 the single-arc tree.  ``q`` bounds children
    per vertex at q-1; ``q=None`` means no bound (the large-q engine).
    """

    VACUUM = 0
    ROOT = 1

    def __init__(self, q=None, max_trees=2_000_000):
        self.q = q
        self.max_trees = max_trees
        self._encs = [None, ()]
        self._index = {(): 1}
        self._succ = [None, None]
        self._pred = [None, None]

    def __len__(self):
        return len(self._encs)

    def intern(self, enc) -> int:
        i = self._index.get(enc)
        if i is None:
            if len(self._encs) >= self.max_trees:
                from .errors import ResourceLimitError
                raise ResourceLimitError(
                    f"tree registry exceeded max_trees={self.max_trees}")
            i = len(self._encs)
            self._index[enc] = i
            self._encs.append(enc)
            self._succ.append(None)
            self._pred.append(None)
        return i

    def enc_of(self, i):
        return self._encs[i]

    def n_arcs(self, i) -> int:
        return 0 if i == self.VACUUM else n_vertices(self._encs[i])

    def aut(self, i) -> int:
        return 1 if i == self.VACUUM else automorphisms(self._encs[i])

    def slot_product(self, i, q) -> int:
        return 1 if i == self.VACUUM else slot_factor_product(self._encs[i], q)

    def successors(self, i):
        """Ids of trees reachable by attaching one leaf."""
        s = self._succ[i]
        if s is None:
            if i == self.VACUUM:
                s = (self.ROOT,)
            else:
                cap = None if self.q is None else self.q - 1
                s = tuple(self.intern(t)
                          for t in attachments(self._encs[i], cap))
            self._succ[i] = s
        return s

    def predecessors(self, i):
        """(id, multiplicity) pairs of trees reachable by removing one leaf."""
        p = self._pred[i]
        if p is None:
            if i == self.VACUUM:
                p = ()
            elif i == self.ROOT:
                p = ((self.VACUUM, 1),)
            else:
                p = tuple((self.intern(t), m)
                          for t, m in leaf_removals(self._encs[i]))
            self._pred[i] = p
        return p
