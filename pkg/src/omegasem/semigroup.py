"""Finite semigroups with dense multiplication tables.

Elements are integer indices into a full |S| x |S| table.  Semigroups are
built by closing a set of generator values under an abstract product; the
breadth-first discovery order fixes the element numbering, so equal inputs
always yield identical tables.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ClosureCapExceeded, NonAssociative

DEFAULT_CAP = 10**7
DEFAULT_AUDIT_BOUND = 200


class Semigroup:
    """A finite semigroup given by a full multiplication table.

    ``table[s, t]`` is the product ``s * t``.  ``generators`` lists the
    distinct generator elements in first-seen order; every element is a
    product of generators.  ``parent`` and ``parent_gen`` record, for each
    non-generator element, one decomposition ``t = parent[t] * g`` used both
    for fast table construction and for shortest representative words.
    """

    def __init__(self, table, generators, parent=None, parent_gen=None,
                 audit_bound=DEFAULT_AUDIT_BOUND):
        table = np.asarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("table must be square")
        if n and (table.min() < 0 or table.max() >= n):
            raise ValueError("table entries out of range")
        self.table = table
        self.generators = tuple(int(g) for g in generators)
        if parent is None:
            parent, parent_gen = self._derive_parents()
        self.parent = np.asarray(parent, dtype=np.int32)
        self.parent_gen = np.asarray(parent_gen, dtype=np.int32)
        if np.any((self.parent < 0) & ~np.isin(np.arange(n), self.generators)):
            raise ValueError("elements unreachable from generators")
        self._idempotents = None
        self._green = {}
        if n <= audit_bound:
            self._audit_associativity()

    # -- construction helpers ------------------------------------------------

    def _derive_parents(self):
        """BFS over right multiplication by generators, from the generators."""
        n = self.size
        parent = np.full(n, -1, dtype=np.int32)
        parent_gen = np.full(n, -1, dtype=np.int32)
        seen = np.zeros(n, dtype=bool)
        order = []
        for g in self.generators:
            if not seen[g]:
                seen[g] = True
                order.append(g)
        i = 0
        while i < len(order):
            s = order[i]
            i += 1
            for j, g in enumerate(self.generators):
                t = int(self.table[s, g])
                if not seen[t]:
                    seen[t] = True
                    parent[t] = s
                    parent_gen[t] = j
                    order.append(t)
        return parent, parent_gen

    def _audit_associativity(self):
        t = self.table
        for a in range(self.size):
            if not np.array_equal(t[t[a, :], :], t[a, t]):
                raise NonAssociative("(%d * s) * t != %d * (s * t)" % (a, a))

    # -- basic queries -------------------------------------------------------

    @property
    def size(self):
        return self.table.shape[0]

    def mul(self, s, t):
        return int(self.table[s, t])

    def word_of(self, s):
        """A representative word for ``s``, as a tuple of generator positions."""
        out = []
        while self.parent[s] >= 0:
            out.append(int(self.parent_gen[s]))
            s = int(self.parent[s])
        out.append(self.generators.index(s))
        out.reverse()
        return tuple(out)

    @property
    def idempotents(self):
        """Boolean mask of idempotent elements."""
        if self._idempotents is None:
            n = self.size
            self._idempotents = self.table[np.arange(n), np.arange(n)] == np.arange(n)
        return self._idempotents

    def idempotent_power(self, s):
        """The unique idempotent among the powers of ``s``."""
        e, _ = self.idempotent_power_exponent(s)
        return e

    def idempotent_power_exponent(self, s):
        """Return ``(e, m)`` with ``e = s^m`` idempotent and ``m >= 1``."""
        seen = {}
        p = int(s)
        m = 1
        while p not in seen:
            seen[p] = m
            p = int(self.table[p, s])
            m += 1
        # p starts a cycle; scan it for the idempotent
        q = p
        while True:
            if self.table[q, q] == q:
                return q, seen[q]
            q = int(self.table[q, s])

    # -- Cayley graphs and Green's relations ----------------------------------

    @property
    def right_cayley(self):
        """``right_cayley[s, j] = s * generators[j]``."""
        return self.table[:, list(self.generators)]

    @property
    def left_cayley(self):
        """``left_cayley[s, j] = generators[j] * s``."""
        return self.table[list(self.generators), :].T

    def green_classes(self, kind):
        """Green's R- ('R') or L- ('L') classes as SCCs of a Cayley graph.

        Returns ``(class_of, n_classes)`` where class ids are numbered by
        first occurrence in element order.
        """
        if kind not in ("R", "L"):
            raise ValueError("kind must be 'R' or 'L'")
        if kind not in self._green:
            n = self.size
            cay = self.right_cayley if kind == "R" else self.left_cayley
            k = cay.shape[1]
            rows = np.repeat(np.arange(n), k)
            cols = cay.reshape(-1)
            data = np.ones(n * k, dtype=np.int8)
            graph = csr_matrix((data, (rows, cols)), shape=(n, n))
            _, labels = connected_components(graph, directed=True,
                                             connection="strong")
            self._green[kind] = _renumber(labels)
        return self._green[kind]

    def subsets_product(self, xs, ys):
        """Setwise product of two element index arrays, sorted and deduped."""
        sub = self.table[np.ix_(np.asarray(xs), np.asarray(ys))]
        return np.unique(sub)


def _renumber(labels):
    """Renumber labels by first occurrence; returns (labels, count)."""
    labels = np.asarray(labels)
    out = np.empty_like(labels)
    mapping = {}
    for i, lab in enumerate(labels.tolist()):
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out, len(mapping)


def close_generators(values: Sequence, multiply: Callable, *, key=None,
                     cap: int = DEFAULT_CAP,
                     audit_bound: int = DEFAULT_AUDIT_BOUND):
    """Close ``values`` under ``multiply`` and build the full table.

    ``values`` may contain duplicates (e.g. two letters with the same image).
    ``key`` maps a value to a hashable fingerprint when values themselves are
    not hashable.  Returns ``(semigroup, seed_indices, elements)`` where
    ``seed_indices[i]`` is the element index of ``values[i]`` and ``elements``
    lists the closed values in discovery order.

    Only |S| * |generators| abstract products are computed; the rest of the
    table is filled in by reassociating against recorded decompositions.
    """
    if key is None:
        key = lambda v: v
    elements = []
    index = {}
    seed_indices = []
    for v in values:
        k = key(v)
        if k not in index:
            index[k] = len(elements)
            elements.append(v)
        seed_indices.append(index[k])
    ngen = len(elements)
    if ngen == 0:
        raise ValueError("at least one generator is required")
    gen_positions = list(range(ngen))
    parent = [-1] * ngen
    parent_gen = [-1] * ngen
    rc_rows = []  # rc_rows[s][j] = s * gen_j
    i = 0
    while i < len(elements):
        row = []
        for j in gen_positions:
            p = multiply(elements[i], elements[j])
            k = key(p)
            t = index.get(k)
            if t is None:
                t = len(elements)
                if t >= cap:
                    raise ClosureCapExceeded(
                        "closure exceeded cap of %d elements" % cap)
                index[k] = t
                elements.append(p)
                parent.append(i)
                parent_gen.append(j)
            row.append(t)
        rc_rows.append(row)
        i += 1
    n = len(elements)
    rc = np.asarray(rc_rows, dtype=np.int32)
    table = np.empty((n, n), dtype=np.int32)
    for t in range(n):
        if t < ngen:
            table[:, t] = rc[:, t]
        else:
            # t = parent * g, so s*t = (s*parent)*g for every s
            table[:, t] = rc[table[:, parent[t]], parent_gen[t]]
    sg = Semigroup(table, gen_positions, parent, parent_gen,
                   audit_bound=audit_bound)
    return sg, seed_indices, elements


class MonoidView:
    """The monoid S^1: a fresh identity adjoined to a semigroup.

    The identity always gets index ``size - 1`` even when the semigroup
    already has a neutral element.
    """

    def __init__(self, semigroup: Semigroup):
        self.semigroup = semigroup
        self.one = semigroup.size

    @property
    def size(self):
        return self.semigroup.size + 1

    def mul(self, s, t):
        if s == self.one:
            return t
        if t == self.one:
            return s
        return int(self.semigroup.table[s, t])
