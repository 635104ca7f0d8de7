"""Syntactic morphisms: minimizing a strong recognizer.

Given a conjugation-closed accepting set P over h: A+ -> S, the maximal set
Q with [Q] = [P] is Q = {(s, t) : (s f, f) in P where f is the idempotent
power of t}.  The syntactic congruence is the coarsest congruence refining
the relation that identifies elements with equal Q-rows and Q-columns; it is
computed by partition refinement with the smaller-half strategy.  The
quotient morphism is the syntactic morphism of [P].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .conjugacy import close_under_conjugation, is_conjugation_closed
from .errors import NotClosed
from .morphism import Morphism, PairSet, Recognizer, linked_pairs
from .semigroup import Semigroup, close_generators


def maximal_pair_set(morphism: Morphism, accepting: PairSet, *,
                     audit=False) -> PairSet:
    """The maximal Q in S x S with [Q] = [P]; P must be conjugation-closed."""
    if audit and not is_conjugation_closed(morphism, accepting):
        raise NotClosed("accepting set is not closed under conjugation")
    sg = morphism.semigroup
    n = sg.size
    table = sg.table
    pbits = accepting.bits
    q = np.zeros((n, n), dtype=bool)
    fpow = np.fromiter((sg.idempotent_power(t) for t in range(n)),
                       dtype=np.int32, count=n)
    for t in range(n):
        f = int(fpow[t])
        q[:, t] = pbits[table[:, f], f]
    return PairSet(q)


class RefinablePartition:
    """Partition of {0..n-1} supporting Split with the smaller-half rule.

    Elements of one class occupy a contiguous segment of ``elems``.  ``Split``
    separates each touched class into members/non-members of X; classes
    currently on the worklist are replaced by both halves, otherwise the
    smaller half is enqueued.
    """

    def __init__(self, class_of):
        class_of = np.asarray(class_of)
        n = len(class_of)
        order = np.argsort(class_of, kind="stable")
        self.elems = order.astype(np.int64)
        self.pos = np.empty(n, dtype=np.int64)
        self.pos[self.elems] = np.arange(n)
        self.class_of = class_of.astype(np.int64)
        self.first = []
        self.size = []
        start = 0
        labels = class_of[self.elems]
        for i in range(1, n + 1):
            if i == n or labels[i] != labels[i - 1]:
                cid = len(self.first)
                self.first.append(start)
                self.size.append(i - start)
                self.class_of[self.elems[start:i]] = cid
                start = i
        self.marked = [0] * len(self.first)  # marked prefix length per class
        self.in_worklist = [False] * len(self.first)
        self.worklist = []
        self.split_work = 0
        # enqueue everything except one largest class: stability against
        # all other classes implies stability against the remaining one,
        # and every enqueued set has at most n/2 elements, which keeps the
        # total Split work within 2|A| n log n
        if len(self.first) > 1:
            skip = max(range(len(self.first)), key=lambda c: self.size[c])
            for cid in range(len(self.first)):
                if cid != skip:
                    self._enqueue(cid)

    def _enqueue(self, cid):
        if not self.in_worklist[cid]:
            self.in_worklist[cid] = True
            self.worklist.append(cid)

    def pop(self):
        cid = self.worklist.pop()
        self.in_worklist[cid] = False
        return cid

    def members(self, cid):
        f = self.first[cid]
        return self.elems[f:f + self.size[cid]]

    def split(self, xs):
        """Refine every class against the element set ``xs``."""
        self.split_work += len(xs)
        touched = []
        for x in xs:
            cid = int(self.class_of[x])
            m = self.marked[cid]
            p = int(self.pos[x])
            if p < self.first[cid] + m:
                continue  # already marked
            if m == 0:
                touched.append(cid)
            # swap x into the marked prefix
            tgt = self.first[cid] + m
            other = self.elems[tgt]
            self.elems[tgt], self.elems[p] = x, other
            self.pos[x], self.pos[other] = tgt, p
            self.marked[cid] = m + 1
        for cid in touched:
            m = self.marked[cid]
            self.marked[cid] = 0
            if m == self.size[cid]:
                continue  # no proper split
            # carve the marked prefix off as a new class
            new = len(self.first)
            self.first.append(self.first[cid])
            self.size.append(m)
            self.first[cid] += m
            self.size[cid] -= m
            self.class_of[self.elems[self.first[new]:self.first[new] + m]] = new
            self.marked.append(0)
            self.in_worklist.append(False)
            if self.in_worklist[cid]:
                self._enqueue(new)
            else:
                smaller = new if m <= self.size[cid] else cid
                self._enqueue(smaller)

    def n_classes(self):
        return len(self.first)


@dataclass
class SyntacticResult:
    recognizer: Recognizer        # minimized, mode 'strong'
    projection: np.ndarray        # old element -> new element
    maximal: PairSet              # maximal pair set over the input morphism
    split_work: int               # elements touched by while-loop Splits
    n_initial_classes: int


def _group_rows(bits: np.ndarray) -> np.ndarray:
    """Ids of identical rows; hashing beats lexicographic row sorting."""
    packed = np.packbits(bits, axis=1)
    ids = np.empty(bits.shape[0], dtype=np.int64)
    seen = {}
    for i, row in enumerate(packed):
        ids[i] = seen.setdefault(row.tobytes(), len(seen))
    return ids


def initial_partition(q: PairSet):
    """Class ids of the row/column-signature relation of Q (vectorized)."""
    bits = q.bits
    row_ids = _group_rows(bits)
    col_ids = _group_rows(np.ascontiguousarray(bits.T))
    _, class_of = np.unique(row_ids * (col_ids.max() + 1) + col_ids,
                            return_inverse=True)
    return class_of


def syntactic_morphism(rec: Recognizer, *, audit=False) -> SyntacticResult:
    """Minimize a recognizer onto the syntactic morphism of [P].

    Weak-mode input is first closed under conjugation, which preserves [P]
    only when P strongly recognizes [P]; callers minimizing weak recognizers
    must know the closure is language-preserving (as in this library's
    pipeline, where every constructed accepting set is conjugation-closed).
    """
    morphism = rec.morphism
    sg = morphism.semigroup
    n = sg.size
    closed = close_under_conjugation(morphism, rec.accepting)
    q = maximal_pair_set(morphism, closed)
    part = RefinablePartition(initial_partition(q))
    part.split_work = 0  # count only while-loop work
    table = sg.table
    images = sorted(set(morphism.images))
    # preimage lists under right/left multiplication by each letter image
    right_pre = []
    left_pre = []
    for x in images:
        rp = [[] for _ in range(n)]
        for s in range(n):
            rp[int(table[s, x])].append(s)
        right_pre.append(rp)
        lp_ = [[] for _ in range(n)]
        for s in range(n):
            lp_[int(table[x, s])].append(s)
        left_pre.append(lp_)
    while part.worklist:
        cid = part.pop()
        members = [int(t) for t in part.members(cid)]
        for ai in range(len(images)):
            pre = []
            for t in members:
                pre.extend(right_pre[ai][t])
            part.split(pre)
            pre = []
            for t in members:
                pre.extend(left_pre[ai][t])
            part.split(pre)
    # quotient under the stable partition, renumbered by BFS from the
    # letter images so that equal inputs yield identical element numbering
    class_of = part.class_of
    reps = {}
    for s in range(n):
        reps.setdefault(int(class_of[s]), s)
    old_ids = sorted(reps)
    tmp_index = {cid: i for i, cid in enumerate(old_ids)}
    m = len(old_ids)
    tmp_of = np.fromiter((tmp_index[int(class_of[s])] for s in range(n)),
                         dtype=np.int64, count=n)
    rep_arr = np.fromiter((reps[cid] for cid in old_ids), dtype=np.int64,
                          count=m)
    tmp_table = tmp_of[table[np.ix_(rep_arr, rep_arr)]]
    tmp_images = [int(tmp_of[x]) for x in morphism.images]
    # canonical BFS renumbering
    renum = np.full(m, -1, dtype=np.int64)
    order = []
    for g in tmp_images:
        if renum[g] < 0:
            renum[g] = len(order)
            order.append(g)
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for g in tmp_images:
            t = int(tmp_table[s, g])
            if renum[t] < 0:
                renum[t] = len(order)
                order.append(t)
    if len(order) != m:
        raise NotClosed("quotient is not generated by the letter images")
    new_table = renum[tmp_table[np.ix_(order, order)]]
    new_images = [int(renum[x]) for x in tmp_images]
    quotient = Semigroup(new_table, _dedup(new_images))
    new_morphism = Morphism(morphism.alphabet, quotient, new_images)
    projection = renum[tmp_of].astype(np.int64)
    new_bits = np.zeros((m, m), dtype=bool)
    rows, cols = np.nonzero(closed.bits)
    new_bits[projection[rows], projection[cols]] = True
    accepting = PairSet(new_bits)
    if audit:
        # congruence well-definedness: the quotient table must not depend on
        # the choice of representatives
        if not np.array_equal(projection[table],
                              new_table[projection][:, projection]):
            raise NotClosed("refinement did not produce a congruence")
        if not is_conjugation_closed(new_morphism, accepting):
            raise NotClosed("projected accepting set is not closed")
    result = Recognizer(new_morphism, accepting, "strong")
    return SyntacticResult(result, projection, q, part.split_work,
                           int(initial_partition(q).max()) + 1)


def _dedup(xs):
    out = []
    for x in xs:
        if x not in out:
            out.append(x)
    return out


def minimize(rec: Recognizer, *, audit=False) -> Recognizer:
    """The syntactic recognizer of [P]; always language-preserving.

    A weak accepting set that does not strongly recognize its language is
    first re-recognized strongly (via the automaton round trip), since the
    conjugation closure inside ``syntactic_morphism`` would otherwise grow
    the language.
    """
    if rec.mode == "weak":
        from .inclusion import is_strong
        if not is_strong(rec.morphism, rec.accepting).included:
            from .buchi import weak_to_strong
            rec = weak_to_strong(rec)
    return syntactic_morphism(rec, audit=audit).recognizer


# -- adversarial fixture ------------------------------------------------------
#
# A worst-case family for the conjugacy and refinement algorithms: a
# two-generator semigroup T(n) of size n^2 2^n + n whose linked pairs split
# into exponentially many classes, doubled into a four-letter morphism with
# n^2 2^n-scale element count and 2^(n-1) pairwise non-conjugate linked pairs
# in the designated set.


def _t_multiply(n):
    """Product on T(n) = Z_n  union  Z_n x 2^Z_n x Z_n (subsets as bitmasks)."""

    def mul(u, v):
        if isinstance(u, int) and isinstance(v, int):
            return (u + v) % n
        if isinstance(u, int):
            i, x, j = v
            return ((u + i) % n, x, j)
        if isinstance(v, int):
            i, x, j = u
            return (i, x, (j + v) % n)
        i, x, j = u
        k, y, m = v
        return (i, x | (1 << ((j + k) % n)) | y, m)

    return mul


def t_semigroup_values(n):
    """Generator values of T(n): the integer 1 and the triple (0, {}, 0)."""
    return [1, (0, 0, 0)]


def adversarial_fixture(n):
    """The four-letter morphism and designated pair set for parameter n.

    Elements are pairs (u, v) where u is in T-bar^1 and v in T^1, at most one
    of them trivial; identities are encoded as None.  The designated pairs
    ((t-bar, 1), (1-bar, e)) for e = (0, X, 0) with 0 in X are linked and
    pairwise non-conjugate.
    """
    tmul = _t_multiply(n)

    def smul(u, v):
        ub, up = u
        vb, vp = v
        if ub is None and vb is None:
            return (None, tmul(up, vp))
        # otherwise branch: bar components multiply, plain parts are dropped
        if ub is None:
            bar = vb
        elif vb is None:
            bar = ub
        else:
            bar = tmul(ub, vb)
        return (bar, None)

    values = [(None, 1), (None, (0, 0, 0)), (1, None), ((0, 0, 0), None)]
    alphabet = ("a", "b", "A", "B")
    sg, seeds, elements = close_generators(values, smul, audit_bound=0)
    index = {v: i for i, v in enumerate(elements)}
    pairs = []
    half = [x for x in range(1 << n) if x & 1]  # subsets containing 0
    for i, v in enumerate(elements):
        if v[1] is None:  # (t-bar, 1)
            for x in half:
                e = index.get((None, (0, x, 0)))
                if e is not None:
                    pairs.append((i, e))
    p_set = PairSet.from_pairs(sg.size, sorted(pairs))
    fixture_morphism = Morphism(alphabet, sg, seeds)
    return fixture_morphism, p_set
