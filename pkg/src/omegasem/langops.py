"""Boolean operations and alphabet maps on recognized languages.

All operations work on strong recognizers (weak inputs are upgraded first)
and return minimized strong recognizers.  Complementation flips the maximal
accepting pair set; union and intersection go through a product morphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .errors import AlphabetMismatch, UnknownLetter
from .morphism import Morphism, PairSet, Recognizer, linked_pairs
from .semigroup import close_generators
from .syntactic import maximal_pair_set, minimize


def _strong(rec: Recognizer) -> Recognizer:
    if rec.mode == "strong":
        return rec
    from .buchi import weak_to_strong
    return weak_to_strong(rec)


def complement(rec: Recognizer, *, audit=False) -> Recognizer:
    """A minimized recognizer of the complement language."""
    rec = _strong(rec)
    full = maximal_pair_set(rec.morphism, rec.accepting)
    lp = linked_pairs(rec.morphism.semigroup)
    comp = Recognizer(rec.morphism, lp - full, "strong")
    return minimize(comp, audit=audit)


def _product(r1: Recognizer, r2: Recognizer):
    """Morphism into the subsemigroup of S1 x S2 generated by the letters."""
    if r1.morphism.alphabet != r2.morphism.alphabet:
        raise AlphabetMismatch("operands use different alphabets")
    t1 = r1.morphism.semigroup.table
    t2 = r2.morphism.semigroup.table

    def mul(a, b):
        return (int(t1[a[0], b[0]]), int(t2[a[1], b[1]]))

    values = [(int(x), int(y))
              for x, y in zip(r1.morphism.images, r2.morphism.images)]
    sg, seeds, elements = close_generators(values, mul, audit_bound=0)
    return Morphism(r1.morphism.alphabet, sg, seeds), elements


def _combine(r1, r2, keep) -> Recognizer:
    """Product recognizer whose pairs satisfy ``keep(in_P1, in_P2)``."""
    r1, r2 = _strong(r1), _strong(r2)
    h, elements = _product(r1, r2)
    f1 = maximal_pair_set(r1.morphism, r1.accepting)
    f2 = maximal_pair_set(r2.morphism, r2.accepting)
    lp = linked_pairs(h.semigroup)
    bits = np.zeros((h.semigroup.size, h.semigroup.size), dtype=bool)
    for (s, e) in lp.pairs():
        (s1, s2), (e1, e2) = elements[s], elements[e]
        if keep((s1, e1) in f1, (s2, e2) in f2):
            bits[s, e] = True
    return Recognizer(h, PairSet(bits), "strong")


def language_included(r1: Recognizer, r2: Recognizer):
    """Decide L(r1) subseteq L(r2) for recognizers over the same alphabet.

    Unlike ``included`` the two recognizers may use different morphisms:
    both accepting sets are transported onto the product morphism first.
    """
    from .inclusion import included, inclusion_test
    if r1.morphism.same_as(r2.morphism):
        return included(r1, r2)
    r1, r2 = _strong(r1), _strong(r2)
    h, elements = _product(r1, r2)
    f1 = maximal_pair_set(r1.morphism, r1.accepting)
    f2 = maximal_pair_set(r2.morphism, r2.accepting)
    lp = linked_pairs(h.semigroup)
    n = h.semigroup.size
    p1 = np.zeros((n, n), dtype=bool)
    p2 = np.zeros((n, n), dtype=bool)
    for (s, e) in lp.pairs():
        (s1, s2), (e1, e2) = elements[s], elements[e]
        p1[s, e] = (s1, e1) in f1
        p2[s, e] = (s2, e2) in f2
    return inclusion_test(h, PairSet(p1), PairSet(p2), _lp=lp)


def language_equivalent(r1: Recognizer, r2: Recognizer):
    """Decide L(r1) = L(r2); returns (equal, witness in the difference)."""
    fwd = language_included(r1, r2)
    if not fwd.included:
        return False, fwd.witness
    bwd = language_included(r2, r1)
    if not bwd.included:
        return False, bwd.witness
    return True, None


def union(r1: Recognizer, r2: Recognizer, *, audit=False) -> Recognizer:
    return minimize(_combine(r1, r2, lambda a, b: a or b), audit=audit)


def intersect(r1: Recognizer, r2: Recognizer, *, audit=False) -> Recognizer:
    return minimize(_combine(r1, r2, lambda a, b: a and b), audit=audit)


@dataclass(frozen=True)
class LetterMap:
    """A map between alphabets, applied letterwise to infinite words."""

    source: Tuple[str, ...]
    target: Tuple[str, ...]
    mapping: Dict[str, str]

    def __post_init__(self):
        for a in self.source:
            if a not in self.mapping:
                raise UnknownLetter("no image for letter %r" % (a,))
            if self.mapping[a] not in self.target:
                raise UnknownLetter(
                    "image %r of %r not in target alphabet"
                    % (self.mapping[a], a))

    def fibers(self):
        out = {b: [] for b in self.target}
        for a in self.source:
            out[self.mapping[a]].append(a)
        return out


def project(rec: Recognizer, lmap: LetterMap, *, audit=False) -> Recognizer:
    """Recognizer of the image language under a letter map.

    Uses the powerset semigroup: the image-language morphism sends each
    target letter to the set of values of its preimage letters, and only
    subsets reachable from those generators are materialized.  A linked
    pair of subsets (X, E) is accepting iff some accepting pair (t, f) of
    the original recognizer has t in X and f in E.
    """
    rec = _strong(rec)
    if lmap.source != rec.morphism.alphabet:
        raise AlphabetMismatch("letter map source does not match recognizer")
    h = rec.morphism
    table = h.semigroup.table
    idx = {a: i for i, a in enumerate(h.alphabet)}
    fibers = lmap.fibers()
    values = []
    for b in lmap.target:
        if not fibers[b]:
            raise UnknownLetter("target letter %r has no preimage" % (b,))
        values.append(tuple(sorted({int(h.images[idx[a]])
                                    for a in fibers[b]})))

    def mul(x, y):
        return tuple(np.unique(table[np.ix_(x, y)]).tolist())

    sg, seeds, elements = close_generators(values, mul, audit_bound=0)
    new_h = Morphism(tuple(lmap.target), sg, seeds)
    full = maximal_pair_set(h, rec.accepting)
    pbits = full.bits
    lp = linked_pairs(sg)
    bits = np.zeros((sg.size, sg.size), dtype=bool)
    for (s, e) in lp.pairs():
        xs, es = elements[s], elements[e]
        if pbits[np.ix_(xs, es)].any():
            bits[s, e] = True
    out = Recognizer(new_h, PairSet(bits), "strong")
    return minimize(out, audit=audit)


def inverse_project(rec: Recognizer, lmap: LetterMap, *, audit=False) -> Recognizer:
    """Recognizer of the preimage language: pull letters back along the map.

    The morphism just composes the letter map with the original images, so
    preimages need no automaton detour.
    """
    rec = _strong(rec)
    if lmap.target != rec.morphism.alphabet:
        raise AlphabetMismatch("letter map target does not match recognizer")
    h = rec.morphism
    idx = {a: i for i, a in enumerate(h.alphabet)}
    values = [int(h.images[idx[lmap.mapping[a]]]) for a in lmap.source]
    table = h.semigroup.table
    # restrict to the subsemigroup generated by the pulled-back letters:
    # the map need not be surjective, and unreachable elements have empty
    # preimage under the new morphism
    sg, seeds, elements = close_generators(
        values, lambda a, b: int(table[a, b]), audit_bound=0)
    new_h = Morphism(tuple(lmap.source), sg, seeds)
    full = maximal_pair_set(h, rec.accepting)
    lp = linked_pairs(sg)
    bits = np.zeros((sg.size, sg.size), dtype=bool)
    for (s, e) in lp.pairs():
        if (elements[s], elements[e]) in full:
            bits[s, e] = True
    out = Recognizer(new_h, PairSet(bits), "strong")
    return minimize(out, audit=audit)
