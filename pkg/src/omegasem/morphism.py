"""Morphisms onto finite semigroups and the recognizers built from them.

A recognizer is a surjective morphism h from nonempty words onto a finite
semigroup together with an accepting set P of linked pairs.  It denotes the
omega-language  [P] = union over (s, e) in P of h^-1(s) (h^-1(e))^omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import (EmptyPeriod, MorphismMismatch, NotLinkedPair,
                     UnknownLetter)
from .semigroup import (DEFAULT_AUDIT_BOUND, DEFAULT_CAP, Semigroup,
                        close_generators)


@dataclass(frozen=True)
class UPWord:
    """An ultimately periodic word ``prefix . period^omega``."""

    prefix: Tuple[str, ...]
    period: Tuple[str, ...]

    def __post_init__(self):
        if not self.period:
            raise EmptyPeriod("period must be nonempty")

    def __str__(self):
        sep = "" if all(len(a) == 1 for a in self.prefix + self.period) else " "
        return "%s(%s)^w" % (sep.join(self.prefix), sep.join(self.period))

    def letter_at(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]


class Morphism:
    """A surjective morphism from A+ onto a finite semigroup.

    ``images[i]`` is the element for letter ``alphabet[i]``.  Surjectivity
    holds by construction: the semigroup is generated by the letter images.
    """

    def __init__(self, alphabet: Sequence[str], semigroup: Semigroup,
                 images: Sequence[int]):
        self.alphabet = tuple(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letters in alphabet")
        self.semigroup = semigroup
        self.images = tuple(int(x) for x in images)
        if len(self.images) != len(self.alphabet):
            raise ValueError("one image per letter required")
        self._letter_index = {a: i for i, a in enumerate(self.alphabet)}
        # first letter mapping to each generator element, for witness words
        self._gen_letter = {}
        for a, s in zip(self.alphabet, self.images):
            self._gen_letter.setdefault(s, a)

    @classmethod
    def generate(cls, alphabet: Sequence[str], values: Sequence, multiply,
                 *, key=None, cap=DEFAULT_CAP,
                 audit_bound=DEFAULT_AUDIT_BOUND):
        """Build a morphism by closing letter image values under a product."""
        sg, seeds, _ = close_generators(values, multiply, key=key, cap=cap,
                                        audit_bound=audit_bound)
        return cls(alphabet, sg, seeds)

    def image(self, letter):
        i = self._letter_index.get(letter)
        if i is None:
            raise UnknownLetter("letter %r not in alphabet" % (letter,))
        return self.images[i]

    def evaluate(self, word: Iterable[str]):
        """h(word) for a nonempty finite word."""
        s = None
        table = self.semigroup.table
        for a in word:
            x = self.image(a)
            s = x if s is None else int(table[s, x])
        if s is None:
            raise ValueError("cannot evaluate the empty word")
        return s

    def rep_word(self, s):
        """A shortest representative word (tuple of letters) with image s."""
        gens = self.semigroup.generators
        return tuple(self._gen_letter[gens[j]]
                     for j in self.semigroup.word_of(s))

    def same_as(self, other: "Morphism"):
        return (self.alphabet == other.alphabet
                and self.images == other.images
                and self.semigroup.size == other.semigroup.size
                and np.array_equal(self.semigroup.table,
                                   other.semigroup.table))


class PairSet:
    """A set of element pairs over a semigroup of size n, as an n x n bitmap."""

    def __init__(self, bits):
        self.bits = np.asarray(bits, dtype=bool)

    @classmethod
    def empty(cls, n):
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def from_pairs(cls, n, pairs):
        bits = np.zeros((n, n), dtype=bool)
        for s, e in pairs:
            bits[s, e] = True
        return cls(bits)

    def __contains__(self, pair):
        s, e = pair
        return bool(self.bits[s, e])

    def __len__(self):
        return int(self.bits.sum())

    def __eq__(self, other):
        return isinstance(other, PairSet) and np.array_equal(self.bits,
                                                             other.bits)

    def __or__(self, other):
        return PairSet(self.bits | other.bits)

    def __and__(self, other):
        return PairSet(self.bits & other.bits)

    def __sub__(self, other):
        return PairSet(self.bits & ~other.bits)

    def issubset(self, other):
        return bool(np.all(self.bits <= other.bits))

    def pairs(self):
        """Pairs in row-major order (deterministic)."""
        rows, cols = np.nonzero(self.bits)
        return [(int(s), int(e)) for s, e in zip(rows, cols)]


def linked_pairs(semigroup: Semigroup) -> PairSet:
    """All linked pairs (s, e): e idempotent, s * e = s.

    For each idempotent e the fixed points of right multiplication by e are
    exactly {e} together with S*e, i.e. the elements reachable from e in the
    left Cayley graph.
    """
    n = semigroup.size
    bits = np.zeros((n, n), dtype=bool)
    lc = semigroup.left_cayley
    for e in np.nonzero(semigroup.idempotents)[0]:
        stack = [int(e)]
        col = bits[:, e]
        col[e] = True
        while stack:
            s = stack.pop()
            for t in lc[s]:
                if not col[t]:
                    col[t] = True
                    stack.append(int(t))
    return PairSet(bits)


@dataclass
class Recognizer:
    """A morphism with an accepting set of linked pairs.

    ``mode`` is 'strong' when the accepting set is conjugation-closed, else
    'weak'.  Strong recognizers support complement and fast membership.
    """

    morphism: Morphism
    accepting: PairSet
    mode: str = "weak"

    def __post_init__(self):
        if self.mode not in ("weak", "strong"):
            raise ValueError("mode must be 'weak' or 'strong'")
        if not self.accepting.issubset(linked_pairs(self.morphism.semigroup)):
            raise NotLinkedPair("accepting set contains a non-linked pair")

    @property
    def alphabet(self):
        return self.morphism.alphabet

    def stats(self):
        sg = self.morphism.semigroup
        return {"size": sg.size,
                "linked_pairs": len(linked_pairs(sg)),
                "accepting": len(self.accepting)}


def universal_recognizer(morphism: Morphism) -> Recognizer:
    """The recognizer of A^omega over a given morphism (P = all linked pairs)."""
    return Recognizer(morphism, linked_pairs(morphism.semigroup), "strong")


def is_empty(rec: Recognizer) -> bool:
    """[P] is empty iff P is empty (every [s][e]^omega is nonempty)."""
    return len(rec.accepting) == 0


def member(rec: Recognizer, word: UPWord) -> bool:
    """Decide ``word in [P]``.

    Strong mode checks the single pair (h(u) f, f) with f the idempotent
    power of h(v).  Weak mode scans all factorizations v' = v1 v2 of an
    idempotent-normalized period, looking for (h(u' v1), h(v2 v' v1)) in P.
    """
    h = rec.morphism
    table = h.semigroup.table
    prefix, period = word.prefix, word.period
    if not prefix:
        # rotate one period into the prefix so that h(u) is defined
        prefix = period
    pe = [h.image(a) for a in period]
    hv = pe[0]
    for x in pe[1:]:
        hv = int(table[hv, x])
    f, m = h.semigroup.idempotent_power_exponent(hv)
    hu = h.evaluate(prefix)
    if rec.mode == "strong":
        return (int(table[hu, f]), f) in rec.accepting
    # weak: normalize to u' = u v^m, v' = v^m, then scan splits of v'
    vp = period * m
    n = len(vp)
    imgs = [h.image(a) for a in vp]
    # pref[i] = h(vp[:i]) for i >= 1; suf[i] = h(vp[i:]) for i < n
    pref = [0] * (n + 1)
    acc = None
    for i, x in enumerate(imgs):
        acc = x if acc is None else int(table[acc, x])
        pref[i + 1] = acc
    suf = [0] * (n + 1)
    acc = None
    for i in range(n - 1, -1, -1):
        acc = imgs[i] if acc is None else int(table[imgs[i], acc])
        suf[i] = acc
    bits = rec.accepting.bits
    hup = int(table[hu, f])  # h(u') = h(u v^m) = h(u) f
    for i in range(1, n + 1):  # v1 = vp[:i] nonempty
        s = int(table[hup, pref[i]])
        # e = h(v2) h(v') h(v1) with v2 = vp[i:] and h(v') = f
        if i == n:
            e = int(table[f, pref[i]])
        else:
            e = int(table[int(table[suf[i], f]), pref[i]])
        if bits[s, e]:
            return True
    return False


def check_same_morphism(r1: Recognizer, r2: Recognizer):
    if not r1.morphism.same_as(r2.morphism):
        raise MorphismMismatch("recognizers use different morphisms")
