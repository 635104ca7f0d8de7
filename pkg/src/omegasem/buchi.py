"""Conversions between Büchi automata and recognizing morphisms.

Büchi -> morphism: map each word to its transition matrix over {0, 1, 2}
(0: no path, 1: path, 2: path through a final state); the matrices of the
letters generate a finite semigroup, and the accepting linked pairs are read
off directly.  The resulting accepting set is conjugation-closed.

Morphism -> Büchi: the transition-profile automaton with states (s, e) in
S^1 x E(S), which guesses the linked pair of a run and consumes the
prefix component.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .errors import AlphabetMismatch
from .morphism import Morphism, PairSet, Recognizer, UPWord, linked_pairs
from .semigroup import close_generators


@dataclass
class BuchiAutomaton:
    """A nondeterministic Büchi automaton with dense transition matrices."""

    n_states: int
    alphabet: Tuple[str, ...]
    edges: Dict[str, np.ndarray]  # letter -> boolean (n, n) matrix
    initial: np.ndarray           # boolean vector
    final: np.ndarray             # boolean vector

    @classmethod
    def from_triples(cls, n_states, alphabet, transitions, initial, final):
        alphabet = tuple(alphabet)
        edges = {a: np.zeros((n_states, n_states), dtype=bool)
                 for a in alphabet}
        for (p, a, q) in transitions:
            if a not in edges:
                raise AlphabetMismatch("transition letter %r unknown" % (a,))
            edges[a][p, q] = True
        ini = np.zeros(n_states, dtype=bool)
        fin = np.zeros(n_states, dtype=bool)
        for p in initial:
            ini[p] = True
        for p in final:
            fin[p] = True
        return cls(n_states, alphabet, edges, ini, fin)

    def letter_matrix(self, a):
        """The {0,1,2} transition profile of a single letter."""
        m = self.edges[a].astype(np.int8)
        fin = self.final
        two = m & (fin[:, None] | fin[None, :])
        return np.where(two, np.int8(2), m)


def _profile_mul(m, n):
    """Product of transition profiles over {0, 1, 2}.

    The boolean matmuls go through float32 so they hit BLAS; on profile
    semigroups with thousands of elements this multiply dominates.
    """
    a = (m >= 1).astype(np.float32)
    b = (n >= 1).astype(np.float32)
    exist = (a @ b) > 0
    two = (((m == 2).astype(np.float32) @ b) > 0) \
        | ((a @ (n == 2).astype(np.float32)) > 0)
    return (exist.astype(np.int8) + two.astype(np.int8))


def buchi_to_strong(aut: BuchiAutomaton, *, cap=None, audit_bound=0,
                    restrict_initial=True) -> Recognizer:
    """A strong recognizer of L(aut) over the transition-profile semigroup.

    When ``restrict_initial`` is true (the default, and the correct
    semantics), a linked pair (s, e) is accepting iff some run starting in
    an initial state follows s and then loops on e through a final state.
    """
    values = [aut.letter_matrix(a) for a in aut.alphabet]
    kwargs = {} if cap is None else {"cap": cap}
    sg, seeds, elements = close_generators(
        values, _profile_mul, key=lambda v: v.tobytes(),
        audit_bound=audit_bound, **kwargs)
    morphism = Morphism(aut.alphabet, sg, seeds)
    rows = aut.initial if restrict_initial else np.ones(aut.n_states, bool)
    bits = np.zeros((sg.size, sg.size), dtype=bool)
    lp = linked_pairs(sg)
    for (s, e) in lp.pairs():
        r, em = elements[s], elements[e]
        loops = np.diagonal(em) == 2
        if np.any((r[rows, :] >= 1) & loops[None, :]):
            bits[s, e] = True
    return Recognizer(morphism, PairSet(bits), "strong")


def morphism_to_buchi(rec: Recognizer) -> BuchiAutomaton:
    """A Büchi automaton for [P]; states are pairs (s, e), s in S^1, e in E."""
    h = rec.morphism
    sg = h.semigroup
    one = sg.size
    idems = [int(e) for e in np.nonzero(sg.idempotents)[0]]
    states = {}
    for e in idems:
        for s in list(range(sg.size)) + [one]:
            states[(s, e)] = len(states)

    def mul1(a, b):
        if a == one:
            return b
        if b == one:
            return a
        return int(sg.table[a, b])

    transitions = []
    for (s, e), i in states.items():
        se = mul1(s, e)
        for ai, a in enumerate(h.alphabet):
            ha = h.images[ai]
            for t in list(range(sg.size)) + [one]:
                hat = mul1(ha, t)
                if hat == s or hat == se:
                    transitions.append((i, a, states[(t, e)]))
    initial = [states[(s, e)] for (s, e) in rec.accepting.pairs()]
    final = [states[(one, e)] for e in idems]
    aut = BuchiAutomaton.from_triples(len(states), h.alphabet, transitions,
                                      initial, final)
    return _trim(aut)


def _trim(aut: BuchiAutomaton) -> BuchiAutomaton:
    """Restrict to states reachable from initial and co-reachable to final."""
    n = aut.n_states
    any_edge = np.zeros((n, n), dtype=bool)
    for m in aut.edges.values():
        any_edge |= m
    fwd = aut.initial.copy()
    while True:
        nxt = fwd | np.any(any_edge[fwd], axis=0)
        if np.array_equal(nxt, fwd):
            break
        fwd = nxt
    bwd = aut.final.copy()
    while True:
        nxt = bwd | np.any(any_edge[:, bwd], axis=1)
        if np.array_equal(nxt, bwd):
            break
        bwd = nxt
    keep = np.nonzero(fwd & bwd)[0]
    if len(keep) == n:
        return aut
    remap = -np.ones(n, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    edges = {a: m[np.ix_(keep, keep)] for a, m in aut.edges.items()}
    return BuchiAutomaton(len(keep), aut.alphabet, edges,
                          aut.initial[keep], aut.final[keep])


def buchi_accepts_lasso(aut: BuchiAutomaton, word: UPWord) -> bool:
    """Graph-search oracle: does the automaton accept prefix . period^omega?

    Runs over the product of the state set with period positions; the word
    is accepted iff some cycle through a final state is reachable.  This is
    deliberately independent of the matrix construction.
    """
    n = aut.n_states
    ln = len(word.period)
    frontier = aut.initial.copy()
    for a in word.prefix:
        frontier = np.any(aut.edges[a][frontier], axis=0)
    if not frontier.any():
        return False
    # product graph nodes: (state, position in period)
    seen = np.zeros((n, ln), dtype=bool)
    seen[:, 0] = frontier
    stack = [(int(q), 0) for q in np.nonzero(frontier)[0]]
    while stack:
        q, i = stack.pop()
        row = aut.edges[word.period[i]][q]
        j = (i + 1) % ln
        for t in np.nonzero(row)[0]:
            if not seen[t, j]:
                seen[t, j] = True
                stack.append((int(t), j))
    # Tarjan-free cycle detection: iterate within the reached subgraph,
    # looking for a final node that can reach itself
    reach_nodes = list(zip(*np.nonzero(seen)))
    for (q, i) in reach_nodes:
        if not aut.final[q]:
            continue
        # search from (q, i); accepted iff we come back to (q, i)
        vis = np.zeros((n, ln), dtype=bool)
        stack2 = [(int(q), int(i))]
        while stack2:
            p, j = stack2.pop()
            row = aut.edges[word.period[j]][p]
            k = (j + 1) % ln
            for t in np.nonzero(row)[0]:
                if (int(t), k) == (int(q), int(i)):
                    return True
                if not vis[t, k] and seen[t, k]:
                    vis[t, k] = True
                    stack2.append((int(t), k))
    return False


def weak_to_strong(rec: Recognizer) -> Recognizer:
    """Convert any recognizer to a strong one for the same language."""
    if rec.mode == "strong":
        return rec
    return buchi_to_strong(morphism_to_buchi(rec))
