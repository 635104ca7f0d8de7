"""MSO over infinite words, compiled to minimized strong recognizers.

Formulas use first-order position variables (lowercase names) and
second-order set variables (capitalized names).  Atoms are ``x < y``,
``y = x + 1`` and ``x in X``.  Connectives: ``!`` (also ``~``), ``&``,
``|``, ``->``.  Quantifiers: ``E x.`` / ``A x.`` (both orders), binding as
far to the right as possible.  Implication and universal quantification
are rewritten into the {not, and, or, exists} core at parse time.

Words over the free second-order variables V are encoded over the
alphabet 2^V: each letter is a bit string, character i giving membership
in the i-th variable of V in sorted order.  First-order variables are
compiled as second-order tracks constrained to hold at exactly one
position; the constraint is enforced both in the atom automata and again
when the variable is existentially quantified, so that it survives
complementation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from threading import Lock
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import numpy as np

from .buchi import BuchiAutomaton, buchi_to_strong
from .errors import MsoSyntaxError, UnknownVariable
from .inclusion import inclusion_test
from .langops import LetterMap, complement, intersect, inverse_project, \
    project, union
from .morphism import PairSet, Recognizer, UPWord, linked_pairs, member
from .syntactic import minimize


# ---------------------------------------------------------------------------
# abstract syntax


@dataclass(frozen=True)
class Less:
    x: str
    y: str


@dataclass(frozen=True)
class Succ:
    """y = x + 1"""
    x: str
    y: str


@dataclass(frozen=True)
class In:
    x: str
    X: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Less, Succ, In, Not, And, Or, Exists]


def is_second_order(name: str) -> bool:
    return name[0].isupper()


def free_vars(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, Less) or isinstance(phi, Succ):
        return frozenset((phi.x, phi.y))
    if isinstance(phi, In):
        return frozenset((phi.x, phi.X))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Exists):
        return free_vars(phi.body) - {phi.var}
    raise TypeError("not a formula: %r" % (phi,))


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"\s*(?:([A-Za-z_][A-Za-z0-9_]*|[0-9]+)|(->|[()<=+.!~&|])|(\S))")
_KEYWORDS = {"in", "E", "A", "not", "and", "or"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(3) is not None:
            raise MsoSyntaxError("unexpected character %r" % m.group(3),
                                 m.start(3))
        if m.group(1) is not None:
            tokens.append((m.group(1), m.start(1)))
        else:
            tokens.append((m.group(2), m.start(2)))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        if tok[0] is not None:  # never advance past the end sentinel
            self.i += 1
        return tok

    def variable(self):
        tok, pos = self.next()
        if tok is None or not tok[0].isalpha() or tok in _KEYWORDS:
            raise MsoSyntaxError("expected a variable, found %r" % (tok,),
                                 pos)
        return tok

    def expect(self, want):
        tok, pos = self.next()
        if tok != want:
            raise MsoSyntaxError("expected %r, found %r" % (want, tok), pos)
        return tok

    def fail(self, why):
        raise MsoSyntaxError(why, self.tokens[self.i][1])

    # formula := disjunction ('->' formula)?
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.next()
            right = self.formula()
            return Or(Not(left), right)
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.peek() in ("|", "or"):
            self.next()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.peek() in ("&", "and"):
            self.next()
            out = And(out, self.unary())
        return out

    def _quantifier(self):
        """Return (kind, var) if the upcoming tokens open a quantifier."""
        tok = self.peek()
        if tok is None or not tok[0].isalpha():
            return None
        if self.i + 1 >= len(self.tokens):
            return None
        nxt = self.tokens[self.i + 1][0]
        if tok in ("E", "A") and nxt is not None and nxt[0].isalpha() \
                and self.i + 2 < len(self.tokens) \
                and self.tokens[self.i + 2][0] == ".":
            return (tok, nxt, 3)
        # fused form: "Ex." / "AX1."
        if tok[0] in ("E", "A") and len(tok) > 1 and nxt == "." \
                and tok not in _KEYWORDS:
            return (tok[0], tok[1:], 2)
        return None

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in ("!", "~", "not"):
            self.next()
            return Not(self.unary())
        q = self._quantifier()
        if q is not None:
            kind, var, skip = q
            self.i += skip
            body = self.formula()
            if kind == "E":
                return Exists(var, body)
            return Not(Exists(var, Not(body)))
        if tok == "(":
            self.next()
            out = self.formula()
            self.expect(")")
            return out
        return self.atom()

    def atom(self) -> Formula:
        tok, pos = self.next()
        if tok is None or not tok[0].isalpha() or tok in _KEYWORDS:
            raise MsoSyntaxError("expected a variable, found %r" % (tok,),
                                 pos)
        op = self.peek()
        if op == "<":
            self.next()
            return Less(tok, self.variable())
        if op == "in":
            self.next()
            X, xpos = self.next()
            if X is None or not is_second_order(X):
                raise MsoSyntaxError(
                    "right side of 'in' must be a set variable", xpos)
            return In(tok, X)
        if op == "=":
            self.next()
            x = self.variable()
            self.expect("+")
            one, opos = self.next()
            if one != "1":
                raise MsoSyntaxError("only successor terms 'x + 1' are "
                                     "supported", opos)
            return Succ(x, tok)
        self.fail("expected '<', '=' or 'in' after variable %r" % (tok,))


def parse(text: str) -> Formula:
    p = _Parser(text)
    out = p.formula()
    tok, pos = p.tokens[p.i]
    if tok is not None:
        raise MsoSyntaxError("unexpected %r after formula" % (tok,), pos)
    return out


# ---------------------------------------------------------------------------
# alphabets over variable sets


def var_alphabet(variables) -> Tuple[str, ...]:
    """Letters 2^V as bit strings in binary order; V sorted by name."""
    vs = sorted(variables)
    n = len(vs)
    return tuple(format(m, "0%db" % n) if n else "-" for m in range(1 << n))


def _erasing_map(source_vars, target_vars) -> LetterMap:
    """Letter map 2^source -> 2^target dropping the extra tracks."""
    svs, tvs = sorted(source_vars), sorted(target_vars)
    keep = [svs.index(v) for v in tvs]
    src, tgt = var_alphabet(svs), var_alphabet(tvs)
    mapping = {}
    for a in src:
        mapping[a] = "".join(a[i] for i in keep) if keep else tgt[0]
    return LetterMap(src, tgt, mapping)


def _bit(letter: str, vs: List[str], v: str) -> int:
    return int(letter[vs.index(v)])


# ---------------------------------------------------------------------------
# atoms as small Büchi automata


def _atom_buchi(atom, variables) -> BuchiAutomaton:
    vs = sorted(variables)
    letters = var_alphabet(vs)
    if isinstance(atom, In):
        x, X = atom.x, atom.X
        trans = []
        for a in letters:
            if _bit(a, vs, x) == 0:
                trans += [(0, a, 0), (1, a, 1)]
            elif _bit(a, vs, X) == 1:
                trans.append((0, a, 1))
        return BuchiAutomaton.from_triples(2, letters, trans, [0], [1])
    if isinstance(atom, Less):
        x, y = atom.x, atom.y
        trans = []
        for a in letters:
            bx, by = _bit(a, vs, x), _bit(a, vs, y)
            if bx == 0 and by == 0:
                trans += [(0, a, 0), (1, a, 1), (2, a, 2)]
            elif bx == 1 and by == 0:
                trans.append((0, a, 1))
            elif bx == 0 and by == 1:
                trans.append((1, a, 2))
        return BuchiAutomaton.from_triples(3, letters, trans, [0], [2])
    if isinstance(atom, Succ):
        x, y = atom.x, atom.y
        trans = []
        for a in letters:
            bx, by = _bit(a, vs, x), _bit(a, vs, y)
            if bx == 0 and by == 0:
                trans += [(0, a, 0), (2, a, 2)]
            elif bx == 1 and by == 0:
                trans.append((0, a, 1))
            elif bx == 0 and by == 1:
                trans.append((1, a, 2))
        return BuchiAutomaton.from_triples(3, letters, trans, [0], [2])
    raise TypeError("not an atom: %r" % (atom,))


def _singleton_buchi(variables, v) -> BuchiAutomaton:
    """Words whose v-track holds at exactly one position."""
    vs = sorted(variables)
    letters = var_alphabet(vs)
    trans = []
    for a in letters:
        if _bit(a, vs, v) == 0:
            trans += [(0, a, 0), (1, a, 1)]
        else:
            trans.append((0, a, 1))
    return BuchiAutomaton.from_triples(2, letters, trans, [0], [1])


# ---------------------------------------------------------------------------
# compilation


@dataclass(frozen=True)
class CompileOptions:
    """Encoding knobs; the defaults give the standard MSO semantics."""

    restrict_initial: bool = True      # Büchi-to-morphism accepting rule
    singleton_at_exists: bool = True   # re-impose exactly-once at "E x."
    project_via_buchi: bool = False    # track erasure through an automaton
    audit: bool = False


class Compiler:
    """Bottom-up compiler with memoization of identical subproblems."""

    def __init__(self, options: CompileOptions = CompileOptions()):
        self.options = options
        self._memo: Dict[tuple, Tuple[Recognizer, tuple]] = {}
        self._lock = Lock()

    def _mini(self, rec: Recognizer) -> Recognizer:
        return minimize(rec, audit=self.options.audit)

    def atomic(self, atom, variables) -> Recognizer:
        for v in free_vars(atom):
            if v not in variables:
                raise UnknownVariable("variable %r not in scope" % (v,))
        aut = _atom_buchi(atom, variables)
        rec = buchi_to_strong(
            aut, restrict_initial=self.options.restrict_initial)
        return self._mini(rec)

    def singleton(self, variables, v) -> Recognizer:
        aut = _singleton_buchi(variables, v)
        rec = buchi_to_strong(
            aut, restrict_initial=self.options.restrict_initial)
        return self._mini(rec)

    def _project(self, rec: Recognizer, lmap: LetterMap) -> Recognizer:
        if not self.options.project_via_buchi:
            return project(rec, lmap, audit=self.options.audit)
        # alternative route: convert to a Büchi automaton, relabel its
        # edges along the letter map, and convert back
        from .buchi import morphism_to_buchi
        aut = morphism_to_buchi(rec)
        n = aut.n_states
        edges = {b: np.zeros((n, n), dtype=bool) for b in lmap.target}
        for a, m in aut.edges.items():
            edges[lmap.mapping[a]] |= m
        out = BuchiAutomaton(n, tuple(lmap.target), edges, aut.initial,
                             aut.final)
        return self._mini(buchi_to_strong(
            out, restrict_initial=self.options.restrict_initial))

    def _align(self, rec: Recognizer, have, want) -> Recognizer:
        if set(have) == set(want):
            return rec
        return inverse_project(rec, _erasing_map(want, have),
                               audit=self.options.audit)

    def compile(self, phi: Formula) -> Recognizer:
        rec, fv = self._go(phi)
        return rec

    def _go(self, phi: Formula):
        key = phi
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._build(phi)
        with self._lock:
            self._memo[key] = out
        return out

    def _build(self, phi: Formula):
        fv = tuple(sorted(free_vars(phi)))
        if isinstance(phi, (Less, Succ, In)):
            return self.atomic(phi, fv), fv
        if isinstance(phi, Not):
            sub, sfv = self._go(phi.body)
            return complement(sub, audit=self.options.audit), sfv
        if isinstance(phi, (And, Or)):
            l, lfv = self._go(phi.left)
            r, rfv = self._go(phi.right)
            both = tuple(sorted(set(lfv) | set(rfv)))
            l = self._align(l, lfv, both)
            r = self._align(r, rfv, both)
            op = intersect if isinstance(phi, And) else union
            return op(l, r, audit=self.options.audit), both
        if isinstance(phi, Exists):
            sub, sfv = self._go(phi.body)
            if phi.var not in sfv:
                return sub, sfv
            if self.options.singleton_at_exists \
                    and not is_second_order(phi.var):
                sub = intersect(sub, self.singleton(sfv, phi.var),
                                audit=self.options.audit)
            rest = tuple(v for v in sfv if v != phi.var)
            out = self._project(sub, _erasing_map(sfv, rest))
            return out, rest
        raise TypeError("not a formula: %r" % (phi,))


def compile_formula(phi, options: CompileOptions = CompileOptions()):
    """Compile a formula (or its source text) to a minimized recognizer."""
    if isinstance(phi, str):
        phi = parse(phi)
    return Compiler(options).compile(phi)


def recognizer_stats(rec: Recognizer):
    """(|S|, |F|, |P|) of a recognizer, as reported by the experiments."""
    s = rec.stats()
    return (s["size"], s["linked_pairs"], s["accepting"])


# ---------------------------------------------------------------------------
# the three benchmark formula families


def phi_formula(k: int) -> Formula:
    """All of X_1, ..., X_k are hit infinitely often."""
    parts = " & ".join("E y. (x < y & y in X%d)" % i for i in range(1, k + 1))
    return parse("A x. (%s)" % parts)


def psi_formula(k: int) -> Formula:
    """Membership shifts cyclically: x in X_i implies x+1 in X_{i+1}."""
    parts = " & ".join(
        "(x in X%d -> y in X%d)" % (i, i % k + 1) for i in range(1, k + 1))
    return parse("A x. A y. (y = x + 1) -> (%s)" % parts)


def chi_formula(k: int) -> Formula:
    """Every X_i position is followed by an X_{i-1} or X_{i+1} position."""
    parts = " & ".join(
        "(x in X%d -> E y. (x < y & (y in X%d | y in X%d)))"
        % (i, (i - 2) % k + 1, i % k + 1) for i in range(1, k + 1))
    return parse("A x. (%s)" % parts)


FAMILIES = {"phi": phi_formula, "psi": psi_formula, "chi": chi_formula}


def table_row(k: int, options: CompileOptions = CompileOptions()):
    """The (|S|, |F|, |P|) triples for phi_k, psi_k, chi_k."""
    return {name: recognizer_stats(compile_formula(fam(k), options))
            for name, fam in FAMILIES.items()}


# ---------------------------------------------------------------------------
# direct evaluation on ultimately periodic words (test oracle)


def evaluate(phi: Formula, word: UPWord, horizon: Optional[int] = None,
             assignment: Optional[Dict[str, int]] = None) -> bool:
    """Decide a formula directly on an ultimately periodic word.

    The word is over the alphabet 2^V (bit-string letters) for V = the
    sorted free second-order variables of the formula.  First-order
    quantifiers range over positions < horizon; on an ultimately periodic
    structure, positions beyond ``|prefix| + |period| * c`` repeat the
    behaviour of earlier ones once c exceeds the number of distinct
    configurations, so a sufficiently large horizon is exact.  Each nested
    quantifier additionally ranges a few period blocks further than the
    one enclosing it: a witness for an inner quantifier may lie just past
    the bound of an outer one (e.g. the y in "every x has a later y"), but
    by periodicity never more than 2^depth periods past the positions
    already fixed.

    Second-order quantification is not supported (the test generator only
    emits first-order quantifiers).
    """
    if assignment is None:
        assignment = {}
    so_vars = sorted(v for v in free_vars(phi) if is_second_order(v))
    if horizon is None:
        horizon = len(word.prefix) + len(word.period) * 8

    def qdepth(f):
        if isinstance(f, (Less, Succ, In)):
            return 0
        if isinstance(f, Not):
            return qdepth(f.body)
        if isinstance(f, (And, Or)):
            return max(qdepth(f.left), qdepth(f.right))
        return 1 + qdepth(f.body)

    level_pad = len(word.period) * (1 << qdepth(phi))

    def letter_bit(i, X):
        return _bit(word.letter_at(i), so_vars, X)

    def go(f, env, bound):
        if isinstance(f, Less):
            return env[f.x] < env[f.y]
        if isinstance(f, Succ):
            return env[f.y] == env[f.x] + 1
        if isinstance(f, In):
            return letter_bit(env[f.x], f.X) == 1
        if isinstance(f, Not):
            return not go(f.body, env, bound)
        if isinstance(f, And):
            return go(f.left, env, bound) and go(f.right, env, bound)
        if isinstance(f, Or):
            return go(f.left, env, bound) or go(f.right, env, bound)
        if isinstance(f, Exists):
            if is_second_order(f.var):
                raise NotImplementedError(
                    "second-order quantification is not supported by the "
                    "direct evaluator")
            for i in range(bound):
                env2 = dict(env)
                env2[f.var] = i
                if go(f.body, env2, bound + level_pad):
                    return True
            return False
        raise TypeError("not a formula: %r" % (f,))

    return go(phi, dict(assignment), horizon)


def sample_models(rec: Recognizer, n: int) -> List[UPWord]:
    """Up to n distinct ultimately periodic words in the language."""
    h = rec.morphism
    out, seen = [], set()
    for (s, e) in rec.accepting.pairs():
        u = h.rep_word(s)
        v = h.rep_word(e)
        w = UPWord(tuple(u), tuple(v))
        key = str(w)
        if key not in seen:
            seen.add(key)
            out.append(w)
        if len(out) >= n:
            break
    return out
