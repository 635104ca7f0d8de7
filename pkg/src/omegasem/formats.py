"""Plain-text serialization for recognizers, Buchi automata and letter maps.

All three formats are line oriented: a version header, then ``key: value``
directives.  ``#`` starts a comment; blank lines are ignored.  Element and
state ids are dense decimal integers starting at 0.  Saving always emits a
canonical form, so save -> load -> save is byte stable.

Recognizer files carry the multiplication table either in full (row-major,
one row per line) or as ``table: generated`` followed by the right-Cayley
rows ``s * g_j`` only; the full table is then rebuilt on load by closing the
generators, which keeps files for large semigroups quadratic in
|S| * |generators| instead of |S|^2.
"""

from __future__ import annotations

import os
from typing import List, Optional, TextIO, Union

import numpy as np

from .buchi import BuchiAutomaton
from .errors import OmegasemError, ParseError
from .langops import LetterMap
from .morphism import Morphism, PairSet, Recognizer
from .semigroup import DEFAULT_CAP, Semigroup

RECOGNIZER_VERSION = "v1"
BUCHI_VERSION = "v1"
LETTERMAP_VERSION = "v1"

CAP_ENV_VAR = "OMEGASEM_CLOSURE_CAP"


def closure_cap(default: int = DEFAULT_CAP) -> int:
    """The element cap for on-load table generation (env override)."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError("%s must be an integer, got %r" % (CAP_ENV_VAR, raw))
    if cap <= 0:
        raise ParseError("%s must be positive" % CAP_ENV_VAR)
    return cap


# -- line scanner -------------------------------------------------------------


class _Lines:
    """Comment/blank-stripping scanner that tracks line numbers for errors."""

    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((no, line))
        self.pos = 0

    def peek(self) -> Optional[str]:
        if self.pos < len(self.items):
            return self.items[self.pos][1]
        return None

    def next(self, what: str) -> str:
        if self.pos >= len(self.items):
            raise ParseError("unexpected end of file, expected %s" % what)
        no, line = self.items[self.pos]
        self.pos += 1
        self.line_no = no
        return line

    def fail(self, message: str):
        raise ParseError(message, line=getattr(self, "line_no", None))

    def directive(self, what: str):
        """Next line split as ``key: rest``."""
        line = self.next(what)
        if ":" not in line:
            self.fail("expected '%s', got %r" % (what, line))
        key, rest = line.split(":", 1)
        return key.strip(), rest.strip()

    def expect(self, key: str) -> str:
        got, rest = self.directive("%s:" % key)
        if got != key:
            self.fail("expected '%s:', got '%s:'" % (key, got))
        return rest

    def ints(self, what: str, count: Optional[int] = None) -> List[int]:
        fields = self.next(what).split()
        try:
            out = [int(f) for f in fields]
        except ValueError:
            self.fail("expected integers for %s" % what)
        if count is not None and len(out) != count:
            self.fail("expected %d integers for %s, got %d"
                      % (count, what, len(out)))
        return out

    def done(self):
        if self.pos < len(self.items):
            no, line = self.items[self.pos]
            raise ParseError("trailing content %r" % line, line=no)


def _check_letters(letters, fail):
    if not letters:
        fail("alphabet must be nonempty")
    if len(set(letters)) != len(letters):
        fail("duplicate letters in alphabet")


def _check_header(lines: _Lines, kind: str, version: str):
    fields = lines.next("header").split()
    if len(fields) != 2 or fields[0] != kind:
        lines.fail("expected header '%s %s'" % (kind, version))
    if fields[1] != version:
        lines.fail("unsupported %s format version %r (expected %s)"
                   % (kind, fields[1], version))


# -- recognizer files ----------------------------------------------------------


def dumps_recognizer(rec: Recognizer, *, generated: bool = False) -> str:
    """Render a recognizer; ``generated`` stores right-Cayley rows only."""
    h = rec.morphism
    sg = h.semigroup
    out = ["recognizer %s" % RECOGNIZER_VERSION,
           "mode: %s" % rec.mode,
           "alphabet: %s" % " ".join(h.alphabet),
           "elements: %d" % sg.size]
    for a, s in zip(h.alphabet, h.images):
        out.append("image: %s -> %d" % (a, s))
    if generated:
        out.append("table: generated")
        rows = sg.right_cayley
    else:
        out.append("table: full")
        rows = sg.table
    for row in rows:
        out.append(" ".join(str(int(x)) for x in row))
    out.append("accept:")
    for s, e in rec.accepting.pairs():
        out.append("%d %d" % (s, e))
    return "\n".join(out) + "\n"


def _table_from_cayley(rc: np.ndarray, generators, fail, cap: int):
    """Rebuild the full table from right-Cayley rows ``s * g_j``.

    Every column is filled by reassociating against one decomposition
    ``t = parent(t) * g`` found by breadth-first search from the generators.
    """
    n = rc.shape[0]
    if n > cap:
        fail("table generation over %d elements exceeds cap %d" % (n, cap))
    parent = np.full(n, -1, dtype=np.int32)
    parent_gen = np.full(n, -1, dtype=np.int32)
    seen = np.zeros(n, dtype=bool)
    order = []
    for g in generators:
        if not seen[g]:
            seen[g] = True
            order.append(g)
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for j in range(rc.shape[1]):
            t = int(rc[s, j])
            if not seen[t]:
                seen[t] = True
                parent[t] = s
                parent_gen[t] = j
                order.append(t)
    if len(order) != n:
        fail("generated table has elements unreachable from the images")
    gen_col = {g: j for j, g in enumerate(generators)}
    table = np.empty((n, n), dtype=np.int32)
    for t in order:
        if parent[t] < 0:
            table[:, t] = rc[:, gen_col[t]]
        else:
            table[:, t] = rc[table[:, parent[t]], parent_gen[t]]
    return table


def loads_recognizer(text: str, *, audit_bound: Optional[int] = None) -> Recognizer:
    lines = _Lines(text)
    _check_header(lines, "recognizer", RECOGNIZER_VERSION)
    mode = lines.expect("mode")
    if mode not in ("weak", "strong"):
        lines.fail("mode must be 'weak' or 'strong', got %r" % mode)
    alphabet = lines.expect("alphabet").split()
    _check_letters(alphabet, lines.fail)
    try:
        n = int(lines.expect("elements"))
    except ValueError:
        lines.fail("elements must be an integer")
    if n <= 0:
        lines.fail("elements must be positive")
    images = []
    for a in alphabet:
        rest = lines.expect("image")
        parts = rest.split("->")
        if len(parts) != 2 or parts[0].strip() != a:
            lines.fail("expected 'image: %s -> <id>', got %r" % (a, rest))
        try:
            s = int(parts[1])
        except ValueError:
            lines.fail("image id must be an integer")
        if not 0 <= s < n:
            lines.fail("image id %d out of range" % s)
        images.append(s)
    generators = list(dict.fromkeys(images))
    kind = lines.expect("table")
    width = {"full": n, "generated": len(generators)}.get(kind)
    if width is None:
        lines.fail("table must be 'full' or 'generated', got %r" % kind)
    rows = np.asarray([lines.ints("table row", width) for _ in range(n)],
                      dtype=np.int32)
    if rows.size and (rows.min() < 0 or rows.max() >= n):
        lines.fail("table entries out of range")
    if kind == "generated":
        table = _table_from_cayley(rows, generators, lines.fail, closure_cap())
    else:
        table = rows
    if lines.expect("accept"):
        lines.fail("unexpected content after 'accept:'")
    accepting = PairSet.empty(n)
    while lines.peek() is not None:
        s, e = lines.ints("accepting pair", 2)
        if not (0 <= s < n and 0 <= e < n):
            lines.fail("accepting pair (%d, %d) out of range" % (s, e))
        accepting.bits[s, e] = True
    lines.done()
    kwargs = {} if audit_bound is None else {"audit_bound": audit_bound}
    try:
        sg = Semigroup(table, generators, **kwargs)
        return Recognizer(Morphism(alphabet, sg, images), accepting, mode)
    except (ValueError, OmegasemError) as exc:
        raise ParseError(str(exc))


# -- Buchi files ---------------------------------------------------------------


def dumps_buchi(aut: BuchiAutomaton) -> str:
    out = ["buchi %s" % BUCHI_VERSION,
           "states: %d" % aut.n_states,
           "alphabet: %s" % " ".join(aut.alphabet),
           "initial: %s" % " ".join(str(int(q)) for q in np.nonzero(aut.initial)[0]),
           "final: %s" % " ".join(str(int(q)) for q in np.nonzero(aut.final)[0])]
    for a in aut.alphabet:
        mat = aut.edges[a]
        for p, q in zip(*np.nonzero(mat)):
            out.append("trans: %d %s %d" % (p, a, q))
    return "\n".join(out) + "\n"


def loads_buchi(text: str) -> BuchiAutomaton:
    lines = _Lines(text)
    _check_header(lines, "buchi", BUCHI_VERSION)
    try:
        n = int(lines.expect("states"))
    except ValueError:
        lines.fail("states must be an integer")
    if n <= 0:
        lines.fail("states must be positive")
    alphabet = lines.expect("alphabet").split()
    _check_letters(alphabet, lines.fail)

    def state_list(rest, what):
        out = []
        for f in rest.split():
            try:
                q = int(f)
            except ValueError:
                lines.fail("%s states must be integers" % what)
            if not 0 <= q < n:
                lines.fail("%s state %d out of range" % (what, q))
            out.append(q)
        return out

    initial = state_list(lines.expect("initial"), "initial")
    final = state_list(lines.expect("final"), "final")
    triples = []
    while lines.peek() is not None:
        key, rest = lines.directive("trans:")
        if key != "trans":
            lines.fail("unknown directive '%s:'" % key)
        fields = rest.split()
        if len(fields) != 3:
            lines.fail("expected 'trans: <from> <letter> <to>'")
        if fields[1] not in alphabet:
            lines.fail("unknown letter %r in transition" % fields[1])
        try:
            p, q = int(fields[0]), int(fields[2])
        except ValueError:
            lines.fail("transition states must be integers")
        if not (0 <= p < n and 0 <= q < n):
            lines.fail("transition state out of range")
        triples.append((p, fields[1], q))
    lines.done()
    return BuchiAutomaton.from_triples(n, alphabet, triples, initial, final)


# -- letter-map files ----------------------------------------------------------


def dumps_lettermap(lmap: LetterMap) -> str:
    out = ["lettermap %s" % LETTERMAP_VERSION,
           "source: %s" % " ".join(lmap.source),
           "target: %s" % " ".join(lmap.target)]
    for a in lmap.source:
        out.append("map: %s -> %s" % (a, lmap.mapping[a]))
    return "\n".join(out) + "\n"


def loads_lettermap(text: str) -> LetterMap:
    lines = _Lines(text)
    _check_header(lines, "lettermap", LETTERMAP_VERSION)
    source = lines.expect("source").split()
    _check_letters(source, lines.fail)
    target = lines.expect("target").split()
    _check_letters(target, lines.fail)
    mapping = {}
    for a in source:
        rest = lines.expect("map")
        parts = rest.split("->")
        if len(parts) != 2 or parts[0].strip() != a:
            lines.fail("expected 'map: %s -> <letter>', got %r" % (a, rest))
        b = parts[1].strip()
        if b not in target:
            lines.fail("target letter %r not in target alphabet" % b)
        mapping[a] = b
    lines.done()
    return LetterMap(tuple(source), tuple(target), mapping)


# -- path helpers --------------------------------------------------------------


def _read(path_or_file: Union[str, TextIO]) -> str:
    if hasattr(path_or_file, "read"):
        return path_or_file.read()
    with open(path_or_file, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path_or_file: Union[str, TextIO]):
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
        return
    with open(path_or_file, "w", encoding="utf-8") as fh:
        fh.write(text)


def load_recognizer(path_or_file, **kwargs) -> Recognizer:
    return loads_recognizer(_read(path_or_file), **kwargs)


def save_recognizer(rec: Recognizer, path_or_file, **kwargs):
    _write(dumps_recognizer(rec, **kwargs), path_or_file)


def load_buchi(path_or_file) -> BuchiAutomaton:
    return loads_buchi(_read(path_or_file))


def save_buchi(aut: BuchiAutomaton, path_or_file):
    _write(dumps_buchi(aut), path_or_file)


def load_lettermap(path_or_file) -> LetterMap:
    return loads_lettermap(_read(path_or_file))


def save_lettermap(lmap: LetterMap, path_or_file):
    _write(dumps_lettermap(lmap), path_or_file)
