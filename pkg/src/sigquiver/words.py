"""Words over quiver edges: parsing, cyclic canonical form, periodicity, closure test, enumeration."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import NotAPathError, NotCyclicError, WordSyntaxError

_SUPERSCRIPT = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
CLOSURE_TOL = 1e-4


@dataclass(frozen=True)
class Word:
    letters: tuple[str, ...]
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self)

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters, self.closed)

    def __mul__(self, k: int) -> Word:
        return Word(self.letters * k, self.closed)

    def rotate(self, k: int) -> Word:
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k], self.closed)

    @property
    def text(self) -> str:
        return "".join(self.letters)


# --------------------------------------------------------------------------- text form


def parse_word(text: str, closed: bool = True) -> Word:
    """Parse ``cadb``, ``(cadb)^6``, ``a^3b^4`` or ``(cadb)⁶`` into a Word."""
    src = re.sub(r"\s+", "", text)
    src = re.sub("[⁰¹²³⁴⁵⁶⁷⁸⁹]+", lambda m: "^" + m.group(0).translate(_SUPERSCRIPT), src)
    pos = 0

    def number():
        nonlocal pos
        m = re.match(r"\^(\d+)", src[pos:])
        if not m:
            return 1
        pos += m.end()
        return int(m.group(1))

    def seq(depth):
        nonlocal pos
        out = []
        while pos < len(src):
            ch = src[pos]
            if ch == "(":
                pos += 1
                inner = seq(depth + 1)
                if pos >= len(src) or src[pos] != ")":
                    raise WordSyntaxError(f"unbalanced parenthesis in {text!r}")
                pos += 1
                out.extend(inner * number())
            elif ch == ")":
                if depth == 0:
                    raise WordSyntaxError(f"unexpected ')' in {text!r}")
                return out
            elif ch.isalpha():
                pos += 1
                out.extend([ch] * number())
            else:
                raise WordSyntaxError(f"unexpected {ch!r} at position {pos} in {text!r}")
        if depth:
            raise WordSyntaxError(f"unbalanced parenthesis in {text!r}")
        return out

    return Word(tuple(seq(0)), closed)


def _runs(letters) -> str:
    out = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        out.append(letters[i] if j - i == 1 else f"{letters[i]}^{j - i}")
        i = j
    return "".join(out)


def format_word(w: Word) -> str:
    """Compact exponent notation, e.g. ``(cadb)^6`` or ``a^3b^4c^5d^6``."""
    if not w.letters:
        return ""
    if w.closed:
        u, m = minimal_subword(w)
        if m > 1:
            body = _runs(u.letters)
            return f"{body}^{m}" if len(u) == 1 else f"({body})^{m}"
    return _runs(w.letters)


# --------------------------------------------------------------------------- cyclic structure


def least_rotation(seq) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    s = list(seq) * 2
    n = len(s)
    fail = [-1] * n
    k = 0
    for j in range(1, n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical(w: Word) -> Word:
    """Least rotation of a closed word."""
    if not w.closed:
        raise NotCyclicError("canonical form needs a closed word")
    if not w.letters:
        return w
    return w.rotate(least_rotation(w.letters))


def minimal_subword(w: Word) -> tuple[Word, int]:
    """Shortest u with w = u^m, and that m."""
    s = w.letters
    n = len(s)
    if n == 0:
        return w, 1
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    if n % p:
        return w, 1
    return Word(s[:p], w.closed), n // p


def multiplicities(w: Word) -> dict[str, int]:
    return dict(Counter(w.letters))


def compatible(w1: Word, w2: Word) -> bool:
    return multiplicities(w1) == multiplicities(w2)


def is_complete(q, w: Word) -> bool:
    return {e.id for e in q.edges} <= set(w.letters)


# --------------------------------------------------------------------------- paths on a quiver


def _edge_map(q):
    return {e.id: e for e in q.edges}


def check_path(q, w: Word) -> None:
    """Raise NotAPathError unless consecutive letters chain head to tail (and wrap if closed)."""
    edges = _edge_map(q)
    unknown = sorted(set(w.letters) - set(edges))
    if unknown:
        raise NotAPathError(f"letters {', '.join(unknown)} are not edges of the quiver")
    n = len(w.letters)
    last = n if w.closed else n - 1
    for k in range(last):
        a, b = edges[w.letters[k]], edges[w.letters[(k + 1) % n]]
        if a.to_vertex != b.from_vertex:
            raise NotAPathError(
                f"{a.id} ends at vertex {a.to_vertex} but {b.id} starts at vertex {b.from_vertex} (position {k})"
            )


def is_path(q, w: Word) -> bool:
    try:
        check_path(q, w)
    except NotAPathError:
        return False
    return True


class ClosureTest(NamedTuple):
    holds: bool
    sum: float
    m: int
    coprime: bool


def closure_test(q, w: Word, xi: int = 1) -> ClosureTest:
    """Sum of multiplicity times weight against 2 pi xi; m is the word's period exponent."""
    check_path(q, w)
    edges = _edge_map(q)
    total = math.fsum(c * edges[e].weight_omega for e, c in multiplicities(w).items())
    _, m = minimal_subword(w)
    return ClosureTest(abs(total - 2 * math.pi * xi) <= CLOSURE_TOL, total, m, math.gcd(xi, m) == 1)


# --------------------------------------------------------------------------- enumeration


class Enumeration(NamedTuple):
    words: list
    truncated: bool
    count: int


def _prepare(q, mult):
    edges = sorted(q.edges, key=lambda e: e.id)
    ids = [e.id for e in edges]
    extra = set(mult) - set(ids)
    if extra:
        raise NotAPathError(f"unknown edges {', '.join(sorted(extra))}")
    counts = tuple(int(mult.get(i, 0)) for i in ids)
    if any(c < 0 for c in counts):
        raise ValueError("multiplicities must be non-negative")
    return edges, counts


def _balanced(edges, counts) -> bool:
    bal = Counter()
    for e, c in zip(edges, counts):
        bal[e.from_vertex] += c
        bal[e.to_vertex] -= c
    return all(v == 0 for v in bal.values())


def _connected(edges, counts, start) -> bool:
    """Do the remaining edges form one weakly connected piece containing ``start``?"""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    find(start)
    for e, c in zip(edges, counts):
        if c:
            parent[find(e.from_vertex)] = find(e.to_vertex)
    root = find(start)
    return all(find(e.from_vertex) == root for e, c in zip(edges, counts) if c)


def enumerate_words(q, per_period_multiplicities: dict, max_results: int = 10000, count_only: bool = False) -> Enumeration:
    """Closed paths using each edge exactly the prescribed number of times, one per rotation class.

    Words are returned in canonical form, sorted. ``count_only`` skips the
    listing and counts classes with a memoized path count and Burnside's lemma.
    """
    edges, counts = _prepare(q, per_period_multiplicities)
    if sum(counts) == 0 or not _balanced(edges, counts):
        return Enumeration([], False, 0)
    first = min(i for i, c in enumerate(counts) if c)
    if not _connected(edges, counts, edges[first].from_vertex):
        return Enumeration([], False, 0)
    if count_only:
        return Enumeration([], False, count_classes(edges, counts))

    found = {}
    truncated = False
    home = edges[first].from_vertex
    remaining = list(counts)
    remaining[first] -= 1
    path = [first]
    out_of = {}
    for i, e in enumerate(edges):
        out_of.setdefault(e.from_vertex, []).append(i)

    def walk(vertex, left):
        nonlocal truncated
        if truncated:
            return
        if left == 0:
            if vertex == home:
                key = canonical(Word(tuple(edges[i].id for i in path)))
                if key not in found:
                    found[key] = None
                    if len(found) >= max_results:
                        truncated = True
            return
        if not _connected(edges, remaining, vertex):
            return
        for i in out_of.get(vertex, ()):
            if remaining[i]:
                remaining[i] -= 1
                path.append(i)
                walk(edges[i].to_vertex, left - 1)
                path.pop()
                remaining[i] += 1

    walk(edges[first].to_vertex, sum(counts) - 1)
    words = sorted(found, key=lambda w: w.letters)
    return Enumeration(words, truncated, len(words))


def _closed_sequences(edges, counts) -> int:
    """Number of cyclically valid letter sequences with exactly these counts."""
    n = sum(counts)
    if n == 0:
        return 0
    if not _balanced(edges, counts):
        return 0
    out_of = {}
    for i, e in enumerate(edges):
        out_of.setdefault(e.from_vertex, []).append(i)

    @lru_cache(maxsize=None)
    def paths(vertex, rem, home):
        if not any(rem):
            return 1 if vertex == home else 0
        total = 0
        for i in out_of.get(vertex, ()):
            if rem[i]:
                nxt = rem[:i] + (rem[i] - 1,) + rem[i + 1 :]
                total += paths(edges[i].to_vertex, nxt, home)
        return total

    total = 0
    for i, c in enumerate(counts):
        if c:
            rem = counts[:i] + (c - 1,) + counts[i + 1 :]
            total += paths(edges[i].to_vertex, rem, edges[i].from_vertex)
    return total


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def count_classes(edges, counts) -> int:
    """Rotation classes of closed sequences, by Burnside's lemma over the cyclic group."""
    n = sum(counts)
    g = 0
    for c in counts:
        g = math.gcd(g, c)
    total = 0
    for d in range(1, n + 1):
        # rotations by multiples of n/d fix words with period dividing n/d
        if n % d or g % d:
            continue
        reduced = tuple(c // d for c in counts)
        total += _phi(d) * _closed_sequences(edges, reduced)
    return total // n
