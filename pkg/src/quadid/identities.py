"""Quadratic identities on q-minors, stored in "sum equals zero" form.

Text grammar (whitespace between tokens is ignored)::

    expr    := term+
    term    := sign factor
    sign    := '+' | '-'
    factor  := ['q^' int] minor minor
    minor   := '[' intlist '|' intlist ']'
    intlist := [int (',' int)*]

Example: ``+ [2|1][1,3|1,2] - [1,2|1,2][3|1] - [2,3|1,2][1|1]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

from .ncalg import AlgebraElement
from .qminor import Cortege, QMatrix, double_intervals, interval_qc, quantum_minor
from .scalar import LaurentScalar

__all__ = [
    "DimensionMismatch",
    "IndexOutOfRange",
    "PreconditionViolated",
    "QIExpr",
    "QISyntaxError",
    "QITerm",
    "coplucker_instances",
    "dodgson_instances",
    "evaluate_qi",
    "family_instances",
    "is_homogeneous",
    "make_coplucker",
    "make_dodgson",
    "make_plucker",
    "make_qc",
    "parse_qi",
    "plucker_instances",
    "qc_instances",
]


class QISyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class IndexOutOfRange(ValueError):
    pass


class PreconditionViolated(ValueError):
    def __init__(self, clauses: Sequence[str]):
        super().__init__("precondition violated: " + "; ".join(clauses))
        self.clauses = list(clauses)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QITerm:
    sign: int
    delta: int
    left: Cortege
    right: Cortege

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        qp = f"q^{self.delta} " if self.delta else ""
        return f"{s} {qp}{self.left}{self.right}"


@dataclass(frozen=True)
class QIExpr:
    m: int
    n: int
    terms: tuple[QITerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a QI expression needs at least one term")
        for t in self.terms:
            for c in (t.left, t.right):
                if not c.within(self.m, self.n):
                    raise IndexOutOfRange(f"{c} outside {self.m}x{self.n}")

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.terms)

    def corteges(self) -> set[Cortege]:
        return {c for t in self.terms for c in (t.left, t.right)}


def _dims(corteges: Iterable[Cortege]) -> tuple[int, int]:
    cs = list(corteges)
    m = max((max(c.rows) for c in cs if c.rows), default=1)
    n = max((max(c.cols) for c in cs if c.cols), default=1)
    return m, n


def _expr(terms: list[QITerm], m: int | None, n: int | None) -> QIExpr:
    if m is None or n is None:
        dm, dn = _dims(c for t in terms for c in (t.left, t.right))
        m = dm if m is None else m
        n = dn if n is None else n
    return QIExpr(m, n, tuple(terms))


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise QISyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        tok = self.text[start : self.pos]
        if tok in ("", "-"):
            raise QISyntaxError("expected integer", start)
        return int(tok)

    def intlist(self, closer: str) -> tuple[int, ...]:
        out = []
        if self.peek() == closer:
            return ()
        out.append(self.integer())
        while self.peek() == ",":
            self.pos += 1
            out.append(self.integer())
        return tuple(out)

    def minor(self) -> Cortege:
        start = self.pos
        self.expect("[")
        rows = self.intlist("|")
        self.expect("|")
        cols = self.intlist("]")
        self.expect("]")
        if len(rows) != len(cols):
            raise QISyntaxError(f"|I|={len(rows)} differs from |J|={len(cols)}", start)
        try:
            return Cortege(rows, cols)
        except ValueError as exc:
            raise QISyntaxError(str(exc), start) from None

    def term(self) -> QITerm:
        ch = self.peek()
        if ch not in ("+", "-"):
            raise QISyntaxError("expected sign '+' or '-'", self.pos)
        self.pos += 1
        sign = 1 if ch == "+" else -1
        delta = 0
        if self.peek() == "q":
            self.pos += 1
            self.expect("^")
            delta = self.integer()
        left = self.minor()
        right = self.minor()
        return QITerm(sign, delta, left, right)

    def expr(self) -> list[QITerm]:
        terms = [self.term()]
        while self.peek():
            terms.append(self.term())
        return terms


def parse_qi(text: str, m: int | None = None, n: int | None = None) -> QIExpr:
    """Parse an expression; m, n default to the largest indices that occur."""
    terms = _Parser(text).expr()
    return _expr(terms, m, n)


# -- predicates and evaluation ----------------------------------------------


def is_homogeneous(e: QIExpr) -> bool:
    def sig(t: QITerm):
        I, Ip, J, Jp = set(t.left.rows), set(t.right.rows), set(t.left.cols), set(t.right.cols)
        return (frozenset(I | Ip), frozenset(I & Ip), frozenset(J | Jp), frozenset(J & Jp))

    first = sig(e.terms[0])
    return all(sig(t) == first for t in e.terms[1:])


MinorSource = Union[QMatrix, Mapping[Cortege, AlgebraElement], Callable[[Cortege], AlgebraElement]]


def _lookup(source: MinorSource, m: int, n: int) -> Callable[[Cortege], AlgebraElement]:
    if isinstance(source, QMatrix):
        if (source.m, source.n) != (m, n):
            raise DimensionMismatch(f"expression is {m}x{n}, matrix is {source.m}x{source.n}")
        return lambda c: quantum_minor(source, c)
    if isinstance(source, Mapping):
        dims = getattr(source, "shape", None)
        if dims is not None and tuple(dims) != (m, n):
            raise DimensionMismatch(f"expression is {m}x{n}, table is {dims[0]}x{dims[1]}")
        return source.__getitem__
    return source


def evaluate_qi(e: QIExpr, X: MinorSource) -> AlgebraElement:
    """Sum of sign q^delta f(left) f(right) with f the minors of X (or a table)."""
    f = _lookup(X, e.m, e.n)
    total = None
    for t in e.terms:
        val = (f(t.left) * f(t.right)).scale(LaurentScalar.q_power(t.delta, t.sign))
        total = val if total is None else total + val
    return total


# -- family constructors ------------------------------------------------------


def _term(sign: int, delta: int, left: Cortege, right: Cortege) -> QITerm:
    return QITerm(sign, delta, left, right)


def _check_bounds(clauses: list[str], m, n, rows: Iterable[int], cols: Iterable[int]):
    rows, cols = list(rows), list(cols)
    if any(r < 1 for r in rows) or any(c < 1 for c in cols):
        clauses.append("indices must be positive")
    if m is not None and any(r > m for r in rows):
        clauses.append(f"row index exceeds m={m}")
    if n is not None and any(c > n for c in cols):
        clauses.append(f"column index exceeds n={n}")


def make_plucker(
    A: Iterable[int], B: Iterable[int], i: int, j: int, k: int, l: int,
    m: int | None = None, n: int | None = None,
) -> QIExpr:
    """Triple Plücker relation
    D(Aj|B) D(Aik|Bl) - D(Aij|Bl) D(Ak|B) - D(Ajk|Bl) D(Ai|B)."""
    A, B = tuple(sorted(A)), tuple(sorted(B))
    bad = []
    if len(A) + 1 != len(B):
        bad.append("|A|+1 must equal |B|")
    if not i < j < k:
        bad.append("need i<j<k")
    if {i, j, k} & set(A):
        bad.append("{i,j,k} must be disjoint from A")
    if l in B:
        bad.append("l must not lie in B")
    _check_bounds(bad, m, n, A + (i, j, k), B + (l,))
    if bad:
        raise PreconditionViolated(bad)

    def c(rows, cols):
        return Cortege(A + tuple(rows), B + tuple(cols))

    terms = [
        _term(1, 0, c([j], []), c([i, k], [l])),
        _term(-1, 0, c([i, j], [l]), c([k], [])),
        _term(-1, 0, c([j, k], [l]), c([i], [])),
    ]
    return _expr(terms, m, n)


def make_coplucker(
    A: Iterable[int], B: Iterable[int], l: int, i: int, j: int, k: int,
    m: int | None = None, n: int | None = None,
) -> QIExpr:
    """Co-Plücker relation
    D(A|Bj) D(Al|Bik) - D(Al|Bij) D(A|Bk) - D(Al|Bjk) D(A|Bi)."""
    A, B = tuple(sorted(A)), tuple(sorted(B))
    bad = []
    if len(A) != len(B) + 1:
        bad.append("|A| must equal |B|+1")
    if not i < j < k:
        bad.append("need i<j<k")
    if {i, j, k} & set(B):
        bad.append("{i,j,k} must be disjoint from B")
    if l in A:
        bad.append("l must not lie in A")
    _check_bounds(bad, m, n, A + (l,), B + (i, j, k))
    if bad:
        raise PreconditionViolated(bad)

    def c(rows, cols):
        return Cortege(A + tuple(rows), B + tuple(cols))

    terms = [
        _term(1, 0, c([], [j]), c([l], [i, k])),
        _term(-1, 0, c([l], [i, j]), c([], [k])),
        _term(-1, 0, c([l], [j, k]), c([], [i])),
    ]
    return _expr(terms, m, n)


def make_dodgson(i: int, k: int, j: int, l: int, m: int | None = None, n: int | None = None) -> QIExpr:
    """Dodgson relation with A = [i+1..k-1], B = [j+1..l-1]:
    D(Ai|Bj) D(Ak|Bl) - D(Aik|Bjl) D(A|B) - q D(Ai|Bl) D(Ak|Bj)."""
    bad = []
    if k - i != l - j:
        bad.append("need k-i = l-j")
    if k - i < 1:
        # k = i makes Aik a one-element set and the relation false
        bad.append("need k-i >= 1 (i and k must be distinct)")
    _check_bounds(bad, m, n, (i, k), (j, l))
    if bad:
        raise PreconditionViolated(bad)
    A = tuple(range(i + 1, k))
    B = tuple(range(j + 1, l))

    def c(rows, cols):
        return Cortege(A + tuple(rows), B + tuple(cols))

    terms = [
        _term(1, 0, c([i], [j]), c([k], [l])),
        _term(-1, 0, c([i, k], [j, l]), c([], [])),
        _term(-1, 1, c([i], [l]), c([k], [j])),
    ]
    return _expr(terms, m, n)


def make_qc(c1: Cortege, c2: Cortege, m: int | None = None, n: int | None = None) -> QIExpr:
    """D(c1) D(c2) - q^c D(c2) D(c1) for a quasi-commuting interval pair."""
    ok, c = interval_qc(c1, c2)
    if not ok:
        raise PreconditionViolated([f"{c1} and {c2} do not quasi-commute"])
    return _expr([_term(1, 0, c1, c2), _term(-1, c, c2, c1)], m, n)


# -- instance enumeration ---------------------------------------------------


def _subsets(pool: Sequence[int], size: int):
    if size < 0:
        return
    yield from itertools.combinations(pool, size)


def plucker_instances(m: int, n: int) -> list[QIExpr]:
    out = []
    rows, cols = range(1, m + 1), range(1, n + 1)
    for i, j, k in itertools.combinations(rows, 3):
        rest = [r for r in rows if r not in (i, j, k)]
        for asize in range(len(rest) + 1):
            for A in _subsets(rest, asize):
                for B in _subsets(list(cols), asize + 1):
                    for l in cols:
                        if l not in B:
                            out.append(make_plucker(A, B, i, j, k, l, m, n))
    return out


def coplucker_instances(m: int, n: int) -> list[QIExpr]:
    out = []
    rows, cols = range(1, m + 1), range(1, n + 1)
    for i, j, k in itertools.combinations(cols, 3):
        rest = [c for c in cols if c not in (i, j, k)]
        for bsize in range(len(rest) + 1):
            for B in _subsets(rest, bsize):
                for A in _subsets(list(rows), bsize + 1):
                    for l in rows:
                        if l not in A:
                            out.append(make_coplucker(A, B, l, i, j, k, m, n))
    return out


def dodgson_instances(m: int, n: int) -> list[QIExpr]:
    out = []
    for i, k in itertools.combinations(range(1, m + 1), 2):
        for j in range(1, n + 1):
            l = j + (k - i)
            if l <= n:
                out.append(make_dodgson(i, k, j, l, m, n))
    return out


def qc_instances(m: int, n: int) -> list[QIExpr]:
    """One relation per unordered pair of quasi-commuting double intervals."""
    out = []
    cs = double_intervals(m, n)
    for a, b in itertools.combinations(cs, 2):
        ok, _ = interval_qc(a, b)
        if ok:
            out.append(make_qc(a, b, m, n))
    return out


FAMILIES = {
    "plucker": plucker_instances,
    "coplucker": coplucker_instances,
    "dodgson": dodgson_instances,
    "qc": qc_instances,
}


def family_instances(family: str, m: int, n: int) -> list[tuple[str, QIExpr]]:
    names = list(FAMILIES) if family == "all" else [family]
    out = []
    for name in names:
        try:
            gen = FAMILIES[name]
        except KeyError:
            raise ValueError(f"unknown family {name!r}") from None
        out.extend((name, e) for e in gen(m, n))
    return out
