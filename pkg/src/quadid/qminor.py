"""Corteges, quantum matrices and their q-minors."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ncalg import AlgebraElement, QMatrixPresentation
from .scalar import LaurentScalar, q

__all__ = [
    "Cortege",
    "NotDoubleInterval",
    "OutOfBounds",
    "QMatrix",
    "all_corteges",
    "double_intervals",
    "generic_qmatrix",
    "interval_qc",
    "inversions",
    "manin_violations",
    "quantum_minor",
]


class OutOfBounds(IndexError):
    pass


class NotDoubleInterval(ValueError):
    pass


def _is_interval(s: tuple[int, ...]) -> bool:
    return bool(s) and s[-1] - s[0] + 1 == len(s)


@dataclass(frozen=True, order=True)
class Cortege:
    """A pair (I|J) of equal-size strictly increasing index tuples."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(sorted(set(self.rows)))
        cols = tuple(sorted(set(self.cols)))
        if len(rows) != len(self.rows) or len(cols) != len(self.cols):
            raise ValueError(f"repeated indices in ({self.rows}|{self.cols})")
        if len(rows) != len(cols):
            raise ValueError(f"|I| != |J| in ({rows}|{cols})")
        if any(x < 1 for x in rows + cols):
            raise ValueError("indices start at 1")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def of(cls, rows: Iterable[int], cols: Iterable[int]) -> "Cortege":
        return cls(tuple(rows), tuple(cols))

    @property
    def size(self) -> int:
        return len(self.rows)

    def is_empty(self) -> bool:
        return not self.rows

    def within(self, m: int, n: int) -> bool:
        return all(i <= m for i in self.rows) and all(j <= n for j in self.cols)

    def check_bounds(self, m: int, n: int) -> None:
        if not self.within(m, n):
            raise OutOfBounds(f"{self} outside {m}x{n}")

    def is_double_interval(self) -> bool:
        return _is_interval(self.rows) and _is_interval(self.cols)

    def is_flag(self) -> bool:
        return self.is_double_interval() and self.cols[0] == 1

    def is_coflag(self) -> bool:
        return self.is_double_interval() and self.rows[0] == 1

    def is_pressed(self) -> bool:
        return self.is_flag() or self.is_coflag()

    def sigma(self) -> int:
        """Spread max(I)-min(I)+max(J)-min(J)."""
        if not self.rows:
            return 0
        return self.rows[-1] - self.rows[0] + self.cols[-1] - self.cols[0]

    def eta(self) -> int:
        """max(I)+min(I)+max(J)+min(J)."""
        if not self.rows:
            return 0
        return self.rows[-1] + self.rows[0] + self.cols[-1] + self.cols[0]

    def add(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "Cortege":
        """Disjoint union, the ``Aik|Bl`` notation."""
        rows, cols = tuple(rows), tuple(cols)
        clash = set(rows) & set(self.rows) or set(cols) & set(self.cols)
        if clash or len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError(f"cannot add rows {rows} / cols {cols} to {self}: not disjoint")
        return Cortege(self.rows + rows, self.cols + cols)

    def remove(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "Cortege":
        rows, cols = set(rows), set(cols)
        if not rows <= set(self.rows) or not cols <= set(self.cols):
            raise ValueError(f"cannot remove rows {rows} / cols {cols} from {self}")
        return Cortege(
            tuple(i for i in self.rows if i not in rows),
            tuple(j for j in self.cols if j not in cols),
        )

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.rows)) + "|" + ",".join(map(str, self.cols)) + "]"

    @classmethod
    def parse(cls, text: str) -> "Cortege":
        m = re.fullmatch(r"\s*\[\s*([\d,\s]*)\|\s*([\d,\s]*)\]\s*", text)
        if not m:
            raise ValueError(f"bad cortege text {text!r}")

        def ints(s):
            s = s.strip()
            return tuple(int(x) for x in s.split(",")) if s else ()

        return cls(ints(m.group(1)), ints(m.group(2)))


EMPTY = Cortege((), ())


def all_corteges(m: int, n: int) -> list[Cortege]:
    """Every cortege of an m x n matrix, by size then lexicographically."""
    out = []
    for k in range(min(m, n) + 1):
        for rows in itertools.combinations(range(1, m + 1), k):
            for cols in itertools.combinations(range(1, n + 1), k):
                out.append(Cortege(rows, cols))
    return out


def double_intervals(m: int, n: int) -> list[Cortege]:
    """Nonempty double-interval corteges."""
    return [c for c in all_corteges(m, n) if c.rows and c.is_double_interval()]


class QMatrix:
    """An m x n matrix of algebra elements; q-minors are cached per instance."""

    def __init__(self, entries: Sequence[Sequence[AlgebraElement]]):
        self.entries = tuple(tuple(row) for row in entries)
        self.m = len(self.entries)
        self.n = len(self.entries[0]) if self.m else 0
        if any(len(r) != self.n for r in self.entries):
            raise ValueError("ragged matrix")
        self.alg = self.entries[0][0].alg
        self._minors: dict[Cortege, AlgebraElement] = {}

    def __getitem__(self, ij: tuple[int, int]) -> AlgebraElement:
        i, j = ij
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise OutOfBounds(f"entry ({i},{j}) outside {self.m}x{self.n}")
        return self.entries[i - 1][j - 1]

    def minor(self, c: Cortege) -> AlgebraElement:
        return quantum_minor(self, c)


def generic_qmatrix(m: int, n: int) -> QMatrix:
    alg = QMatrixPresentation(m, n)
    return QMatrix([[alg.gen(i, j) for j in range(1, n + 1)] for i in range(1, m + 1)])


def inversions(sigma: Sequence[int]) -> int:
    """Number of pairs a < b with sigma[a] > sigma[b]."""
    if sorted(sigma) != list(range(min(sigma, default=0), min(sigma, default=0) + len(sigma))):
        raise ValueError(f"{sigma} is not a permutation")
    return sum(1 for a, b in itertools.combinations(range(len(sigma)), 2) if sigma[a] > sigma[b])


def quantum_minor(X: QMatrix, c: Cortege) -> AlgebraElement:
    """q-determinant of X(I|J) as the signed permutation sum, factors left to right."""
    c.check_bounds(X.m, X.n)
    hit = X._minors.get(c)
    if hit is not None:
        return hit
    total = AlgebraElement.zero(X.alg)
    k = c.size
    for perm in itertools.permutations(range(k)):
        term = X.alg.one()
        for d in range(k):
            term = term * X[c.rows[d], c.cols[perm[d]]]
        ell = inversions(perm)
        total = total + term.scale(LaurentScalar.q_power(ell, (-1) ** ell))
    X._minors[c] = total
    return total


def interval_qc(c1: Cortege, c2: Cortege) -> tuple[bool, int | None]:
    """Universal quasi-commutation test for two interval minors.

    Returns ``(True, c)`` when Delta(c1) Delta(c2) = q^c Delta(c2) Delta(c1)
    holds universally, else ``(False, None)``.
    """
    for c in (c1, c2):
        if not c.rows or not c.is_double_interval():
            raise NotDoubleInterval(f"{c} is not a double interval")
    if c1.size < c2.size:
        ok, c = interval_qc(c2, c1)
        return ok, (-c if ok else None)
    I, J = c1.rows, c1.cols
    alpha = sum(1 for i in c2.rows if i < I[0])
    beta = sum(1 for i in c2.rows if i > I[-1])
    gamma = sum(1 for j in c2.cols if j < J[0])
    delta = sum(1 for j in c2.cols if j > J[-1])
    if alpha * gamma or beta * delta:
        return False, None
    return True, beta + delta - alpha - gamma


def manin_violations(X: QMatrix) -> list[tuple[str, tuple[int, ...], AlgebraElement]]:
    """Check Manin's relations on the entries of X; returns (relation, indices, residual)."""
    out = []
    x = X.__getitem__
    qq = q(1)
    qdiff = q(1) - q(-1)

    def check(name, idx, residual):
        if residual:
            out.append((name, idx, residual))

    for i in range(1, X.m + 1):
        for j, k in itertools.combinations(range(1, X.n + 1), 2):
            check("row", (i, j, k), x((i, j)) * x((i, k)) - x((i, k)) * x((i, j)) * qq)
    for j in range(1, X.n + 1):
        for i, l in itertools.combinations(range(1, X.m + 1), 2):
            check("column", (i, l, j), x((i, j)) * x((l, j)) - x((l, j)) * x((i, j)) * qq)
    for i, l in itertools.combinations(range(1, X.m + 1), 2):
        for j, k in itertools.combinations(range(1, X.n + 1), 2):
            check("antidiagonal", (i, l, j, k), x((i, k)) * x((l, j)) - x((l, j)) * x((i, k)))
            check(
                "diagonal",
                (i, l, j, k),
                x((i, j)) * x((l, k)) - x((l, k)) * x((i, j)) - (x((i, k)) * x((l, j))) * qdiff,
            )
    return out

