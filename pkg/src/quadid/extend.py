"""QI-functions built from values on pressed corteges, and their reconstruction.

Extension: values f0 on the pressed double intervals become vertex weights
of the extended grid, and the q-minors of the resulting path matrix give a
QI-function agreeing with f0. Reconstruction runs the other way: given only
the pressed values, every other value is recovered by exact left division
through Dodgson relations (double intervals, by increasing eta) and then
Plücker / co-Plücker relations (by increasing sigma).
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterator

from .grid import ExtendedGrid, path_matrix, pressed_corteges, pressed_map, pressed_position
from .ncalg import AlgebraElement, NotDivisible, TorusPresentation, torus_left_divide
from .qminor import EMPTY, Cortege, QMatrix, all_corteges, interval_qc, quantum_minor
from .scalar import q

__all__ = [
    "DivisionFailure",
    "ExponentMismatch",
    "ExponentWitness",
    "InductionOrderError",
    "NotInvertible",
    "NotPressed",
    "PressedAssignment",
    "QIFunctionTable",
    "ReconstructionStep",
    "WcastFailure",
    "WcastViolation",
    "build_weights",
    "exponent_witness",
    "extend_f0",
    "lemma_violations",
    "reconstruct",
    "verify_wcast",
    "wcast_case",
]


class NotInvertible(ValueError):
    pass


class NotPressed(ValueError):
    pass


class WcastViolation(RuntimeError):
    def __init__(self, failures):
        super().__init__(f"{len(failures)} vertex weight pairs break the grid commutation law")
        self.failures = failures


class ExponentMismatch(ArithmeticError):
    pass


class DivisionFailure(ArithmeticError):
    pass


class InductionOrderError(RuntimeError):
    pass


# -- pressed assignments ------------------------------------------------------


class PressedAssignment:
    """Values f0 on the nonempty pressed corteges of an m x n matrix, in a torus.

    ``f0(EMPTY)`` is always 1.
    """

    def __init__(self, m: int, n: int, torus: TorusPresentation, values: Mapping[Cortege, AlgebraElement]):
        self.m, self.n = m, n
        self.torus = torus
        self.corteges = pressed_corteges(m, n)
        missing = [str(c) for c in self.corteges if c not in values]
        if missing:
            raise ValueError(f"no value for pressed corteges {missing}")
        extra = [str(c) for c in values if c not in self.corteges and c != EMPTY]
        if extra:
            raise ValueError(f"values given for non-pressed corteges {extra}")
        if EMPTY in values and values[EMPTY] != torus.one():
            raise ValueError("f0 must be normalized: f0(EMPTY) = 1")
        self.values = {c: values[c] for c in self.corteges}
        for c, v in self.values.items():
            if v.alg != torus:
                raise ValueError(f"value at {c} lives outside the assignment's torus")
            if not v.is_monomial() or not next(iter(v.terms.values())).is_unit():
                raise NotInvertible(f"value at {c} is not an invertible monomial: {v}")

    @classmethod
    def generic(cls, m: int, n: int) -> "PressedAssignment":
        """f0(pi) = y_pi in the torus on the pressed corteges, commuting as q-minors do."""
        cs = pressed_corteges(m, n)
        comm = []
        for a in cs:
            row = []
            for b in cs:
                if a == b:
                    row.append(0)
                    continue
                ok, c = interval_qc(a, b)
                if not ok:
                    raise ArithmeticError(f"pressed corteges {a}, {b} do not quasi-commute")
                row.append(c)
            comm.append(row)
        torus = TorusPresentation([f"y{c}" for c in cs], comm)
        return cls(m, n, torus, {c: torus.gen(k) for k, c in enumerate(cs)})

    def __getitem__(self, c: Cortege) -> AlgebraElement:
        if c == EMPTY:
            return self.torus.one()
        return self.values[c]

    def qc_violations(self) -> list[tuple[Cortege, Cortege, AlgebraElement]]:
        """Pairs whose values fail f0(a) f0(b) = q^c f0(b) f0(a) with c from interval_qc."""
        out = []
        for a, b in itertools.combinations(self.corteges, 2):
            _, c = interval_qc(a, b)
            va, vb = self.values[a], self.values[b]
            res = va * vb - (vb * va).scale(q(c))
            if res:
                out.append((a, b, res))
        return out


# -- weights ------------------------------------------------------------------


def build_weights(pa: PressedAssignment) -> dict[tuple[int, int], AlgebraElement]:
    out = {}
    for i in range(1, pa.m + 1):
        for j in range(1, pa.n + 1):
            top = pa[pressed_map(i, j)]
            if min(i, j) == 1:
                out[(i, j)] = top
                continue
            try:
                below = pa[pressed_map(i - 1, j - 1)].inverse()
            except NotDivisible as exc:
                raise NotInvertible(str(exc)) from None
            out[(i, j)] = below * top
    return out


def wcast_case(u: tuple[int, int], v: tuple[int, int]) -> tuple[str, int]:
    """Clause and exponent d with w(u) w(v) = q^d w(v) w(u) demanded of grid weights."""
    (i, j), (i2, j2) = u, v
    if i == i2 and j < j2:
        return "i", 1
    if i == i2 and j > j2:
        return "i", -1
    if i > i2 and j == j2:
        return "ii", -1
    if i < i2 and j == j2:
        return "ii", 1
    return "iii", 0


@dataclass(frozen=True)
class WcastFailure:
    u: tuple[int, int]
    v: tuple[int, int]
    clause: str
    expected: int
    residual: AlgebraElement

    def describe(self) -> str:
        return f"w{self.u} w{self.v} clause ({self.clause}), d={self.expected}: residual {self.residual}"


def verify_wcast(weights: Mapping[tuple[int, int], AlgebraElement], pa: PressedAssignment) -> list[WcastFailure]:
    out = []
    verts = sorted(weights)
    for u in verts:
        for v in verts:
            if u == v:
                continue
            clause, d = wcast_case(u, v)
            a, b = weights[u], weights[v]
            res = a * b - (b * a).scale(q(d))
            if res:
                out.append(WcastFailure(u, v, clause, d, res))
    return out


# -- exponent calculus ----------------------------------------------------------


def _alpha(P: tuple[int, ...], P2: tuple[int, ...]) -> int:
    if not P or not P2:
        return 0
    return min(sum(1 for x in P2 if x < P[0]), sum(1 for x in P if x > P2[-1]))


def _beta(P: tuple[int, ...], P2: tuple[int, ...]) -> int:
    if not P or not P2:
        return 0
    return min(sum(1 for x in P2 if x > P[-1]), sum(1 for x in P if x < P2[0]))


def _spread(P, P2) -> int:
    return _beta(P, P2) - _alpha(P, P2)


def _qc_exponent(a: Cortege, b: Cortege) -> int:
    if not a.rows or not b.rows:
        return 0
    ok, c = interval_qc(a, b)
    if not ok:
        raise ArithmeticError(f"{a} and {b} do not quasi-commute")
    return c


@dataclass(frozen=True)
class ExponentWitness:
    p1: Cortege
    p2: Cortege
    c1: int
    c2: int
    c3: int
    c4: int
    phi: int
    psi: int

    @property
    def d(self) -> int:
        return self.c1 - self.c2 - self.c3 + self.c4

    @property
    def consistent(self) -> bool:
        return self.d == self.phi + self.psi

    @property
    def vertices(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return pressed_position(self.p1), pressed_position(self.p2)


def exponent_witness(
    p1: Cortege, p2: Cortege, pa: PressedAssignment | None = None, strict: bool = True
) -> ExponentWitness:
    """Exponents c1..c4 of the four value pairs, and the row / column parts phi, psi."""
    for p in (p1, p2):
        if not p.rows or not p.is_pressed():
            raise NotPressed(f"{p} is not a nonempty pressed cortege")
        if pa is not None and not p.within(pa.m, pa.n):
            raise NotPressed(f"{p} outside {pa.m}x{pa.n}")
    (i, j), (i2, j2) = pressed_position(p1), pressed_position(p2)
    sub1 = p1.remove([i], [j])
    sub2 = p2.remove([i2], [j2])
    c1 = _qc_exponent(p1, p2)
    c2 = _qc_exponent(p1, sub2)
    c3 = _qc_exponent(sub1, p2)
    c4 = _qc_exponent(sub1, sub2)
    I, It, I2, It2 = p1.rows, sub1.rows, p2.rows, sub2.rows
    J, Jt, J2, Jt2 = p1.cols, sub1.cols, p2.cols, sub2.cols
    phi = _spread(I, I2) - _spread(I, It2) - _spread(It, I2) + _spread(It, It2)
    psi = _spread(J, J2) - _spread(J, Jt2) - _spread(Jt, J2) + _spread(Jt, Jt2)
    w = ExponentWitness(p1, p2, c1, c2, c3, c4, phi, psi)
    if strict and not w.consistent:
        raise ExponentMismatch(f"{p1}, {p2}: d={w.d} but phi+psi={phi + psi}")
    return w


def _part_clauses(name: str, val: int, s1: int, s2: int, a: int, b: int) -> list[tuple[str, bool]]:
    """Case-rule clauses for one coordinate: sizes s1, s2 and maxima a, b."""
    out = []
    if s1 != s2 and a != b:
        out.append((f"{name}: sizes differ, maxima differ => 0", val == 0))
    if s1 == s2:
        want = 1 if a < b else -1 if a > b else 0
        out.append((f"{name}: equal sizes => {want}", val == want))
    if a == b and s1 != s2:
        want = -1 if s1 > s2 else 1
        out.append((f"{name}: equal maxima => {want}", val == want))
    return out


def lemma_violations(w: ExponentWitness) -> list[str]:
    """Clauses of the phi / psi case rules that fail on this witness."""
    (i, j), (i2, j2) = w.vertices
    clauses = _part_clauses("phi", w.phi, w.p1.size, w.p2.size, i, i2)
    clauses += _part_clauses("psi", w.psi, w.p1.size, w.p2.size, j, j2)
    return [name for name, ok in clauses if not ok]


# -- QI-function tables -------------------------------------------------------


class QIFunctionTable(Mapping):
    """Total map from the corteges of an m x n matrix to algebra elements."""

    def __init__(self, m: int, n: int, values: Mapping[Cortege, AlgebraElement], matrix: QMatrix | None = None):
        self.m, self.n = m, n
        self.shape = (m, n)
        self._values = dict(values)
        self.matrix = matrix
        want = set(all_corteges(m, n))
        if set(self._values) != want:
            raise ValueError("table must cover every cortege exactly once")

    def __getitem__(self, c: Cortege) -> AlgebraElement:
        return self._values[c]

    def __iter__(self) -> Iterator[Cortege]:
        return iter(all_corteges(self.m, self.n))

    def __len__(self) -> int:
        return len(self._values)

    def restrict_to_pint(self) -> dict[Cortege, AlgebraElement]:
        return {c: self._values[c] for c in pressed_corteges(self.m, self.n)}

    def differences(self, other: Mapping[Cortege, AlgebraElement]) -> list[Cortege]:
        return [c for c in self if self[c] != other[c]]

    def to_json(self) -> dict[str, str]:
        return {str(c): str(self[c]) for c in self}

    @classmethod
    def from_json(cls, m: int, n: int, alg, data: Mapping[str, str]) -> "QIFunctionTable":
        return cls(m, n, {Cortege.parse(k): AlgebraElement.parse(alg, v) for k, v in data.items()})


def extend_f0(pa: PressedAssignment) -> QIFunctionTable:
    weights = build_weights(pa)
    failures = verify_wcast(weights, pa)
    if failures:
        raise WcastViolation(failures)
    P = path_matrix(ExtendedGrid(pa.m, pa.n), weights)
    return QIFunctionTable(pa.m, pa.n, {c: quantum_minor(P, c) for c in all_corteges(pa.m, pa.n)}, matrix=P)


# -- reconstruction ---------------------------------------------------------------


@dataclass
class ReconstructionStep:
    target: Cortege
    case: int
    pivot: Cortege
    inputs: list[Cortege] = field(default_factory=list)


def _joiner(A: tuple[int, ...], B: tuple[int, ...]):
    def mk(rows, cols) -> Cortege:
        return Cortege(A + tuple(rows), B + tuple(cols))

    return mk


def _first_gap(S: tuple[int, ...]) -> int:
    present = set(S)
    return next(x for x in range(S[0] + 1, S[-1]) if x not in present)


def reconstruct(
    f0_values: Mapping[Cortege, AlgebraElement],
    alg: TorusPresentation,
    m: int | None = None,
    n: int | None = None,
    trace: list[ReconstructionStep] | None = None,
) -> QIFunctionTable:
    """Recover a full QI-function table from its values on the pressed corteges."""
    if m is None or n is None:
        keys = [c for c in f0_values if c.rows]
        m = max(c.rows[-1] for c in keys) if m is None else m
        n = max(c.cols[-1] for c in keys) if n is None else n
    table: dict[Cortege, AlgebraElement] = {EMPTY: alg.one()}
    for c in pressed_corteges(m, n):
        if c not in f0_values:
            raise ValueError(f"missing pressed value at {c}")
        v = f0_values[c]
        if v.alg != alg:
            raise ValueError(f"value at {c} lives outside the given torus")
        if not v:
            raise DivisionFailure(f"pressed value at {c} is zero")
        table[c] = v

    def solve(target: Cortege, case: int, measure, pivot: Cortege, rhs_pairs, coeffs):
        others = [pivot] + [c for pair in rhs_pairs for c in pair]
        bound = measure(target)
        for c in others:
            if measure(c) >= bound:
                raise InductionOrderError(f"{c} does not precede {target} (case {case})")
            if c not in table:
                raise InductionOrderError(f"{c} needed for {target} is not yet known")
        rhs = AlgebraElement.zero(alg)
        for (a, b), k in zip(rhs_pairs, coeffs):
            rhs = rhs + (table[a] * table[b]).scale(q(k))
        p = table[pivot]
        if not p:
            raise DivisionFailure(f"zero pivot {pivot} for {target}")
        try:
            x = torus_left_divide(p, rhs)
        except NotDivisible as exc:
            raise DivisionFailure(f"{target}: {exc}") from None
        table[target] = x
        if trace is not None:
            trace.append(ReconstructionStep(target, case, pivot, others[1:]))

    everything = all_corteges(m, n)
    dodgson_order = sorted(
        (c for c in everything if c.rows and c.is_double_interval() and not c.is_pressed()),
        key=lambda c: (c.eta(), c),
    )
    for c in dodgson_order:
        I, J = c.rows, c.cols
        i, k, j, l = I[0] - 1, I[-1], J[0] - 1, J[-1]
        AB = c.remove([k], [l])
        solve(
            c, 3, Cortege.eta,
            AB.add([i], [j]),
            [(AB.add([i, k], [j, l]), AB), (AB.add([i], [l]), AB.add([k], [j]))],
            [0, 1],
        )

    plucker_order = sorted((c for c in everything if not c.is_double_interval() and c.rows), key=lambda c: (c.sigma(), c))
    for c in plucker_order:
        I, J = c.rows, c.cols
        if I[-1] - I[0] + 1 != len(I):
            i, k, j, l = I[0], I[-1], _first_gap(I), J[-1]
            mk = _joiner(tuple(x for x in I if x not in (i, k)), tuple(x for x in J if x != l))
            solve(
                c, 1, Cortege.sigma,
                mk([j], []),
                [(mk([i, j], [l]), mk([k], [])), (mk([j, k], [l]), mk([i], []))],
                [0, 0],
            )
        else:
            i, k, j, l = J[0], J[-1], _first_gap(J), I[-1]
            mk = _joiner(tuple(x for x in I if x != l), tuple(x for x in J if x not in (i, k)))
            solve(
                c, 2, Cortege.sigma,
                mk([], [j]),
                [(mk([l], [i, j]), mk([], [k])), (mk([l], [j, k]), mk([], [i]))],
                [0, 0],
            )
    return QIFunctionTable(m, n, table)
