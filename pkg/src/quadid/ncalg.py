"""Noncommutative algebras used by the engine.

Two presentations are supported:

* :class:`QMatrixPresentation` -- the algebra generated by the entries
  ``x[i,j]`` of an m x n matrix subject to Manin's relations, with elements
  kept in PBW normal form (linear combinations of lexicographically
  nondecreasing words).
* :class:`TorusPresentation` -- a quantum torus: invertible generators with
  ``u v = q^c(u,v) v u`` and nothing else. Monomials are integer exponent
  vectors, read as ordered products over the fixed generator order.

Elements of either kind are :class:`AlgebraElement` values.
"""

from __future__ import annotations

import random
import re
import threading
from typing import Callable, Iterable, Mapping, Sequence, Union

from .scalar import ONE, ZERO, LaurentScalar, NotDivisible, q

__all__ = [
    "AlgebraElement",
    "NotDivisible",
    "PresentationMismatch",
    "QMatrixPresentation",
    "TorusPresentation",
    "pbw_reduce",
    "rewrite_normal_form",
    "torus_left_divide",
]

Monomial = tuple[int, ...]
Coeff = Union[LaurentScalar, int]


class PresentationMismatch(ValueError):
    """Operands live in different algebras."""


def _acc(out: dict, mono, c: LaurentScalar) -> None:
    prev = out.get(mono)
    if prev is None:
        if c:
            out[mono] = c
    else:
        s = prev + c
        if s:
            out[mono] = s
        else:
            del out[mono]


class QMatrixPresentation:
    """Quantum m x n matrix algebra; generator ``x[i,j]`` has index (i-1)*n + (j-1).

    The index order is lexicographic on (row, column). Swapping an adjacent
    inversion ``y x`` (y > x) uses the Manin relation read as a rewrite rule::

        same row / same column:   y x -> q^-1 x y
        anti-diagonal pair:       y x -> x y
        diagonal pair (a<c,b<d):  y x -> x y - (q - q^-1) x[a,d] x[c,b]
    """

    kind = "qmatrix"

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ValueError("matrix dimensions must be positive")
        self.m = m
        self.n = n
        self.ngens = m * n
        self._rules = self._build_rules()
        self._memo: dict[tuple[Monomial, int], dict[Monomial, LaurentScalar]] = {}
        self._lock = threading.Lock()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QMatrixPresentation) and (self.m, self.n) == (other.m, other.n)

    def __hash__(self) -> int:
        return hash(("qmatrix", self.m, self.n))

    def __repr__(self) -> str:
        return f"QMatrixPresentation({self.m}, {self.n})"

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexError(f"x[{i},{j}] outside a {self.m}x{self.n} matrix")
        return (i - 1) * self.n + (j - 1)

    def position(self, g: int) -> tuple[int, int]:
        return g // self.n + 1, g % self.n + 1

    def generator_name(self, g: int) -> str:
        i, j = self.position(g)
        return f"x[{i},{j}]"

    def gen(self, i: int, j: int) -> "AlgebraElement":
        return AlgebraElement(self, {(self.index(i, j),): ONE})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(): ONE})

    def _build_rules(self):
        """rules[(y, x)] for y > x: (coefficient of x y, [(coef, (a, b)), ...])."""
        qinv = q(-1)
        corr = -(q(1) - q(-1))
        rules = {}
        for y in range(self.ngens):
            c, d = self.position(y)
            for x in range(y):
                a, b = self.position(x)
                if a == c or b == d:
                    rules[(y, x)] = (qinv, ())
                elif b > d:
                    rules[(y, x)] = (ONE, ())
                else:
                    rules[(y, x)] = (ONE, ((corr, (self.index(a, d), self.index(c, b))),))
        return rules

    def swap_rule(self, y: int, x: int):
        return self._rules[(y, x)]

    def mul_word_gen(self, word: Monomial, g: int) -> dict[Monomial, LaurentScalar]:
        """Normal form of (normal word) * generator."""
        if not word or word[-1] <= g:
            return {word + (g,): ONE}
        key = (word, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        y = word[-1]
        prefix = word[:-1]
        coef, corrections = self._rules[(y, g)]
        out: dict[Monomial, LaurentScalar] = {}
        # prefix * (coef g y)
        for w1, c1 in self.mul_word_gen(prefix, g).items():
            for w2, c2 in self.mul_word_gen(w1, y).items():
                _acc(out, w2, coef * c1 * c2)
        for cc, (a, b) in corrections:
            for w1, c1 in self.mul_word_gen(prefix, a).items():
                for w2, c2 in self.mul_word_gen(w1, b).items():
                    _acc(out, w2, cc * c1 * c2)
        with self._lock:
            self._memo.setdefault(key, out)
        return out

    def mul_monomials(self, u: Monomial, v: Monomial) -> dict[Monomial, LaurentScalar]:
        cur: dict[Monomial, LaurentScalar] = {u: ONE}
        for g in v:
            nxt: dict[Monomial, LaurentScalar] = {}
            for w, c in cur.items():
                for w2, c2 in self.mul_word_gen(w, g).items():
                    _acc(nxt, w2, c * c2)
            cur = nxt
        return cur

    def is_normal(self, mono: Monomial) -> bool:
        return all(a <= b for a, b in zip(mono, mono[1:]))

    def sort_key(self, mono: Monomial):
        return (len(mono), mono)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            name = self.generator_name(mono[i])
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def parse_monomial(self, text: str) -> Monomial:
        word: list[int] = []
        for m in re.finditer(r"x\[(\d+),(\d+)\](?:\^(\d+))?", text):
            g = self.index(int(m.group(1)), int(m.group(2)))
            word.extend([g] * int(m.group(3) or 1))
        if not self.is_normal(tuple(word)):
            raise ValueError(f"monomial {text!r} is not in PBW normal form")
        return tuple(word)


class TorusPresentation:
    """Quantum torus on named generators with integer commutation matrix.

    ``comm[a][b] = c`` means ``g_a g_b = q^c g_b g_a``. The matrix must be
    antisymmetric.
    """

    kind = "torus"

    def __init__(self, names: Sequence[str], comm: Sequence[Sequence[int]]):
        self.names = tuple(names)
        self.ngens = len(self.names)
        self.comm = tuple(tuple(int(c) for c in row) for row in comm)
        if len(self.comm) != self.ngens or any(len(r) != self.ngens for r in self.comm):
            raise ValueError("commutation matrix has the wrong shape")
        for a in range(self.ngens):
            if self.comm[a][a]:
                raise ValueError(f"comm[{a}][{a}] must be 0")
            for b in range(a):
                if self.comm[a][b] != -self.comm[b][a]:
                    raise ValueError(f"commutation matrix not antisymmetric at ({a},{b})")
        # pairs (a, b, c) with a > b and c = comm[a][b] != 0
        self._pairs = tuple(
            (a, b, self.comm[a][b]) for a in range(self.ngens) for b in range(a) if self.comm[a][b]
        )
        self._index = {name: k for k, name in enumerate(self.names)}
        self._zero = (0,) * self.ngens

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TorusPresentation)
            and self.names == other.names
            and self.comm == other.comm
        )

    def __hash__(self) -> int:
        return hash(("torus", self.names, self.comm))

    def __repr__(self) -> str:
        return f"TorusPresentation({len(self.names)} generators)"

    def index(self, name: str) -> int:
        return self._index[name]

    def gen(self, which: Union[int, str], power: int = 1) -> "AlgebraElement":
        k = which if isinstance(which, int) else self._index[which]
        e = [0] * self.ngens
        e[k] = power
        return AlgebraElement(self, {tuple(e): ONE})

    def monomial(self, exps: Sequence[int], coeff: Coeff = 1) -> "AlgebraElement":
        return AlgebraElement(self, {tuple(exps): LaurentScalar.coerce(coeff)})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {self._zero: ONE})

    def twist(self, e: Monomial, f: Monomial) -> int:
        """Exponent s with (g^e)(g^f) = q^s g^(e+f)."""
        s = 0
        for a, b, c in self._pairs:
            ea, fb = e[a], f[b]
            if ea and fb:
                s += c * ea * fb
        return s

    def commutation_exponent(self, e: Monomial, f: Monomial) -> int:
        """Exponent c with (g^e)(g^f) = q^c (g^f)(g^e)."""
        return self.twist(e, f) - self.twist(f, e)

    def mul_monomials(self, u: Monomial, v: Monomial) -> dict[Monomial, LaurentScalar]:
        return {tuple(a + b for a, b in zip(u, v)): q(self.twist(u, v))}

    def is_normal(self, mono: Monomial) -> bool:
        return len(mono) == self.ngens

    def sort_key(self, mono: Monomial):
        return (sum(mono), mono)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for k, e in enumerate(mono):
            if e == 1:
                parts.append(self.names[k])
            elif e:
                parts.append(f"{self.names[k]}^{e}")
        return "*".join(parts)

    def parse_monomial(self, text: str) -> Monomial:
        e = [0] * self.ngens
        if text:
            for part in text.split("*"):
                name, _, power = part.partition("^")
                e[self._index[name]] += int(power) if power else 1
        return tuple(e)


Presentation = Union[QMatrixPresentation, TorusPresentation]


class AlgebraElement:
    """Finite LaurentScalar combination of normal-form monomials."""

    __slots__ = ("alg", "_terms")

    def __init__(self, alg: Presentation, terms: Mapping[Monomial, Coeff] | None = None):
        self.alg = alg
        clean: dict[Monomial, LaurentScalar] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if not alg.is_normal(mono):
                    raise ValueError(f"monomial {mono} not in normal form")
                _acc(clean, mono, LaurentScalar.coerce(c))
        self._terms = clean

    @classmethod
    def _raw(cls, alg: Presentation, terms: dict[Monomial, LaurentScalar]) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.alg = alg
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, alg: Presentation) -> "AlgebraElement":
        return cls._raw(alg, {})

    @property
    def terms(self) -> dict[Monomial, LaurentScalar]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: self.alg.sort_key(t[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def _check(self, other: "AlgebraElement") -> None:
        if other.alg is not self.alg and other.alg != self.alg:
            raise PresentationMismatch(f"{self.alg!r} vs {other.alg!r}")

    def _lift(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        if isinstance(other, (int, LaurentScalar)):
            return self.alg.one() * LaurentScalar.coerce(other)
        raise TypeError(f"cannot combine AlgebraElement with {type(other).__name__}")

    def __add__(self, other) -> "AlgebraElement":
        other = self._lift(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            _acc(out, mono, c)
        return AlgebraElement._raw(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._raw(self.alg, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "AlgebraElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "AlgebraElement":
        return self._lift(other) - self

    def scale(self, c: Coeff) -> "AlgebraElement":
        c = LaurentScalar.coerce(c)
        if not c:
            return AlgebraElement.zero(self.alg)
        return AlgebraElement._raw(self.alg, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, LaurentScalar] = {}
        mul = self.alg.mul_monomials
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                ab = a * b
                for w, c in mul(u, v).items():
                    _acc(out, w, ab * c)
        return AlgebraElement._raw(self.alg, out)

    def __rmul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "AlgebraElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentScalar)):
            return self == self.alg.one().scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (other.alg is self.alg or other.alg == self.alg) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.alg, frozenset(self._terms.items())))

    def leading_term(self) -> tuple[Monomial, LaurentScalar]:
        """Largest monomial under the presentation's term order."""
        if not self._terms:
            raise ValueError("zero element has no leading term")
        mono = max(self._terms, key=self.alg.sort_key)
        return mono, self._terms[mono]

    def inverse(self) -> "AlgebraElement":
        """Inverse of a unit monomial ``±q^k g^e`` in a torus."""
        if self.alg.kind != "torus":
            raise NotDivisible("only torus monomials are invertible")
        if len(self._terms) != 1:
            raise NotDivisible(f"{self} is not a monomial")
        ((e, c),) = self._terms.items()
        if not c.is_unit():
            raise NotDivisible(f"coefficient {c} is not a unit")
        neg = tuple(-x for x in e)
        # g^e g^-e = q^s, so (c g^e)^-1 = c^-1 q^-s g^-e
        s = self.alg.twist(e, neg)
        return AlgebraElement._raw(self.alg, {neg: (c ** -1).shift(-s)})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            body = self.alg.format_monomial(mono)
            parts.append(f"({c})*{body}" if body else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({str(self)!r})"

    @classmethod
    def parse(cls, alg: Presentation, text: str) -> "AlgebraElement":
        """Read back the canonical text form."""
        text = text.strip()
        if text == "0":
            return cls.zero(alg)
        terms: dict[Monomial, LaurentScalar] = {}
        pos = 0
        while pos < len(text):
            if text[pos] != "(":
                raise ValueError(f"expected '(' at {pos} in {text!r}")
            close = text.index(")", pos)
            coef = LaurentScalar.parse(text[pos + 1 : close])
            pos = close + 1
            end = text.find(" + (", pos)
            if end < 0:
                end = len(text)
            body = text[pos:end]
            if body.startswith("*"):
                body = body[1:]
            if alg.kind == "torus":
                mono = alg.parse_monomial(body)
            else:
                mono = alg.parse_monomial(body) if body else ()
            _acc(terms, mono, coef)
            pos = end + 3 if end < len(text) else end
        return cls._raw(alg, terms)


def pbw_reduce(alg: QMatrixPresentation, word: Iterable[Union[int, tuple[int, int]]]) -> AlgebraElement:
    """PBW normal form of an arbitrary word of generators.

    Letters are generator indices or (row, column) pairs.
    """
    letters = [alg.index(*g) if isinstance(g, tuple) else g for g in word]
    cur: dict[Monomial, LaurentScalar] = {(): ONE}
    for g in letters:
        nxt: dict[Monomial, LaurentScalar] = {}
        for w, c in cur.items():
            for w2, c2 in alg.mul_word_gen(w, g).items():
                _acc(nxt, w2, c * c2)
        cur = nxt
    return AlgebraElement._raw(alg, cur)


def rewrite_normal_form(
    alg: QMatrixPresentation,
    word: Iterable[int],
    choose: Callable[[Sequence[int]], int] | None = None,
    rng: random.Random | None = None,
) -> AlgebraElement:
    """Reduce a word by plain adjacent-inversion rewriting.

    Independent of the memoized product in :meth:`QMatrixPresentation.mul_word_gen`.
    ``choose`` picks which inversion position to rewrite among the candidates;
    by default a random one (``rng``) or the leftmost.
    """
    if choose is None:
        if rng is not None:
            choose = lambda cands: rng.choice(cands)  # noqa: E731
        else:
            choose = lambda cands: cands[0]  # noqa: E731
    done: dict[Monomial, LaurentScalar] = {}
    pending: dict[Monomial, LaurentScalar] = {tuple(word): ONE}
    while pending:
        w, c = pending.popitem()
        cands = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not cands:
            _acc(done, w, c)
            continue
        p = choose(cands)
        coef, corrections = alg.swap_rule(w[p], w[p + 1])
        head, tail = w[:p], w[p + 2 :]
        _acc(pending, head + (w[p + 1], w[p]) + tail, c * coef)
        for cc, (a, b) in corrections:
            _acc(pending, head + (a, b) + tail, c * cc)
    return AlgebraElement._raw(alg, done)


def torus_left_divide(p: AlgebraElement, r: AlgebraElement) -> AlgebraElement:
    """Return the unique x with ``p * x == r`` in a quantum torus.

    Leading-term elimination under graded lex order. The quotient support is
    confined to a coordinate box determined by the extreme exponents of p and
    r, which bounds the loop; leaving the box, or an inexact coefficient
    quotient, raises :class:`NotDivisible`.
    """
    p._check(r)
    alg = p.alg
    if alg.kind != "torus":
        raise PresentationMismatch("left division is only available in a quantum torus")
    if p.is_zero():
        raise ZeroDivisionError("division by zero element")
    if r.is_zero():
        return AlgebraElement.zero(alg)
    N = alg.ngens
    lo = [min(e[k] for e in r._terms) - min(e[k] for e in p._terms) for k in range(N)]
    hi = [max(e[k] for e in r._terms) - max(e[k] for e in p._terms) for k in range(N)]
    if any(a > b for a, b in zip(lo, hi)):
        raise NotDivisible(f"{r} is not a left multiple of {p}")
    lt_p, lc_p = p.leading_term()
    quot: dict[Monomial, LaurentScalar] = {}
    rem = r
    while rem:
        lt_r, lc_r = rem.leading_term()
        t = tuple(a - b for a, b in zip(lt_r, lt_p))
        if any(not (lo[k] <= t[k] <= hi[k]) for k in range(N)):
            raise NotDivisible(f"{r} is not a left multiple of {p}")
        # p * (c g^t) has leading coefficient lc_p * c * q^twist(lt_p, t)
        c = lc_r.exact_divide(lc_p.shift(alg.twist(lt_p, t)))
        quot[t] = c
        rem = rem - p * AlgebraElement._raw(alg, {t: c})
    return AlgebraElement._raw(alg, quot)
