"""Laurent polynomials in a single formal parameter ``q`` with integer coefficients.

This is the coefficient ring of every algebra in the package. Values are
immutable and kept canonical (one entry per exponent, zero coefficients
pruned), so ``a == 0`` is a structural test.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

__all__ = ["LaurentScalar", "NotDivisible", "q", "ZERO", "ONE"]


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist."""


ScalarLike = Union["LaurentScalar", int]


class LaurentScalar:
    """Sum of a_k q^k with finitely many nonzero integer a_k."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None):
        clean: dict[int, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, a in items:
                if a:
                    s = clean.get(k, 0) + a
                    if s:
                        clean[k] = s
                    else:
                        clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentScalar":
        # terms must already be canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentScalar":
        return cls._raw({0: c} if c else {})

    @classmethod
    def q_power(cls, k: int, coeff: int = 1) -> "LaurentScalar":
        return cls._raw({k: coeff} if coeff else {})

    @staticmethod
    def coerce(x: ScalarLike) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, int):
            return LaurentScalar.const(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as a Laurent scalar")

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ±q^k, the invertible elements of Z[q, q^-1]."""
        if len(self._terms) != 1:
            return False
        (a,) = self._terms.values()
        return a in (1, -1)

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: ScalarLike) -> "LaurentScalar":
        if isinstance(other, int):
            other = LaurentScalar.const(other)
        elif not isinstance(other, LaurentScalar):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, a in other._terms.items():
            s = out.get(k, 0) + a
            if s:
                out[k] = s
            else:
                del out[k]
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar._raw({k: -a for k, a in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> "LaurentScalar":
        if isinstance(other, int):
            other = LaurentScalar.const(other)
        elif not isinstance(other, LaurentScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "LaurentScalar":
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "LaurentScalar":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentScalar._raw({k: a * other for k, a in self._terms.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        left, right = self._terms, other._terms
        if not left or not right:
            return ZERO
        if len(right) == 1:
            ((kb, b),) = right.items()
            return LaurentScalar._raw({k + kb: a * b for k, a in left.items()})
        if len(left) == 1:
            ((ka, a),) = left.items()
            return LaurentScalar._raw({ka + k: a * b for k, b in right.items()})
        out: dict[int, int] = {}
        for ka, a in left.items():
            for kb, b in right.items():
                k = ka + kb
                out[k] = out.get(k, 0) + a * b
        return LaurentScalar._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentScalar._raw({e + k: a for e, a in self._terms.items()})

    def __pow__(self, e: int) -> "LaurentScalar":
        if e < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not invertible")
            ((k, a),) = self._terms.items()
            return LaurentScalar.q_power(-k * (-e), a ** (-e))
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def exact_divide(self, divisor: ScalarLike) -> "LaurentScalar":
        """Return x with divisor * x == self, or raise NotDivisible."""
        divisor = LaurentScalar.coerce(divisor)
        if not divisor._terms:
            raise ZeroDivisionError("division by the zero scalar")
        if not self._terms:
            return ZERO
        if len(divisor._terms) == 1:
            ((kd, d),) = divisor._terms.items()
            out = {}
            for k, a in self._terms.items():
                qt, r = divmod(a, d)
                if r:
                    raise NotDivisible(f"{self} is not divisible by {divisor}")
                out[k - kd] = qt
            return LaurentScalar._raw(out)
        # long division from the top degree; quotient degrees are bounded below
        d_hi, d_lo = divisor.max_exp(), divisor.min_exp()
        lead = divisor._terms[d_hi]
        lower_bound = self.min_exp() - d_lo
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            k = top - d_hi
            if k < lower_bound:
                raise NotDivisible(f"{self} is not divisible by {divisor}")
            c, r = divmod(rem[top], lead)
            if r:
                raise NotDivisible(f"{self} is not divisible by {divisor}")
            quot[k] = c
            for e, a in divisor._terms.items():
                s = rem.get(e + k, 0) - c * a
                if s:
                    rem[e + k] = s
                else:
                    rem.pop(e + k, None)
        return LaurentScalar._raw(quot)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, LaurentScalar):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, a in sorted(self._terms.items()):
            mag = abs(a)
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = f"q^{k}"
            else:
                body = f"{mag}*q^{k}"
            if not parts:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(("- " if a < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentScalar":
        """Inverse of ``str``: accepts e.g. ``"-1 + q^2"`` or ``"3*q^-1 - q^4"``."""
        s = text.replace(" ", "")
        if s == "0":
            return ZERO
        if not s:
            raise ValueError("empty scalar")
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, int] = {}
        i = 0
        while i < len(s):
            sign = -1 if s[i] == "-" else 1
            i += 1
            j = i
            while j < len(s) and (s[j] not in "+-" or s[j - 1] == "^"):
                j += 1
            chunk = s[i:j]
            i = j
            if "q" in chunk:
                coef_part, _, exp_part = chunk.partition("q")
                coef = int(coef_part.rstrip("*")) if coef_part else 1
                if not exp_part.startswith("^"):
                    raise ValueError(f"bad scalar term {chunk!r}")
                k = int(exp_part[1:])
            else:
                coef, k = int(chunk), 0
            out[k] = out.get(k, 0) + sign * coef
        return cls(out)


ZERO = LaurentScalar._raw({})
ONE = LaurentScalar._raw({0: 1})


def q(k: int = 1) -> LaurentScalar:
    """The scalar q^k."""
    return LaurentScalar.q_power(k)
