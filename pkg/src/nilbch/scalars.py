"""Exact commutative scalar rings.

Two rings live here: arbitrary-precision rationals (the standard library
``fractions.Fraction``, which already keeps gcd-reduced canonical form with a
positive denominator) and the Weil algebra Q[d1..dk]/(d1^2, ..., dk^2) of
square-zero infinitesimals.  A Weil element is stored sparsely as a map from
subsets of {1..k} (encoded as bitmasks) to nonzero rational coefficients; the
empty subset holds the scalar part.  Multiplying two terms whose subsets
overlap yields zero, which is the whole point of the ring.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations

from .errors import DivisionByZero, GeneratorCountMismatch

Rational = Fraction

MAX_GENERATORS = 16

_RATIONAL_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?\Z")


def format_rational(q: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when the denominator is 1)."""
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    """Parse the ``-?[0-9]+(/[1-9][0-9]*)?`` text format."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def rat_arith(op: str, a: Fraction, b: Fraction | None = None) -> Fraction:
    """Exact rational arithmetic with an explicit division-by-zero error."""
    a = Fraction(a)
    if op == "neg":
        return -a
    b = Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero("rational division by zero")
        return a / b
    raise ValueError(f"unknown rational operation: {op!r}")


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_GENERATORS:
        raise GeneratorCountMismatch(
            f"generator count {k} outside 1..{MAX_GENERATORS}"
        )


class WeilElement:
    """Element of Q[d1..dk]/(di^2 = 0).

    Immutable by convention: no method mutates ``coeffs`` after construction,
    so values can be shared freely across threads.
    """

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: dict[int, Fraction] | None = None):
        _check_k(k)
        self.k = k
        clean: dict[int, Fraction] = {}
        if coeffs:
            limit = 1 << k
            for mask, value in coeffs.items():
                if not 0 <= mask < limit:
                    raise GeneratorCountMismatch(
                        f"subset mask {mask} needs more than {k} generators"
                    )
                value = Fraction(value)
                if value:
                    clean[mask] = value
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "WeilElement":
        return cls(k)

    @classmethod
    def one(cls, k: int) -> "WeilElement":
        return cls(k, {0: Fraction(1)})

    @classmethod
    def from_rational(cls, k: int, value) -> "WeilElement":
        return cls(k, {0: Fraction(value)})

    @classmethod
    def generator(cls, k: int, index: int) -> "WeilElement":
        """The infinitesimal d_index, with 1-based index as in d1..dk."""
        if not 1 <= index <= k:
            raise GeneratorCountMismatch(f"generator index {index} outside 1..{k}")
        return cls(k, {1 << (index - 1): Fraction(1)})

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "WeilElement | None":
        if isinstance(other, WeilElement):
            if other.k != self.k:
                raise GeneratorCountMismatch(
                    f"mixed generator counts {self.k} and {other.k}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return WeilElement.from_rational(self.k, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for mask, value in other.coeffs.items():
            total = out.get(mask, Fraction(0)) + value
            if total:
                out[mask] = total
            else:
                out.pop(mask, None)
        return WeilElement(self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return WeilElement(self.k, {m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            factor = Fraction(other)
            if not factor:
                return WeilElement(self.k)
            return WeilElement(
                self.k, {m: v * factor for m, v in self.coeffs.items()}
            )
        if not isinstance(other, WeilElement):
            return NotImplemented
        if other.k != self.k:
            raise GeneratorCountMismatch(
                f"mixed generator counts {self.k} and {other.k}"
            )
        out: dict[int, Fraction] = {}
        for m1, v1 in self.coeffs.items():
            for m2, v2 in other.coeffs.items():
                if m1 & m2:
                    continue  # repeated generator: d_i^2 = 0
                mask = m1 | m2
                total = out.get(mask, Fraction(0)) + v1 * v2
                if total:
                    out[mask] = total
                else:
                    out.pop(mask, None)
        return WeilElement(self.k, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Weil powers take a nonnegative integer exponent")
        out = WeilElement.one(self.k)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeilElement.from_rational(self.k, other)
        if not isinstance(other, WeilElement):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __hash__(self):
        return hash((self.k, frozenset(self.coeffs.items())))

    # -- queries -----------------------------------------------------------

    def scalar_part(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))

    def is_unit(self) -> bool:
        return bool(self.scalar_part())

    def inverse(self) -> "WeilElement":
        """Exact inverse via the finite geometric series.

        Writing a = c + m with c the scalar part and m nilpotent,
        a^-1 = (1/c) sum_i (-m/c)^i, and the sum stops at i = k.
        """
        c = self.scalar_part()
        if not c:
            raise DivisionByZero("Weil element with zero scalar part has no inverse")
        nil = (self - c) * (Fraction(-1) / c)
        out = WeilElement.one(self.k)
        power = WeilElement.one(self.k)
        for _ in range(self.k):
            power = power * nil
            if not power:
                break
            out = out + power
        return out * (Fraction(1) / c)

    # -- text format -------------------------------------------------------

    def _term_str(self, mask: int, value: Fraction) -> str:
        gens = "".join(f"d{i + 1}" for i in range(self.k) if mask & (1 << i))
        if not gens:
            return format_rational(value)
        if value == 1:
            return gens
        return f"{format_rational(value)}*{gens}"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for mask in sorted(self.coeffs):
            value = self.coeffs[mask]
            body = self._term_str(mask, abs(value))
            if not parts:
                parts.append(body if value > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if value > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"WeilElement(k={self.k}, {self})"


def weil_mul(a: WeilElement, b: WeilElement) -> WeilElement:
    """Product in the Weil algebra; the generator counts must agree."""
    if not isinstance(a, WeilElement) or not isinstance(b, WeilElement):
        raise TypeError("weil_mul expects two WeilElements")
    return a * b


def weil_sum(n: int) -> WeilElement:
    """d1 + ... + dn in the n-generator Weil algebra."""
    _check_k(n)
    return WeilElement(n, {1 << i: Fraction(1) for i in range(n)})


def weil_power_sum(n: int, m: int) -> WeilElement:
    """(d1 + ... + dn)^m / m! as the m-th elementary symmetric polynomial.

    Built directly as the sum of all products of m distinct generators, which
    equals the divided power by the square-zero relations; zero once m > n.
    """
    _check_k(n)
    if m < 1:
        raise ValueError(f"exponent must be at least 1, got {m}")
    if m > n:
        return WeilElement.zero(n)
    coeffs: dict[int, Fraction] = {}
    for subset in combinations(range(n), m):
        mask = 0
        for i in subset:
            mask |= 1 << i
        coeffs[mask] = Fraction(1)
    return WeilElement(n, coeffs)
