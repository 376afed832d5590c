"""Degree-truncated free associative algebra over an exact scalar ring.

Words are tuples of generator indices; coefficients are rationals or Weil
elements (``weil_k`` records which).  Multiplication concatenates words and
drops anything longer than the truncation bound, which makes every element of
the augmentation ideal nilpotent and exp/log exact finite sums.  Truncation is
a property of the algebra: operands must agree on it, mixing is an error.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import (
    AlgebraMismatch,
    GeneratorCountMismatch,
    NotInvertible,
    NotNilpotent,
    NotUnipotent,
)
from .scalars import WeilElement

Word = tuple[int, ...]


class AssocPoly:
    """Noncommutative polynomial, truncated at word length ``trunc``."""

    __slots__ = ("alphabet", "trunc", "weil_k", "terms")

    def __init__(
        self,
        alphabet: tuple[str, ...],
        trunc: int,
        weil_k: int | None = None,
        terms: dict | None = None,
    ):
        if trunc < 1:
            raise ValueError(f"truncation must be positive, got {trunc}")
        self.alphabet = tuple(alphabet)
        self.trunc = trunc
        self.weil_k = weil_k
        clean: dict[Word, object] = {}
        if terms:
            for word, coeff in terms.items():
                if len(word) > trunc:
                    continue
                coeff = self._coerce(coeff)
                if coeff:
                    clean[word] = coeff
        self.terms = clean

    # -- scalar plumbing ----------------------------------------------------

    def _coerce(self, value):
        """Lift ints and rationals into the coefficient ring."""
        if self.weil_k is None:
            if isinstance(value, WeilElement):
                raise AlgebraMismatch("Weil coefficient in a rational algebra")
            return Fraction(value)
        if isinstance(value, WeilElement):
            if value.k != self.weil_k:
                raise GeneratorCountMismatch(
                    f"coefficient has {value.k} generators, algebra has {self.weil_k}"
                )
            return value
        return WeilElement.from_rational(self.weil_k, value)

    def _one(self):
        if self.weil_k is None:
            return Fraction(1)
        return WeilElement.one(self.weil_k)

    def _same_algebra(self, other: "AssocPoly") -> None:
        if (
            self.alphabet != other.alphabet
            or self.trunc != other.trunc
            or self.weil_k != other.weil_k
        ):
            raise AlgebraMismatch(
                f"algebras differ: ({self.alphabet}, trunc {self.trunc}, "
                f"weil {self.weil_k}) vs ({other.alphabet}, trunc {other.trunc}, "
                f"weil {other.weil_k})"
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, trunc, weil_k=None) -> "AssocPoly":
        return cls(alphabet, trunc, weil_k)

    @classmethod
    def one(cls, alphabet, trunc, weil_k=None) -> "AssocPoly":
        out = cls(alphabet, trunc, weil_k)
        out.terms[()] = out._one()
        return out

    @classmethod
    def generator(cls, alphabet, index, trunc, weil_k=None) -> "AssocPoly":
        if not 0 <= index < len(alphabet):
            raise AlgebraMismatch(f"generator index {index} outside alphabet")
        out = cls(alphabet, trunc, weil_k)
        out.terms[(index,)] = out._one()
        return out

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AssocPoly):
            return NotImplemented
        self._same_algebra(other)
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            total = out.get(word)
            total = coeff if total is None else total + coeff
            if total:
                out[word] = total
            else:
                out.pop(word, None)
        return AssocPoly(self.alphabet, self.trunc, self.weil_k, out)

    def __sub__(self, other):
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return AssocPoly(
            self.alphabet,
            self.trunc,
            self.weil_k,
            {w: -c for w, c in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, AssocPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, AssocPoly):
            return NotImplemented
        return self.scale(other)

    def scale(self, scalar) -> "AssocPoly":
        """Multiply every coefficient by a central scalar."""
        scalar = self._coerce(scalar)
        if not scalar:
            return AssocPoly(self.alphabet, self.trunc, self.weil_k)
        return AssocPoly(
            self.alphabet,
            self.trunc,
            self.weil_k,
            {w: c * scalar for w, c in self.terms.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.trunc == other.trunc
            and self.weil_k == other.weil_k
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ------------------------------------------------------------

    def constant_term(self):
        value = self.terms.get(())
        if value is None:
            return self._coerce(0)
        return value

    def degree_part(self, n: int) -> "AssocPoly":
        return AssocPoly(
            self.alphabet,
            self.trunc,
            self.weil_k,
            {w: c for w, c in self.terms.items() if len(w) == n},
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        return "·".join(self.alphabet[i] for i in word)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.sorted_terms():
            coeff_str = str(coeff)
            if self.weil_k is not None and len(coeff.coeffs) > 1:
                coeff_str = f"({coeff_str})"
            if word:
                parts.append(f"{coeff_str}*{self.word_str(word)}")
            else:
                parts.append(coeff_str)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AssocPoly({self})"

    def to_json_obj(self) -> dict:
        return {
            "trunc": self.trunc,
            "terms": [
                {"word": self.word_str(w), "coeff": str(c)}
                for w, c in self.sorted_terms()
            ],
        }


def poly_mul(a: AssocPoly, b: AssocPoly) -> AssocPoly:
    """Concatenation product, truncated at the common bound."""
    a._same_algebra(b)
    out: dict[Word, object] = {}
    trunc = a.trunc
    for w1, c1 in a.terms.items():
        room = trunc - len(w1)
        for w2, c2 in b.terms.items():
            if len(w2) > room:
                continue
            word = w1 + w2
            value = c1 * c2
            total = out.get(word)
            total = value if total is None else total + value
            if total:
                out[word] = total
            else:
                out.pop(word, None)
    return AssocPoly(a.alphabet, a.trunc, a.weil_k, out)


def poly_exp(a: AssocPoly) -> AssocPoly:
    """sum_i a^i / i! for a in the augmentation ideal (no constant term)."""
    if a.constant_term():
        raise NotNilpotent("exp needs a zero constant term")
    out = AssocPoly.one(a.alphabet, a.trunc, a.weil_k)
    power = out
    for i in range(1, a.trunc + 1):
        power = poly_mul(power, a)
        if not power:
            break
        out = out + power.scale(Fraction(1, factorial(i)))
    return out


def poly_log(a: AssocPoly) -> AssocPoly:
    """sum_i (-1)^(i+1) (a-1)^i / i for a with constant term 1."""
    if a.constant_term() != a._one():
        raise NotUnipotent("log needs constant term exactly 1")
    u = a - AssocPoly.one(a.alphabet, a.trunc, a.weil_k)
    out = AssocPoly.zero(a.alphabet, a.trunc, a.weil_k)
    power = AssocPoly.one(a.alphabet, a.trunc, a.weil_k)
    for i in range(1, a.trunc + 1):
        power = poly_mul(power, u)
        if not power:
            break
        out = out + power.scale(Fraction((-1) ** (i + 1), i))
    return out


def poly_inv(a: AssocPoly) -> AssocPoly:
    """Two-sided inverse of an element whose constant term is a unit."""
    c = a.constant_term()
    if isinstance(c, WeilElement):
        if not c.is_unit():
            raise NotInvertible("constant term is not a unit")
        c_inv = c.inverse()
    else:
        if not c:
            raise NotInvertible("constant term is zero")
        c_inv = Fraction(1) / c
    u = a.scale(c_inv) - AssocPoly.one(a.alphabet, a.trunc, a.weil_k)
    out = AssocPoly.one(a.alphabet, a.trunc, a.weil_k)
    power = out
    for _ in range(a.trunc):
        power = poly_mul(power, -u)
        if not power:
            break
        out = out + power
    return out.scale(c_inv)


def scalar_extend(a: AssocPoly, k: int) -> AssocPoly:
    """Base change from rational coefficients to the k-generator Weil algebra."""
    if a.weil_k is not None:
        raise AlgebraMismatch("polynomial already has Weil coefficients")
    return AssocPoly(
        a.alphabet,
        a.trunc,
        k,
        {w: WeilElement.from_rational(k, c) for w, c in a.terms.items()},
    )


def commutator(a: AssocPoly, b: AssocPoly) -> AssocPoly:
    return poly_mul(a, b) - poly_mul(b, a)
