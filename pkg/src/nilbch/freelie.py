"""Free Lie algebra on named generators with a Lyndon (Hall) basis.

Basis monomials are nested tuples: a bare ``int`` is a generator index and a
pair ``(left, right)`` is the bracket [left, right].  A monomial is *standard*
when its word of leaves is a Lyndon word and the tree is the standard
right-factorization bracketing of that word.  Standard monomials form a basis,
so equality of Lie elements reduces to comparing coefficient maps.

Brackets of two standard monomials are normalized by the classical rewriting:
antisymmetry reorders the arguments, and when the pair [u, v] is not itself
standard the Jacobi identity [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]] is applied
recursively.  Termination follows from the usual Lyndon-order argument.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from . import assoc
from .errors import AlphabetMismatch, NotAugmentation

Mono = Union[int, tuple]

DEFAULT_MAX_DEGREE = 6
HARD_DEGREE_CAP = 10


def default_names(k: int) -> tuple[str, ...]:
    """X, Y for two generators; X1..Xk otherwise."""
    if k == 1:
        return ("X",)
    if k == 2:
        return ("X", "Y")
    return tuple(f"X{i + 1}" for i in range(k))


# ---------------------------------------------------------------------------
# monomials


def mono_degree(m: Mono) -> int:
    if isinstance(m, int):
        return 1
    return mono_degree(m[0]) + mono_degree(m[1])


@lru_cache(maxsize=None)
def mono_word(m: Mono) -> tuple[int, ...]:
    """The word of generator leaves, read left to right."""
    if isinstance(m, int):
        return (m,)
    return mono_word(m[0]) + mono_word(m[1])


def mono_str(m: Mono, names: tuple[str, ...]) -> str:
    if isinstance(m, int):
        return names[m]
    return f"[{mono_str(m[0], names)},{mono_str(m[1], names)}]"


def parse_monomial(text: str, names: tuple[str, ...]) -> Mono:
    """Parse the grammar MONO := NAME | "[" MONO "," MONO "]"."""
    index = {name: i for i, name in enumerate(names)}

    def parse(pos: int) -> tuple[Mono, int]:
        if pos >= len(text):
            raise ValueError(f"unexpected end of monomial: {text!r}")
        if text[pos] == "[":
            left, pos = parse(pos + 1)
            if pos >= len(text) or text[pos] != ",":
                raise ValueError(f"expected ',' at {pos} in {text!r}")
            right, pos = parse(pos + 1)
            if pos >= len(text) or text[pos] != "]":
                raise ValueError(f"expected ']' at {pos} in {text!r}")
            return (left, right), pos + 1
        end = pos
        while end < len(text) and text[end] not in "[],":
            end += 1
        name = text[pos:end]
        if name not in index:
            raise ValueError(f"unknown generator {name!r} in {text!r}")
        return index[name], end

    mono, pos = parse(0)
    if pos != len(text):
        raise ValueError(f"trailing input at {pos} in {text!r}")
    return mono


def is_lyndon(word: tuple[int, ...]) -> bool:
    """A nonempty word strictly smaller than all of its proper suffixes."""
    if not word:
        return False
    return all(word < word[i:] for i in range(1, len(word)))


def lyndon_words(k: int, n: int) -> list[tuple[int, ...]]:
    """All Lyndon words of length exactly n over 0..k-1, in lexicographic order.

    Duval's generation of the words of length at most n, filtered to length n.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 generators and degree n >= 1")
    out = []
    w = [0]
    while w:
        if len(w) == n:
            out.append(tuple(w))
        w = [w[i % len(w)] for i in range(n)]
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


@lru_cache(maxsize=None)
def standard_bracketing(word: tuple[int, ...]) -> Mono:
    """Right standard factorization bracketing of a Lyndon word."""
    if len(word) == 1:
        return word[0]
    if not is_lyndon(word):
        raise ValueError(f"{word} is not a Lyndon word")
    split = min(range(1, len(word)), key=lambda i: word[i:])
    return (standard_bracketing(word[:split]), standard_bracketing(word[split:]))


def hall_basis(k: int, n: int) -> list[Mono]:
    """Standard basis monomials of exact degree n, sorted by canonical word."""
    return [standard_bracketing(w) for w in lyndon_words(k, n)]


def is_standard(m: Mono) -> bool:
    word = mono_word(m)
    return is_lyndon(word) and standard_bracketing(word) == m


@lru_cache(maxsize=None)
def _bracket_basis(u: Mono, v: Mono) -> tuple[tuple[Mono, Fraction], ...]:
    """[u, v] for standard monomials u, v, expanded over standard monomials."""
    wu, wv = mono_word(u), mono_word(v)
    if wu == wv:
        return ()
    if wu > wv:
        return tuple((m, -c) for m, c in _bracket_basis(v, u))
    # wu < wv, so the concatenation is Lyndon; [u, v] is standard exactly when
    # u is a letter or the right factor of u is >= v.
    if isinstance(u, int) or mono_word(u[1]) >= wv:
        return (((u, v), Fraction(1)),)
    u1, u2 = u
    out: dict[Mono, Fraction] = {}
    for m, c in _bracket_basis(u1, v):
        for m2, c2 in _bracket_basis(m, u2):
            total = out.get(m2, Fraction(0)) + c * c2
            if total:
                out[m2] = total
            else:
                del out[m2]
    for m, c in _bracket_basis(u2, v):
        for m2, c2 in _bracket_basis(u1, m):
            total = out.get(m2, Fraction(0)) + c * c2
            if total:
                out[m2] = total
            else:
                del out[m2]
    return tuple(sorted(out.items(), key=lambda item: mono_word(item[0])))


# ---------------------------------------------------------------------------
# Lie elements


class LieElement:
    """Exact linear combination of standard bracket monomials, truncated."""

    __slots__ = ("alphabet", "max_degree", "terms")

    def __init__(
        self,
        alphabet: tuple[str, ...],
        max_degree: int = DEFAULT_MAX_DEGREE,
        terms: dict[Mono, Fraction] | None = None,
    ):
        if not 1 <= max_degree <= HARD_DEGREE_CAP:
            raise ValueError(f"max_degree {max_degree} outside 1..{HARD_DEGREE_CAP}")
        self.alphabet = tuple(alphabet)
        self.max_degree = max_degree
        clean: dict[Mono, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff and mono_degree(mono) <= max_degree:
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, alphabet, max_degree: int = DEFAULT_MAX_DEGREE) -> "LieElement":
        return cls(alphabet, max_degree)

    @classmethod
    def generator(
        cls, alphabet, index: int, max_degree: int = DEFAULT_MAX_DEGREE
    ) -> "LieElement":
        if not 0 <= index < len(alphabet):
            raise AlphabetMismatch(f"generator index {index} outside alphabet")
        return cls(alphabet, max_degree, {index: Fraction(1)})

    def _compatible(self, other: "LieElement") -> None:
        if self.alphabet != other.alphabet or self.max_degree != other.max_degree:
            raise AlphabetMismatch(
                "Lie elements live in different algebras "
                f"({self.alphabet} deg {self.max_degree} vs "
                f"{other.alphabet} deg {other.max_degree})"
            )

    def __add__(self, other: "LieElement") -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        self._compatible(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = out.get(mono, Fraction(0)) + coeff
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return LieElement(self.alphabet, self.max_degree, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement(
            self.alphabet, self.max_degree, {m: -c for m, c in self.terms.items()}
        )

    def __mul__(self, scalar) -> "LieElement":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        return LieElement(
            self.alphabet,
            self.max_degree,
            {m: c * scalar for m, c in self.terms.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def bracket(self, other: "LieElement") -> "LieElement":
        return lie_bracket(self, other)

    def degree_part(self, n: int) -> "LieElement":
        return LieElement(
            self.alphabet,
            self.max_degree,
            {m: c for m, c in self.terms.items() if mono_degree(m) == n},
        )

    def degrees(self) -> set[int]:
        return {mono_degree(m) for m in self.terms}

    def sorted_terms(self) -> list[tuple[Mono, Fraction]]:
        return sorted(
            self.terms.items(), key=lambda item: (mono_degree(item[0]), mono_word(item[0]))
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            body = mono_str(mono, self.alphabet)
            if abs(coeff) != 1:
                body = f"{abs(coeff)}*{body}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LieElement({self})"

    def to_json_terms(self) -> list[dict[str, str]]:
        return [
            {"monomial": mono_str(m, self.alphabet), "coeff": str(c)}
            for m, c in self.sorted_terms()
        ]


def lie_bracket(a: LieElement, b: LieElement) -> LieElement:
    """Bilinear bracket, rewritten to the standard basis and truncated."""
    a._compatible(b)
    out: dict[Mono, Fraction] = {}
    for m1, c1 in a.terms.items():
        d1 = mono_degree(m1)
        for m2, c2 in b.terms.items():
            if d1 + mono_degree(m2) > a.max_degree:
                continue
            factor = c1 * c2
            for mono, coeff in _bracket_basis(m1, m2):
                total = out.get(mono, Fraction(0)) + factor * coeff
                if total:
                    out[mono] = total
                else:
                    del out[mono]
    return LieElement(a.alphabet, a.max_degree, out)


def apply_ad_series(coeffs, X: LieElement, V: LieElement) -> LieElement:
    """sum_p coeffs[p] * (ad X)^p (V), truncated; (ad X)^0 is the identity."""
    X._compatible(V)
    out = LieElement.zero(X.alphabet, X.max_degree)
    power = V
    for p, coeff in enumerate(coeffs):
        if p > 0:
            power = lie_bracket(X, power)
        if not power:
            break
        out = out + Fraction(coeff) * power
    return out


# ---------------------------------------------------------------------------
# embedding into, and projection from, the associative algebra


@lru_cache(maxsize=None)
def _embed_mono(m: Mono) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Expansion of a bracket monomial as words, via [a,b] = ab - ba."""
    if isinstance(m, int):
        return (((m,), Fraction(1)),)
    left, right = _embed_mono(m[0]), _embed_mono(m[1])
    out: dict[tuple[int, ...], Fraction] = {}
    for w1, c1 in left:
        for w2, c2 in right:
            for word, sign in ((w1 + w2, 1), (w2 + w1, -1)):
                total = out.get(word, Fraction(0)) + sign * c1 * c2
                if total:
                    out[word] = total
                else:
                    del out[word]
    return tuple(sorted(out.items()))


def lie_embed(a: LieElement) -> "assoc.AssocPoly":
    """Realize brackets as associative commutators; generators become words."""
    terms: dict[tuple[int, ...], Fraction] = {}
    for mono, coeff in a.terms.items():
        for word, c in _embed_mono(mono):
            total = terms.get(word, Fraction(0)) + coeff * c
            if total:
                terms[word] = total
            else:
                del terms[word]
    return assoc.AssocPoly(a.alphabet, a.max_degree, None, terms)


@lru_cache(maxsize=None)
def _left_nested(word: tuple[int, ...]) -> tuple[tuple[Mono, Fraction], ...]:
    """[g1,[g2,[...,gn]]] for a word, expanded over standard monomials."""
    if len(word) == 1:
        return ((word[0], Fraction(1)),)
    out: dict[Mono, Fraction] = {}
    for mono, coeff in _left_nested(word[1:]):
        for m2, c2 in _bracket_basis(word[0], mono):
            total = out.get(m2, Fraction(0)) + coeff * c2
            if total:
                out[m2] = total
            else:
                del out[m2]
    return tuple(sorted(out.items(), key=lambda item: mono_word(item[0])))


def dynkin_project(p: "assoc.AssocPoly") -> LieElement:
    """Dynkin-Specht-Wever projection onto the free Lie algebra.

    Each word g1..gn maps to (1/n)[g1,[g2,[...,gn]]]; Lie elements of
    homogeneous degree are fixed, so this is a left inverse of lie_embed.
    """
    if p.weil_k is not None:
        raise NotAugmentation("projection is defined over rational coefficients")
    if () in p.terms:
        raise NotAugmentation("polynomial has a nonzero constant term")
    out: dict[Mono, Fraction] = {}
    for word, coeff in p.terms.items():
        factor = Fraction(coeff, len(word))
        for mono, c in _left_nested(word):
            total = out.get(mono, Fraction(0)) + factor * c
            if total:
                out[mono] = total
            else:
                del out[mono]
    return LieElement(p.alphabet, p.trunc, out)
