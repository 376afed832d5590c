"""BCH and Zassenhaus series from two sources.

The *classical* series are computed from first principles in the truncated
associative algebra: log(exp X . exp Y) projected onto the Lie algebra for
BCH, and a peeling recursion for the Zassenhaus factors.  No classical
coefficient is ever hard-coded.

The *tabulated* series come from formulas stated over sums d1+...+dn of
square-zero infinitesimals.  Each table entry keeps the displayed scalar
prefactor in its raw shape: ``em(m)`` is the elementary symmetric sum of all
products of m distinct infinitesimals, ``pow(m)`` is a rational multiple of
(d1+...+dn)^m.  The two shapes are identified through the divided-power rule
(d1+...+dn)^m / m! = em(m), applied exactly once when a table is converted to
a t-graded Lie series.  Where a theorem displays two forms whose prefactors
disagree under that rule, both forms are kept so the discrepancy stays
observable.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .assoc import AssocPoly, poly_exp, poly_log, poly_mul
from .errors import (
    AlphabetMismatch,
    DegreeOutOfRange,
    KindMismatch,
    NotTabulated,
)
from .freelie import (
    LieElement,
    apply_ad_series,
    dynkin_project,
    lie_bracket,
    lie_embed,
)

ORACLE_DEGREE_CAP = 6

BCH_ALPHABET = ("X", "Y")


# ---------------------------------------------------------------------------
# graded containers


class GradedLieSeries:
    """Per-degree homogeneous Lie components of a BCH-type exponent."""

    kind = "bch"

    def __init__(self, alphabet, order: int, source: str, degrees: dict[int, LieElement]):
        self.alphabet = tuple(alphabet)
        self.order = order
        self.source = source
        self.degrees = dict(degrees)

    def component(self, n: int) -> LieElement:
        part = self.degrees.get(n)
        if part is None:
            return LieElement.zero(self.alphabet, max(n, 1))
        return part

    def as_element(self, max_degree: int | None = None) -> LieElement:
        """Sum of all components in a single truncated Lie element."""
        bound = max_degree if max_degree is not None else self.order
        total = LieElement.zero(self.alphabet, bound)
        for n in sorted(self.degrees):
            part = self.degrees[n]
            total = total + LieElement(self.alphabet, bound, part.terms)
        return total

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source,
            "degrees": [
                {"n": n, "terms": self.component(n).to_json_terms()}
                for n in range(1, self.order + 1)
            ],
        }


class ZassenhausFactors:
    """Factor exponents C[2..N] of exp(X+Y) = exp X . exp Y . prod exp C[n]."""

    kind = "zassenhaus"

    def __init__(self, alphabet, order: int, source: str,
                 factors: dict[int, LieElement], form: str | None = None):
        self.alphabet = tuple(alphabet)
        self.order = order
        self.source = source
        self.factors = dict(factors)
        self.form = form

    def component(self, n: int) -> LieElement:
        part = self.factors.get(n)
        if part is None:
            return LieElement.zero(self.alphabet, max(n, 1))
        return part

    def to_json_obj(self) -> dict:
        source = self.source if self.form is None else f"{self.source}-{self.form}"
        return {
            "kind": self.kind,
            "source": source,
            "degrees": [
                {"n": n, "terms": self.component(n).to_json_terms()}
                for n in range(2, self.order + 1)
            ],
        }


SERIES_SCHEMA = {
    "type": "object",
    "required": ["kind", "source", "degrees"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["bch", "zassenhaus"]},
        "source": {"type": "string"},
        "degrees": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "terms"],
                "additionalProperties": False,
                "properties": {
                    "n": {"type": "integer", "minimum": 1},
                    "terms": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["monomial", "coeff"],
                            "additionalProperties": False,
                            "properties": {
                                "monomial": {"type": "string"},
                                "coeff": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
    },
}


# ---------------------------------------------------------------------------
# classical oracles


def _xy_polys(trunc: int) -> tuple[AssocPoly, AssocPoly]:
    x = AssocPoly.generator(BCH_ALPHABET, 0, trunc)
    y = AssocPoly.generator(BCH_ALPHABET, 1, trunc)
    return x, y


def bch_classical(N: int) -> GradedLieSeries:
    """log(exp X . exp Y) through degree N, computed in the truncated algebra."""
    if not 1 <= N <= ORACLE_DEGREE_CAP:
        raise DegreeOutOfRange(f"classical BCH degree {N} outside 1..{ORACLE_DEGREE_CAP}")
    x, y = _xy_polys(N)
    z = dynkin_project(poly_log(poly_mul(poly_exp(x), poly_exp(y))))
    return GradedLieSeries(
        BCH_ALPHABET,
        N,
        "classical",
        {n: z.degree_part(n) for n in range(1, N + 1)},
    )


def zassenhaus_classical(N: int) -> ZassenhausFactors:
    """Factors C[2..N] by peeling exp(-C[n-1])...exp(-Y)exp(-X)exp(X+Y)."""
    if not 2 <= N <= ORACLE_DEGREE_CAP:
        raise DegreeOutOfRange(
            f"classical Zassenhaus degree {N} outside 2..{ORACLE_DEGREE_CAP}"
        )
    x, y = _xy_polys(N)
    remainder = poly_mul(poly_mul(poly_exp(-y), poly_exp(-x)), poly_exp(x + y))
    factors: dict[int, LieElement] = {}
    for n in range(2, N + 1):
        c_n = dynkin_project(poly_log(remainder)).degree_part(n)
        factors[n] = c_n
        remainder = poly_mul(poly_exp(-lie_embed(c_n)), remainder)
    return ZassenhausFactors(BCH_ALPHABET, N, "classical", factors)


# ---------------------------------------------------------------------------
# the tabulated formulas, stored in displayed shape

# scalar prefactor shapes
EM = "em"    # sum of all products of m distinct infinitesimals
POW = "pow"  # (d1+...+dn)^m

# bracket expression trees: ("g", i) generator, ("br", a, b) bracket,
# ("lin", ((coeff, tree), ...)) linear combination


def _g(i):
    return ("g", i)


def _br(a, b):
    return ("br", a, b)


def _lin(*pairs):
    return ("lin", tuple((Fraction(c), t) for c, t in pairs))


def tree_degree(tree) -> int:
    if tree[0] == "g":
        return 1
    if tree[0] == "br":
        return tree_degree(tree[1]) + tree_degree(tree[2])
    degrees = {tree_degree(t) for _, t in tree[1]}
    if len(degrees) != 1:
        raise ValueError("inhomogeneous linear combination in a table tree")
    return degrees.pop()


def expand_tree(tree, alphabet, max_degree: int) -> LieElement:
    """Expand a table tree by bilinearity into a normalized Lie element."""
    if tree[0] == "g":
        return LieElement.generator(alphabet, tree[1], max_degree)
    if tree[0] == "br":
        return lie_bracket(
            expand_tree(tree[1], alphabet, max_degree),
            expand_tree(tree[2], alphabet, max_degree),
        )
    total = LieElement.zero(alphabet, max_degree)
    for coeff, sub in tree[1]:
        total = total + coeff * expand_tree(sub, alphabet, max_degree)
    return total


_X, _Y = _g(0), _g(1)
_XpY = _lin((1, _X), (1, _Y))
_XmY = _lin((1, _X), (-1, _Y))
_Xp2Y = _lin((1, _X), (2, _Y))
_XY = _br(_X, _Y)
_XmY_XY = _br(_XmY, _XY)
_Xp2Y_XY = _br(_Xp2Y, _XY)

# order-4 bracket combinations as displayed
_Q_SEC7 = _lin(
    (Fraction(1, 2), _br(_X, _br(_X, _XY))),
    (Fraction(1, 2), _br(_Y, _br(_Y, _XY))),
    (2, _br(_X, _br(_Y, _XY))),
)
_R_SEC8 = _lin(
    (1, _br(_X, _br(_Y, _XY))),
    (1, _br(_Y, _br(_X, _XY))),
    (1, _br(_XpY, _br(_XpY, _XY))),
)
_C4_SEC6 = _lin(
    (-1, _br(_X, _br(_X, _XY))),
    (-3, _br(_X, _br(_Y, _XY))),
    (-3, _br(_Y, _br(_Y, _XY))),
)


def _entry(coeff, shape, m, tree):
    return (Fraction(coeff), (shape, m), tree)


# BCH exponents: the right-hand side of exp(sd*X).exp(sd*Y) = exp(<entries>)
BCH_TABLES = {
    ("sec7", 1): {"a": (_entry(1, POW, 1, _XpY),)},
    ("sec7", 2): {
        "a": (_entry(1, POW, 1, _XpY), _entry(1, EM, 2, _XY)),
        "b": (_entry(1, POW, 1, _XpY), _entry(Fraction(1, 2), POW, 2, _XY)),
    },
    ("sec7", 3): {
        "a": (
            _entry(1, POW, 1, _XpY),
            _entry(1, EM, 2, _XY),
            _entry(Fraction(1, 2), EM, 3, _XmY_XY),
        ),
        "b": (
            _entry(1, POW, 1, _XpY),
            _entry(Fraction(1, 2), POW, 2, _XY),
            _entry(Fraction(1, 12), POW, 3, _XmY_XY),
        ),
    },
    ("sec7", 4): {
        "a": (
            _entry(1, POW, 1, _XpY),
            _entry(1, EM, 2, _XY),
            _entry(Fraction(1, 2), EM, 3, _XmY_XY),
            _entry(-1, EM, 4, _Q_SEC7),
        ),
        "b": (
            _entry(1, POW, 1, _XpY),
            _entry(Fraction(1, 2), POW, 2, _XY),
            _entry(Fraction(1, 12), POW, 3, _XmY_XY),
            _entry(Fraction(-1, 24), POW, 4, _Q_SEC7),
        ),
    },
    ("sec8", 1): {"a": (_entry(1, POW, 1, _XpY),)},
    ("sec8", 2): {
        "a": (_entry(1, POW, 1, _XpY), _entry(Fraction(1, 2), POW, 2, _XY)),
    },
    ("sec8", 3): {
        "a": (
            _entry(1, POW, 1, _XpY),
            _entry(Fraction(1, 2), POW, 2, _XY),
            _entry(Fraction(1, 12), POW, 3, _XmY_XY),
        ),
    },
    ("sec8", 4): {
        "a": (
            _entry(1, POW, 1, _XpY),
            _entry(Fraction(1, 2), POW, 2, _XY),
            _entry(Fraction(1, 12), POW, 3, _XmY_XY),
            _entry(Fraction(-1, 48), POW, 4, _R_SEC8),
        ),
    },
}

# Zassenhaus factor exponents, in order, after exp(sd*X).exp(sd*Y)
ZASS_TABLES = {
    2: {
        "a": (_entry(-1, EM, 2, _XY),),
        "b": (_entry(Fraction(-1, 2), POW, 2, _XY),),
    },
    3: {
        "a": (_entry(-1, EM, 2, _XY), _entry(1, EM, 3, _Xp2Y_XY)),
        "b": (
            _entry(Fraction(-1, 2), POW, 2, _XY),
            _entry(Fraction(1, 12), POW, 3, _Xp2Y_XY),
        ),
    },
    4: {
        "a": (
            _entry(-1, EM, 2, _XY),
            _entry(1, EM, 3, _Xp2Y_XY),
            _entry(1, EM, 4, _C4_SEC6),
        ),
        "b": (
            _entry(Fraction(-1, 2), POW, 2, _XY),
            _entry(Fraction(1, 12), POW, 3, _Xp2Y_XY),
            _entry(Fraction(1, 24), POW, 4, _C4_SEC6),
        ),
    },
}


def paper_bch_table(order: int, variant: str, form: str = "a"):
    if variant not in ("sec7", "sec8"):
        raise ValueError(f"unknown variant {variant!r}")
    if not 1 <= order <= 4:
        raise NotTabulated(f"BCH tables stop at order 4, got {order}")
    forms = BCH_TABLES[(variant, order)]
    if form not in forms:
        raise ValueError(f"{variant} order {order} has no form {form!r}")
    return forms[form]


def paper_zassenhaus_table(order: int, form: str):
    if not 2 <= order <= 4:
        raise NotTabulated(f"Zassenhaus tables stop at order 4, got {order}")
    if form not in ("a", "b"):
        raise ValueError(f"form must be 'a' or 'b', got {form!r}")
    return ZASS_TABLES[order][form]


def entry_t_coefficient(entry) -> tuple[int, Fraction]:
    """Lemma-6.0 grading of a table entry: (t-degree, rational coefficient)."""
    coeff, (shape, m), _tree = entry
    if shape == EM:
        return m, coeff / factorial(m)
    return m, coeff


def bch_paper(order: int, variant: str) -> GradedLieSeries:
    """The tabulated BCH exponent, t-graded and normalized.

    Both displayed forms of an order grade to the same series, so the first
    one is used; the form distinction matters only to the identity checker.
    """
    entries = paper_bch_table(order, variant, "a")
    degrees = {n: LieElement.zero(BCH_ALPHABET, max(n, 1)) for n in range(1, order + 1)}
    for entry in entries:
        m, coeff = entry_t_coefficient(entry)
        tree = entry[2]
        if tree_degree(tree) != m:
            raise ValueError("table entry mixes scalar and bracket degrees")
        degrees[m] = degrees[m] + coeff * expand_tree(tree, BCH_ALPHABET, max(m, 1))
    return GradedLieSeries(BCH_ALPHABET, order, f"paper-{variant}", degrees)


def zassenhaus_paper(order: int, form: str) -> ZassenhausFactors:
    """The tabulated Zassenhaus factors, t-graded, forms kept distinct."""
    entries = paper_zassenhaus_table(order, form)
    factors: dict[int, LieElement] = {}
    for entry in entries:
        m, coeff = entry_t_coefficient(entry)
        tree = entry[2]
        if tree_degree(tree) != m:
            raise ValueError("table entry mixes scalar and bracket degrees")
        factors[m] = coeff * expand_tree(tree, BCH_ALPHABET, m)
    return ZassenhausFactors(BCH_ALPHABET, order, "paper-sec6", factors, form=form)


# ---------------------------------------------------------------------------
# operator series and comparisons


def log_derivative_coeffs(side: str, N: int) -> list[Fraction]:
    """Coefficients of (ad X)^p, p = 0..N, in the logarithmic derivative of exp."""
    if side == "left":
        return [Fraction((-1) ** p, factorial(p + 1)) for p in range(N + 1)]
    if side == "right":
        return [Fraction(1, factorial(p + 1)) for p in range(N + 1)]
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def log_derivative(side: str, X: LieElement, V: LieElement, N: int) -> LieElement:
    """Logarithmic derivative of exp at X applied to V, truncated at power N."""
    return apply_ad_series(log_derivative_coeffs(side, N), X, V)


def ad_exp(X: LieElement, V: LieElement, N: int) -> LieElement:
    """Conjugation action of exp X: sum_p (ad X)^p (V) / p!, p = 0..N."""
    coeffs = [Fraction(1, factorial(p)) for p in range(N + 1)]
    return apply_ad_series(coeffs, X, V)


def bch_multi_order2(k: int) -> GradedLieSeries:
    """Order-2 expansion of a product of k exponentials."""
    if k < 2:
        raise DegreeOutOfRange(f"need at least 2 factors, got {k}")
    alphabet = tuple(f"X{i + 1}" for i in range(k))
    deg1 = LieElement.zero(alphabet, 2)
    for i in range(k):
        deg1 = deg1 + LieElement.generator(alphabet, i, 2)
    deg2 = LieElement.zero(alphabet, 2)
    for i in range(k):
        for j in range(i + 1, k):
            deg2 = deg2 + lie_bracket(
                LieElement.generator(alphabet, i, 2),
                LieElement.generator(alphabet, j, 2),
            )
    return GradedLieSeries(
        alphabet, 2, "paper-sec7", {1: deg1, 2: Fraction(1, 2) * deg2}
    )


def series_compare(a, b, degree: int) -> LieElement:
    """Normalized difference of the degree-n components; zero means agreement."""
    if a.kind != b.kind or type(a) is not type(b):
        raise KindMismatch(f"cannot compare {a.kind} with {b.kind}")
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("series over different alphabets")
    bound = max(degree, 1)
    left = LieElement(a.alphabet, bound, a.component(degree).terms)
    right = LieElement(b.alphabet, bound, b.component(degree).terms)
    return left - right
