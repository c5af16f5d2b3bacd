"""The graded algebra O_{-1}(k^n): generators x_1..x_n with x_i x_j = -x_j x_i.

Monomials are exponent tuples for the normal form x_1^{a_1} ... x_n^{a_n};
elements are sparse maps monomial -> rational coefficient.  Mixing elements
with different n is a hard error.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .linalg import Q, frac

Monomial = tuple  # exponent vector (a_1, ..., a_n)


def normalize_word(letters: Sequence[int], n: int) -> tuple[int, Monomial]:
    """Sort a word in the letters 1..n into normal form.

    Returns (sign, monomial) where the sign is (-1)^inversions; inversions
    count position pairs p < q with letter_p > letter_q.
    """
    for ltr in letters:
        if not 1 <= ltr <= n:
            raise ValueError("letter %r out of range 1..%d" % (ltr, n))
    inversions = 0
    seen = [0] * (n + 1)  # seen[i] = occurrences of letter i so far
    for ltr in letters:
        inversions += sum(seen[ltr + 1:])
        seen[ltr] += 1
    exps = [0] * n
    for ltr in letters:
        exps[ltr - 1] += 1
    return (-1 if inversions % 2 else 1), tuple(exps)


def mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Product of two normal monomials: sign and combined exponents.

    The sign is (-1)^{sum_{i>j} a_i b_j}: each letter of b crosses every
    strictly larger letter of a.
    """
    if len(a) != len(b):
        raise ValueError("mixed variable counts")
    crossings = 0
    suffix = 0
    for ai, bi in zip(reversed(a), reversed(b)):
        crossings += suffix * bi
        suffix += ai
    product = tuple(x + y for x, y in zip(a, b))
    return (-1 if crossings % 2 else 1), product


def mono_degree(a: Monomial) -> int:
    return sum(a)


class SkewElement:
    """Element of O_{-1}(k^n): finite sum of coefficient * normal monomial."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        tidy = {}
        if terms:
            for mono, coeff in (terms.items() if isinstance(terms, dict) else terms):
                c = frac(coeff)
                if c == 0:
                    continue
                if len(mono) != n:
                    raise ValueError("monomial arity mismatch")
                mono = tuple(mono)
                c0 = tidy.get(mono)
                if c0 is None:
                    tidy[mono] = c
                else:
                    c = c0 + c
                    if c == 0:
                        del tidy[mono]
                    else:
                        tidy[mono] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", tidy)

    def __setattr__(self, name, value):
        raise AttributeError("SkewElement is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(n: int) -> "SkewElement":
        return SkewElement(n)

    @staticmethod
    def one(n: int) -> "SkewElement":
        return SkewElement(n, {tuple([0] * n): Q(1)})

    @staticmethod
    def variable(i: int, n: int) -> "SkewElement":
        """The generator x_i (1-based)."""
        exps = [0] * n
        exps[i - 1] = 1
        return SkewElement(n, {tuple(exps): Q(1)})

    @staticmethod
    def linear(coeffs: Sequence, n: int) -> "SkewElement":
        """c_1 x_1 + ... + c_n x_n."""
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = frac(c)
        return SkewElement(n, terms)

    @staticmethod
    def square_form(coeffs: Sequence, n: int) -> "SkewElement":
        """c_1 x_1^2 + ... + c_n x_n^2."""
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * n
            exps[i] = 2
            terms[tuple(exps)] = frac(c)
        return SkewElement(n, terms)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Q(0))

    def degrees(self) -> set:
        return {mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree if homogeneous and nonzero, else None."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_part(self, d: int) -> "SkewElement":
        return SkewElement(self.n, {m: c for m, c in self.terms.items() if mono_degree(m) == d})

    def linear_coefficients(self) -> tuple:
        """Coefficient vector (c_1..c_n) of a degree-<=1 element's linear part."""
        coeffs = [Q(0)] * self.n
        for m, c in self.terms.items():
            if mono_degree(m) == 1:
                coeffs[m.index(1)] = c
        return tuple(coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "SkewElement"):
        if self.n != other.n:
            raise ValueError("mixed variable counts")

    def __add__(self, other: "SkewElement") -> "SkewElement":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Q(0)) + c
        return SkewElement(self.n, terms)

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        return self + (-other)

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "SkewElement":
        c = frac(c)
        return SkewElement(self.n, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SkewElement):
            return self.scale(other)
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = mono_mul(m1, m2)
                c = terms.get(m, Q(0)) + sign * c1 * c2
                if c == 0:
                    terms.pop(m, None)
                else:
                    terms[m] = c
        return SkewElement(self.n, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, SkewElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- text form -----------------------------------------------------------

    def __repr__(self):
        return "SkewElement(%d, %s)" % (self.n, render_element(self))

    def __str__(self):
        return render_element(self)


def graded_basis(n: int, d: int) -> list[Monomial]:
    """All degree-d normal monomials, largest exponent vector first.

    The count is C(n+d-1, n-1); the order puts x_1^d first and x_n^d last.
    """
    if d < 0:
        raise ValueError("negative degree")
    monomials = set()
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        monomials.add(tuple(exps))
    result = sorted(monomials, reverse=True)
    assert len(result) == comb(n + d - 1, n - 1)
    return result


def coefficient_vector(elt: SkewElement, d: int, basis=None) -> tuple:
    """Coefficients of the degree-d part of elt in graded_basis order."""
    if basis is None:
        basis = graded_basis(elt.n, d)
    return tuple(elt.terms.get(m, Q(0)) for m in basis)


def element_from_vector(coeffs: Sequence, n: int, d: int, basis=None) -> SkewElement:
    if basis is None:
        basis = graded_basis(n, d)
    return SkewElement(n, {m: c for m, c in zip(basis, coeffs)})


# -- textual rendering and parsing -------------------------------------------
#
# Grammar: terms joined by +/-, each term [coeff *] factor*, a factor is
# x<i>[^<e>], a coefficient is an integer or p/q.  Example: 3/2*x1^2*x2 - x3.


def _mono_key(m: Monomial):
    return (mono_degree(m), tuple(-e for e in m))


def render_element(elt: SkewElement) -> str:
    if not elt.terms:
        return "0"
    parts = []
    for m in sorted(elt.terms, key=_mono_key):
        c = elt.terms[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append("x%d" % (i + 1))
            elif e > 1:
                factors.append("x%d^%d" % (i + 1, e))
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = "%s*%s" % (mag, body)
        if not parts:
            parts.append(text if c > 0 else "-" + text)
        else:
            parts.append(("+ " if c > 0 else "- ") + text)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:/\d+)?)?\s*\*?\s*(?P<body>(?:x\d+(?:\^\d+)?(?:\s*\*\s*)?)*)\s*$"
)
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_element(text: str, n: int) -> SkewElement:
    """Parse the rendering grammar back into an element."""
    text = text.strip()
    if text in ("", "0"):
        return SkewElement.zero(n)
    chunks = re.split(r"(?=[+-])", text.replace(" ", ""))
    terms = []
    for chunk in chunks:
        if not chunk or chunk in "+-":
            if chunk:
                raise ValueError("dangling sign in %r" % text)
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m or (not m.group("coeff") and not m.group("body")):
            raise ValueError("cannot parse term %r" % chunk)
        coeff = Q(m.group("coeff")) if m.group("coeff") else Q(1)
        exps = [0] * n
        for idx, exp in _FACTOR_RE.findall(m.group("body") or ""):
            i = int(idx)
            if not 1 <= i <= n:
                raise ValueError("variable x%d out of range" % i)
            exps[i - 1] += int(exp) if exp else 1
        terms.append((tuple(exps), sign * coeff))
    return SkewElement(n, terms)
