"""Integer polynomials in z, with the Conway normalization helpers."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb


@dataclass(frozen=True)
class ConwayPolynomial:
    """Integer polynomial in ``z`` stored as a sorted tuple of (exponent, coefficient)."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: dict[int, int]) -> "ConwayPolynomial":
        for e in coeffs:
            if e < 0:
                raise ValueError("negative exponent in a Conway polynomial")
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c)))

    @classmethod
    def one(cls) -> "ConwayPolynomial":
        return cls(((0, 1),))

    @classmethod
    def zero(cls) -> "ConwayPolynomial":
        return cls(())

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def leading_coefficient(self) -> int:
        return self.terms[-1][1] if self.terms else 0

    def __getitem__(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def __add__(self, other):
        out = self.coeffs
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return ConwayPolynomial.from_dict(out)

    def __neg__(self):
        return ConwayPolynomial(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def shift(self, k: int = 1) -> "ConwayPolynomial":
        """Multiply by z**k."""
        return ConwayPolynomial(tuple((e + k, c) for e, c in self.terms))

    def scale(self, k: int) -> "ConwayPolynomial":
        return ConwayPolynomial.from_dict({e: k * c for e, c in self.terms})

    def evaluate(self, z):
        return sum(c * z ** e for e, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                mono = str(c)
            else:
                mono = f"{c}*z" if e == 1 else f"{c}*z^{e}"
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")


_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(z(?:\s*\^\s*(\d+))?)?")


def parse_conway(text: str) -> ConwayPolynomial:
    """Parse strings such as ``1 + 2*z^2 - z^4`` or ``2*z + z^3``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ConwayPolynomial.zero()
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, num, zpart, exp = m.groups()
        if not num and not zpart:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = 0 if not zpart else (int(exp) if exp else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return ConwayPolynomial.from_dict(coeffs)


def symmetric_laurent_to_conway(coeffs: dict[int, int]) -> ConwayPolynomial:
    """Rewrite a Laurent polynomial in s = t^(1/2) as a polynomial in z = s - 1/s.

    ``coeffs`` maps powers of s to integers.  Raises ValueError when the input
    is not a polynomial in z.
    """
    rest = {e: c for e, c in coeffs.items() if c}
    out: dict[int, int] = {}
    while rest:
        top = max(rest)
        if top < 0:
            raise ValueError("Laurent polynomial is not expressible in z")
        c = rest[top]
        out[top] = c
        # z^top = sum_k binom(top, k) (-1)^k s^(top - 2k)
        for k in range(top + 1):
            e = top - 2 * k
            rest[e] = rest.get(e, 0) - c * comb(top, k) * (-1) ** k
            if rest[e] == 0:
                del rest[e]
    return ConwayPolynomial.from_dict(out)


def interpolate(xs: list[int], ys: list[int]) -> list[int]:
    """Exact Lagrange interpolation; returns integer coefficients, lowest first."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    if any(c.denominator != 1 for c in coeffs):
        raise ValueError("interpolated polynomial has non-integer coefficients")
    return [int(c) for c in coeffs]
