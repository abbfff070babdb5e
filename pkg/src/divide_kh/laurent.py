"""Sparse Laurent polynomials with integer coefficients.

Exponents are integers in units of the base variable.  ``HalfLaurent`` is
used for polynomials in ``sqrt(t)``: exponent ``e`` means ``t^(e/2)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    pass


class HalfLaurent:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> None:
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self.terms = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "HalfLaurent":
        return cls({exponent: coeff})

    @classmethod
    def from_t(cls, terms: Mapping[int, int]) -> "HalfLaurent":
        """From exponents in whole powers of ``t``."""
        return cls({2 * e: c for e, c in terms.items()})

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        return HalfLaurent(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other: "HalfLaurent | int") -> "HalfLaurent":
        if isinstance(other, int):
            return HalfLaurent({e: c * other for e, c in self.terms.items()})
        return HalfLaurent([(e1 + e2, c1 * c2) for e1, c1 in self.terms.items()
                            for e2, c2 in other.terms.items()])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HalfLaurent":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = HalfLaurent({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return isinstance(other, HalfLaurent) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"HalfLaurent({self.terms})"

    def shift(self, k: int) -> "HalfLaurent":
        return HalfLaurent({e + k: c for e, c in self.terms.items()})

    def divmod_poly(self, divisor: "HalfLaurent") -> tuple["HalfLaurent", "HalfLaurent"]:
        """Long division from the top degree; returns ``(quotient, remainder)``."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return HalfLaurent(), HalfLaurent()
        d_top, d_low = max(divisor.terms), min(divisor.terms)
        d_lead = divisor.terms[d_top]
        floor = min(self.terms) - d_low
        rem = dict(self.terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            shift = top - d_top
            if shift < floor or rem[top] % d_lead:
                break
            q = quot[shift] = rem[top] // d_lead
            for e, c in divisor.terms.items():
                v = rem.get(e + shift, 0) - q * c
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        return HalfLaurent(quot), HalfLaurent(rem)

    def exact_div(self, divisor: "HalfLaurent") -> "HalfLaurent":
        q, r = self.divmod_poly(divisor)
        if r:
            raise NotDivisible(f"{self.render()} is not divisible by {divisor.render()}")
        return q

    def render(self, half: bool = True, style: str = "text") -> str:
        """Render as a polynomial in ``t``; ``half`` marks sqrt(t) exponents."""
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.terms.items():
            mono = _monomial(Fraction(e, 2) if half else Fraction(e), style)
            mag = abs(c)
            body = mono if mag == 1 and mono else f"{mag}{mono}"
            if not out:
                out = f"-{body}" if c < 0 else body
            else:
                out += f" {'-' if c < 0 else '+'} {body}"
        return out

    def to_pairs(self, half: bool = True) -> list[list]:
        """``[exponent, coefficient]`` pairs; exponents in ``t`` (may be x.5 when half)."""
        out = []
        for e, c in self.terms.items():
            exp = Fraction(e, 2) if half else Fraction(e)
            out.append([int(exp) if exp.denominator == 1 else float(exp), c])
        return out

    def __str__(self) -> str:
        return self.render()


def _monomial(exp: Fraction, style: str) -> str:
    if exp == 0:
        return ""
    if style == "latex":
        if exp == 1:
            return "t"
        if exp.denominator == 1:
            return f"t^{{{exp.numerator}}}"
        return f"t^{{{exp.numerator}/{exp.denominator}}}"
    if exp == 1:
        return "t"
    if exp.denominator == 1:
        return f"t^{exp.numerator}"
    return f"t^({exp.numerator}/{exp.denominator})"
