"""The three endomorphism rings of the census module: Z, Z[i], Z[omega].

Elements are pairs (a, b) meaning a + b*i (Gaussian), a + b*omega (Eisenstein,
omega a primitive cube root of unity), or plain a with b = 0 over Z.  All
three are Euclidean for the norm, with rounded division giving a remainder of
strictly smaller norm; that is what the Hermite and lattice reductions rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .rounding import DomainError

__all__ = ["EndRing", "Element", "RING_Z", "RING_GAUSS", "RING_EISENSTEIN", "ring_by_name"]

Element = tuple[int, int]


def _round_half_up(q: Fraction) -> int:
    """Translation-invariant nearest-integer rounding (.5 rounds up)."""
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


@dataclass(frozen=True)
class EndRing:
    kind: str  # "z" | "zi" | "zw"

    # -- basic arithmetic ----------------------------------------------------

    @property
    def zero(self) -> Element:
        return (0, 0)

    @property
    def one(self) -> Element:
        return (1, 0)

    def from_int(self, n: int) -> Element:
        return (n, 0)

    def is_zero(self, x: Element) -> bool:
        return x == (0, 0)

    def add(self, x: Element, y: Element) -> Element:
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x: Element, y: Element) -> Element:
        return (x[0] - y[0], x[1] - y[1])

    def neg(self, x: Element) -> Element:
        return (-x[0], -x[1])

    def mul(self, x: Element, y: Element) -> Element:
        a, b = x
        c, d = y
        if self.kind == "z":
            return (a * c, 0)
        if self.kind == "zi":
            return (a * c - b * d, a * d + b * c)
        # omega^2 = -1 - omega
        return (a * c - b * d, a * d + b * c - b * d)

    def conj(self, x: Element) -> Element:
        a, b = x
        if self.kind == "z":
            return x
        if self.kind == "zi":
            return (a, -b)
        return (a - b, -b)

    def norm(self, x: Element) -> int:
        a, b = x
        if self.kind == "z":
            return a * a
        if self.kind == "zi":
            return a * a + b * b
        return a * a - a * b + b * b

    def units(self) -> tuple[Element, ...]:
        if self.kind == "z":
            return ((1, 0), (-1, 0))
        if self.kind == "zi":
            return ((1, 0), (0, 1), (-1, 0), (0, -1))
        return ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))

    # -- Euclidean structure ---------------------------------------------------

    def divmod_rounded(self, x: Element, y: Element) -> tuple[Element, Element]:
        """q, r with x = q*y + r and norm(r) < norm(y)."""
        if self.is_zero(y):
            raise ZeroDivisionError("division by zero ring element")
        n = self.norm(y)
        num = self.mul(x, self.conj(y))
        q = (_round_half_up(Fraction(num[0], n)), _round_half_up(Fraction(num[1], n)))
        r = self.sub(x, self.mul(q, y))
        return q, r

    def divides_exactly(self, d: Element, x: Element) -> bool:
        q, r = self.divmod_rounded(x, d)
        return self.is_zero(r)

    def exact_div(self, x: Element, d: Element) -> Element:
        q, r = self.divmod_rounded(x, d)
        if not self.is_zero(r):
            raise DomainError(f"{x} is not divisible by {d} in {self.kind}")
        return q

    # -- canonical associates ----------------------------------------------------

    def canon_assoc(self, x: Element) -> tuple[Element, Element]:
        """(canonical associate, unit u) with canonical = u * x.

        The canonical associate is the lexicographically largest unit multiple;
        over Z that is |x|, over the imaginary quadratic rings one fixed sector.
        """
        if self.is_zero(x):
            return x, self.one
        best, best_u = x, self.one
        for u in self.units():
            cand = self.mul(u, x)
            if cand > best:
                best, best_u = cand, u
        return best, best_u

    def canon_row(self, row: tuple[Element, ...]) -> tuple[Element, ...]:
        """Lexicographically largest unit multiple of a whole row."""
        if all(self.is_zero(e) for e in row):
            return row
        best = row
        for u in self.units():
            cand = tuple(self.mul(u, e) for e in row)
            if cand > best:
                best = cand
        return best

    # -- inner products and display ------------------------------------------------

    def dot_conj(self, u: Iterable[Element], v: Iterable[Element]) -> Element:
        """sum u_k * conj(v_k); with u = v this is (norm, 0)."""
        acc = self.zero
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, self.conj(b)))
        return acc

    def row_norm(self, row: Iterable[Element]) -> int:
        return sum(self.norm(e) for e in row)

    def element_str(self, x: Element) -> str:
        a, b = x
        if self.kind == "z":
            return str(a)
        sym = "i" if self.kind == "zi" else "w"
        if b == 0:
            return str(a)
        if a == 0:
            return f"{b}{sym}"
        return f"{a}{b:+d}{sym}"

    def elements_of_norm_at_most(self, bound: int) -> list[Element]:
        """All ring elements of norm <= bound, deterministic order."""
        out = []
        if bound < 0:
            return out
        if self.kind == "z":
            s = _isqrt(bound)
            return [(a, 0) for a in range(-s, s + 1)]
        # both quadratic rings: norm >= (|a| - |b|)^2-ish; scan a safe box
        s = _isqrt(4 * bound) + 1
        for a in range(-s, s + 1):
            for b in range(-s, s + 1):
                if self.norm((a, b)) <= bound:
                    out.append((a, b))
        return out


def _isqrt(n: int) -> int:
    import math
    return math.isqrt(n) if n >= 0 else -1


RING_Z = EndRing("z")
RING_GAUSS = EndRing("zi")
RING_EISENSTEIN = EndRing("zw")

_BY_NAME = {
    "z": RING_Z,
    "zi": RING_GAUSS,
    "gaussian": RING_GAUSS,
    "zw": RING_EISENSTEIN,
    "eisenstein": RING_EISENSTEIN,
}


def ring_by_name(name: str) -> EndRing:
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise DomainError(f"unknown endomorphism ring {name!r}; use z, zi, or zw") from None
