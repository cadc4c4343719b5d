"""Exact coefficient rings: the integers, integers mod n, the rationals, prime fields.

Elements are plain Python ``int`` (for Z, Z/n, F_p) or ``fractions.Fraction`` (for Q).
Residues are always stored reduced into ``range(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedInput


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z" | "Q" | "Fp" | "Zn"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp", "Zn"):
            raise MalformedInput(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp" and not is_prime(self.modulus):
            raise MalformedInput(f"Fp requires a prime, got {self.modulus}")
        if self.kind == "Zn" and self.modulus < 2:
            raise MalformedInput(f"Zn requires n >= 2, got {self.modulus}")

    # -- construction / naming ------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Parse ``"Z"``, ``"Q"``, ``"Fp:p"`` or ``"Zn:n"`` (also ``"F2"``-style shorthand)."""
        text = text.strip()
        if text in ("Z", "ZZ"):
            return cls("Z")
        if text in ("Q", "QQ"):
            return cls("Q")
        head, _, tail = text.partition(":")
        try:
            if head == "Fp" and tail:
                return cls("Fp", int(tail))
            if head == "Zn" and tail:
                return cls("Zn", int(tail))
            if head.startswith("F") and head[1:].isdigit() and not tail:
                return cls("Fp", int(head[1:]))
        except ValueError:
            pass
        raise MalformedInput(f"cannot parse ring {text!r}")

    def __str__(self) -> str:
        if self.kind in ("Z", "Q"):
            return self.kind
        return f"{self.kind}:{self.modulus}"

    # -- properties -----------------------------------------------------------
    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "Fp")

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind in ("Fp", "Zn") else 0

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    # -- arithmetic -----------------------------------------------------------
    def coerce(self, x):
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                if self.kind == "Z":
                    raise ValueError(f"{x} is not an integer")
                return (x.numerator * pow(x.denominator, -1, self.modulus)) % self.modulus
            x = x.numerator
        x = int(x)
        return x % self.modulus if self.modulus else x

    def add(self, a, b):
        s = a + b
        return s % self.modulus if self.modulus else s

    def sub(self, a, b):
        s = a - b
        return s % self.modulus if self.modulus else s

    def mul(self, a, b):
        s = a * b
        return s % self.modulus if self.modulus else s

    def neg(self, a):
        return (-a) % self.modulus if self.modulus else -a

    def inv(self, a):
        if self.kind == "Q":
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / Fraction(a)
        if self.kind == "Z":
            if a in (1, -1):
                return a
            raise ZeroDivisionError(f"{a} is not a unit in Z")
        return pow(a, -1, self.modulus)

    def is_unit(self, a) -> bool:
        if self.kind == "Q":
            return a != 0
        if self.kind == "Z":
            return a in (1, -1)
        from math import gcd

        return gcd(a, self.modulus) == 1

    def encode(self, a) -> str:
        """Canonical decimal-string form used in JSON output."""
        if isinstance(a, Fraction):
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def decode(self, s):
        if isinstance(s, str):
            s = Fraction(s) if "/" in s else int(s)
        return self.coerce(s)


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)
