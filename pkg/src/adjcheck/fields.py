"""Exact scalar arithmetic over the rationals and over prime fields.

Scalars are plain Python objects: over Q an int or a Fraction in lowest
terms (ints are preferred whenever the denominator is 1), over F_p an int
in [0, p).  Matrix code does raw arithmetic on these and calls
FieldSpec.reduce at accumulation boundaries, which keeps the hot paths on
native ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ConfigError

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3_215_031_751."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: the rationals ("Q") or a prime field ("Fp")."""

    kind: str
    p: int | None = None

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        if not isinstance(p, int) or not 2 <= p < MAX_PRIME:
            raise ConfigError(f"prime field characteristic must be an int in [2, 2^31), got {p!r}")
        if not is_prime(p):
            raise ConfigError(f"{p} is not prime")
        return FieldSpec("Fp", p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Parse "Q" or "F<p>", e.g. "F2", "F3", "F101"."""
        if text == "Q":
            return FieldSpec.rationals()
        if text.startswith("F") and text[1:].isdigit():
            return FieldSpec.prime(int(text[1:]))
        raise ConfigError(f"unknown field {text!r}; expected 'Q' or 'F<p>'")

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"

    @property
    def char(self) -> int:
        return 0 if self.kind == "Q" else self.p  # type: ignore[return-value]

    def canon(self, x) -> int | Fraction:
        """Canonical form of a scalar: int mod p over F_p; over Q an int when
        the denominator is 1, else a Fraction in lowest terms."""
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    num = x.numerator % self.p
                    return num * pow(x.denominator % self.p, -1, self.p) % self.p
                x = x.numerator
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return x

    def reduce(self, x):
        """Cheap post-accumulation normalization (see module docstring)."""
        if self.kind == "Fp":
            return x % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.kind == "Fp":
            if x % self.p == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        f = Fraction(x) ** -1
        return f.numerator if f.denominator == 1 else f

    def div(self, x, y):
        if self.kind == "Fp":
            return x * self.inv(y) % self.p
        f = Fraction(x) / Fraction(y)
        return f.numerator if f.denominator == 1 else f

    def neg(self, x):
        if self.kind == "Fp":
            return (-x) % self.p
        return -x

    def scalar_str(self, x) -> str:
        return str(x)

    def parse_scalar(self, text) -> int | Fraction:
        """Inverse of scalar_str; also accepts ints and "a/b" strings."""
        if isinstance(text, int):
            return self.canon(text)
        if isinstance(text, str):
            return self.canon(Fraction(text))
        raise ConfigError(f"cannot parse scalar {text!r}")

    def roots_of_unity(self, m: int) -> list:
        """All field elements x with x^m = 1, ascending, deterministic."""
        if m < 1:
            raise ValueError(f"order must be positive, got {m}")
        if self.kind == "Q":
            return [1, -1] if m % 2 == 0 else [1]
        p = self.p
        assert p is not None
        d = gcd(m, p - 1)
        found = {1}
        a = 2
        while len(found) < d and a < p:
            b = pow(a, (p - 1) // d, p)
            x = b
            while x not in found:
                found.add(x)
                x = x * b % p
            a += 1
        return sorted(found)

    def sample_scalar(self, rng, small: bool = True):
        """Seeded scalar draw; over Q a small integer so ranks stay exact-checkable."""
        if self.kind == "Fp":
            return rng.randrange(self.p)
        return rng.randint(-3, 3) if small else Fraction(rng.randint(-9, 9), rng.randint(1, 9))
