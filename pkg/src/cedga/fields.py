"""Exact coefficient fields: prime fields F_p and the rationals.

Elements are plain Python values (``int`` in ``range(p)`` for F_p,
``fractions.Fraction`` for Q); the :class:`Field` object carries the
arithmetic and normalization.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


MAX_MODULUS = 2**31


class Field:
    """A prime field (``char > 0``, below 2^31) or Q (``char == 0``)."""

    __slots__ = ("char",)

    def __init__(self, char: int):
        if char >= MAX_MODULUS:
            raise FieldError(f"field modulus {char} is too large (limit 2^31)")
        if char != 0 and not is_prime(char):
            raise FieldError(f"field modulus {char} is not prime")
        self.char = char

    def __repr__(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self) -> int:
        return hash(("Field", self.char))

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise FieldError(f"{x} has no image in {self!r}")
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return int(x) % self.char

    def reduce(self, x):
        return x if self.char == 0 else x % self.char

    def neg(self, x):
        return -x if self.char == 0 else (-x) % self.char

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError(f"division by zero in {self!r}")
        if self.char == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.char)

    def div(self, x, y):
        return self.reduce(x * self.inv(y))

    def sign(self, k: int):
        """(-1)**k as a field element."""
        return self.one if k % 2 == 0 else self.neg(self.one)

    def elements(self):
        if self.char == 0:
            raise FieldError("Q is infinite")
        return range(self.char)

    def random(self, rng):
        if self.char == 0:
            return Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        return rng.randrange(self.char)

    def render(self, x) -> str:
        if self.char == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x))

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else str(self.char)


@lru_cache(maxsize=None)
def field(spec) -> Field:
    """``field(2)``, ``field("Q")``, ``field(0)`` -> cached :class:`Field`."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.upper() in ("Q", "QQ", "0"):
            return Field(0)
        try:
            spec = int(s)
        except ValueError:
            raise FieldError(f"unknown field {spec!r}") from None
    return Field(int(spec))


QQ = field(0)
GF2 = field(2)
