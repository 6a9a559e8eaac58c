"""Exact scalar domains: the rationals and prime fields F_p (p odd).

Values are plain Python objects: :class:`fractions.Fraction` over QQ and
``int`` residues in ``[0, p)`` over GF(p).  A :class:`Field` instance carries
the arithmetic and the conversions; it never wraps individual scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt


class DomainError(ValueError):
    """A value cannot live in the requested field, or two fields were mixed."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


_SCALAR_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Field:
    """Common interface of :data:`QQ` and :class:`GF`."""

    characteristic = 0

    def convert(self, value):
        raise NotImplementedError

    def check(self, value):
        """Return *value* unchanged if it is already a canonical element."""
        raise NotImplementedError

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def from_str(self, text: str):
        m = _SCALAR_RE.match(text)
        if not m:
            raise DomainError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        if m.group(2) is None:
            return self.convert(num)
        den = int(m.group(2))
        if den == 0:
            raise DomainError(f"zero denominator in {text!r}")
        return self.convert(Fraction(num, den))


class RationalField(Field):
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def tag(self):
        return "Q"

    def convert(self, value):
        if isinstance(value, bool):
            raise DomainError("bool is not a rational scalar")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return self.from_str(value)
        raise DomainError(f"cannot interpret {value!r} as a rational")

    def check(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        raise DomainError(f"{value!r} is not an element of QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, e: int):
        return a**e

    def to_str(self, a) -> str:
        return str(a)

    def random(self, rng, bound: int = 10):
        return Fraction(rng.randint(-bound, bound))


class PrimeField(Field):
    """The prime field F_p.  ``p = 2`` is rejected: quadric discriminants need char != 2."""

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int):
            raise DomainError(f"prime must be an int, got {p!r}")
        if p == 2:
            raise DomainError("characteristic 2 is not supported")
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def tag(self):
        return {"p": self.p}

    def convert(self, value):
        if isinstance(value, bool):
            raise DomainError("bool is not a field element")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DomainError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, str):
            return self.from_str(value)
        raise DomainError(f"cannot interpret {value!r} in GF({self.p})")

    def check(self, value):
        if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < self.p:
            return value
        raise DomainError(f"{value!r} is not a reduced element of GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def random(self, rng, bound: int = 10):
        return rng.randrange(self.p)


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag) -> Field:
    """Inverse of ``Field.tag``; also accepts the CLI spellings ``Q`` and ``p101``."""
    if tag in ("Q", "QQ", None):
        return QQ
    if isinstance(tag, dict) and set(tag) == {"p"}:
        return GF(int(tag["p"]))
    if isinstance(tag, str) and tag.startswith("p") and tag[1:].isdigit():
        return GF(int(tag[1:]))
    raise DomainError(f"unknown field tag {tag!r}")
