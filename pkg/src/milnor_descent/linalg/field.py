"""Exact ground fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

__all__ = ["Field", "ModP", "QQ", "GF"]


@total_ordering
class ModP:
    """Residue class modulo a prime ``p`` stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    @classmethod
    def _raw(cls, v, p):
        """Trusted constructor: ``v`` is an int, reduced here."""
        r = object.__new__(cls)
        r.v = v % p
        r.p = p
        return r

    def __init__(self, v, p):
        if isinstance(v, ModP):
            v = v.v
        elif isinstance(v, Fraction):
            num = v.numerator % p
            den = v.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {v} vanishes mod {p}")
            v = num * pow(den, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if type(other) is ModP:
            if other.p != self.p:
                raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return ModP(other, self.p).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP._raw(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP._raw(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP._raw(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP._raw(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP._raw(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP._raw(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __lt__(self, other):
        return self.v < self._coerce(other)

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"


class Field:
    """A ground field tag with coercion.

    ``Field(0)`` is the rationals; ``Field(p)`` is F_p for a prime ``p < 2**31``.
    """

    __slots__ = ("p", "_zero", "_one")

    def __init__(self, p=0):
        if p:
            if not (2 <= p < 2**31) or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{p} is not a prime below 2**31")
        self.p = p
        # scalars are immutable, so the constants can be shared
        self._zero = self(0)
        self._one = self(1)

    @property
    def tag(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    @classmethod
    def from_tag(cls, tag):
        tag = str(tag).strip()
        if tag in ("Q", "QQ"):
            return cls(0)
        if tag.startswith("F"):
            return cls(int(tag[1:].lstrip("_p")))
        raise ValueError(f"unknown field tag {tag!r}")

    def __call__(self, x):
        if self.p == 0:
            if type(x) is Fraction:
                return x
            if isinstance(x, ModP):
                raise ValueError("cannot coerce an F_p element into Q")
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if type(x) is ModP and x.p == self.p:
            return x
        if type(x) is int:
            return ModP._raw(x, self.p)
        if isinstance(x, str):
            x = Fraction(x)
        return ModP(x, self.p)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def contains(self, x):
        if self.p == 0:
            return isinstance(x, Fraction)
        return isinstance(x, ModP) and x.p == self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.tag})"


QQ = Field(0)


def GF(p):
    return Field(p)
