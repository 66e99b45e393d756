"""Exact arithmetic on finite sums ``q1*sqrt(m1) + q2*sqrt(m2) + ...``.

Coefficients are :class:`fractions.Fraction` and every radicand is a
squarefree positive integer (radicand ``1`` is the rational part), so two
surds are equal exactly when their term maps are equal.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational

from sympy import factorint

__all__ = ["Surd", "normalize_sqrt", "as_integer", "sign", "arith"]

_TRIAL_PRIMES = [p for p in range(2, 1024) if all(p % d for d in range(2, isqrt(p) + 1))]
_TRIAL_BOUND = 1024


@lru_cache(maxsize=65536)
def _square_split(a: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``a == s*s*m`` and ``m`` squarefree."""
    if a == 0:
        return 0, 1
    s, m = 1, 1
    for p in _TRIAL_PRIMES:
        if p * p > a:
            break
        e = 0
        while a % p == 0:
            a //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    if a > 1:
        r = isqrt(a)
        if r * r == a:
            s *= r
        elif a < _TRIAL_BOUND * _TRIAL_BOUND:
            m *= a
        else:
            # trial division left a large cofactor
            for p, e in factorint(a).items():
                # sympy may hand back gmpy2 integers; keep everything plain int
                p, e = int(p), int(e)
                s *= p ** (e // 2)
                if e % 2:
                    m *= p
    return s, m


def _coerce(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Rational)):
        return Surd(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Surd")


class Surd:
    """Immutable element of the field generated over Q by square roots."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        q = Fraction(value)
        self._terms = {1: q} if q else {}
        self._hash = None

    @classmethod
    def _make(cls, terms: dict) -> Surd:
        obj = cls.__new__(cls)
        obj._terms = {m: q for m, q in terms.items() if q}
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, pairs) -> Surd:
        """Build from ``(coefficient, radicand)`` pairs; radicands need not be squarefree."""
        out = Surd(0)
        for q, m in pairs:
            out = out + Fraction(q) * normalize_sqrt(Fraction(m))
        return out

    @staticmethod
    def sqrt(x) -> Surd:
        return normalize_sqrt(x)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def as_integer(self) -> int | None:
        if not self.is_rational():
            return None
        q = self._terms.get(1, Fraction(0))
        return q.numerator if q.denominator == 1 else None

    def sign(self) -> int:
        return sign(self)

    def radicands(self) -> list[int]:
        return sorted(self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for m, q in other._terms.items():
            t[m] = t.get(m, 0) + q
        return Surd._make(t)

    __radd__ = __add__

    def __neg__(self):
        return Surd._make({m: -q for m, q in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Surd):
            q = Fraction(other)
            if not q:
                return Surd(0)
            return Surd._make({m: c * q for m, c in self._terms.items()})
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        t: dict = {}
        for m1, q1 in self._terms.items():
            for m2, q2 in other._terms.items():
                if m1 == 1 or m2 == 1:
                    r, c = m1 * m2, q1 * q2
                elif m1 == m2:
                    r, c = 1, q1 * q2 * m1
                else:
                    # m1, m2 squarefree: sqrt(m1*m2) = g*sqrt((m1/g)*(m2/g))
                    g = gcd(m1, m2)
                    r, c = (m1 // g) * (m2 // g), q1 * q2 * g
                t[r] = t.get(r, 0) + c
        return Surd._make(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if not other.is_rational():
                raise ValueError("division by an irrational surd is not supported")
            other = other.rational()
        q = Fraction(other)
        if not q:
            raise ZeroDivisionError("surd division by zero")
        return Surd._make({m: c / q for m, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Surd(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._terms.get(1, Fraction(0)))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __lt__(self, other):
        return sign(self - _coerce(other)) < 0

    def __le__(self, other):
        return sign(self - _coerce(other)) <= 0

    def __gt__(self, other):
        return sign(self - _coerce(other)) > 0

    def __ge__(self, other):
        return sign(self - _coerce(other)) >= 0

    def __bool__(self):
        return bool(self._terms)

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __float__(self):
        return float(sum(float(q) * (m ** 0.5) for m, q in self._terms.items()))

    # -- text / json ------------------------------------------------------
    def _ordered(self):
        return sorted(self._terms.items(), key=lambda t: -t[0])

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, q in self._ordered():
            neg = q < 0
            a = -q if neg else q
            if m == 1:
                body = str(a)
            elif a == 1:
                body = f"sqrt({m})"
            else:
                body = f"{a}*sqrt({m})"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Surd('{self}')"

    def to_json(self) -> dict:
        return {"terms": [[str(q), m] for m, q in self._ordered()]}

    @classmethod
    def from_json(cls, obj) -> Surd:
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return cls.parse(str(obj))
        return cls.from_terms((Fraction(q), int(m)) for q, m in obj["terms"])

    _TERM = re.compile(
        r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*sqrt\(\s*(?P<rad1>\d+(?:/\d+)?)\s*\))?
          | sqrt\(\s*(?P<rad2>\d+(?:/\d+)?)\s*\)
        )\s*""",
        re.VERBOSE,
    )

    @classmethod
    def parse(cls, text: str) -> Surd:
        """Parse the text form, e.g. ``"3/2*sqrt(5) + 7"``."""
        s = text.strip()
        if not s:
            raise ValueError("empty surd literal")
        pos, out, first = 0, Surd(0), True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or (not first and not m.group("sign")):
                raise ValueError(f"malformed surd literal at position {pos}: {text!r}")
            coef = Fraction(m.group("coef") or 1)
            rad = m.group("rad1") or m.group("rad2")
            term = coef * normalize_sqrt(Fraction(rad)) if rad else Surd(coef)
            out = out - term if m.group("sign") == "-" else out + term
            pos, first = m.end(), False
        return out


def normalize_sqrt(x) -> Surd:
    """Square root of a nonnegative rational as a single canonical term."""
    q = Fraction(x)
    if q < 0:
        raise ValueError(f"square root of negative number {q}")
    if not q:
        return Surd(0)
    # sqrt(a/b) = sqrt(a*b)/b
    s, m = _square_split(q.numerator * q.denominator)
    return Surd._make({m: Fraction(s, q.denominator)})


def as_integer(a: Surd) -> int | None:
    return _coerce(a).as_integer()


def arith(a, b, op: str) -> Surd:
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def sign(a) -> int:
    """Exact sign of a surd: -1, 0 or +1."""
    a = _coerce(a)
    t = a._terms
    if not t:
        return 0
    if len(t) == 1:
        (q,) = t.values()
        return 1 if q > 0 else -1
    exact = t.get(1, Fraction(0))
    irr = [(m, q) for m, q in t.items() if m != 1]
    bits = 32
    while True:
        scale = 1 << bits
        lo = hi = exact * scale
        for m, q in irr:
            # s/scale <= sqrt(m) < (s+1)/scale; m squarefree > 1 so never exact
            s = isqrt(m << (2 * bits))
            if q > 0:
                lo += q * s
                hi += q * (s + 1)
            else:
                lo += q * (s + 1)
                hi += q * s
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
