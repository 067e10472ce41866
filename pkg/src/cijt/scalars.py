"""Exact scalars of the form r + sum_i c_i*sqrt(s_i) with rational r, c_i.

Rotation numbers theta/pi, mean indices and every derived quantity live in
this field, so floors, fractional parts and comparisons of integer multiples
are decided by integer arithmetic (never by floating point).
"""

from __future__ import annotations

import math
import os
from enum import Enum
from fractions import Fraction


MAX_PRECISION_BITS_ENV = "CIJT_MAX_PRECISION_BITS"


class PrecisionExhausted(ArithmeticError):
    """Raised when the interval-refinement sign test hits the precision cap.

    Cannot happen for a value that is provably nonzero unless the cap
    (CIJT_MAX_PRECISION_BITS, default 4096) is set absurdly low.
    """


def _max_bits() -> int:
    return int(os.environ.get(MAX_PRECISION_BITS_ENV, "4096"))


def _squarefree_split(s: int) -> tuple[int, int]:
    """s = f**2 * s0 with s0 squarefree; returns (f, s0)."""
    if s <= 0:
        raise ValueError("radicand must be positive")
    f, d = 1, 2
    while d * d <= s:
        while s % (d * d) == 0:
            s //= d * d
            f *= d
        d += 1
    return f, s


def _sqrt_bounds(s: int, bits: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure sqrt(s) in [lo, hi] with hi - lo = 2**-bits."""
    scale = 1 << bits
    root = math.isqrt(s * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


class Exact:
    """Immutable element of Q adjoined with square roots of squarefree ints."""

    __slots__ = ("r", "terms", "_hash")

    def __init__(self, r: Fraction | int = 0, terms: dict[int, Fraction] | None = None):
        self.r = Fraction(r)
        self.terms = {s: c for s, c in (terms or {}).items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(num, den=1) -> "Exact":
        return Exact(Fraction(num, den))

    @staticmethod
    def surd(a, b, s: int) -> "Exact":
        """a + b*sqrt(s); s is reduced to its squarefree part."""
        a, b = Fraction(a), Fraction(b)
        f, s0 = _squarefree_split(int(s))
        if s0 == 1:
            return Exact(a + b * f)
        return Exact(a, {s0: b * f})

    # -- predicates ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.terms

    def as_fraction(self) -> Fraction:
        if self.terms:
            raise ValueError("not a rational value: %r" % (self,))
        return self.r

    # -- ring/field operations ---------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Exact):
            return other
        if isinstance(other, (int, Fraction)):
            return Exact(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for s, c in o.terms.items():
            terms[s] = terms.get(s, Fraction(0)) + c
        return Exact(self.r + o.r, terms)

    __radd__ = __add__

    def __neg__(self):
        return Exact(-self.r, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        r = self.r * o.r
        terms: dict[int, Fraction] = {}

        def put(s, c):
            if s in terms:
                terms[s] += c
            else:
                terms[s] = c

        for s, c in self.terms.items():
            if o.r:
                put(s, c * o.r)
        for s, c in o.terms.items():
            if self.r:
                put(s, c * self.r)
        for s1, c1 in self.terms.items():
            for s2, c2 in o.terms.items():
                if s1 == s2:
                    r += c1 * c2 * s1
                else:
                    # sqrt(s1)*sqrt(s2) = g*sqrt((s1/g)(s2/g)), g = gcd;
                    # the product of coprime squarefree ints is squarefree.
                    g = math.gcd(s1, s2)
                    put((s1 // g) * (s2 // g), c1 * c2 * g)
        return Exact(r, terms)

    __rmul__ = __mul__

    def _inverse(self) -> "Exact":
        if not self.terms:
            if self.r == 0:
                raise ZeroDivisionError("division by zero Exact")
            return Exact(1 / self.r)
        # Peel one radicand: z = u + v*sqrt(s) with u, v free of sqrt(s);
        # 1/z = (u - v*sqrt(s)) / (u^2 - v^2 s), the denominator having one
        # radicand fewer.  Recursion terminates.
        s = max(self.terms)
        v = Exact(self.terms[s])
        u = Exact(self.r, {t: c for t, c in self.terms.items() if t != s})
        conj = u - v * Exact.surd(0, 1, s)
        denom = u * u - v * v * s
        return conj * denom._inverse()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o._inverse()

    def __rtruediv__(self, other):
        return Exact(other) * self._inverse()

    # -- exact sign and comparisons ----------------------------------------

    def sign(self) -> int:
        if not self.terms:
            num = self.r.numerator
            return (num > 0) - (num < 0)
        if self.r == 0 and len(self.terms) == 1:
            ((_, c),) = self.terms.items()
            return 1 if c > 0 else -1
        if len(self.terms) == 1:
            ((s, c),) = self.terms.items()
            a = self.r
            if a > 0 and c > 0:
                return 1
            if a < 0 and c < 0:
                return -1
            # opposite signs: compare a^2 with c^2 s
            lhs, rhs = a * a, c * c * s
            if lhs == rhs:  # cannot happen: value would be 0, but surd != rational
                raise AssertionError("surd equals rational")
            big_rational = lhs > rhs
            return (1 if big_rational else -1) if a > 0 else (-1 if big_rational else 1)
        # Several radicands: sqrt's of distinct squarefree ints are linearly
        # independent over Q, so the value is nonzero; refine an integer
        # interval until it excludes 0.
        bits = 64
        cap = _max_bits()
        while bits <= cap:
            lo = hi = self.r
            for s, c in self.terms.items():
                blo, bhi = _sqrt_bounds(s, bits)
                if c > 0:
                    lo += c * blo
                    hi += c * bhi
                else:
                    lo += c * bhi
                    hi += c * blo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise PrecisionExhausted(
            "sign undecided at %d bits for %r" % (cap, self)
        )

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.r == o.r and self.terms == o.terms

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.r, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.r) or bool(self.terms)

    def __float__(self):
        return float(self.r) + sum(float(c) * math.sqrt(s) for s, c in self.terms.items())

    def __repr__(self):
        parts = [str(self.r)] if self.r or not self.terms else []
        for s in sorted(self.terms):
            parts.append("%s*sqrt(%d)" % (self.terms[s], s))
        return "Exact(%s)" % " + ".join(parts)

    # -- serialization ------------------------------------------------------

    def to_json(self):
        if not self.terms:
            return {"kind": "rational", "num": self.r.numerator, "den": self.r.denominator}
        if len(self.terms) == 1 and True:
            ((s, c),) = self.terms.items()
            return {
                "kind": "surd",
                "a": [self.r.numerator, self.r.denominator],
                "b": [c.numerator, c.denominator],
                "s": s,
            }
        return {
            "kind": "sum",
            "rational": [self.r.numerator, self.r.denominator],
            "terms": [
                {"coeff": [c.numerator, c.denominator], "s": s}
                for s, c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(obj) -> "Exact":
        kind = obj.get("kind")
        if kind == "rational":
            return Exact(Fraction(obj["num"], obj["den"]))
        if kind == "surd":
            return Exact.surd(
                Fraction(*obj["a"]), Fraction(*obj["b"]), obj["s"]
            )
        if kind == "sum":
            out = Exact(Fraction(*obj["rational"]))
            for t in obj["terms"]:
                out = out + Exact.surd(0, Fraction(*t["coeff"]), t["s"])
            return out
        raise ValueError("unknown scalar kind: %r" % (kind,))


ZERO = Exact(0)
ONE = Exact(1)


# -- floors / fractional parts of integer multiples -------------------------


def _cmp_single(A: int, B: int, s: int, t: int) -> int:
    """Sign of A + B*sqrt(s) - t, all integers."""
    a = A - t
    if B == 0:
        return (a > 0) - (a < 0)
    if a >= 0 and B > 0:
        return 1
    if a <= 0 and B < 0:
        return -1
    lhs, rhs = a * a, B * B * s
    if lhs == rhs:
        raise AssertionError("surd equals integer")
    big_rational = lhs > rhs
    return (1 if big_rational else -1) if a > 0 else (-1 if big_rational else 1)


def floor_mult(x: Exact, m: int) -> int:
    """[m*x], exact."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if not x.terms:
        v = m * x.r
        return v.numerator // v.denominator
    if len(x.terms) == 1:
        ((s, c),) = x.terms.items()
        a = m * x.r
        b = m * c
        q = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        A = a.numerator * (q // a.denominator)
        B = b.numerator * (q // b.denominator)
        # guess from integer sqrt, then certify k <= m*x < k+1
        if B >= 0:
            k = (A + math.isqrt(B * B * s)) // q
        else:
            k = (A - math.isqrt(B * B * s) - 1) // q
        while _cmp_single(A, B, s, k * q) < 0:
            k -= 1
        while _cmp_single(A, B, s, (k + 1) * q) >= 0:
            k += 1
        return k
    # several radicands: float guess certified by exact comparisons
    mx = x * m
    k = math.floor(float(mx))
    while (mx - k).sign() < 0:
        k -= 1
    while (mx - (k + 1)).sign() >= 0:
        k += 1
    return k


def ceil_mult(x: Exact, m: int) -> int:
    """E(m*x) = min{k in Z | k >= m*x}, exact."""
    f = floor_mult(x, m)
    if x.is_rational and (m * x.r).denominator == 1:
        return f
    return f + 1


def frac_mult(x: Exact, m: int) -> Exact:
    """{m*x} = m*x - [m*x] in [0,1), exact."""
    return x * m - floor_mult(x, m)


class Lattice(Enum):
    ZERO = "zero"
    LOW = "low"
    HIGH = "high"
    INTERIOR = "interior"


def is_near_lattice(x: Exact, m: int, delta: Fraction) -> Lattice:
    """Classify {m*x} against the open bands (0, delta) and (1-delta, 1).

    Boundary hits {m*x} = delta or 1-delta are Interior (strict inequalities).
    """
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    f = frac_mult(x, m)
    if not f:
        return Lattice.ZERO
    if f < delta:
        return Lattice.LOW
    if f > 1 - delta:
        return Lattice.HIGH
    return Lattice.INTERIOR
