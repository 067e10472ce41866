"""Free-loop-space Betti numbers for rationally monogenic manifolds.

H^*(M;Q) = T_{d,n+1}(x) (truncated polynomial algebra, deg x = d, height
n+1).  Odd d forces n = 1 (x^2 = 0).  Everything here is a closed-form
integer/rational computation; the partial sums are computed both directly and
in closed form and the two must agree -- that agreement pins down the reading
of the exceptional degree set Omega(d,n), whose published index range (j
starting at 1) contradicts the closed form at (d,n) = (2,1); j runs from 0
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CohomologyShape:
    d: int
    n: int

    def __post_init__(self):
        if self.d < 2 or self.n < 1:
            raise ValueError("need d >= 2 and n >= 1")
        if self.d % 2 and self.n != 1:
            raise ValueError("odd d forces n = 1 (x^2 = 0)")

    @property
    def dim(self) -> int:
        return self.d * self.n

    @property
    def D(self) -> int:
        return self.d * (self.n + 1) - 2


def resonance_constant(shape: CohomologyShape) -> Fraction:
    """B(d,n): the exact value of sum gamma_c / ihat(c) over all geodesics."""
    d, n = shape.d, shape.n
    if d % 2 == 0:
        return Fraction(-n * (n + 1) * d, 2 * d * (n + 1) - 4)
    return Fraction(d + 1, 2 * d - 2)


def _in_omega(shape: CohomologyShape, p: int) -> bool:
    # p odd with p - (d-1) = i*D + j*d for some i >= 1, 0 <= j <= n-1
    d, n, D = shape.d, shape.n, shape.D
    r = p - (d - 1)
    i = 1
    while i * D <= r:
        j, rem = divmod(r - i * D, d)
        if rem == 0 and 0 <= j <= n - 1:
            return True
        i += 1
    return False


def betti(shape: CohomologyShape, p: int) -> int:
    """b_p of the free loop space (S^1-equivariant, relative constant loops)."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    d, n = shape.d, shape.n
    if d % 2:
        # rational S^d, d odd: support in even degrees >= d-1
        if p >= 2 * (d - 1) and p % (d - 1) == 0:
            return 2
        if p >= d - 1 and (p - (d - 1)) % 2 == 0:
            return 1
        return 0
    if p % 2 == 0 or p <= d - 2:
        return 0
    if p < d - 1 + (n - 1) * d:
        return (p - (d - 1)) // d + 1
    if _in_omega(shape, p):
        return n + 1
    return n


def epsilon_correction(shape: CohomologyShape, l: int) -> Fraction:
    """The rational defect of the linear closed form for sum_{p<=l} b_p, even d."""
    if shape.d % 2:
        raise ValueError("defined for even d only")
    d, n, D = shape.d, shape.n, shape.D

    def frac(x: Fraction) -> Fraction:
        return x - (x.numerator // x.denominator)

    x = frac(Fraction(l - (d - 1), D))
    return (
        frac(Fraction(D, d * n) * x)
        - (Fraction(2, d) + Fraction(d - 2, d * n)) * x
        - n * frac(Fraction(D, 2) * x)
        - frac(Fraction(D, d) * x)
    )


def betti_partial_sum(shape: CohomologyShape, l: int) -> tuple[int, int]:
    """(closed form, direct sum) of sum_{p<=l} b_p; callers assert equality."""
    d, n = shape.d, shape.n
    if d % 2:
        if l < d - 1:
            raise ValueError("closed form needs l >= d - 1")
        closed_f = Fraction(l // (d - 1) + l // 2) - Fraction(d - 1, 2)
    else:
        if l < d * n - 1:
            raise ValueError("closed form needs l >= dn - 1")
        closed_f = (
            Fraction(n * (n + 1) * d, 2 * shape.D) * (l - (d - 1))
            - Fraction(n * (n - 1) * d, 4)
            + 1
            + epsilon_correction(shape, l)
        )
    if closed_f.denominator != 1:
        raise AssertionError("closed form is not an integer: %s" % closed_f)
    direct = sum(betti(shape, p) for p in range(l + 1))
    return int(closed_f), direct


def alternating_betti_sum(shape: CohomologyShape, l: int) -> int:
    """sum_{p<=l} (-1)^p b_p.

    Even d: support is odd degrees, so this is minus the partial sum; odd d:
    support is even degrees, so it equals the partial sum.
    """
    closed, direct = betti_partial_sum(shape, l)
    if closed != direct:
        raise AssertionError(
            "betti partial-sum mismatch at l=%d: closed %d, direct %d"
            % (l, closed, direct)
        )
    return -closed if shape.d % 2 == 0 else closed
