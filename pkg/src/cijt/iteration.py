"""Index iteration: i(gamma, m), nu(gamma, m) and the mean index.

The precise formula sums ceilings of m*theta/(2*pi) over the unit-circle
spectrum, weighted by minus-splitting numbers; the non-degenerate shortcut
uses floors over rotation angles only.  Both are implemented and must agree
on non-degenerate classes -- that agreement is the gate for the splitting
table in normal_forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Exact, ceil_mult, floor_mult
from .normal_forms import (
    SymplecticClass,
    R,
    crossing_sum,
    nullity,
    s_plus_one,
    unit_angles,
    validate_bumpy,
)


@dataclass(frozen=True)
class PathClass:
    """A symplectic path up to homotopy: initial index plus end-matrix class."""

    i1: int
    monodromy: SymplecticClass

    @property
    def _spectral(self):
        # (s_plus, C, [(theta/2 as Exact, S^- weight), ...]) cached per path
        cached = _SPECTRAL_CACHE.get(self)
        if cached is None:
            sp = s_plus_one(self.monodromy)
            angles = unit_angles(self.monodromy)
            half = Exact(Fraction(1, 2))
            minus = [(t * half, pair.minus) for t, pair in angles if pair.minus]
            c = sum(w for _, w in minus)
            cached = (sp, c, minus)
            _SPECTRAL_CACHE[self] = cached
        return cached

    def rho(self) -> int:
        sp, c, _ = self._spectral
        return self.i1 + sp - c


_SPECTRAL_CACHE: dict[PathClass, tuple] = {}


def index_iterate(p: PathClass, m: int) -> int:
    """i(gamma, m) by the precise iteration formula."""
    if m < 1:
        raise ValueError("m must be positive")
    sp, c, minus = p._spectral
    total = m * (p.i1 + sp - c) - (sp + c)
    for half_theta, w in minus:
        total += 2 * ceil_mult(half_theta, m) * w
    return total


def index_iterate_bumpy(i_c: int, r: int, angles: list[Exact], m: int) -> int:
    """i(c^m) = m*(i(c)-r) + 2*sum_j [m*theta_j/(2pi)] + r, rotation angles only.

    Valid for non-degenerate classes; rational angles are rejected because the
    shortcut is only claimed there.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if len(angles) != r:
        raise ValueError("expected %d rotation angles" % r)
    half = Exact(Fraction(1, 2))
    total = m * (i_c - r) + r
    for t in angles:
        if t.is_rational:
            raise ValueError("bumpy shortcut needs irrational theta/pi")
        total += 2 * floor_mult(t * half, m)
    return total


def index_iterate_bumpy_class(p: PathClass, m: int) -> int:
    """Convenience wrapper reading r and the rotation angles off the class."""
    if not validate_bumpy(p.monodromy):
        raise ValueError("class is degenerate at some iterate")
    angles = [b.theta for b in p.monodromy.blocks if isinstance(b, R)]
    return index_iterate_bumpy(p.i1, len(angles), angles, m)


def path_nullity(p: PathClass, m: int) -> int:
    return nullity(p.monodromy, m)


def mean_index(p: PathClass) -> Exact:
    """i-hat = i1 + S^+(1) - C(M) + sum theta/pi * S^-."""
    sp, c, minus = p._spectral
    out = Exact(p.i1 + sp - c)
    for half_theta, w in minus:
        out = out + half_theta * (2 * w)
    return out
