import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cijt.scalars import Exact
from cijt.normal_forms import D, N1, N2, R, SymplecticClass
from cijt.iteration import (
    PathClass,
    index_iterate,
    index_iterate_bumpy,
    index_iterate_bumpy_class,
    mean_index,
    path_nullity,
)

SQRT2M1 = Exact.surd(-1, 1, 2)
T35 = Exact.surd(3, -1, 5)


def path(i1, *blocks):
    return PathClass(i1, SymplecticClass(tuple(blocks)))


class TestIndexIterate:
    def test_hyperbolic_linear(self):
        p = path(1, D(Exact(2)))
        assert [index_iterate(p, m) for m in (1, 2, 3)] == [1, 2, 3]

    def test_sqrt2_rotation(self):
        p = path(1, R(SQRT2M1))
        assert index_iterate(p, 70) == 29
        assert index_iterate(p, 1) == 1

    def test_three_sqrt5_rotation(self):
        p = path(1, R(T35))
        assert [index_iterate(p, m) for m in (1, 2, 3)] == [1, 1, 3]

    def test_m_positive(self):
        with pytest.raises(ValueError):
            index_iterate(path(1, D(Exact(2))), 0)


class TestBumpyShortcut:
    def test_direct_example(self):
        assert index_iterate_bumpy(1, 1, [SQRT2M1], 70) == 29

    def test_rejects_rational_angle(self):
        with pytest.raises(ValueError):
            index_iterate_bumpy(1, 1, [Exact(Fraction(1, 3))], 5)

    def test_class_wrapper_rejects_degenerate(self):
        with pytest.raises(ValueError):
            index_iterate_bumpy_class(path(1, N1(1, 1)), 2)


class TestMeanIndex:
    def test_values(self):
        assert mean_index(path(1, R(SQRT2M1))) == SQRT2M1
        assert mean_index(path(1, D(Exact(2)))) == Exact(1)
        assert mean_index(path(2, R(Exact.surd(Fraction(-1, 2), Fraction(1, 2), 5)))) == \
            Exact.surd(Fraction(1, 2), Fraction(1, 2), 5)  # 2 - 1 + (sqrt5-1)/2

    @given(st.integers(1, 6), st.integers(200, 400))
    @settings(max_examples=30, deadline=None)
    def test_mean_is_asymptotic_slope(self, i1, m):
        p = path(i1, R(SQRT2M1), D(Exact(2)))
        ihat = float(mean_index(p))
        assert abs(index_iterate(p, m) / m - ihat) < 5.0 / m


class TestCrossCheckGate:
    """The precise formula and the non-degenerate shortcut must agree on
    bumpy classes; this gates every transcribed splitting-table entry."""

    SURDS = [
        Exact.surd(-1, 1, 2),
        Exact.surd(3, -1, 5),
        Exact.surd(Fraction(1, 2), Fraction(1, 7), 3),
        Exact.surd(1, Fraction(1, 5), 7),
        Exact.surd(Fraction(3, 2), Fraction(-1, 9), 13),
    ]

    def _random_bumpy(self, rng):
        blocks = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.randint(0, 2)
            theta = rng.choice(self.SURDS)
            if kind == 0:
                blocks.append(D(Exact(rng.choice([2, -2, 3, -5]))))
            elif kind == 1:
                blocks.append(R(theta))
            else:
                blocks.append(N2(theta, rng.random() < 0.5))
        return PathClass(rng.randint(0, 6), SymplecticClass(tuple(blocks)))

    def test_agreement(self):
        rng = random.Random(7)
        for _ in range(40):
            p = self._random_bumpy(rng)
            for m in list(range(1, 30)) + [97, 211, 317]:
                assert index_iterate(p, m) == index_iterate_bumpy_class(p, m), (p, m)

    def test_nullity_zero_on_bumpy(self):
        rng = random.Random(11)
        for _ in range(20):
            p = self._random_bumpy(rng)
            for m in (1, 2, 5, 12):
                assert path_nullity(p, m) == 0
