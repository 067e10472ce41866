"""Common-index-jump tuple construction and certification.

Given symplectic paths gamma_1..gamma_q with positive mean indices, find
(N, m_1, ..., m_q) with

    m_k = ([N / (Mbar * ihat_k)] + chi_k) * Mbar,
    {m_k * theta/pi} = 0 for rational angles,
    {m_k * theta/pi} within delta of the lattice for irrational angles,
    I(k, m_k) = N + Delta_k,

and certify the index identities for the iterates 2m_k +- m.  The search
enumerates candidate iterates of one path with a float prefilter and a guard
band, then certifies every condition in exact arithmetic; the reported tuple
is the smallest admissible N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .scalars import Exact, Lattice, ceil_mult, floor_mult, frac_mult, is_near_lattice
from .normal_forms import N1, N2, R, SymplecticClass, m_check
from .iteration import PathClass, index_iterate, mean_index, path_nullity


class NonPositiveMeanIndex(ValueError):
    pass


class NotFoundWithinBound(RuntimeError):
    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class CertificationError(AssertionError):
    """A tuple accepted by the search failed re-verification (engine bug)."""


_FLOAT_GUARD = 1e-6


def common_period(paths: Sequence[PathClass]) -> int:
    """Least Mbar with Mbar * theta/pi integral for every rational angle."""
    mbar = 1
    for p in paths:
        for b in p.monodromy.blocks:
            if isinstance(b, N1) and b.lam == -1:
                pass  # theta = pi, denominator 1
            elif isinstance(b, (R, N2)) and b.theta.is_rational:
                mbar = math.lcm(mbar, b.theta.r.denominator)
    return mbar


def delta_zero(paths: Sequence[PathClass], m_bar: int) -> Fraction:
    """Rational lower bound just below min over irrational angles, h <= m_bar,
    of min({h*theta/2pi}, 1 - {h*theta/2pi}), capped at 1/2."""
    if m_bar < 1:
        raise ValueError("m_bar must be positive")
    half = Exact(Fraction(1, 2))
    best: Exact = half
    for p in paths:
        for b in p.monodromy.blocks:
            if isinstance(b, (R, N2)) and not b.theta.is_rational:
                ht = b.theta * half
                for h in range(1, m_bar + 1):
                    f = frac_mult(ht, h)
                    for cand in (f, Exact(1) - f):
                        if cand < best:
                            best = cand
    if best.is_rational:
        return best.as_fraction()
    # certified rational just below the surd minimum, denominator <= 10**6
    approx = Fraction(math.floor(float(best) * 10**6) - 2, 10**6)
    while approx > 0 and not Exact(approx) < best:
        approx -= Fraction(1, 10**6)
    if approx <= 0:
        approx = Fraction(1, 2)
        while not Exact(approx) < best:
            approx /= 2
    return approx


@dataclass
class SelectionProblem:
    paths: tuple[PathClass, ...]
    delta: Fraction = Fraction(1, 200)
    m_bar: int = 1
    N_bound: int = 10**8
    N_multiple_of: int = 1
    delta_shrunk: bool = field(default=False, init=False)
    delta_zero_value: Fraction = field(default=Fraction(1, 2), init=False)

    def __post_init__(self):
        self.paths = tuple(self.paths)
        if not self.paths:
            raise ValueError("need at least one path")
        for p in self.paths:
            if not mean_index(p) > Exact(0):
                raise NonPositiveMeanIndex("path %r has mean index <= 0" % (p,))
        self.delta = Fraction(self.delta)
        if not 0 < self.delta < Fraction(1, 2):
            raise ValueError("delta must lie in (0, 1/2)")
        if self.m_bar < 1 or self.N_bound < 1 or self.N_multiple_of < 1:
            raise ValueError("m_bar, N_bound, N_multiple_of must be positive")
        self.delta_zero_value = delta_zero(self.paths, self.m_bar)
        if self.delta >= self.delta_zero_value:
            self.delta = self.delta_zero_value / 2
            self.delta_shrunk = True


@dataclass(frozen=True)
class VertexSpec:
    """chi bits per path, then one Low/High bit (0/1) per irrational R/N2 block."""

    chi: tuple[int, ...]
    angle_bits: tuple[tuple[int, ...], ...]

    def flat(self) -> tuple[int, ...]:
        return self.chi + tuple(b for bits in self.angle_bits for b in bits)


@dataclass(frozen=True)
class CheckRecord:
    k: int
    m: int
    equation: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckRecord, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def mismatches(self) -> tuple[CheckRecord, ...]:
        return tuple(c for c in self.checks if not c.ok)


@dataclass(frozen=True)
class CijtTuple:
    N: int
    m: tuple[int, ...]
    chi: tuple[int, ...]
    Delta: tuple[int, ...]
    M_bar: int
    vertex: VertexSpec
    delta: Fraction
    report: Optional[VerificationReport] = None

    def to_json(self):
        return {
            "N": self.N,
            "m": list(self.m),
            "chi": list(self.chi),
            "Delta": list(self.Delta),
            "M_bar": self.M_bar,
            "vertex": {
                "chi": list(self.vertex.chi),
                "angle_bits": [list(b) for b in self.vertex.angle_bits],
            },
            "delta": [self.delta.numerator, self.delta.denominator],
            "verification": None
            if self.report is None
            else {
                "ok": self.report.ok,
                "checks": [
                    {
                        "path": c.k,
                        "m": c.m,
                        "equation": c.equation,
                        "lhs": c.lhs,
                        "rhs": c.rhs,
                        "ok": c.ok,
                    }
                    for c in self.report.checks
                ],
            },
        }


class _PathData:
    """Per-path constants and condition lists for the search."""

    def __init__(self, path: PathClass, m_bar_period: int):
        self.path = path
        self.mean = mean_index(path)
        sp, c, _ = path._spectral
        self.s_plus = sp
        self.C = c
        self.rho = path.i1 + sp - c
        # u = 1 / (Mbar * ihat): chi component of the torus vector
        self.u = Exact(1) / (self.mean * m_bar_period)
        self.u_pinned = self.u.is_rational
        self.u_float = float(self.u)
        # all angles theta/pi with S^- weight (for I and Delta)
        from .normal_forms import unit_angles

        self.weighted = [(t, pair.minus) for t, pair in unit_angles(path.monodromy) if pair.minus]
        # one representative irrational angle per R/N2 block, in block order:
        # these carry the vertex bits; conjugates follow automatically
        self.bit_angles = [
            b.theta
            for b in path.monodromy.blocks
            if isinstance(b, (R, N2)) and not b.theta.is_rational
        ]
        self.bit_floats = [float(t) for t in self.bit_angles]

    def I(self, m: int) -> int:
        total = m * self.rho
        for t, w in self.weighted:
            total += ceil_mult(t, m) * w
        return total

    def delta_count(self, m: int, delta: Fraction) -> int:
        out = 0
        for t, w in self.weighted:
            if not t.is_rational and is_near_lattice(t, m, delta) is Lattice.LOW:
                out += w
        return out

    def classify_bits(self, m: int, delta: Fraction) -> Optional[tuple[int, ...]]:
        """Low/High bits of the representative angles, or None if any is Interior/Zero."""
        bits = []
        for t in self.bit_angles:
            cls = is_near_lattice(t, m, delta)
            if cls is Lattice.LOW:
                bits.append(0)
            elif cls is Lattice.HIGH:
                bits.append(1)
            else:
                return None
        return tuple(bits)


def _float_band_ok(frac: float, delta: float, want: Optional[int]) -> bool:
    if want == 0:
        return frac < delta + _FLOAT_GUARD
    if want == 1:
        return frac > 1 - delta - _FLOAT_GUARD
    return frac < delta + _FLOAT_GUARD or frac > 1 - delta - _FLOAT_GUARD


def _chi_proximity_ok(pd: _PathData, N: int, chi: int, eps: Fraction) -> bool:
    if pd.u_pinned:
        return True
    f = frac_mult(pd.u, N)
    if chi == 0:
        return f < eps
    return f > 1 - eps


def _try_path(
    pd: _PathData,
    N: int,
    mbar: int,
    delta: Fraction,
    want_chi: Optional[int],
    want_bits: Optional[tuple[int, ...]],
    chi_eps: Optional[Fraction],
):
    """Check one path at candidate N; returns (m, chi, bits, Delta) or None."""
    base = floor_mult(pd.u, N)
    chis = (want_chi,) if want_chi is not None and not pd.u_pinned else (0, 1)
    for chi in chis:
        m = (base + chi) * mbar
        if m < 1:
            continue
        bits = pd.classify_bits(m, delta)
        if bits is None and pd.bit_angles:
            continue
        bits = bits or ()
        if want_bits is not None and bits != want_bits:
            continue
        if chi_eps is not None and not _chi_proximity_ok(pd, N, chi, chi_eps):
            continue
        d = pd.delta_count(m, delta)
        if pd.I(m) != N + d:
            continue
        return m, chi, bits, d
    return None


def find_tuple(
    problem: SelectionProblem,
    vertex: Optional[VertexSpec] = None,
    chi_eps: Optional[Fraction] = None,
    min_N: int = 1,
) -> CijtTuple:
    """Smallest admissible N realizing the (demanded or first-found) vertex.

    chi_eps, when given, additionally enforces |{N/(Mbar*ihat_k)} - chi_k| <
    chi_eps on the non-pinned chi components (needed by the counting
    pipelines to convert floors into exact multiples of N).
    """
    mbar = common_period(problem.paths)
    data = [_PathData(p, mbar) for p in problem.paths]
    delta = problem.delta
    if vertex is not None:
        if len(vertex.chi) != len(data) or any(
            len(bits) != len(pd.bit_angles) for bits, pd in zip(vertex.angle_bits, data)
        ):
            raise ValueError("vertex spec shape does not match the problem")

    # generator path: the one with the most lattice conditions (sparsest hits)
    gen = max(range(len(data)), key=lambda i: len(data[i].bit_angles))
    g = data[gen]
    others = [i for i in range(len(data)) if i != gen]

    def accept(N: int):
        if N < max(1, min_N) or N > problem.N_bound or N % problem.N_multiple_of:
            return None
        ms, chis, all_bits, deltas = [], [], [], []
        for i, pd in enumerate(data):
            want_chi = vertex.chi[i] if vertex is not None else None
            want_bits = vertex.angle_bits[i] if vertex is not None else None
            got = _try_path(pd, N, mbar, delta, want_chi, want_bits, chi_eps)
            if got is None:
                return None
            m, chi, bits, d = got
            ms.append(m)
            chis.append(chi)
            all_bits.append(bits)
            deltas.append(d)
        realized = VertexSpec(tuple(chis), tuple(all_bits))
        return CijtTuple(
            N, tuple(ms), tuple(chis), tuple(deltas), mbar, realized, delta
        )

    best: Optional[CijtTuple] = None
    best_residual = math.inf

    if g.bit_angles:
        want_bits = vertex.angle_bits[gen] if vertex is not None else None
        df = float(delta)
        ihat = float(g.mean)
        m_cap = int((problem.N_bound + 2 * g.C + 4) / ihat) + 2 * mbar
        lo_m = max(mbar, (int(min_N / ihat) // mbar) * mbar)
        m = lo_m
        while m <= m_cap:
            ok = True
            worst = 0.0
            for j, tf in enumerate(g.bit_floats):
                fr = (m * tf) % 1.0
                worst = max(worst, min(fr, 1.0 - fr))
                if not _float_band_ok(fr, df, want_bits[j] if want_bits else None):
                    ok = False
                    break
            best_residual = min(best_residual, worst)
            if ok:
                bits = g.classify_bits(m, delta)
                if bits is not None and (want_bits is None or bits == want_bits):
                    d = g.delta_count(m, delta)
                    N = g.I(m) - d
                    cand = accept(N)
                    if cand is not None and (best is None or cand.N < best.N):
                        if cand.m[gen] == m:
                            best = cand
                            # later m cannot yield smaller N once m*ihat clears it
                            m_cap = min(m_cap, int((best.N + 2 * g.C + 4) / ihat) + 2 * mbar)
            m += mbar
    else:
        # no lattice conditions on any path beyond rational periodicity
        start = max(1, min_N)
        start += (-start) % problem.N_multiple_of
        for N in range(start, problem.N_bound + 1, problem.N_multiple_of):
            best = accept(N)
            if best is not None:
                break

    if best is None:
        raise NotFoundWithinBound(
            "no tuple with N <= %d (delta = %s, best lattice residual %s)"
            % (problem.N_bound, problem.delta,
               "n/a" if best_residual is math.inf else "%.3g" % best_residual),
            best_residual=None if best_residual is math.inf else best_residual,
        )
    report = verify_tuple(best, problem)
    if not report.ok:
        raise CertificationError(
            "search produced an uncertifiable tuple: %r" % (report.mismatches,)
        )
    return CijtTuple(
        best.N, best.m, best.chi, best.Delta, best.M_bar, best.vertex, best.delta, report
    )


def q_correction(path: PathClass, m_k: int, m: int) -> int:
    """Q_k(m): S^- weight of angles with {m_k*theta/pi} = {m*theta/2pi} = 0."""
    sp, c, _ = path._spectral
    out = 0
    from .normal_forms import unit_angles

    for t, pair in unit_angles(path.monodromy):
        if not pair.minus or not t.is_rational:
            continue
        if (m_k * t.r) % 1 == 0 and (m * t.r / 2) % 1 == 0:
            out += pair.minus
    return out


def verify_tuple(t: CijtTuple, problem: SelectionProblem) -> VerificationReport:
    """Re-derive the index/nullity identities of the jump interval from scratch."""
    checks: list[CheckRecord] = []
    for k, (path, m_k) in enumerate(zip(problem.paths, t.m)):
        sp, c, _ = path._spectral
        mc = m_check(path.monodromy)
        nu1 = path_nullity(path, 1)
        two_n = 2 * t.N
        for m in range(1, problem.m_bar + 1):
            nu_m = path_nullity(path, m)
            for side, it in (("+", 2 * m_k + m), ("-", 2 * m_k - m)):
                if it < 1:
                    continue
                checks.append(
                    CheckRecord(k, m, "nullity(2m%s m)" % side, path_nullity(path, it), nu_m)
                )
                if m < mc:
                    checks.append(
                        CheckRecord(
                            k, m, "nullity(2m%s m) = nullity(1)" % side,
                            path_nullity(path, it), nu1,
                        )
                    )
            checks.append(
                CheckRecord(
                    k, m, "index(2m+m)",
                    index_iterate(path, 2 * m_k + m),
                    two_n + index_iterate(path, m),
                )
            )
            if 2 * m_k - m >= 1:
                checks.append(
                    CheckRecord(
                        k, m, "index(2m-m)",
                        index_iterate(path, 2 * m_k - m),
                        two_n - index_iterate(path, m) - 2 * (sp + q_correction(path, m_k, m)),
                    )
                )
        checks.append(
            CheckRecord(
                k, 0, "index(2m)",
                index_iterate(path, 2 * m_k),
                two_n - (sp + c - 2 * t.Delta[k]),
            )
        )
    return VerificationReport(tuple(checks))


def _ceil_exact(x: Exact) -> int:
    f = floor_mult(x, 1)
    if x.is_rational and x.r.denominator == 1:
        return f
    return f + 1 if x - f > Exact(0) else f


def xi_plus(m_k: int, theta: Exact, m: int) -> int:
    """E(m_k t + m t/2) - E(m_k t) - E(m t/2), t = theta/pi."""
    half_m = Fraction(2 * m_k + m, 2)
    return (
        _ceil_exact(theta * half_m)
        - ceil_mult(theta, m_k)
        - _ceil_exact(theta * Fraction(m, 2))
    )


def xi_minus(m_k: int, theta: Exact, m: int) -> int:
    """E(m_k t - m t/2) - E(m_k t) + E(m t/2), t = theta/pi."""
    half_m = Fraction(2 * m_k - m, 2)
    return (
        _ceil_exact(theta * half_m)
        - ceil_mult(theta, m_k)
        + _ceil_exact(theta * Fraction(m, 2))
    )


def opposite_tuple(
    t: CijtTuple,
    problem: SelectionProblem,
    chi_eps: Optional[Fraction] = None,
) -> CijtTuple:
    """Tuple at the opposite cube vertex; pinned chi components stay free.

    Checks Delta_k + Delta'_k = C(M_k) for every path before returning.
    """
    mbar = common_period(problem.paths)
    data = [_PathData(p, mbar) for p in problem.paths]
    chi = tuple(
        t.chi[i] if data[i].u_pinned else 1 - t.chi[i] for i in range(len(data))
    )
    bits = tuple(tuple(1 - b for b in path_bits) for path_bits in t.vertex.angle_bits)
    if chi_eps is None:
        chi_eps = problem.delta
    opp = find_tuple(problem, vertex=VertexSpec(chi, bits), chi_eps=chi_eps)
    for k, pd in enumerate(data):
        if t.Delta[k] + opp.Delta[k] != pd.C:
            raise CertificationError(
                "Delta + Delta' = %d != C = %d on path %d"
                % (t.Delta[k] + opp.Delta[k], pd.C, k)
            )
    return opp


def m_bar_for_geodesics(paths: Sequence[PathClass], d: int, n: int) -> int:
    """max over paths of the least m with i(c^m) >= i(c) + 2(dn-1)."""
    out = 1
    for p in paths:
        ihat = mean_index(p)
        if not ihat > Exact(0):
            raise NonPositiveMeanIndex("path %r has mean index <= 0" % (p,))
        target = p.i1 + 2 * (d * n - 1)
        slack = 2 * p.monodromy.half_dimension + abs(p.i1) + 2
        stop = int((target + slack) / float(ihat)) + 2
        for m in range(1, stop + 1):
            if index_iterate(p, m) >= target:
                out = max(out, m)
                break
        else:
            raise AssertionError("stopping bound missed for %r" % (p,))
    return out
