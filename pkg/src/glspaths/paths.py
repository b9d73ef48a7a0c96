"""Piecewise-linear paths in Q(x)P and the raising/lowering root operators.

A path is a finite list of (t, value) points with exact rational t,
interpolated linearly; pi(0) = 0 and pi(1) is its weight.  The operators
cut the path at exact solutions of h_i(t) = alpha_i^vee(pi(t)) hitting
integer levels and reflect or translate the middle zone.  This module is
the brute-force counterpart to the closed forms acting on GLS data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .rootdata import Weight, WeightContext, alpha, format_weight, weight


@dataclass(frozen=True)
class PiecewisePath:
    """Exact path; points are normalized so equal functions compare equal."""

    points: Tuple[Tuple[Fraction, Weight], ...]

    @staticmethod
    def from_points(pts: Sequence[Tuple[Fraction, Weight]]) -> "PiecewisePath":
        cleaned: List[Tuple[Fraction, Weight]] = []
        for t, v in pts:
            t = Fraction(t)
            if cleaned and cleaned[-1][0] == t:
                if cleaned[-1][1] != v:
                    raise ValueError(f"conflicting values at t={t}")
                continue
            cleaned.append((t, v))
        if len(cleaned) < 2:
            raise ValueError("a path needs at least the two endpoints")
        if cleaned[0][0] != 0 or cleaned[-1][0] != 1:
            raise ValueError("parameter range must be [0, 1]")
        if any(cleaned[k][0] >= cleaned[k + 1][0] for k in range(len(cleaned) - 1)):
            raise ValueError("parameters must increase strictly")
        if not cleaned[0][1].is_zero():
            raise ValueError("paths start at 0")
        # Drop interior points lying on the segment through their neighbours.
        out = [cleaned[0]]
        for k in range(1, len(cleaned) - 1):
            t0, v0 = out[-1]
            t1, v1 = cleaned[k]
            t2, v2 = cleaned[k + 1]
            if (v1 - v0) * (t2 - t1) == (v2 - v1) * (t1 - t0):
                continue
            out.append(cleaned[k])
        out.append(cleaned[-1])
        return PiecewisePath(tuple(out))

    @property
    def weight(self) -> Weight:
        return self.points[-1][1]

    def value_at(self, t: Fraction) -> Weight:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError(f"parameter {t} outside [0, 1]")
        pts = self.points
        for k in range(len(pts) - 1):
            t0, v0 = pts[k]
            t1, v1 = pts[k + 1]
            if t <= t1:
                if t == t0:
                    return v0
                if t == t1:
                    return v1
                return v0 + (v1 - v0) * ((t - t0) / (t1 - t0))
        return pts[-1][1]

    def trace(self) -> Tuple[Weight, ...]:
        """Corner values up to reparametrization: stalls dropped, co-directional
        segments merged.  Two paths are reparametrizations of each other iff
        their traces coincide."""
        corners = [self.points[0][1]]
        for _, v in self.points[1:]:
            if v == corners[-1]:
                continue
            if len(corners) >= 2 and _positively_parallel(corners[-1] - corners[-2],
                                                          v - corners[-1]):
                corners[-1] = v
            else:
                corners.append(v)
        if len(corners) == 1:
            corners.append(corners[0])
        return tuple(corners)


def _positively_parallel(d1: Weight, d2: Weight) -> bool:
    """Whether d2 = c*d1 for some rational c > 0 (both nonzero)."""
    items1 = dict(d1.base_items) | {("r", i): c for i, c in d1.root_items}
    items2 = dict(d2.base_items) | {("r", i): c for i, c in d2.root_items}
    if set(items1) != set(items2):
        return False
    ratio = None
    for k, c1 in items1.items():
        c2 = items2[k]
        if ratio is None:
            ratio = c2 / c1
        elif c2 != ratio * c1:
            return False
    return ratio is not None and ratio > 0


def equal_up_to_reparametrization(p: PiecewisePath, q: PiecewisePath) -> bool:
    return p.trace() == q.trace()


def linear_path(ctx: WeightContext, lam: Weight) -> PiecewisePath:
    """The straight path t*lam (the constant path when lam = 0)."""
    if not ctx.is_in_P(lam):
        raise ValueError(f"endpoint {format_weight(lam)} is not in P")
    return PiecewisePath.from_points([(Fraction(0), weight()), (Fraction(1), lam)])


def trivial_path() -> PiecewisePath:
    return PiecewisePath.from_points([(Fraction(0), weight()), (Fraction(1), weight())])


def path_to_text(pi: PiecewisePath) -> str:
    """Serialization: one '(t) value' line per point, exact rationals."""
    return "\n".join(f"{t} : {format_weight(v)}" for t, v in pi.points)


# -- scanning piecewise-linear height profiles --------------------------
#
# All helpers work on parallel lists ts/hs of breakpoint times and values;
# between breakpoints the function is linear.  Solutions of h = target are
# computed by exact linear solves, never by tolerance.


def last_time_at(ts: Sequence[Fraction], hs: Sequence[Fraction],
                 target: Fraction, upto: Optional[Fraction] = None) -> Optional[Fraction]:
    """Rightmost t (<= upto if given) with h(t) = target."""
    hi = ts[-1] if upto is None else upto
    for k in range(len(ts) - 1, 0, -1):
        t0, t1 = ts[k - 1], ts[k]
        h0, h1 = hs[k - 1], hs[k]
        if t0 >= hi:
            continue
        if t1 > hi:
            h1 = h0 + (h1 - h0) * ((hi - t0) / (t1 - t0))
            t1 = hi
        if h1 == target:
            return t1
        if (h0 - target) * (h1 - target) < 0:
            return t0 + (target - h0) * (t1 - t0) / (h1 - h0)
        if h0 == target:
            return t0
    return None


def first_time_at(ts: Sequence[Fraction], hs: Sequence[Fraction],
                  target: Fraction, start: Fraction) -> Optional[Fraction]:
    """Leftmost t >= start with h(t) = target."""
    for k in range(1, len(ts)):
        t0, t1 = ts[k - 1], ts[k]
        h0, h1 = hs[k - 1], hs[k]
        if t1 < start:
            continue
        if t0 < start:
            h0 = h0 + (h1 - h0) * ((start - t0) / (t1 - t0))
            t0 = start
        if h0 == target:
            return t0
        if (h0 - target) * (h1 - target) < 0:
            return t0 + (target - h0) * (t1 - t0) / (h1 - h0)
        if h1 == target:
            return t1
    return None


def min_value_on(ts: Sequence[Fraction], hs: Sequence[Fraction],
                 lo: Fraction, hi: Fraction) -> Fraction:
    """Exact minimum of the piecewise-linear function on [lo, hi]."""
    vals = []
    for k in range(1, len(ts)):
        t0, t1 = ts[k - 1], ts[k]
        if t1 < lo or t0 > hi:
            continue
        h0, h1 = hs[k - 1], hs[k]
        slope_num, slope_den = h1 - h0, t1 - t0
        a = max(t0, lo)
        b = min(t1, hi)
        vals.append(h0 + slope_num * (a - t0) / slope_den)
        vals.append(h0 + slope_num * (b - t0) / slope_den)
    return min(vals)


def max_value_on(ts: Sequence[Fraction], hs: Sequence[Fraction],
                 lo: Fraction, hi: Fraction) -> Fraction:
    return -min_value_on(ts, [-h for h in hs], lo, hi)


# -- h-profiles and the operators ---------------------------------------


@dataclass(frozen=True)
class HProfile:
    """Breakpoint data of h_i along a path plus the four operator arguments.

    ``m`` is the minimal integer attained by h_i.  ``f_plus`` is the last
    time h hits m, ``f_minus`` the first time >= f_plus hitting m+1 (absent
    iff f_plus = 1).  The e-arguments follow the real or the imaginary
    convention of the index; ``e_defined`` records whether the raising
    operator applies at all (for an imaginary index this folds in the three
    kill conditions, evaluated in the order: f_plus = 1, level m+1-a_ii
    never reached after f_plus, drop to m-a_ii after e_plus).
    """

    index: int
    breakpoints: Tuple[Tuple[Fraction, Fraction], ...]
    m: int
    f_plus: Fraction
    f_minus: Optional[Fraction]
    e_plus: Optional[Fraction]
    e_minus: Optional[Fraction]
    e_defined: bool


def h_profile(ctx: WeightContext, i: int, pi: PiecewisePath) -> HProfile:
    ts = [t for t, _ in pi.points]
    hs = [ctx.pairing(i, v) for _, v in pi.points]
    m = math.ceil(min(hs))
    assert m <= 0  # h(0) = 0
    f_plus = last_time_at(ts, hs, Fraction(m))
    assert f_plus is not None
    f_minus = None if f_plus == 1 else first_time_at(ts, hs, Fraction(m + 1), f_plus)
    if ctx.matrix.is_real(i):
        e_plus = first_time_at(ts, hs, Fraction(m), Fraction(0))
        e_minus = None if e_plus == 0 else last_time_at(ts, hs, Fraction(m + 1), e_plus)
        e_defined = e_plus != 0
    else:
        a = ctx.matrix.entry(i, i)
        e_minus = f_plus
        e_plus = None
        e_defined = False
        if e_minus != 1 and max_value_on(ts, hs, e_minus, Fraction(1)) >= m + 1 - a:
            e_plus = first_time_at(ts, hs, Fraction(m + 1 - a), e_minus)
            assert e_plus is not None
            e_defined = min_value_on(ts, hs, e_plus, Fraction(1)) > m - a
    return HProfile(i, tuple(zip(ts, hs)), m, f_plus, f_minus, e_plus, e_minus, e_defined)


def _three_zone(pi: PiecewisePath, u: Fraction, v: Fraction,
                middle: Callable[[Weight], Weight], shift: Weight) -> PiecewisePath:
    """Rebuild a path: unchanged on [0,u], middle map relative to pi(u) on
    [u,v], translated by shift on [v,1]."""
    base = pi.value_at(u)
    pts: List[Tuple[Fraction, Weight]] = []
    for t, val in pi.points:
        if t < u:
            pts.append((t, val))
    pts.append((u, base))
    for t, val in pi.points:
        if u < t < v:
            pts.append((t, base + middle(val - base)))
    mid_end = base + middle(pi.value_at(v) - base)
    assert mid_end == pi.value_at(v) + shift, "zone junction mismatch"
    pts.append((v, mid_end))
    for t, val in pi.points:
        if t > v:
            pts.append((t, val + shift))
    return PiecewisePath.from_points(pts)


def apply_f(ctx: WeightContext, i: int, pi: PiecewisePath) -> Optional[PiecewisePath]:
    """Lowering operator: reflect between f_plus and f_minus, then shift by
    -alpha_i; absent exactly when h_i never leaves its minimum after f_plus."""
    prof = h_profile(ctx, i, pi)
    if prof.f_plus == 1:
        return None
    return _three_zone(pi, prof.f_plus, prof.f_minus,
                       lambda w: ctx.reflect(i, w), -alpha(i))


def apply_e(ctx: WeightContext, i: int, pi: PiecewisePath) -> Optional[PiecewisePath]:
    """Raising operator; the imaginary case undoes a reflection with r_i^{-1}."""
    prof = h_profile(ctx, i, pi)
    if not prof.e_defined:
        return None
    if ctx.matrix.is_real(i):
        return _three_zone(pi, prof.e_minus, prof.e_plus,
                           lambda w: ctx.reflect(i, w), alpha(i))
    return _three_zone(pi, prof.e_minus, prof.e_plus,
                       lambda w: ctx.reflect_inverse(i, w), alpha(i))


def concatenate(pi1: PiecewisePath, pi2: PiecewisePath, s: Fraction,
                ctx: Optional[WeightContext] = None) -> PiecewisePath:
    """Run pi1 on [0,s] and pi2 on [s,1]; weights add.

    The junction value is pi1(1); when a context is supplied it is checked
    to lie in P, which is what keeps the operators from straddling the
    junction."""
    s = Fraction(s)
    if not 0 < s < 1:
        raise ValueError(f"junction parameter must lie in (0,1), got {s}")
    if ctx is not None and not ctx.is_in_P(pi1.weight):
        raise ValueError(f"junction weight {format_weight(pi1.weight)} is not in P")
    pts = [(t * s, v) for t, v in pi1.points]
    shift = pi1.weight
    pts += [(s + (1 - s) * t, shift + v) for t, v in pi2.points if t > 0]
    return PiecewisePath.from_points(pts)


def is_integral(ctx: WeightContext, pi: PiecewisePath) -> bool:
    """The global minimum of every h_i is an integer."""
    for i in ctx.matrix.indices:
        low = min(ctx.pairing(i, v) for _, v in pi.points)
        if low.denominator != 1:
            return False
    return True


def is_monotone(ctx: WeightContext, pi: PiecewisePath, strict: bool = True) -> bool:
    """h_i increases on [f_plus, f_minus] and stays >= m+1 afterwards, for
    every index whose lowering operator is defined.  ``strict=False`` uses
    the weakened form appropriate for joined paths."""
    for i in ctx.matrix.indices:
        prof = h_profile(ctx, i, pi)
        if prof.f_plus == 1:
            continue
        ts = [t for t, _ in prof.breakpoints]
        hs = [h for _, h in prof.breakpoints]
        for k in range(1, len(ts)):
            a = max(ts[k - 1], prof.f_plus)
            b = min(ts[k], prof.f_minus)
            if a >= b:
                continue
            rise = hs[k] - hs[k - 1]
            if rise < 0 or (strict and rise == 0):
                return False
        if min_value_on(ts, hs, prof.f_minus, Fraction(1)) < prof.m + 1:
            return False
    return True


def path_epsilon(ctx: WeightContext, i: int, pi: PiecewisePath):
    """Crystal statistic on the ambient path set: -m_i for real i, 0 imaginary."""
    if ctx.matrix.is_real(i):
        return -h_profile(ctx, i, pi).m
    return 0


def path_phi(ctx: WeightContext, i: int, pi: PiecewisePath):
    return path_epsilon(ctx, i, pi) + ctx.pairing(i, pi.weight)
