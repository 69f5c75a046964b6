"""Piecewise-constant functions on [-1, 1] with exact rational data."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

ONE = Fraction(1)


@dataclass(frozen=True)
class PiecewiseConstantFn:
    """``values[i]`` on the open cell ``(breakpoints[i], breakpoints[i+1])``.

    Functions are compared as elements of L^1, so values at the breakpoints
    themselves carry no information.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        bp = tuple(Fraction(b) for b in self.breakpoints)
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if len(bp) != len(vals) + 1 or bp[0] != -1 or bp[-1] != 1:
            raise ValueError("breakpoints must run from -1 to 1 with one value per cell")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def constant(cls, c) -> "PiecewiseConstantFn":
        return cls((-ONE, ONE), (Fraction(c),))

    @classmethod
    def from_indicators(cls, terms: Iterable[tuple[Fraction, Fraction, Fraction]]) -> "PiecewiseConstantFn":
        """Sum of ``weight * 1_[lo, hi)`` over ``(weight, lo, hi)``, clipped to [-1, 1]."""
        terms = [(Fraction(w), max(Fraction(lo), -ONE), min(Fraction(hi), ONE)) for w, lo, hi in terms]
        terms = [t for t in terms if t[1] < t[2] and t[0]]
        pts = sorted({-ONE, ONE} | {t[1] for t in terms} | {t[2] for t in terms})
        # difference array over the sorted breakpoints
        index = {p: i for i, p in enumerate(pts)}
        delta = [Fraction(0)] * len(pts)
        for w, lo, hi in terms:
            delta[index[lo]] += w
            delta[index[hi]] -= w
        vals, acc = [], Fraction(0)
        for d in delta[:-1]:
            acc += d
            vals.append(acc)
        return cls(tuple(pts), tuple(vals)).simplify()

    def cells(self):
        return zip(self.breakpoints, self.breakpoints[1:], self.values)

    def __call__(self, x) -> Fraction:
        """Value on the cell to the right of ``x`` (to the left at ``x = 1``)."""
        x = Fraction(x)
        if not -1 <= x <= 1:
            raise ValueError(f"{x} outside [-1, 1]")
        i = min(bisect_right(self.breakpoints, x) - 1, len(self.values) - 1)
        return self.values[i]

    def integral(self, lo=-1, hi=1) -> Fraction:
        lo, hi = Fraction(lo), Fraction(hi)
        total = Fraction(0)
        for a, b, v in self.cells():
            a, b = max(a, lo), min(b, hi)
            if a < b:
                total += v * (b - a)
        return total

    def simplify(self) -> "PiecewiseConstantFn":
        bp, vals = [self.breakpoints[0]], []
        for a, b, v in self.cells():
            if vals and vals[-1] == v:
                bp[-1] = b
            else:
                vals.append(v)
                bp.append(b)
        return PiecewiseConstantFn(tuple(bp), tuple(vals))

    def scale(self, c) -> "PiecewiseConstantFn":
        c = Fraction(c)
        return PiecewiseConstantFn(self.breakpoints, tuple(c * v for v in self.values))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)

    def sup_distance(self, other: "PiecewiseConstantFn") -> Fraction:
        pts = sorted(set(self.breakpoints) | set(other.breakpoints))
        return max(abs(self((a + b) / 2) - other((a + b) / 2)) for a, b in zip(pts, pts[1:]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseConstantFn):
            return NotImplemented
        a, b = self.simplify(), other.simplify()
        return a.breakpoints == b.breakpoints and a.values == b.values

    def __hash__(self):
        s = self.simplify()
        return hash((s.breakpoints, s.values))

    def __str__(self) -> str:
        return " ".join(f"[{a},{b}):{v}" for a, b, v in self.cells())
