"""Exact iteration of the symmetric doubling maps and their companions.

Every map here works on :class:`fractions.Fraction` values, so orbits of
rational points are computed without rounding and cycles are detected by
exact equality.  The symmetric doubling map with parameter ``alpha`` is::

    S(x) = 2x + alpha   if -1 <= x < -1/2
    S(x) = 2x           if -1/2 <= x <= 1/2
    S(x) = 2x - alpha   if 1/2 < x <= 1

and the digit ``d`` emitted at ``x`` is the coefficient subtracted, i.e.
``S(x) = 2x - d * alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Union

HALF = Fraction(1, 2)

RationalLike = Union[Fraction, int, str]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact fraction.

    Accepts fractions, integers and strings such as ``"1024/945"`` or
    ``"1.3"``.  Floats are refused because their binary value is rarely the
    number the caller had in mind.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_alpha(alpha: Fraction) -> None:
    if not 1 <= alpha <= 2:
        raise DomainError(f"alpha={alpha} outside [1, 2]")


def digit(x: Fraction) -> int:
    """Signed digit of ``x``; the closed middle interval gives 0."""
    if x > HALF:
        return 1
    if x < -HALF:
        return -1
    return 0


def s_alpha_step(x: RationalLike, alpha: RationalLike) -> tuple[Fraction, int]:
    """One step of the symmetric doubling map: ``(S(x), d)``."""
    x = as_fraction(x)
    alpha = as_fraction(alpha)
    _check_alpha(alpha)
    if not -1 <= x <= 1:
        raise DomainError(f"x={x} outside [-1, 1]")
    d = digit(x)
    return 2 * x - d * alpha, d


def _step(x: Fraction, alpha: Fraction) -> tuple[Fraction, int]:
    # unchecked inner loop version of s_alpha_step
    if x > HALF:
        return 2 * x - alpha, 1
    if x < -HALF:
        return 2 * x + alpha, -1
    return 2 * x, 0


def orbit(x: RationalLike, alpha: RationalLike, n: int) -> list[Fraction]:
    """The points ``x, S(x), ..., S^n(x)``."""
    x, alpha = as_fraction(x), as_fraction(alpha)
    s_alpha_step(x, alpha)
    pts = [x]
    for _ in range(n):
        x, _ = _step(x, alpha)
        pts.append(x)
    return pts


def doubling(x: RationalLike) -> Fraction:
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise DomainError(f"doubling map needs 0 <= x < 1, got {x}")
    y = 2 * x
    return y - 1 if y >= 1 else y


def tent(x: RationalLike) -> Fraction:
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"tent map needs 0 <= x <= 1, got {x}")
    return 2 * x if x <= HALF else 2 - 2 * x


def farey(x: RationalLike) -> Fraction:
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"Farey map needs 0 <= x <= 1, got {x}")
    return x / (1 - x) if x <= HALF else (1 - x) / x


AUX_MAPS = {"doubling": doubling, "tent": tent, "farey": farey}


def aux_map_step(kind: str, x: RationalLike) -> Fraction:
    """Apply the doubling, tent or Farey map to ``x``."""
    try:
        fn = AUX_MAPS[kind]
    except KeyError:
        raise ValueError(f"unknown map {kind!r}; choose from {sorted(AUX_MAPS)}") from None
    return fn(x)


def render_digits(digits) -> str:
    return "".join("-" if d < 0 else str(d) for d in digits)


@dataclass(frozen=True)
class SignedDigitSeq:
    """An eventually periodic digit sequence ``preperiod . period^inf``.

    When ``truncated`` is set the period is empty and ``preperiod`` is only
    a finite prefix of the true sequence.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()
    truncated: bool = False

    def __post_init__(self):
        if not self.truncated and not self.period:
            raise ValueError("a complete sequence needs a nonempty period")
        if self.truncated and self.period:
            raise ValueError("a truncated sequence has no period")

    def __getitem__(self, i: int) -> int:
        # 0-based access into the infinite sequence
        if i < len(self.preperiod):
            return self.preperiod[i]
        if self.truncated:
            raise IndexError("beyond truncated prefix")
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> tuple[int, ...]:
        if self.truncated:
            n = min(n, len(self.preperiod))
        return tuple(self[i] for i in range(n))

    def __iter__(self) -> Iterator[int]:
        i = 0
        while True:
            try:
                yield self[i]
            except IndexError:
                return
            i += 1

    def normalized(self) -> "SignedDigitSeq":
        """Shortest period, then shortest preperiod."""
        if self.truncated:
            return self
        per = self.period
        k = len(per)
        for p in range(1, k + 1):
            if k % p == 0 and per[:p] * (k // p) == per:
                per = per[:p]
                break
        pre = self.preperiod
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        return SignedDigitSeq(pre, per)

    def same_as(self, other: "SignedDigitSeq") -> bool:
        if self.truncated or other.truncated:
            n = min(len(self.preperiod) if self.truncated else 10**9,
                    len(other.preperiod) if other.truncated else 10**9)
            return self.prefix(n) == other.prefix(n)
        a, b = self.normalized(), other.normalized()
        return a.preperiod == b.preperiod and a.period == b.period

    def satisfies_shift_condition(self, n: int | None = None) -> bool:
        """Check every shift of the sequence is lexicographically <= itself.

        For a complete sequence the check is exact: two eventually periodic
        sequences that agree on ``len(preperiod) + 2 * len(period)`` terms
        agree forever.  For a truncated one it checks the visible prefix.
        """
        if self.truncated:
            seq = self.preperiod if n is None else self.preperiod[:n]
            return all(seq[k:] <= seq[: len(seq) - k] for k in range(1, len(seq)))
        horizon = len(self.preperiod) + 2 * len(self.period)
        seq = self.prefix(2 * horizon)
        return all(seq[k : k + horizon] <= seq[:horizon] for k in range(1, horizon))

    def __str__(self) -> str:
        s = render_digits(self.preperiod)
        if self.truncated:
            return s + "..."
        return f"{s}({render_digits(self.period)})^∞"


def signed_digit_sequence(x: RationalLike, alpha: RationalLike, max_steps: int = 10_000) -> SignedDigitSeq:
    """Digit sequence of ``x`` under ``S_alpha`` with exact cycle detection."""
    x = as_fraction(x)
    alpha = as_fraction(alpha)
    s_alpha_step(x, alpha)
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    for i in range(max_steps):
        if x in seen:
            j = seen[x]
            return SignedDigitSeq(tuple(digits[:j]), tuple(digits[j:]))
        seen[x] = i
        x, d = _step(x, alpha)
        digits.append(d)
    if x in seen:
        j = seen[x]
        return SignedDigitSeq(tuple(digits[:j]), tuple(digits[j:]))
    return SignedDigitSeq(tuple(digits), (), truncated=True)


# --- matching -------------------------------------------------------------


@dataclass(frozen=True)
class Matched:
    m: int
    prefix: str

    def __str__(self) -> str:
        return f"Matched m={self.m}"


@dataclass(frozen=True)
class MarkovNoMatch:
    """The orbit of 1 (or of ``1 - alpha``) lands exactly on a critical point."""

    preperiod: int
    period: int
    hit_half: bool = True

    def __str__(self) -> str:
        return f"No matching (critical point hit; orbit of 1 has preperiod {self.preperiod}, period {self.period})"


@dataclass(frozen=True)
class CycleNoMatch:
    preperiod: int
    period: int

    def __str__(self) -> str:
        return f"No matching (orbit of 1 cycles; preperiod {self.preperiod}, period {self.period})"


MatchingResult = Union[Matched, MarkovNoMatch, CycleNoMatch]


def _orbit_cycle(y: Fraction, alpha: Fraction, seen: dict[Fraction, int], start: int) -> tuple[int, int]:
    # continue the orbit of 1 from index ``start`` until it repeats
    i = start
    while y not in seen:
        seen[y] = i
        y, _ = _step(y, alpha)
        i += 1
    return seen[y], i - seen[y]


def hole_time(alpha: Fraction, horizon: int) -> int | None:
    """First ``n < horizon`` with ``1/2 < S^n(1) < alpha - 1/2``, if any."""
    y = Fraction(1)
    upper = alpha - HALF
    for n in range(horizon):
        if HALF < y < upper:
            return n
        y, _ = _step(y, alpha)
    return None


def matching_index(alpha: RationalLike) -> MatchingResult:
    """Classify the matching behaviour of ``S_alpha`` for rational ``alpha``.

    The orbit of 1 is followed exactly.  The first time it enters the open
    hole ``(1/2, alpha - 1/2)`` at step ``n`` the two critical orbits meet
    at step ``m = n + 1``.  Landing exactly on ``1/2`` (or ``alpha - 1/2``,
    which puts the orbit of ``1 - alpha`` on ``-1/2``) rules matching out;
    so does a repeated state.  For ``alpha = p/q`` the orbit lives on the
    lattice ``(1/q)Z`` inside ``[-1, 1]`` and so repeats within ``2q + 2``
    steps.
    """
    alpha = as_fraction(alpha)
    if not 1 < alpha <= 2:
        raise DomainError(f"matching index needs 1 < alpha <= 2, got {alpha}")
    cap = 4 * alpha.denominator + 4
    upper = alpha - HALF
    y = Fraction(1)
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    for n in range(cap):
        if HALF < y < upper:
            digits.append(1)
            return Matched(n + 1, render_digits(digits))
        if y == HALF or y == upper:
            pre, per = _orbit_cycle(y, alpha, seen, n)
            return MarkovNoMatch(pre, per, hit_half=True)
        if y in seen:
            return CycleNoMatch(seen[y], n - seen[y])
        seen[y] = n
        y, d = _step(y, alpha)
        digits.append(d)
    raise AssertionError(f"orbit of 1 did not settle within {cap} steps for alpha={alpha}")


@dataclass
class OrbitReport:
    passed: bool
    checked_steps: int
    first_failure: int | None = None
    message: str = ""


def verify_orbit_identities(alpha: RationalLike, n_max: int) -> OrbitReport:
    """Check the two-orbit difference and the conjugacy with the doubling map.

    For ``0 <= n <= min(n_max, m)`` the difference ``S^n(1) - S^n(1 - alpha)``
    must be ``alpha`` before matching and 0 from the matching time ``m`` on.
    Up to step ``m - 1`` the orbit of 1 must equal ``alpha * D^n(1/alpha)``
    and the digits must equal the binary digits of ``1/alpha``.
    """
    alpha = as_fraction(alpha)
    if not 1 < alpha < Fraction(3, 2):
        raise DomainError(f"orbit identities are stated for 1 < alpha < 3/2, got {alpha}")
    res = matching_index(alpha)
    m = res.m if isinstance(res, Matched) else None
    last = n_max if m is None else min(n_max, m)
    y, z, b = Fraction(1), 1 - alpha, 1 / alpha
    for n in range(last + 1):
        expected = alpha if (m is None or n < m) else 0
        if y - z != expected:
            return OrbitReport(False, n, n, f"difference {y - z} != {expected} at n={n}")
        if m is None or n <= m - 1:
            if y != alpha * b:
                return OrbitReport(False, n, n, f"S^n(1)={y} != alpha*D^n(1/alpha)={alpha * b}")
        if n == last:
            break
        yd = digit(y)
        bd = 1 if b >= HALF else 0
        if (m is None or n + 1 <= m - 1) and yd != bd:
            return OrbitReport(False, n, n + 1, f"digit {n + 1}: signed {yd} != binary {bd}")
        y, _ = _step(y, alpha)
        z, _ = _step(z, alpha)
        b = 2 * b - bd
    return OrbitReport(True, last)


# --- non-matching set -----------------------------------------------------


def _orbit_points(x: Fraction, fn) -> list[Fraction]:
    # orbit x_1, x_2, ... (excluding x_0) up to and including the first repeat
    seen: set[Fraction] = set()
    pts = []
    y = fn(x)
    while y not in seen:
        seen.add(y)
        pts.append(y)
        y = fn(y)
    return pts


def lambda_membership(x: RationalLike) -> bool:
    """Whether ``T^k(x) <= x`` for every ``k >= 1`` (``T`` the tent map)."""
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x={x} outside [0, 1]")
    return all(y <= x for y in _orbit_points(x, tent))


def gamma_membership(x: RationalLike) -> bool:
    """Whether ``1 - x <= D^k(x) <= x`` for every ``k >= 1``.

    Decided directly with the doubling map, independently of the tent-map
    test; for ``x`` in ``[0, 1)`` the two sets differ only at 0.
    """
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise DomainError(f"x={x} outside [0, 1)")
    return all(1 - x <= y <= x for y in _orbit_points(x, doubling))


def in_non_matching_set(alpha: RationalLike) -> bool:
    """Membership of ``alpha`` in ``(1, 3/2)`` with no matching."""
    alpha = as_fraction(alpha)
    if not 1 < alpha < Fraction(3, 2):
        return False
    return not isinstance(matching_index(alpha), Matched)
