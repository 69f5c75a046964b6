"""Invariant densities, the transfer operator and the mass of the middle branch."""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .blocks import (
    Boundary,
    HighRegion,
    Interval,
    NonMatching,
    enumerate_primitive,
    interval_endpoints,
    locate,
    matching_interval,
)
from .dynamics import HALF, DomainError, Matched, RationalLike, _step, as_fraction, matching_index
from .piecewise import PiecewiseConstantFn
from .words import Word, check_word, x_value

TWO_THIRDS = Fraction(2, 3)

# Safe prime Q = 2r + 1 with Q = 3 (mod 8), so 2 generates the multiplicative group mod Q.
LATTICE_PRIME = 2305843009213701227


# -- densities ---------------------------------------------------------------


def _orbit_terms(alpha: Fraction, n: int) -> list[tuple[Fraction, Fraction]]:
    """Pairs ``(S^k(1 - alpha), S^k(1))`` for ``k < n``."""
    lo, hi = 1 - alpha, Fraction(1)
    out = []
    for _ in range(n):
        out.append((lo, hi))
        lo, _d = _step(lo, alpha)
        hi, _d = _step(hi, alpha)
    return out


def _signed_indicator(w: Fraction, a: Fraction, b: Fraction) -> list[tuple[Fraction, Fraction, Fraction]]:
    # w * (1_[-1,b) - 1_[-1,a)), which is w * 1_[a,b) when a < b
    return [(w, -1, b), (-w, -1, a)]


def _series_terms(pairs: Sequence[tuple[Fraction, Fraction]], start: int = 0, factor: Fraction = Fraction(1)):
    terms = []
    for k, (lo, hi) in enumerate(pairs, start=start):
        w = factor / 2 ** (k + 1)
        terms += _signed_indicator(w, lo, hi)
        terms += _signed_indicator(w, -hi, -lo)
    return terms


def density_closed_form(alpha: RationalLike) -> PiecewiseConstantFn:
    """Exact density for a matching parameter, from the series cut at the matching time."""
    alpha = as_fraction(alpha)
    if alpha == 1:
        return PiecewiseConstantFn.constant(HALF)
    res = matching_index(alpha)
    if not isinstance(res, Matched):
        raise DomainError(f"alpha={alpha} does not match ({res}); use density_series or density_exact")
    m = res.m
    inv_c = Fraction(2**m, 2 * alpha * (2**m - 1))
    return PiecewiseConstantFn.from_indicators(_series_terms(_orbit_terms(alpha, m), factor=inv_c))


@dataclass(frozen=True)
class SeriesDensity:
    density: PiecewiseConstantFn
    depth: int
    tail_bound: Fraction  # sup-norm bound on the omitted terms after normalisation


def density_series(alpha: RationalLike, depth: int) -> SeriesDensity:
    """Partial sum of the density series, normalised by its own exact integral."""
    alpha = as_fraction(alpha)
    if not 1 < alpha <= 2:
        raise DomainError(f"alpha must lie in (1, 2], got {alpha}")
    if depth < 1:
        raise ValueError("depth must be positive")
    raw = PiecewiseConstantFn.from_indicators(_series_terms(_orbit_terms(alpha, depth)))
    z = raw.integral()
    return SeriesDensity(raw.scale(1 / z), depth, Fraction(2, 2**depth) / z)


def density_exact(alpha: RationalLike) -> PiecewiseConstantFn:
    """Exact density for any rational ``alpha`` in (1, 2].

    The pair of critical orbits lives on a finite lattice, so the series has
    an eventually periodic tail that sums as a geometric series.
    """
    alpha = as_fraction(alpha)
    if alpha == 1:
        return PiecewiseConstantFn.constant(HALF)
    if not 1 < alpha <= 2:
        raise DomainError(f"alpha must lie in (1, 2], got {alpha}")
    seen: dict[tuple[Fraction, Fraction], int] = {}
    pairs: list[tuple[Fraction, Fraction]] = []
    state = (1 - alpha, Fraction(1))
    while state not in seen:
        seen[state] = len(pairs)
        pairs.append(state)
        state = (_step(state[0], alpha)[0], _step(state[1], alpha)[0])
    start = seen[state]
    period = len(pairs) - start
    terms = _series_terms(pairs[:start])
    terms += _series_terms(pairs[start:], start=start, factor=Fraction(2**period, 2**period - 1))
    raw = PiecewiseConstantFn.from_indicators(terms)
    return raw.scale(1 / raw.integral())


def pf_apply(f: PiecewiseConstantFn, alpha: RationalLike) -> PiecewiseConstantFn:
    """Exact image of ``f`` under the transfer operator of ``S_alpha``."""
    alpha = as_fraction(alpha)
    left_win = (alpha - 2, alpha - 1)  # branch x -> 2x + alpha on [-1, -1/2)
    right_win = (1 - alpha, 2 - alpha)  # branch x -> 2x - alpha on (1/2, 1]
    pts = {Fraction(-1), Fraction(1), *left_win, *right_win}
    for b in f.breakpoints:
        pts.add(2 * b)
        pts.add(2 * b + alpha)
        pts.add(2 * b - alpha)
    pts = sorted(p for p in pts if -1 <= p <= 1)
    vals = []
    for a, b in zip(pts, pts[1:]):
        x = (a + b) / 2
        v = f(x / 2)
        if left_win[0] < x < left_win[1]:
            v += f((x - alpha) / 2)
        if right_win[0] < x < right_win[1]:
            v += f((x + alpha) / 2)
        vals.append(v / 2)
    return PiecewiseConstantFn(tuple(pts), tuple(vals)).simplify()


# -- block statistics --------------------------------------------------------


def eta(w: Word) -> int:
    """Zeros minus ones among positions 2 .. m-1."""
    inner = check_word(w)[1:-1]
    return inner.count("0") - inner.count("1")


def k_omega(w: Word) -> Fraction:
    check_word(w)
    m = len(w)
    if m < 3:
        raise ValueError("K is defined for blocks of length >= 3")
    total = Fraction(x_value(w[: m - 1]), 2 ** (m - 1))
    for n in range(1, m):
        term = Fraction(x_value(w[:n]), 2**n)
        total += term if w[n - 1] == "1" else -term
    return total


def mu_formula(w: Word, alpha: RationalLike) -> Fraction:
    """Middle-branch mass on the matching interval of ``w`` (length >= 3)."""
    alpha = as_fraction(alpha)
    m = len(w)
    return Fraction(2 ** (m - 1), 2**m - 1) * (eta(w) / alpha + k_omega(w))


# -- mu_alpha([-1/2, 1/2]) ---------------------------------------------------


@dataclass(frozen=True)
class MuResult:
    alpha: Fraction
    value: Fraction
    method: str
    location: object


def mu_zero_report(alpha: RationalLike, cross_check: bool = True) -> MuResult:
    alpha = as_fraction(alpha)
    if alpha == 1:
        return MuResult(alpha, HALF, "alpha = 1: Lebesgue measure is invariant", None)
    if not 1 < alpha <= 2:
        raise DomainError(f"alpha must lie in [1, 2], got {alpha}")
    loc = locate(alpha)
    if isinstance(loc, HighRegion):
        value, method = 1 / alpha, "high region: 1/alpha"
    elif isinstance(loc, Interval) and loc.block.m == 2:
        value, method = TWO_THIRDS, "interval of 11: 2/3"
    elif isinstance(loc, Interval):
        value, method = mu_formula(loc.block.omega, alpha), f"block formula for {loc.block.omega}"
    else:
        value = density_exact(alpha).integral(-HALF, HALF)
        method = "exact Markov density (no matching)"
        cross_check = False
    if cross_check:
        exact = density_closed_form(alpha).integral(-HALF, HALF)
        if exact != value:
            raise ArithmeticError(f"mu at {alpha}: {method} gives {value}, density integral gives {exact}")
    return MuResult(alpha, value, method, loc)


def mu_zero(alpha: RationalLike, cross_check: bool = True) -> Fraction:
    return mu_zero_report(alpha, cross_check).value


def mu_range(w: Word) -> tuple[Fraction, Fraction]:
    """Infimum and supremum of the middle-branch mass over the matching interval of ``w``."""
    L, R = interval_endpoints(w)
    if len(w) == 2:
        return TWO_THIRDS, TWO_THIRDS
    a, b = mu_formula(w, L), mu_formula(w, R)
    return min(a, b), max(a, b)


def predicted_direction(w: Word) -> str:
    e = eta(w)
    return "increasing" if e < 0 else "decreasing" if e > 0 else "constant"


def monotonicity_check(w: Word, strict: bool = True) -> str:
    """Direction of ``alpha -> mu`` on the interval of ``w`` from two interior points."""
    if len(w) < 3:
        raise ValueError("needs a block of length >= 3")
    J = matching_interval(w)
    a1, a2 = J.L + J.length / 3, J.L + 2 * J.length / 3
    v1, v2 = mu_zero(a1), mu_zero(a2)
    observed = "increasing" if v2 > v1 else "decreasing" if v2 < v1 else "constant"
    if strict and observed != predicted_direction(w):
        raise ArithmeticError(f"{w}: observed {observed}, eta={eta(w)} predicts {predicted_direction(w)}")
    return observed


# -- simulation --------------------------------------------------------------


def birkhoff_frequency(
    alpha: RationalLike | float,
    iterations: int,
    seed: int = 0,
    mode: str = "float",
    lattice_prime: int = LATTICE_PRIME,
) -> float:
    """Fraction of digit 0 along ``iterations`` steps from a seeded random start.

    ``float`` mode iterates doubles and adds a tiny random perturbation
    (about 2^-40) each step; without it, parameters with short binary
    expansions (``alpha = 1``, ``7/4``) collapse onto a periodic orbit within
    about 53 steps.  ``exact`` mode iterates integers ``k`` for the points
    ``k / (q * Q)`` with ``Q`` a large prime, which is exact and has very
    long cycles.
    """
    if iterations < 1:
        raise ValueError("iterations must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    if mode == "float":
        a = float(alpha)
        if not 1 <= a <= 2:
            raise DomainError(f"alpha must lie in [1, 2], got {alpha}")
        noise = rng.uniform(-(2.0**-40), 2.0**-40, size=iterations).tolist()
        x = float(rng.uniform(-1.0, 1.0))
        zeros = 0
        for eps in noise:
            if x > 0.5:
                x = 2 * x - a
            elif x < -0.5:
                x = 2 * x + a
            else:
                x = 2 * x
                zeros += 1
            x = min(1.0, max(-1.0, x + eps))
        return zeros / iterations
    if mode in ("exact", "exact_lattice"):
        alpha = as_fraction(alpha)
        if not 1 <= alpha <= 2:
            raise DomainError(f"alpha must lie in [1, 2], got {alpha}")
        n = alpha.denominator * lattice_prime
        shift = alpha.numerator * lattice_prime
        half = n // 2  # exact when n is even; the middle branch is closed either way
        wide = (int(rng.integers(0, 2**62)) << 62) | int(rng.integers(0, 2**62))
        k = wide % (2 * n + 1) - n
        zeros = 0
        for _ in range(iterations):
            if k > half:
                k = 2 * k - shift
            elif k < -half:
                k = 2 * k + shift
            else:
                k = 2 * k
                zeros += 1
        return zeros / iterations
    raise ValueError(f"unknown mode {mode!r}")


# -- sweeps and scans --------------------------------------------------------


CSV_COLUMNS = [
    "alpha_num",
    "alpha_den",
    "alpha_decimal",
    "status",
    "m",
    "omega",
    "eta",
    "K_num",
    "K_den",
    "mu_num",
    "mu_den",
    "mu_decimal",
    "birkhoff_estimate",
    "seed",
]


@dataclass
class FrequencyRecord:
    alpha: Fraction
    status: str
    m: int | None
    omega: str
    eta: int | None
    K: Fraction | None
    mu_zero: Fraction
    birkhoff_estimate: float | None = None
    seed: int | None = None

    def row(self) -> dict:
        def num(f):
            return "" if f is None else f.numerator

        def den(f):
            return "" if f is None else f.denominator

        return {
            "alpha_num": self.alpha.numerator,
            "alpha_den": self.alpha.denominator,
            "alpha_decimal": f"{float(self.alpha):.15g}",
            "status": self.status,
            "m": "" if self.m is None else self.m,
            "omega": self.omega,
            "eta": "" if self.eta is None else self.eta,
            "K_num": num(self.K),
            "K_den": den(self.K),
            "mu_num": self.mu_zero.numerator,
            "mu_den": self.mu_zero.denominator,
            "mu_decimal": f"{float(self.mu_zero):.15g}",
            "birkhoff_estimate": "" if self.birkhoff_estimate is None else f"{self.birkhoff_estimate:.6f}",
            "seed": "" if self.seed is None else self.seed,
        }

    def as_json(self) -> dict:
        d = asdict(self)
        for key in ("alpha", "K", "mu_zero"):
            d[key] = None if d[key] is None else str(d[key])
        return d


def frequency_record(
    alpha: RationalLike, birkhoff_iterations: int = 0, seed: int | None = None, mode: str = "float"
) -> FrequencyRecord:
    alpha = as_fraction(alpha)
    rep = mu_zero_report(alpha)
    loc = rep.location
    m = omega = e = K = None
    if isinstance(loc, Interval):
        status, m, omega = "interval", loc.block.m, loc.block.omega
        e = eta(omega)
        K = k_omega(omega) if m >= 3 else None
    elif isinstance(loc, HighRegion):
        status, m, omega = "high_region", 1, "1"
    elif isinstance(loc, Boundary):
        status, omega = f"boundary_{loc.side}", loc.omega
    elif isinstance(loc, NonMatching):
        status = "non_matching"
    else:
        status = "alpha_one"
    est = None
    if birkhoff_iterations:
        est = birkhoff_frequency(alpha, birkhoff_iterations, seed or 0, mode)
    return FrequencyRecord(alpha, status, m, omega or "", e, K, rep.value, est, seed)


def parse_grid(grid_text: str) -> list[Fraction]:
    """``lo:hi:step`` with rational entries; both ends included when hit exactly."""
    try:
        lo, hi, step = (as_fraction(part) for part in grid_text.split(":"))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"grid must be lo:hi:step, got {grid_text!r}") from exc
    if step <= 0 or hi < lo:
        raise ValueError(f"grid needs step > 0 and lo <= hi, got {grid_text!r}")
    n = math.floor((hi - lo) / step)
    return [lo + i * step for i in range(n + 1)]


def sweep(
    grid: Iterable[RationalLike] | None = None,
    max_len: int | None = None,
    birkhoff_iterations: int = 0,
    seed: int | None = None,
    mode: str = "float",
) -> list[FrequencyRecord]:
    """One record per grid point, or per primitive block (evaluated at its interval midpoint)."""
    if (grid is None) == (max_len is None):
        raise ValueError("give exactly one of grid and max_len")
    if grid is not None:
        alphas = [as_fraction(a) for a in grid]
    else:
        alphas = []
        for w in enumerate_primitive(max_len):
            L, R = interval_endpoints(w)
            alphas.append((L + R) / 2)
    return [frequency_record(a, birkhoff_iterations, seed, mode) for a in alphas]


def records_to_csv(records: Sequence[FrequencyRecord], header: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()


@dataclass(frozen=True)
class ConjecturePair:
    omega: Word
    omega_prime: Word
    inf_mu: Fraction  # infimum over the interval of omega
    sup_mu_prime: Fraction  # supremum over the interval of omega_prime


@dataclass
class ConjectureScan:
    max_len: int
    violations: list[ConjecturePair]
    global_max: Fraction
    max_attained_in_plateau: bool  # every interval reaching the max lies in [6/5, 3/2]


def conjecture_scan(max_len: int) -> ConjectureScan:
    """Look for equal-length primitive pairs ``w < w'`` where some mass on ``J_w`` is below some mass on ``J_w'``."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    by_len: dict[int, list[Word]] = {}
    for w in enumerate_primitive(max_len):
        by_len.setdefault(len(w), []).append(w)
    violations = []
    gmax = Fraction(0)
    plateau_ok = True
    lo_plateau, hi_plateau = Fraction(6, 5), Fraction(3, 2)
    for words in by_len.values():
        ranges = {w: mu_range(w) for w in words}
        for i, w in enumerate(words):
            for w2 in words[i + 1 :]:
                if ranges[w][0] < ranges[w2][1]:
                    violations.append(ConjecturePair(w, w2, ranges[w][0], ranges[w2][1]))
        for w in words:
            top = ranges[w][1]
            L, R = interval_endpoints(w)
            if top > gmax:
                gmax = top
            if top >= TWO_THIRDS and not (lo_plateau <= L and R <= hi_plateau):
                plateau_ok = False
    return ConjectureScan(max_len, violations, gmax, plateau_ok)


def exception_family(ell: int, n: int) -> Word:
    """``1^ell (0^(ell-1) 1)^n``."""
    return "1" * ell + ("0" * (ell - 1) + "1") * n


def coverage(max_len: int) -> Fraction:
    """Total length of matching intervals up to ``max_len``, as a fraction of |(1, 3/2)|."""
    total = Fraction(0)
    for w in enumerate_primitive(max_len):
        L, R = interval_endpoints(w)
        total += R - L
    return total / HALF


PLATEAU_BLOCK = re.compile(r"^11(01)*(00(10)*11(01)*)*$")


def plateau_block_shape(w: Word) -> bool:
    """Whether ``w`` has the form 11(01)^k1 00(10)^k2 11(01)^k3 ... 11(01)^k."""
    return PLATEAU_BLOCK.fullmatch(w) is not None
