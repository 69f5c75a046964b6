"""Primitive blocks, their matching intervals, cascades and parameter location."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from . import cfbridge
from .dynamics import (
    HALF,
    DomainError,
    Matched,
    MatchingResult,
    RationalLike,
    SignedDigitSeq,
    _step,
    as_fraction,
    matching_index,
    render_digits,
    signed_digit_sequence,
)
from .words import EllDecomposition, Word, check_word, complement, ell_decomposition, psi, x_value

__all__ = [
    "Word",
    "EllDecomposition",
    "psi",
    "x_value",
    "ell_decomposition",
    "NotPrimitiveError",
    "is_primitive",
    "enumerate_primitive",
    "MatchingInterval",
    "matching_interval",
    "boundary_sequences",
    "cascade",
    "cascade_limit",
    "thue_morse_constant",
    "locate",
]

METHODS = ("definition", "cf", "dynamic")


class NotPrimitiveError(ValueError):
    pass


# -- primitivity -------------------------------------------------------------


def _suffixes_dominated(w: Word) -> bool:
    m = len(w)
    return all(w[i:] <= w[: m - i] for i in range(1, m))


def _precedes(u: Word, v: Word) -> bool:
    """Strict lexicographic order in which a proper prefix comes first."""
    return u != v and (v.startswith(u) or (not u.startswith(v) and u < v))


def _odd_truncations(w: Word) -> list[Word]:
    rs = ell_decomposition(w).runs
    out, pos = [], 0
    for i, r in enumerate(rs):
        pos += r
        if i % 2 == 0:
            out.append(w[:pos])
    return out


def _primitive_by_definition(w: Word) -> bool:
    if len(w) < 2 or not (w[0] == w[1] == w[-1] == "1"):
        return False
    if not _suffixes_dominated(w):
        return False
    # every odd truncation b is a prefix of w, so b precedes w; w must not precede psi(b)
    return not any(_precedes(w, psi(b)) for b in _odd_truncations(w) if len(b) >= 2)


def _primitive_by_cf(w: Word) -> bool:
    if len(w) < 2 or w[0] != "1" or w[-1] != "1":
        return False
    return cfbridge.is_maximal_quadratic(cfbridge.a_of_omega(w))


def digits_until_hole(alpha: Fraction, steps: int) -> str | None:
    """First ``steps`` digits of 1 if the orbit enters the hole exactly at step ``steps - 1``."""
    upper = alpha - HALF
    y = Fraction(1)
    digits = []
    for n in range(steps):
        if HALF <= y <= upper:
            if n < steps - 1 or y == HALF or y == upper:
                return None
            digits.append(1)
            return render_digits(digits)
        y, d = _step(y, alpha)
        digits.append(d)
    return None


def _primitive_by_dynamics(w: Word) -> bool:
    m, xm = len(w), x_value(w)
    if m < 2 or xm < 2:
        return False
    lo, hi = Fraction(2**m + 1, xm + 1), Fraction(2**m - 1, xm - 1)
    if not lo < hi:
        return False
    mid = (lo + hi) / 2
    if not 1 < mid <= 2:
        return False
    return digits_until_hole(mid, m) == w


def is_primitive(w: Word, method: str = "definition") -> bool:
    check_word(w)
    if method == "definition":
        return _primitive_by_definition(w)
    if method == "cf":
        return _primitive_by_cf(w)
    if method == "dynamic":
        return _primitive_by_dynamics(w)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def primitivity_votes(w: Word) -> dict[str, bool]:
    return {m: is_primitive(w, m) for m in METHODS}


def enumerate_primitive(max_len: int) -> Iterator[Word]:
    """Primitive blocks of length ``<= max_len`` ordered by length, then lexicographically.

    Candidates are grown one symbol at a time, keeping only words whose every
    suffix is bounded by the prefix of the same length.  That property is
    closed under taking prefixes, so the tree can be pruned as it grows; the
    bookkeeping follows the usual prenecklace generation (track the current
    period ``p`` and compare each new symbol with the one ``p`` places back).
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    level: list[tuple[str, int]] = [("1", 1)]
    for n in range(2, max_len + 1):
        nxt: list[tuple[str, int]] = []
        for w, p in level:
            ref = w[len(w) - p]
            for c in "01":
                if c > ref:
                    continue
                nxt.append((w + c, p if c == ref else len(w) + 1))
        level = nxt
        for w, _ in level:
            if w[1] == "1" and w[-1] == "1" and _primitive_by_definition(w):
                yield w


# -- matching intervals ------------------------------------------------------


@dataclass(frozen=True)
class MatchingInterval:
    omega: Word
    m: int
    L: Fraction
    R: Fraction
    x_m: int

    def __contains__(self, alpha) -> bool:
        return self.L < as_fraction(alpha) < self.R

    @property
    def length(self) -> Fraction:
        return self.R - self.L

    def __str__(self) -> str:
        return f"{self.omega} = ({self.L}, {self.R})"


def interval_endpoints(w: Word) -> tuple[Fraction, Fraction]:
    m, xm = len(w), x_value(w)
    return Fraction(2**m + 1, xm + 1), Fraction(2**m - 1, xm - 1)


def matching_interval(w: Word) -> MatchingInterval:
    if not is_primitive(w):
        raise NotPrimitiveError(f"{w} is not a primitive block")
    L, R = interval_endpoints(w)
    return MatchingInterval(w, len(w), L, R, x_value(w))


def boundary_sequences(w: Word) -> tuple[SignedDigitSeq, SignedDigitSeq]:
    """Digit sequences of 1 at the left and right ends of the matching interval."""
    J = matching_interval(w)
    left = SignedDigitSeq((), tuple(int(c) for c in w + complement(w)))
    right = SignedDigitSeq((), tuple(int(c) for c in w[:-1] + "0"))
    for alpha, claimed in ((J.L, left), (J.R, right)):
        actual = signed_digit_sequence(1, alpha)
        if not actual.same_as(claimed):
            raise ArithmeticError(f"digits at {alpha}: expected {claimed}, got {actual}")
    return left, right


def cascade(w: Word, depth: int) -> list[MatchingInterval]:
    """Intervals of ``w, psi(w), ..., psi^depth(w)``; each shares its left end with the next."""
    out = [matching_interval(w)]
    for _ in range(depth):
        out.append(matching_interval(psi(out[-1].omega)))
        if out[-2].L != out[-1].R:
            raise ArithmeticError(f"cascade endpoints differ at {out[-1].omega}")
    return out


# -- cascade limits ----------------------------------------------------------


@dataclass(frozen=True)
class CertifiedValue:
    """Dyadic ``value`` within ``2^-bits`` of a number known to lie in ``[lo, hi]``."""

    value: Fraction
    lo: Fraction
    hi: Fraction
    bits: int

    def __float__(self) -> float:
        return float(self.value)

    def decimal(self, places: int) -> str:
        scaled = self.value * 10**places
        q = round(scaled)
        s = str(abs(q)).rjust(places + 1, "0")
        return f"{'-' if q < 0 else ''}{s[:-places]}.{s[-places:]}"


def _certify(enclose, bits: int) -> CertifiedValue:
    """Round to a multiple of ``2^-bits``, refining until the enclosure fixes the rounding."""
    scale = 2**bits
    n = bits + 8
    for _ in range(64):
        lo, hi = enclose(n)
        a, b = round(lo * scale), round(hi * scale)
        if a == b:
            return CertifiedValue(Fraction(a, scale), lo, hi, bits)
        n += 16
    raise ArithmeticError("rounding could not be certified")


def limit_word_prefix(w: Word, n: int) -> Word:
    while len(w) < n:
        w = psi(w)
    return w[:n]


def cascade_limit(w: Word, precision_bits: int = 64) -> CertifiedValue:
    """``1/p`` where ``p = .w1 w2 ...`` is read off the limit word of the cascade from ``w``."""
    if not is_primitive(w):
        raise NotPrimitiveError(f"{w} is not a primitive block")

    def enclose(n):
        p = Fraction(int(limit_word_prefix(w, n), 2), 2**n)
        return 1 / (p + Fraction(1, 2**n)), 1 / p

    return _certify(enclose, precision_bits)


def thue_morse_word(n: int) -> str:
    """First ``n`` symbols ``t0 t1 ...`` of the Thue-Morse sequence, by substitution."""
    w = "0"
    while len(w) < n:
        w = "".join("01" if c == "0" else "10" for c in w)
    return w[:n]


def thue_morse_constant(precision_bits: int = 64) -> CertifiedValue:
    """``sum t_n 2^-(n+1)`` (about 0.412454)."""

    def enclose(n):
        p = Fraction(int(thue_morse_word(n), 2), 2**n)
        return p, p + Fraction(1, 2**n)

    return _certify(enclose, precision_bits)


# -- locating a parameter ----------------------------------------------------


@dataclass(frozen=True)
class Interval:
    block: MatchingInterval

    def __str__(self) -> str:
        return f"Interval({self.block})"


@dataclass(frozen=True)
class HighRegion:
    """``alpha`` in (3/2, 2], where matching happens after one step."""

    def __str__(self) -> str:
        return "HighRegion (3/2, 2], m=1"


@dataclass(frozen=True)
class NonMatching:
    result: MatchingResult

    def __str__(self) -> str:
        return f"NonMatching: {self.result}"


@dataclass(frozen=True)
class Boundary:
    """``alpha`` is the ``side`` endpoint of the interval of ``omega``.

    ``left_of`` names the block whose interval starts at ``alpha`` when
    ``omega = psi(left_of)``.
    """

    omega: Word
    side: str
    left_of: Word | None = None

    def __str__(self) -> str:
        extra = f", left end of {self.left_of}" if self.left_of else ""
        return f"Boundary({self.omega}, {self.side}{extra})"


Location = Union[Interval, HighRegion, NonMatching, Boundary]


def locate(alpha: RationalLike) -> Location:
    alpha = as_fraction(alpha)
    if not 1 < alpha <= 2:
        raise DomainError(f"locate needs 1 < alpha <= 2, got {alpha}")
    res = matching_index(alpha)
    if isinstance(res, Matched):
        if res.m == 1:
            return HighRegion()
        J = matching_interval(res.prefix)
        if alpha not in J:
            raise ArithmeticError(f"{alpha} matched with prefix {res.prefix} but lies outside {J}")
        return Interval(J)
    b = _boundary_block(alpha)
    return b if b is not None else NonMatching(res)


def _boundary_block(alpha: Fraction) -> Boundary | None:
    upper = alpha - HALF
    y = Fraction(1)
    digits: list[int] = []
    for _ in range(4 * alpha.denominator + 4):
        if (y == HALF or y == upper) and all(d >= 0 for d in digits):
            w = render_digits(digits) + "1"
            if len(w) >= 2 and is_primitive(w) and interval_endpoints(w)[1] == alpha:
                left_of = None
                half = len(w) // 2
                if len(w) % 2 == 0 and half >= 2 and psi(w[:half]) == w and is_primitive(w[:half]):
                    left_of = w[:half]
                return Boundary(w, "right", left_of)
        y, d = _step(y, alpha)
        digits.append(d)
    return None


# -- catalog -----------------------------------------------------------------


def catalog(max_len: int) -> list[dict]:
    """JSON-ready records ``{omega, m, L, R, eta, K}`` for all primitive blocks up to ``max_len``."""
    from .measure import eta, k_omega

    return [
        {
            "omega": w,
            "m": len(w),
            "L": str(J.L),
            "R": str(J.R),
            "eta": eta(w),
            "K": str(k_omega(w)) if len(w) >= 3 else None,
        }
        for w in enumerate_primitive(max_len)
        for J in [matching_interval(w)]
    ]


def catalog_json(max_len: int) -> str:
    return json.dumps(catalog(max_len), indent=1)
