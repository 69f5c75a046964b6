"""Finite binary words and eventually periodic binary expansions.

Words are plain strings over ``"0"`` and ``"1"``; for equal lengths Python's
string order is the lexicographic order used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Word = str


def check_word(w: Word) -> Word:
    if not isinstance(w, str) or not w or set(w) - {"0", "1"}:
        raise ValueError(f"not a nonempty binary word: {w!r}")
    return w


def complement(w: Word) -> Word:
    return w.translate(str.maketrans("01", "10"))


def psi(w: Word) -> Word:
    """``w`` followed by the complement of ``w`` minus its last symbol, then 1."""
    check_word(w)
    if len(w) < 2:
        raise ValueError(f"psi needs a word of length >= 2, got {w!r}")
    return w + complement(w[:-1]) + "1"


def x_value(w: Word) -> int:
    """The integer whose binary digits are ``w``."""
    return int(check_word(w), 2)


def runs(w: str) -> list[int]:
    out: list[int] = []
    prev = None
    for c in w:
        if c == prev:
            out[-1] += 1
        else:
            out.append(1)
            prev = c
    return out


@dataclass(frozen=True)
class EllDecomposition:
    """Run lengths ``(l1, ..., l_2n)`` with ``w = 1^l1 0^l2 ... 0^l_2n 1``.

    Only the last entry may be zero.
    """

    runs: tuple[int, ...]

    def word(self) -> Word:
        body = "".join(("1" if i % 2 == 0 else "0") * r for i, r in enumerate(self.runs))
        return body + "1"


def ell_decomposition(w: Word) -> EllDecomposition:
    check_word(w)
    if len(w) < 2 or w[0] != "1" or w[-1] != "1":
        raise ValueError(f"ell decomposition needs a word 1...1 of length >= 2, got {w!r}")
    rs = runs(w[:-1])
    if len(rs) % 2:
        rs.append(0)
    return EllDecomposition(tuple(rs))


@dataclass(frozen=True)
class PeriodicWord:
    """Binary expansion ``.preperiod (period)^inf`` of a number in [0, 1]."""

    preperiod: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")

    def value(self) -> Fraction:
        k = len(self.period)
        pre = int(self.preperiod, 2) if self.preperiod else 0
        tail = Fraction(int(self.period, 2), 2**k - 1)
        return (pre + tail) / 2 ** len(self.preperiod)

    def prefix(self, n: int) -> str:
        s = self.preperiod
        while len(s) < n:
            s += self.period
        return s[:n]

    def normalized(self) -> "PeriodicWord":
        per = self.period
        k = len(per)
        for p in range(1, k + 1):
            if k % p == 0 and per[:p] * (k // p) == per:
                per = per[:p]
                break
        pre = self.preperiod
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1] + per[:-1]
        return PeriodicWord(pre, per)

    def same_as(self, other: "PeriodicWord") -> bool:
        """Equality as infinite sequences (not as numbers)."""
        return self.normalized() == other.normalized()

    def __str__(self) -> str:
        return f".{self.preperiod}({self.period})^∞"


def r_minus(w: Word) -> PeriodicWord:
    """``.(w_1 ... w_{m-1} 0)^inf``."""
    return PeriodicWord("", w[:-1] + "0")


def r_plus(w: Word) -> PeriodicWord:
    """``.(w complement(w))^inf``."""
    return PeriodicWord("", w + complement(w))
