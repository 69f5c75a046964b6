"""Continued fractions and their link to binary words.

Covers the Gauss order, quadratic intervals and their maximality test, the
run-length homeomorphism ``phi``, the Minkowski question-mark function and a
symbolic Farey map acting on quotient lists.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dynamics import DomainError, RationalLike, as_fraction, doubling, farey, tent
from .words import PeriodicWord, Word, check_word, ell_decomposition, r_minus, r_plus, runs, x_value

INF = math.inf


@dataclass(frozen=True)
class CFWord:
    """``[0; preperiod (period)^inf]``; an empty period means a finite expansion."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(a) for a in self.preperiod))
        object.__setattr__(self, "period", tuple(int(a) for a in self.period))
        if any(a < 1 for a in self.preperiod + self.period):
            raise ValueError(f"partial quotients must be positive: {self}")

    @classmethod
    def periodic(cls, period: Sequence[int]) -> "CFWord":
        return cls((), tuple(period))

    @property
    def is_finite(self) -> bool:
        return not self.period

    def quotient(self, i: int) -> float | int:
        """1-based partial quotient; ``inf`` past the end of a finite word."""
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        if not self.period:
            return INF
        return self.period[(i - len(self.preperiod) - 1) % len(self.period)]

    def head(self, n: int) -> list[int]:
        out = []
        for i in range(1, n + 1):
            a = self.quotient(i)
            if a == INF:
                break
            out.append(a)
        return out

    def value(self) -> Fraction:
        if not self.is_finite:
            raise ValueError("value() is exact only for finite expansions; use enclosure()")
        return cf_eval(self.preperiod)

    def enclosure(self, bits: int = 128) -> tuple[Fraction, Fraction]:
        """Two consecutive convergents bracketing the value, at most ``2^-bits`` apart."""
        if self.is_finite:
            v = self.value()
            return v, v
        eps = Fraction(1, 2**bits)
        h0, k0, h1, k1 = 1, 0, 0, 1  # convergents p_{-1}/q_{-1}, p_0/q_0
        i = 0
        while True:
            i += 1
            a = self.quotient(i)
            h0, k0, h1, k1 = h1, k1, a * h1 + h0, a * k1 + k0
            if i >= 2 and Fraction(1, k0 * k1) <= eps:
                lo, hi = sorted((Fraction(h0, k0), Fraction(h1, k1)))
                return lo, hi

    def fixed_point_polynomial(self) -> tuple[int, int, int]:
        """Integers ``(A, B, C)`` with ``A x^2 + B x + C = 0`` at the represented value."""
        if self.is_finite:
            raise ValueError("finite expansions are rational")
        a, b, c, d = _mobius(self.period)
        # periodic part y solves c y^2 + (d - a) y - b = 0
        qy = (c, d - a, -b)
        # x = (A y + B)/(C y + D), so y = (D x - B)/(A - C x)
        A, B, C, D = _mobius(self.preperiod)
        num = (D, -B)  # D x - B
        den = (-C, A)  # -C x + A
        poly = [0, 0, 0]
        for coef, (f, g) in zip(qy, ((num, num), (num, den), (den, den))):
            p2, p1, p0 = f[0] * g[0], f[0] * g[1] + f[1] * g[0], f[1] * g[1]
            poly[0] += coef * p2
            poly[1] += coef * p1
            poly[2] += coef * p0
        g_ = math.gcd(*poly)
        if poly[0] < 0:
            g_ = -g_
        return tuple(x // g_ for x in poly)

    def surd(self) -> "QuadraticSurd":
        """Closed form ``(p + s sqrt(d))/q`` for a periodic expansion."""
        A, B, C = self.fixed_point_polynomial()
        disc = B * B - 4 * A * C
        lo, hi = self.enclosure(64)
        for sign in (1, -1):
            cand = QuadraticSurd.make(-B, sign, disc, 2 * A)
            clo, chi = cand.enclosure(80)
            if chi >= lo - Fraction(1, 2**60) and clo <= hi + Fraction(1, 2**60):
                return cand
        raise ArithmeticError(f"no root of {A}x^2+{B}x+{C} inside {float(lo)}..{float(hi)}")

    def __str__(self) -> str:
        pre = ",".join(map(str, self.preperiod))
        if self.is_finite:
            return f"[0;{pre}]"
        per = ",".join(map(str, self.period))
        return f"[0;{pre + ',' if pre else ''}({per})^∞]"


def _mobius(quotients: Sequence[int]) -> tuple[int, int, int, int]:
    """Entries of the product of ``[[0,1],[1,a]]``; maps y to ``[0; q1..qk + y]``."""
    a, b, c, d = 1, 0, 0, 1
    for q in quotients:
        a, b, c, d = b, a + q * b, d, c + q * d
    return a, b, c, d


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``(p + s*sqrt(d))/q`` with ``d`` squarefree and ``q > 0``."""

    p: int
    s: int
    d: int
    q: int

    @classmethod
    def make(cls, p: int, s: int, d: int, q: int) -> "QuadraticSurd":
        if d < 0:
            raise ValueError("negative radicand")
        k, d = _square_part(d)
        s *= k
        if d == 1:
            p, s = p + s, 0
        if s == 0:
            d = 1
        g = math.gcd(math.gcd(p, s), q)
        if q < 0:
            g = -g
        return cls(p // g, s // g, d, q // g)

    def enclosure(self, bits: int = 128) -> tuple[Fraction, Fraction]:
        scale = 2**bits
        r = math.isqrt(self.d * scale * scale)
        lo_root = Fraction(r, scale)
        hi_root = lo_root if r * r == self.d * scale * scale else Fraction(r + 1, scale)
        ends = sorted((self.p + self.s * lo_root, self.p + self.s * hi_root))
        return ends[0] / self.q, ends[1] / self.q

    def satisfies(self, A: int, B: int, C: int) -> bool:
        """Exact check of ``A x^2 + B x + C = 0``."""
        p, s, d, q = self.p, self.s, self.d, self.q
        rational = A * (p * p + s * s * d) + B * p * q + C * q * q
        irrational = 2 * A * p * s + B * s * q
        return rational == 0 and (irrational == 0 or d == 1)

    def __float__(self) -> float:
        return (self.p + self.s * math.sqrt(self.d)) / self.q

    def __str__(self) -> str:
        if self.s == 0:
            return str(Fraction(self.p, self.q))
        coeff = {1: "", -1: "−"}.get(self.s, str(self.s))
        body = f"{coeff}√{self.d}"
        if self.p:
            body += f"{'+' if self.p > 0 else '−'}{abs(self.p)}"
        return body if self.q == 1 else f"({body})/{self.q}"


def _square_part(n: int, trial_limit: int = 10**5) -> tuple[int, int]:
    """Split ``n = k^2 * r``, removing square factors found by trial division."""
    k, r = 1, n
    f = 2
    while f * f <= r and f <= trial_limit:
        while r % (f * f) == 0:
            r //= f * f
            k *= f
        f += 1 if f == 2 else 2
    root = math.isqrt(r)
    if root * root == r:
        k, r = k * root, 1
    return k, r


# -- finite expansions -------------------------------------------------------


def cf_expand(x: RationalLike) -> CFWord:
    x = as_fraction(x)
    if not 0 < x <= 1:
        raise DomainError(f"cf_expand needs 0 < x <= 1, got {x}")
    out = []
    num, den = x.numerator, x.denominator
    while num:
        a, rem = divmod(den, num)
        out.append(a)
        num, den = rem, num
    return CFWord(tuple(out))


def cf_eval(quotients: Sequence[int]) -> Fraction:
    v = Fraction(0)
    for a in reversed(quotients):
        v = 1 / (a + v)
    return v


def canonical(quotients: Sequence[int]) -> tuple[int, ...]:
    """Rewrite a trailing quotient 1 into the previous one (``[..,a,1] = [..,a+1]``)."""
    q = list(quotients)
    if len(q) >= 2 and q[-1] == 1:
        q.pop()
        q[-1] += 1
    return tuple(q)


def a_of_omega(omega: Word) -> Fraction:
    """Rational ``a(omega)`` built from the run lengths of ``omega``."""
    return cf_eval(a_quotients(omega))


def a_quotients(omega: Word) -> tuple[int, ...]:
    rs = list(ell_decomposition(omega).runs)
    if rs[-1] == 0:
        rs = rs[:-2] + [rs[-2] + 1]
    else:
        rs[-1] += 1
    return tuple(rs)


def omega_of_a(a: RationalLike) -> Word:
    """Block whose run lengths give the quotients of ``a`` (inverse of ``a_of_omega``)."""
    qs = cf_expand(a).preperiod
    bits = "".join(("1" if i % 2 == 0 else "0") * r for i, r in enumerate(qs[:-1]))
    if len(qs) % 2:
        return bits + "1" * qs[-1]
    return bits + "0" * (qs[-1] - 1) + "1"


# -- Gauss order -------------------------------------------------------------


def _as_cfword(s) -> CFWord:
    return s if isinstance(s, CFWord) else CFWord(tuple(s))


def gauss_compare(s, t, *, as_prefix: bool = False) -> int:
    """Return -1, 0 or 1 as ``s <_g t``, ``s = t`` or ``s >_g t``.

    Arguments are ``CFWord`` values or plain quotient lists.  Plain lists are
    finite expansions unless ``as_prefix`` is set, in which case they are
    treated as unknown-continuation prefixes and an undecidable comparison
    raises ``ValueError``.
    """
    if as_prefix:
        for i, (c, d) in enumerate(zip(s, t), start=1):
            if c != d:
                return _gauss_sign(i, c, d)
        raise ValueError(f"prefixes {list(s)} and {list(t)} agree; order is undecidable")
    s, t = _as_cfword(s), _as_cfword(t)
    horizon = max(len(s.preperiod), len(t.preperiod)) + math.lcm(len(s.period) or 1, len(t.period) or 1)
    for i in range(1, horizon + 1):
        c, d = s.quotient(i), t.quotient(i)
        if c != d:
            return _gauss_sign(i, c, d)
        if c == INF:
            return 0
    return 0


def _gauss_sign(i: int, c, d) -> int:
    if i % 2:
        return -1 if c > d else 1
    return -1 if c < d else 1


def _rotations(w: tuple[int, ...]):
    return [w[i:] + w[:i] for i in range(1, len(w))]


def _strictly_minimal(w: tuple[int, ...]) -> bool:
    base = CFWord.periodic(w)
    return all(gauss_compare(base, CFWord.periodic(r)) < 0 for r in _rotations(w))


def is_maximal_quadratic(a: RationalLike) -> bool:
    a = as_fraction(a)
    if not 0 < a <= 1:
        raise DomainError(f"a must lie in (0, 1], got {a}")
    w = cf_expand(a).preperiod
    if w == (1,):
        return False  # [0;1] has no quadratic interval (a_n - 1 = 0)
    if _strictly_minimal(w):
        return True
    n = len(w)
    if n % 2 == 0 and (n // 2) % 2 == 1:
        half = w[: n // 2]
        return w == half + half and _strictly_minimal(half)
    return False


# -- quadratic intervals -----------------------------------------------------


@dataclass(frozen=True)
class QuadraticInterval:
    a: Fraction
    lo: CFWord
    hi: CFWord
    lo_val: tuple[Fraction, Fraction]
    hi_val: tuple[Fraction, Fraction]
    lo_surd: QuadraticSurd
    hi_surd: QuadraticSurd


def quadratic_endpoints(a: RationalLike, precision_bits: int = 128) -> QuadraticInterval:
    a = as_fraction(a)
    if not 0 < a <= 1:
        raise DomainError(f"a must lie in (0, 1], got {a}")
    u = cf_expand(a).preperiod
    if u == (1,):
        raise DomainError("a = 1 has no quadratic interval")
    v = u[:-1] + (u[-1] - 1, 1)
    first, second = CFWord.periodic(u), CFWord.periodic(v)
    lo, hi = (first, second) if len(u) % 2 else (second, first)
    if gauss_compare(lo, hi) >= 0:
        raise ArithmeticError(f"endpoint order failed for a = {a}")
    lo_val, hi_val = lo.enclosure(precision_bits), hi.enclosure(precision_bits)
    if not lo_val[1] < hi_val[0]:
        raise ArithmeticError(f"enclosures overlap for a = {a}")
    lo_surd, hi_surd = lo.surd(), hi.surd()
    for word, sd in ((lo, lo_surd), (hi, hi_surd)):
        if not sd.satisfies(*word.fixed_point_polynomial()):
            raise ArithmeticError(f"{sd} does not solve the fixed-point equation of {word}")
    return QuadraticInterval(a, lo, hi, lo_val, hi_val, lo_surd, hi_surd)


# -- phi and the question-mark function --------------------------------------


def _run_word(cf: CFWord, first_bit: str, first_shift: int) -> PeriodicWord:
    """Binary word with runs of alternating bits of lengths given by ``cf``.

    The first run has length ``a1 + first_shift``.  A finite expansion is
    followed by an infinite run of the next bit.
    """
    other = {"0": "1", "1": "0"}
    bit = first_bit
    pieces = []
    for i, a in enumerate(cf.preperiod):
        pieces.append(bit * (a + (first_shift if i == 0 else 0)))
        bit = other[bit]
    pre = "".join(pieces)
    if cf.is_finite:
        return PeriodicWord(pre, bit)
    period = cf.period
    if not cf.preperiod and first_shift:
        pre += bit * (period[0] + first_shift)
        bit = other[bit]
        period = period[1:] + period[:1]
    reps = 1 if len(period) % 2 == 0 else 2
    body = []
    for a in period * reps:
        body.append(bit * a)
        bit = other[bit]
    return PeriodicWord(pre, "".join(body))


def phi_word(x: CFWord) -> PeriodicWord:
    """``phi([0; a1 a2 ...]) = .1^a1 0^a2 1^a3 ...``."""
    return _run_word(x, "1", 0)


def phi_map(x: CFWord, n_bits: int) -> str:
    return phi_word(x).prefix(n_bits)


def phi_value(x: CFWord | RationalLike) -> Fraction:
    if not isinstance(x, CFWord):
        x = _cf_or_zero(as_fraction(x))
    return phi_word(x).value()


def question_word(x: CFWord) -> PeriodicWord:
    """``?([0; a1 a2 ...]) = .0^(a1-1) 1^a2 0^a3 ...``."""
    return _run_word(x, "0", -1)


def minkowski_q(x: RationalLike, n_bits: int | None = None) -> Fraction:
    """Exact ``?(x)`` for rational ``x`` in [0, 1]; ``n_bits`` truncates the binary word."""
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"?(x) needs 0 <= x <= 1, got {x}")
    word = question_word(_cf_or_zero(x))
    if n_bits is None:
        return word.value()
    return Fraction(int(word.prefix(n_bits), 2), 2**n_bits)


def _cf_or_zero(x: Fraction) -> CFWord:
    return CFWord(()) if x == 0 else cf_expand(x)


def phi_inverse(y: RationalLike) -> CFWord:
    """Finite expansion ``x`` with ``phi(x) = y`` for a dyadic ``y`` in [1/2, 1]."""
    y = as_fraction(y)
    if not Fraction(1, 2) <= y <= 1:
        raise DomainError(f"phi maps onto [1/2, 1]; got {y}")
    den = y.denominator
    if den & (den - 1):
        raise DomainError(f"phi_inverse is exact only for dyadic rationals, got {y}")
    if y == 1:
        return CFWord(())
    nbits = den.bit_length() - 1
    bits = format(y.numerator, f"0{nbits}b").rstrip("0")
    return CFWord(canonical(runs(bits)))


def farey_cf(x: CFWord) -> CFWord:
    """Farey map on quotient lists: decrement ``a1`` if it exceeds 1, else drop it."""
    pre, per = list(x.preperiod), list(x.period)
    if not pre:
        if not per:
            return x
        pre, per = per[:1], per[1:] + per[:1]
    if pre[0] > 1:
        pre[0] -= 1
    else:
        pre.pop(0)
    return CFWord(tuple(pre), tuple(per))


# -- verification report -----------------------------------------------------


@dataclass
class BridgeReport:
    omega: Word
    clauses: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]


def dyadic_test_parameter(omega: Word, max_bits: int = 40) -> Fraction | None:
    """Smallest-denominator ``alpha`` in the matching interval with dyadic ``1/alpha``."""
    lo, hi = r_minus(omega).value(), r_plus(omega).value()
    for b in range(1, max_bits + 1):
        k = math.floor(lo * 2**b) + 1
        y = Fraction(k, 2**b)
        if lo < y < hi:
            return 1 / y
    return None


def bridge_verify(
    omega: Word,
    alpha: RationalLike | None = None,
    n_random: int = 100,
    seed: int = 0,
    max_den: int = 10**4,
) -> BridgeReport:
    check_word(omega)
    from .blocks import is_primitive

    if not is_primitive(omega):
        raise ValueError(f"{omega} is not a primitive block")
    m = len(omega)
    rep = BridgeReport(omega)
    qi = quadratic_endpoints(a_of_omega(omega))
    rm, rp = r_minus(omega), r_plus(omega)
    rep.clauses["phi(a-) = r+"] = phi_word(qi.lo).same_as(rp)
    rep.clauses["phi(a+) = r-"] = phi_word(qi.hi).same_as(rm)
    xm = x_value(omega)
    L, R = Fraction(2**m + 1, xm + 1), Fraction(2**m - 1, xm - 1)
    rep.clauses["1/L = r+"] = 1 / L == rp.value()
    rep.clauses["1/R = r-"] = 1 / R == rm.value()
    rep.details["quadratic interval"] = f"({qi.lo_surd}, {qi.hi_surd}) = ({qi.lo}, {qi.hi})"

    alpha = dyadic_test_parameter(omega) if alpha is None else as_fraction(alpha)
    if alpha is not None:
        _farey_and_doubling_clauses(rep, omega, alpha, L, R)
    else:
        rep.details["test parameter"] = "no alpha with dyadic 1/alpha of <= 40 bits"

    rng = random.Random(seed)
    fails = []
    for _ in range(n_random):
        den = rng.randint(1, max_den)
        x = Fraction(rng.randint(0, den), den)
        qx = minkowski_q(x)
        if minkowski_q(farey(x)) != tent(qx):
            fails.append(f"?F at {x}")
        if x < 1 and tent(doubling(x)) != tent(tent(x)):
            fails.append(f"TD at {x}")
        if phi_value(x) + qx / 2 != 1:
            fails.append(f"phi+?/2 at {x}")
    rep.clauses["functional identities"] = not fails
    if fails:
        rep.details["identity failures"] = ", ".join(fails[:10])
    return rep


def _farey_and_doubling_clauses(rep: BridgeReport, omega: Word, alpha: Fraction, L: Fraction, R: Fraction) -> None:
    m = len(omega)
    rep.details["test parameter"] = str(alpha)
    if not L < alpha < R:
        rep.clauses["test parameter in interval"] = False
        return
    a_tilde = phi_inverse(1 / alpha)
    at = a_tilde.value()
    rep.details["a_tilde"] = f"{a_tilde} = {at}"
    orbit = [a_tilde]
    for _ in range(m):
        orbit.append(farey_cf(orbit[-1]))
    values = [w.value() if w.preperiod else Fraction(0) for w in orbit]
    numeric = [at]
    for _ in range(m):
        numeric.append(farey(numeric[-1]))
    rep.clauses["symbolic Farey = numeric Farey"] = values == numeric
    in_low = [0 <= v < at for v in values]
    in_top = [1 / (at + 1) < v <= 1 for v in values]
    rep.clauses["F^m(a) in [0, a)"] = in_low[m]
    rep.clauses["F^(m-1)(a) in (1/(a+1), 1]"] = in_top[m - 1]
    rep.clauses["F^n(a) not in [0, a) for n < m"] = not any(in_low[:m])
    rep.details[f"F^{m}(a_tilde)"] = str(orbit[m])

    y = 1 / alpha
    lo, hi = 1 / (2 * alpha), 1 - 1 / (2 * alpha)
    hits = []
    for n in range(m):
        hits.append(lo < y < hi)
        if n < m - 1:
            y = doubling(y)
    rep.clauses["D^(m-1)(1/alpha) in hole"] = hits[m - 1]
    rep.clauses["D^n(1/alpha) not in hole for n < m-1"] = not any(hits[: m - 1])
    rep.details["hole"] = f"({lo}, {hi})"
