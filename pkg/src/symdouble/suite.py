"""Invariant checks run by ``symdouble verify``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import blocks, cfbridge, dynamics, measure
from .words import psi


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, ok, detail)


def worked_example() -> tuple[bool, str]:
    alpha = Fraction(1024, 945)
    res = dynamics.matching_index(alpha)
    seq = dynamics.signed_digit_sequence(1, alpha)
    loc = blocks.locate(alpha)
    qi = cfbridge.quadratic_endpoints(cfbridge.a_of_omega("111011"))
    rep = cfbridge.bridge_verify("111011", alpha=alpha)
    ok = (
        res == dynamics.Matched(6, "111011")
        and str(seq) == "1110110001(0)^∞"
        and isinstance(loc, blocks.Interval)
        and (loc.block.L, loc.block.R) == (Fraction(13, 12), Fraction(63, 58))
        and cfbridge.a_of_omega("111011") == Fraction(3, 11)
        and str(qi.lo_surd) == "(√37−5)/4"
        and rep.ok
    )
    return ok, f"m={res.m if isinstance(res, dynamics.Matched) else res}, a-={qi.lo_surd}"


def orbit_difference(max_den: int) -> tuple[bool, str]:
    bad = []
    for q in range(2, max_den + 1):
        for p in range(q + 1, 2 * q):
            a = Fraction(p, q)
            if a.denominator != q or not 1 < a < Fraction(3, 2):
                continue
            rep = dynamics.verify_orbit_identities(a, 40)
            if not rep.passed:
                bad.append(str(a))
    return not bad, f"failures: {bad[:5]}" if bad else f"denominators <= {max_den}"


def primitivity_agreement(max_len: int) -> tuple[bool, str]:
    n, bad = 0, []
    for length in range(1, max_len + 1):
        for bits in itertools.product("01", repeat=length):
            w = "".join(bits)
            votes = blocks.primitivity_votes(w)
            n += votes["definition"]
            if len(set(votes.values())) > 1:
                bad.append(w)
    enum = list(blocks.enumerate_primitive(max_len))
    ok = not bad and len(enum) == n
    return ok, f"{n} primitive blocks; disagreements {bad[:5]}"


def disjointness(max_len: int) -> tuple[bool, str]:
    ivs = sorted(blocks.interval_endpoints(w) for w in blocks.enumerate_primitive(max_len))
    clash = [(a, b) for a, b in zip(ivs, ivs[1:]) if a[1] > b[0]]
    return not clash, f"{len(ivs)} intervals"


def interval_samples(max_len: int) -> tuple[bool, str]:
    bad = []
    for w in blocks.enumerate_primitive(max_len):
        L, R = blocks.interval_endpoints(w)
        for t in (Fraction(1, 1000), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(999, 1000)):
            a = L + t * (R - L)
            if dynamics.matching_index(a) != dynamics.Matched(len(w), w):
                bad.append((w, str(a)))
    return not bad, f"failures {bad[:3]}" if bad else "5 samples per interval"


def cascade_identities() -> tuple[bool, str]:
    for w in ("11", "111", "1101", "111011"):
        blocks.cascade(w, 4)
    limit = blocks.cascade_limit("11", 64)
    tm = blocks.thue_morse_constant(80)
    ok = abs(limit.value - 1 / (2 * tm.value)) < Fraction(1, 2**60)
    return ok, f"1/p_11 = {limit.decimal(9)}, p* = {tm.decimal(9)}"


def pf_fixed_points(max_len: int) -> tuple[bool, str]:
    bad = []
    for w in blocks.enumerate_primitive(max_len):
        L, R = blocks.interval_endpoints(w)
        a = (L + R) / 2
        h = measure.density_closed_form(a)
        if measure.pf_apply(h, a) != h or h.integral() != 1 or not h.is_nonnegative():
            bad.append(w)
    for a in ("6/5", "3/2", "5/4", "8/5", "2"):
        h = measure.density_exact(a)
        if measure.pf_apply(h, Fraction(a)) != h:
            bad.append(a)
    return not bad, f"failures {bad[:5]}"


def formula_vs_integral(max_len: int) -> tuple[bool, str]:
    bad = []
    for w in blocks.enumerate_primitive(max_len):
        if len(w) < 3:
            continue
        L, R = blocks.interval_endpoints(w)
        for t in (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)):
            a = L + t * (R - L)
            if measure.mu_formula(w, a) != measure.density_closed_form(a).integral(-dynamics.HALF, dynamics.HALF):
                bad.append((w, str(a)))
    return not bad, f"failures {bad[:3]}"


def plateau(max_den: int) -> tuple[bool, str]:
    lo, hi = Fraction(6, 5), Fraction(3, 2)
    bad = []
    for q in range(1, max_den + 1):
        for p in range(q, 2 * q + 1):
            a = Fraction(p, q)
            if a.denominator == q and lo <= a <= hi and measure.mu_zero(a) != measure.TWO_THIRDS:
                bad.append(str(a))
    return not bad, f"failures {bad[:5]}"


def high_region() -> tuple[bool, str]:
    alphas = [Fraction(3, 2) + Fraction(k, 40) for k in range(1, 21)]
    ok = all(measure.mu_zero(a) == 1 / a for a in alphas) and measure.mu_zero(1) == Fraction(1, 2)
    return ok, "20 points in (3/2, 2] and alpha = 1"


def bridge(max_len: int) -> tuple[bool, str]:
    failed = []
    for w in blocks.enumerate_primitive(max_len):
        rep = cfbridge.bridge_verify(w, n_random=5, seed=len(w))
        if not rep.ok:
            failed.append((w, rep.failed()))
    return not failed, f"failures {failed[:3]}"


def monotonicity(max_len: int) -> tuple[bool, str]:
    bad = []
    for w in blocks.enumerate_primitive(max_len):
        if len(w) >= 3 and measure.monotonicity_check(w, strict=False) != measure.predicted_direction(w):
            bad.append(w)
    return not bad, f"failures {bad[:5]}"


def eta_of_cascades(max_len: int) -> tuple[bool, str]:
    bad = [w for w in blocks.enumerate_primitive(max_len) if measure.eta(psi(w)) != 0 or measure.eta(psi(psi(w))) != 0]
    return not bad, f"failures {bad[:5]}"


def lambda_vs_matching(max_den: int) -> tuple[bool, str]:
    bad = []
    for q in range(2, max_den + 1):
        for p in range(q + 1, 2 * q):
            a = Fraction(p, q)
            if a.denominator != q or not a < Fraction(3, 2):
                continue
            no_match = not isinstance(dynamics.matching_index(a), dynamics.Matched)
            if dynamics.lambda_membership(1 / a) != no_match:
                bad.append(str(a))
    return not bad, f"failures {bad[:5]}"


def gauss_order_random(n: int, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        s = cfbridge.CFWord.periodic([rng.randint(1, 5) for _ in range(rng.randint(1, 4))])
        t = cfbridge.CFWord.periodic([rng.randint(1, 5) for _ in range(rng.randint(1, 4))])
        c = cfbridge.gauss_compare(s, t)
        (slo, shi), (tlo, thi) = s.enclosure(200), t.enclosure(200)
        numeric = -1 if shi < tlo else 1 if thi < slo else 0
        if c != numeric:
            bad += 1
    return bad == 0, f"{n} random periodic pairs"


def run_suite(max_len: int = 10, max_den: int = 60, seed: int = 0) -> list[CheckResult]:
    checks = [
        ("worked example 1024/945", worked_example),
        ("orbit difference and doubling conjugacy", lambda: orbit_difference(max_den)),
        ("non-matching iff tent-map condition", lambda: lambda_vs_matching(max_den)),
        ("primitivity: three methods agree", lambda: primitivity_agreement(max_len)),
        ("matching intervals are disjoint", lambda: disjointness(max_len + 2)),
        ("matching index and digits on each interval", lambda: interval_samples(max_len)),
        ("cascade endpoints and limit constant", cascade_identities),
        ("Gauss order matches numeric order", lambda: gauss_order_random(300, seed)),
        ("continued-fraction bridge", lambda: bridge(max_len)),
        ("transfer-operator fixed points", lambda: pf_fixed_points(min(max_len, 8))),
        ("block formula equals density integral", lambda: formula_vs_integral(min(max_len, 8))),
        ("high region and alpha = 1", high_region),
        ("plateau 2/3 on [6/5, 3/2]", lambda: plateau(min(max_den, 40))),
        ("cascade blocks have eta = 0", lambda: eta_of_cascades(max_len)),
        ("monotonicity follows the sign of eta", lambda: monotonicity(max_len)),
    ]
    return [_check(name, fn) for name, fn in checks]
