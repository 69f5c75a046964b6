"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL criterion N: ...`` line and then
asserts.  Run ``python tests/test_acceptance.py`` for the summary alone.
Thresholds and tolerances are fixed here and are not tuned to the results.
"""

import hashlib
import random
import time
from fractions import Fraction as F

import pytest

from symdouble import blocks, cfbridge, dynamics, measure
from symdouble.dynamics import HALF
from symdouble.words import r_minus, r_plus

WORKED_ALPHA = F(1024, 945)
CASCADE_SEEDS = ("11", "111", "1101", "111011")
CASCADE_LIMIT_6DP = "1.212216"
THUE_MORSE_6DP = "0.412454"
COVERAGE_MAX_LEN = 18
COVERAGE_THRESHOLD = F(95, 100)
COVERAGE_FROZEN_SHA256 = "782a44609fac5c997632d7c5a82e4f08458d5911ff7080ab9e7b5253e02b9cf7"
COVERAGE_FROZEN_FLOAT = 0.9035551537118404
BIRKHOFF_ALPHAS = (F(13, 10), F(7, 4), F(1024, 945))
BIRKHOFF_STEPS = 10**6
BIRKHOFF_TOLERANCE = 0.004
BIRKHOFF_SEED = 0


def rounded(x: F, places: int) -> str:
    q = round(x * 10**places)
    s = str(q).rjust(places + 1, "0")
    return f"{s[:-places]}.{s[-places:]}"


def certified_digits(value: blocks.CertifiedValue, places: int) -> str | None:
    """Decimal rounding of the certified number, or None if the enclosure straddles a rounding boundary."""
    lo, hi = rounded(value.lo, places), rounded(value.hi, places)
    return lo if lo == hi else None


def criterion_1():
    start = time.perf_counter()
    res = dynamics.matching_index(WORKED_ALPHA)
    seq = dynamics.signed_digit_sequence(1, WORKED_ALPHA)
    loc = blocks.locate(WORKED_ALPHA)
    a = cfbridge.a_of_omega("111011")
    qi = cfbridge.quadratic_endpoints(a)
    rep = cfbridge.bridge_verify("111011", alpha=WORKED_ALPHA)
    elapsed = time.perf_counter() - start
    ok = (
        res == dynamics.Matched(6, "111011")
        and str(seq) == "1110110001(0)^∞"
        and isinstance(loc, blocks.Interval)
        and loc.block.omega == "111011"
        and (loc.block.L, loc.block.R) == (F(13, 12), F(63, 58))
        and a == F(3, 11)
        and str(qi.lo_surd) == "(√37−5)/4"
        and qi.lo_surd.satisfies(*qi.lo.fixed_point_polynomial())
        and rep.ok
        and elapsed < 1
    )
    return ok, f"m={res.m}, d={seq}, J={loc}, a={a}, a-={qi.lo_surd}, bridge clauses ok={rep.ok}, {elapsed:.2f}s"


def criterion_2():
    start = time.perf_counter()
    high = [F(3, 2) + F(k, 40) for k in range(1, 21)]
    high_ok = all(measure.mu_zero(x) == 1 / x for x in high)
    plateau = [
        F(p, q) for q in range(1, 101) for p in range(q, 2 * q + 1) if F(p, q).denominator == q and F(6, 5) <= F(p, q) <= F(3, 2)
    ]
    bad = [x for x in plateau if measure.mu_zero(x) != measure.TWO_THIRDS]
    one_ok = measure.mu_zero(1) == F(1, 2)
    elapsed = time.perf_counter() - start
    ok = high_ok and not bad and one_ok and elapsed < 1
    return ok, f"20 high-region points ok={high_ok}, {len(plateau)} plateau points, {len(bad)} off 2/3, alpha=1 ok={one_ok}, {elapsed:.2f}s"


def criterion_3():
    start = time.perf_counter()
    bad, count = [], 0
    for w in blocks.enumerate_primitive(8):
        L, R = blocks.interval_endpoints(w)
        a = (L + R) / 2
        h = measure.density_closed_form(a)
        count += 1
        if measure.pf_apply(h, a) != h or h.integral() != 1:
            bad.append(w)
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 60, f"{count} interval midpoints, failures {bad}, {elapsed:.2f}s"


def criterion_4():
    start = time.perf_counter()
    bad, count = [], 0
    for w in blocks.enumerate_primitive(8):
        L, R = blocks.interval_endpoints(w)
        for t in (F(1, 4), F(1, 2), F(3, 4)):
            a = L + t * (R - L)
            count += 1
            if len(w) == 2:
                formula = measure.TWO_THIRDS
            else:
                formula = measure.mu_formula(w, a)
            if formula != measure.density_closed_form(a).integral(-HALF, HALF):
                bad.append((w, a))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 60, f"{count} points, failures {bad}, {elapsed:.2f}s"


def criterion_5():
    start = time.perf_counter()
    shared = all(
        c[k].L == c[k + 1].R for w in CASCADE_SEEDS for c in [blocks.cascade(w, 5)] for k in range(5)
    )
    limit = blocks.cascade_limit("11", 64)
    pstar = blocks.thue_morse_constant(64)
    limit_digits = certified_digits(limit, 6)
    pstar_digits = certified_digits(pstar, 6)
    oracle = abs(limit.value - 1 / (2 * pstar.value)) < F(1, 2**60)
    elapsed = time.perf_counter() - start
    ok = shared and limit_digits == CASCADE_LIMIT_6DP and pstar_digits == THUE_MORSE_6DP and oracle and elapsed < 1
    return ok, (
        f"shared endpoints ok={shared}; limit {limit_digits} (expected {CASCADE_LIMIT_6DP}); "
        f"p* {pstar_digits} (expected {THUE_MORSE_6DP}); 1/(2p*) agrees with limit={oracle}; {elapsed:.2f}s"
    )


def criterion_6():
    start = time.perf_counter()
    total, disagreements = 0, []
    for n in range(1, 15):
        for k in range(2**n):
            w = format(k, f"0{n}b")
            votes = blocks.primitivity_votes(w)
            total += 1
            if len(set(votes.values())) > 1:
                disagreements.append(w)
    ivs = sorted(blocks.interval_endpoints(w) for w in blocks.enumerate_primitive(14))
    overlaps = sum(1 for a, b in zip(ivs, ivs[1:]) if a[1] > b[0])
    elapsed = time.perf_counter() - start
    ok = not disagreements and overlaps == 0 and elapsed < 300
    return ok, f"{total} words, {len(disagreements)} disagreements, {len(ivs)} intervals, {overlaps} overlaps, {elapsed:.1f}s"


def coverage_fingerprint(c: F) -> str:
    return hashlib.sha256(f"{c.numerator:x}/{c.denominator:x}".encode()).hexdigest()


def criterion_7():
    start = time.perf_counter()
    c = measure.coverage(COVERAGE_MAX_LEN)
    elapsed = time.perf_counter() - start
    ok = c >= COVERAGE_THRESHOLD and elapsed < 600
    return ok, f"coverage up to length {COVERAGE_MAX_LEN} = {float(c):.10f} (threshold {float(COVERAGE_THRESHOLD)}), {elapsed:.1f}s"


def criterion_8():
    start = time.perf_counter()
    parts, ok = [], True
    for a in BIRKHOFF_ALPHAS:
        est = measure.birkhoff_frequency(a, BIRKHOFF_STEPS, seed=BIRKHOFF_SEED)
        exact = measure.mu_zero(a)
        err = abs(est - float(exact))
        ok &= err <= BIRKHOFF_TOLERANCE
        parts.append(f"{a}: {est:.6f} vs {float(exact):.6f}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 60, "; ".join(parts) + f"; tolerance {BIRKHOFF_TOLERANCE}, {elapsed:.1f}s"


def criterion_9():
    start = time.perf_counter()
    rng = random.Random(2024)
    identity_failures = 0
    for _ in range(100):
        q = rng.randint(2, 10**4)
        x = F(rng.randint(1, q - 1), q)
        if cfbridge.minkowski_q(dynamics.farey(x)) != dynamics.tent(cfbridge.minkowski_q(x)):
            identity_failures += 1
        if dynamics.tent(dynamics.doubling(x)) != dynamics.tent(dynamics.tent(x)):
            identity_failures += 1
        if cfbridge.phi_value(x) + cfbridge.minkowski_q(x) / 2 != 1:
            identity_failures += 1
    phi_failures, count = [], 0
    for w in blocks.enumerate_primitive(10):
        qi = cfbridge.quadratic_endpoints(cfbridge.a_of_omega(w))
        count += 1
        if not (cfbridge.phi_word(qi.lo).same_as(r_plus(w)) and cfbridge.phi_word(qi.hi).same_as(r_minus(w))):
            phi_failures.append(w)
    elapsed = time.perf_counter() - start
    ok = identity_failures == 0 and not phi_failures and elapsed < 10
    return ok, f"identity failures {identity_failures}/300, phi-image failures {phi_failures} over {count} blocks, {elapsed:.2f}s"


def criterion_10():
    start = time.perf_counter()
    bad, count = [], 0
    for w in blocks.enumerate_primitive(10):
        if len(w) < 3:
            continue
        count += 1
        if measure.monotonicity_check(w, strict=False) != measure.predicted_direction(w):
            bad.append(w)
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 60, f"{count} blocks, mismatches {bad}, {elapsed:.2f}s"


CRITERIA = {
    1: ("worked example 1024/945", criterion_1),
    2: ("closed forms in the high region, the 2/3 plateau and alpha = 1", criterion_2),
    3: ("transfer-operator fixed points", criterion_3),
    4: ("block formula equals density integral", criterion_4),
    5: ("cascade identity and Thue-Morse limit", criterion_5),
    6: ("primitivity triple agreement and disjointness", criterion_6),
    7: ("coverage of (1, 3/2) by matching intervals", criterion_7),
    8: ("Birkhoff consistency", criterion_8),
    9: ("continued-fraction bridge identities", criterion_9),
    10: ("monotonicity signs", criterion_10),
}


def evaluate(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}: {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


def test_coverage_regression_value():
    c = measure.coverage(COVERAGE_MAX_LEN)
    assert coverage_fingerprint(c) == COVERAGE_FROZEN_SHA256
    assert float(c) == COVERAGE_FROZEN_FLOAT


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        print(evaluate(n)[1])
