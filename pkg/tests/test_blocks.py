import itertools
import re
from fractions import Fraction as F

import pytest

from symdouble.blocks import (
    Boundary,
    HighRegion,
    Interval,
    NonMatching,
    NotPrimitiveError,
    boundary_sequences,
    cascade,
    cascade_limit,
    catalog,
    ell_decomposition,
    enumerate_primitive,
    interval_endpoints,
    is_primitive,
    locate,
    matching_interval,
    primitivity_votes,
    psi,
    thue_morse_constant,
    thue_morse_word,
)
from symdouble.dynamics import Matched, matching_index
from symdouble.words import EllDecomposition


def all_words(max_len):
    for n in range(1, max_len + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)


PRIMITIVE_12 = list(enumerate_primitive(12))


@pytest.mark.parametrize("w, out", [("11", "1101"), ("1101", "11010011"), ("111011", "111011000101")])
def test_psi_examples(w, out):
    assert psi(w) == out


def test_psi_rejects_short_words():
    with pytest.raises(ValueError):
        psi("1")


@pytest.mark.parametrize("w, runs", [("111011", (3, 1, 1, 0)), ("11", (1, 0)), ("1101", (2, 1))])
def test_ell_decomposition(w, runs):
    dec = ell_decomposition(w)
    assert dec.runs == runs and dec.word() == w


def test_ell_decomposition_round_trip():
    for w in all_words(12):
        if len(w) >= 2 and w[0] == w[-1] == "1":
            dec = ell_decomposition(w)
            assert dec.word() == w
            assert len(dec.runs) % 2 == 0
            assert all(r >= 1 for r in dec.runs[:-1]) and dec.runs[-1] >= 0


def test_ell_decomposition_needs_final_one():
    with pytest.raises(ValueError):
        ell_decomposition("1110")
    assert EllDecomposition((1, 0)).word() == "11"


@pytest.mark.parametrize("w, expected", [("11", True), ("111011", True), ("1110", False), ("110011", False)])
def test_primitivity_examples(w, expected):
    assert primitivity_votes(w) == {"definition": expected, "cf": expected, "dynamic": expected}


def test_three_methods_agree_up_to_14():
    count = 0
    for w in all_words(14):
        votes = primitivity_votes(w)
        assert len(set(votes.values())) == 1, (w, votes)
        count += votes["definition"]
    assert count == len(list(enumerate_primitive(14)))


def test_unknown_method():
    with pytest.raises(ValueError):
        is_primitive("11", "guess")


def test_enumeration_examples():
    assert list(enumerate_primitive(2)) == ["11"]
    four = list(enumerate_primitive(4))
    assert {"11", "111", "1101", "1111"} <= set(four) and "1011" not in four
    assert "111011" in enumerate_primitive(6)


def test_enumeration_order_and_uniqueness():
    ws = list(enumerate_primitive(12))
    assert ws == sorted(ws, key=lambda w: (len(w), w))
    assert len(ws) == len(set(ws))
    brute = [w for w in all_words(12) if is_primitive(w, "dynamic")]
    assert sorted(ws) == sorted(brute)


@pytest.mark.parametrize(
    "w, L, R", [("11", F(5, 4), F(3, 2)), ("1101", F(17, 14), F(5, 4)), ("111011", F(13, 12), F(63, 58))]
)
def test_matching_interval_examples(w, L, R):
    J = matching_interval(w)
    assert (J.L, J.R, J.m, J.x_m) == (L, R, len(w), int(w, 2))


def test_matching_interval_rejects_non_primitive():
    with pytest.raises(NotPrimitiveError):
        matching_interval("110011")


def test_intervals_lie_in_low_region():
    for w in PRIMITIVE_12:
        L, R = interval_endpoints(w)
        assert 1 < L < R <= F(3, 2)


def test_disjoint_up_to_14():
    ivs = sorted(interval_endpoints(w) for w in enumerate_primitive(14))
    for (a, b), (c, d) in zip(ivs, ivs[1:]):
        assert b <= c


def sample_points(L, R):
    width = R - L
    return [L + width / 1000, L + width / 3, (L + R) / 2, L + 2 * width / 3, R - width / 1000]


def test_interval_samples():
    for w in PRIMITIVE_12:
        for a in sample_points(*interval_endpoints(w)):
            assert matching_index(a) == Matched(len(w), w), (w, a)


def test_grid_outside_intervals_has_no_early_matching():
    ivs = [interval_endpoints(w) for w in PRIMITIVE_12]
    lo = 1 + F(1, 2**12)
    checked = 0
    for q in range(2, 181):
        for p in range(q + 1, 3 * q // 2 + 1):
            a = F(p, q)
            if a.denominator != q or not lo < a < F(3, 2):
                continue
            if any(L < a < R for L, R in ivs):
                continue
            res = matching_index(a)
            assert not (isinstance(res, Matched) and res.m <= 12), (a, res)
            checked += 1
    assert checked > 100


def test_psi_properties_to_length_10():
    def precedes(u, v):
        return u != v and (v.startswith(u) or (not u.startswith(v) and u < v))

    for w in all_words(10):
        if len(w) >= 2:
            assert precedes(w, psi(w))
    prim = list(enumerate_primitive(10))
    for w in prim:
        assert is_primitive(psi(w)) and is_primitive(psi(w), "dynamic")
    for u, v in itertools.combinations(prim, 2):
        if len(u) == len(v):
            assert (u < v) == (psi(u) < psi(v))


def test_zero_runs_bounded_by_leading_ones():
    for q in range(50, 400, 7):
        for p in range(q + 1, 3 * q // 2):
            res = matching_index(F(p, q))
            if isinstance(res, Matched) and res.m >= 2:
                w = res.prefix
                lead = len(w) - len(w.lstrip("1"))
                zero_runs = [len(r) for r in re.findall("0+", w)]
                assert all(r <= lead for r in zero_runs), w


@pytest.mark.parametrize(
    "w, left, right",
    [("11", "1100", "10"), ("1101", "11010010", "1100"), ("111011", "111011000100", "111010")],
)
def test_boundary_sequences(w, left, right):
    lseq, rseq = boundary_sequences(w)
    assert "".join(map(str, lseq.period)) == left
    assert "".join(map(str, rseq.period)) == right


def test_cascade_examples():
    c = cascade("11", 1)
    assert [(J.L, J.R) for J in c] == [(F(5, 4), F(3, 2)), (F(17, 14), F(5, 4))]
    assert cascade("11", 2)[2].R == F(17, 14)
    assert cascade("111011", 1)[1].R == F(13, 12)


def test_cascade_shared_endpoints():
    for w in ("11", "111", "1101", "111011", "11011"):
        c = cascade(w, 4)
        assert all(a.L == b.R for a, b in zip(c, c[1:]))


def test_thue_morse_oracle():
    assert thue_morse_word(16) == "0110100110010110"
    assert thue_morse_constant(40).decimal(6) == "0.412454"


def test_cascade_limit_agrees_with_thue_morse():
    limit = cascade_limit("11", 80)
    pstar = thue_morse_constant(100)
    assert limit.lo <= 1 / (2 * pstar.hi) and 1 / (2 * pstar.lo) <= limit.hi + F(1, 2**70)
    assert abs(limit.value - 1 / (2 * pstar.value)) <= F(1, 2**79)
    assert cascade_limit("1101", 40).value == cascade_limit("11", 40).value
    assert limit.hi - limit.lo < F(1, 2**80)


def test_limit_is_below_every_cascade_interval():
    limit = cascade_limit("11", 64)
    for J in cascade("11", 4):
        assert limit.value < J.L


def test_locate_examples():
    assert locate(F(4, 3)) == Interval(matching_interval("11"))
    assert locate(F(1024, 945)).block.omega == "111011"
    assert locate(F(3, 2)) == Boundary("11", "right")
    assert locate(F(5, 4)) == Boundary("1101", "right", left_of="11")
    assert isinstance(locate(F(7, 4)), HighRegion)
    assert isinstance(locate(F(6, 5)), NonMatching)


def test_locate_endpoints_of_catalog():
    for w in enumerate_primitive(8):
        L, R = interval_endpoints(w)
        assert locate(R) == Boundary(w, "right", locate(R).left_of)
        assert locate(L).left_of == w


def test_catalog_records():
    recs = catalog(6)
    by = {r["omega"]: r for r in recs}
    assert by["111011"] == {"omega": "111011", "m": 6, "L": "13/12", "R": "63/58", "eta": -2, "K": by["111011"]["K"]}
    assert by["11"]["K"] is None
