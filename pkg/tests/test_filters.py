import itertools
import math

import pytest

from monopp.ffield import field_for_q
from monopp.filters import (
    ALL_KEYS,
    FloorInput,
    Outcome,
    alpha,
    alpha_binomial,
    alpha_double_factorial,
    check_digits_kprime,
    check_lemma3_2,
    check_lemma3_4,
    check_lemma3_5,
    check_lemma3_7,
    check_lemma6_1,
    double_factorial_condition,
    filter_pipeline,
    lemma5_1_closed_a,
    theorem1_4_bound,
)
from monopp.modarith import is_prime, prime_power
from monopp.permpoly import is_pp_bruteforce, p_powers, values_A, values_B

P, F_, NA = Outcome.PASS, Outcome.FAIL, Outcome.NA
ODD_PRIMES_1E3 = [p for p in range(3, 1000) if is_prime(p)]


def alpha_bigint(p):
    """Direct scan of the defining congruence with exact binomials."""
    for u in range(2, p, 2):
        if (math.comb(u, u // 2) - (-1) ** (u // 2) * 2 ** u) % p == 0:
            return u
    raise AssertionError


def test_alpha_reference_values():
    assert alpha(29).alpha == 10
    assert alpha(31).alpha == 8
    assert alpha(47).alpha == 18


def test_alpha_small():
    # C(2,1) = 2 = -4 mod 3;  mod 5: u=2 gives 2 vs 1, u=4 gives 6 = 16
    assert alpha(3).alpha == 2 == alpha_bigint(3)
    assert alpha(5).alpha == 4 == alpha_bigint(5)
    assert alpha(7).alpha == 6


@pytest.mark.parametrize("p", ODD_PRIMES_1E3[:80])
def test_alpha_against_exact_binomials(p):
    assert alpha_binomial(p) == alpha_bigint(p)


def test_alpha_rejects():
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            alpha(bad)


def test_alpha_symmetry():
    for p in ODD_PRIMES_1E3:
        h = (p - 1) // 2
        conds = [double_factorial_condition(p, m) for m in range(h + 1)]
        assert conds == conds[::-1], p


def test_alpha_product_identity():
    for p in ODD_PRIMES_1E3:
        h = (p - 1) // 2
        target = (-1) ** ((p + 1) // 2) % p
        for m in range(h + 1):
            if double_factorial_condition(p, m):
                prod = 1
                for i in range(1, h + 1):
                    prod = prod * (m + i) ** 2 % p
                assert prod == target, (p, m)


def test_alpha_implementations_agree_and_bounded():
    for p in ODD_PRIMES_1E3:
        a = alpha_binomial(p)
        assert a == alpha_double_factorial(p)
        assert a % 2 == 0 and 2 <= a <= p - 1


def test_digit_bound_from_alpha():
    assert theorem1_4_bound(3) == 2
    assert theorem1_4_bound(31) == 10
    assert theorem1_4_bound(5) == 4
    for p in (7, 11, 13):
        if alpha(p).alpha == p - 1:
            assert theorem1_4_bound(p) == p - 1


def test_binomial_a_conditions_examples():
    # q=9, k=3: a=2, C(6,2)=15, c=2, C(4,2)=6, both 0 mod 3
    assert check_lemma3_2(9, 3, 3) == (P, P)
    for p in (3, 5, 7, 11, 13):
        for k in range(2, p):
            if math.gcd(k, p - 1) == 1:
                assert check_lemma3_2(p, p, k)[0] is F_
    assert check_lemma3_2(9, 3, 2) == (NA, NA)
    assert check_lemma3_2(9, 3, 1) == (NA, NA)


def test_binomial_a_conditions_q25_vs_brute():
    F = field_for_q(25)
    for k in range(2, 25):
        res = check_lemma3_2(25, 5, k)
        if F_ in res:
            assert not is_pp_bruteforce(F, values_A(F, k)).is_pp


def test_kprime_digits():
    assert check_digits_kprime(9, 3, 3) is P
    assert 5 * 5 % 8 == 1
    assert check_digits_kprime(9, 3, 5) is F_
    assert check_digits_kprime(9, 3, 2) is NA
    for q in (9, 27, 81, 25, 125, 49):
        p = prime_power(q)[0]
        for k in p_powers(p, q):
            assert check_digits_kprime(q, p, k) is P


def test_neg2_power_condition():
    assert check_lemma3_4(3, 3) is P
    assert check_lemma3_4(3, 2) is P
    assert check_lemma3_4(5, 2) is F_
    assert check_lemma3_4(2, 3) is NA


def test_b_structure_examples():
    res = check_lemma3_5(9, 3, 3)
    assert all(v is P for v in res.values())
    res = check_lemma3_5(9, 3, 5)
    assert res["k_odd"] is P and F_ in res.values()
    assert not is_pp_bruteforce(field_for_q(9), values_B(field_for_q(9), 5)).is_pp
    assert check_lemma3_5(9, 3, 4)["k_odd"] is F_
    assert check_lemma3_5(16, 2, 3)["k_odd"] is NA


def test_digits_alpha_condition():
    assert alpha(3).alpha == 2
    assert check_lemma3_7(9, 3, 3) is P
    assert check_lemma3_7(9, 3, 5) is F_
    for k in range(2, 27):
        expected = P if max(int(d) for d in _base(k, 3)) <= 1 else F_
        assert check_lemma3_7(27, 3, k) is expected


def _base(n, p):
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def test_joint_identity():
    assert check_lemma6_1(9, 3, 3) is P
    assert check_lemma6_1(27, 3, 3) is P
    # c odd -> not applicable: q=7, k=5: k'=5, c=1
    assert check_lemma6_1(7, 7, 5) is NA
    assert check_lemma6_1(9, 3, 2) is NA


def test_joint_identity_sides_q9_k3():
    from monopp.filters import joint_identity_sides
    from monopp.modarith import kparams

    assert joint_identity_sides(9, 3, kparams(3, 9)) == (1, 1)


def test_pipeline_examples():
    for q in (9, 27, 81, 243, 25, 125, 49, 121):
        p = prime_power(q)[0]
        for k in p_powers(p, q):
            assert filter_pipeline(q, p, k).survives_all, (q, k)
    rep = filter_pipeline(9, 3, 5)
    assert not rep.survives_all and rep.reason != "gcd"
    rep = filter_pipeline(9, 3, 2)
    assert not rep.survives_all and rep.reason == "gcd"
    for key in ("binom_ka", "central_2c", "kprime_digits", "joint_identity"):
        assert rep.outcomes[key] is NA
    assert set(rep.outcomes) == set(ALL_KEYS)


@pytest.mark.parametrize("q", [q for q in range(3, 128, 2) if prime_power(q)])
def test_soundness(q):
    F = field_for_q(q)
    for k in range(1, q):
        rep = filter_pipeline(q, F.p, k)
        a = is_pp_bruteforce(F, values_A(F, k)).is_pp
        b = is_pp_bruteforce(F, values_B(F, k)).is_pp
        assert not (rep.a_rejected and a)
        assert not (rep.b_rejected and b)
        assert not (rep.joint_rejected and a and b)


def test_floor_example():
    rep = lemma5_1_closed_a(FloorInput(3, 5, 2, 3, (0, 0)))
    assert FloorInput(3, 5, 2, 3, (0, 0)).k == 36
    assert rep.closed_a == 6 == 242 // 36
    assert rep.hypotheses_hold


@pytest.mark.parametrize("p", [3, 5, 7])
def test_floor_case_shapes(p):
    # indices laid out as in the two-case analysis: j = e-1-l, i = j-l
    for e in range(4, 11):
        for l in range(1, (e - 1) // 2 + 1):
            j, i = e - 1 - l, e - 1 - 2 * l
            if i <= 0:
                continue
            rep = lemma5_1_closed_a(FloorInput(p, e, i, j, (0,) * i))
            if l == 1:
                assert rep.closed_a == p ** 2 * (p - 1) // p
            else:
                assert rep.closed_a == p ** (l + 1) - p
            assert rep.closed_a % p == 0


def test_floor_rejects_bad_input():
    with pytest.raises(ValueError):
        FloorInput(3, 5, 3, 2, (0, 0, 0))
    with pytest.raises(ValueError):
        FloorInput(3, 5, 2, 3, (0, 3))


def test_floor_small_exhaustive():
    checked = 0
    for e in range(3, 7):
        for i, j in itertools.combinations(range(1, e), 2):
            for low in itertools.product(range(3), repeat=i):
                rep = lemma5_1_closed_a(FloorInput(3, e, i, j, low))
                if rep.hypotheses_hold:
                    assert rep.closed_a == rep.direct_a
                    checked += 1
    assert checked > 0
