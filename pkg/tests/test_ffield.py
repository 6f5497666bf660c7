import itertools
import pickle

import numpy as np
import pytest

from monopp.ffield import (
    FieldError,
    field_build,
    field_for_q,
    is_irreducible,
    smallest_irreducible,
)
from monopp.modarith import prime_factors, prime_power

Q_UPTO_81 = [q for q in range(2, 82) if prime_power(q)]
Q_UPTO_343 = [q for q in range(2, 344) if prime_power(q)]


def has_root_or_small_factor(poly, p):
    """Brute-force reducibility for degree <= 3: a root exists in F_p."""
    return any(sum(c * x ** i for i, c in enumerate(poly)) % p == 0 for x in range(p))


def test_prime_field():
    F = field_build(3, 1)
    assert F.q == 3 and F.spec.modulus == (0, 1)
    x = F.elements()
    assert list(F.add(x, 2)) == [(v + 2) % 3 for v in range(3)]
    assert list(F.mul(x, 2)) == [(v * 2) % 3 for v in range(3)]


def test_q9_lagrange():
    F = field_build(3, 2)
    assert F.q == 9
    assert np.all(F.pow(F.elements()[1:], 8) == 1)


def test_q125_generator_order():
    F = field_build(5, 3)
    g = F.generator
    assert F.pow(g, 124 // 2) != 1
    assert F.pow(g, 124 // 31) != 1
    assert F.pow(g, 124) == 1
    assert sorted(prime_factors(124)) == [2, 31]


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)])
def test_modulus_is_smallest_irreducible(p, e):
    mod = list(field_build(p, e).spec.modulus)
    assert is_irreducible(mod, p)
    # every lexicographically smaller monic candidate has a root (degree <= 3)
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if cand == mod:
            break
        assert has_root_or_small_factor(cand, p)
    assert not has_root_or_small_factor(mod, p)


def test_irreducibility_degree4():
    # X^4 + X + 1 irreducible over F_2, X^4 + X^2 + 1 = (X^2+X+1)^2 is not
    assert is_irreducible([1, 1, 0, 0, 1], 2)
    assert not is_irreducible([1, 0, 1, 0, 1], 2)
    # constant term compared first: 1 + X^3 + X^4 precedes 1 + X + X^4
    assert smallest_irreducible(2, 4) == [1, 0, 0, 1, 1]


def test_generator_is_smallest_primitive():
    for q in (9, 16, 25, 27, 49):
        F = field_for_q(q)
        order = lambda x: next(n for n in range(1, q) if F.pow(x, n) == 1)  # noqa: E731
        assert order(F.generator) == q - 1
        assert all(order(x) < q - 1 for x in range(1, F.generator))


@pytest.mark.parametrize("q", Q_UPTO_343)
def test_tables(q):
    F = field_for_q(q)
    nz = np.arange(1, q)
    assert np.array_equal(F.exp_table[F.log_table[nz]], nz)
    assert len(set(F.exp_table.tolist())) == q - 1
    assert np.all(F.pow(nz, q - 1) == 1)


@pytest.mark.parametrize("q", Q_UPTO_343)
def test_frobenius(q):
    F = field_for_q(q)
    x = F.elements()
    fx = F.pow(x, F.p)
    assert len(set(fx.tolist())) == q
    fixed = np.nonzero(fx == x)[0]
    assert list(fixed) == list(range(F.p))  # prime subfield = indices 0..p-1
    assert np.array_equal(F.pow(x, q), x)


@pytest.mark.parametrize("q", Q_UPTO_81)
def test_field_axioms_exhaustive(q):
    F = field_for_q(q)
    x = F.elements()
    X, Y = np.meshgrid(x, x, indexing="ij")
    add, mul = F.add(X, Y), F.mul(X, Y)
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    assert np.array_equal(F.add(x, 0), x) and np.array_equal(F.mul(x, 1), x)
    assert np.all(F.add(x, F.neg(x)) == 0)
    assert np.array_equal(F.sub(X, Y), F.add(X, F.neg(Y)))
    for z in range(0, q, max(1, q // 9)):
        assert np.array_equal(F.add(add, z), F.add(X, F.add(Y, z)))
        assert np.array_equal(F.mul(mul, z), F.mul(X, F.mul(Y, z)))
        assert np.array_equal(F.mul(add, z), F.add(F.mul(X, z), F.mul(Y, z)))


@pytest.mark.parametrize("q", [125, 243, 343, 256, 2401])
def test_field_axioms_random(q):
    F = field_for_q(q)
    rng = np.random.default_rng(q)
    a, b, c = (rng.integers(0, q, 2000) for _ in range(3))
    assert np.array_equal(F.mul(F.add(a, b), c), F.add(F.mul(a, c), F.mul(b, c)))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))


def test_inverse_and_pow_conventions():
    F = field_for_q(9)
    nz = np.arange(1, 9)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    assert F.pow(0, 0) == 1 and F.pow(0, 5) == 0
    assert all(F.pow(x, 13) == F.pow(x, 13 % 8) for x in range(1, 9))


def test_char3_frobenius_additive():
    F = field_for_q(9)
    x = F.elements()
    X, Y = np.meshgrid(x, x, indexing="ij")
    assert np.array_equal(F.pow(F.add(X, Y), 3), F.add(F.pow(X, 3), F.pow(Y, 3)))


def test_scalar_and_array_agree():
    F = field_for_q(27)
    for x in range(27):
        for y in (0, 1, 5, 26):
            assert F.add(x, y) == int(F.add(np.array([x]), y)[0])
            assert F.mul(x, y) == int(F.mul(np.array([x]), y)[0])


def test_errors():
    with pytest.raises(FieldError):
        field_build(4, 1)
    with pytest.raises(FieldError):
        field_build(3, 0)
    with pytest.raises(FieldError):
        field_build(2, 21)
    with pytest.raises(FieldError):
        field_for_q(12)


def test_deterministic_and_picklable():
    F = field_build(7, 2)
    G = pickle.loads(pickle.dumps(F))
    assert G.spec == F.spec and G.generator == F.generator
    assert np.array_equal(G.exp_table, F.exp_table)
