"""Series-ring and matrix tests, including the s-fixing twist convention."""

import random

import pytest

from frobfix.gf2 import default_field, embed
from frobfix.linalg import Matrix, nullspace, solve
from frobfix.modp import PrimeField
from frobfix.series import TruncatedSeriesRing


def test_series_ring_axioms_random():
    ring = TruncatedSeriesRing(default_field(2), 4)
    rng = random.Random(11)
    for _ in range(300):
        a, b, c = ring.random(rng), ring.random(rng), ring.random(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_series_nilpotency_and_units():
    ring = TruncatedSeriesRing(default_field(1), 3)
    s = ring.s()
    assert (s ** 3).is_zero()
    assert not (s ** 2).is_zero()
    units = [u for u in ring.elements() if u.is_unit()]
    # units are exactly the elements with nonzero constant term
    assert len(units) == 1 * 2 * 2
    for u in units:
        assert u * u.inverse() == ring.one()


def test_series_inverse_random():
    ring = TruncatedSeriesRing(default_field(3), 5)
    rng = random.Random(12)
    for _ in range(200):
        u = ring.random_unit(rng)
        assert u * u.inverse() == ring.one()


def test_twist_fixes_s_and_powers_coefficients():
    f = default_field(2)
    ring = TruncatedSeriesRing(f, 4)
    s = ring.s()
    for q in (2, 4):
        assert s.twist(q) == s  # THE convention: s is untouched
    w = f.gen()
    a = ring.element([w, w, f.one(), w + f.one()])
    t = a.twist(2)
    assert t.coeffs[0] == w * w and t.coeffs[1] == w * w
    assert t.coeffs[2] == f.one() and t.coeffs[3] == (w + f.one()) ** 2
    # twisting by the full field order is the identity
    assert a.twist(2).twist(2) == a


def test_twist_is_ring_homomorphism():
    ring = TruncatedSeriesRing(default_field(2), 3)
    rng = random.Random(13)
    for _ in range(200):
        a, b = ring.random(rng), ring.random(rng)
        assert (a + b).twist(2) == a.twist(2) + b.twist(2)
        assert (a * b).twist(2) == a.twist(2) * b.twist(2)


def test_series_map_field():
    f2, f4 = default_field(2), default_field(4)
    e = embed(f2, f4)
    ring = TruncatedSeriesRing(f2, 3)
    rng = random.Random(14)
    for _ in range(50):
        a, b = ring.random(rng), ring.random(rng)
        assert (a * b).map_field(e) == a.map_field(e) * b.map_field(e)


@pytest.mark.parametrize("ring_kind", ["field", "series", "prime"])
def test_matrix_inverse(ring_kind):
    rng = random.Random(15)
    if ring_kind == "field":
        ring = default_field(4)
    elif ring_kind == "series":
        ring = TruncatedSeriesRing(default_field(2), 3)
    else:
        ring = PrimeField(3)
    for _ in range(100):
        n = rng.choice([1, 2, 3])
        m = Matrix(ring, [[ring.random(rng) for _ in range(n)] for _ in range(n)])
        if not m.det().is_unit():
            continue
        assert m * m.inverse() == Matrix.identity(ring, n)
        assert m.inverse() * m == Matrix.identity(ring, n)


def test_matrix_det_multiplicative():
    ring = TruncatedSeriesRing(default_field(2), 3)
    rng = random.Random(16)
    for _ in range(100):
        a = Matrix(ring, [[ring.random(rng) for _ in range(2)] for _ in range(2)])
        b = Matrix(ring, [[ring.random(rng) for _ in range(2)] for _ in range(2)])
        assert (a * b).det() == a.det() * b.det()


def test_matrix_det_3x3_prime_field():
    ring = PrimeField(5)
    m = Matrix(ring, [[ring.element(v) for v in row] for row in
                      [[1, 2, 3], [0, 1, 4], [5, 6, 1]]])
    # oracle: integer determinant mod 5
    import itertools

    def perm_det(rows):
        total = 0
        for perm in itertools.permutations(range(3)):
            sign = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = 1
            for i in range(3):
                prod *= rows[i][perm[i]]
            total += sign * prod
        return total % 5

    assert m.det().value == perm_det([[1, 2, 3], [0, 1, 4], [5, 6, 1]])


def test_matrix_invertible_iff_det_unit():
    ring = TruncatedSeriesRing(default_field(2), 2)
    rng = random.Random(17)
    for _ in range(200):
        m = Matrix(ring, [[ring.random(rng) for _ in range(2)] for _ in range(2)])
        if m.det().is_unit():
            m.inverse()
        else:
            with pytest.raises(ZeroDivisionError):
                m.inverse()


def test_nullspace_and_solve():
    f = default_field(4)
    rng = random.Random(18)
    for _ in range(100):
        nr, nc = rng.choice([(2, 3), (3, 3), (3, 4), (4, 2)])
        m = Matrix(f, [[f.random(rng) for _ in range(nc)] for _ in range(nr)])
        basis = nullspace(m)
        zero = [f.zero()] * nr
        for vec in basis:
            assert m.apply(vec) == zero
        # rank-nullity
        _, pivots = __import__("frobfix.linalg", fromlist=["rref"]).rref(m)
        assert len(basis) == nc - len(pivots)
        rhs = [f.random(rng) for _ in range(nr)]
        x = solve(m, rhs)
        if x is not None:
            assert m.apply(x) == rhs
