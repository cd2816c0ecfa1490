import cmath
import random
from fractions import Fraction
from itertools import permutations, product
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from lenscalc.exact_algebra import (
    CycloElem,
    FinAbGroup,
    Lattice,
    cyclotomic_polynomial,
    det,
    euler_phi,
    fin_ab_from_orders,
    identity,
    is_sublattice,
    lattice_from_generators,
    lattice_kernel,
    lattice_preimage,
    matmul,
    quotient_group,
    snf,
)
from lenscalc.sweep import check_preimage_instance, check_snf_instance


def leibniz_det(A):
    """Permutation-expansion determinant; slow but shares nothing with Bareiss."""
    n = len(A)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * prod(A[i][perm[i]] for i in range(n))
    return total


def matvec(A, v):
    return [sum(Fraction(a) * x for a, x in zip(row, v)) for row in A]


# -- Smith normal form -------------------------------------------------------

def test_snf_diag_2_3():
    sf = snf([[2, 0], [0, 3]])
    assert sf.diagonal == [1, 6]
    assert matmul(matmul(sf.U, [[2, 0], [0, 3]]), sf.V) == sf.D


def test_snf_zero_matrix():
    sf = snf([[0, 0, 0], [0, 0, 0]])
    assert sf.rank == 0
    assert all(x == 0 for row in sf.D for x in row)
    check_snf_instance([[0, 0, 0], [0, 0, 0]])


def test_snf_determinant_oracle():
    rng = random.Random(7)
    for _ in range(40):
        A = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        assert prod(snf(A).diagonal) == abs(leibniz_det(A))
        assert det(A) == leibniz_det(A)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-99, 99), min_size=c, max_size=c),
                       min_size=r, max_size=r))))
def test_snf_properties(A):
    check_snf_instance(A)


# -- kernels, preimages, quotients -------------------------------------------

def test_kernel_of_2_minus_2():
    ker = lattice_kernel([[2, -2]])
    assert ker == Lattice(2, [[1, 1]])


def test_kernel_of_identity_is_zero():
    assert lattice_kernel(identity(3)).rank == 0


def test_kernel_6_10_15():
    ker = lattice_kernel([[6, 10, 15]])
    assert ker.rank == 2
    for v in ker.basis:
        assert 6 * v[0] + 10 * v[1] + 15 * v[2] == 0
    # saturated: every small integer solution is a member
    for v in product(range(-15, 16), repeat=3):
        if 6 * v[0] + 10 * v[1] + 15 * v[2] == 0:
            assert list(v) in ker


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=1, max_size=3))
def test_kernel_rank_nullity(A):
    from lenscalc.exact_algebra import rank
    ker = lattice_kernel(A, ncols=4)
    assert ker.rank == 4 - rank(A)
    for v in ker.basis:
        assert all(x == 0 for x in matvec(A, v))


def test_preimage_half():
    pre = lattice_preimage([[Fraction(1, 2)]], Lattice.full(1))
    assert pre == Lattice(1, [[2]])


def test_preimage_identity():
    L = Lattice(2, [[2, 0], [1, 3]])
    assert lattice_preimage(identity(2), L) == L


def test_preimage_thirds_by_enumeration():
    A = [[Fraction(1, 3), Fraction(1, 3)]]
    pre = lattice_preimage(A, Lattice.full(1))
    assert pre.index() == 3
    members = {(a, b) for a in range(3) for b in range(3) if (a + b) % 3 == 0}
    assert len(members) == 3
    for a, b in product(range(-6, 7), repeat=2):
        assert ([a, b] in pre) == ((a + b) % 3 == 0)


def test_preimage_dimension_mismatch():
    with pytest.raises(ValueError):
        lattice_preimage([[1, 0]], Lattice.full(2))


def test_preimage_random_instances_against_residue_count():
    rng = random.Random(11)
    from lenscalc.sweep import random_preimage_instance
    for _ in range(60):
        A, B = random_preimage_instance(rng)
        check_preimage_instance(A, B)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4).filter(lambda v: v[0] * v[3] != v[1] * v[2]),
       st.integers(1, 4), st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_preimage_monotone(entries, c, row):
    """L' <= L implies preimage(L') <= preimage(L)."""
    L = Lattice(2, [[entries[0], entries[1]], [entries[2], entries[3]]])
    small = L.scaled(c)
    A = [[Fraction(row[0], 3), Fraction(row[1], 2)], [Fraction(1), Fraction(-1, 5)]]
    assert is_sublattice(lattice_preimage(A, small), lattice_preimage(A, L))


def test_quotient_examples():
    L = Lattice(3, [[2, 0, 0], [0, 4, 0]])
    assert quotient_group(3, L) == FinAbGroup(1, (2, 4))
    assert quotient_group(2, Lattice(2, [[2, 0], [0, 3]])) == FinAbGroup(0, (6,))
    assert quotient_group(2, Lattice.full(2)) == FinAbGroup.trivial()


def test_lattice_from_generators_dependent():
    L = lattice_from_generators(2, [[2, 0], [0, 2], [1, 1]])
    assert L.index() == 2


# -- finite abelian groups -----------------------------------------------------

def snf_route(orders, free=0):
    n = len(orders) + free
    D = [[(orders[i] if i < len(orders) else 0) if i == j else 0 for j in range(n)]
         for i in range(n)]
    diag = snf(D, n).diagonal
    return FinAbGroup(sum(1 for x in diag if x == 0), tuple(x for x in diag if x > 1))


def test_fin_ab_examples():
    assert fin_ab_from_orders([2, 2, 8, 5]) == FinAbGroup(0, (2, 2, 40))
    assert fin_ab_from_orders([4, 6]) == FinAbGroup(0, (2, 12))
    assert fin_ab_from_orders([1, 1]) == FinAbGroup.trivial()
    assert fin_ab_from_orders([0, 3]) == FinAbGroup(1, (3,))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 60), max_size=6), st.integers(0, 2), st.randoms())
def test_fin_ab_dual_route_and_permutation(orders, free, rnd):
    g = fin_ab_from_orders(orders, free)
    assert g == snf_route(orders, free)
    if not free:
        assert g.order == prod(orders)
    shuffled = list(orders)
    rnd.shuffle(shuffled)
    assert fin_ab_from_orders(shuffled, free) == g


def test_fin_ab_validation_and_parts():
    with pytest.raises(ValueError):
        FinAbGroup(0, (4, 2))
    g = FinAbGroup(1, (2, 12))
    assert g.two_part() == FinAbGroup(0, (2, 4))
    assert g.odd_order() == 3
    assert str(g) == "Z + Z/2 + Z/12"
    assert FinAbGroup.from_dict(g.to_dict()) == g


# -- cyclotomic arithmetic ------------------------------------------------------

def numeric_cyclotomic(n):
    poly = [complex(1)]
    for j in range(1, n + 1):
        if gcd(j, n) == 1:
            r = cmath.exp(2j * cmath.pi * j / n)
            poly = [a - r * b for a, b in zip([0] + poly, poly + [0])]
    return [round(c.real) for c in poly]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 30])
def test_cyclotomic_polynomial_numeric(n):
    assert list(cyclotomic_polynomial(n)) == numeric_cyclotomic(n)
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_cyclotomic_named():
    assert list(cyclotomic_polynomial(4)) == [1, 0, 1]
    assert list(cyclotomic_polynomial(1)) == [-1, 1]
    assert list(cyclotomic_polynomial(12)) == [1, 0, -1, 0, 1]


def test_zeta_identities():
    z = CycloElem.zeta(4)
    assert z * z == -1
    assert (1 + z) / (1 - z) == z
    assert CycloElem.zeta(6) ** 6 == 1
    assert CycloElem.zeta(3, 2).to_conductor(3) == CycloElem.zeta(3, 2)
    assert (CycloElem.zeta(12, 4)).to_conductor(3) == CycloElem.zeta(3)


def elems(n):
    deg = euler_phi(n)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coeff, min_size=deg, max_size=deg).map(lambda c: CycloElem(n, c))


conductors = st.sampled_from([3, 4, 5, 8, 12])


@settings(max_examples=80, deadline=None)
@given(conductors.flatmap(lambda n: st.tuples(elems(n), elems(n), elems(n))))
def test_ring_axioms(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + (-a) == 0


@settings(max_examples=80, deadline=None)
@given(conductors.flatmap(lambda n: elems(n)))
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1
        assert abs((a.inverse()).to_complex() - 1 / a.to_complex()) < 1e-9


@settings(max_examples=80, deadline=None)
@given(conductors.flatmap(lambda n: st.tuples(elems(n), elems(n))), st.integers(1, 40))
def test_galois_is_ring_automorphism(ab, j):
    a, b = ab
    n = a.conductor
    if gcd(j, n) != 1:
        with pytest.raises(ValueError):
            a.galois_apply(j)
        return
    assert (a * b).galois_apply(j) == a.galois_apply(j) * b.galois_apply(j)
    assert (a + b).galois_apply(j) == a.galois_apply(j) + b.galois_apply(j)
    assert CycloElem.zeta(n).galois_apply(j) == CycloElem.zeta(n, j)
