import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lenscalc.exact_algebra import CycloElem, Lattice
from lenscalc.rep_ring import (
    CharClass,
    ClassFunction,
    NonRationalCoefficient,
    NotADivisor,
    character_values,
    eigen_lattice,
    in_eigenspace,
    involution,
    reduced_coords_of,
    reduced_eigenspace_rank,
    regular,
    restrict_class_function,
    restriction,
    values_to_reduced_coords,
)
from lenscalc.rho_engine import f_power_values


def numeric_inversion(N, values):
    """Floating-point Fourier inversion, c_m = (1/N) sum_j v_j (w^{-jm} - 1)."""
    out = []
    for m in range(1, N):
        acc = 0
        for j in range(1, N):
            w = cmath.exp(2j * cmath.pi * j / N)
            acc += values[j - 1] * (w ** (-m) - 1)
        out.append(acc / N)
    return out


def orbit_basis(N, sign):
    basis = []
    for m in range(1, N):
        partner = N - m
        if m < partner:
            v = [0] * (N - 1)
            v[m - 1] = 1
            v[partner - 1] = sign
            basis.append(v)
        elif m == partner and sign == 1:
            v = [0] * (N - 1)
            v[m - 1] = 1
            basis.append(v)
    return Lattice(N - 1, basis)


@pytest.mark.parametrize("N,sign,rank", [(6, 1, 3), (6, -1, 2), (5, -1, 2), (2, -1, 0), (2, 1, 1)])
def test_eigenspace_rank_examples(N, sign, rank):
    assert reduced_eigenspace_rank(N, sign) == rank


def test_eigen_lattice_small():
    assert eigen_lattice(2, 1, 4).lattice == Lattice(1, [[4]])
    lat = eigen_lattice(3, -1, 4).lattice
    assert lat == Lattice(2, [[4, -4]])


@pytest.mark.parametrize("N", range(2, 25))
@pytest.mark.parametrize("sign", [1, -1])
def test_eigen_lattice_against_orbit_basis(N, sign):
    spec = eigen_lattice(N, sign, 4)
    assert spec.lattice.rank == reduced_eigenspace_rank(N, sign)
    assert spec.lattice == orbit_basis(N, sign).scaled(4)


def test_f_fourier_coords_N4():
    f = f_power_values(4, 1)
    i = CycloElem.zeta(4)
    assert list(f.values) == [i, CycloElem.zero(4), -i]
    assert values_to_reduced_coords(f).coords == (Fraction(1, 2), 0, Fraction(-1, 2))


@pytest.mark.parametrize("N", [3, 5, 6, 8, 9])
def test_constant_and_zero(N):
    assert values_to_reduced_coords(ClassFunction.constant(N, 1)).coords == (-1,) * (N - 1)
    assert values_to_reduced_coords(ClassFunction.constant(N, 0)).coords == (0,) * (N - 1)


@pytest.mark.parametrize("N,a", [(3, 1), (5, 2), (7, 3), (8, 4), (12, 1), (9, 5)])
def test_inversion_matches_numeric(N, a):
    v = f_power_values(N, a)
    exact = values_to_reduced_coords(v).coords
    approx = numeric_inversion(N, [x.to_complex() for x in v.values])
    for e, z in zip(exact, approx):
        assert abs(float(e) - z.real) < 1e-9 and abs(z.imag) < 1e-9


def test_non_equivariant_rejected():
    N = 5
    vals = [CycloElem.zeta(N)] + [CycloElem.zero(N)] * (N - 2)
    with pytest.raises(NonRationalCoefficient):
        values_to_reduced_coords(ClassFunction(N, vals))


chars = st.integers(2, 12).flatmap(
    lambda N: st.lists(st.integers(-6, 6), min_size=N, max_size=N).map(lambda c: CharClass(N, c)))


@settings(max_examples=60, deadline=None)
@given(chars)
def test_fourier_round_trip(x):
    assert values_to_reduced_coords(character_values(x)) == reduced_coords_of(x)


@settings(max_examples=60, deadline=None)
@given(chars)
def test_eigen_characters_land_in_unit_lattice(x):
    for sign in (1, -1):
        y = x + involution(x).scale(sign)
        coords = values_to_reduced_coords(character_values(y))
        assert in_eigenspace(coords, sign)
        assert eigen_lattice(x.N, sign, 1).contains(coords)


@settings(max_examples=60, deadline=None)
@given(chars, st.data())
def test_restriction_commutes_with_involution(x, data):
    N = x.N
    U = data.draw(st.sampled_from([u for u in range(1, N + 1) if N % u == 0]))
    assert restriction(N, U, involution(x)) == involution(restriction(N, U, x))


@settings(max_examples=40, deadline=None)
@given(chars, st.data())
def test_restriction_matches_class_function_restriction(x, data):
    N = x.N
    U = data.draw(st.sampled_from([u for u in range(2, N + 1) if N % u == 0]))
    assert (restrict_class_function(N, U, character_values(x))
            == character_values(restriction(N, U, x)))


def test_restriction_examples():
    assert restriction(6, 3, CharClass.chi(6, 4)) == CharClass.chi(3, 1)
    assert restriction(6, 3, regular(6)) == regular(3).scale(2)
    assert restriction(12, 4, CharClass.chi(12, 7)) == CharClass.chi(4, 3)
    with pytest.raises(NotADivisor):
        restriction(6, 4, regular(6))


def test_restrict_class_function_examples():
    v = f_power_values(6, 1)
    r = restrict_class_function(6, 2, v)
    assert r.values == (v.at(3).to_conductor(2),)
    assert restrict_class_function(4, 2, f_power_values(4, 1)).values == (CycloElem.zero(2),)
    w = f_power_values(5, 2)
    assert restrict_class_function(5, 5, w) == w
    with pytest.raises(NotADivisor):
        restrict_class_function(6, 4, v)
