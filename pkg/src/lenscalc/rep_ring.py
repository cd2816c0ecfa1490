"""The complex representation ring of Z/N and its reduced eigenspaces.

Conventions: chi is the character sending the fixed generator g to
zeta_N = exp(2 pi i / N), so chi^m(g^j) = zeta^(j m). A class function is
stored by its values on G minus the identity, which is exactly the data
that survives modulo the regular representation.

Reduced coordinates of a virtual character sum a_m chi^m are
c_m = a_m - a_0 for m = 1..N-1; the regular representation (all a_m
equal) has coordinates zero.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact_algebra import CycloElem, Lattice, lattice_kernel

__all__ = [
    "CharClass",
    "ClassFunction",
    "ReducedCharCoords",
    "EigenLatticeSpec",
    "NonRationalCoefficient",
    "NotADivisor",
    "involution",
    "regular",
    "character_values",
    "reduced_coords_of",
    "reduced_eigenspace_rank",
    "eigen_lattice",
    "in_eigenspace",
    "values_to_reduced_coords",
    "restriction",
    "restrict_class_function",
]


class NonRationalCoefficient(ArithmeticError):
    """Fourier inversion produced an irrational coefficient.

    Happens only for class functions that are not Galois-equivariant,
    which means an upstream construction is wrong.
    """


class NotADivisor(ValueError):
    pass


@dataclass(frozen=True)
class CharClass:
    """A virtual character sum_m coeffs[m] * chi^m of Z/N."""

    N: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) != self.N:
            raise ValueError("CharClass of Z/%d needs %d coefficients" % (self.N, self.N))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def chi(cls, N, m, mult=1):
        c = [0] * N
        c[m % N] = mult
        return cls(N, c)

    def __add__(self, other):
        if self.N != other.N:
            raise ValueError("characters of different groups")
        return CharClass(self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return CharClass(self.N, [k * a for a in self.coeffs])


def regular(N):
    return CharClass(N, [1] * N)


def involution(x):
    """Complex conjugation: chi^m -> chi^(N-m)."""
    N = x.N
    return CharClass(N, [x.coeffs[(-m) % N] for m in range(N)])


@dataclass(frozen=True)
class ClassFunction:
    """Values of a class function at zeta^j, j = 1..N-1 (index j-1)."""

    N: int
    values: tuple

    def __post_init__(self):
        v = tuple(self.values)
        if len(v) != self.N - 1:
            raise ValueError("ClassFunction on Z/%d needs %d values" % (self.N, self.N - 1))
        for x in v:
            if x.conductor != self.N:
                raise ValueError("value has conductor %d, expected %d"
                                 % (x.conductor, self.N))
        object.__setattr__(self, "values", v)

    def at(self, j):
        return self.values[(j % self.N) - 1]

    def __add__(self, other):
        return ClassFunction(self.N, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return ClassFunction(self.N, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, k):
        return ClassFunction(self.N, [k * a for a in self.values])

    def is_galois_equivariant(self):
        N = self.N
        for j in range(1, N):
            for s in range(1, N):
                if gcd(s, N) == 1 and self.at(s * j) != self.at(j).galois_apply(s):
                    return False
        return True

    @classmethod
    def constant(cls, N, q):
        return cls(N, [CycloElem.from_rational(N, q)] * (N - 1))


@dataclass(frozen=True)
class ReducedCharCoords:
    """Rational coordinates (a_m - a_0)_{m=1..N-1} in Q R / Q regular."""

    N: int
    coords: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        if len(c) != self.N - 1:
            raise ValueError("ReducedCharCoords of Z/%d needs %d entries" % (self.N, self.N - 1))
        object.__setattr__(self, "coords", c)

    def __add__(self, other):
        return ReducedCharCoords(self.N, [a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, k):
        return ReducedCharCoords(self.N, [k * a for a in self.coords])

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)


def reduced_coords_of(x):
    a0 = x.coeffs[0]
    return ReducedCharCoords(x.N, [a - a0 for a in x.coeffs[1:]])


def character_values(x):
    """Evaluate a virtual character at the nontrivial group elements."""
    N = x.N
    vals = []
    for j in range(1, N):
        v = CycloElem.zero(N)
        for m, a in enumerate(x.coeffs):
            if a:
                v = v + CycloElem.zeta(N, j * m) * a
        vals.append(v)
    return ClassFunction(N, vals)


def reduced_eigenspace_rank(N, sign):
    """Rank of the sign-eigenspace of conjugation on R(Z/N) mod regular."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if N % 2 == 0:
        return N // 2 if sign == 1 else N // 2 - 1
    return (N - 1) // 2


def in_eigenspace(coords, sign):
    """Whether reduced coordinates satisfy c_m == sign * c_(N-m)."""
    N = coords.N
    c = (Fraction(0),) + coords.coords
    return all(c[m] == sign * c[N - m] for m in range(1, N))


@dataclass(frozen=True)
class EigenLatticeSpec:
    N: int
    sign: int
    scale: int
    lattice: Lattice

    def contains(self, coords):
        return coords.is_integral() and list(coords.coords) in self.lattice


def eigen_lattice(N, sign, scale=4):
    """scale * (integer points of the sign-eigenspace), in reduced coordinates.

    Conjugation acts on reduced coordinates by c_m -> c_(N-m), so the
    eigenspace is cut out by the integer equations c_m - sign * c_(N-m) = 0;
    its integer points are the saturated kernel of that system.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    n = N - 1
    eqs = []
    for m in range(1, N):
        row = [0] * n
        row[m - 1] += 1
        row[N - m - 1] -= sign
        if any(row):
            eqs.append(row)
    ker = lattice_kernel(eqs, ncols=n) if eqs else Lattice.full(n)
    return EigenLatticeSpec(N, sign, scale, ker.scaled(scale))


def values_to_reduced_coords(v):
    """Exact Fourier inversion, forgetting the (unknown) value at 1.

    c_m = (1/N) sum_{j=1}^{N-1} v(zeta^j) (zeta^(-j m) - 1).
    """
    N = v.N
    out = []
    for m in range(1, N):
        acc = CycloElem.zero(N)
        for j in range(1, N):
            x = v.values[j - 1]
            if not x.is_zero():
                acc = acc + x * (CycloElem.zeta(N, -j * m) - 1)
        acc = acc / N
        if not acc.is_rational():
            raise NonRationalCoefficient(
                "coefficient of chi^%d in Q(zeta_%d) is not rational: %r" % (m, N, acc))
        out.append(acc.to_rational())
    return ReducedCharCoords(N, out)


def restriction(N, U, x):
    """Restrict a character of Z/N to the subgroup Z/U: chi^j -> chi^(j mod U)."""
    if U < 1 or N % U:
        raise NotADivisor("%d does not divide %d" % (U, N))
    if x.N != N:
        raise ValueError("character lives on Z/%d, not Z/%d" % (x.N, N))
    out = [0] * U
    for j, a in enumerate(x.coeffs):
        out[j % U] += a
    return CharClass(U, out)


def restrict_class_function(N, U, v):
    """Restrict to Z/U = <g^(N/U)>, re-expressed over Q(zeta_U).

    g^(N/U)^j' = g^((N/U) j') has chi-value zeta_U^j'.
    """
    if U < 2 or N % U:
        raise NotADivisor("%d is not a divisor >= 2 of %d" % (U, N))
    step = N // U
    return ClassFunction(U, [v.at(step * jj).to_conductor(U) for jj in range(1, U)])
