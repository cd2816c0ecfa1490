"""Integer linear algebra: Smith normal form, kernels, preimages, quotients.

Matrices are plain lists of rows of Python ints (rationals are allowed
where noted, as :class:`fractions.Fraction`). Nothing here ever rounds.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .abelian import FinAbGroup

__all__ = [
    "SmithForm",
    "Lattice",
    "snf",
    "identity",
    "matmul",
    "transpose",
    "det",
    "rank",
    "lattice_kernel",
    "lattice_from_generators",
    "lattice_preimage",
    "quotient_group",
    "contains",
    "is_sublattice",
]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A or not B:
        inner = len(B)
        cols = len(B[0]) if B else 0
        return [[0] * cols for _ in A] if inner == 0 else []
    cols = len(B[0])
    return [[sum(a * B[t][j] for t, a in enumerate(row) if a) for j in range(cols)]
            for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def det(A):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k]), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    """Rank over Q of an integer or rational matrix."""
    M = [[Fraction(x) for x in row] for row in A]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


@dataclass(frozen=True)
class SmithForm:
    """U * A * V == D with U, V unimodular and D in Smith normal form."""

    U: list
    D: list
    V: list

    @property
    def diagonal(self):
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def rank(self):
        return sum(1 for x in self.diagonal if x)


def snf(A, ncols=None):
    """Smith normal form of an integer matrix.

    Pivoting picks the smallest nonzero absolute value in the active
    row/column; rows and columns are fully cleared before moving on, and a
    non-dividing entry is folded into the pivot row to restore d_i | d_{i+1}.

    ``ncols`` is only needed for matrices with zero rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])

        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            # remainders smaller than the pivot become the new pivot
            cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if cand:
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            p = D[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                done = False
            if done:
                break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(U=U, D=D, V=V)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank, stored by a full-column-rank basis.

    ``basis`` is a list of basis vectors (each of length ambient_rank).
    Equality is lattice equality, not basis equality.
    """

    ambient_rank: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in v) for v in self.basis)
        for v in basis:
            if len(v) != self.ambient_rank:
                raise ValueError("basis vector of length %d in Z^%d"
                                 % (len(v), self.ambient_rank))
        if basis and rank(basis) != len(basis):
            raise ValueError("lattice basis vectors are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @property
    def rank(self):
        return len(self.basis)

    def matrix(self):
        """Basis as columns: an ambient_rank x rank matrix."""
        return transpose(list(self.basis), self.ambient_rank) if self.basis else \
            [[] for _ in range(self.ambient_rank)]

    def __contains__(self, vec):
        return contains(self, vec)

    def __le__(self, other):
        return is_sublattice(self, other)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank
                and self.rank == other.rank
                and is_sublattice(self, other) and is_sublattice(other, self))

    def __hash__(self):
        return hash((self.ambient_rank, self.rank))

    def index(self):
        """[Z^n : L] for a full-rank L, else 0 (infinite)."""
        if self.rank < self.ambient_rank:
            return 0
        return abs(det(self.matrix()))

    def scaled(self, c):
        return Lattice(self.ambient_rank, [[c * x for x in v] for v in self.basis])

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))


def _solve_integral(lat, vec):
    """Return integer y with sum y_i * basis_i == vec, or None."""
    n = lat.ambient_rank
    if len(vec) != n:
        raise ValueError("vector of length %d in Z^%d" % (len(vec), n))
    if lat.rank == 0:
        return [] if not any(vec) else None
    sf = _cached_snf(lat)
    Ux = [sum(u * x for u, x in zip(row, vec)) for row in sf.U]
    diag = sf.diagonal
    z = []
    for i, c in enumerate(Ux):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if c != 0:
                return None
            if i < lat.rank:
                z.append(0)
        else:
            if c % di:
                return None
            z.append(c // di)
    return [sum(v * zz for v, zz in zip(row, z)) for row in sf.V]


_SNF_CACHE = {}


def _cached_snf(lat):
    key = (lat.ambient_rank, lat.basis)
    sf = _SNF_CACHE.get(key)
    if sf is None:
        if len(_SNF_CACHE) > 4096:
            _SNF_CACHE.clear()
        sf = _SNF_CACHE[key] = snf(lat.matrix())
    return sf


def contains(lat, vec):
    """Membership of an integer (or integral rational) vector in ``lat``."""
    vec = list(vec)
    for x in vec:
        if Fraction(x).denominator != 1:
            return False
    return _solve_integral(lat, [int(x) for x in vec]) is not None


def is_sublattice(a, b):
    if a.ambient_rank != b.ambient_rank:
        return False
    return all(contains(b, v) for v in a.basis)


def lattice_kernel(A, ncols=None):
    """Saturated basis of {x in Z^cols : A x = 0}.

    The trailing columns of V in U A V = D span the kernel; V being
    unimodular makes the basis saturated.
    """
    n = len(A[0]) if A else (ncols or 0)
    sf = snf(A, ncols=n)
    r = sf.rank
    basis = [[sf.V[i][j] for i in range(n)] for j in range(r, n)]
    return Lattice(n, basis)


def lattice_from_generators(ambient_rank, gens):
    """Basis of the lattice generated by an arbitrary list of integer vectors."""
    gens = [list(map(int, g)) for g in gens if any(g)]
    if not gens:
        return Lattice(ambient_rank, [])
    G = transpose(gens)  # ambient_rank x len(gens)
    sf = snf(G)
    # G V = U^-1 D, so the columns d_i * (U^-1)[:, i] form a basis
    Uinv = _unimodular_inverse(sf.U)
    basis = [[Uinv[r][i] * d for r in range(ambient_rank)]
             for i, d in enumerate(sf.diagonal) if d]
    return Lattice(ambient_rank, basis)


def _unimodular_inverse(U):
    n = len(U)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U)]
    for c in range(n):
        p = next(i for i in range(c, n) if M[i][c])
        M[c], M[p] = M[p], M[c]
        lead = M[c][c]
        M[c] = [x / lead for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    out = [[x for x in row[n:]] for row in M]
    for row in out:
        for x in row:
            assert x.denominator == 1, "matrix is not unimodular"
    return [[int(x) for x in row] for row in out]


def lattice_preimage(A, L):
    """{s in Z^g : A s in L} for a rational m x g matrix A and L in Z^m.

    Denominators are cleared once by the lcm c of all entries; then
    A s in L  <=>  cA s in cL, solved as the integer kernel of [cA | -cB].
    """
    m = len(A)
    g = len(A[0]) if m else 0
    if m != L.ambient_rank:
        raise ValueError("matrix has %d rows but lattice lives in Z^%d"
                         % (m, L.ambient_rank))
    if g == 0:
        return Lattice(0, [])
    c = 1
    for row in A:
        for x in row:
            c = lcm(c, Fraction(x).denominator)
    cA = [[int(Fraction(x) * c) for x in row] for row in A]
    cB = [[-c * x for x in row] for row in L.matrix()] if L.rank else [[] for _ in range(m)]
    block = [ra + rb for ra, rb in zip(cA, cB)]
    ker = lattice_kernel(block, ncols=g + L.rank)
    return lattice_from_generators(g, [v[:g] for v in ker.basis])


def quotient_group(ambient_rank, L):
    """Z^ambient_rank / L as a canonical :class:`FinAbGroup`."""
    if L.ambient_rank != ambient_rank:
        raise ValueError("lattice is not inside Z^%d" % ambient_rank)
    if L.rank == 0:
        return FinAbGroup(ambient_rank, ())
    diag = snf(L.matrix()).diagonal
    return FinAbGroup(ambient_rank - L.rank, tuple(d for d in diag if d > 1))

