"""The rho-invariant map on Z(d, k), its kernel lattice and image group.

For a tuple (N, d, k) the free group Z(d, k) has generators s_{4i}; the
map sends s_{4i} to 8 (f^E - f^(E-2)) with E = d + k - 2i and
f(t) = (1 + t)/(1 - t), except that the exponent-1 generator s_{4u}
(present when d + k is odd) goes to 8 f. Values live in
Q R~^sign / 4 R~^sign with sign = (-1)^(d+k); the kernel is the lattice
K^ = {s : rho(s) in 4 R~^sign} and the image is Z(d, k) / K^.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import prod

from .exact_algebra import (
    CycloElem,
    FinAbGroup,
    Lattice,
    is_sublattice,
    lattice_preimage,
    quotient_group,
)
from .rep_ring import (
    ClassFunction,
    EigenLatticeSpec,
    eigen_lattice,
    in_eigenspace,
    restrict_class_function,
    values_to_reduced_coords,
)
from .surgery_tables import c_N, decompose_N

__all__ = [
    "ParityCase",
    "RhoBasis",
    "RhoMap",
    "KernelResult",
    "NegativeExponent",
    "VerificationFailure",
    "index_set",
    "build_basis",
    "f_values",
    "f_power_values",
    "rho_column_values",
    "rho_columns",
    "kernel_and_image",
    "predicted_image_order",
    "predicted_odd_order",
    "verify_eigenspace",
    "verify_factorization",
    "verify_rationality",
    "verify_transfer_compat",
    "verify_splitting",
]


class NegativeExponent(ValueError):
    pass


class VerificationFailure(AssertionError):
    """A computed quantity disagreed with its closed-form prediction."""

    def __init__(self, check, params, computed, expected, message=""):
        self.check = check
        self.params = params
        self.computed = computed
        self.expected = expected
        super().__init__("%s failed at %r: computed %r, expected %r%s"
                         % (check, params, computed, expected,
                            (" (" + message + ")") if message else ""))


class ParityCase(Enum):
    EVEN = "even"  # d + k even, n - 1 = 4u + 2
    ODD = "odd"    # d + k odd,  n - 1 = 4u


def index_set(D, k):
    """{i : 2 <= D + k - 2i <= D}, ascending."""
    lo = -(-k // 2)
    hi = (D + k - 2) // 2
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class RhoBasis:
    d: int
    k: int
    parity_case: ParityCase
    generators: tuple
    u: int = None

    def exponent(self, i):
        return self.d + self.k - 2 * i

    @property
    def exponents(self):
        return tuple(self.exponent(i) for i in self.generators)

    @property
    def labels(self):
        return tuple("s_%d" % (4 * i) for i in self.generators)

    def __len__(self):
        return len(self.generators)


def build_basis(d, k):
    if d < 2 or k < 0:
        raise ValueError("need d >= 2 and k >= 0, got d=%r k=%r" % (d, k))
    if (d + k) % 2 == 0:
        return RhoBasis(d, k, ParityCase.EVEN, tuple(index_set(d, k)))
    gens = tuple(index_set(d + 2, k))
    return RhoBasis(d, k, ParityCase.ODD, gens, u=(d + k - 1) // 2)


@lru_cache(maxsize=None)
def f_values(N):
    """f(zeta^j) = (1 + zeta^j)/(1 - zeta^j) for j = 1..N-1."""
    vals = []
    for j in range(1, N):
        z = CycloElem.zeta(N, j)
        vals.append((1 + z) / (1 - z))
    return tuple(vals)


@lru_cache(maxsize=None)
def f_power_values(N, a):
    """The class function f^a on G minus 1; f^0 is 1 everywhere, even at t = -1."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if a < 0:
        raise NegativeExponent("f^%d is undefined: f(-1) = 0" % a)
    if a == 0:
        return ClassFunction.constant(N, 1)
    return ClassFunction(N, [x ** a for x in f_values(N)])


def rho_column_values(N, basis, i):
    E = basis.exponent(i)
    if basis.parity_case is ParityCase.ODD and i == basis.u:
        return f_power_values(N, 1).scale(8)
    return (f_power_values(N, E) - f_power_values(N, E - 2)).scale(8)


@dataclass(frozen=True)
class RhoMap:
    basis: RhoBasis
    N: int
    sign: int
    columns: tuple          # ReducedCharCoords, one per generator
    target: EigenLatticeSpec

    def matrix(self):
        """(N-1) x g rational matrix whose columns are the images of s_{4i}."""
        g = len(self.columns)
        return [[self.columns[c].coords[r] for c in range(g)] for r in range(self.N - 1)]


@lru_cache(maxsize=None)
def rho_columns(N, d, k):
    if N < 2:
        raise ValueError("N must be >= 2")
    basis = build_basis(d, k)
    sign = 1 if (d + k) % 2 == 0 else -1
    cols = tuple(values_to_reduced_coords(rho_column_values(N, basis, i))
                 for i in basis.generators)
    return RhoMap(basis, N, sign, cols, eigen_lattice(N, sign, 4))


@dataclass(frozen=True)
class KernelResult:
    N: int
    d: int
    k: int
    khat: Lattice
    image: FinAbGroup
    two_exponent: int = field(default=1)
    odd_order: int = field(default=1)


def _kernel_from_map(rmap):
    g = len(rmap.basis)
    if g == 0:
        khat = Lattice(0, [])
    else:
        khat = lattice_preimage(rmap.matrix(), rmap.target.lattice)
    image = quotient_group(g, khat)
    return khat, image


@lru_cache(maxsize=None)
def kernel_and_image(N, d, k, mutate=None, scale=4):
    """Compute K^ and Z(d, k)/K^.

    ``scale`` replaces the target lattice 4 R~ by scale * R~.
    ``mutate="scale-column"`` doubles the first generator's column; it is
    a fault-injection hook for negative controls only.
    """
    rmap = rho_columns(N, d, k)
    if scale != 4:
        rmap = RhoMap(rmap.basis, N, rmap.sign, rmap.columns,
                      eigen_lattice(N, rmap.sign, scale))
    if mutate == "scale-column" and rmap.columns:
        cols = (rmap.columns[0].scale(2),) + rmap.columns[1:]
        rmap = RhoMap(rmap.basis, N, rmap.sign, cols, rmap.target)
    elif mutate is not None:
        raise ValueError("unknown mutation %r" % (mutate,))
    khat, image = _kernel_from_map(rmap)
    two = image.two_part()
    return KernelResult(N, d, k, khat, image,
                        two_exponent=two.exponent, odd_order=image.odd_order())


def predicted_odd_order(N, d, k):
    _, M = decompose_N(N)
    c = (d - 1) // 2
    return M ** (c + 1) if k % 2 == 0 else M ** c


def predicted_image_order(N, d, k):
    """Order of Z(d, k)/K^ implied by the closed-form kernel.

    Source order over kernel order of the map factored through a finite
    group: each Z/2^K summand indexed by i contributes 2^(K - min(2i, K)),
    the odd part is injective.
    """
    K, _ = decompose_N(N)
    cn = c_N(d, k)
    count = cn + 1 if k % 2 == 0 else cn
    two = prod(2 ** (K - min(2 * i, K)) for i in range(1, count + 1))
    return two * predicted_odd_order(N, d, k)


def verify_factorization(N, d, k, mutate=None):
    res = kernel_and_image(N, d, k, mutate)
    K, _ = decompose_N(N)
    params = (N, d, k)
    if (2 ** K) % res.two_exponent:
        raise VerificationFailure("two-exponent", params, res.two_exponent, 2 ** K,
                                  "2-part exponent must divide 2^K")
    odd = predicted_odd_order(N, d, k)
    if res.odd_order != odd:
        raise VerificationFailure("odd-order", params, res.odd_order, odd)
    pred = predicted_image_order(N, d, k)
    if res.image.order != pred:
        raise VerificationFailure("image-order", params, res.image.order, pred)
    return {
        "image": res.image.to_dict(),
        "image_order": res.image.order,
        "predicted_order": pred,
        "two_exponent": res.two_exponent,
        "odd_order": res.odd_order,
    }


def verify_eigenspace(N, d, k):
    rmap = rho_columns(N, d, k)
    for i, col in zip(rmap.basis.generators, rmap.columns):
        if not in_eigenspace(col, rmap.sign):
            raise VerificationFailure("eigenspace", (N, d, k), list(col.coords),
                                      rmap.sign, "column s_%d" % (4 * i))
    return {"sign": rmap.sign, "columns": len(rmap.columns)}


def verify_rationality(N, d, k):
    """Recompute every column's Fourier inversion from raw values.

    values_to_reduced_coords raises NonRationalCoefficient on failure;
    the values are also checked to be Galois-equivariant directly.
    """
    basis = build_basis(d, k)
    for i in basis.generators:
        v = rho_column_values(N, basis, i)
        if not v.is_galois_equivariant():
            raise VerificationFailure("rationality", (N, d, k), "non-equivariant",
                                      "equivariant", "column s_%d" % (4 * i))
        values_to_reduced_coords(v)
    return {"columns": len(basis)}


def verify_transfer_compat(N, U, d, k):
    if U < 2 or N % U:
        raise ValueError("%d is not a divisor >= 2 of %d" % (U, N))
    basis = build_basis(d, k)
    for i in basis.generators:
        restricted = restrict_class_function(N, U, rho_column_values(N, basis, i))
        native = rho_column_values(U, basis, i)
        if restricted != native:
            raise VerificationFailure("transfer-columns", (N, U, d, k), "restricted",
                                      "native", "column s_%d" % (4 * i))
    big = kernel_and_image(N, d, k).khat
    small = kernel_and_image(U, d, k).khat
    if not is_sublattice(big, small):
        raise VerificationFailure("transfer-kernel", (N, U, d, k),
                                  "khat(N) not in khat(U)", "containment")
    return {"U": U, "columns": len(basis)}


def verify_splitting(N, d, k):
    K, M = decompose_N(N)
    if K == 0 or M == 1:
        return {"degenerate": True}
    img = kernel_and_image(N, d, k).image
    img2 = kernel_and_image(2 ** K, d, k).image
    imgM = kernel_and_image(M, d, k).image
    params = (N, d, k)
    if img.two_part() != img2:
        raise VerificationFailure("splitting-2-part", params, str(img.two_part()), str(img2))
    if img.odd_order() != imgM.order:
        raise VerificationFailure("splitting-odd-order", params, img.odd_order(), imgM.order)
    return {"image": str(img), "image_2K": str(img2), "image_M_order": imgM.order}
