"""Closed-form answers: L-groups, normal invariants, kernels, structure sets.

Throughout N = 2^K * M with M odd, L is a fake lens space of dimension
2d - 1 with fundamental group Z/N, and m is the dimension of the disk
(or sphere) factor, m = 2k or 2k + 1.

Odd-torsion summands T_M are only known by their order; descriptors
carry them as ``declared_odd_order`` and never merge them into
invariant factors.
"""

from dataclasses import dataclass, field
from .exact_algebra import FinAbGroup, fin_ab_from_orders
from .rep_ring import reduced_eigenspace_rank

__all__ = [
    "Params",
    "UnsupportedParams",
    "LGroupDescriptor",
    "NormalInvariantDescriptor",
    "StructureSetDescriptor",
    "CASE_LABELS",
    "decompose_N",
    "c_N",
    "c_2",
    "c_2_odd",
    "t_prime_orders",
    "l_group",
    "reduced_l_group",
    "normal_invariants",
    "kernel_closed_form",
    "kbar_closed_form",
    "structure_set_disk",
    "structure_set_product_sphere",
]


class UnsupportedParams(ValueError):
    pass


def decompose_N(N):
    """N = 2^K * M with M odd; returns (K, M)."""
    if N < 1:
        raise ValueError("N must be positive")
    K = 0
    while N % 2 == 0:
        N //= 2
        K += 1
    return K, N


@dataclass(frozen=True)
class Params:
    N: int
    d: int
    k: int
    K: int = field(init=False)
    M: int = field(init=False)

    def __post_init__(self):
        if self.N < 2:
            raise UnsupportedParams("N must be >= 2, got %r" % (self.N,))
        if self.d < 2:
            raise UnsupportedParams("d must be >= 2, got %r" % (self.d,))
        if self.k < 0:
            raise UnsupportedParams("k must be >= 0, got %r" % (self.k,))
        K, M = decompose_N(self.N)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "M", M)

    @property
    def e(self):
        return self.d // 2

    @property
    def l(self):
        return self.k // 2

    @property
    def c(self):
        return (self.d - 1) // 2

    @property
    def d_even(self):
        return self.d % 2 == 0

    @property
    def k_even(self):
        return self.k % 2 == 0


def _check_dk(d, k):
    if d < 2 or k < 0:
        raise UnsupportedParams("need d >= 2 and k >= 0, got d=%r k=%r" % (d, k))


def c_N(d, k):
    _check_dk(d, k)
    e = d // 2
    return e - 1 if (d % 2 == 0 and k % 2 == 0) else e


def c_2(d, k):
    _check_dk(d, k)
    e = d // 2
    return e if (d % 2 == 1 and k % 2 == 0) else e - 1


def c_2_odd(d, k):
    _check_dk(d, k)
    e = d // 2
    return e - 1 if (d % 2 == 0 and k % 2 == 1) else e


def t_prime_orders(K, count):
    """Orders 2^min(2i, K) for i = 1..count (empty when K = 0)."""
    if K == 0:
        return []
    return [2 ** min(2 * i, K) for i in range(1, count + 1)]


# -- L-groups ---------------------------------------------------------------

@dataclass(frozen=True)
class LGroupDescriptor:
    N: int
    n_mod_4: int
    free_rank: int
    arf: bool = False
    codim1_arf: bool = False
    reduced: bool = False

    def group(self):
        z2 = int(self.arf) + int(self.codim1_arf)
        return FinAbGroup(self.free_rank, (2,) * z2)


def l_group(N, n):
    """L^s_n(Z[Z/N]) via the representation ring."""
    if N < 2 or n < 0:
        raise UnsupportedParams("need N >= 2 and n >= 0")
    K, _ = decompose_N(N)
    r = n % 4
    if r == 0:
        # conjugation orbits on the N characters
        rank = N // 2 + 1 if N % 2 == 0 else (N + 1) // 2
        return LGroupDescriptor(N, 0, rank)
    if r == 1:
        return LGroupDescriptor(N, 1, 0)
    if r == 2:
        rank = (N - 2) // 2 if N % 2 == 0 else (N - 1) // 2
        return LGroupDescriptor(N, 2, rank, arf=True)
    return LGroupDescriptor(N, 3, 0, codim1_arf=K >= 1)


def reduced_l_group(N, n):
    """L~^s_n = 4 R~^((-1)^(n/2)) for n even."""
    if n % 2:
        raise UnsupportedParams("reduced L-group is only tabulated for even n")
    sign = 1 if (n // 2) % 2 == 0 else -1
    return LGroupDescriptor(N, n % 4, reduced_eigenspace_rank(N, sign), reduced=True)


# -- normal invariants ------------------------------------------------------

@dataclass(frozen=True)
class NormalInvariantDescriptor:
    N: int
    d: int
    m: int
    T_F_rank: int
    t4_count: int
    t4_order: int
    t2_count: int
    M_part_order: int
    reduced: bool

    def known_part(self):
        orders = [self.t4_order] * self.t4_count + [2] * self.t2_count
        return fin_ab_from_orders(orders, self.T_F_rank)

    @property
    def torsion_order(self):
        return self.known_part().order * self.M_part_order


def normal_invariants(N, d, m, reduced=True):
    """N_del(L x D^m), or its subgroup ker(theta) when ``reduced``.

    For m = 2k the reduced group is T_F + T_{2^K} + T_2 + T_M with
    c_N(d, k) copies of Z/2^K, c_2(d, k) copies of Z/2 (one more for k
    odd) and |T_M| = M^c. Unreduced, one further Z/2 (detected by theta)
    appears when n = 2d - 1 + 2k is 3 mod 4 and K >= 1.

    For m = 2k + 1 the group is c_2_odd(d, k) copies of Z/2, plus a Z when
    (d, k) = (2e, 2l) or (2e + 1, 2l + 1); the reduced group drops the Z.
    """
    if d < 2 or m < 0:
        raise UnsupportedParams("need d >= 2 and m >= 0")
    if N < 2:
        raise UnsupportedParams("N must be >= 2")
    K, M = decompose_N(N)
    k = m // 2
    if m % 2 == 0:
        two_local = K >= 1
        t4 = c_N(d, k) if two_local else 0
        t2 = (c_2(d, k) + (k % 2)) if two_local else 0
        if not reduced and two_local and (2 * d - 1 + 2 * k) % 4 == 3:
            t2 += 1
        return NormalInvariantDescriptor(
            N, d, m, T_F_rank=int(k % 2 == 0), t4_count=t4, t4_order=2 ** K,
            t2_count=t2, M_part_order=M ** ((d - 1) // 2), reduced=reduced)
    has_z = (d % 2 == 0 and k % 2 == 0) or (d % 2 == 1 and k % 2 == 1)
    t2 = c_2_odd(d, k) if K >= 1 else 0
    return NormalInvariantDescriptor(
        N, d, m, T_F_rank=int(has_z and not reduced), t4_count=0, t4_order=2 ** K,
        t2_count=t2, M_part_order=1, reduced=reduced)


# -- kernels of the rho-invariant ---------------------------------------------

def kernel_closed_form(N, d, k):
    """K_N = ker [rho~_N(d, k)] on the reduced normal invariants (m = 2k)."""
    _check_dk(d, k)
    K, _ = decompose_N(N)
    orders = t_prime_orders(K, c_N(d, k))
    if K == 0:
        # odd order: K_M = M Z for k even, 0 for k odd
        return FinAbGroup(int(k % 2 == 0), ())
    if k % 2 == 0:
        return fin_ab_from_orders(orders + [2] * c_2(d, k), 1)
    return fin_ab_from_orders(orders + [2] * (c_2(d, k) + 1), 0)


def kbar_closed_form(N, d, k):
    """K-bar_N, the kernel of the rho map factored through a finite group.

    Independent of M: K-bar_N = K-bar_{2^K}, and K-bar_M = 0.
    For k odd K-bar_N = K_N.
    """
    _check_dk(d, k)
    if k % 2:
        return kernel_closed_form(N, d, k)
    K, _ = decompose_N(N)
    if K == 0:
        return FinAbGroup.trivial()
    orders = t_prime_orders(K, c_N(d, k) + 1) + [2] * c_2(d, k)
    return fin_ab_from_orders(orders)


# -- structure sets -----------------------------------------------------------

CASE_LABELS = {
    (True, True): "d=2e, k=2l",
    (True, False): "d=2e, k=2l+1",
    (False, True): "d=2e+1, k=2l",
    (False, False): "d=2e+1, k=2l+1",
    "odd": "m=2k+1",
}


def _fmt_cyclic(orders):
    if not orders:
        return "0"
    return "+".join("Z/%d" % o for o in orders)


@dataclass(frozen=True)
class StructureSetDescriptor:
    """A structure set split into its named summands.

    ``components`` is an ordered list of (name, description) pairs in the
    order F, Z-part, 2^K-part, 2-part, M-part; ``total`` merges every fully
    known summand into one canonical group.
    """

    N: int
    d: int
    m: int
    case_label: str
    F_rank: int
    extra: str                    # "Z", "Z/2" or "none"
    t_prime: tuple                # orders of T'_{2^K}
    t2_count: int                 # copies of Z/2 in T_2 or T_2(odd)
    declared_odd_order: int = 1
    sphere_t2K: tuple = ()        # sphere corollary: orders of T_{2^K}(d)
    sphere_t2_count: int = 0      # sphere corollary: copies of Z/2 in T_2(d)
    derived_mode: str = None
    kind: str = "disk"

    @property
    def total(self):
        orders = list(self.t_prime) + [2] * self.t2_count
        orders += list(self.sphere_t2K) + [2] * self.sphere_t2_count
        free = self.F_rank
        if self.extra == "Z":
            free += 1
        elif self.extra == "Z/2":
            orders.append(2)
        return fin_ab_from_orders(orders, free)

    @property
    def free_rank(self):
        return self.total.free_rank

    def components(self):
        parts = []
        if self.case_label != CASE_LABELS["odd"]:
            sign = "+" if self._f_plus() else "-"
            parts.append(("F" + sign, "Z^%d" % self.F_rank))
            parts.append(("Z-part", self.extra if self.extra != "none" else "0"))
            parts.append(("T'_2^K", _fmt_cyclic(self.t_prime)))
            parts.append(("T_2", _fmt_cyclic([2] * self.t2_count)))
        else:
            parts.append(("T_2(odd)", _fmt_cyclic([2] * self.t2_count)))
        if self.kind == "sphere":
            parts.append(("T_2^K(d)", _fmt_cyclic(list(self.sphere_t2K))))
            parts.append(("T_2(d)", _fmt_cyclic([2] * self.sphere_t2_count)))
            parts.append(("T_M(d)", "order %d" % self.declared_odd_order))
        return parts

    def _f_plus(self):
        return (self.d + self.m // 2) % 2 == 0

    def summary(self):
        """One-line rendering, e.g. ``F-=Z^1; Z/2; Z/4+Z/4; Z/2``."""
        out = []
        for name, desc in self.components():
            out.append("%s=%s" % (name, desc) if name.startswith("F") else desc)
        return "; ".join(out)

    def to_dict(self):
        return {
            "N": self.N, "d": self.d, "m": self.m, "kind": self.kind,
            "case_label": self.case_label, "F_rank": self.F_rank,
            "extra": self.extra, "t_prime": list(self.t_prime),
            "t2_count": self.t2_count,
            "declared_odd_order": self.declared_odd_order,
            "sphere_t2K": list(self.sphere_t2K),
            "sphere_t2_count": self.sphere_t2_count,
            "derived_mode": self.derived_mode,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["t_prime"] = tuple(d["t_prime"])
        d["sphere_t2K"] = tuple(d["sphere_t2K"])
        return cls(**d)


def structure_set_disk(N, d, m):
    """S^s_del(L x D^m) by the case table of the main theorem.

    m = 2k needs k >= 1; m = 2k + 1 allows k = 0. For odd N (K = 0) the
    even-disk answer is assembled from the odd-order kernel facts and is
    flagged ``derived_mode="odd_N"``.
    """
    if N < 2:
        raise UnsupportedParams("N must be >= 2, got %r" % (N,))
    if d < 2:
        raise UnsupportedParams("d must be >= 2, got %r" % (d,))
    if m < 1:
        raise UnsupportedParams("m must be >= 1, got %r" % (m,))
    K, M = decompose_N(N)
    k = m // 2
    derived = "odd_N" if K == 0 else None
    if m % 2 == 1:
        t2 = c_2_odd(d, k) if K >= 1 else 0
        return StructureSetDescriptor(N, d, m, CASE_LABELS["odd"], 0, "none", (), t2,
                                      derived_mode=derived)
    if k < 1:
        raise UnsupportedParams("even disk needs m = 2k with k >= 1, got m=%r" % (m,))
    sign = 1 if (d + k) % 2 == 0 else -1
    F = reduced_eigenspace_rank(N, sign)
    label = CASE_LABELS[(d % 2 == 0, k % 2 == 0)]
    if K >= 1:
        extra = "Z" if k % 2 == 0 else "Z/2"
        return StructureSetDescriptor(N, d, m, label, F, extra,
                                      tuple(t_prime_orders(K, c_N(d, k))), c_2(d, k))
    extra = "Z" if k % 2 == 0 else "none"
    return StructureSetDescriptor(N, d, m, label, F, extra, (), 0, derived_mode=derived)


def structure_set_product_sphere(N, d, m):
    """S^s(L x S^m) = S^s_del(L x D^m) + T_{2^K}(d) + T_2(d) + T_M(d)."""
    k = m // 2
    if m % 2 == 0 and k < 2:
        raise UnsupportedParams("sphere corollary needs m = 2k with k >= 2")
    if m % 2 == 1 and k < 1:
        raise UnsupportedParams("sphere corollary needs m = 2k+1 with k >= 1")
    disk = structure_set_disk(N, d, m)
    K, M = decompose_N(N)
    c = (d - 1) // 2
    t2K = (2 ** K,) * c if K >= 1 else ()
    t2 = d // 2 if K >= 1 else 0
    return StructureSetDescriptor(
        N, d, m, disk.case_label, disk.F_rank, disk.extra, disk.t_prime, disk.t2_count,
        declared_odd_order=M ** c, sphere_t2K=t2K, sphere_t2_count=t2,
        derived_mode=disk.derived_mode, kind="sphere")


def order_identity_terms(N, d, k, image_order):
    """Both sides of |K-bar_N| * |image| = |finite source of the factored map|.

    k even: source Z/2^K + T_{2^K}(d,k) + T_2(d,k) + T_M(d+2,0);
    k odd: source is the finite group T_N(d,k) itself.
    """
    K, M = decompose_N(N)
    c = (d - 1) // 2
    ni = normal_invariants(N, d, 2 * k, reduced=True)
    two_tors = ni.known_part().order
    if k % 2 == 0:
        source = (2 ** K) * two_tors * M ** (c + 1)
    else:
        source = two_tors * M ** c
    return kbar_closed_form(N, d, k).order * image_order, source


def kernel_extension_gap(N, d, k):
    """2^min(2 c_N + 2, K): the order by which K-bar_N exceeds tors(K_N), k even."""
    K, _ = decompose_N(N)
    return 2 ** min(2 * c_N(d, k) + 2, K) if K else 1

