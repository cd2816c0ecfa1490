"""Finitely generated abelian groups in invariant-factor form."""

from dataclasses import dataclass
from math import prod

__all__ = ["FinAbGroup", "fin_ab_from_orders", "factorize"]


def factorize(n):
    """Prime factorization of a positive integer as {p: exponent}."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Z^free_rank + Z/t_1 + ... + Z/t_r with t_1 | t_2 | ... | t_r, t_1 >= 2.

    The representation is canonical, so ``==`` is group isomorphism.
    """

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for x in t:
            if x < 2:
                raise ValueError("invariant factors must be >= 2, got %r" % (t,))
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError("invariant factors %r do not form a divisibility chain" % (t,))

    @classmethod
    def trivial(cls):
        return cls(0, ())

    @property
    def order(self):
        """Order of the torsion subgroup."""
        return prod(self.torsion)

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def exponent(self):
        return self.torsion[-1] if self.torsion else 1

    def primary_part(self, p):
        """The p-primary torsion subgroup, canonicalized."""
        orders = []
        for t in self.torsion:
            q = 1
            while t % p == 0:
                t //= p
                q *= p
            if q > 1:
                orders.append(q)
        return FinAbGroup(0, tuple(orders))

    def two_part(self):
        return self.primary_part(2)

    def odd_order(self):
        o = self.order
        while o % 2 == 0:
            o //= 2
        return o

    def torsion_subgroup(self):
        return FinAbGroup(0, self.torsion)

    def __add__(self, other):
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return fin_ab_from_orders(self.torsion + other.torsion,
                                  self.free_rank + other.free_rank)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts += ["Z/%d" % t for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {"free_rank": self.free_rank, "invariant_factors": list(self.torsion)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["free_rank"], tuple(d["invariant_factors"]))


def fin_ab_from_orders(orders, free_rank=0):
    """Canonical form of Z^free_rank + sum_i Z/orders[i].

    Each cyclic summand is split into prime powers; the k-th largest prime
    power of every prime is merged into the k-th largest invariant factor.
    Orders equal to 1 are dropped; 0 counts as a free summand.
    """
    by_prime = {}
    for n in orders:
        n = int(n)
        if n == 0:
            free_rank += 1
            continue
        if n < 0:
            n = -n
        for p, e in factorize(n).items():
            by_prime.setdefault(p, []).append(p ** e)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[i] *= q
    factors.sort()
    return FinAbGroup(free_rank, tuple(factors))
