"""Exact arithmetic in the cyclotomic field Q(zeta_N) = Q[x]/(Phi_N(x)).

Elements are stored as coefficient tuples of length phi(N) over
:class:`fractions.Fraction`, i.e. as polynomials in zeta of degree < phi(N).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CycloElem",
    "cyclotomic_polynomial",
    "euler_phi",
]


def euler_phi(n):
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num, den):
    """Divide integer polynomials (coefficient lists, lowest degree first).

    ``den`` must be monic; quotient and remainder are then integral.
    """
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    return quot, num[:dn] or [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Return Phi_n as a tuple of integer coefficients, lowest degree first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1, got %r" % (n,))
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n):
    # zeta^a reduced mod Phi_n, for a in [0, n)
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    table = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        table.append(tuple(cur))
        # multiply by x, then reduce the x^deg term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(table)


def _reduce(coeffs, n):
    """Reduce an arbitrary-length coefficient list modulo Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            c[i] = 0
            for j in range(deg):
                c[i - deg + j] -= t * phi[j]
    c = c[:deg]
    c.extend([0] * (deg - len(c)))
    return c


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_q(a, b):
    a = list(a)
    b = _trim(list(b))
    if len(a) < len(b):
        return [], _trim(a)
    lead = b[-1]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


class CycloElem:
    """An element of Q(zeta_N), immutable.

    >>> i = CycloElem.zeta(4)
    >>> i * i == CycloElem.from_rational(4, -1)
    True
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        deg = euler_phi(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(
                "expected %d coefficients for conductor %d, got %d"
                % (deg, conductor, len(coeffs)))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, n, q):
        deg = euler_phi(n)
        return cls(n, [Fraction(q)] + [Fraction(0)] * (deg - 1))

    @classmethod
    def zero(cls, n):
        return cls.from_rational(n, 0)

    @classmethod
    def one(cls, n):
        return cls.from_rational(n, 1)

    @classmethod
    def zeta(cls, n, power=1):
        """zeta_N ** power, for any integer power."""
        return cls(n, _power_table(n)[power % n])

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CycloElem):
            other = CycloElem.from_rational(self.conductor, other)
        if other.conductor != self.conductor:
            raise ValueError(
                "conductor mismatch: %d vs %d" % (self.conductor, other.conductor))
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycloElem(self.conductor,
                         [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.conductor, [a * other for a in self.coeffs])
        other = self._check(other)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        return CycloElem(self.conductor, _reduce(prod, self.conductor))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElem.one(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.conductor)
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_N is irreducible
        c = r1[0]
        inv = [x / c for x in s1]
        return CycloElem(self.conductor, _reduce(inv, self.conductor))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.conductor, [a / other for a in self.coeffs])
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError("%r is not rational" % (self,))
        return self.coeffs[0]

    def galois_apply(self, j):
        """Apply the automorphism zeta -> zeta^j (requires gcd(j, N) == 1)."""
        n = self.conductor
        if gcd(j, n) != 1:
            raise ValueError("galois_apply needs gcd(j, N) == 1, got j=%d N=%d" % (j, n))
        table = _power_table(n)
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                for t, z in enumerate(table[(i * j) % n]):
                    if z:
                        out[t] += c * z
        return CycloElem(n, out)

    def to_complex(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))

    def to_conductor(self, u):
        """Re-express this element as an element of Q(zeta_u).

        ``u`` must divide the conductor and the element must lie in the
        subfield Q(zeta_u), embedded via zeta_u -> zeta_N^(N/u).
        """
        n = self.conductor
        if n % u:
            raise ValueError("%d does not divide %d" % (u, n))
        if u == n:
            return self
        step = n // u
        table = _power_table(n)
        deg_u = euler_phi(u)
        # columns: images of zeta_u^i, i < phi(u)
        cols = [table[(i * step) % n] for i in range(deg_u)]
        sol = _solve_rational(cols, self.coeffs)
        if sol is None:
            raise ValueError("element does not lie in Q(zeta_%d)" % u)
        return CycloElem(u, sol)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else "%s*z^%d" % (c, i))
        return "CycloElem(%d, %s)" % (self.conductor, " + ".join(terms) or "0")


def _solve_rational(cols, rhs):
    """Solve sum_i x_i * cols[i] == rhs exactly; None if inconsistent."""
    m = len(rhs)
    k = len(cols)
    rows = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(rhs[i])]
            for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, m)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][k]
    return x
