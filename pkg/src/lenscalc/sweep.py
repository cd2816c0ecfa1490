"""Verification sweeps over (N, d, k) grids and their reports."""

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from . import __version__
from .exact_algebra import (
    FinAbGroup,
    Lattice,
    det,
    lattice_preimage,
    matmul,
    snf,
)
from .rep_ring import reduced_eigenspace_rank
from .rho_engine import (
    VerificationFailure,
    kernel_and_image,
    verify_eigenspace,
    verify_factorization,
    verify_rationality,
    verify_splitting,
    verify_transfer_compat,
)
from .surgery_tables import (
    c_N,
    decompose_N,
    kbar_closed_form,
    kernel_closed_form,
    kernel_extension_gap,
    order_identity_terms,
    structure_set_disk,
)

SCHEMA_VERSION = 1

TUPLE_SUITES = ("eigenspace", "rationality", "transfer", "factorization",
                "splitting", "closed-form-regression")
GLOBAL_SUITES = ("closed-form-regression", "snf-properties")
ALL_SUITES = ("eigenspace", "rationality", "transfer", "factorization",
              "splitting", "closed-form-regression", "snf-properties")

DEFAULT_N = (2, 3, 4, 5, 6, 7, 8, 9, 12, 16)


class SpecError(ValueError):
    """A malformed sweep specification."""


@dataclass(frozen=True)
class SweepSpec:
    N_list: tuple = DEFAULT_N
    d_range: tuple = tuple(range(2, 9))
    k_range: tuple = tuple(range(0, 5))
    suites: tuple = ALL_SUITES
    mutate: str = None
    snf_instances: int = 1000
    preimage_instances: int = 200
    seed: int = 20180101

    def __post_init__(self):
        if not self.N_list or not self.d_range or not self.k_range:
            raise SpecError("N, d and k ranges must be nonempty")
        if not self.suites:
            raise SpecError("no suites requested")
        bad = set(self.suites) - set(ALL_SUITES)
        if bad:
            raise SpecError("unknown suites: %s" % ", ".join(sorted(bad)))
        if min(self.d_range) < 2:
            raise SpecError("d must be >= 2")
        if min(self.N_list) < 2:
            raise SpecError("N must be >= 2")
        if min(self.k_range) < 0:
            raise SpecError("k must be >= 0")
        if self.mutate not in (None, "scale-column"):
            raise SpecError("unknown mutation %r" % (self.mutate,))


def _run(check, *args):
    try:
        return {"passed": True, "values": check(*args)}
    except VerificationFailure as exc:
        return {"passed": False, "error": str(exc),
                "computed": _jsonable(exc.computed), "expected": _jsonable(exc.expected)}


def _jsonable(x):
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return str(x)


def _transfer(N, d, k):
    per_U = []
    for U in range(2, N):
        if N % U == 0:
            verify_transfer_compat(N, U, d, k)
            per_U.append(U)
    return {"divisors": per_U}


def _closed_form_tuple(N, d, k):
    """Closed-form tables checked against each other and the computed 2-part."""
    K, M = decompose_N(N)
    params = (N, d, k)
    out = {}
    if k >= 1:
        desc = structure_set_disk(N, d, 2 * k)
        want = reduced_eigenspace_rank(N, 1 if (d + k) % 2 == 0 else -1) + (k % 2 == 0)
        if desc.free_rank != want:
            raise VerificationFailure("rank-consistency", params, desc.free_rank, want)
        out["disk_free_rank"] = desc.free_rank
        if K >= 1 and len(desc.t_prime) != c_N(d, k):
            raise VerificationFailure("t-prime-count", params, len(desc.t_prime), c_N(d, k))
    image = kernel_and_image(N, d, k).image
    two_image = image.two_part().order
    lhs, rhs = order_identity_terms(N, d, k, two_image)
    # compare 2-primary parts of both sides of the factored-map identity
    lhs2 = _two_power(lhs)
    rhs2 = _two_power(rhs)
    if lhs2 != rhs2:
        raise VerificationFailure("order-identity-2-part", params, lhs2, rhs2)
    out["order_identity_2_part"] = lhs2
    if k % 2 == 0 and K >= 1:
        kn = kernel_closed_form(N, d, k)
        kbar = kbar_closed_form(N, d, k)
        merged = kn.torsion_subgroup() + FinAbGroup(0, (kernel_extension_gap(N, d, k),))
        if merged != kbar:
            raise VerificationFailure("kernel-extension", params, str(merged), str(kbar))
        out["kbar"] = str(kbar)
    return out


def _two_power(n):
    p = 1
    while n % 2 == 0:
        n //= 2
        p *= 2
    return p


def closed_form_anchors():
    """Hand-checked anchors of the main theorem and the kernel corollary."""
    checks = [
        ("disk(6,2,4)", structure_set_disk(6, 2, 4).total, FinAbGroup(4, ())),
        ("disk(4,4,2)", structure_set_disk(4, 4, 2).total, FinAbGroup(1, (2, 2, 4, 4))),
        ("kernel(4,5,0)", kernel_closed_form(4, 5, 0), FinAbGroup(1, (2, 2, 4, 4))),
    ]
    for N in (2, 4, 6, 8, 12, 16):
        checks.append(("disk(%d,3,3)" % N, structure_set_disk(N, 3, 3).total,
                       FinAbGroup(0, (2,))))
    for name, got, want in checks:
        if got != want:
            raise VerificationFailure("anchor " + name, (), str(got), str(want))
    return {"anchors": len(checks)}


def random_matrix(rng, rows, cols, bound):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def check_snf_instance(A):
    sf = snf(A)
    if matmul(matmul(sf.U, A), sf.V) != sf.D:
        raise VerificationFailure("snf U*A*V=D", A, sf.D, "U*A*V")
    if abs(det(sf.U)) != 1 or abs(det(sf.V)) != 1:
        raise VerificationFailure("snf unimodular", A, (det(sf.U), det(sf.V)), 1)
    for i, row in enumerate(sf.D):
        for j, x in enumerate(row):
            if i != j and x:
                raise VerificationFailure("snf diagonal", A, sf.D, "diagonal")
    diag = [x for x in sf.diagonal if x]
    if any(x < 0 for x in diag) or any(b % a for a, b in zip(diag, diag[1:])):
        raise VerificationFailure("snf divisibility", A, diag, "chain")
    if any(sf.diagonal[len(diag):]):
        raise VerificationFailure("snf zero tail", A, sf.diagonal, "zeros last")


def _rational_inverse(B):
    n = len(B)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(B)]
    for c in range(n):
        p = next(i for i in range(c, n) if M[i][c])
        M[c], M[p] = M[p], M[c]
        lead = M[c][c]
        M[c] = [x / lead for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


def preimage_oracle(A, B):
    """Membership test for {s : A s in L}, L spanned by the columns of B.

    A s lies in L iff B^-1 A s is integral; with c clearing the
    denominators of A and t = det B, that is the integer congruence
    (t B^-1)(c A) s == 0 mod c t.
    """
    c = 1
    for row in A:
        for x in row:
            c = lcm(c, Fraction(x).denominator)
    t = abs(det(B))
    Binv = _rational_inverse(B)
    W = [[int(x * t) for x in row] for row in matmul(Binv, [[Fraction(x) * c for x in row]
                                                          for row in A])]
    mod = c * t

    def member(s):
        return all(sum(w * x for w, x in zip(row, s)) % mod == 0 for row in W)
    return member, mod


def random_preimage_instance(rng, max_residues=4096):
    """Random rational A (m x g), full-rank L in Z^m of index <= 200.

    Instances are redrawn until the residue box [0, D)^g of the oracle
    has at most ``max_residues`` points.
    """
    while True:
        g = rng.randint(1, 3)
        m = rng.randint(1, 3)
        B = random_matrix(rng, m, m, 4)
        idx = abs(det(B))
        if not 1 <= idx <= 200:
            continue
        A = [[Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3, 4))) for _ in range(g)]
             for _ in range(m)]
        _, D = preimage_oracle(A, B)
        if D ** g <= max_residues:
            return A, B


def check_preimage_instance(A, B):
    """Compare lattice_preimage with residue enumeration modulo D.

    The preimage P contains D Z^g, so P is the union of the residue
    classes in [0, D)^g passing the oracle; P computed by lattice
    algebra must satisfy the oracle on its basis and have index
    D^g / #passing residues.
    """
    m = len(B)
    L = Lattice(m, [list(col) for col in zip(*B)])
    P = lattice_preimage(A, L)
    g = len(A[0])
    member, D = preimage_oracle(A, B)
    count = sum(1 for s in product(range(D), repeat=g) if member(s))
    if D ** g % count:
        raise VerificationFailure("preimage residue count", (A, B), count, D ** g)
    want_index = D ** g // count
    if P.rank != g or P.index() != want_index:
        raise VerificationFailure("preimage index", (A, B), P.index(), want_index)
    for v in P.basis:
        if not member(v):
            raise VerificationFailure("preimage basis", (A, B), v, "member")
    return P


def _snf_properties(spec):
    rng = random.Random(spec.seed)
    for _ in range(spec.snf_instances):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        check_snf_instance(random_matrix(rng, r, c, rng.choice((1, 9, 99))))
    for _ in range(spec.preimage_instances):
        A, B = random_preimage_instance(rng)
        check_preimage_instance(A, B)
    return {"snf_instances": spec.snf_instances,
            "preimage_instances": spec.preimage_instances}


def run_tuple(N, d, k, suites, mutate=None):
    out = []
    for suite in suites:
        if suite == "eigenspace":
            res = _run(verify_eigenspace, N, d, k)
        elif suite == "rationality":
            res = _run(verify_rationality, N, d, k)
        elif suite == "transfer":
            res = _run(_transfer, N, d, k)
        elif suite == "factorization":
            res = _run(verify_factorization, N, d, k, mutate)
        elif suite == "splitting":
            res = _run(verify_splitting, N, d, k)
        elif suite == "closed-form-regression":
            res = _run(_closed_form_tuple, N, d, k)
        else:
            continue
        res.update({"N": N, "d": d, "k": k, "suite": suite})
        out.append(res)
    return out


def _run_for_N(args):
    N, d_range, k_range, suites, mutate = args
    out = []
    for d in d_range:
        for k in k_range:
            out.extend(run_tuple(N, d, k, suites, mutate))
    return out


def worker_count():
    env = os.environ.get("LENSCALC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SpecError("LENSCALC_THREADS must be an integer, got %r" % env)
    return max(1, min(os.cpu_count() or 1, 8))


def run_sweep(spec, workers=None):
    """Run every requested suite; returns a report dict with stable ordering."""
    workers = worker_count() if workers is None else workers
    tuple_suites = [s for s in spec.suites if s in TUPLE_SUITES]
    jobs = [(N, tuple(spec.d_range), tuple(spec.k_range), tuple(tuple_suites), spec.mutate)
            for N in sorted(set(spec.N_list))]
    results = []
    if tuple_suites:
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
                for chunk in pool.map(_run_for_N, jobs):
                    results.extend(chunk)
        else:
            for job in jobs:
                results.extend(_run_for_N(job))
    results.sort(key=lambda r: (r["N"], r["d"], r["k"], ALL_SUITES.index(r["suite"])))

    global_results = []
    if "closed-form-regression" in spec.suites:
        res = _run(closed_form_anchors)
        res["suite"] = "closed-form-regression"
        global_results.append(res)
    if "snf-properties" in spec.suites:
        res = _run(_snf_properties, spec)
        res["suite"] = "snf-properties"
        global_results.append(res)

    summary = {}
    for r in results + global_results:
        s = summary.setdefault(r["suite"], {"passed": 0, "failed": 0})
        s["passed" if r["passed"] else "failed"] += 1
    failed = sum(s["failed"] for s in summary.values())
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "sweep": {
            "N": sorted(set(spec.N_list)),
            "d": list(spec.d_range),
            "k": list(spec.k_range),
            "suites": [s for s in ALL_SUITES if s in spec.suites],
            "mutate": spec.mutate,
            "seed": spec.seed,
        },
        "results": results,
        "global": global_results,
        "summary": {"by_suite": summary, "failed": failed,
                    "total": len(results) + len(global_results),
                    "passed": failed == 0},
    }
