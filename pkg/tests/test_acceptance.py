"""Acceptance run: one test per criterion, all exact.

Each test records a PASS/FAIL line that is printed in the terminal
summary under "acceptance criteria".
"""

import random

from lenscalc.exact_algebra import FinAbGroup
from lenscalc.rho_engine import (
    VerificationFailure,
    kernel_and_image,
    predicted_image_order,
    predicted_odd_order,
    verify_eigenspace,
    verify_rationality,
    verify_splitting,
    verify_transfer_compat,
)
from lenscalc.surgery_tables import decompose_N, kernel_closed_form, structure_set_disk
from lenscalc.sweep import (
    check_preimage_instance,
    check_snf_instance,
    random_matrix,
    random_preimage_instance,
)

SWEEP_N = (2, 3, 4, 5, 6, 7, 8, 9, 12, 16)
SWEEP = [(N, d, k) for N in SWEEP_N for d in range(2, 9) for k in range(0, 5)]


def _first(bad, limit=4):
    shown = ", ".join("%s: %s" % item for item in bad[:limit])
    return "%d failing; e.g. %s" % (len(bad), shown) if bad else ""


def test_criterion_01_counting_identity(record):
    bad = []
    for N, d, k in SWEEP:
        got = kernel_and_image(N, d, k).image.order
        want = predicted_image_order(N, d, k)
        if got != want:
            bad.append(((N, d, k), "%d != %d" % (got, want)))
    ok = record(1, "counting identity |image| = predicted order (%d tuples)" % len(SWEEP),
                not bad, _first(bad))
    assert ok, _first(bad, 48)


def test_criterion_02_two_exponent_bound(record):
    bad = []
    for N, d, k in SWEEP:
        K, _ = decompose_N(N)
        e = kernel_and_image(N, d, k).two_exponent
        if (2 ** K) % e:
            bad.append(((N, d, k), "exponent %d" % e))
    ok = record(2, "2-part exponent divides 2^K", not bad, _first(bad))
    assert ok, _first(bad, 50)


def test_criterion_03_odd_order_identity(record):
    bad = []
    for N, d, k in SWEEP:
        got = kernel_and_image(N, d, k).odd_order
        want = predicted_odd_order(N, d, k)
        if got != want:
            bad.append(((N, d, k), "%d != %d" % (got, want)))
    anchors = {(5, 5, 0): 125, (3, 3, 0): 9}
    for t, want in anchors.items():
        got = kernel_and_image(*t).odd_order
        if got != want:
            bad.append((t, "anchor %d != %d" % (got, want)))
    ok = record(3, "odd part has order M^(c+1) (k even) / M^c (k odd)", not bad, _first(bad))
    assert ok, _first(bad, 50)


def test_criterion_04_splitting(record):
    bad = []
    for N, d, k in SWEEP:
        K, M = decompose_N(N)
        if K == 0 or M == 1:
            continue
        try:
            verify_splitting(N, d, k)
        except VerificationFailure as exc:
            bad.append(((N, d, k), str(exc)))
    ok = record(4, "image(N) = image(2^K) + odd part of order |image(M)|", not bad, _first(bad))
    assert ok, _first(bad, 50)


def test_criterion_05_transfer(record):
    bad = []
    checked = 0
    for N, d, k in SWEEP:
        for U in range(2, N + 1):
            if N % U:
                continue
            try:
                verify_transfer_compat(N, U, d, k)
                checked += 1
            except VerificationFailure as exc:
                bad.append(((N, U, d, k), str(exc)))
    ok = record(5, "restricted columns agree and khat(N) <= khat(U) (%d pairs)" % checked,
                not bad, _first(bad))
    assert ok, _first(bad, 50)


def test_criterion_06_eigenspace_and_rationality(record):
    bad = []
    for N, d, k in SWEEP:
        try:
            verify_eigenspace(N, d, k)
            verify_rationality(N, d, k)
        except (VerificationFailure, ArithmeticError) as exc:
            bad.append(((N, d, k), str(exc)))
    ok = record(6, "columns lie in the sign eigenspace with rational coordinates",
                not bad, _first(bad))
    assert ok, _first(bad, 50)


def test_criterion_07_closed_form_anchors(record):
    checks = [
        (str(structure_set_disk(6, 2, 4).total), "Z^4"),
        (str(structure_set_disk(4, 4, 2).total), str(FinAbGroup(1, (2, 2, 4, 4)))),
        (structure_set_disk(4, 4, 2).summary(), "F-=Z^1; Z/2; Z/4+Z/4; Z/2"),
        (str(kernel_closed_form(4, 5, 0)), str(FinAbGroup(1, (2, 2, 4, 4)))),
    ]
    for N in (2, 4, 6, 8, 12, 16):
        checks.append((str(structure_set_disk(N, 3, 3).total), "Z/2"))
    bad = [(want, got) for got, want in checks if got != want]
    ok = record(7, "structure-set and kernel anchors", not bad, _first(bad))
    assert ok, bad


def test_criterion_08_degenerate_anchors(record):
    bad = []
    for d in range(2, 9):
        for k in (0, 2, 4):
            if kernel_and_image(2, d, k).image != FinAbGroup.trivial():
                bad.append(((2, d, k), str(kernel_and_image(2, d, k).image)))
    if kernel_and_image(4, 5, 0).image != FinAbGroup.trivial():
        bad.append(((4, 5, 0), str(kernel_and_image(4, 5, 0).image)))
    ok = record(8, "trivial images for N=2 (k even) and (4,5,0)", not bad, _first(bad))
    assert ok, bad


def test_criterion_09_substrate_properties(record):
    rng = random.Random(20180101)
    snf_done = pre_done = 0
    try:
        for _ in range(1000):
            A = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), rng.choice((1, 9, 99)))
            check_snf_instance(A)
            snf_done += 1
        for _ in range(200):
            A, B = random_preimage_instance(rng)
            check_preimage_instance(A, B)
            pre_done += 1
        detail = ""
    except VerificationFailure as exc:
        detail = str(exc)
    ok = record(9, "%d SNF and %d preimage instances" % (snf_done, pre_done),
                snf_done == 1000 and pre_done == 200, detail)
    assert ok, detail


def test_criterion_10_negative_control(record):
    broken = []
    for N, d, k in SWEEP:
        clean = kernel_and_image(N, d, k).image.order == predicted_image_order(N, d, k)
        mutated = kernel_and_image(N, d, k, "scale-column").image.order
        if clean and mutated != predicted_image_order(N, d, k):
            broken.append((N, d, k))
    ok = record(10, "scale-column mutation breaks criterion 1 on passing tuples",
                bool(broken), "%d tuples broken, first %s" % (len(broken), broken[:1]))
    assert ok
