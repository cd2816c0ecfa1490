"""Run a small verification sweep and summarise it per suite.

Run:  python demos/verification_sweep.py
The full default sweep is ``lenscalc verify``.
"""

from lenscalc.sweep import SweepSpec, run_sweep

spec = SweepSpec(N_list=(2, 3, 4, 6, 8), d_range=tuple(range(2, 6)), k_range=(0, 1, 2),
                 snf_instances=100, preimage_instances=20)
report = run_sweep(spec)

for suite, counts in sorted(report["summary"]["by_suite"].items()):
    print("%-24s %3d passed %3d failed" % (suite, counts["passed"], counts["failed"]))

failures = [r for r in report["results"] if not r["passed"]]
if failures:
    print("\nFailing tuples (computed vs expected):")
    for r in failures:
        print("  N=%(N)d d=%(d)d k=%(k)d %(suite)s: %(computed)s vs %(expected)s" % r)

print("\nSame sweep with one generator column doubled:")
mutated = run_sweep(SweepSpec(N_list=spec.N_list, d_range=spec.d_range, k_range=spec.k_range,
                              suites=("factorization",), mutate="scale-column"))
print("  factorization failures:", mutated["summary"]["by_suite"]["factorization"]["failed"])
