"""Print structure sets of L x D^m and L x S^m for a few fundamental groups.

Run:  python demos/structure_set_tables.py
"""

from lenscalc.surgery_tables import (
    kbar_closed_form,
    kernel_closed_form,
    structure_set_disk,
    structure_set_product_sphere,
)

print("Structure sets of L^(2d-1) x D^m")
print("%4s %3s %3s  %-16s %s" % ("N", "d", "m", "case", "group"))
for N in (4, 6, 8):
    for d in (2, 3, 4, 5):
        for m in (2, 3, 4):
            desc = structure_set_disk(N, d, m)
            print("%4d %3d %3d  %-16s %s   [%s]" % (N, d, m, desc.case_label, desc.total,
                                                  desc.summary()))
print()

print("Adding a sphere factor: the extra summands and the declared odd order")
for N, d, m in ((6, 5, 4), (12, 4, 5), (8, 3, 6)):
    s = structure_set_product_sphere(N, d, m)
    print("  N=%d d=%d m=%d: %s, odd part of order %d" % (N, d, m, s.total, s.declared_odd_order))
print()

print("Kernels of the rho-invariant on normal invariants, and their finite quotients")
for N, d, k in ((4, 5, 0), (8, 5, 0), (16, 2, 0), (8, 4, 3)):
    print("  N=%d d=%d k=%d: K_N = %s, K-bar_N = %s" % (
        N, d, k, kernel_closed_form(N, d, k), kbar_closed_form(N, d, k)))
