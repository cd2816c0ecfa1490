"""Follow one rho-invariant map from class functions to its image group.

Run:  python demos/rho_image_walkthrough.py [N d k]
"""

import sys

from lenscalc.rho_engine import (
    build_basis,
    f_power_values,
    kernel_and_image,
    predicted_image_order,
    rho_columns,
)


def show(N, d, k):
    basis = build_basis(d, k)
    print("N=%d d=%d k=%d: %s case, generators %s" % (
        N, d, k, basis.parity_case.value, ", ".join(basis.labels)))
    print("  exponents of f per generator:", basis.exponents)

    f = f_power_values(N, 1)
    print("  f = (1+t)/(1-t) at the nontrivial roots of unity:")
    for j, v in enumerate(f.values, start=1):
        print("    zeta^%d -> %s  (~ %.4f%+.4fi)" % (j, v, v.to_complex().real, v.to_complex().imag))

    rmap = rho_columns(N, d, k)
    print("  columns in reduced character coordinates (sign %+d):" % rmap.sign)
    for label, col in zip(basis.labels, rmap.columns):
        print("    %-5s %s" % (label, " ".join(str(c) for c in col.coords)))

    res = kernel_and_image(N, d, k)
    print("  kernel lattice basis:", [list(v) for v in res.khat.basis])
    print("  image:", res.image, "of order", res.image.order)
    print("  closed-form prediction:", predicted_image_order(N, d, k))
    print()


if __name__ == "__main__":
    if len(sys.argv) == 4:
        show(*map(int, sys.argv[1:]))
    else:
        # a 2-power case where the image is a single Z/2
        show(8, 5, 0)
        # an odd case: three generators, each contributing a factor 5
        show(5, 5, 0)
        # the smallest tuple where the odd part exceeds the closed form
        show(3, 2, 1)
