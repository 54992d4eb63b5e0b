"""Slab-slab force across the screening crossover.

Sweeps the screening strength kappa_eps * a at several permittivities and
prints the dimensionless force combination beta*f*a^3.  Two anchors frame
the curve: with no free charges the force starts at the polylog value of
the static dielectric, and strong screening drives every curve toward the
ideal-conductor plateau -zeta(3)/(8 pi), the supremum for all media.

Run:  python demos/plates_force_sweep.py  (add --plot to save a figure)
"""

import math
import sys

import numpy as np

from screened_casimir import Medium, force_per_area, polylog3, zeta3

EPSILONS = (1.0, 2.0, 5.0, 20.0)
KAPPA_A = np.geomspace(0.01, 1e4, 25)


def static_anchor(eps):
    if eps == 1.0:
        return 0.0
    refl = ((eps - 1.0) / (eps + 1.0)) ** 2
    return -polylog3(refl) / (8.0 * math.pi)


def main():
    conductor = -zeta3() / (8.0 * math.pi)
    print(f"conductor plateau  beta*f*a^3 = {conductor:+.6e}")
    print()
    header = "kappa_eps*a".rjust(12) + "".join(
        f"  eps={eps:<12g}" for eps in EPSILONS)
    print(header)
    curves = {eps: [] for eps in EPSILONS}
    for ka in KAPPA_A:
        row = [f"{ka:12.4e}"]
        for eps in EPSILONS:
            value = force_per_area(Medium(eps, ka), 1.0)
            curves[eps].append(value)
            row.append(f"  {value:+.6e}")
        print("".join(row))
    print()
    for eps in EPSILONS:
        print(f"eps={eps:<4g} static anchor {static_anchor(eps):+.6e}   "
              f"weakest sampled {curves[eps][0]:+.6e}   "
              f"strongest sampled {curves[eps][-1]:+.6e}")

    if "--plot" in sys.argv:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 3.5))
        for eps in EPSILONS:
            ax.semilogx(KAPPA_A, np.abs(curves[eps]), label=f"eps = {eps:g}")
        ax.axhline(abs(conductor), color="k", ls=":", lw=1,
                   label="conductor limit")
        ax.set_xlabel(r"$\kappa_\varepsilon a$")
        ax.set_ylabel(r"$|\beta f|\, a^3$")
        ax.legend(frameon=False, fontsize=8)
        fig.tight_layout()
        fig.savefig("plates_force_sweep.png", dpi=200)
        print("\nsaved plates_force_sweep.png")


if __name__ == "__main__":
    main()
