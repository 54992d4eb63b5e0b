"""Polarizable particle facing a charged dielectric half-space.

The beta-scaled potential obeys beta*V = -alpha/a^3 * g(eps, kappa_eps*a)
with g rising from (eps-1)/(4(eps+1)) (charge-free dielectric) to the
universal 1/4 of an ideal conductor once screening is strong.  The demo
tabulates the crossover and verifies force = -dV/da at a few points by
central differences.
"""

import numpy as np

from screened_casimir import Medium, particle_force, particle_potential

EPSILONS = (1.0, 2.0, 5.0)
KAPPA_A = np.geomspace(0.01, 1e4, 17)


def main():
    print("dimensionless potential  -beta*V*a^3/alpha")
    print("kappa_eps*a".rjust(12) + "".join(f"  eps={eps:<10g}" for eps in EPSILONS))
    for ka in KAPPA_A:
        cells = [f"{ka:12.4e}"]
        for eps in EPSILONS:
            value = -particle_potential(Medium(eps, ka), 1.0, 1.0)
            cells.append(f"  {value:.8f}    "[:14])
        print("".join(cells))
    print()
    print("static anchors (eps-1)/(4(eps+1)):",
          ", ".join(f"eps={eps:g}: {(eps - 1) / (4 * (eps + 1)):.6f}"
                    for eps in EPSILONS))
    print("conductor anchor: 0.25")
    print()

    print("force consistency, force vs -dV/da (central difference):")
    for eps, ka in ((2.0, 0.5), (5.0, 10.0)):
        medium = Medium(eps, ka)
        a, h = 1.0, 1e-4
        force = particle_force(medium, 1.0, a)
        dvda = (particle_potential(medium, 1.0, a + h)
                - particle_potential(medium, 1.0, a - h)) / (2 * h)
        print(f"  eps={eps:g} kappa_eps*a={ka:g}: "
              f"beta*force = {force:+.8e}, -dV/da = {-dvda:+.8e}")


if __name__ == "__main__":
    main()
