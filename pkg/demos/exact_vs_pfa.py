"""Exact zero-temperature energy against the proximity force approximation.

As the cylinder approaches the plate (eps = a/r -> 0) the exact energy
divided by the PFA leading term should approach 1 along the line
1 + c eps, with c = 7/36 for Dirichlet and c = 7/36 - 40/(3 pi^2) for
Neumann.

    python demos/exact_vs_pfa.py
"""
import math

from cylplate.asymptotics import Quantity, zero_t_coefficient
from cylplate.exact import energy_zero_t
from cylplate.geometry import CylinderPlate


def pfa_leading(a, r=1.0, L=1.0):
    return -math.pi ** 3 * L * math.sqrt(r) / (1920 * math.sqrt(2) * a ** 2.5)


print(f"{'eps':>6} {'bc':>10} {'E exact':>14} {'E/PFA':>9} {'1+c eps':>10} {'m':>5}")
for eps in (0.4, 0.2, 0.1, 0.05):
    s = CylinderPlate(eps, 1.0)
    for bc in ("dirichlet", "neumann"):
        e, rep = energy_zero_t(s, bc)
        print(f"{eps:6.2f} {bc:>10} {e:14.6e} {e / pfa_leading(eps):9.5f} "
              f"{1 + zero_t_coefficient(bc, Quantity.ENERGY) * eps:10.5f} {rep.m_max_used:5d}")

# at eps = 0.4 the Neumann line is far off: its eps^2 term is large
