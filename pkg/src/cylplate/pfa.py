"""Proximity force approximation for a cylinder in front of a plate.

The parallel-plate density is integrated over the cylinder profile,

    F = 2 L r \\int_0^{pi/2} f(a + r (1 - cos th)) cos th dth,

which is the ``x = r sin th`` form of the integral over the projected
rectangle; it has no endpoint singularity.  Closed-form regime results
for the same integrals are in :func:`pfa_asymptotic`.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from . import parallel_plate as pp
from .asymptotics import AsymptoticResult, Order, Quantity, Regime
from .geometry import BoundaryCondition, CylinderPlate
from .quadrature import integrate
from .specfun import riemann_zeta

__all__ = [
    "PfaOrder",
    "pfa_force",
    "pfa_energy",
    "pfa_asymptotic",
    "pfa_thermal_series",
    "pec_scale",
]

ZETA3 = riemann_zeta(3.0)
SQRT2 = math.sqrt(2.0)


class PfaOrder(enum.Enum):
    LEADING = "leading"
    WITH_THERMAL = "with_thermal"


def _breakpoints(sys):
    # the integrand varies on the scale th ~ sqrt(a/r) near th = 0
    th0 = math.sqrt(sys.a / sys.r)
    pts = [0.0]
    k = 0.25
    while th0 * k < 0.5 * math.pi:
        pts.append(th0 * k)
        k *= 4.0
    pts.append(0.5 * math.pi)
    return pts


def _profile_integral(density, sys, quad_tol):
    a, r, T = sys.a, sys.r, sys.T

    def f(th):
        c = np.cos(th)
        vals = [density(pp.PlateGap(a + r * (1.0 - ci), T)) for ci in c]
        return np.asarray(vals) * c

    val, _ = integrate(f, _breakpoints(sys), rel_tol=quad_tol)
    return 2.0 * sys.length_l * r * val


def pfa_force(sys: CylinderPlate, quad_tol: float = 1e-10) -> float:
    """PFA force (negative means attraction), one scalar field."""
    return _profile_integral(pp.force_density, sys, quad_tol)


def pfa_energy(sys: CylinderPlate, quad_tol: float = 1e-10) -> float:
    """PFA energy, one scalar field."""
    return _profile_integral(pp.energy_density, sys, quad_tol)


def pec_scale(value_d: float, value_n: float) -> float:
    """Perfect-conductor value from its Dirichlet and Neumann parts."""
    return value_d + value_n


def pfa_thermal_series(sys: CylinderPlate, n_terms: int = 2) -> list[tuple[str, float]]:
    """Medium-temperature (aT << 1 << rT) thermal correction to the PFA force.

    Each term is the residue at ``z = 5/2 - j`` of the Mellin
    representation; ``j = 0`` is the ``T^{7/2}`` leading term.
    """
    L, r, T = sys.length_l, sys.r, sys.T
    x = r * T / math.pi
    out = []
    for j in range(n_terms):
        res = (math.sqrt(math.pi) / 2.0 ** (j + 0.5) * (-1) ** j
               * (j + 0.5) * (1.5 - j) / math.factorial(j))
        val = (math.pi ** 2 * L / r ** 3 * x ** (3.5 - j)
               * riemann_zeta(0.5 - j) * riemann_zeta(3.5 + j) * res)
        out.append((f"thermal_T^{3.5 - j:g}", val))
    return out


def pfa_asymptotic(sys: CylinderPlate, regime: Regime, quantity: Quantity,
                   order: PfaOrder = PfaOrder.LEADING,
                   bc: BoundaryCondition = BoundaryCondition.DIRICHLET) -> AsymptoticResult:
    """Closed-form PFA results in one temperature regime.

    The regime is not checked against ``(a, r, T)``.  ``Regime.ZERO_T``
    stands for the low-temperature region ``aT << rT << 1``.  With
    ``WITH_THERMAL`` the terms list carries the zero-temperature (or
    classical) part and the thermal pieces separately.
    """
    regime = Regime(regime)
    quantity = Quantity(quantity)
    order = PfaOrder(order)
    a, r, L, T = sys.a, sys.r, sys.length_l, sys.T
    force = quantity is Quantity.FORCE

    terms: list[tuple[str, float]] = []
    if regime is Regime.HIGH_T:
        if force:
            terms.append(("classical", -3.0 * ZETA3 * L * math.sqrt(r) * T / (32.0 * SQRT2 * a ** 2.5)))
        else:
            terms.append(("classical", -ZETA3 * L * math.sqrt(r) * T / (16.0 * SQRT2 * a ** 1.5)))
    else:
        if force:
            terms.append(("zero_t", -math.pi ** 3 * L * math.sqrt(r) / (768.0 * SQRT2 * a ** 3.5)))
        else:
            terms.append(("zero_t", -math.pi ** 3 * L * math.sqrt(r) / (1920.0 * SQRT2 * a ** 2.5)))

        if order is PfaOrder.WITH_THERMAL and regime is Regime.ZERO_T:
            if force:
                terms.append(("thermal_T^4", -math.pi ** 2 * T ** 4 * L * r / 45.0))
            else:
                terms.append(("thermal_T^3", -ZETA3 * L * r * T ** 3 / (2.0 * math.pi)))
                terms.append(("thermal_T^4", math.pi ** 2 * L * r * r * T ** 4 / 45.0 * (1.0 - math.pi / 4.0)
                              + math.pi ** 2 * T ** 4 * L * a * r / 45.0))
        elif order is PfaOrder.WITH_THERMAL and regime is Regime.MEDIUM_T:
            if force:
                terms.extend(pfa_thermal_series(sys, 2))
            else:
                z32, z52 = riemann_zeta(1.5), riemann_zeta(2.5)
                terms.append(("thermal_T^2.5", -L * math.sqrt(r) * T ** 2.5 / (4.0 * SQRT2 * math.pi) * z52 * z32))
                terms.append(("thermal_T^1.5", 3.0 * L * T ** 1.5 / (32.0 * SQRT2 * math.pi * math.sqrt(r)) * z32 * z52))

    scale = len(BoundaryCondition.parse(bc).scalar_parts)
    terms = [(label, scale * v) for label, v in terms]
    return AsymptoticResult.from_terms(terms, regime=regime,
                                       order=Order.LEADING if order is PfaOrder.LEADING else Order.FIRST_ORDER)
