"""Small-separation asymptotics of the exact cylinder-plate energy and force.

All results are expansions in ``eps = a/r`` to first order, for the
zero-temperature, medium-temperature (aT << 1 << rT) and high-temperature
(1 << aT << rT, classical) regions.  Values are assembled from zeta and
Gamma values at run time; decimals quoted in docstrings are only for
orientation.

Force prefactors are written with ``a^{-7/2}`` (zero temperature) and
``r^{1/2} a^{-5/2}`` (classical), the forms obtained by differentiating
the corresponding energies.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DivergentExpansionError
from .geometry import BoundaryCondition, CylinderPlate
from .specfun import EULER_GAMMA, gamma_fn, riemann_zeta

__all__ = [
    "Regime",
    "Quantity",
    "Order",
    "Variant",
    "AsymptoticResult",
    "zero_t_coefficient",
    "zero_t_energy",
    "zero_t_force",
    "medium_t_thermal_correction",
    "medium_t_first_order",
    "high_t_coefficient",
    "high_t_classical",
    "regime_diagnostics",
    "published_coefficients",
]

SQRT2 = math.sqrt(2.0)


class Regime(enum.Enum):
    ZERO_T = "zero"
    LOW_T = "zero"      # alias: aT << rT << 1 is dominated by the T = 0 terms
    MEDIUM_T = "medium"
    HIGH_T = "high"


class Quantity(enum.Enum):
    ENERGY = "energy"
    FORCE = "force"


class Order(enum.Enum):
    LEADING = "leading"
    FIRST_ORDER = "first_order"


class Variant(enum.Enum):
    """How the high-temperature first-order residue is taken.

    ``RESIDUE_FIRST`` takes the residue in each term of the sum over
    reflection number s; ``SUM_FIRST`` sums over s (analytic continuation)
    and then takes the residue.
    """

    RESIDUE_FIRST = "residue-first"
    SUM_FIRST = "sum-first"


@dataclass
class AsymptoticResult:
    value: float
    regime: Regime
    order: enum.Enum
    variant: Variant | None = None
    terms: list[tuple[str, float]] = field(default_factory=list)

    @classmethod
    def from_terms(cls, terms, regime, order, variant=None):
        terms = list(terms)
        return cls(value=math.fsum(v for _, v in terms), regime=regime,
                   order=order, variant=variant, terms=terms)

    def term(self, label: str) -> float:
        return math.fsum(v for name, v in self.terms if name == label)


@lru_cache(maxsize=None)
def _zeta(s):
    return riemann_zeta(s)


def _scalar_bcs(bc):
    return BoundaryCondition.parse(bc).scalar_parts


def _combine(parts, regime, order, variant=None):
    # PEC: add Dirichlet and Neumann term by term
    labels = []
    acc = {}
    for res in parts:
        for name, v in res:
            if name not in acc:
                labels.append(name)
                acc[name] = []
            acc[name].append(v)
    terms = [(name, math.fsum(acc[name])) for name in labels]
    return AsymptoticResult.from_terms(terms, regime, order, variant)


# ---------------------------------------------------------------------------
# zero temperature

def zero_t_coefficient(bc, quantity) -> float:
    """First-order coefficient c in ``leading * (1 + c eps)``.

    Dirichlet energy 7/36, force 7/60; Neumann subtracts 40/(3 pi^2)
    and 8/pi^2 respectively.
    """
    bc = BoundaryCondition.parse(bc)
    quantity = Quantity(quantity)
    if bc is BoundaryCondition.PEC:
        raise ValueError("PEC has no single relative coefficient; use D and N")
    if quantity is Quantity.ENERGY:
        c = 7.0 / 36.0
        if bc is BoundaryCondition.NEUMANN:
            c -= 40.0 / (3.0 * math.pi ** 2)
    else:
        c = 7.0 / 60.0
        if bc is BoundaryCondition.NEUMANN:
            c -= 8.0 / math.pi ** 2
    return c


def _zero_t(sys, bc, order, quantity):
    a, r, L = sys.a, sys.r, sys.length_l
    if quantity is Quantity.ENERGY:
        lead = -math.pi ** 3 * L * math.sqrt(r) / (1920.0 * SQRT2 * a ** 2.5)
    else:
        lead = -math.pi ** 3 * L * math.sqrt(r) / (768.0 * SQRT2 * a ** 3.5)
    parts = []
    for part in _scalar_bcs(bc):
        terms = [("leading", lead)]
        if order is Order.FIRST_ORDER:
            terms.append(("first_order", lead * zero_t_coefficient(part, quantity) * sys.eps))
        parts.append(terms)
    return _combine(parts, Regime.ZERO_T, order)


def zero_t_energy(sys: CylinderPlate, bc, order=Order.FIRST_ORDER) -> AsymptoticResult:
    """Zero-temperature energy, ``-pi^3 L sqrt(r)/(1920 sqrt2 a^{5/2}) (1 + c eps)``."""
    return _zero_t(sys, bc, Order(order), Quantity.ENERGY)


def zero_t_force(sys: CylinderPlate, bc, order=Order.FIRST_ORDER) -> AsymptoticResult:
    """Zero-temperature force, ``-pi^3 L sqrt(r)/(768 sqrt2 a^{7/2}) (1 + c eps)``."""
    return _zero_t(sys, bc, Order(order), Quantity.FORCE)


# ---------------------------------------------------------------------------
# medium temperature

def _medium_energy_term(j, sys):
    # order eps^j term of the leading thermal correction
    L, r, T, eps = sys.length_l, sys.r, sys.T, sys.eps
    return (-L / (8.0 * math.pi * r * r) * eps ** j * (-2.0) ** j / math.factorial(j)
            * _zeta(1.5 - j) / gamma_fn((1.0 - 2.0 * j) / 4.0)
            * gamma_fn((2.0 * j + 5.0) / 4.0) * _zeta(j + 2.5)
            * (2.0 * r * T) ** (j + 2.5))


def medium_t_thermal_correction(sys: CylinderPlate, quantity, n_terms: int = 2,
                                bc=BoundaryCondition.DIRICHLET) -> AsymptoticResult:
    """Leading thermal correction for aT << 1 << rT, as a series in eps.

    The energy series starts at ``-(L sqrt(r) T^{5/2}/(4 sqrt2 pi))
    zeta(5/2) zeta(3/2)``, which is independent of ``a``; the force
    series is its ``-d/da`` term by term and starts at
    ``(3 L sqrt(r) T^{7/2}/(4 sqrt2 pi)) zeta(1/2) zeta(7/2)``.
    The result is the same for Dirichlet and Neumann conditions.
    """
    quantity = Quantity(quantity)
    scale = len(_scalar_bcs(bc))
    terms = []
    if quantity is Quantity.ENERGY:
        for j in range(n_terms):
            terms.append((f"eps^{j}", scale * _medium_energy_term(j, sys)))
    else:
        for j in range(1, n_terms + 1):
            terms.append((f"eps^{j - 1}", -scale * j * _medium_energy_term(j, sys) / sys.a))
    return AsymptoticResult.from_terms(terms, Regime.MEDIUM_T, Order.LEADING)


def medium_t_first_order(sys: CylinderPlate, bc, quantity) -> AsymptoticResult:
    """First-order correction to the medium-temperature thermal correction.

    Energy: a ``T^{3/2} r^{-1/2}`` term and an ``eps r^{1/2} T^{5/2}``
    term.  Force: ``-(pi L T^{5/2}/(6 sqrt2 sqrt(r))) (c zeta(-1/2) +
    zeta(3/2))`` with ``c = 10`` (Dirichlet) or ``-6`` (Neumann).  The
    force coefficient is the published closed form; it lacks the
    ``zeta(-3/2)`` factor that ``-d/da`` of the energy's eps term carries.
    """
    quantity = Quantity(quantity)
    L, r, T, eps = sys.length_l, sys.r, sys.T, sys.eps
    zm12, z12, z32, z52, zm32 = (_zeta(-0.5), _zeta(0.5), _zeta(1.5),
                                 _zeta(2.5), _zeta(-1.5))
    parts = []
    for part in _scalar_bcs(bc):
        neumann = part is BoundaryCondition.NEUMANN
        c0 = 18.0 if neumann else 2.0
        c1 = -6.0 if neumann else 10.0
        if quantity is Quantity.ENERGY:
            t0 = -T ** 1.5 * L / (24.0 * SQRT2 * math.sqrt(r)) * zm12 * (c0 * z12 - z52)
            t1 = eps * math.pi * L * math.sqrt(r) * T ** 2.5 / (6.0 * SQRT2) * zm32 * (c1 * zm12 + z32)
            parts.append([("T^1.5", t0), ("eps*T^2.5", t1)])
        else:
            t0 = -math.pi * L * T ** 2.5 / (6.0 * SQRT2 * math.sqrt(r)) * (c1 * zm12 + z32)
            parts.append([("T^2.5", t0)])
    return _combine(parts, Regime.MEDIUM_T, Order.FIRST_ORDER)


# ---------------------------------------------------------------------------
# high temperature (classical term)

def high_t_coefficient(bc, quantity, variant, eps: float) -> float:
    """First-order bracket ``c(eps)`` of the classical term, ``lead (1 + c eps)``.

    Dirichlet: energy 1/4, force 1/12 (residue first); summing over s
    first subtracts ``1/(2 zeta(3))`` and ``1/(6 zeta(3))``.  Neumann is
    only finite with ``SUM_FIRST`` and carries a ``log(eps)``.
    """
    bc = BoundaryCondition.parse(bc)
    quantity = Quantity(quantity)
    variant = Variant(variant)
    z3 = _zeta(3.0)
    energy = quantity is Quantity.ENERGY
    if bc is BoundaryCondition.PEC:
        raise ValueError("PEC has no single relative coefficient; use D and N")
    if bc is BoundaryCondition.DIRICHLET:
        c = 0.25 if energy else 1.0 / 12.0
        if variant is Variant.SUM_FIRST:
            c -= 1.0 / (2.0 * z3) if energy else 1.0 / (6.0 * z3)
        return c
    if variant is Variant.RESIDUE_FIRST:
        raise DivergentExpansionError(
            "Neumann classical first-order term diverges like sum 1/(s+1) "
            "unless the s-sum is taken first")
    log_eps = math.log(eps)
    if energy:
        return (2.0 * log_eps + z3 / 4.0 + 8.0 * math.log(2.0) - 2.0 * EULER_GAMMA + 0.5) / z3
    return 1.0 / 12.0 + (2.0 / 3.0 * log_eps + 8.0 / 3.0 * math.log(2.0)
                         - 2.0 / 3.0 * EULER_GAMMA - 7.0 / 6.0) / z3


def high_t_classical(sys: CylinderPlate, bc, order=Order.FIRST_ORDER,
                     variant=Variant.RESIDUE_FIRST,
                     quantity=Quantity.ENERGY) -> AsymptoticResult:
    """Classical (zero Matsubara frequency) asymptotics.

    Energy ``-zeta(3) L T sqrt(r)/(16 sqrt2 a^{3/2}) (1 + c eps)``; force
    ``-3 zeta(3) L T sqrt(r)/(32 sqrt2 a^{5/2}) (1 + c eps)``; see
    :func:`high_t_coefficient` for ``c``.
    """
    order = Order(order)
    variant = Variant(variant)
    quantity = Quantity(quantity)
    a, r, L, T = sys.a, sys.r, sys.length_l, sys.T
    z3 = _zeta(3.0)
    if quantity is Quantity.ENERGY:
        lead = -z3 * L * T * math.sqrt(r) / (16.0 * SQRT2 * a ** 1.5)
    else:
        lead = -3.0 * z3 * L * T * math.sqrt(r) / (32.0 * SQRT2 * a ** 2.5)
    parts = []
    for part in _scalar_bcs(bc):
        terms = [("leading", lead)]
        if order is Order.FIRST_ORDER:
            c = high_t_coefficient(part, quantity, variant, sys.eps)
            terms.append(("first_order", lead * c * sys.eps))
        parts.append(terms)
    return _combine(parts, Regime.HIGH_T, order, variant)


# ---------------------------------------------------------------------------

def regime_diagnostics(sys: CylinderPlate) -> dict:
    """``eps``, ``aT``, ``rT`` and an advisory regime label (threshold 1)."""
    aT = sys.a * sys.T
    rT = sys.r * sys.T
    if rT < 1.0:
        label = Regime.ZERO_T
    elif aT < 1.0:
        label = Regime.MEDIUM_T
    else:
        label = Regime.HIGH_T
    return {"eps": sys.eps, "aT": aT, "rT": rT, "regime": label}


def published_coefficients() -> dict[str, float]:
    """Numerical coefficients of the closed forms, keyed by what they multiply."""
    z = _zeta
    return {
        "medium_force_leading": 3.0 / (4.0 * SQRT2 * math.pi) * z(0.5) * z(3.5),
        "medium_energy_leading": -1.0 / (4.0 * SQRT2 * math.pi) * z(2.5) * z(1.5),
        "medium_force_eps": -15.0 / (4.0 * SQRT2 * math.pi) * z(-0.5) * z(4.5),
        "medium_force_first_order_D": -math.pi / (6.0 * SQRT2) * (10.0 * z(-0.5) + z(1.5)),
        "medium_force_first_order_N": -math.pi / (6.0 * SQRT2) * (-6.0 * z(-0.5) + z(1.5)),
        "classical_force_sum_first_D": 1.0 / 12.0 - 1.0 / (6.0 * z(3.0)),
    }
