"""Casimir force and energy densities between parallel Dirichlet (or
Neumann) plates at finite temperature.

Each density has two exact representations: a low-temperature series in
``exp(-pi k l / (d T))`` and a high-temperature series in
``exp(-4 pi k l d T)``.  Both are evaluated by summing the double series
over a growing square of ``(k, l)`` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .specfun import riemann_zeta

ZETA3 = riemann_zeta(3.0)
SERIES_TOL = 1e-14
_K_CAP = 2048


@dataclass(frozen=True)
class PlateGap:
    d: float
    T: float = 0.0

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError(f"plate separation must be positive, got {self.d!r}")
        if not self.T >= 0:
            raise DomainError(f"temperature must be non-negative, got {self.T!r}")


def _square_sum(term, leading, series_tol):
    """Sum ``term(k, l)`` over k, l >= 1.

    The square [1, K]^2 is doubled until every term on its outer border
    is below ``series_tol`` relative to the running total.
    """
    K = 4
    while True:
        idx = np.arange(1, K + 1, dtype=float)
        partial = float(np.sum(term(idx[:, None], idx[None, :])))
        total = leading + partial
        edge = np.arange(1, K + 2, dtype=float)
        border = max(np.max(np.abs(term(edge, K + 1.0))),
                     np.max(np.abs(term(K + 1.0, edge))))
        if border <= series_tol * abs(total):
            return total
        if K >= _K_CAP:
            raise ConvergenceError(
                f"double series not converged at K={K} (border term {border:.3g})")
        K *= 2


def force_density_lowT(gap: PlateGap, series_tol: float = SERIES_TOL) -> float:
    """Force per unit area, series in ``exp(-pi k l/(dT))``."""
    d, T = gap.d, gap.T
    leading = -math.pi ** 2 / (480.0 * d ** 4)
    if T == 0:
        return leading
    leading -= math.pi ** 2 * T ** 4 / 90.0
    if math.pi > 700.0 * d * T:
        return leading  # every exponential below e^-700
    c = math.pi / (d * T)
    pref = math.pi * T / (2.0 * d ** 3)

    def term(k, l):
        return pref * k * k / l * np.exp(-c * k * l)

    return _square_sum(term, leading, series_tol)


def force_density_highT(gap: PlateGap, series_tol: float = SERIES_TOL) -> float:
    """Force per unit area, series in ``exp(-4 pi k l d T)``; needs T > 0."""
    d, T = gap.d, gap.T
    if T == 0:
        raise DomainError("the high-temperature representation needs T > 0")
    leading = -ZETA3 * T / (8.0 * math.pi * d ** 3)
    c = 4.0 * math.pi * d * T

    def term(k, l):
        poly = (2.0 * math.pi ** 2 * l * l * T * T / (k * d)
                + math.pi * l * T / (k * k * d * d)
                + 1.0 / (4.0 * k ** 3 * d ** 3))
        return -(T / math.pi) * poly * np.exp(-c * k * l)

    return _square_sum(term, leading, series_tol)


def energy_density_lowT(gap: PlateGap, series_tol: float = SERIES_TOL) -> float:
    """Energy per unit area, series in ``exp(-pi k l/(dT))``."""
    d, T = gap.d, gap.T
    leading = -math.pi ** 2 / (1440.0 * d ** 3)
    if T == 0:
        return leading
    # the d-independent -zeta(3) T^3/(4 pi) makes the energy vanish as d -> inf,
    # matching the high-temperature form
    leading += math.pi ** 2 * d * T ** 4 / 90.0 - ZETA3 * T ** 3 / (4.0 * math.pi)
    if math.pi > 700.0 * d * T:
        return leading
    c = math.pi / (d * T)

    def term(k, l):
        return -(k * T * T / (2.0 * l * l * d) + T ** 3 / (2.0 * math.pi * l ** 3)) * np.exp(-c * k * l)

    return _square_sum(term, leading, series_tol)


def energy_density_highT(gap: PlateGap, series_tol: float = SERIES_TOL) -> float:
    """Energy per unit area, series in ``exp(-4 pi k l d T)``; needs T > 0."""
    d, T = gap.d, gap.T
    if T == 0:
        raise DomainError("the high-temperature representation needs T > 0")
    leading = -T * ZETA3 / (16.0 * math.pi * d * d)
    c = 4.0 * math.pi * d * T

    def term(k, l):
        poly = math.pi * l * T / (2.0 * k * k * d) + 1.0 / (8.0 * k ** 3 * d * d)
        return -(T / math.pi) * poly * np.exp(-c * k * l)

    return _square_sum(term, leading, series_tol)


def prefers_lowT(gap: PlateGap) -> bool:
    """True where the low-temperature series needs fewer terms (dT < 1/pi)."""
    return gap.T == 0 or gap.d * gap.T < 1.0 / math.pi


def force_density(gap: PlateGap, series_tol: float = SERIES_TOL) -> float:
    if prefers_lowT(gap):
        return force_density_lowT(gap, series_tol)
    return force_density_highT(gap, series_tol)


def energy_density(gap: PlateGap, series_tol: float = SERIES_TOL) -> float:
    if prefers_lowT(gap):
        return energy_density_lowT(gap, series_tol)
    return energy_density_highT(gap, series_tol)
