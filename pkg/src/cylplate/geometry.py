"""Geometry, boundary conditions and numerics settings."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DomainError


class BoundaryCondition(enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    PEC = "pec"  # perfect conductor: Dirichlet + Neumann

    @classmethod
    def parse(cls, value) -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown boundary condition {value!r}") from None

    @property
    def scalar_parts(self) -> tuple["BoundaryCondition", ...]:
        if self is BoundaryCondition.PEC:
            return (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN)
        return (self,)


@dataclass(frozen=True)
class CylinderPlate:
    """Cylinder of radius ``r`` and length ``length_l`` at closest
    distance ``a`` from a plate, at temperature ``T`` (natural units)."""

    a: float
    r: float
    length_l: float = 1.0
    T: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"separation a must be positive, got {self.a!r}")
        if not self.r > 0:
            raise DomainError(f"radius r must be positive, got {self.r!r}")
        if not self.length_l > 0:
            raise DomainError(f"length must be positive, got {self.length_l!r}")
        if not self.T >= 0:
            raise DomainError(f"temperature must be non-negative, got {self.T!r}")

    @property
    def H(self) -> float:
        """Distance from the cylinder axis to the plate."""
        return self.a + self.r

    @property
    def eps(self) -> float:
        return self.a / self.r

    def with_temperature(self, T: float) -> "CylinderPlate":
        return CylinderPlate(self.a, self.r, self.length_l, T)

    def with_separation(self, a: float) -> "CylinderPlate":
        return CylinderPlate(a, self.r, self.length_l, self.T)


@dataclass(frozen=True)
class NumericsConfig:
    """Truncation and tolerance controls for the exact engine.

    ``m_max=None`` selects the initial truncation ``ceil(C/sqrt(eps))``.
    Indices whose diagonal scattering amplitude stays below ``trim_tol``
    across a quadrature panel are dropped from that panel's determinants.
    """

    m_max: int | None = None
    m_max_cap: int = 4096
    m_constant: float = 10.0
    l_max: int = 100_000
    rel_tol: float = 1e-6
    quad_tol: float = 1e-8
    trim_tol: float = 1e-12
    max_intervals: int = 4000

    def __post_init__(self):
        if self.m_max is not None and self.m_max < 0:
            raise DomainError("m_max must be non-negative")
        if not self.rel_tol > 0 or not self.quad_tol > 0:
            raise DomainError("tolerances must be positive")


@dataclass
class ConvergenceReport:
    m_max_used: int = 0
    l_max_used: int = 0
    last_doubling_delta: float = 0.0
    quadrature_estimated_error: float = 0.0
    converged: bool = True
    det_min: float = 1.0
    det_max: float = 0.0
    notes: list[str] = field(default_factory=list)

    def absorb_det(self, dmin: float, dmax: float):
        self.det_min = min(self.det_min, dmin)
        self.det_max = max(self.det_max, dmax)

    def merge(self, other: "ConvergenceReport") -> "ConvergenceReport":
        out = ConvergenceReport(
            m_max_used=max(self.m_max_used, other.m_max_used),
            l_max_used=max(self.l_max_used, other.l_max_used),
            last_doubling_delta=max(self.last_doubling_delta, other.last_doubling_delta),
            quadrature_estimated_error=self.quadrature_estimated_error
            + other.quadrature_estimated_error,
            converged=self.converged and other.converged,
            det_min=min(self.det_min, other.det_min),
            det_max=max(self.det_max, other.det_max),
            notes=self.notes + other.notes,
        )
        return out
