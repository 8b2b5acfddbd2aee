"""Exact cylinder-plate interaction from the functional determinant.

For a frequency xi the round-trip matrix between cylinder (radius r,
axis at height H = a + r) and plate is, with j, k in [-m, m],

    Dirichlet  M_jk = I_k(r xi) K_{j+k}(2 H xi) / K_j(r xi)
    Neumann    M_jk = -I_k'(r xi) K_{j+k}(2 H xi) / K_j'(r xi)

and the force uses Q = -dM/da / (2 xi), which replaces K_{j+k} by
-K'_{j+k} (same prefactor).  Both are positive entry-wise.

Internally the matrices are never formed at full size.  They commute
with the index reflection j -> -j, so det(1 - M) factors into an even
block (indices 0..m) and an odd block (1..m).  A diagonal similarity
makes both blocks symmetric, and indices whose diagonal amplitude is
negligible at the current frequency are dropped.  Frequencies are
integrated in the dimensionless variable u = a xi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConvergenceError, DomainError, QuadratureError
from .geometry import BoundaryCondition, ConvergenceReport, CylinderPlate, NumericsConfig
from .quadrature import integrate
from .specfun import log_bessel_ik

__all__ = [
    "ScatteringMatrix",
    "QMatrix",
    "build_m",
    "build_q",
    "tr_log_one_minus",
    "initial_truncation",
    "energy_zero_t",
    "energy_finite_t",
    "classical_term",
    "force_exact",
    "thermal_correction",
]

_LOG_MAX = math.log(np.finfo(float).max)
_SQRT_HALF = math.sqrt(0.5)
# ln det(1 - M) may come out a few ulps above zero for tiny M
_DET_SLACK = 1e-12


@dataclass(frozen=True)
class ScatteringMatrix:
    """Dense M(xi) with rows/columns ordered j = -m_max .. m_max."""

    m_max: int
    xi: float
    bc: BoundaryCondition
    entries: np.ndarray

    def entry(self, j: int, k: int) -> float:
        return float(self.entries[j + self.m_max, k + self.m_max])


@dataclass(frozen=True)
class QMatrix(ScatteringMatrix):
    """Dense Q(xi); same layout as :class:`ScatteringMatrix`."""


def _scalar_bc(bc):
    bc = BoundaryCondition.parse(bc)
    if bc is BoundaryCondition.PEC:
        raise DomainError("matrices exist for Dirichlet or Neumann only; PEC is their sum")
    return bc


def _log_factors(sys, bc, kappa, m, with_q):
    """Row/column log-factors A_k, B_j and plate factors C_n (and D_n)."""
    x1 = sys.r * kappa
    x2 = 2.0 * sys.H * kappa
    if bc is BoundaryCondition.DIRICHLET:
        li, lk = log_bessel_ik(m, x1)
        A, B = li, -lk
    else:
        _, _, ldi, ldk = log_bessel_ik(m, x1, derivs=True)
        A, B = ldi, -ldk
    if with_q:
        _, C, _, D = log_bessel_ik(2 * m, x2, derivs=True)
    else:
        _, C = log_bessel_ik(2 * m, x2)
        D = None
    return A, B, C, D


def _dense(sys, bc, xi, m_max, use_q):
    bc = _scalar_bc(bc)
    if not xi > 0:
        raise DomainError(f"frequency must be positive, got {xi!r}")
    m = int(m_max)
    if m < 0:
        raise DomainError("m_max must be non-negative")
    A, B, C, D = _log_factors(sys, bc, np.array([float(xi)]), m, use_q)
    A, B, P = A[0], B[0], (D if use_q else C)[0]
    idx = np.arange(-m, m + 1)
    j = np.abs(idx)[:, None]
    k = np.abs(idx)[None, :]
    logs = A[k] + B[j] + P[np.abs(idx[:, None] + idx[None, :])]
    if np.max(logs) > _LOG_MAX:
        raise OverflowError(
            f"matrix entry overflows at xi={xi:g}, m_max={m}; reduce m_max or change xi")
    return bc, np.exp(logs)


def build_m(sys: CylinderPlate, bc, xi: float, m_max: int) -> ScatteringMatrix:
    """Full (2 m_max + 1)-dimensional round-trip matrix at frequency ``xi``."""
    bc, entries = _dense(sys, bc, xi, m_max, use_q=False)
    return ScatteringMatrix(int(m_max), float(xi), bc, entries)


def build_q(sys: CylinderPlate, bc, xi: float, m_max: int) -> QMatrix:
    """Full force matrix Q at frequency ``xi``."""
    bc, entries = _dense(sys, bc, xi, m_max, use_q=True)
    return QMatrix(int(m_max), float(xi), bc, entries)


def _checked_logdet(mat):
    sign, logdet = np.linalg.slogdet(np.eye(mat.shape[0]) - mat)
    if sign <= 0 or not math.isfinite(logdet) or logdet > _DET_SLACK:
        det = sign * math.exp(min(logdet, _LOG_MAX)) if math.isfinite(logdet) else sign
        raise ConvergenceError(f"det(1 - M) = {det:.6g} is outside (0, 1]")
    return min(float(logdet), 0.0)


def tr_log_one_minus(mat) -> float:
    """``ln det(1 - M)`` by pivoted LU.

    Raises
    ------
    ConvergenceError
        if ``det(1 - M)`` is not in ``(0, 1]``.
    """
    a = mat.entries if isinstance(mat, ScatteringMatrix) else np.asarray(mat, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    return _checked_logdet(a)


def initial_truncation(sys: CylinderPlate, cfg: NumericsConfig) -> int:
    if cfg.m_max is not None:
        return int(cfg.m_max)
    return max(1, math.ceil(cfg.m_constant / math.sqrt(sys.eps)))


class _Kernel:
    """Evaluates ln det(1 - M) and Tr[(1 - M)^-1 Q] at arrays of frequencies."""

    def __init__(self, sys, bc, m, trim_tol):
        self.sys = sys
        self.bc = bc
        self.m = m
        self.log_trim = math.log(trim_tol) if trim_tol > 0 else -math.inf
        self.det_min = 1.0
        self.det_max = 0.0

    def _blocks(self, half, P, lo, hi):
        # indices lo..hi; Hankel P[j + k] and Toeplitz P[|j - k|] as strided views
        n = hi - lo + 1
        h = half[lo:hi + 1]
        logs_s = h[:, None] + h[None, :]
        logs_plus = logs_s + sliding_window_view(P[2 * lo:2 * hi + 1], n)
        if np.max(logs_plus) > _LOG_MAX:
            raise OverflowError("scattering amplitudes overflow at this frequency")
        v = np.concatenate((P[n - 1:0:-1], P[:n]))
        plus = np.exp(logs_plus, out=logs_plus)
        logs_s += sliding_window_view(v, n)[:, ::-1]
        minus = np.exp(logs_s, out=logs_s)
        even = plus + minus
        plus -= minus
        if lo == 0:
            even[0, :] *= _SQRT_HALF
            even[:, 0] *= _SQRT_HALF
            return even, plus[1:, 1:]
        return even, plus

    def _prepare(self, kappa, with_q):
        return _log_factors(self.sys, self.bc, kappa, self.m, with_q)

    def _window(self, A, B, C):
        """Index window shared by a batch of frequencies.

        Holds every diagonal amplitude above ``trim_tol`` (an absolute
        threshold, amplitudes being below 1) and each frequency's largest
        one.  One window per batch keeps the integrand smooth across the
        nodes of a quadrature panel.
        """
        logdiag = A + B + C[:, ::2]
        top = np.max(logdiag, axis=1, keepdims=True)
        keep = np.nonzero(np.any(logdiag >= np.minimum(top, self.log_trim), axis=0))[0]
        return int(keep[0]), int(keep[-1])

    def _logdet(self, mat):
        if mat.size == 0:
            return 0.0
        val = _checked_logdet(mat)
        d = math.exp(val)
        self.det_min = min(self.det_min, d)
        self.det_max = max(self.det_max, d)
        return val

    def lndet(self, kappa):
        kappa = np.asarray(kappa, dtype=float)
        A, B, C, _ = self._prepare(kappa, False)
        lo, hi = self._window(A, B, C)
        out = np.empty(kappa.shape[0])
        for i in range(kappa.shape[0]):
            half = 0.5 * (A[i] + B[i])
            even, odd = self._blocks(half, C[i], lo, hi)
            out[i] = self._logdet(even) + self._logdet(odd)
        return out

    def trace(self, kappa):
        kappa = np.asarray(kappa, dtype=float)
        A, B, C, D = self._prepare(kappa, True)
        lo, hi = self._window(A, B, C)
        out = np.empty(kappa.shape[0])
        for i in range(kappa.shape[0]):
            half = 0.5 * (A[i] + B[i])
            even, odd = self._blocks(half, C[i], lo, hi)
            qeven, qodd = self._blocks(half, D[i], lo, hi)
            tr = 0.0
            for mat, q in ((even, qeven), (odd, qodd)):
                if mat.size:
                    self._logdet(mat)
                    tr += float(np.trace(np.linalg.solve(np.eye(mat.shape[0]) - mat, q)))
            out[i] = tr
        return out


def _u_cut(cfg):
    # integrands decay like exp(-2u) times powers of u
    return 0.5 * math.log(1.0 / cfg.quad_tol) + 10.0


def _points(lo, hi):
    pts = [0.0]
    s = lo
    while s < hi:
        pts.append(s)
        s *= 2.0
    pts.append(hi)
    return pts


def _integrate(f, pts, cfg, report, abs_tol=0.0):
    try:
        val, err = integrate(f, pts, rel_tol=cfg.quad_tol, abs_tol=abs_tol,
                             max_intervals=cfg.max_intervals)
    except QuadratureError as exc:
        report.converged = False
        report.notes.append(str(exc))
        val, err = exc.value, exc.error
    report.quadrature_estimated_error += err
    return val


def _matsubara_integral(kernel, sys, cfg, l, quantity, report, scale=0.0):
    """Dimensionless integral over v = a k of the l-th Matsubara term.

    ``scale`` is the size of the partial sum; the term is only needed to
    ``quad_tol`` relative to it.
    """
    a = sys.a
    ul = 2.0 * math.pi * l * sys.T * a
    uc = _u_cut(cfg)
    vcut = math.sqrt((ul + uc) ** 2 - ul * ul)
    lo = sys.eps / 64.0 if l == 0 else min(1.0, math.sqrt(ul)) / 16.0

    if quantity == "energy":
        def f(v):
            return kernel.lndet(np.sqrt(ul * ul + v * v) / a)
    else:
        def f(v):
            rho = np.sqrt(ul * ul + v * v)
            return rho * kernel.trace(rho / a)

    return _integrate(f, _points(lo, vcut), cfg, report, cfg.quad_tol * scale)


def _zero_t_integral(kernel, sys, cfg, quantity, report):
    a = sys.a
    if quantity == "energy":
        def f(u):
            return u * kernel.lndet(u / a)
    else:
        def f(u):
            return u * u * kernel.trace(u / a)
    return _integrate(f, _points(sys.eps / 64.0, _u_cut(cfg)), cfg, report)


def _with_truncation(sys, cfg, compute):
    """Run ``compute(m, report)`` with m doubled until it settles."""
    m = initial_truncation(sys, cfg)
    report = ConvergenceReport()
    val = compute(m, report)
    report.m_max_used = m
    if cfg.m_max is not None:
        report.notes.append("fixed truncation; no doubling check")
        return val, report
    while True:
        m2 = 2 * m
        if m2 > cfg.m_max_cap:
            report.converged = False
            report.notes.append(
                f"truncation cap {cfg.m_max_cap} reached with delta {report.last_doubling_delta:.3g}")
            return val, report
        trial = ConvergenceReport()
        val2 = compute(m2, trial)
        delta = abs(val2 - val) / abs(val2) if val2 != 0 else abs(val2 - val)
        report = report.merge(trial)
        report.m_max_used = m2
        report.last_doubling_delta = delta
        val, m = val2, m2
        if delta < cfg.rel_tol:
            return val, report


def _scalar(sys, cfg, compute_one, bc):
    """Evaluate a scalar-field quantity; PEC is the Dirichlet + Neumann sum."""
    bc = BoundaryCondition.parse(bc)
    total = []
    report = None
    for part in bc.scalar_parts:
        val, rep = compute_one(part)
        total.append(val)
        report = rep if report is None else report.merge(rep)
    return math.fsum(total), report


def _zero_t(sys, bc, cfg, quantity):
    cfg = cfg or NumericsConfig()

    def one(part):
        def compute(m, report):
            kernel = _Kernel(sys, part, m, cfg.trim_tol)
            val = _zero_t_integral(kernel, sys, cfg, quantity, report)
            report.absorb_det(kernel.det_min, kernel.det_max)
            return val
        return _with_truncation(sys, cfg, compute)

    val, report = _scalar(sys, cfg, one, bc)
    L, a = sys.length_l, sys.a
    if quantity == "energy":
        return L / (4.0 * math.pi * a * a) * val, report
    return -L / (2.0 * math.pi * a ** 3) * val, report


def energy_zero_t(sys: CylinderPlate, bc, cfg: NumericsConfig | None = None):
    """Zero-temperature energy ``(L/4pi) int xi ln det(1 - M(xi)) dxi``.

    Returns ``(energy, ConvergenceReport)``.
    """
    return _zero_t(sys, bc, cfg, "energy")


def _finite_t(sys, bc, cfg, quantity, classical_only=False):
    cfg = cfg or NumericsConfig()
    if not sys.T > 0:
        raise DomainError("finite-temperature sums need T > 0")

    def one(part):
        m_holder = {}

        def compute_l0(m, report):
            kernel = _Kernel(sys, part, m, cfg.trim_tol)
            val = _matsubara_integral(kernel, sys, cfg, 0, quantity, report)
            report.absorb_det(kernel.det_min, kernel.det_max)
            m_holder["m"] = m
            return val

        term0, report = _with_truncation(sys, cfg, compute_l0)
        terms = [0.5 * term0]
        report.l_max_used = 0
        if classical_only:
            return math.fsum(terms), report
        kernel = _Kernel(sys, part, report.m_max_used, cfg.trim_tol)
        l = 1
        while True:
            if l > cfg.l_max:
                report.converged = False
                report.notes.append(f"Matsubara cutoff {cfg.l_max} reached")
                break
            t = _matsubara_integral(kernel, sys, cfg, l, quantity, report, abs(math.fsum(terms)))
            terms.append(t)
            report.l_max_used = l
            if abs(t) < cfg.rel_tol * abs(math.fsum(terms)):
                break
            l += 1
        report.absorb_det(kernel.det_min, kernel.det_max)
        # smallest terms first for a fixed, accurate summation order
        return math.fsum(sorted(terms, key=abs)), report

    val, report = _scalar(sys, cfg, one, bc)
    L, a, T = sys.length_l, sys.a, sys.T
    if quantity == "energy":
        return T * L / (math.pi * a) * val, report
    return -2.0 * T * L / (math.pi * a * a) * val, report


def energy_finite_t(sys: CylinderPlate, bc, cfg: NumericsConfig | None = None):
    """Matsubara-sum energy at ``T > 0``.

    Each term is ``(TL/pi) int_0^inf ln det(1 - M(sqrt(xi_l^2 + k^2))) dk``
    with ``xi_l = 2 pi l T``; the ``l = 0`` term has weight 1/2.  The
    truncation order found for ``l = 0`` is reused for ``l >= 1``.
    """
    return _finite_t(sys, bc, cfg, "energy")


def classical_term(sys: CylinderPlate, bc, cfg: NumericsConfig | None = None):
    """Zero-frequency part ``(TL/2pi) int ln det(1 - M(xi)) dxi``; linear in T."""
    return _finite_t(sys, bc, cfg, "energy", classical_only=True)


def force_exact(sys: CylinderPlate, bc, T: float | None = None,
                cfg: NumericsConfig | None = None):
    """Exact force ``-dE/da`` (negative means attraction).

    At ``T = 0`` this is ``-(L/2pi) int xi^2 Tr[(1 - M)^-1 Q] dxi``; at
    ``T > 0`` each Matsubara term is ``-(2TL/pi) int kappa Tr[...] dk``
    with ``kappa = sqrt(xi_l^2 + k^2)``.
    """
    if T is not None:
        sys = sys.with_temperature(T)
    if sys.T == 0:
        return _zero_t(sys, bc, cfg, "force")
    return _finite_t(sys, bc, cfg, "force")


def thermal_correction(sys: CylinderPlate, bc, cfg: NumericsConfig | None = None):
    """``E(T) - E(0)`` at fixed geometry."""
    e_t, rep_t = energy_finite_t(sys, bc, cfg)
    e_0, rep_0 = energy_zero_t(sys.with_temperature(0.0), bc, cfg)
    return e_t - e_0, rep_t.merge(rep_0)
