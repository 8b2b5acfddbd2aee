"""Real-argument special functions: modified Bessel I_n, K_n of integer
order, Riemann zeta and Gamma.

The Bessel routines work in log space.  ``K_n`` is obtained by upward
recurrence of the ratio ``K_{n+1}/K_n`` starting from ``K_0``, ``K_1``
(power series for ``x <= 2``, Steed's continued fraction otherwise), and
``I_n`` follows from the Wronskian

    I_n K_{n+1} + I_{n+1} K_n = 1/x

once the ratio ``I_{n+1}/I_n`` is known from a backward (Miller type)
recurrence.  Both recurrences run in their stable direction, so the
logarithms stay accurate for orders in the thousands and for arguments
where the functions themselves over- or underflow.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError

__all__ = [
    "BesselPair",
    "bessel_i",
    "bessel_k",
    "bessel_i_deriv",
    "bessel_k_deriv",
    "bessel_pair",
    "log_bessel_ik",
    "riemann_zeta",
    "gamma_fn",
    "UnderflowWarning",
]

EULER_GAMMA = 0.57721566490153286061
_LOG_MAX = math.log(np.finfo(float).max)
_LOG_TINY = math.log(5e-324)
_EPS = np.finfo(float).eps


class UnderflowWarning(RuntimeWarning):
    """K_n(x) is below the smallest representable float and was set to 0."""


# ---------------------------------------------------------------------------
# K_0 and K_1, exponentially scaled

def _k01_series(x):
    # small-argument expansions, x <= 2
    t = 0.25 * x * x
    lg = math.log(0.5 * x)
    term0 = 1.0         # t^k / (k!)^2
    term1 = 1.0         # t^k / (k! (k+1)!)
    harm = 0.0          # H_k
    i0 = 1.0
    i1s = 1.0
    k0tail = 0.0
    k1tail = 2.0 * (-EULER_GAMMA) + 1.0     # psi(1) + psi(2)
    k = 0
    while True:
        k += 1
        term0 *= t / (k * k)
        term1 *= t / (k * (k + 1))
        harm += 1.0 / k
        i0 += term0
        i1s += term1
        k0tail += term0 * harm
        k1tail += term1 * (2.0 * (harm - EULER_GAMMA) + 1.0 / (k + 1))
        if term0 < _EPS * 1e-3 * i0 and term1 < _EPS * 1e-3 * i1s:
            break
    i1 = 0.5 * x * i1s
    k0 = -(lg + EULER_GAMMA) * i0 + k0tail
    k1 = 1.0 / x + lg * i1 - 0.25 * x * k1tail
    scale = math.exp(x)
    return k0 * scale, k1 * scale


def _k01_steed(x):
    # Steed's continued fraction (Temme's normalisation), order 0, x > 2
    a1 = 0.25
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 10000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS * 0.5:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def _k01_scaled(x: float) -> tuple[float, float]:
    """Return ``(e^x K_0(x), e^x K_1(x))`` for scalar x > 0."""
    if x <= 2.0:
        return _k01_series(x)
    return _k01_steed(x)


# ---------------------------------------------------------------------------
# order ranges in log space

def _k_ratios(nmax, x, lk0, lk1):
    # r[:, n] = K_{n+1}/K_n, n = 0..nmax
    p = x.shape[0]
    r = np.empty((p, nmax + 1))
    r[:, 0] = np.exp(lk1 - lk0)
    for n in range(1, nmax + 1):
        r[:, n] = 1.0 / r[:, n - 1] + (2.0 * n) / x
    return r


def _i_ratios(nmax, x):
    # rho[:, n] = I_{n+1}/I_n, n = 0..nmax, by backward recurrence
    xmax = float(np.max(x))
    nstart = nmax + 20 + int(math.sqrt(60.0 * xmax + (nmax + 20) ** 2) - (nmax + 20)) + 10
    m = nstart + 1.0
    rho = x / (m + np.sqrt(m * m + x * x))
    out = np.empty((x.shape[0], nmax + 1))
    for n in range(nstart - 1, -1, -1):
        rho = x / (2.0 * (n + 1) + x * rho)
        if n <= nmax:
            out[:, n] = rho
    return out


def log_bessel_ik(nmax: int, x, derivs: bool = False):
    """Logarithms of I_n(x) and K_n(x) for ``n = 0..nmax``.

    Parameters
    ----------
    nmax : int
        highest order required
    x : float or array_like
        positive arguments, shape ``(p,)``
    derivs : bool
        also return ``log I_n'(x)`` and ``log |K_n'(x)|``

    Returns
    -------
    tuple of ndarray
        ``(log_i, log_k)`` or ``(log_i, log_k, log_di, log_dk)``, each of
        shape ``(p, nmax + 1)`` (``(nmax + 1,)`` for scalar x).
    """
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)):
        raise DomainError("Bessel functions need x > 0")
    nmax = int(nmax)
    if nmax < 0:
        raise DomainError("nmax must be non-negative")

    p = x.shape[0]
    lk0 = np.empty(p)
    lk1 = np.empty(p)
    for i, xi in enumerate(x):
        k0s, k1s = _k01_scaled(float(xi))
        lk0[i] = math.log(k0s) - xi
        lk1[i] = math.log(k1s) - xi

    r = _k_ratios(nmax + 1, x, lk0, lk1)
    log_k = np.empty((p, nmax + 2))
    log_k[:, 0] = lk0
    log_k[:, 1:] = lk0[:, None] + np.cumsum(np.log(r[:, :nmax + 1]), axis=1)
    rho = _i_ratios(nmax + 1, x)

    # Wronskian: I_n = 1 / (x K_n (r_n + rho_n))
    log_i = -np.log(x)[:, None] - log_k[:, :nmax + 2] - np.log(r[:, :nmax + 2] + rho[:, :nmax + 2])
    li = log_i[:, :nmax + 1]
    lk = log_k[:, :nmax + 1]

    if not derivs:
        if scalar:
            return li[0], lk[0]
        return li, lk

    log_di = np.empty_like(li)
    log_dk = np.empty_like(lk)
    log_di[:, 0] = log_i[:, 1]
    log_dk[:, 0] = log_k[:, 1]
    if nmax >= 1:
        n = slice(1, nmax + 1)
        m = slice(0, nmax)
        log_di[:, n] = li[:, n] + np.log(0.5 * (1.0 / rho[:, m] + rho[:, n]))
        log_dk[:, n] = lk[:, n] + np.log(0.5 * (1.0 / r[:, m] + r[:, n]))
    if scalar:
        return li[0], lk[0], log_di[0], log_dk[0]
    return li, lk, log_di, log_dk


# ---------------------------------------------------------------------------
# scalar Bessel interface

@dataclass(frozen=True)
class BesselPair:
    """I_n, K_n and their derivatives at a single (order, argument)."""

    order: int
    argument: float
    i_value: float
    k_value: float
    i_deriv: float
    k_deriv: float
    k_underflow: bool = False

    @property
    def wronskian(self) -> float:
        return self.i_value * self.k_deriv - self.i_deriv * self.k_value


def _check(n, x):
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    n = abs(int(n))
    if n > 10_000:
        raise DomainError(f"order {n} exceeds 10000")
    return n, float(x)


def _exp_or_raise(v, what):
    if v > _LOG_MAX:
        raise OverflowError(f"{what} exceeds the floating point range (log = {v:.6g})")
    return math.exp(v)


def _scalar_logs(n, x):
    li, lk, ldi, ldk = log_bessel_ik(n, x, derivs=True)
    return li[n], lk[n], ldi[n], ldk[n]


def bessel_pair(n: int, x: float) -> BesselPair:
    n, x = _check(n, x)
    li, lk, ldi, ldk = _scalar_logs(n, x)
    under = lk < _LOG_TINY
    return BesselPair(
        order=n,
        argument=x,
        i_value=_exp_or_raise(li, f"I_{n}({x})"),
        k_value=_exp_or_raise(lk, f"K_{n}({x})"),
        i_deriv=_exp_or_raise(ldi, f"I_{n}'({x})"),
        k_deriv=-_exp_or_raise(ldk, f"K_{n}'({x})"),
        k_underflow=bool(under),
    )


def bessel_i(n: int, x: float) -> float:
    """Modified Bessel function of the first kind, integer order."""
    n, x = _check(n, x)
    return _exp_or_raise(_scalar_logs(n, x)[0], f"I_{n}({x})")


def bessel_k(n: int, x: float) -> float:
    """Modified Bessel function of the second kind, integer order.

    Values below the float range are returned as 0.0 with an
    :class:`UnderflowWarning`.
    """
    n, x = _check(n, x)
    lk = _scalar_logs(n, x)[1]
    if lk < _LOG_TINY:
        warnings.warn(f"K_{n}({x}) underflows", UnderflowWarning, stacklevel=2)
        return 0.0
    return _exp_or_raise(lk, f"K_{n}({x})")


def bessel_i_deriv(n: int, x: float) -> float:
    n, x = _check(n, x)
    return _exp_or_raise(_scalar_logs(n, x)[2], f"I_{n}'({x})")


def bessel_k_deriv(n: int, x: float) -> float:
    n, x = _check(n, x)
    ldk = _scalar_logs(n, x)[3]
    if ldk < _LOG_TINY:
        return -0.0
    return -_exp_or_raise(ldk, f"K_{n}'({x})")


# ---------------------------------------------------------------------------
# Gamma and zeta

def gamma_fn(x: float) -> float:
    """Gamma function at real, non-pole x."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x:g}")
    return math.gamma(x)


def _bernoulli_even(count):
    # B_2, B_4, ..., B_{2 count} via the Akiyama-Tanigawa algorithm
    nmax = 2 * count
    a = [Fraction(0)] * (nmax + 1)
    out = []
    for m in range(nmax + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return out


_EM_TERMS = 16
_EM_N = 20
_EM_COEF = [
    float(b) / math.factorial(2 * k)
    for k, b in enumerate(_bernoulli_even(_EM_TERMS), start=1)
]


def _zeta_em(s):
    # Euler-Maclaurin summation, valid for real s != 1 with s > -1
    n = _EM_N
    head = math.fsum(j ** -s for j in range(1, n))
    tail = n ** (1.0 - s) / (s - 1.0) + 0.5 * n ** -s
    poch = s                 # s (s+1) ... (s + 2k - 2)
    pw = n ** (-s - 1.0)
    corr = []
    for k, c in enumerate(_EM_COEF, start=1):
        term = c * poch * pw
        corr.append(term)
        if abs(term) < 1e-18 * abs(head):
            break
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        pw /= n * n
    return head + tail + math.fsum(corr)


def _sin_pi(x):
    # sin(pi x) with exact argument reduction
    k = round(x)
    return (-1.0) ** (k % 2) * math.sin(math.pi * (x - k))


def riemann_zeta(s: float) -> float:
    """Riemann zeta at real s != 1 (functional equation for s < 0)."""
    s = float(s)
    if s == 1.0:
        raise PoleError("zeta has a pole at s = 1")
    if s >= 0.0:
        return _zeta_em(s)
    if s == math.floor(s) and int(s) % 2 == 0:
        return 0.0
    # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    return (2.0 ** s * math.pi ** (s - 1.0) * _sin_pi(0.5 * s)
            * math.gamma(1.0 - s) * _zeta_em(1.0 - s))
