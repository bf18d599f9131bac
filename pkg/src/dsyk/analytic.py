"""Closed-form large-q results for the dissipative Krylov chain.

The solvable chain has b_n^2 = (1-u^2) n (n-1+eta), a_n = i u (2n+eta)
(Meixner polynomial coefficients); for SYK eta = 2/q and 2u = mu_tilde.
This module provides the autocorrelation g(t), the exact wavefunction,
K-complexity and variance, and the continuum crossover predictions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ValidationError
from .krylov import TridiagonalCoeffs


@dataclass(frozen=True)
class MeixnerParams:
    """Dissipation parameter u in [0, 1) and chain offset eta > 0."""

    u: float
    eta: float

    def __post_init__(self):
        if not 0.0 <= self.u < 1.0:
            raise ValidationError(f"u={self.u} must lie in [0, 1)")
        if self.eta <= 0.0:
            raise ValidationError(f"eta={self.eta} must be positive")

    @property
    def j_script_sq(self) -> float:
        return 1.0 - self.u ** 2

    @property
    def chi_mu(self) -> float:
        return 2.0 * self.u

    @property
    def mu_tilde(self) -> float:
        return 2.0 * self.u


def meixner_tridiagonal(p: MeixnerParams, n_max: int) -> TridiagonalCoeffs:
    """Chain coefficients a_n = iu(2n+eta), b_n^2 = (1-u^2) n (n-1+eta)."""
    ns = np.arange(n_max + 1)
    a = list(1j * p.u * (2 * ns + p.eta))
    b_sq = [(1.0 - p.u ** 2) * n * (n - 1 + p.eta) for n in range(1, n_max + 1)]
    b = [math.sqrt(v) for v in b_sq]
    return TridiagonalCoeffs(a=a, b=b, b_sq=b_sq)


def meixner_tridiagonal_exact(u, eta, n_max: int) -> TridiagonalCoeffs:
    """Exact-arithmetic chain coefficients; u, eta should be sympy Rationals."""
    import sympy as sp

    u = sp.nsimplify(u, rational=True)
    eta = sp.nsimplify(eta, rational=True)
    a = [sp.I * u * (2 * n + eta) for n in range(n_max + 1)]
    b_sq = [(1 - u ** 2) * n * (n - 1 + eta) for n in range(1, n_max + 1)]
    b = [sp.sqrt(v) for v in b_sq]
    return TridiagonalCoeffs(a=a, b=b, b_sq=b_sq)


def g_function(t, j_script=1.0, mu_tilde=0.0):
    """Autocorrelation exponent g(t) = log[alpha^2/(J^2 cosh^2(alpha t + gamma))].

    alpha = sqrt((mu_tilde/2)^2 + J^2) and gamma = arcsinh(mu_tilde/(2J))
    make g(0) = 0.  Vectorized over t.
    """
    t = np.asarray(t, dtype=float)
    alpha = math.sqrt((mu_tilde / 2.0) ** 2 + j_script ** 2)
    gamma = math.asinh(mu_tilde / (2.0 * j_script))
    out = np.log(alpha ** 2 / (j_script ** 2 * np.cosh(alpha * t + gamma) ** 2))
    return out if out.shape else float(out)


def meixner_wavefunction(n, t, p: MeixnerParams):
    """Krylov wavefunction amplitude phi_n(t); real and >= 0 for t >= 0.

    phi_n = sech(t)^eta/(1+u tanh t)^eta * (1-u^2)^(n/2)
            * sqrt((eta)_n/n!) * (tanh t/(1+u tanh t))^n,
    evaluated in the log domain so n up to ~1e5 neither over- nor
    underflows before the final exponential.
    """
    n = np.asarray(n)
    scalar = n.shape == ()
    n = np.atleast_1d(n).astype(float)
    if t == 0.0:
        out = np.where(n == 0, 1.0, 0.0)
        return float(out[0]) if scalar else out
    th = math.tanh(t)
    log_sech = -t - math.log1p(math.exp(-2.0 * t)) + math.log(2.0)
    log_pref = p.eta * (log_sech - math.log1p(p.u * th))
    log_ratio = math.log(th) - math.log1p(p.u * th)
    log_poch = gammaln(p.eta + n) - gammaln(p.eta) - gammaln(n + 1.0)
    log_amp = (log_pref + 0.5 * n * math.log(1.0 - p.u ** 2)
               + 0.5 * log_poch + n * log_ratio)
    out = np.exp(log_amp)
    return float(out[0]) if scalar else out


def _denominator(th, u):
    return 1.0 + 2.0 * u * th - (1.0 - 2.0 * u ** 2) * th ** 2


def k_complexity_exact(t, p: MeixnerParams):
    """K(t) = eta (1-u^2) tanh^2 t / (1 + 2u tanh t - (1-2u^2) tanh^2 t)."""
    th = np.tanh(np.asarray(t, dtype=float))
    out = p.eta * (1.0 - p.u ** 2) * th ** 2 / _denominator(th, p.u)
    return out if out.shape else float(out)


def k_complexity_partition(t, p: MeixnerParams):
    """K(t) via the partition-function route d/dy log sum e^(yn) (eta)_n/n!.

    The sum is (1-e^y)^(-eta) at e^(y0) = (1-u^2)(tanh t/(1+u tanh t))^2,
    giving K = eta e^(y0)/(1 - e^(y0)); must agree with the rational form.
    """
    th = np.tanh(np.asarray(t, dtype=float))
    ey = (1.0 - p.u ** 2) * (th / (1.0 + p.u * th)) ** 2
    out = p.eta * ey / (1.0 - ey)
    return out if out.shape else float(out)


def variance_exact(t, p: MeixnerParams):
    """Connected size variance eta(1-u^2)tanh^2 t (u tanh t + 1)^2 / denom^2."""
    th = np.tanh(np.asarray(t, dtype=float))
    out = (p.eta * (1.0 - p.u ** 2) * th ** 2 * (p.u * th + 1.0) ** 2
           / _denominator(th, p.u) ** 2)
    return out if out.shape else float(out)


def k_saturation(p: MeixnerParams) -> float:
    """K(t -> infinity) = eta/(2u) - eta/2 (infinite for u = 0)."""
    if p.u == 0.0:
        return math.inf
    return p.eta / (2.0 * p.u) - p.eta / 2.0


def variance_saturation(p: MeixnerParams) -> float:
    """Exact t -> infinity variance eta (1-u^2)/(4u^2) (~ eta/(4u^2) for small u)."""
    if p.u == 0.0:
        return math.inf
    return p.eta * (1.0 - p.u ** 2) / (4.0 * p.u ** 2)


def tail_decay_rate(u: float) -> float:
    """Stationary tail decay: |phi_n| ~ exp(-n ln((1+u)/sqrt(1-u^2))) * n^((eta-1)/2)."""
    return math.log((1.0 + u) / math.sqrt(1.0 - u ** 2))


@dataclass(frozen=True)
class ContinuumParams:
    """Continuum growth rate alpha and dissipation scale chi*mu."""

    alpha: float
    chi_mu: float

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValidationError(f"alpha={self.alpha} must be positive")
        if self.chi_mu < 0.0:
            raise ValidationError(f"chi_mu={self.chi_mu} must be >= 0")

    @property
    def xi(self) -> float:
        """Stationary localization length 2 alpha/(chi mu)."""
        if self.chi_mu == 0.0:
            return math.inf
        return 2.0 * self.alpha / self.chi_mu

    @property
    def t_star(self) -> float:
        """Saturation time ln(2 alpha/(chi mu)) / (2 alpha)."""
        if self.chi_mu == 0.0:
            raise ValidationError("saturation time undefined at chi_mu = 0")
        return math.log(2.0 * self.alpha / self.chi_mu) / (2.0 * self.alpha)


def continuum_prediction(p: ContinuumParams, t):
    """Reference crossover curve: e^(2 alpha t) capped at xi.

    Asymptotic ("~") relation only; used for order-of-magnitude bands.
    """
    t = np.asarray(t, dtype=float)
    growth = np.exp(2.0 * p.alpha * t)
    out = growth if p.chi_mu == 0.0 else np.minimum(growth, p.xi)
    return out if out.shape else float(out)
