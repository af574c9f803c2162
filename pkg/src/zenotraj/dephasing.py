"""Exact finite-temperature pure-dephasing dynamics under superposed paths.

The qubit-bath coupling commutes with the qubit Hamiltonian, so populations
never move; only the coherence is multiplied by factors built from the
dephasing exponent

    Gamma_T(t) = 4 * int_0^{omega_max} dw J(w) w^{-2} coth(w/(2T)) (1 - cos wt)

(T = 0 replaces coth by 1).  A single path suppresses the coherence by
phi_T = exp(-Gamma_T); a post-selected N-path superposition with n sign
flips turns this into the modified factor

    Phi = (phi_T + c*sqrt(phi_T)) / (1 + c*sqrt(phi_T)),   c = N*R - 1,

which can vanish and change sign (sudden death and revival of the coherence
and of state distinguishability) even though phi_T itself is monotone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QubitState, r_factor
from .errors import NumericError
from .numerics import TimeGrid, gauss_legendre_panels, integrate_adaptive

__all__ = [
    "DephasingParams",
    "DephasingFactors",
    "dephasing_exponent",
    "single_path_factor",
    "modified_dephasing",
    "postselected_state_deph",
    "trace_distance_deph",
    "dephasing_factors",
]

# below this many accumulated phase radians the plain adaptive rule (with
# breakpoints at the half-periods) is still efficient; beyond it we switch
# to fixed Gauss-Legendre panels between consecutive half-periods
_ADAPTIVE_PHASE_LIMIT = 64.0 * np.pi


@dataclass(frozen=True)
class DephasingParams:
    """Bath spectral density plus temperature (k_B absorbed into T)."""

    j: object
    temperature: float = 0.0

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class DephasingFactors:
    """Time series of the exponent and the derived coherence factors."""

    grid: TimeGrid
    gamma: np.ndarray  # Gamma_T(t), real, >= 0
    phi: np.ndarray  # exp(-Gamma_T(t)), in (0, 1]
    phi_mod: np.ndarray  # modified factor Phi(t, N, n)

    def validate(self):
        """Gamma(0)=0, phi(0)=1, phi=exp(-Gamma), Phi(0)=1; returns self."""
        if self.gamma[0] != 0.0:
            raise ValueError("dephasing exponent must start at 0")
        if self.phi[0] != 1.0 or self.phi_mod[0] != 1.0:
            raise ValueError("coherence factors must start at 1")
        if not np.allclose(self.phi, np.exp(-self.gamma), rtol=1e-12, atol=0.0):
            raise ValueError("phi series is not exp(-gamma)")
        return self


def _coth_factor(x):
    """coth(x) = 1 + 2/(e^{2x} - 1), stable for both tiny and huge x > 0."""
    return 1.0 + 2.0 / np.expm1(np.minimum(2.0 * x, 1400.0))


def _check_infrared(j, temperature):
    if temperature > 0 and j.variant == "ohmic" and j.params["s"] < 1.0:
        raise NumericError(
            "dephasing exponent diverges: sub-Ohmic spectral density at "
            "finite temperature has an infrared-divergent thermal integrand"
        )


def _thermal_integrand(j, temperature, t):
    """Vectorized 4 J(w) w^{-2} coth(w/2T) (1 - cos wt); series near w=0."""

    def h(w):
        w = np.asarray(w, dtype=float)
        scalar = w.ndim == 0
        w = np.atleast_1d(w)
        out = np.zeros_like(w)
        pos = w > 0.0
        ws = w[pos]
        wt = ws * t
        # (1 - cos wt)/w^2 with a two-term series where the difference would
        # cancel; the truncation error at the switch point is ~(wt)^4/360
        osc = np.where(
            wt < 1e-3,
            0.5 * t * t * (1.0 - wt * wt / 12.0),
            (1.0 - np.cos(wt)) / (ws * ws),
        )
        th = 1.0 if temperature == 0.0 else _coth_factor(ws / (2.0 * temperature))
        out[pos] = 4.0 * j(ws) * osc * th
        # w = 0 exactly is a single point of measure zero; leaving it at 0
        # never changes the integral and avoids the 0/0 corner
        return out[0] if scalar else out

    return h


def dephasing_exponent(params, t):
    """Gamma_T(t) by quadrature adapted to the oscillation count.

    Raises NumericError for a sub-Ohmic density at finite temperature
    (infrared-divergent exponent).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        return 0.0
    j, temperature = params.j, params.temperature
    _check_infrared(j, temperature)
    omega_max = j.omega_max
    h = _thermal_integrand(j, temperature, t)
    half_period = np.pi / t
    n_half = int(np.floor(omega_max / half_period - 1e-12))
    if omega_max * t <= _ADAPTIVE_PHASE_LIMIT:
        points = half_period * np.arange(1, n_half + 1) if n_half >= 1 else None
        val = integrate_adaptive(
            h, 0.0, omega_max, 1e-11, 1e-13,
            complex_valued=False,
            points=points,
            limit=max(200, 4 * (n_half + 2)),
        )
        return float(val.real)
    edges = np.concatenate(([0.0], half_period * np.arange(1, n_half + 1), [omega_max]))
    return float(gauss_legendre_panels(h, edges, order=10).real)


def single_path_factor(gamma):
    """phi_T = exp(-Gamma_T) in (0, 1]."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise ValueError("dephasing exponent must be >= 0")
    out = np.exp(-gamma)
    return float(out) if out.ndim == 0 else out


def modified_dephasing(phi_t, n_paths, n_shifts):
    """Phi = (phi + c sqrt(phi)) / (1 + c sqrt(phi)), c = (N-1) - (4n/N)(N-n).

    Equals the coherence ratio <e|rho(t)|g> / <e|rho(0)|g> of the normalized
    post-selected state.  The denominator is provably positive for n != N/2
    and phi in (0, 1]; a non-positive value signals a non-physical regime.
    """
    if 2 * n_shifts == n_paths:
        raise ValueError("modified dephasing undefined for the null configuration n = N/2")
    phi = np.asarray(phi_t, dtype=float)
    if np.any(phi <= 0) or np.any(phi > 1.0 + 1e-12):
        raise ValueError("phi_T must lie in (0, 1]")
    c = (n_paths - 1) - (4.0 * n_shifts / n_paths) * (n_paths - n_shifts)
    root = np.sqrt(phi)
    den = 1.0 + c * root
    if np.any(den <= 0):
        raise NumericError("modified dephasing denominator is not positive")
    out = (phi + c * root) / den
    return float(out) if out.ndim == 0 else out


def postselected_state_deph(rho0, phi_t, n_paths, n_shifts):
    """Unnormalized conditional state: (1/N) rho(t) + (R - 1/N) sqrt(phi) rho(0).

    rho(t) is rho0 with its coherence multiplied by phi_T (populations
    untouched).  The normalized state keeps rho0's populations exactly.
    """
    if not isinstance(rho0, QubitState):
        rho0 = QubitState(np.asarray(rho0, dtype=complex))
    rho0.validate()
    if abs(rho0.trace - 1.0) > 1e-12:
        raise ValueError("rho0 must be normalized")
    if not 0.0 < phi_t <= 1.0 + 1e-12:
        raise ValueError("phi_T must lie in (0, 1]")
    r = r_factor(n_paths, n_shifts)
    m0 = rho0.matrix
    m_t = m0.copy()
    m_t[0, 1] *= phi_t
    m_t[1, 0] *= phi_t
    out = m_t / n_paths + (r - 1.0 / n_paths) * np.sqrt(phi_t) * m0
    return QubitState(out)


def trace_distance_deph(phi_mod):
    """Distance |Phi| between the post-selected states grown from |+-><+-|."""
    out = np.abs(np.asarray(phi_mod, dtype=float))
    return float(out) if out.ndim == 0 else out


def dephasing_factors(params, grid, n_paths, n_shifts):
    """Evaluate Gamma, phi, and Phi on a time grid."""
    gamma = np.array([dephasing_exponent(params, t) for t in grid.times])
    phi = single_path_factor(gamma)
    phi_mod = modified_dephasing(phi, n_paths, n_shifts)
    return DephasingFactors(grid, gamma, phi, np.atleast_1d(phi_mod)).validate()
