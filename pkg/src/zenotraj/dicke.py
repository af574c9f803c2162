"""Collective decay of a single emitter at a superposition of positions.

A control register C steers which of N positions the emitter occupies; the
vacuum couples the position branches, giving the master equation

    d rho / dt = Gamma0 sum_i [ L_i rho L_i^+ - 1/2 {L_i^+ L_i, rho} ]
               + Gamma0 sum_{i != j} sinc(q |r_i - r_j|) L_i rho L_j^+,

with L_i = |i><i| (x) sigma_-.  Because the control projectors are
orthogonal, L_j^+ L_i = 0 for i != j, so the printed cross term already is
the full non-diagonal Lindblad form.  Post-selecting C on the superposition
that prepared it yields a single-emitter analogue of sub- and
superradiance: the conditional excited population can decay slower than the
two-atom subradiant rate or faster than the superradiant one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import binary_phases, phase_weights, r_factor
from .errors import NullOutcome, NumericError
from .filters import sinc
from .numerics import integrate_matrix_ode

__all__ = [
    "Geometry",
    "CollectiveRateMatrix",
    "ControlQubitState",
    "sinc",
    "qd_for_collective_factor",
    "dicke_rates_two_atom",
    "build_master_generator",
    "evolve_collective",
    "excited_population_analytic",
    "excited_population_numeric",
    "superposed_initial_state",
]

# global minimum of sinc(x) (at x ~ 4.4934) is ~ -0.21723; entries of the
# collective matrix can never fall below it
_SINC_FLOOR = -0.2173


@dataclass(frozen=True)
class Geometry:
    """Emitter positions as a pairwise-distance matrix plus wavenumber q."""

    distance_matrix: np.ndarray
    q: float

    def __post_init__(self):
        d = np.asarray(self.distance_matrix, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.allclose(d, d.T, atol=1e-12):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.diag(d) != 0.0):
            raise ValueError("self-distances must be zero")
        if np.any(d < 0):
            raise ValueError("distances must be >= 0")
        if self.q < 0:
            raise ValueError("wavenumber must be >= 0")
        object.__setattr__(self, "distance_matrix", d)

    @property
    def n_sites(self):
        return self.distance_matrix.shape[0]

    @classmethod
    def from_positions(cls, positions, q):
        r = np.asarray(positions, dtype=float)
        if r.ndim != 2 or r.shape[1] != 3:
            raise ValueError("positions must be an (N, 3) array")
        diff = r[:, None, :] - r[None, :, :]
        return cls(np.linalg.norm(diff, axis=-1), float(q))

    @classmethod
    def equal_distance(cls, n_sites, d, q):
        """Segment (N=2), equilateral triangle (N=3), regular tetrahedron (N=4)."""
        if n_sites == 1:
            return cls(np.zeros((1, 1)), float(q))
        if n_sites == 2:
            pos = [[0.0, 0.0, 0.0], [d, 0.0, 0.0]]
        elif n_sites == 3:
            pos = [[0.0, 0.0, 0.0], [d, 0.0, 0.0], [d / 2.0, d * np.sqrt(3.0) / 2.0, 0.0]]
        elif n_sites == 4:
            pos = [
                [0.0, 0.0, 0.0],
                [d, 0.0, 0.0],
                [d / 2.0, d * np.sqrt(3.0) / 2.0, 0.0],
                [d / 2.0, d * np.sqrt(3.0) / 6.0, d * np.sqrt(2.0 / 3.0)],
            ]
        else:
            raise ValueError("equal-distance geometries exist only for N <= 4")
        return cls.from_positions(pos, q)


@dataclass(frozen=True)
class CollectiveRateMatrix:
    """N x N matrix M with M_ii = 1 and M_ij = sinc(q d_ij), plus the rate."""

    matrix: np.ndarray
    gamma0: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("collective matrix must be square")
        if not np.allclose(m, m.T, atol=1e-12):
            raise ValueError("collective matrix must be symmetric")
        if np.any(np.diag(m) != 1.0):
            raise ValueError("diagonal entries must be exactly 1")
        if np.any(m < _SINC_FLOOR) or np.any(m > 1.0):
            raise ValueError(f"entries must lie in [{_SINC_FLOOR}, 1]")
        if self.gamma0 <= 0:
            raise ValueError("gamma0 must be > 0")
        object.__setattr__(self, "matrix", m)

    @property
    def n_sites(self):
        return self.matrix.shape[0]

    @classmethod
    def from_geometry(cls, geometry, gamma0):
        m = sinc(geometry.q * geometry.distance_matrix)
        m = np.atleast_2d(m)
        np.fill_diagonal(m, 1.0)
        return cls(m, float(gamma0))

    @classmethod
    def from_factor(cls, n_sites, s, gamma0):
        """Uniform cross factor s (equal-distance geometry shortcut)."""
        m = np.full((n_sites, n_sites), float(s))
        np.fill_diagonal(m, 1.0)
        return cls(m, float(gamma0))

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.matrix)[0])


@dataclass(frozen=True)
class ControlQubitState:
    """2N x 2N density matrix on control (x) qubit, basis |i> (x) {|e>, |g>}."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("state must be a 2N x 2N matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def n_sites(self):
        return self.matrix.shape[0] // 2

    def validate(self, psd_tol=1e-10, trace_tol=1e-9):
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ValueError("state is not Hermitian")
        if float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]) < -psd_tol:
            raise ValueError("state is not positive semidefinite")
        if abs(np.trace(m).real - 1.0) > trace_tol:
            raise ValueError("state trace is not 1")
        return self


def qd_for_collective_factor(s, bracket=(1e-9, np.pi)):
    """The qd in (0, pi) with sinc(qd) = s, for s in (0, 1)."""
    if not 0.0 < s < 1.0:
        raise ValueError("collective factor must lie in (0, 1)")
    return float(brentq(lambda x: sinc(x) - s, *bracket, xtol=1e-14, rtol=8.9e-16))


def dicke_rates_two_atom(gamma0, qd):
    """Two-atom Dicke rates (Gamma_plus, Gamma_minus) = Gamma0 (1 +- sinc(qd))."""
    if gamma0 <= 0:
        raise ValueError("gamma0 must be > 0")
    s = sinc(qd)
    return gamma0 * (1.0 + s), gamma0 * (1.0 - s)


def _sandwich_weights(rates):
    """(M, K-projector slices) helper shared by the generator."""
    n = rates.n_sites
    return rates.matrix, n


def build_master_generator(rates):
    """Linear map rho -> d rho/dt for the collective equation.

    ``rates`` is a CollectiveRateMatrix (use ``from_geometry`` for positions).
    The cross term is exactly the printed sandwich sum; trace preservation is
    asserted on a seeded random Hermitian matrix at build time and the build
    aborts with a diagnostic if it fails.
    """
    m, n = _sandwich_weights(rates)
    gamma0 = rates.gamma0
    dim = 2 * n

    def rhs(rho):
        t = rho.reshape(n, 2, n, 2)
        out = np.zeros_like(t)
        # sum_ij M_ij L_i rho L_j^+ : excited-excited blocks drop to ground
        out[:, 1, :, 1] = m * t[:, 0, :, 0]
        # -1/2 {K, rho} with K = I_N (x) |e><e| (row/column qubit index e)
        out[:, 0, :, :] -= 0.5 * t[:, 0, :, :]
        out[:, :, :, 0] -= 0.5 * t[:, :, :, 0]
        return gamma0 * out.reshape(dim, dim)

    rng = np.random.default_rng(20240817)
    probe = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    probe = probe + probe.conj().T
    drift = abs(np.trace(rhs(probe)))
    if drift > 1e-12 * max(1.0, float(np.max(np.abs(probe)))) * gamma0:
        raise NumericError(
            f"collective generator is not trace-preserving: tr(d rho) = {drift:g}"
        )
    return rhs


def superposed_initial_state(n_paths):
    """|chi_C><chi_C| (x) |e><e| with chi_C the uniform position superposition.

    The phase pattern enters only at post-selection (see
    :func:`excited_population_numeric`); preparation is phase-free.
    """
    chi = np.full(n_paths, 1.0 / np.sqrt(n_paths), dtype=complex)
    vec = np.kron(chi, np.array([1.0, 0.0], dtype=complex))
    return ControlQubitState(np.outer(vec, vec.conj()))


def evolve_collective(rates, rho0, grid):
    """RK4 evolution of a ControlQubitState under the collective generator."""
    if isinstance(rho0, ControlQubitState):
        rho0 = rho0.matrix
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (2 * rates.n_sites,) * 2:
        raise ValueError("initial state dimension does not match the rate matrix")
    gen = build_master_generator(rates)
    return integrate_matrix_ode(gen, rho0, grid)


def excited_population_analytic(t, n_paths, n_shifts, gamma0, s):
    """Closed-form conditional excited population for equal distances.

    P_e = R e^{-x} / [ 1/N + (R - 1/N) (e^{-x} + s (1 - e^{-x})) ],  x = Gamma0 t.
    """
    if 2 * n_shifts == n_paths:
        raise ValueError("excited population undefined for the null configuration")
    x = gamma0 * np.asarray(t, dtype=float)
    r = r_factor(n_paths, n_shifts)
    e = np.exp(-x)
    den = 1.0 / n_paths + (r - 1.0 / n_paths) * (e + s * (1.0 - e))
    if np.any(den <= 0.0):
        raise NullOutcome("post-selection probability vanished")
    out = r * e / den
    return float(out) if out.ndim == 0 else out


def excited_population_numeric(states, n_paths, n_shifts):
    """Post-selected excited population along an evolved state series.

    ``states`` is the (count, 2N, 2N) array from :func:`evolve_collective`
    (or a single matrix).  The control is projected on the same binary-phase
    superposition used at preparation; the excited weight is normalized by
    the full post-selection probability.
    """
    arr = np.asarray(states, dtype=complex)
    single = arr.ndim == 2
    if single:
        arr = arr[None]
    dim = arr.shape[1]
    if dim != 2 * n_paths:
        raise ValueError("state dimension does not match n_paths")
    w = phase_weights(binary_phases(n_paths, n_shifts))
    chi = w / np.sqrt(n_paths)
    v_e = np.kron(chi, np.array([1.0, 0.0], dtype=complex))
    v_g = np.kron(chi, np.array([0.0, 1.0], dtype=complex))
    num = np.einsum("i,kij,j->k", v_e.conj(), arr, v_e).real
    den = num + np.einsum("i,kij,j->k", v_g.conj(), arr, v_g).real
    if np.any(den < 1e-14):
        raise NullOutcome("post-selection trace vanished along the evolution")
    p = num / den
    return float(p[0]) if single else p
