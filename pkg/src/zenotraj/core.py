"""Shared domain types and the path-superposition / post-selection algebra.

A qubit traversing an N-arm interferometer accumulates per-path conditional
states ρ_{Q,i,j}; projecting the path register onto a phase profile
|χ_φ⟩ ∝ Σ_k e^{iφ_k}|k⟩ yields the (unnormalized) conditional qubit state

    ρ̃_Q = (1/N²) Σ_{i,j} e^{-i(φ_i-φ_j)} ρ_{Q,i,j}.

For identical environments all diagonal blocks equal ρ_Q(t), all off-diagonal
blocks equal a single cross block β(t), and the sum collapses to
ρ_Q(t)/N + (R - 1/N) β(t) with the post-selection factor
R(N, n) = (N - 2n)²/N² for binary phase profiles with n shifts of π.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NullOutcome
from .numerics import min_eigenvalue_hermitian

__all__ = [
    "SpectralDensity",
    "InterferometerConfig",
    "QubitState",
    "PathBlockMatrix",
    "r_factor",
    "binary_phases",
    "phase_weights",
    "phase_pair_sum",
    "postselect_general",
    "superpose_identical",
    "normalize",
    "eval_spectral_density",
    "trace_distance",
]


# ---------------------------------------------------------------------------
# spectral densities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralDensity:
    """Coupling spectrum J(ω) ≥ 0 on [0, omega_max], zero outside.

    Use the classmethod constructors; ``scale`` is an overall multiplier used
    for coupling-strength rescaling (J → ε²J leaves the shape untouched).
    """

    variant: str
    params: dict
    omega_max: float
    scale: float = 1.0

    @classmethod
    def lorentzian(cls, gamma0, lam, omega_q, omega_max=None):
        if gamma0 <= 0 or lam <= 0:
            raise ValueError("Lorentzian needs gamma0 > 0 and lam > 0")
        if omega_max is None:
            omega_max = omega_q + 50.0 * lam
        return cls("lorentzian", {"gamma0": float(gamma0), "lam": float(lam),
                                  "omega_q": float(omega_q)}, float(omega_max))

    @classmethod
    def ohmic(cls, eta, s, omega_c, omega_max=None):
        if eta <= 0 or s <= 0 or omega_c <= 0:
            raise ValueError("Ohmic needs eta, s, omega_c > 0")
        if omega_max is None:
            omega_max = 50.0 * omega_c
        return cls("ohmic", {"eta": float(eta), "s": float(s),
                             "omega_c": float(omega_c)}, float(omega_max))

    @classmethod
    def gaussian_peak(cls, omega_m, delta, omega_max=None):
        if delta <= 0:
            raise ValueError("GaussianPeak needs delta > 0")
        if omega_max is None:
            omega_max = omega_m + 12.0 * math.sqrt(delta)
        return cls("gaussian_peak", {"omega_m": float(omega_m),
                                     "delta": float(delta)}, float(omega_max))

    @classmethod
    def tabulated(cls, omega, values, omega_max=None):
        omega = np.asarray(omega, dtype=float)
        values = np.asarray(values, dtype=float)
        if omega.ndim != 1 or omega.shape != values.shape or omega.size < 2:
            raise ValueError("tabulated J needs matching 1-d omega/value arrays")
        if np.any(np.diff(omega) <= 0):
            raise ValueError("tabulated omega grid must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("tabulated J must be non-negative")
        if omega_max is None:
            omega_max = float(omega[-1])
        return cls("tabulated", {"omega": omega, "values": values}, float(omega_max))

    def scaled(self, factor):
        """Same spectrum multiplied by ``factor`` (e.g. ε² coupling rescaling)."""
        if factor < 0:
            raise ValueError("scale factor must be non-negative")
        return SpectralDensity(self.variant, self.params, self.omega_max,
                               self.scale * float(factor))

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        p = self.params
        if self.variant == "lorentzian":
            raw = (p["gamma0"] * p["lam"] ** 2 / (2.0 * np.pi)
                   / ((p["omega_q"] - omega) ** 2 + p["lam"] ** 2))
        elif self.variant == "ohmic":
            with np.errstate(divide="ignore", invalid="ignore"):
                raw = np.where(
                    omega > 0,
                    p["eta"] * omega ** p["s"] * p["omega_c"] ** (1.0 - p["s"])
                    * np.exp(-omega / p["omega_c"]),
                    0.0,
                )
        elif self.variant == "gaussian_peak":
            raw = np.exp(-(omega - p["omega_m"]) ** 2 / p["delta"])
        elif self.variant == "tabulated":
            raw = np.interp(omega, p["omega"], p["values"], left=0.0, right=0.0)
        else:  # pragma: no cover - constructors prevent this
            raise ValueError(f"unknown spectral density variant {self.variant!r}")
        out = self.scale * np.where((omega >= 0) & (omega <= self.omega_max), raw, 0.0)
        return out if out.ndim else float(out)


def eval_spectral_density(j, omega):
    """J(ω) with truncation to zero outside [0, omega_max]."""
    return j(omega)


# ---------------------------------------------------------------------------
# interferometer configuration and phase algebra
# ---------------------------------------------------------------------------

def r_factor(n_paths, n_shifts):
    """Post-selection factor R(N, n) = (N - 2n)²/N² for binary phase profiles."""
    if n_paths < 1:
        raise ValueError("need at least one path")
    if not 0 <= n_shifts <= n_paths:
        raise ValueError("need 0 <= n <= N")
    return (n_paths - 2 * n_shifts) ** 2 / n_paths**2


def binary_phases(n_paths, n_shifts):
    """Phase vector with ``n_shifts`` entries of π and the rest zero."""
    if not 0 <= n_shifts <= n_paths:
        raise ValueError("need 0 <= n <= N")
    phases = np.zeros(n_paths, dtype=float)
    phases[:n_shifts] = np.pi
    return phases


def phase_weights(phases):
    """e^{-iφ} per entry, with exact reduction of integer multiples of π.

    Arguments are reduced as φ = mπ + r with m = round(φ/π), so that
    e^{-iφ} = (-1)^m e^{-ir}. Near-π phases thereby avoid the sin(π) ≈ 1e-16
    residue of a naive complex exponential, and binary {0, π} profiles get
    exact ±1 weights.
    """
    phases = np.asarray(phases, dtype=float)
    if not np.all(np.isfinite(phases)):
        raise ValueError("phase entries must be finite")
    m = np.round(phases / np.pi)
    r = phases - m * np.pi
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    return sign * (np.cos(r) - 1j * np.sin(r))


def phase_pair_sum(phases):
    """Σ_{k,l} e^{-i(φ_k - φ_l)} = |Σ_k e^{-iφ_k}|², real and ≥ 0.

    For binary profiles with n π-shifts this equals (N - 2n)² exactly.
    """
    total = np.sum(phase_weights(phases))
    return float(total.real**2 + total.imag**2)


@dataclass(frozen=True)
class InterferometerConfig:
    """N interferometer paths with either a binary phase count or a phase vector."""

    n_paths: int
    n_shifts: int | None = None
    phases: np.ndarray | None = None

    def __post_init__(self):
        if self.n_paths < 1:
            raise ValueError("need at least one path")
        if (self.n_shifts is None) == (self.phases is None):
            raise ValueError("give exactly one of n_shifts or phases")
        if self.n_shifts is not None and not 0 <= self.n_shifts <= self.n_paths:
            raise ValueError("need 0 <= n <= N")
        if self.phases is not None:
            phases = np.asarray(self.phases, dtype=float)
            if phases.shape != (self.n_paths,):
                raise ValueError("phase vector length must equal n_paths")
            if not np.all(np.isfinite(phases)):
                raise ValueError("phase entries must be finite")
            object.__setattr__(self, "phases", phases)

    @property
    def is_binary(self):
        return self.n_shifts is not None

    @property
    def is_null(self):
        """True for the completely destructive configuration (n = N/2)."""
        if self.is_binary:
            return 2 * self.n_shifts == self.n_paths
        return phase_pair_sum(self.phases) < 1e-12

    @property
    def r(self):
        if not self.is_binary:
            raise ValueError("R(N, n) is defined for binary phase profiles")
        return r_factor(self.n_paths, self.n_shifts)

    @property
    def phase_vector(self):
        if self.is_binary:
            return binary_phases(self.n_paths, self.n_shifts)
        return self.phases


# ---------------------------------------------------------------------------
# qubit states and path blocks
# ---------------------------------------------------------------------------

_HERM_TOL = 1e-12
_PSD_TOL = -1e-12


@dataclass(frozen=True)
class QubitState:
    """2×2 qubit operator in the {|e⟩, |g⟩} basis.

    May be unnormalized: the trace of a post-selected state is the success
    probability of the projective outcome, so traces in [0, 1] are
    first-class values here.
    """

    matrix: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise ValueError("QubitState requires a 2x2 matrix")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def pure(cls, c_e, c_g):
        """|ψ⟩⟨ψ| from amplitudes (c_e, c_g); must be normalized."""
        norm = abs(c_e) ** 2 + abs(c_g) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError("pure-state amplitudes must satisfy |c_e|²+|c_g|²=1")
        psi = np.array([c_e, c_g], dtype=complex)
        return cls(np.outer(psi, psi.conj()), normalized=True)

    @classmethod
    def excited(cls):
        return cls.pure(1.0, 0.0)

    @classmethod
    def ground(cls):
        return cls.pure(0.0, 1.0)

    @classmethod
    def plus(cls):
        return cls.pure(math.sqrt(0.5), math.sqrt(0.5))

    @classmethod
    def minus(cls):
        return cls.pure(math.sqrt(0.5), -math.sqrt(0.5))

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    @property
    def populations(self):
        return (float(self.matrix[0, 0].real), float(self.matrix[1, 1].real))

    @property
    def coherence(self):
        return complex(self.matrix[0, 1])

    def min_eigenvalue(self):
        return min_eigenvalue_hermitian(self.matrix)

    def validate(self, herm_tol=_HERM_TOL, psd_tol=_PSD_TOL):
        """Assert Hermiticity, positivity and the trace window; returns self."""
        dev = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        if dev > herm_tol:
            raise ValueError(f"state is not Hermitian: deviation {dev:g}")
        lo = min_eigenvalue_hermitian(self.matrix)
        if lo < psd_tol:
            raise ValueError(f"state is not PSD: min eigenvalue {lo:g}")
        tr = self.trace
        if not -herm_tol <= tr <= 1.0 + 1e-12:
            raise ValueError(f"trace {tr:g} outside [0, 1]")
        if self.normalized and abs(tr - 1.0) > 1e-12:
            raise ValueError(f"normalized state must have unit trace, got {tr:g}")
        return self


@dataclass(frozen=True)
class PathBlockMatrix:
    """N×N array of 2×2 conditional-state blocks ρ_{Q,i,j}(t)."""

    blocks: np.ndarray

    def __post_init__(self):
        blocks = np.asarray(self.blocks, dtype=complex)
        if blocks.ndim != 4 or blocks.shape[0] != blocks.shape[1] \
                or blocks.shape[2:] != (2, 2):
            raise ValueError("blocks must have shape (N, N, 2, 2)")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def uniform(cls, rho_diagonal, beta, n_paths):
        """Identical environments: ρ on the diagonal, β on every off-diagonal."""
        rho = np.asarray(rho_diagonal.matrix if isinstance(rho_diagonal, QubitState)
                         else rho_diagonal, dtype=complex)
        off = np.asarray(beta.matrix if isinstance(beta, QubitState) else beta,
                         dtype=complex)
        blocks = np.tile(off, (n_paths, n_paths, 1, 1))
        for i in range(n_paths):
            blocks[i, i] = rho
        return cls(blocks)

    @property
    def n_paths(self):
        return self.blocks.shape[0]

    def validate(self, herm_tol=1e-10):
        adjoint = np.conj(np.transpose(self.blocks, (1, 0, 3, 2)))
        dev = float(np.max(np.abs(self.blocks - adjoint)))
        if dev > herm_tol:
            raise ValueError(f"block matrix is not Hermitian: deviation {dev:g}")
        for i in range(self.n_paths):
            QubitState(self.blocks[i, i]).validate(psd_tol=-1e-10)
        return self


# ---------------------------------------------------------------------------
# superposition and post-selection
# ---------------------------------------------------------------------------

def postselect_general(blocks, phases):
    """(1/N²) Σ_{i,j} e^{-i(φ_i-φ_j)} ρ_{Q,i,j}: unnormalized conditional state."""
    if isinstance(blocks, PathBlockMatrix):
        blocks = blocks.blocks
    blocks = np.asarray(blocks, dtype=complex)
    n = blocks.shape[0]
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (n,):
        raise ValueError("phase vector length must match the path count")
    w = phase_weights(phases)
    out = np.einsum("i,j,ijab->ab", w, w.conj(), blocks) / n**2
    return QubitState(out)


def superpose_identical(rho_single, beta, config):
    """ρ/N + (R - 1/N) β for identical environments and binary phases."""
    if not config.is_binary:
        raise ValueError("superpose_identical requires a binary phase profile")
    n = config.n_paths
    rho = np.asarray(rho_single.matrix if isinstance(rho_single, QubitState)
                     else rho_single, dtype=complex)
    off = np.asarray(beta.matrix if isinstance(beta, QubitState) else beta,
                     dtype=complex)
    out = rho / n + (config.r - 1.0 / n) * off
    return QubitState(out)


def normalize(state):
    """Divide out the trace; returns (normalized state, success probability)."""
    matrix = state.matrix if isinstance(state, QubitState) else np.asarray(state, complex)
    p = float(np.trace(matrix).real)
    if p < 0 and p > -1e-14:
        p = 0.0
    if p < 0:
        raise ValueError(f"state has negative trace {p:g}")
    if p < 1e-14:
        raise NullOutcome("post-selection probability is numerically zero")
    return QubitState(matrix / p, normalized=True), p


def trace_distance(a, b):
    """½‖a − b‖₁ for Hermitian 2×2 (or small) matrices."""
    ma = a.matrix if isinstance(a, QubitState) else np.asarray(a, dtype=complex)
    mb = b.matrix if isinstance(b, QubitState) else np.asarray(b, dtype=complex)
    diff = ma - mb
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))
