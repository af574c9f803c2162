"""Generic numerical kernels.

Adaptive quadrature for (possibly oscillatory) spectral integrals, a
product-trapezoidal solver for memory-kernel Volterra equations, a fixed-step
4th-order density-matrix integrator, and a small dense Hermitian eigensolver.
All routines are pure functions of their inputs and safe for concurrent use.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import NumericError, QuadratureError

__all__ = [
    "TimeGrid",
    "ComplexSeries",
    "integrate_adaptive",
    "solve_volterra",
    "integrate_matrix_ode",
    "min_eigenvalue_hermitian",
    "gauss_legendre_panels",
]


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid t_k = t0 + k*dt for k = 0..count-1."""

    t0: float
    dt: float
    count: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("TimeGrid.dt must be positive")
        if self.count < 2:
            raise ValueError("TimeGrid.count must be at least 2")

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(self.count)

    @property
    def t_end(self):
        return self.t0 + self.dt * (self.count - 1)


@dataclass(frozen=True)
class ComplexSeries:
    """Complex values sampled on a TimeGrid."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.count,):
            raise ValueError(
                f"series length {values.shape} does not match grid count {self.grid.count}"
            )
        object.__setattr__(self, "values", values)


def integrate_adaptive(f, a, b, rel_tol=1e-10, abs_tol=1e-12, *, limit=200,
                       points=None, complex_valued=True, weight=None, wvar=None):
    """Adaptive quadrature of ``f`` over [a, b] (b may be ``np.inf``).

    Returns a complex estimate whose reported error bound satisfies
    ``bound <= max(abs_tol, rel_tol * |result|)``; otherwise raises
    :class:`QuadratureError` carrying the best estimate and the bound.
    ``points`` optionally lists interior breakpoints (finite intervals only);
    ``weight``/``wvar`` pass an oscillatory QUADPACK weight (e.g. 'cos', t)
    through, which is far more robust than plain subdivision when the phase
    across [a, b] spans many cycles.
    """
    if not a < b:
        raise ValueError("integrate_adaptive requires a < b")
    kwargs = dict(epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1)
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar
    elif points is not None and np.isfinite(b):
        kwargs["points"] = points

    def _run(g):
        out = integrate.quad(g, a, b, **kwargs)
        val, err = out[0], out[1]
        ok = len(out) < 4  # a 4th element is QUADPACK's non-convergence message
        return val, err, ok

    if complex_valued:
        re, err_re, ok_re = _run(lambda w: np.real(f(w)))
        im, err_im, ok_im = _run(lambda w: np.imag(f(w)))
        estimate = complex(re, im)
        bound = err_re + err_im
        converged = ok_re and ok_im
    else:
        re, bound, converged = _run(f)
        estimate = complex(re, 0.0)

    if not converged or bound > max(abs_tol, rel_tol * abs(estimate)):
        raise QuadratureError(
            f"quadrature did not converge: estimate={estimate}, bound={bound:g}",
            estimate=estimate,
            error_bound=bound,
        )
    return estimate


def _kernel_samples(kernel, offsets):
    """Evaluate ``kernel`` on an array of time offsets, scalar fallback included."""
    try:
        values = np.asarray(kernel(offsets), dtype=complex)
        if values.shape == offsets.shape:
            return values
    except (TypeError, ValueError):
        pass
    return np.array([kernel(t) for t in offsets], dtype=complex)


def solve_volterra(kernel, grid, c0=1.0 + 0.0j):
    """Solve ``c'(t) = -∫₀ᵗ f(t-τ) c(τ) dτ`` with ``c(0) = c0``.

    Product-trapezoidal discretization (second-order accurate): both the
    memory integral and the time step use the trapezoidal rule, with the
    implicit diagonal term solved per step. The kernel is sampled once on
    the grid offsets.
    """
    if abs(grid.t0) > 0:
        raise ValueError("solve_volterra requires a grid starting at t = 0")
    h = grid.dt
    m = grid.count
    F = _kernel_samples(kernel, h * np.arange(m))
    c = np.empty(m, dtype=complex)
    c[0] = complex(c0)
    deriv = 0.0 + 0.0j  # c'(0): the memory integral is empty at t = 0
    denom = 1.0 + 0.25 * h * h * F[0]
    for k in range(m - 1):
        # Trapezoidal memory sum for t_{k+1}, excluding the (implicit) τ = t_{k+1} node.
        s = h * 0.5 * F[k + 1] * c[0]
        if k >= 1:
            s += h * np.dot(F[k:0:-1], c[1:k + 1])
        c_next = (c[k] + 0.5 * h * (deriv - s)) / denom
        deriv = -(s + 0.5 * h * F[0] * c_next)
        c[k + 1] = c_next
    return ComplexSeries(grid, c)


def integrate_matrix_ode(rhs, rho0, grid):
    """Classical fixed-step RK4 for ``ρ' = rhs(ρ)`` on a TimeGrid.

    ``rhs`` must be linear in its argument (time-independent generator).
    Returns an array of shape (count, d, d).
    """
    rho = np.asarray(rho0, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("rho0 must be a square matrix")
    probe = np.asarray(rhs(rho))
    if probe.shape != rho.shape:
        raise ValueError("rhs output shape does not match the state shape")
    out = np.empty((grid.count,) + rho.shape, dtype=complex)
    out[0] = rho
    dt = grid.dt
    for k in range(grid.count - 1):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * dt * k1)
        k3 = rhs(rho + 0.5 * dt * k2)
        k4 = rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = rho
    return out


def min_eigenvalue_hermitian(M, herm_tol=1e-12):
    """Smallest eigenvalue of a small (n ≤ 8) Hermitian matrix.

    The input is symmetrized before the solve; a deviation from Hermiticity
    beyond ``herm_tol`` (relative to the largest entry) is an error.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if M.shape[0] > 8:
        raise ValueError("min_eigenvalue_hermitian is limited to n <= 8")
    scale = max(1.0, float(np.max(np.abs(M))))
    deviation = float(np.max(np.abs(M - M.conj().T)))
    if deviation > herm_tol * scale:
        raise NumericError(
            f"matrix is not Hermitian within tolerance: deviation {deviation:g}"
        )
    sym = 0.5 * (M + M.conj().T)
    return float(np.linalg.eigvalsh(sym)[0])


def gauss_legendre_panels(f, edges, order=10):
    """Vectorized fixed-order Gauss-Legendre quadrature over contiguous panels.

    ``edges`` is an increasing array of panel boundaries; ``f`` must accept an
    ndarray of abscissae. Useful for oscillatory integrands split at their
    natural periods, where adaptive breakpoint lists would be too long.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("edges must contain at least two panel boundaries")
    x, w = np.polynomial.legendre.leggauss(order)
    lo = edges[:-1]
    half = 0.5 * (edges[1:] - lo)
    mid = lo + half
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return float(np.sum(half * (vals @ w)))
