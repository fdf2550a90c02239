"""Log-domain Perron eigenvalue solver.

Power iteration carried out entirely with log-sum-exp reductions, so
weighted matrices ``exp(L)`` never materialize and arbitrarily large
negative log-weights cannot overflow.  Convergence is certified by the
Collatz-Wielandt enclosure on the original matrix: for any positive
vector ``x``, ``min_i log (Ax)_i/x_i <= log lambda <= max_i log
(Ax)_i/x_i``.

Plain iteration converges at the spectral-gap rate and is tried first.
Two escalations handle hard supports without touching the certificate:

- when the enclosure stalls, updates switch to the lazy matrix
  ``A + I`` (same eigenvectors, eigenvalue shifted by one), which mixes
  the phases of nearly periodic supports; a bare cycle, the
  low-temperature limit of a pinned potential, makes plain iterates
  rotate forever;
- if that also stalls (two cycle families with nearly tied means), the
  lazy matrix is repeatedly squared in the log domain, so the gap
  ratio squares with every step.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .errors import ConvergenceError

DEFAULT_TOL = 1e-13
MAX_ITERATIONS = 10**6
_PLAIN_BUDGET = 2000
_PLAIN_STALL = 40
_LAZY_BUDGET = 2000
_LAZY_STALL = 80
_MAX_SQUARINGS = 60
_NOISE_FLOOR_ACCEPT = 1e-12


def _lse_matmul(a, b):
    """Log-domain matrix product: ``C_ij = LSE_k (a_ik + b_kj)``."""
    return logsumexp(a[:, :, None] + b[None, :, :], axis=1)


def _lazy(logw):
    """Log-weights of ``exp(logw) + I``."""
    out = logw.copy()
    diag = np.arange(logw.shape[0])
    out[diag, diag] = np.logaddexp(logw[diag, diag], 0.0)
    return out


def power_log_perron(logw, tol=DEFAULT_TOL, max_iter=MAX_ITERATIONS):
    """Dominant log-eigenvalue and log right eigenvector of ``exp(logw)``.

    Parameters
    ----------
    logw : (n, n) ndarray
        Log-weights, ``-inf`` on missing edges.  The support must be
        irreducible and every row must contain at least one finite entry.

    Returns
    -------
    value, log_vector, residual, iterations
        ``value`` encloses the log Perron eigenvalue to ``residual``;
        ``log_vector`` is normalized to ``max = 0``.

    Raises
    ------
    ConvergenceError
        If the enclosure width cannot be brought to ``tol`` (or at least
        to the floating-point noise floor) within the budgets.
    """
    n = logw.shape[0]
    u = np.zeros(n)
    iterations = 0
    half_tol = tol / 2.0
    value = residual = np.inf

    # plain phase: the certifying product is also the update
    best = np.inf
    since_best = 0
    for _ in range(min(_PLAIN_BUDGET, max_iter)):
        iterations += 1
        z = logsumexp(logw + u[None, :], axis=1)
        d = z - u
        hi, lo = float(d.max()), float(d.min())
        value, residual = (hi + lo) / 2.0, (hi - lo) / 2.0
        if residual <= half_tol:
            return value, u, residual, iterations
        if residual < best:
            best, since_best = residual, 0
        else:
            since_best += 1
            if since_best >= _PLAIN_STALL:
                break
        u = z - z.max()

    def certify(vec):
        z = logsumexp(logw + vec[None, :], axis=1)
        d = z - vec
        hi, lo = float(d.max()), float(d.min())
        return (hi + lo) / 2.0, (hi - lo) / 2.0

    # lazy phase: update with A + I, certify on A
    lazy = _lazy(logw)
    best = residual
    since_best = 0
    for _ in range(_LAZY_BUDGET):
        if iterations >= max_iter:
            break
        iterations += 1
        step = logsumexp(lazy + u[None, :], axis=1)
        u = step - step.max()
        value, residual = certify(u)
        if residual <= half_tol:
            return value, u, residual, iterations
        if residual < best:
            best, since_best = residual, 0
        else:
            since_best += 1
            if since_best >= _LAZY_STALL:
                break

    # squaring ladder on the lazy matrix
    squared = lazy
    for _ in range(_MAX_SQUARINGS):
        if iterations >= max_iter:
            break
        iterations += 1
        squared = _lse_matmul(squared, squared)
        squared -= squared.max()
        boost = logsumexp(squared + u[None, :], axis=1)
        u = boost - boost.max()
        value, residual = certify(u)
        if residual <= half_tol:
            return value, u, residual, iterations

    if residual <= _NOISE_FLOOR_ACCEPT:
        return value, u, residual, iterations
    raise ConvergenceError(
        f"Perron enclosure stalled at half-width {residual:g} "
        f"(tolerance {tol:g}, {iterations} iterations)"
    )


def log_perron_value(logw, tol=DEFAULT_TOL) -> float:
    """Log Perron eigenvalue of ``exp(logw)``, with internal shift for
    numerical headroom."""
    finite = logw[np.isfinite(logw)]
    shift = float(finite.max())
    value, _, _, _ = power_log_perron(logw - shift, tol=tol)
    return value + shift
