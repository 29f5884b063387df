"""Analytic expectation-value evolution from coherent-class initial states,
the summation-identity residual and the scaling-collapse transform.

Time conventions: the q model evolves in the dimensionless tau = omega_q * t,
the anharmonic model in raw t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PhaseUnwrapError
from .fock import build_lambda
from .params import Anharmonic, LambdaIndex, ModelParams, QOsc, validate_index
from .qcore import (
    _MAX_TERMS,
    q_exponential,
    q_number,
    q_stirling2,
    stirling2,
)


@dataclass(frozen=True)
class TimeSeries:
    """Complex expectation values over a time grid, with provenance."""

    times: np.ndarray
    values: np.ndarray
    model: ModelParams
    idx: LambdaIndex
    alpha: complex
    truncation_tail: float

    def __post_init__(self):
        if self.times.shape != self.values.shape:
            raise DomainError("times and values must have matching shapes")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise DomainError("times must be strictly increasing")
        self.times.setflags(write=False)
        self.values.setflags(write=False)


def _weighted_series(level, alpha_sq: float, m: int, tol: float):
    """Terms w_k = alpha_sq^k / fact(k) with moment factors level(k)^m,
    truncated when the certified tail of the level^m-weighted mass drops
    below tol relative to the running sum.

    level(k) must be nondecreasing with nonincreasing successive ratios,
    which holds for both k and [k]_q.  Returns (weights normalized by the
    partial sum, levels, moments, relative tail, raw partial sum).
    """
    w = [1.0]
    lev = [level(0)]
    total = 1.0
    tail = 0.0
    while alpha_sq > 0.0:
        k = len(w)
        lv = level(k)
        nxt = w[-1] * alpha_sq / lv
        w.append(nxt)
        lev.append(lv)
        total += nxt
        lv_next = level(k + 1)
        growth = (lv_next / lv) ** m if m > 0 else 1.0
        rho = (alpha_sq / lv_next) * growth
        if rho < 1.0:
            u = nxt * (max(lv, 1.0) ** m if m > 0 else 1.0)
            tail = u * rho / (1.0 - rho)
            if tail < tol * total:
                break
        if k > _MAX_TERMS:
            raise ConvergenceError("weighted series failed to truncate")
    w_arr = np.array(w) / total
    # park the last-ulp normalization defect on the largest weight
    w_arr[int(np.argmax(w_arr))] += 1.0 - math.fsum(w_arr)
    lev_arr = np.array(lev)
    if m > 0:
        mom = np.where(lev_arr == 0.0, 0.0, lev_arr**m)
    else:
        mom = np.ones_like(lev_arr)
    return w_arr, lev_arr, mom, tail / total, total


def evolve_q_expectation(
    params: QOsc,
    alpha: complex,
    idx: LambdaIndex,
    tau_grid: np.ndarray,
    tol: float = 1e-12,
) -> TimeSeries:
    """q-Poisson-weighted phase sum for the q-coherent expectation

        <L^{n,m}>_tau = (alpha*)^n e^{i [n] tau}
                        sum_k [k]^m P_q(alpha, k) e^{i [n](q-1)[k] tau}.
    """
    if not isinstance(params, QOsc):
        raise DomainError("evolve_q_expectation requires q-model parameters")
    n, m = validate_index(idx)
    if tol <= 0:
        raise DomainError("tol must be positive")
    q = params.q
    a2 = abs(alpha) ** 2
    if q < 1.0 and a2 >= 1.0 / (1.0 - q):
        raise ConvergenceError(
            f"|alpha|^2={a2} outside radius {1.0 / (1.0 - q)} for q={q}"
        )
    taus = np.asarray(tau_grid, dtype=float)
    if n == 0 and m == 0:
        return TimeSeries(
            taus, np.ones_like(taus, dtype=complex), params, LambdaIndex(0, 0), alpha, 0.0
        )
    w, lev, mom, tail, _ = _weighted_series(lambda k: q_number(k, q), a2, m, tol)
    nq = q_number(n, q)
    phases = np.exp(1j * nq * (q - 1.0) * np.outer(taus, lev))
    sums = phases @ (mom * w)
    values = np.conj(alpha) ** n * np.exp(1j * nq * taus) * sums
    return TimeSeries(taus, values, params, LambdaIndex(n, m), alpha, tail)


def evolve_anharmonic_expectation(
    params: Anharmonic,
    alpha: complex,
    idx: LambdaIndex,
    t_grid: np.ndarray,
    tol: float = 1e-12,
) -> TimeSeries:
    """Poisson-weighted phase sum for the coherent-state expectation

        <L^{n,m}>_t = (alpha*)^n e^{i(n w1 + n^2 w2) t}
                      sum_k k^m P(alpha, k) e^{i 2 n w2 k t}.

    Periodic up to a global phase with revival period pi / omega2.
    """
    if not isinstance(params, Anharmonic):
        raise DomainError(
            "evolve_anharmonic_expectation requires anharmonic parameters"
        )
    n, m = validate_index(idx)
    if tol <= 0:
        raise DomainError("tol must be positive")
    ts = np.asarray(t_grid, dtype=float)
    a2 = abs(alpha) ** 2
    if n == 0 and m == 0:
        return TimeSeries(
            ts, np.ones_like(ts, dtype=complex), params, LambdaIndex(0, 0), alpha, 0.0
        )
    w, lev, mom, tail, _ = _weighted_series(float, a2, m, tol)
    c1 = n * params.omega1 + n * n * params.omega2
    c2 = 2.0 * n * params.omega2
    phases = np.exp(1j * c2 * np.outer(ts, lev))
    sums = phases @ (mom * w)
    values = np.conj(alpha) ** n * np.exp(1j * c1 * ts) * sums
    return TimeSeries(ts, values, params, LambdaIndex(n, m), alpha, tail)


def evolve_anharmonic_closed(
    params: Anharmonic,
    alpha: complex,
    idx: LambdaIndex,
    t_grid: np.ndarray,
) -> TimeSeries:
    """Closed form of the anharmonic expectation (finite r-sum, no series
    truncation):

        (alpha*)^n e^{i(n w1 + n^2 w2) t} exp[|alpha|^2 (e^{i 2 n w2 t} - 1)]
        * sum_{r=0}^{m} S^{r,m} |alpha|^{2r} e^{i 2 n w2 r t}.
    """
    if not isinstance(params, Anharmonic):
        raise DomainError("evolve_anharmonic_closed requires anharmonic parameters")
    n, m = validate_index(idx)
    ts = np.asarray(t_grid, dtype=float)
    a2 = abs(alpha) ** 2
    c1 = n * params.omega1 + n * n * params.omega2
    c2 = 2.0 * n * params.omega2
    rot = np.exp(1j * c2 * ts)
    poly = np.zeros_like(ts, dtype=complex)
    for r in range(m + 1):
        poly += stirling2(r, m) * a2**r * rot**r
    values = (
        np.conj(alpha) ** n * np.exp(1j * c1 * ts) * np.exp(a2 * (rot - 1.0)) * poly
    )
    return TimeSeries(ts, values, params, LambdaIndex(n, m), alpha, 0.0)


def relation_identity_residual(x: float, q: float, m: int) -> float:
    """Relative residual of the moment identity

        sum_k [k]^m x^k/[k]! = sum_{r=0}^{m} S_q^{r,m} x^r exp_q(x).
    """
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    if q < 1.0 and abs(x) >= 1.0 / (1.0 - q):
        raise ConvergenceError(
            f"|x|={abs(x)} outside radius {1.0 / (1.0 - q)} for q={q}"
        )
    w, lev, mom, _, total = _weighted_series(lambda k: q_number(k, q), x, m, 1e-16)
    lhs = float(np.dot(mom, w)) * total
    rhs = math.fsum(q_stirling2(r, m, q) * x**r for r in range(m + 1)) * q_exponential(
        x, q
    )
    return abs(lhs - rhs) / abs(rhs)


@dataclass(frozen=True)
class PhaseCurve:
    """Band-entry phase trace tagged with its provenance."""

    taus: np.ndarray
    values: np.ndarray  # complex ratios band(tau)/band(0)
    n: int
    m: int
    q: float
    j_col: int


def band_phase_trace(
    params: QOsc, idx: LambdaIndex, j_col: int, taus: np.ndarray, D: int
) -> PhaseCurve:
    """Ratio of the evolved to the initial band entry at column j_col.

    The evolution multiplies the entry by a pure phase at rate
    [j+n]_q - [j]_q (in tau), so the ratio is computed directly; the band
    entry is only built to reject vanishing elements.
    """
    n, m = validate_index(idx)
    taus = np.asarray(taus, dtype=float)
    lam = build_lambda(params, idx, D)
    if lam.matrix[j_col + n, j_col] == 0:
        raise DomainError(f"band entry vanishes at (n={n}, m={m}, j={j_col})")
    rate = q_number(j_col + n, params.q) - q_number(j_col, params.q)
    values = np.exp(1j * rate * taus)
    return PhaseCurve(taus, values, n, m, params.q, j_col)


def collapse_transform(traces: list[PhaseCurve]) -> list[np.ndarray]:
    """Unwrap each curve's phase and divide by [n]_q; for fixed (q, j_col)
    the outputs coincide pointwise with tau * q^j_col.

    Grids whose expected phase step reaches pi are refused: a wrapped step
    beyond pi is indistinguishable from its alias, so silent unwrapping
    would fake the collapse.
    """
    out = []
    for tr in traces:
        nq = q_number(tr.n, tr.q)
        if len(tr.taus) > 1:
            max_step = float(np.max(np.diff(tr.taus))) * nq * tr.q**tr.j_col
            if max_step >= math.pi:
                raise PhaseUnwrapError(
                    f"phase step {max_step:.3f} >= pi for (n={tr.n}, m={tr.m}, "
                    f"j_col={tr.j_col}); refine the tau grid"
                )
        raw = np.angle(tr.values)
        steps = np.diff(raw)
        wrapped = (steps + math.pi) % (2.0 * math.pi) - math.pi
        unwrapped = np.concatenate(([raw[0]], raw[0] + np.cumsum(wrapped)))
        out.append(unwrapped / nq)
    return out
