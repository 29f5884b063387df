"""q-arithmetic and combinatorics: q-numbers, q-factorials, the q-exponential,
(q-)Stirling numbers of the second kind and the weight distributions used by
the dynamics (binomial, Poisson, q-Poisson).

All factorial-like magnitudes are kept in log space and probability weights
are built by term-ratio recursions, so nothing here overflows for moderate
deformations even at large order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, DomainError

# switch-over width for the q -> 1 limit of (q^n - 1)/(q - 1)
_Q_ONE_WINDOW = 1e-8

# default tail tolerance for truncated series; two digits of headroom over
# the tightest downstream check
DEFAULT_TOL = 1e-12

_MAX_TERMS = 100_000


def _require_positive_q(q: float) -> None:
    if not q > 0:
        raise DomainError(f"q must be positive, got q={q}")


def q_number(n: int, q: float) -> float:
    """Basic q-number (q^n - 1)/(q - 1), with a stable q -> 1 branch.

    Any real q is accepted; q <= 0 falls back to the raw ratio, whose
    denominator is then bounded away from zero.
    """
    if n < 0:
        raise DomainError(f"n must be nonnegative, got n={n}")
    if n == 0:
        return 0.0
    if n == 1:
        return 1.0
    if abs(q - 1.0) < _Q_ONE_WINDOW:
        # first-order expansion about q = 1; the neglected term is O(n^3 eps^2)
        return n * (1.0 + 0.5 * (n - 1) * (q - 1.0))
    if q > 0:
        return math.expm1(n * math.log(q)) / math.expm1(math.log(q))
    return (q**n - 1.0) / (q - 1.0)


def log_q_factorial(n: int, q: float) -> float:
    """ln([n]_q!) accumulated as a sum of logs (the raw product overflows
    for q > 1 near n ~ 40)."""
    _require_positive_q(q)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got n={n}")
    return math.fsum(math.log(q_number(k, q)) for k in range(2, n + 1))


def q_factorial(n: int, q: float) -> float:
    """[n]_q! as a float; raises OverflowError territory only through exp,
    prefer log_q_factorial for large n."""
    return math.exp(log_q_factorial(n, q))


def q_exponential(x: float, q: float, tol: float = 1e-14) -> float:
    """q-deformed exponential sum_k x^k/[k]_q! via term-ratio recursion.

    For q < 1 the series has radius of convergence 1/(1-q).
    """
    _require_positive_q(q)
    if q < 1.0 and abs(x) >= 1.0 / (1.0 - q):
        raise ConvergenceError(
            f"|x|={abs(x)} outside radius {1.0 / (1.0 - q)} for q={q}"
        )
    total = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= x / q_number(k, q)
        total += term
        ratio = abs(x) / q_number(k + 1, q)
        if ratio < 1.0 and abs(term) * ratio / (1.0 - ratio) < tol * abs(total):
            return total
        if k > _MAX_TERMS:
            raise ConvergenceError("q_exponential failed to converge")


def stirling2(r: int, m: int) -> float:
    """Classical Stirling number of the second kind via the finite sum
    sum_k (-1)^(r-k) k^m / (k! (r-k)!), evaluated in exact rational
    arithmetic (convention 0^0 = 1)."""
    if r < 0 or m < 0:
        raise DomainError("indices must be nonnegative")
    total = Fraction(0)
    for k in range(r + 1):
        km = 1 if (k == 0 and m == 0) else k**m
        total += Fraction(
            (-1) ** (r - k) * km, math.factorial(k) * math.factorial(r - k)
        )
    return float(total)


def q_stirling2(s: int, m: int, q: float) -> float:
    """q-deformed Stirling number of the second kind,

        S_q^{s,m} = sum_{k=0}^{s} (-1)^{s-k} q^{((s-k)^2-(s-k))/2}
                    [k]_q^m / ([k]_q! [s-k]_q!),

    with the convention [0]_q^0 = 1.  The alternating sum is accumulated
    with fsum; term magnitudes are formed by direct products when they fit
    in double precision and in log space otherwise.
    """
    _require_positive_q(q)
    if s < 0 or m < 0:
        raise DomainError("indices must be nonnegative")
    lnq = math.log(q)
    terms = []
    for k in range(s + 1):
        r = s - k
        if k == 0 and m > 0:
            continue  # [0]_q^m = 0
        sign = -1.0 if r % 2 else 1.0
        tri = (r * r - r) // 2
        if k == 0:
            ln_mag = tri * lnq - log_q_factorial(s, q)
        else:
            ln_mag = (
                tri * lnq
                + m * math.log(q_number(k, q))
                - log_q_factorial(k, q)
                - log_q_factorial(r, q)
            )
        if abs(ln_mag) < 690.0:
            # direct products keep an extra couple of digits vs exp(ln_mag)
            num = q**tri * (q_number(k, q) ** m if k > 0 else 1.0)
            den = q_factorial(k, q) * q_factorial(r, q)
            terms.append(sign * num / den)
        else:
            terms.append(sign * math.exp(ln_mag))
    return math.fsum(terms)


@dataclass(frozen=True)
class StirlingTable:
    """Table of S_q^{s,m} for 0 <= s <= max_s, 0 <= m <= max_m at fixed q."""

    entries: np.ndarray
    q: float

    def __call__(self, s: int, m: int) -> float:
        if s > m:
            return 0.0
        return float(self.entries[s, m])


def q_stirling_table(max_s: int, max_m: int, q: float) -> StirlingTable:
    entries = np.zeros((max_s + 1, max_m + 1))
    for s in range(max_s + 1):
        for m in range(s, max_m + 1):  # S_q^{s,m} = 0 for s > m
            entries[s, m] = q_stirling2(s, m, q)
    entries.setflags(write=False)
    return StirlingTable(entries=entries, q=q)


@dataclass(frozen=True)
class WeightDistribution:
    """Normalized nonnegative weight sequence with a certified tail bound."""

    weights: np.ndarray
    tail_bound: float
    kind: str  # "binomial" | "poisson" | "q-poisson"

    def __post_init__(self):
        self.weights.setflags(write=False)

    def __len__(self) -> int:
        return len(self.weights)

    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.weights)), self.weights))

    def variance(self) -> float:
        k = np.arange(len(self.weights))
        mu = self.mean()
        return float(np.dot((k - mu) ** 2, self.weights))


def binomial_weights(j: int, p: float) -> WeightDistribution:
    """Binomial weights B(j, k, p) = C(j,k) p^(j-k) (1-p)^k for k = 0..j.

    Note the convention: p sits on the (j-k) power, so the mean of the
    k-index is j(1-p).
    """
    if j < 0:
        raise DomainError(f"j must be nonnegative, got {j}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    k = np.arange(j + 1)
    comb = np.array([math.comb(j, int(kk)) for kk in k], dtype=float)
    w = comb * p ** (j - k) * (1.0 - p) ** k
    return WeightDistribution(weights=w, tail_bound=0.0, kind="binomial")


def _ratio_weights(ratio_at, tol: float) -> tuple[np.ndarray, float]:
    """Unnormalized weights w_0 = 1, w_k = w_{k-1} * ratio_at(k), truncated
    when the geometric tail bound drops below tol relative to the running
    sum.  ratio_at(k) must be nonincreasing in k."""
    w = [1.0]
    total = 1.0
    tail = 0.0
    while True:
        k = len(w)
        nxt = w[-1] * ratio_at(k)
        if nxt == 0.0:
            break
        w.append(nxt)
        total += nxt
        r_next = ratio_at(k + 1)
        if r_next < 1.0:
            tail = nxt * r_next / (1.0 - r_next)
            if tail < tol * total:
                break
        if k > _MAX_TERMS:
            raise ConvergenceError("weight recursion failed to terminate")
    arr = np.array(w) / (total + tail)
    return arr, tail / (total + tail)


def q_poisson_weights(
    alpha_sq: float, q: float, tol: float = DEFAULT_TOL
) -> WeightDistribution:
    """q-deformed Poisson weights |alpha|^(2k)/([k]_q! exp_q(|alpha|^2)),
    built by the overflow-free ratio recursion and normalized by the
    truncated sum."""
    _require_positive_q(q)
    if alpha_sq < 0:
        raise DomainError(f"alpha_sq must be nonnegative, got {alpha_sq}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if q < 1.0 and alpha_sq >= 1.0 / (1.0 - q):
        raise ConvergenceError(
            f"alpha_sq={alpha_sq} outside radius {1.0 / (1.0 - q)} for q={q}"
        )
    if alpha_sq == 0.0:
        return WeightDistribution(np.array([1.0]), 0.0, "q-poisson")
    w, tail = _ratio_weights(lambda k: alpha_sq / q_number(k, q), tol)
    return WeightDistribution(weights=w, tail_bound=tail, kind="q-poisson")


def poisson_weights(alpha_sq: float, tol: float = DEFAULT_TOL) -> WeightDistribution:
    """Truncated classical Poisson pmf of mean alpha_sq."""
    if alpha_sq < 0:
        raise DomainError(f"alpha_sq must be nonnegative, got {alpha_sq}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if alpha_sq == 0.0:
        return WeightDistribution(np.array([1.0]), 0.0, "poisson")
    w, tail = _ratio_weights(lambda k: alpha_sq / k, tol)
    return WeightDistribution(weights=w, tail_bound=tail, kind="poisson")
