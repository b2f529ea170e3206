"""Entropic constants and capacity bounds for iterated GNS-symmetric channels.

Unit conventions, fixed package-wide:

* capacities, entropies, and the Lambda correction terms are in **bits** (log2);
* decay rates (the spectral gap lambda and the contraction rate alpha_c) and
  the zero-error threshold formula are in **natural-log units**.

The bounds evaluated here, for a peripheral decomposition with block sizes
{d_k} and half-iteration count t (the bounds govern the 2t-fold channel, or
time t of a semigroup):

    asymptotic:  log2(sum d_k)  <= C <= log2(sum d_k)  + exp(-2 a t) log2(L)
                 log2(max d_k)  <= Q <= log2(max d_k)  + exp(-2 a t) log2(L)
    one-shot:    C_delta <= [log2(sum d_k) + exp(-2 a t) log2(L) + h2(delta)] / (1 - delta)
                 Q_delta <= [log2(max d_k) + exp(-2 a t) log2(L) + 2 h2(delta)] / (1 - 4 delta)

with a = alpha_c lower bound and L = Lambda_c upper bound. The classical
one-shot form keeps h2(delta) inside the fraction (the proof-consistent
placement); ``h_placement="outside"`` evaluates the alternative display form.
Zero-error capacities stabilize to those of the peripheral projection for all
iteration counts beyond (n ln Lambda_c + ln 10) / lambda on n copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import (
    DEFAULT_TOL,
    ChannelDense,
    DensityMatrix,
    Tolerances,
    apply_superop,
    check_gns_symmetric,
)
from .errors import (
    DeltaOutOfRangeError,
    NegativeTimeError,
    NotGnsSymmetricError,
    SigmaNotFullRankError,
    ZeroGapError,
)
from .spectral import PeripheralStructure, gns_symmetrized

__all__ = [
    "EntropicConstants",
    "CapacityBounds",
    "binary_entropy",
    "lambda_gap",
    "pimsner_popa",
    "alpha_c_lower",
    "peripheral_capacities",
    "asymptotic_bounds",
    "one_shot_bounds",
    "zero_error_threshold",
    "compute_entropic_constants",
    "check_pimsner_popa_bound",
]

_ZERO_SPECTRUM_CUTOFF = 1e-12  # below this modulus an eigenvalue counts as exactly 0


@dataclass(frozen=True)
class EntropicConstants:
    """lambda, Lambda, the Lambda_c upper bound, and the alpha_c lower bound.

    ``lambda_gap`` and ``alpha_c_lb`` are rates in nats per step and may be
    +inf (exact projection in finitely many steps); ``sigma`` is the reference
    state the constants refer to.
    """

    lambda_gap: float
    Lambda: float
    Lambda_c_ub: float
    alpha_c_lb: float
    sigma: DensityMatrix


@dataclass(frozen=True)
class CapacityBounds:
    """Evaluated bounds at one half-iteration count t, all in bits."""

    t: float
    classical_ub: float
    quantum_ub: float
    classical_lb: float
    quantum_lb: float
    delta: float | None = None


def binary_entropy(delta: float) -> float:
    """h2(delta) in bits, with h2(0) = h2(1) = 0."""
    if delta < 0.0 or delta > 1.0:
        raise DeltaOutOfRangeError(f"binary entropy needs delta in [0, 1], got {delta}")
    if delta == 0.0 or delta == 1.0:
        return 0.0
    return -delta * math.log2(delta) - (1.0 - delta) * math.log2(1.0 - delta)


def lambda_gap(c: ChannelDense, projector: np.ndarray, sigma,
               tol: Tolerances = DEFAULT_TOL) -> float:
    """Spectral gap -ln r, with r the largest non-peripheral eigenvalue modulus.

    For GNS-symmetric channels the superoperator is self-adjoint in the GNS
    inner product, so the restricted operator norm equals the spectral radius.
    Returns +inf when no non-peripheral eigenvalue exists, or when the
    non-peripheral spectrum vanishes to floating precision.
    """
    sig = sigma if isinstance(sigma, DensityMatrix) else DensityMatrix(sigma, tol)
    report = check_gns_symmetric(c, sig, tol)
    if not report.symmetric:
        raise NotGnsSymmetricError(
            f"GNS-symmetry violated by {report.max_deviation:g}")
    sym, _, _ = gns_symmetrized(c.superop, sig.matrix)
    evals = np.linalg.eigvalsh(sym)
    moduli = np.abs(evals)
    peripheral = moduli >= 1.0 - tol.tol_peripheral
    n_per = int(peripheral.sum())
    rank = float(np.trace(projector).real)
    if abs(rank - n_per) > 0.1:
        raise ValueError(
            f"projector rank {rank:g} disagrees with {n_per} peripheral eigenvalues")
    rest = moduli[~peripheral]
    if rest.size == 0:
        return math.inf
    r = float(rest.max())
    if r <= _ZERO_SPECTRUM_CUTOFF:
        return math.inf
    return max(0.0, -math.log(r))


def pimsner_popa(sigma, tol: Tolerances = DEFAULT_TOL) -> tuple[float, float]:
    """(Lambda, Lambda_c upper bound) = (1/min-eig(sigma), its square)."""
    sig = sigma if isinstance(sigma, DensityMatrix) else DensityMatrix(sigma, tol)
    min_eig = sig.min_eigenvalue()
    if min_eig <= tol.tol_psd:
        raise SigmaNotFullRankError(f"sigma minimum eigenvalue {min_eig:g}")
    lam = 1.0 / min_eig
    return lam, lam * lam


def alpha_c_lower(lambda_gap_value: float, lambda_c_ub: float) -> float:
    """Lower bound lambda / ln(10 Lambda_c) on the complete entropy contraction rate."""
    if lambda_c_ub < 1.0:
        raise ValueError(f"Lambda_c must be >= 1, got {lambda_c_ub}")
    if lambda_gap_value == math.inf:
        return math.inf
    return lambda_gap_value / math.log(10.0 * lambda_c_ub)


def peripheral_capacities(structure: PeripheralStructure) -> tuple[float, float]:
    """(chi(P), I_c(P)) = (log2 sum d_k, log2 max d_k), in bits."""
    d = structure.d_list
    return math.log2(sum(d)), math.log2(max(d))


def _decay(alpha: float, t: float) -> float:
    """exp(-2 alpha t) with the +inf short-circuit (0 for t > 0, 1 at t = 0)."""
    if alpha == math.inf:
        return 1.0 if t == 0 else 0.0
    return math.exp(-2.0 * alpha * t)


def _check_time(t: float, mode: str) -> float:
    if mode not in ("discrete", "semigroup"):
        raise ValueError(f"mode must be 'discrete' or 'semigroup', got {mode!r}")
    if t < 0:
        raise NegativeTimeError(f"t must be nonnegative, got {t}")
    if mode == "discrete" and not float(t).is_integer():
        raise ValueError(f"discrete mode requires integer t, got {t}")
    return float(t)


def asymptotic_bounds(structure: PeripheralStructure, k: EntropicConstants,
                      t: float, mode: str = "discrete") -> CapacityBounds:
    """Two-sided bounds on C and Q of the 2t-fold channel (or semigroup at time t)."""
    t = _check_time(t, mode)
    chi_p, ic_p = peripheral_capacities(structure)
    corr = _decay(k.alpha_c_lb, t) * math.log2(k.Lambda_c_ub)
    return CapacityBounds(
        t=t,
        classical_ub=chi_p + corr,
        quantum_ub=ic_p + corr,
        classical_lb=chi_p,
        quantum_lb=ic_p,
    )


def one_shot_bounds(structure: PeripheralStructure, k: EntropicConstants,
                    t: float, delta: float, mode: str = "discrete",
                    h_placement: str = "inside") -> CapacityBounds:
    """One-shot delta-error upper bounds on the 2t-fold channel.

    The quantum bound requires delta < 1/4; for delta in [1/4, 1/2) the
    quantum upper bound is reported as +inf.
    """
    t = _check_time(t, mode)
    if not 0.0 <= delta < 0.5:
        raise DeltaOutOfRangeError(f"delta must lie in [0, 1/2), got {delta}")
    if h_placement not in ("inside", "outside"):
        raise ValueError(f"h_placement must be 'inside' or 'outside', got {h_placement!r}")
    chi_p, ic_p = peripheral_capacities(structure)
    corr = _decay(k.alpha_c_lb, t) * math.log2(k.Lambda_c_ub)
    h = binary_entropy(delta)
    if h_placement == "inside":
        classical_ub = (chi_p + corr + h) / (1.0 - delta)
    else:
        classical_ub = (chi_p + corr) / (1.0 - delta) + h
    if delta < 0.25:
        quantum_ub = (ic_p + corr + 2.0 * h) / (1.0 - 4.0 * delta)
    else:
        quantum_ub = math.inf
    return CapacityBounds(
        t=t,
        classical_ub=classical_ub,
        quantum_ub=quantum_ub,
        classical_lb=chi_p,
        quantum_lb=ic_p,
        delta=delta,
    )


def zero_error_threshold(k: EntropicConstants, n_copies: int = 1) -> float:
    """Iteration count beyond which zero-error capacities equal those of P,
    for n i.i.d. copies: (n ln Lambda_c + ln 10) / lambda."""
    if n_copies < 1:
        raise ValueError(f"n_copies must be >= 1, got {n_copies}")
    if k.lambda_gap == math.inf:
        return 0.0
    if k.lambda_gap <= 0.0:
        raise ZeroGapError("spectral gap is zero; no finite stabilization threshold")
    return (n_copies * math.log(k.Lambda_c_ub) + math.log(10.0)) / k.lambda_gap


def compute_entropic_constants(c: ChannelDense, projector: np.ndarray, sigma,
                               tol: Tolerances = DEFAULT_TOL) -> EntropicConstants:
    """Assemble all constants for one channel through the dense spectral path."""
    sig = sigma if isinstance(sigma, DensityMatrix) else DensityMatrix(sigma, tol)
    lam = lambda_gap(c, projector, sig, tol)
    big_lambda, lambda_c_ub = pimsner_popa(sig, tol)
    return EntropicConstants(
        lambda_gap=lam,
        Lambda=big_lambda,
        Lambda_c_ub=lambda_c_ub,
        alpha_c_lb=alpha_c_lower(lam, lambda_c_ub),
        sigma=sig,
    )


def check_pimsner_popa_bound(projector: np.ndarray, lam: float,
                             n_samples: int = 20, seed: int = 0) -> float:
    """Optional diagnostic for Lambda: largest violation of X <= lam * P(X)
    over seeded random PSD X (most negative eigenvalue, 0.0 if none)."""
    d = int(round(np.sqrt(projector.shape[0])))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        x = g @ g.conj().T
        x /= np.trace(x).real
        gap = lam * apply_superop(projector, x) - x
        worst = min(worst, float(np.linalg.eigvalsh((gap + gap.conj().T) / 2).min()))
    return worst
