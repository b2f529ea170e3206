"""Closed-form algebra for single-qubit Pauli channels.

A Pauli channel T_p(rho) = p0 rho + px X rho X + py Y rho Y + pz Z rho Z is
diagonal in the Pauli operator basis with eigenvalues

    1,  eta_x = 1 - 2(py + pz),  eta_y = 1 - 2(px + pz),  eta_z = 1 - 2(px + py),

so composition and (fractional) iteration act as componentwise powers of eta.
Decay rates are in natural-log units; entropies and capacities in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import DEFAULT_TOL, ChannelDense, Tolerances, channel_from_kraus
from .errors import FractionalPowerOfNegativeError, InvalidEigenvaluesError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_PROB_TOL = 1e-12

__all__ = [
    "PauliChannel",
    "PauliEigenvalues",
    "eigenvalues",
    "from_eigenvalues",
    "power",
    "shannon_entropy",
    "hashing_lb",
    "to_dense",
    "pauli_lambda_gap",
    "repair_probabilities",
]


@dataclass(frozen=True)
class PauliChannel:
    """Probability vector (p0, px, py, pz); must be nonnegative and sum to 1."""

    p0: float
    px: float
    py: float
    pz: float

    def __post_init__(self) -> None:
        comps = self.as_tuple()
        if min(comps) < -_PROB_TOL:
            raise ValueError(f"negative probability in {comps}")
        if abs(math.fsum(comps) - 1.0) > _PROB_TOL:
            raise ValueError(f"probabilities sum to {math.fsum(comps)!r}, not 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p0, self.px, self.py, self.pz)


@dataclass(frozen=True)
class PauliEigenvalues:
    """Pauli-basis eigenvalue triple (eta_x, eta_y, eta_z), each in [-1, 1]."""

    eta_x: float
    eta_y: float
    eta_z: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.eta_x, self.eta_y, self.eta_z)


def repair_probabilities(components, slack_tol: float = 1e-4) -> PauliChannel:
    """Build a PauliChannel from components whose sum may be slightly off 1.

    The deficit is absorbed into p0, leaving the noise components (and hence
    the Pauli-basis eigenvalues) bit-for-bit unchanged. This accepts published
    parameter sets quoted with limited precision; a defect beyond ``slack_tol``
    is an error.
    """
    p0, px, py, pz = (float(x) for x in components)
    total = math.fsum((p0, px, py, pz))
    if abs(total - 1.0) > slack_tol:
        raise ValueError(f"probabilities sum to {total!r}; defect exceeds {slack_tol}")
    p0 = 1.0 - math.fsum((px, py, pz))
    return PauliChannel(p0, px, py, pz)


def eigenvalues(p: PauliChannel) -> PauliEigenvalues:
    """Pauli-basis eigenvalues eta_i = 1 - 2(p_j + p_k) for {i,j,k} = {x,y,z}."""
    return PauliEigenvalues(
        eta_x=1.0 - 2.0 * (p.py + p.pz),
        eta_y=1.0 - 2.0 * (p.px + p.pz),
        eta_z=1.0 - 2.0 * (p.px + p.py),
    )


def from_eigenvalues(eta: PauliEigenvalues) -> PauliChannel:
    """Invert the eigenvalue transform; errors outside the valid-channel region."""
    ex, ey, ez = eta.as_tuple()
    probs = [
        (1.0 + ex + ey + ez) / 4.0,
        (1.0 + ex - ey - ez) / 4.0,
        (1.0 - ex + ey - ez) / 4.0,
        (1.0 - ex - ey + ez) / 4.0,
    ]
    if min(probs) < -_PROB_TOL:
        raise InvalidEigenvaluesError(
            f"eigenvalues {eta.as_tuple()} give negative probability {min(probs)}")
    probs = [max(p, 0.0) for p in probs]
    return PauliChannel(*probs)


def power(p: PauliChannel, t: float) -> PauliChannel:
    """The t-step channel: eigenvalues raised to the t-th power.

    Integer t is unrestricted; fractional t requires all eta >= 0 (the
    continuous-time embedding), otherwise FractionalPowerOfNegativeError.
    """
    if t < 0:
        raise ValueError(f"power requires t >= 0, got {t}")
    eta = eigenvalues(p).as_tuple()
    if float(t).is_integer():
        powered = [e ** int(t) for e in eta]
    else:
        if min(eta) < 0:
            raise FractionalPowerOfNegativeError(
                f"fractional power {t} of negative eigenvalue {min(eta)}")
        powered = [e ** t for e in eta]
    return from_eigenvalues(PauliEigenvalues(*powered))


def shannon_entropy(p: PauliChannel) -> float:
    """Shannon entropy of the probability vector, in bits (0 log 0 = 0)."""
    return -math.fsum(c * math.log2(c) for c in p.as_tuple() if c > 0.0)


def hashing_lb(p: PauliChannel) -> float:
    """Hashing lower bound max(0, 1 - H(p)) on the quantum capacity, in bits."""
    return max(0.0, 1.0 - shannon_entropy(p))


def to_dense(p: PauliChannel, tol: Tolerances = DEFAULT_TOL) -> ChannelDense:
    """Dense representation with Kraus set {sqrt(p_i) P_i}."""
    kraus = []
    for prob, op in zip(p.as_tuple(), (np.eye(2, dtype=complex), PAULI_X, PAULI_Y, PAULI_Z)):
        if prob > 0.0:
            kraus.append(np.sqrt(prob) * op)
    return channel_from_kraus(kraus, tol)


def pauli_lambda_gap(p: PauliChannel, unit_tol: float = 1e-12) -> float:
    """Spectral gap -ln(max |eta_i| over non-unit eigenvalues), in nats.

    Returns +inf when every eigenvalue is unimodular (identity-like channel)
    or when all non-unit eigenvalues vanish (exact projection in one step).
    """
    moduli = [abs(e) for e in eigenvalues(p).as_tuple() if abs(e) < 1.0 - unit_tol]
    if not moduli:
        return math.inf
    r = max(moduli)
    if r <= unit_tol:
        return math.inf
    return -math.log(r)
