"""Dense representation and algebra of finite-dimensional quantum channels.

Vectorization convention (fixed for the whole package): **column stacking**.
For a matrix A,

    A = [[a, b],        vec(A) = (a, c, b, d)^T,
         [c, d]]

so that vec(A B C) = (C^T kron A) vec(B) and the superoperator of
rho -> sum_i K_i rho K_i^dag is  S = sum_i conj(K_i) kron K_i.
All spectral and bound computations elsewhere assume this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    NegativeTimeError,
    NotCompletelyPositiveError,
    NotTracePreservingError,
    NumericalFailureError,
    ResourceLimitError,
    SigmaNotFullRankError,
)

DEFAULT_DIM_CAP = 64

__all__ = [
    "Tolerances",
    "DensityMatrix",
    "ChannelDense",
    "GnsReport",
    "vec",
    "unvec",
    "apply_superop",
    "channel_from_kraus",
    "identity_channel",
    "compose",
    "iterate",
    "tensor",
    "adjoint",
    "apply_channel",
    "check_gns_symmetric",
    "find_invariant_state",
    "maximally_mixed",
    "channel_to_json",
    "channel_from_json",
    "matrix_to_json",
    "matrix_from_json",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used by validation and spectral classification.

    All values must lie in [0, 1e-2]; defaults suit double precision on
    systems of dimension <= 64.
    """

    tol_herm: float = 1e-10
    tol_trace: float = 1e-10
    tol_psd: float = 1e-9
    tol_cptp: float = 1e-9
    tol_peripheral: float = 1e-8
    tol_eq: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("tol_herm", "tol_trace", "tol_psd", "tol_cptp",
                     "tol_peripheral", "tol_eq"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1e-2):
                raise ValueError(f"{name}={v} outside [0, 1e-2]")


DEFAULT_TOL = Tolerances()


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(m).T.reshape(-1)


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape(dim, dim).T


def apply_superop(superop: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Apply a superoperator matrix to a square operator."""
    d = rho.shape[0]
    return unvec(superop @ vec(rho), d)


def _as_complex_matrix(m, dim: int | None = None) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {a.shape[0]}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix contains non-finite entries")
    return a


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, positive semidefinite."""

    def __init__(self, matrix, tol: Tolerances = DEFAULT_TOL):
        m = _as_complex_matrix(matrix)
        if np.max(np.abs(m - m.conj().T)) > tol.tol_herm:
            raise ValueError("matrix is not Hermitian within tol_herm")
        tr = np.trace(m)
        if abs(tr - 1.0) > tol.tol_trace:
            raise ValueError(f"trace {tr} differs from 1 beyond tol_trace")
        m = (m + m.conj().T) / 2
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -tol.tol_psd:
            raise ValueError(f"negative eigenvalue {eigs.min()} beyond tol_psd")
        self.matrix = _readonly(m)
        self.dim = m.shape[0]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(np.eye(dim) / dim)


def _kraus_to_superop(kraus: list[np.ndarray]) -> np.ndarray:
    d = kraus[0].shape[0]
    s = np.zeros((d * d, d * d), dtype=complex)
    for k in kraus:
        s += np.kron(k.conj(), k)
    return s


def choi_from_superop(superop: np.ndarray, dim: int) -> np.ndarray:
    """Choi matrix J = sum_ij E_ij kron Phi(E_ij), by reshuffling the superoperator."""
    s4 = superop.reshape(dim, dim, dim, dim)
    return s4.transpose(3, 1, 2, 0).reshape(dim * dim, dim * dim)


def kraus_from_choi(choi: np.ndarray, dim: int, cutoff: float = 1e-12) -> list[np.ndarray]:
    """Kraus operators from an (approximately PSD) Choi matrix."""
    herm = (choi + choi.conj().T) / 2
    w, v = np.linalg.eigh(herm)
    scale = max(w.max(), 1.0)
    return [unvec(np.sqrt(wi) * v[:, i], dim)
            for i, wi in enumerate(w) if wi > cutoff * scale]


@dataclass(frozen=True)
class ChannelDense:
    """A CPTP map held as Kraus operators plus the derived superoperator matrix.

    Construct through :func:`channel_from_kraus` (or the algebra operations),
    which validate trace preservation, complete positivity, and consistency of
    the two representations. Instances are immutable.
    """

    dim: int
    kraus: tuple[np.ndarray, ...]
    superop: np.ndarray
    trace_preserving: bool = field(default=True, compare=False)

    def choi(self) -> np.ndarray:
        return choi_from_superop(self.superop, self.dim)

    def kraus_sum(self) -> np.ndarray:
        """sum_i K_i^dag K_i (identity for a trace-preserving channel)."""
        return sum(k.conj().T @ k for k in self.kraus)


def _validate_channel(c: ChannelDense, tol: Tolerances) -> None:
    if c.trace_preserving:
        dev = np.max(np.abs(c.kraus_sum() - np.eye(c.dim)))
        if dev > tol.tol_cptp:
            raise NotTracePreservingError(
                f"sum K^dag K deviates from identity by {dev:g}")
    choi = c.choi()
    min_eig = np.linalg.eigvalsh((choi + choi.conj().T) / 2).min()
    if min_eig < -tol.tol_psd:
        raise NotCompletelyPositiveError(
            f"Choi matrix has eigenvalue {min_eig:g}")
    rebuilt = _kraus_to_superop(list(c.kraus))
    dev = np.max(np.abs(rebuilt - c.superop))
    if dev > max(tol.tol_eq, 1e-12 * max(1.0, np.max(np.abs(c.superop)))):
        raise NumericalFailureError(
            f"superoperator inconsistent with Kraus set (deviation {dev:g})")


def _build_channel(kraus: list[np.ndarray], superop: np.ndarray,
                   tol: Tolerances, trace_preserving: bool = True) -> ChannelDense:
    d = kraus[0].shape[0]
    c = ChannelDense(
        dim=d,
        kraus=tuple(_readonly(k) for k in kraus),
        superop=_readonly(superop),
        trace_preserving=trace_preserving,
    )
    _validate_channel(c, tol)
    return c


def channel_from_kraus(kraus, tol: Tolerances = DEFAULT_TOL,
                       max_dim: int = DEFAULT_DIM_CAP) -> ChannelDense:
    """Build and validate a channel from a nonempty list of square Kraus operators."""
    if not kraus:
        raise DimensionMismatchError("Kraus list is empty")
    mats = [_as_complex_matrix(k) for k in kraus]
    d = mats[0].shape[0]
    for k in mats[1:]:
        if k.shape[0] != d:
            raise DimensionMismatchError(
                f"Kraus operators have mixed dimensions {d} and {k.shape[0]}")
    if d > max_dim:
        raise ResourceLimitError(f"dimension {d} exceeds cap {max_dim}")
    return _build_channel(mats, _kraus_to_superop(mats), tol)


def identity_channel(dim: int, tol: Tolerances = DEFAULT_TOL) -> ChannelDense:
    return channel_from_kraus([np.eye(dim)], tol)


def compose(a: ChannelDense, b: ChannelDense, tol: Tolerances = DEFAULT_TOL) -> ChannelDense:
    """Composition a after b: superop is the matrix product, Kraus the pairwise products."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch {a.dim} vs {b.dim}")
    kraus = [ka @ kb for ka in a.kraus for kb in b.kraus]
    return _build_channel(kraus, a.superop @ b.superop, tol)


def iterate(c: ChannelDense, t: int, tol: Tolerances = DEFAULT_TOL) -> ChannelDense:
    """t-fold composition of c with itself, via repeated squaring of the superoperator.

    The Kraus set of the result is re-derived from the Choi matrix (at most
    dim^2 operators), avoiding the exponential blowup of pairwise products.
    """
    if t < 0 or int(t) != t:
        raise NegativeTimeError(f"iteration count must be a nonnegative integer, got {t}")
    t = int(t)
    if t == 0:
        return identity_channel(c.dim, tol)
    power = np.linalg.matrix_power(c.superop, t)
    kraus = kraus_from_choi(choi_from_superop(power, c.dim), c.dim)
    return _build_channel(kraus, power, tol)


def tensor(a: ChannelDense, b: ChannelDense, tol: Tolerances = DEFAULT_TOL,
           max_dim: int = DEFAULT_DIM_CAP) -> ChannelDense:
    """Tensor product channel; Kraus set is all tensor pairs."""
    d = a.dim * b.dim
    if d > max_dim:
        raise ResourceLimitError(f"tensor dimension {d} exceeds cap {max_dim}")
    kraus = [np.kron(ka, kb) for ka in a.kraus for kb in b.kraus]
    return _build_channel(kraus, _kraus_to_superop(kraus), tol)


def adjoint(c: ChannelDense, tol: Tolerances = DEFAULT_TOL) -> ChannelDense:
    """Hilbert-Schmidt adjoint map. Unital and completely positive but in
    general not trace preserving, so trace-preservation validation is skipped."""
    kraus = [k.conj().T for k in c.kraus]
    return _build_channel(kraus, c.superop.conj().T, tol, trace_preserving=False)


def apply_channel(c: ChannelDense, rho: np.ndarray) -> np.ndarray:
    """Apply the channel to an operator (not restricted to states)."""
    m = _as_complex_matrix(rho, c.dim)
    return apply_superop(c.superop, m)


@dataclass(frozen=True)
class GnsReport:
    """Outcome of a GNS-symmetry check.

    ``max_deviation`` is the largest violation of the defining identity
    tr(X Phi*(Y) sigma) = tr(Phi*(X) Y sigma) over the full matrix-unit basis;
    ``invariance_deviation`` reports ||Phi(sigma) - sigma||_max separately.
    """

    symmetric: bool
    max_deviation: float
    invariant: bool
    invariance_deviation: float


def _sigma_matrix(sigma, dim: int, tol: Tolerances) -> np.ndarray:
    m = sigma.matrix if isinstance(sigma, DensityMatrix) else DensityMatrix(sigma, tol).matrix
    if m.shape[0] != dim:
        raise DimensionMismatchError(
            f"state dimension {m.shape[0]} does not match channel dimension {dim}")
    return m


def check_gns_symmetric(c: ChannelDense, sigma, tol: Tolerances = DEFAULT_TOL) -> GnsReport:
    """Evaluate the GNS-symmetry identity over the full basis of matrix units.

    The identity for all (X, Y) = (E_ij, E_kl) is equivalent to two reindexed
    matrix products of the adjoint superoperator, which is how it is evaluated
    here; tests cross-check against a literal trace-by-trace loop.
    """
    d = c.dim
    sig = _sigma_matrix(sigma, d, tol)
    if np.linalg.eigvalsh(sig).min() <= tol.tol_psd:
        raise SigmaNotFullRankError("sigma must be full rank for the GNS check")
    sd = c.superop.conj().T
    sd4 = sd.reshape(d, d, d * d)
    lhs = np.einsum("Bb,Bac->bac", sig, sd4).reshape(d, d, d, d)
    rhs = np.einsum("aA,bAc->bac", sig, sd4).reshape(d, d, d, d)
    # lhs[i,j,l,k] vs rhs[k,l,j,i], both reindexed to [i,j,k,l]
    dev = float(np.max(np.abs(lhs.transpose(0, 1, 3, 2) - rhs.transpose(3, 2, 0, 1))))
    inv_dev = float(np.max(np.abs(apply_superop(c.superop, sig) - sig)))
    return GnsReport(
        symmetric=dev <= tol.tol_eq,
        max_deviation=dev,
        invariant=inv_dev <= tol.tol_eq,
        invariance_deviation=inv_dev,
    )


def find_invariant_state(c: ChannelDense, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """A fixed point of the channel.

    Computed as the orthogonal projection of the maximally mixed state onto
    the kernel of (S - 1), Hermitized, clipped to PSD, and renormalized; on a
    degenerate fixed space this deterministically selects the projection of
    1/d (basis independent). Raises NumericalFailureError if no eigenvalue
    lies within tol_peripheral of 1, which cannot happen for a valid channel.
    """
    d = c.dim
    s = c.superop - np.eye(d * d)
    _, svals, vh = np.linalg.svd(s)
    cutoff = max(tol.tol_peripheral, svals[0] * 1e-14) if svals.size else tol.tol_peripheral
    kernel = vh.conj().T[:, svals <= cutoff]
    if kernel.shape[1] == 0:
        raise NumericalFailureError("no eigenvalue within tol_peripheral of 1")
    target = vec(np.eye(d) / d)
    x = kernel @ (kernel.conj().T @ target)
    rho = unvec(x, d)
    rho = (rho + rho.conj().T) / 2
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if total <= 0:
        raise NumericalFailureError("fixed-point projection vanished")
    rho = (v * (w / total)) @ v.conj().T
    dev = np.max(np.abs(apply_superop(c.superop, rho) - rho))
    if dev > max(tol.tol_eq, 1e3 * np.finfo(float).eps * d):
        raise NumericalFailureError(f"candidate fixed point moves by {dev:g}")
    return DensityMatrix(rho, tol)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------
# A complex matrix is a list of rows, each row a list of [re, im] pairs.
# A channel file is {"dim": d, "kraus": [matrix, ...]}; this is the only wire
# representation of channels.


def matrix_to_json(m: np.ndarray) -> list:
    a = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in a]


def matrix_from_json(rows, dim: int | None = None) -> np.ndarray:
    try:
        a = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix entries: {exc}") from exc
    if a.ndim != 3 or a.shape[2] != 2:
        raise ValueError(f"matrix must be rows of [re, im] pairs, got shape {a.shape}")
    m = a[..., 0] + 1j * a[..., 1]
    return _as_complex_matrix(m, dim)


def channel_to_json(c: ChannelDense) -> dict:
    return {"dim": c.dim, "kraus": [matrix_to_json(k) for k in c.kraus]}


def channel_from_json(doc: dict, tol: Tolerances = DEFAULT_TOL,
                      max_dim: int = DEFAULT_DIM_CAP) -> ChannelDense:
    if not isinstance(doc, dict) or "dim" not in doc or "kraus" not in doc:
        raise ValueError('channel document must contain "dim" and "kraus"')
    dim = int(doc["dim"])
    kraus = [matrix_from_json(k, dim) for k in doc["kraus"]]
    return channel_from_kraus(kraus, tol, max_dim)
