"""Shared fixtures and independent test oracles.

The oracles here deliberately avoid the code paths they check: the GNS
deviation is a literal trace-by-trace loop over matrix units, the logical
channel oracles go through Monte Carlo sampling and a dense 32-dimensional
superoperator conjugation, and channel actions are probed via the Pauli
transfer matrix.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from itercap.pauli import PauliChannel
from itercap.stabilizer import StabilizerCode, five_qubit_code

I2 = np.eye(2, dtype=complex)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PY = np.array([[0, -1j], [1j, 0]])
PZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_OPS = (I2, PX, PY, PZ)

FIG1_COMPONENTS = (0.9986, 0.00047, 0.00047, 0.00047)

_PARITY = np.array([bin(i).count("1") & 1 for i in range(32)], dtype=np.uint8)
_XDIG = np.array([0, 1, 1, 0], dtype=np.uint8)  # digit 0..3 = I,X,Y,Z
_ZDIG = np.array([0, 0, 1, 1], dtype=np.uint8)
_POW2 = (1 << np.arange(5)).astype(np.uint8)
# (anticommutes with logical Z, with logical X) -> channel digit I,X,Y,Z
_CLASS_DIGIT = np.array([0, 1, 3, 2], dtype=np.uint8)


def random_channel_kraus(rng: np.random.Generator, dim: int, n_kraus: int):
    """Random CPTP Kraus set from a Haar-ish random isometry."""
    g = rng.normal(size=(n_kraus * dim, dim)) + 1j * rng.normal(size=(n_kraus * dim, dim))
    q, _ = np.linalg.qr(g)
    return [q[i * dim:(i + 1) * dim, :] for i in range(n_kraus)]


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def gns_deviation_loop(kraus, sigma) -> float:
    """Literal max violation of tr(X Phi*(Y) sigma) = tr(Phi*(X) Y sigma) over
    all matrix-unit pairs, with Phi*(Y) = sum K^dag Y K."""
    d = kraus[0].shape[0]
    units = [np.outer(np.eye(d)[:, i], np.eye(d)[:, j]) for i in range(d) for j in range(d)]
    adj = [sum(k.conj().T @ u @ k for k in kraus) for u in units]
    dev = 0.0
    for a, fa in zip(units, adj):
        for b, fb in zip(units, adj):
            lhs = np.trace(a @ fb @ sigma)
            rhs = np.trace(fa @ b @ sigma)
            dev = max(dev, abs(lhs - rhs))
    return dev


def ptm_diagonal(superop: np.ndarray) -> tuple[float, float, float]:
    """(eta_x, eta_y, eta_z) read off a single-qubit superoperator via
    tr(P Phi(P))/2 on the Pauli operators."""
    out = []
    for p in (PX, PY, PZ):
        image = (superop @ p.T.reshape(-1)).reshape(2, 2).T
        out.append(float(np.trace(p @ image).real) / 2)
    return tuple(out)


def _masks_from_digits(digits: np.ndarray):
    x = (_XDIG[digits] * _POW2).sum(axis=-1).astype(np.uint8)
    z = (_ZDIG[digits] * _POW2).sum(axis=-1).astype(np.uint8)
    return x, z


def _decode_masks(code: StabilizerCode, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorized table decoding of 5-qubit error masks to logical digits."""
    gx = np.array([g.xbits for g in code.generators], dtype=np.uint8)
    gz = np.array([g.zbits for g in code.generators], dtype=np.uint8)
    synd = np.zeros(x.shape, dtype=np.uint8)
    for i in range(4):
        synd |= (_PARITY[x & gz[i]] ^ _PARITY[z & gx[i]]) << i
    corr_x = np.array([code.syndrome_table[s].xbits for s in range(16)], dtype=np.uint8)
    corr_z = np.array([code.syndrome_table[s].zbits for s in range(16)], dtype=np.uint8)
    rx = x ^ corr_x[synd]
    rz = z ^ corr_z[synd]
    anti_z = _PARITY[rx & 0b11111]  # logical Z = ZZZZZ
    anti_x = _PARITY[rz & 0b11111]  # logical X = XXXXX
    return _CLASS_DIGIT[anti_z + 2 * anti_x]


def _sample_digits(rng, probs, shape) -> np.ndarray:
    cum = np.cumsum(probs[:3])
    return (rng.random(shape)[..., None] >= cum).sum(axis=-1).astype(np.uint8)


def mc_logical_channel(p: PauliChannel, shots: int, seed: int,
                       batch: int = 1_000_000) -> np.ndarray:
    """Monte Carlo estimate of the 5-qubit logical distribution (I, X, Y, Z)."""
    code = five_qubit_code()
    rng = np.random.default_rng(seed)
    probs = np.array(p.as_tuple())
    counts = np.zeros(4, dtype=np.int64)
    done = 0
    while done < shots:
        n = min(batch, shots - done)
        digits = _sample_digits(rng, probs, (n, 5))
        x, z = _masks_from_digits(digits)
        counts += np.bincount(_decode_masks(code, x, z), minlength=4)
        done += n
    return counts / shots


def mc_level2_blockwise(p: PauliChannel, shots: int, seed: int,
                        batch: int = 200_000) -> np.ndarray:
    """Monte Carlo over 25 physical qubits with blockwise decoding: five inner
    5-qubit blocks, then the outer code on the residual logical errors."""
    code = five_qubit_code()
    rng = np.random.default_rng(seed)
    probs = np.array(p.as_tuple())
    counts = np.zeros(4, dtype=np.int64)
    done = 0
    while done < shots:
        n = min(batch, shots - done)
        digits = _sample_digits(rng, probs, (n, 5, 5))
        x, z = _masks_from_digits(digits)
        inner = _decode_masks(code, x.reshape(-1), z.reshape(-1)).reshape(n, 5)
        ox, oz = _masks_from_digits(inner)
        counts += np.bincount(_decode_masks(code, ox, oz), minlength=4)
        done += n
    return counts / shots


def dense_logical_channel(p: PauliChannel) -> tuple[float, float, float, float]:
    """Logical distribution via dense 32-dimensional superoperator conjugation:
    encoder isometry from the code projector, noise as 4^5 Kraus conjugations,
    decoder as the syndrome-measure-correct-decode channel."""
    code = five_qubit_code()

    def dense_pauli(ps) -> np.ndarray:
        m = np.array([[1.0]], dtype=complex)
        for q in range(5):
            xb, zb = (ps.xbits >> q) & 1, (ps.zbits >> q) & 1
            m = np.kron(m, PAULI_OPS[(0, 1, 3, 2)[xb + 2 * zb]])
        return m

    gens = [dense_pauli(g) for g in code.generators]
    proj = np.eye(32, dtype=complex)
    for g in gens:
        proj = proj @ (np.eye(32) + g) / 2
    v0 = proj[:, 0] / np.linalg.norm(proj[:, 0])
    v1 = dense_pauli(code.logical_x) @ v0
    enc = np.stack([v0, v1], axis=1)

    def syndrome_projector(s: int) -> np.ndarray:
        m = np.eye(32, dtype=complex)
        for i, g in enumerate(gens):
            sign = -1.0 if (s >> i) & 1 else 1.0
            m = m @ (np.eye(32) + sign * g) / 2
        return m

    dec_kraus = [
        enc.conj().T @ dense_pauli(code.syndrome_table[s]) @ syndrome_projector(s)
        for s in range(16)
    ]
    noise_kraus = []
    for digits in itertools.product(range(4), repeat=5):
        w = 1.0
        m = np.array([[1.0]], dtype=complex)
        for d in digits:
            w *= p.as_tuple()[d]
            m = np.kron(m, PAULI_OPS[d])
        if w > 0:
            noise_kraus.append(np.sqrt(w) * m)

    eta = []
    for pauli in (PX, PY, PZ):
        rho5 = enc @ pauli @ enc.conj().T
        rho5 = sum(k @ rho5 @ k.conj().T for k in noise_kraus)
        out = sum(k @ rho5 @ k.conj().T for k in dec_kraus)
        eta.append(float(np.trace(pauli @ out).real) / 2)
    ex, ey, ez = eta
    return ((1 + ex + ey + ez) / 4, (1 + ex - ey - ez) / 4,
            (1 - ex + ey - ez) / 4, (1 - ex - ey + ez) / 4)


# ---------------------------------------------------------------------------
# constructed channels with known peripheral structure
# ---------------------------------------------------------------------------


def conditional_expectation_kraus(omega: np.ndarray):
    """Kraus set of rho -> tr_2(rho) tensor omega on C^2 tensor C^2."""
    lam, vecs = np.linalg.eigh(omega)
    kraus = []
    for j in range(omega.shape[0]):
        for i in range(omega.shape[0]):
            kraus.append(np.sqrt(lam[j]) *
                         np.kron(np.eye(2), np.outer(vecs[:, j], np.eye(2)[:, i])))
    return kraus


def two_block_replacer_kraus(omega2: np.ndarray):
    """Kraus set of the C^3 = C^1 + C^2 replacer rho -> q1 |0><0| + q2 omega2."""
    lam, vecs = np.linalg.eigh(omega2)
    kraus = [np.diag([1.0, 0.0, 0.0]).astype(complex)]
    for j in range(2):
        for col in (1, 2):
            k = np.zeros((3, 3), dtype=complex)
            k[1:, col] = np.sqrt(lam[j]) * vecs[:, j]
            kraus.append(k)
    return kraus


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def fig1_channel() -> PauliChannel:
    from itercap.pauli import repair_probabilities

    return repair_probabilities(FIG1_COMPONENTS)
