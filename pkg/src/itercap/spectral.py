"""Spectral analysis of channel superoperators.

For a channel that is GNS-symmetric with respect to a full-rank state sigma,
the Heisenberg-picture map is self-adjoint in the sigma-weighted inner product
<A, B>_sigma = tr(A^dag B sigma). On vectorized operators this inner product
has Gram matrix M = sigma^T kron 1, and

    C = M^(1/2) S^dag M^(-1/2)

is Hermitian (S the Schroedinger superoperator). Everything here works off the
orthogonal spectral decomposition of C: the peripheral projection is the
spectral projector onto eigenvalues of modulus one (conjugated back), and the
even powers of the channel converge to it.

Block-structure extraction follows the algebra Range(P*) of the adjoint
peripheral projection, which is a direct sum of full matrix algebras
M_{d_k} tensor 1_{m_k}: the center is computed from commutation equations, a
seeded random central element splits the Hilbert space into the blocks, and a
seeded random algebra element splits each block into its tensor factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import (
    DEFAULT_TOL,
    ChannelDense,
    DensityMatrix,
    Tolerances,
    apply_superop,
    check_gns_symmetric,
    find_invariant_state,
    iterate,
    matrix_to_json,
    unvec,
    vec,
)
from .errors import (
    IllConditionedSpectrumError,
    NotGnsSymmetricError,
    SigmaNotFullRankError,
    StructureInconsistentError,
)

__all__ = [
    "PeripheralBlock",
    "PeripheralStructure",
    "peripheral_projection",
    "extract_structure",
    "reconstruct_projection",
    "verify_limit",
    "structure_to_json",
    "gns_symmetrized",
]


@dataclass(frozen=True)
class PeripheralBlock:
    """One summand M_d tensor omega of the peripheral subspace.

    ``isometry`` has shape (dim, d*m) and embeds C^d tensor C^m into the
    system space; column order is (i, j) -> i*m + j. ``omega`` is reported in
    its eigenbasis (diagonal, nonincreasing) to make output deterministic; the
    tensor split is unique only up to unitaries on each factor.
    """

    d: int
    m: int
    omega: DensityMatrix
    isometry: np.ndarray


@dataclass(frozen=True)
class PeripheralStructure:
    """Peripheral decomposition {(d_k, m_k, omega_k)} plus the projection superoperator."""

    K: int
    blocks: tuple[PeripheralBlock, ...]
    projector_superop: np.ndarray
    h0_dim: int

    @property
    def d_list(self) -> tuple[int, ...]:
        return tuple(b.d for b in self.blocks)

    @property
    def dim(self) -> int:
        return sum(b.d * b.m for b in self.blocks) + self.h0_dim


def _herm_sqrt(m: np.ndarray, inverse: bool = False) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.sqrt(np.clip(w, 0.0, None))
    if inverse:
        w = 1.0 / w
    return (v * w) @ v.conj().T


def gns_symmetrized(superop: np.ndarray, sigma: np.ndarray):
    """Return (C, Mh, Mih) with C = Mh S^dag Mih Hermitian for GNS channels,
    where Mh = (sigma^(1/2))^T kron 1 and Mih its inverse."""
    d = sigma.shape[0]
    eye = np.eye(d)
    mh = np.kron(_herm_sqrt(sigma).T, eye)
    mih = np.kron(_herm_sqrt(sigma, inverse=True).T, eye)
    c = mh @ superop.conj().T @ mih
    return (c + c.conj().T) / 2, mh, mih


def _resolve_sigma(c: ChannelDense, sigma, tol: Tolerances) -> DensityMatrix:
    if sigma is None:
        sigma = find_invariant_state(c, tol)
    elif not isinstance(sigma, DensityMatrix):
        sigma = DensityMatrix(sigma, tol)
    if sigma.min_eigenvalue() <= tol.tol_psd:
        raise SigmaNotFullRankError("invariant state is not full rank")
    return sigma


def _require_gns(c: ChannelDense, sigma: DensityMatrix, tol: Tolerances) -> None:
    report = check_gns_symmetric(c, sigma, tol)
    if not report.symmetric:
        raise NotGnsSymmetricError(
            f"GNS-symmetry violated by {report.max_deviation:g} (tol {tol.tol_eq:g})")


def peripheral_projection(c: ChannelDense, tol: Tolerances = DEFAULT_TOL,
                          sigma: DensityMatrix | None = None) -> np.ndarray:
    """Spectral projector of the superoperator onto the peripheral eigenspace.

    Eigenvalues are classified peripheral when |lambda| >= 1 - tol_peripheral;
    moduli strictly inside (1 - 10 tol_peripheral, 1 - tol_peripheral) raise
    IllConditionedSpectrumError rather than being silently classified.
    """
    sigma = _resolve_sigma(c, sigma, tol)
    _require_gns(c, sigma, tol)
    sym, mh, mih = gns_symmetrized(c.superop, sigma.matrix)
    evals, evecs = np.linalg.eigh(sym)
    moduli = np.abs(evals)
    lo, hi = 1.0 - 10.0 * tol.tol_peripheral, 1.0 - tol.tol_peripheral
    inside = (moduli > lo) & (moduli < hi)
    if inside.any():
        raise IllConditionedSpectrumError(
            f"eigenvalue moduli {moduli[inside]} cluster at the peripheral threshold")
    per = moduli >= hi
    pi = evecs[:, per] @ evecs[:, per].conj().T
    return mh @ pi @ mih


def verify_limit(c: ChannelDense, projector: np.ndarray, t_check: int,
                 tol: Tolerances = DEFAULT_TOL) -> float:
    """Diagnostic ||superop(c^(2 t_check)) - P||_max; decays like exp(-2 lambda t_check)."""
    if t_check < 1:
        raise ValueError(f"t_check must be >= 1, got {t_check}")
    powered = iterate(c, 2 * t_check, tol)
    return float(np.max(np.abs(powered.superop - projector)))


def _orthonormal_range(columns: np.ndarray, rel_cutoff: float = 1e-10) -> np.ndarray:
    u, s, _ = np.linalg.svd(columns)
    if s.size == 0 or s[0] == 0.0:
        return u[:, :0]
    return u[:, : int((s > s[0] * rel_cutoff).sum())]


def _split_by_gaps(values: np.ndarray, gap: float) -> list[tuple[int, int]]:
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > gap:
            groups.append((start, i))
            start = i
    return groups


def _random_hermitian_combo(rng: np.random.Generator, mats: list[np.ndarray]) -> np.ndarray:
    z = sum(rng.normal() * m for m in mats)
    return (z + z.conj().T) / 2


def _factor_block(block_basis: list[np.ndarray], d_k: int, m_k: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Unitary on the block exhibiting its algebra as M_d tensor 1_m.

    A generic Hermitian algebra element has d_k eigenvalue clusters of size
    m_k whose eigenspaces are psi_i tensor C^m; a second generic element
    supplies the partial isometries that align the C^m bases across clusters.
    """
    n = d_k * m_k
    for _ in range(8):
        r = _random_hermitian_combo(rng, block_basis)
        rw, rv = np.linalg.eigh(r)
        clusters = _split_by_gaps(rw, max(1e-6, 1e-8 * max(1.0, abs(rw[-1] - rw[0]))))
        if len(clusters) != d_k or any(b - a != m_k for a, b in clusters):
            continue
        g = _random_hermitian_combo(rng, block_basis)
        u1 = rv[:, clusters[0][0]:clusters[0][1]]
        columns = [u1]
        ok = True
        for a, b in clusters[1:]:
            ui = rv[:, a:b]
            t = ui.conj().T @ g @ u1
            ux, us, uvh = np.linalg.svd(t)
            if us.min() < 1e-8 * max(1.0, us.max()):
                ok = False
                break
            columns.append(ui @ (ux @ uvh))
        if not ok:
            continue
        fact = np.zeros((n, n), dtype=complex)
        for i, col in enumerate(columns):
            fact[:, i * m_k:(i + 1) * m_k] = col
        return fact
    raise StructureInconsistentError(
        f"could not factor a block with d={d_k}, m={m_k} (degenerate random probes)")


def extract_structure(c: ChannelDense, projector: np.ndarray, sigma,
                      tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> PeripheralStructure:
    """Recover the block decomposition of the peripheral subspace.

    Verifies afterwards that the structure reproduces the projector on 20
    seeded random PSD inputs within 100 * tol_eq.
    """
    d = c.dim
    sigma = _resolve_sigma(c, sigma, tol)
    if np.max(np.abs(projector @ projector - projector)) > 100 * tol.tol_eq:
        raise StructureInconsistentError("projector is not idempotent")
    if np.max(np.abs(projector @ c.superop - c.superop @ projector)) > 100 * tol.tol_eq:
        raise StructureInconsistentError("projector does not commute with the channel")
    rng = np.random.default_rng(seed)

    # transient block: kernel of the support projection of P(1/d)
    rho_star = apply_superop(projector, np.eye(d) / d)
    rho_star = (rho_star + rho_star.conj().T) / 2
    w, v = np.linalg.eigh(rho_star)
    keep = w > tol.tol_peripheral
    h0_dim = d - int(keep.sum())
    support = v[:, keep]
    r = support.shape[1]
    if h0_dim:
        compress = np.kron(support.conj(), support)
        expand = np.kron(support.T, support.conj().T)
        proj_res = expand @ projector @ compress
    else:
        proj_res = projector

    # algebra A = Range(P*) spanned by the columns of the adjoint superoperator
    basis_vecs = _orthonormal_range(proj_res.conj().T)
    basis = [unvec(basis_vecs[:, i], r) for i in range(basis_vecs.shape[1])]
    rank = len(basis)

    # center: solve the commutation equations against the basis
    comm = np.concatenate(
        [np.stack([vec(bi @ bj - bj @ bi) for bi in basis], axis=1) for bj in basis],
        axis=0,
    )
    _, svals, vh = np.linalg.svd(comm)
    scale = max(float(svals[0]), 1.0) if svals.size else 1.0
    n_center = int((np.concatenate([svals, np.zeros(rank - svals.size)]) < scale * 1e-10).sum())
    center = [
        sum(cv[i] * basis[i] for i in range(rank))
        for cv in vh.conj().T[:, rank - n_center:].T
    ]

    # split H into central blocks via a seeded random self-adjoint central element
    for _ in range(8):
        central = _random_hermitian_combo(rng, center)
        zw, zv = np.linalg.eigh(central)
        groups = _split_by_gaps(zw, tol.tol_peripheral)
        if len(groups) == n_center:
            break
    else:
        raise StructureInconsistentError(
            f"central element produced {len(groups)} blocks for a {n_center}-dimensional center")

    blocks = []
    for a, b in groups:
        vk = zv[:, a:b]
        n_k = b - a
        compressed = np.stack([vec(vk.conj().T @ bi @ vk) for bi in basis], axis=1)
        cb_vecs = _orthonormal_range(compressed)
        r_k = cb_vecs.shape[1]
        d_k = int(round(np.sqrt(r_k)))
        if d_k * d_k != r_k or n_k % d_k:
            raise StructureInconsistentError(
                f"block of size {n_k} carries an algebra of dimension {r_k}")
        m_k = n_k // d_k
        if d_k == 1:
            iso = vk
        else:
            block_basis = [unvec(cb_vecs[:, i], n_k) for i in range(r_k)]
            iso = vk @ _factor_block(block_basis, d_k, m_k, rng)
        if h0_dim:
            iso = support @ iso
        # omega: restrict sigma to the block and trace out the M_d factor
        sig_block = iso.conj().T @ sigma.matrix @ iso
        omega = np.einsum("iaib->ab", sig_block.reshape(d_k, m_k, d_k, m_k))
        omega = (omega + omega.conj().T) / 2
        omega /= np.trace(omega).real
        # canonical form: omega diagonal with nonincreasing eigenvalues
        ow, ov = np.linalg.eigh(omega)
        order = np.argsort(ow)[::-1]
        ov = ov[:, order]
        iso = iso @ np.kron(np.eye(d_k), ov)
        omega = np.diag(np.clip(ow[order], 0.0, None))
        omega /= np.trace(omega).real
        blocks.append(PeripheralBlock(d=d_k, m=m_k, omega=DensityMatrix(omega, tol),
                                      isometry=iso))

    structure = PeripheralStructure(
        K=len(blocks), blocks=tuple(blocks), projector_superop=projector, h0_dim=h0_dim)
    _verify_reconstruction(structure, d, tol, rng,
                           support if h0_dim else None)
    return structure


def reconstruct_projection(structure: PeripheralStructure, x: np.ndarray) -> np.ndarray:
    """P(X) assembled from the block data: sum_k V_k (tr_2(V_k^dag X V_k) tensor omega_k) V_k^dag."""
    out = np.zeros_like(x, dtype=complex)
    for blk in structure.blocks:
        comp = blk.isometry.conj().T @ x @ blk.isometry
        tr2 = np.einsum("iaja->ij", comp.reshape(blk.d, blk.m, blk.d, blk.m))
        out += blk.isometry @ np.kron(tr2, blk.omega.matrix) @ blk.isometry.conj().T
    return out


def _verify_reconstruction(structure: PeripheralStructure, d: int,
                           tol: Tolerances, rng: np.random.Generator,
                           support: np.ndarray | None = None) -> None:
    """Check P(X) against the block reconstruction on 20 random PSD inputs.

    With a transient block (h0_dim > 0) the block data only describes the
    action on the faithful support, so the probes are drawn there; under the
    full-rank invariant-state precondition the transient block is empty and
    this is the unrestricted contract.
    """
    for _ in range(20):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        x = g @ g.conj().T
        if support is not None:
            proj = support @ support.conj().T
            x = proj @ x @ proj
        x /= np.trace(x).real
        direct = apply_superop(structure.projector_superop, x)
        rebuilt = reconstruct_projection(structure, x)
        dev = np.max(np.abs(direct - rebuilt))
        if dev > 100 * tol.tol_eq:
            raise StructureInconsistentError(
                f"structure reconstruction deviates from the projector by {dev:g}")


def structure_to_json(structure: PeripheralStructure) -> dict:
    return {
        "K": structure.K,
        "blocks": [
            {"d": b.d, "m": b.m, "omega": matrix_to_json(b.omega.matrix)}
            for b in structure.blocks
        ],
        "h0_dim": structure.h0_dim,
    }
