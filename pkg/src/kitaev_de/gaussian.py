"""Ground-state pair correlators and multi-site spin correlators (Wick).

Correlation sources
-------------------
* :class:`CorrelatorKernel` -- translation-invariant chains.  ``g[R]`` holds
  ``G_R = (1/N) sum_k exp(i R k) exp(-2 i theta_k)``, which is real because
  ``theta_{-k} = -theta_k``, and equals ``<A_a B_{a+R}>`` with
  ``A = c^dag + c``, ``B = c^dag - c``.
* :class:`DenseCorrelations` -- open chains; the full matrix ``m[a, b] =
  <A_a B_b>`` from the Bogoliubov-de Gennes ground state.

With these contractions, ``sigma_z = A_j B_j = 1 - 2 n_j`` and every subset
expectation ``< prod_{j in S} sigma_z_j >`` is the determinant of the A-B
submatrix.  ``sigma_x`` strings expand into ordered Majorana products
``B_s A_{s+1} B_{s+1} ... A_e`` whose expectation is the Pfaffian of the
pairwise contraction matrix.  Both rules are pinned against the
exact-diagonalization oracle in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import (DegenerateGroundStateError, GaplessSpecError,
                     OddDimensionError)
from .model import ModelSpec, grid_numerators, open_chain_weights

GAP_TOL = 1e-8
KERNEL_IMAG_TOL = 1e-10
DEFAULT_GRID = 8192


@dataclass(frozen=True)
class CorrelatorKernel:
    """Toeplitz pair-correlation kernel ``G_R`` for ``|R| <= l_max``."""

    g: np.ndarray  # values for R = -l_max .. l_max
    l_max: int
    n: int

    def value(self, r: int) -> float:
        if abs(r) > self.l_max:
            raise ValueError(f"|R|={abs(r)} exceeds tabulated l_max={self.l_max}")
        return float(self.g[r + self.l_max])


@dataclass(frozen=True)
class DenseCorrelations:
    """Open-chain pair correlations ``m[a, b] = <A_a B_b>``."""

    m: np.ndarray
    energy: float
    eps_min: float


CorrelationSource = CorrelatorKernel | DenseCorrelations


def correlator_kernel(spec: ModelSpec, n: int = DEFAULT_GRID,
                      l_max: int = 32) -> CorrelatorKernel:
    """Tabulate ``G_R`` by the discrete momentum sum over the n-point grid.

    Requires ``l_max < n/4`` for kernel accuracy and a gapped spectrum
    (minimum grid gap above 1e-8), otherwise the integrand is discontinuous.
    """
    if not l_max < n / 4:
        raise ValueError(f"l_max={l_max} must be < n/4 = {n / 4}")
    k, y, z = grid_numerators(spec, n)
    eps = np.hypot(y, z)
    if eps.min() <= GAP_TOL:
        raise GaplessSpecError(f"min grid gap {eps.min():.3e} <= {GAP_TOL}")
    q = (-z - 1j * y) / eps  # exp(-2 i theta)
    r = np.arange(-l_max, l_max + 1)
    g = np.exp(1j * np.multiply.outer(r.astype(float), k)) @ q / n
    if np.abs(g.imag).max() > KERNEL_IMAG_TOL:
        raise GaplessSpecError(
            f"kernel imaginary part {np.abs(g.imag).max():.3e} exceeds tolerance")
    real = np.ascontiguousarray(g.real)
    real.flags.writeable = False
    return CorrelatorKernel(g=real, l_max=l_max, n=n)


def open_chain_correlations(spec: ModelSpec, n: int) -> DenseCorrelations:
    """Pair correlations of the open-chain ground state via a BdG solve.

    Raises :class:`DegenerateGroundStateError` when the smallest quasiparticle
    energy is below 1e-10 (the ground state correlators are then ill-defined).
    """
    if n > 2000:
        raise ValueError(f"open-chain solve limited to n <= 2000, got {n}")
    hop, pair = open_chain_weights(spec, n)
    amat = np.zeros((n, n))
    pmat = np.zeros((n, n))
    np.fill_diagonal(amat, -spec.mu)
    for l in range(1, n):
        if hop[l - 1] != 0.0:
            idx = np.arange(n - l)
            amat[idx, idx + l] += -hop[l - 1]
            amat[idx + l, idx] += -hop[l - 1]
        if pair[l - 1] != 0.0:
            idx = np.arange(n - l)
            pmat[idx + l, idx] += pair[l - 1]
            pmat[idx, idx + l] += -pair[l - 1]
    bdg = np.block([[amat, pmat], [-pmat, -amat]])
    vals, vecs = la.eigh(bdg)
    pos = vals > 0
    eps_min = float(np.min(np.abs(vals)))
    if eps_min < 1e-10:
        raise DegenerateGroundStateError(f"smallest quasiparticle energy {eps_min:.3e}")
    u = vecs[:n, pos]
    v = vecs[n:, pos]
    cmat = v @ v.T
    fmat = u @ v.T
    fmat = 0.5 * (fmat - fmat.T)
    m = np.eye(n) - 2.0 * cmat - 2.0 * fmat
    # 1/2 Tr A from normal ordering plus the n*mu/2 constant of the chemical term
    energy = (0.5 * float(np.trace(amat)) - 0.5 * float(np.sum(vals[pos]))
              + 0.5 * n * spec.mu)
    return DenseCorrelations(m=m, energy=energy, eps_min=eps_min)


def pair_correlation(source: CorrelationSource, a: int, b: int) -> float:
    """``<A_a B_b>`` from either source type."""
    if isinstance(source, CorrelatorKernel):
        return source.value(b - a)
    return float(source.m[a, b])


def _pair_matrix(source: CorrelationSource, sites: np.ndarray) -> np.ndarray:
    if isinstance(source, CorrelatorKernel):
        rmat = sites[None, :] - sites[:, None]  # [a,b] = s_b - s_a
        return source.g[rmat + source.l_max]
    return source.m[np.ix_(sites, sites)]


def sigma_z_correlator(source: CorrelationSource, sites) -> float:
    """``< prod_{j in sites} sigma_z_j >`` with ``sigma_z = 1 - 2 n``."""
    sites = np.asarray(sorted(sites), dtype=int)
    if sites.size == 0:
        return 1.0
    if sites.size > 20:
        raise ValueError("subset size limited to 20 sites")
    return float(np.linalg.det(_pair_matrix(source, sites)))


def _x_string_ops(sites: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ordered Majorana string of ``prod sigma_x`` over an even subset.

    Consecutive pairs ``(s_1, s_2), (s_3, s_4), ...`` contribute
    ``B_{s} A_{s+1} B_{s+1} ... A_{e}``; returns (site, type) arrays where
    type 0 is an A operator and type 1 a B operator.
    """
    op_sites, op_types = [], []
    for i in range(0, len(sites), 2):
        s, e = sites[i], sites[i + 1]
        for m in range(s, e):
            op_sites += [m, m + 1]
            op_types += [1, 0]  # B_m, A_{m+1}
    return np.asarray(op_sites, dtype=int), np.asarray(op_types, dtype=int)


def _string_contraction_matrix(source: CorrelationSource, op_sites, op_types):
    """Antisymmetric matrix of ordered pairwise contractions of the string."""
    if isinstance(source, CorrelatorKernel):
        def val(sa, sb):  # [p,q] = <A_{sa_p} B_{sb_q}>
            return source.g[(sb[None, :] - sa[:, None]) + source.l_max]
    else:
        def val(sa, sb):
            return source.m[np.ix_(sa, sb)]
    is_a = op_types == 0
    ab = np.outer(is_a, ~is_a)            # X_p = A, X_q = B
    ba = np.outer(~is_a, is_a)            # X_p = B, X_q = A
    v_ab = val(op_sites, op_sites)        # [p,q] = <A_{s_p} B_{s_q}>
    mat = ab * v_ab - ba * v_ab.T
    return mat


def sigma_x_correlator(source: CorrelationSource, sites) -> float:
    """``< prod_{j in sites} sigma_x_j >``; zero for odd subsets (parity)."""
    sites = sorted(sites)
    if len(sites) % 2 == 1:
        return 0.0
    if not sites:
        return 1.0
    op_sites, op_types = _x_string_ops(np.asarray(sites, dtype=int))
    mat = _string_contraction_matrix(source, op_sites, op_types)
    return pfaffian(mat)


# ---------------------------------------------------------------------------
# Pfaffian engine
# ---------------------------------------------------------------------------

def pfaffian(mat: np.ndarray, antisym_tol: float = 1e-12) -> float:
    """Pfaffian of a real antisymmetric matrix (skew elimination, pivoting).

    Raises :class:`OddDimensionError` for odd dimension and ``ValueError``
    when ``||M + M^T||`` exceeds ``antisym_tol`` relative to ``||M||``.
    """
    mat = np.asarray(mat, dtype=float)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("pfaffian requires a square matrix")
    if n % 2 == 1:
        raise OddDimensionError(f"odd dimension {n}")
    scale = max(np.abs(mat).max(), 1.0)
    if np.abs(mat + mat.T).max() > antisym_tol * scale:
        raise ValueError("matrix is not antisymmetric within tolerance")
    if n == 0:
        return 1.0
    return float(_pfaffian_batch(mat[None, :, :])[0])


def _pfaffian_batch(mats: np.ndarray) -> np.ndarray:
    """Pfaffians of a stack of real antisymmetric matrices (B, n, n)."""
    m = np.array(mats, dtype=float)
    nb, n, _ = m.shape
    if n % 2 == 1:
        raise OddDimensionError(f"odd dimension {n}")
    pf = np.ones(nb)
    if n == 0:
        return pf
    rows = np.arange(nb)
    for j in range(0, n - 1, 2):
        # pivot: bring the largest |m[:, j+1:, j]| into row j+1
        col = np.abs(m[:, j + 1:, j])
        kp = j + 1 + col.argmax(axis=1)
        swap = kp != (j + 1)
        pf = np.where(swap, -pf, pf)
        ra = m[rows, j + 1, :].copy()
        m[rows, j + 1, :] = m[rows, kp, :]
        m[rows, kp, :] = ra
        ca = m[rows, :, j + 1].copy()
        m[rows, :, j + 1] = m[rows, :, kp]
        m[rows, :, kp] = ca

        piv = m[:, j, j + 1]
        alive = np.abs(piv) > 0.0
        pf = np.where(alive, pf * piv, 0.0)
        if j + 2 < n:
            denom = np.where(alive, piv, 1.0)
            tau = m[:, j, j + 2:] / denom[:, None]
            colv = m[:, j + 2:, j + 1]
            update = tau[:, :, None] * colv[:, None, :]
            m[:, j + 2:, j + 2:] += np.where(alive[:, None, None],
                                             update - update.transpose(0, 2, 1), 0.0)
    return pf
