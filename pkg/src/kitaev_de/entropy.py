"""Diagonal entropy of pure ground states, of site blocks, and global
entanglement.

The pure-state diagonal entropy is the Shannon entropy (base 2) of the ground
state in the momentum-occupation basis.  The state factorises over ``(k, -k)``
pairs -- one two-outcome factor ``{cos^2 theta_k, sin^2 theta_k}`` per pair --
so the sum runs over the positive-k half of the antiperiodic grid; summing
over all N grid points would double count every pair.  The convention is
pinned by the closed-chain ground-energy cross-check in the oracle tests.

Block diagonal entropies expand the diagonal of the reduced density matrix in
subset correlators.  For a block of L sites and measurement outcomes
``t in {0,1}^L`` (Z basis: t=1 means occupied; X basis: t=1 means
``sigma_x = -1``),

    p(t) = 2^-L * sum_S prod_{j in S} (1 - 2 t_j) * <prod_{j in S} sigma_j>

which is a length-2^L Walsh-Hadamard transform of the subset-correlator
table, O(L 2^L) after the 2^L correlators are known (the naive combination
is O(4^L)).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.special import xlogy

from .errors import GaplessSpecError, NormalizationFailureError
from .gaussian import (CorrelationSource, CorrelatorKernel, _pair_matrix,
                       _string_contraction_matrix, _pfaffian_batch,
                       _x_string_ops)
from .model import ModelSpec, grid_numerators

GAP_TOL = 1e-8
DEFAULT_GRID = 8192
MAX_BLOCK = 16
CLAMP_TOL = 1e-12
NORM_TOL = 1e-6

_LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class DiagonalDistribution:
    """2^L outcome probabilities of an L-site block in a fixed basis.

    Outcome index bit ``a`` is the measured value of the block's a-th site.
    """

    basis: str
    l: int
    p: np.ndarray


@dataclass(frozen=True)
class EntropyReport:
    """Entropy value in bits together with what it was computed for."""

    value: float
    basis: str
    size: int
    spec: ModelSpec | None = None


def _binary_entropy_bits(p: np.ndarray) -> np.ndarray:
    q = 1.0 - p
    return -(xlogy(p, p) + xlogy(q, q)) / _LN2


def _occupations(spec: ModelSpec, n: int):
    _, y, z = grid_numerators(spec, n)
    eps = np.hypot(y, z)
    if eps.min() <= GAP_TOL:
        raise GaplessSpecError(f"min grid gap {eps.min():.3e} <= {GAP_TOL}")
    return _, y, z, eps


def pure_state_diagonal_entropy(spec: ModelSpec, n: int) -> EntropyReport:
    """Diagonal entropy of the N-site ground state in momentum space (bits).

    One two-outcome term per ``(k, -k)`` pair, i.e. a sum over the positive-k
    half of the grid; ``sin^2 theta_k`` is the pair-occupation probability.
    """
    k, y, z, eps = _occupations(spec, n)
    pos = k > 0
    occ = 0.5 * (1.0 + z[pos] / eps[pos])  # sin^2 theta
    return EntropyReport(value=float(_binary_entropy_bits(occ).sum()),
                         basis="momentum", size=n, spec=spec)


def de_density(spec: ModelSpec, n: int = 2000) -> float:
    """Diagonal-entropy density ``s = S_N / N`` of the pure ground state."""
    return pure_state_diagonal_entropy(spec, n).value / n


def global_entanglement(spec: ModelSpec, n: int = DEFAULT_GRID) -> float:
    """Single-site purity measure ``E = 2 (1 - Tr rho_i^2) = 1 - <sigma_z>^2``.

    Translation invariance assumed; ``<sigma_z>`` is the R=0 kernel value.
    """
    k, y, z, eps = _occupations(spec, n)
    sz = float(np.mean(-z / eps))
    return 1.0 - sz * sz


def _wht(v: np.ndarray) -> np.ndarray:
    """In-place fast Walsh-Hadamard transform (H = [[1,1],[1,-1]] per bit)."""
    v = v.copy()
    n = v.size
    h = 1
    while h < n:
        v = v.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = a + b
        v[:, 1, :] = a - b
        v = v.reshape(n)
        h *= 2
    return v


def _subset_masks(l: int, size: int) -> np.ndarray:
    combos = np.array(list(combinations(range(l), size)), dtype=int)
    return combos  # (n_subsets, size) site offsets


def _z_subset_table(source: CorrelationSource, sites: np.ndarray) -> np.ndarray:
    """w[mask] = <prod sigma_z over subset(mask)> for every subset bitmask."""
    l = sites.size
    w = np.zeros(1 << l)
    w[0] = 1.0
    full = _pair_matrix(source, sites)
    for size in range(1, l + 1):
        combos = _subset_masks(l, size)
        sub = full[combos[:, :, None], combos[:, None, :]]
        dets = np.linalg.det(sub)
        masks = (1 << combos).sum(axis=1)
        w[masks] = dets
    return w


def _x_subset_table(source: CorrelationSource, sites: np.ndarray) -> np.ndarray:
    """w[mask] = <prod sigma_x over subset(mask)>; odd subsets vanish."""
    l = sites.size
    w = np.zeros(1 << l)
    w[0] = 1.0
    groups: dict[int, list] = {}
    for size in range(2, l + 1, 2):
        for combo in combinations(range(l), size):
            op_sites, op_types = _x_string_ops(sites[list(combo)])
            mask = sum(1 << c for c in combo)
            groups.setdefault(op_sites.size, []).append((mask, op_sites, op_types))
    for dim, items in groups.items():
        mats = np.empty((len(items), dim, dim))
        for i, (_, op_sites, op_types) in enumerate(items):
            mats[i] = _string_contraction_matrix(source, op_sites, op_types)
        pfs = _pfaffian_batch(mats)
        for i, (mask, _, _) in enumerate(items):
            w[mask] = pfs[i]
    return w


def block_diagonal_distribution(source: CorrelationSource, l: int,
                                basis: str = "z",
                                start: int = 0) -> DiagonalDistribution:
    """Diagonal distribution of a contiguous L-site block.

    For a Toeplitz source the block position is immaterial; for a dense
    (open-chain) source it starts at site ``start``.  Raises
    :class:`NormalizationFailureError` when the assembled probabilities are
    more than 1e-12 negative or the total deviates from 1 by more than 1e-6,
    both of which signal a convention bug upstream.
    """
    if not 1 <= l <= MAX_BLOCK:
        raise ValueError(f"block length must be in 1..{MAX_BLOCK}, got {l}")
    if isinstance(source, CorrelatorKernel) and l - 1 > source.l_max:
        raise ValueError(f"kernel tabulated to l_max={source.l_max} < L-1={l - 1}")
    sites = np.arange(start, start + l)
    basis = basis.lower()
    if basis == "z":
        w = _z_subset_table(source, sites)
    elif basis == "x":
        w = _x_subset_table(source, sites)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    p = _wht(w) / (1 << l)
    if p.min() < -CLAMP_TOL:
        raise NormalizationFailureError(f"probability {p.min():.3e} < -{CLAMP_TOL}")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise NormalizationFailureError(f"probabilities sum to {total!r}")
    return DiagonalDistribution(basis=basis, l=l, p=p)


def block_diagonal_entropy(source: CorrelationSource, l: int,
                           basis: str = "z", start: int = 0) -> EntropyReport:
    """Shannon entropy (bits) of the block diagonal distribution."""
    dist = block_diagonal_distribution(source, l, basis, start)
    value = float(-xlogy(dist.p, dist.p).sum() / _LN2)
    return EntropyReport(value=value, basis=dist.basis, size=l)
