"""Brute-force ground truth for small graphs.

Nothing here touches characters or cyclotomic arithmetic: adjacency comes
from scanning vertex pairs, exp(itA) from a Taylor series with scaling and
squaring, eigenvalues from a dense symmetric eigensolver.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from pst_lab.config import LIMITS

TAYLOR_TERMS = 20


def _check_cap(A: np.ndarray, cap: int):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] > cap:
        raise ValueError(f"oracle cap exceeded: N={A.shape[0]} > {cap}")


def dense_adjacency(moduli: Sequence[int], S: Iterable[Sequence[int]]) -> np.ndarray:
    """Adjacency of Cay(Z_m1 + ... + Z_mr, S) by testing every ordered vertex pair."""
    verts = list(itertools.product(*(range(m) for m in moduli)))
    conn = {tuple(int(c) % m for c, m in zip(s, moduli)) for s in S}
    A = np.zeros((len(verts), len(verts)), dtype=np.int64)
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if tuple((x - y) % m for x, y, m in zip(a, b, moduli)) in conn:
                A[i, j] = 1
    return A


def expm_oracle(A: np.ndarray, t: float, cap: int = LIMITS.oracle_cap) -> np.ndarray:
    """exp(i t A) by truncated Taylor series on a scaled matrix, then repeated squaring."""
    A = np.asarray(A)
    _check_cap(A, cap)
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix must be symmetric")
    M = 1j * t * A.astype(np.complex128)
    norm = np.abs(M).sum(axis=1).max() if M.size else 0.0
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    M = M / (2**squarings)
    n = A.shape[0]
    result = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in range(1, TAYLOR_TERMS + 1):
        term = term @ M / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def brute_spectrum(A: np.ndarray, cap: int = LIMITS.oracle_cap) -> np.ndarray:
    A = np.asarray(A)
    _check_cap(A, cap)
    return np.sort(np.linalg.eigvalsh(A.astype(float)))


def is_integral(eigs: np.ndarray, tol: float = 1e-6) -> bool:
    return bool(np.all(np.abs(eigs - np.round(eigs)) < tol))


def bfs_connected(A: np.ndarray) -> bool:
    n = A.shape[0]
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(A[u]):
            if int(v) not in seen:
                seen.add(int(v))
                queue.append(int(v))
    return len(seen) == n
