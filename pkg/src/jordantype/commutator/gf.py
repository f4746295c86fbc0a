"""Batched exact linear algebra over a prime field GF(p), on int64 arrays.

All routines accept stacks of matrices of shape ``(..., n, m)``.  Entries
are kept in ``[0, p)``; ``p < 2**31`` keeps every intermediate product
inside int64.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 2_147_483_647  # 2**31 - 1
_SPLIT = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"field modulus {p} is not prime")
    if p >= 1 << 31:
        raise ValueError(f"field modulus {p} must be below 2**31")
    return p


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` without int64 overflow (splits B into 16-bit halves)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if p <= _SPLIT:
        return (A @ B) % p
    hi, lo = np.divmod(B, _SPLIT)
    top = (A @ hi) % p
    return (top * _SPLIT + A @ lo) % p


def inverse_mod(x: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse of nonzero residues, via x**(p-2)."""
    x = np.asarray(x, dtype=np.int64) % p
    result = np.ones_like(x)
    e = p - 2
    while e:
        if e & 1:
            result = (result * x) % p
        x = (x * x) % p
        e >>= 1
    return result


def rank_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Rank of each matrix in a stack, by Gaussian elimination mod p."""
    M = np.array(M, dtype=np.int64) % p
    squeeze = M.ndim == 2
    if squeeze:
        M = M[None]
    lead = M.shape[:-2]
    n, m = M.shape[-2:]
    M = M.reshape(-1, n, m)
    N = M.shape[0]
    used = np.zeros((N, n), dtype=bool)
    rank = np.zeros(N, dtype=np.int64)
    for c in range(m):
        cand = (M[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        piv = cand[idx].argmax(axis=1)
        prow = M[idx, piv, :]
        inv = inverse_mod(prow[:, c], p)
        prow = (prow * inv[:, None]) % p
        factors = M[idx, :, c]
        sub = M[idx] - (factors[:, :, None] * prow[:, None, :]) % p
        M[idx] = sub % p
        used[idx, piv] = True
        rank[idx] += 1
    if squeeze:
        return int(rank[0])
    return rank.reshape(lead)


def det_mod(M: np.ndarray, p: int) -> int:
    """Determinant of one square matrix mod p."""
    M = np.array(M, dtype=np.int64) % p
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("determinant needs a square matrix")
    det = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            M[[c, r]] = M[[r, c]]
            det = -det
        pivot = int(M[c, c])
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        row = (M[c] * inv) % p
        below = M[c + 1:, c].copy()
        M[c + 1:] = (M[c + 1:] - (below[:, None] * row[None, :]) % p) % p
    return det % p


def power_stack(A: np.ndarray, p: int, kmax: int) -> np.ndarray:
    """``[A^1, ..., A^kmax]`` stacked on a new axis just before the matrix axes."""
    A = np.asarray(A, dtype=np.int64) % p
    pows = [A]
    for _ in range(kmax - 1):
        pows.append(matmul_mod(pows[-1], A, p))
    return np.stack(pows, axis=-3)


def rank_sequence(A: np.ndarray, p: int) -> np.ndarray:
    """Ranks of ``A^0 .. A^n`` for each ``n x n`` matrix in a stack."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    pows = power_stack(A, p, n)
    ranks = rank_mod(pows, p)
    r0 = np.full(ranks.shape[:-1] + (1,), n, dtype=np.int64)
    return np.concatenate([r0, ranks], axis=-1)


def type_from_ranks(ranks) -> tuple[int, ...]:
    """Jordan type (as a decreasing tuple) from ranks of A^0, A^1, ..., A^n.

    ``ranks[k-1] - ranks[k]`` counts Jordan blocks of size >= k, which is
    the k-th part of the conjugate partition.
    """
    ranks = [int(r) for r in ranks]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    at_least = [d for d in at_least if d > 0]
    if not at_least:
        return ()
    return tuple(sum(1 for d in at_least if d > j) for j in range(at_least[0]))
