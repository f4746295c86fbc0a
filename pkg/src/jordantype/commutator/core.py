"""The Jordan matrix J_P, the nilpotent centralizer U_B, the simply adequate
matrix A_R and the chain matrices M attached to multi U-chains."""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, NamedTuple

import numpy as np

from ..partitions import Partition
from ..poset import EdgeVar, Vertex, Z, build_diagram, chains_between, check_vertex, s_double_prime, vertices_of
from ..uchains import SUChain, as_spec, s_uchain
from . import gf
from .matrix import PolyMatrix, SparseMatrix
from .poly import SparsePoly

SYMBOLIC_AR_LIMIT = 20
SYMBOLIC_DET_LIMIT = 9


class NotNilpotentError(ValueError):
    pass


class AssignmentError(ValueError):
    pass


@lru_cache(maxsize=4096)
def _basis(P: Partition) -> tuple[tuple[Vertex, ...], dict[Vertex, int]]:
    vs = tuple(vertices_of(P))
    return vs, {v: j for j, v in enumerate(vs)}


def basis(P: Partition) -> tuple[Vertex, ...]:
    return _basis(P)[0]


def basis_index(P: Partition) -> dict[Vertex, int]:
    return _basis(P)[1]


def jordan_block_matrix(P: Partition, p: int = gf.DEFAULT_PRIME) -> SparseMatrix:
    vs, idx = _basis(P)
    entries = {(idx[v], idx[Vertex(v.u + 1, v.i, v.k)]): 1 for v in vs if v.u < v.i}
    return SparseMatrix(P.n, p, entries, vs)


def _dense(A, p: int | None):
    if isinstance(A, SparseMatrix):
        return A.to_dense(), A.p
    if p is None:
        raise ValueError("a dense matrix needs an explicit modulus")
    return np.asarray(A, dtype=np.int64) % p, p


def jordan_type(A, p: int | None = None) -> Partition:
    """Jordan type of a nilpotent matrix from the ranks of its powers."""
    if isinstance(A, SparseMatrix):
        if not A.is_nilpotent():
            raise NotNilpotentError("matrix is not nilpotent")
        M, p = A.to_dense(), A.p
    else:
        M, p = _dense(A, p)
    ranks = gf.rank_sequence(M, p)
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    return Partition(gf.type_from_ranks(ranks))


def jordan_types(stack: np.ndarray, p: int) -> list[Partition]:
    """Jordan types of a stack of nilpotent ``n x n`` matrices."""
    stack = np.asarray(stack, dtype=np.int64)
    ranks = gf.rank_sequence(stack, p)
    if (ranks[:, -1] != 0).any():
        raise NotNilpotentError("a matrix in the stack is not nilpotent")
    return [Partition(gf.type_from_ranks(r)) for r in ranks]


def is_in_UB(A, P: Partition, p: int | None = None) -> bool:
    """Nilpotent, commutes with J_P, and no coefficient of (1,i,k') in
    A(1,i,k) for k' <= k."""
    M, p = _dense(A, p)
    if M.shape != (P.n, P.n):
        return False
    J = jordan_block_matrix(P, p).to_dense()
    if not np.array_equal(gf.matmul_mod(M, J, p), gf.matmul_mod(J, M, p)):
        return False
    if not SparseMatrix.from_dense(M, p).is_nilpotent():
        return False
    idx = basis_index(P)
    for i, m in P.multiplicity.items():
        for k in range(1, m + 1):
            for k2 in range(1, k + 1):
                if M[idx[Vertex(1, i, k)], idx[Vertex(1, i, k2)]]:
                    return False
    return True


@lru_cache(maxsize=4096)
def ub_coordinates(P: Partition) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Affine coordinates of U_B, each the list of matrix positions that
    carry the same value.

    An element of U_B is fixed by the images of the cyclic vectors
    (1,i,k).  The coefficient of (u',j,k') in A(1,i,k) is free when
    u' >= j - i + 1 (so B^i kills the image), except on the diagonal block
    u' = 1, j = i, k' <= k; commuting with B repeats it along
    ((1+s,i,k), (u'+s,j,k')).
    """
    _, idx = _basis(P)
    coords = []
    for i, m in P.multiplicity.items():
        for k in range(1, m + 1):
            for j, mj in P.multiplicity.items():
                for k2 in range(1, mj + 1):
                    for u2 in range(max(1, j - i + 1), j + 1):
                        if j == i and u2 == 1 and k2 <= k:
                            continue
                        positions = tuple(
                            (idx[Vertex(1 + s, i, k)], idx[Vertex(u2 + s, j, k2)])
                            for s in range(0, min(i, j - u2 + 1)))
                        coords.append(positions)
    return tuple(coords)


def ub_dimension(P: Partition) -> int:
    return len(ub_coordinates(P))


def _ub_index_arrays(P: Partition):
    coords = ub_coordinates(P)
    rows, cols, which = [], [], []
    for c, positions in enumerate(coords):
        for r, col in positions:
            rows.append(r)
            cols.append(col)
            which.append(c)
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp), np.array(which, dtype=np.intp)


def ub_from_coordinates(P: Partition, values: np.ndarray) -> np.ndarray:
    """Dense U_B elements from coordinate vectors of shape ``(..., dim)``."""
    values = np.asarray(values, dtype=np.int64)
    rows, cols, which = _ub_index_arrays(P)
    out = np.zeros(values.shape[:-1] + (P.n, P.n), dtype=np.int64)
    out[..., rows, cols] = values[..., which]
    return out


def random_UB_elements(P: Partition, p: int, count: int, rng: np.random.Generator) -> np.ndarray:
    values = rng.integers(0, p, size=(count, ub_dimension(P)), dtype=np.int64)
    return ub_from_coordinates(P, values)


def random_UB_element(P: Partition, p: int = gf.DEFAULT_PRIME, seed=None) -> SparseMatrix:
    """A uniformly random element of U_B over GF(p)."""
    rng = np.random.default_rng(seed)
    return SparseMatrix.from_dense(random_UB_elements(P, p, 1, rng)[0], p, basis(P))


@lru_cache(maxsize=4096)
def variables_of(P: Partition) -> tuple[EdgeVar, ...]:
    """The edge variables of the simply adequate matrix, plus z_l for every
    minimum l of an odd run of parts (even when level l has no such edge)."""
    D = build_diagram(P, True)
    found = {e.var for e in D.edges} | {Z(l) for l in s_double_prime(P)}
    return tuple(sorted(found, key=EdgeVar.sort_key))


def random_assignment(P: Partition, p: int = gf.DEFAULT_PRIME, seed=None) -> dict[EdgeVar, int]:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    vs = variables_of(P)
    values = rng.integers(1, p, size=len(vs), dtype=np.int64)
    return {v: int(x) for v, x in zip(vs, values)}


def ones_assignment(P: Partition) -> dict[EdgeVar, int]:
    return {v: 1 for v in variables_of(P)}


def _check_assignment(P: Partition, asg: Mapping[EdgeVar, int], p: int):
    for v in variables_of(P):
        if v not in asg:
            raise AssignmentError(f"no value for variable {v.name}")
        if int(asg[v]) % p == 0:
            raise AssignmentError(f"variable {v.name} must be nonzero mod {p}")


def specialize_AR(P: Partition, asg: Mapping[EdgeVar, int], p: int = gf.DEFAULT_PRIME) -> SparseMatrix:
    """Simply adequate matrix with its variables replaced by field values."""
    _check_assignment(P, asg, p)
    _, idx = _basis(P)
    D = build_diagram(P, True)
    entries = {(idx[e.source], idx[e.target]): int(asg[e.var]) for e in D.edges}
    return SparseMatrix(P.n, p, entries, basis(P))


def symbolic_AR(P: Partition, limit: int = SYMBOLIC_AR_LIMIT) -> PolyMatrix:
    if P.n > limit:
        raise ValueError(f"symbolic A_R limited to n <= {limit}, got {P.n}")
    vs, idx = _basis(P)
    D = build_diagram(P, True)
    entries = {(idx[e.source], idx[e.target]): SparsePoly.var(e.var) for e in D.edges}
    return PolyMatrix(P.n, P.n, entries, vs, vs)


def power_entry_via_chains(P: Partition, u: int, v, v2) -> SparsePoly:
    """Sum of edge-variable monomials over all chains of u + 1 vertices
    from v to v2 in the augmented diagram."""
    if u < 1:
        raise ValueError("u must be at least 1")
    v, v2 = check_vertex(P, v), check_vertex(P, v2)
    D = build_diagram(P, True)
    total = SparsePoly()
    for path in chains_between(D, v, v2, u + 1):
        total = total + SparsePoly.from_vars(D.edge_map[(a, b)].var for a, b in zip(path, path[1:]))
    return total


class MRow(NamedTuple):
    component: int
    u: int


def _orbit_rows(start: Vertex, steps: int, step_fn):
    """Images of ``start`` under A^0 .. A^steps as sparse row vectors."""
    rows = [{start: step_fn.one}]
    for _ in range(steps):
        rows.append(step_fn(rows[-1]))
    return rows


class _SymbolicStep:
    one = SparsePoly.const(1)

    def __init__(self, P: Partition):
        D = build_diagram(P, True)
        self.out: dict[Vertex, list] = {v: [] for v in D.vertices}
        for e in D.edges:
            self.out[e.source].append((e.target, SparsePoly.var(e.var)))

    def __call__(self, vec):
        nxt: dict[Vertex, SparsePoly] = {}
        for v, x in vec.items():
            for w, y in self.out[v]:
                nxt[w] = nxt.get(w, SparsePoly()) + x * y
        return {w: x for w, x in nxt.items() if not x.is_zero()}


class _NumericStep:
    one = 1

    def __init__(self, P: Partition, A: SparseMatrix):
        vs = basis(P)
        self.p = A.p
        self.out: dict[Vertex, list[tuple[Vertex, int]]] = {v: [] for v in vs}
        for (r, c), x in A.entries.items():
            self.out[vs[r]].append((vs[c], x))

    def __call__(self, vec):
        nxt: dict[Vertex, int] = {}
        for v, x in vec.items():
            for w, y in self.out[v]:
                nxt[w] = (nxt.get(w, 0) + x * y) % self.p
        return {w: x for w, x in nxt.items() if x}


def matrix_M(P: Partition, spec, A: SparseMatrix | None = None):
    """Matrix whose row (component, u) lists the coefficients of A^u applied
    to the first vertex of that component, on the vertices of the multi
    chain (ordered component by component).

    With ``A`` omitted the simply adequate matrix is used symbolically and a
    :class:`PolyMatrix` is returned; otherwise a dense int64 array mod A.p.
    """
    chain = s_uchain(P, as_spec(spec))
    cols = chain.column_order()
    col_idx = {v: j for j, v in enumerate(cols)}
    labels = [MRow(c, u) for c, comp in enumerate(chain.components, start=1) for u in range(len(comp))]
    step = _SymbolicStep(P) if A is None else _NumericStep(P, A)
    entries = {}
    r = 0
    for comp in chain.components:
        for vec in _orbit_rows(comp[0], len(comp) - 1, step):
            for w, x in vec.items():
                if w in col_idx:
                    entries[(r, col_idx[w])] = x
            r += 1
    if A is None:
        return PolyMatrix(len(cols), len(cols), entries, labels, cols)
    M = np.zeros((len(cols), len(cols)), dtype=np.int64)
    for (a, b), x in entries.items():
        M[a, b] = x
    return M


class NotSaturatedError(ValueError):
    pass


def component_monomials(chain: SUChain) -> list[SparsePoly]:
    """Product over prefixes of each component path of the prefix monomial."""
    D = build_diagram(chain.partition, True)
    out = []
    for comp in chain.components:
        L = len(comp)
        pairs = []
        for m, (a, b) in enumerate(zip(comp, comp[1:]), start=1):
            edge = D.edge_map.get((a, b))
            if edge is None:
                raise NotSaturatedError(f"{a} -> {b} is not an edge of the augmented diagram")
            # edge m lies on the prefix paths ending at positions m+1 .. L
            pairs.append((edge.var, L - m))
        out.append(SparsePoly.monomial(pairs))
    return out


def distinguished_monomial(P: Partition, spec) -> SparsePoly:
    result = SparsePoly.const(1)
    for mono in component_monomials(s_uchain(P, as_spec(spec))):
        result = result * mono
    return result


def symbolic_det(M: PolyMatrix, limit: int = SYMBOLIC_DET_LIMIT) -> SparsePoly:
    """Laplace expansion along rows, memoized on the set of unused columns."""
    n = M.nrows
    if M.ncols != n:
        raise ValueError("determinant needs a square matrix")
    if n > limit:
        raise ValueError(f"symbolic determinant limited to size {limit}, got {n}")
    rows: list[list[tuple[int, SparsePoly]]] = [[] for _ in range(n)]
    for (r, c), x in M.entries.items():
        rows[r].append((c, x))
    memo: dict[int, SparsePoly] = {0: SparsePoly.const(1)}

    def minor(cols: int) -> SparsePoly:
        if cols in memo:
            return memo[cols]
        r = n - bin(cols).count("1")
        total = SparsePoly()
        for c, x in rows[r]:
            if cols >> c & 1:
                rest = minor(cols & ~(1 << c))
                if rest.is_zero():
                    continue
                # sign: number of remaining columns to the left of c
                sign = -1 if bin(cols & ((1 << c) - 1)).count("1") % 2 else 1
                term = x * rest
                total = total + (term if sign > 0 else -term)
        memo[cols] = total
        return total

    return minor((1 << n) - 1)


def det_M(P: Partition, spec, mode: str = "numeric", p: int = gf.DEFAULT_PRIME, seed=None,
          limit: int = SYMBOLIC_DET_LIMIT):
    """Determinant of the chain matrix: a field element for a random
    adequate assignment, or the full polynomial in symbolic mode."""
    if mode == "symbolic":
        chain = s_uchain(P, as_spec(spec))
        if chain.length > limit:
            raise ValueError(f"symbolic determinant limited to size {limit}, got {chain.length}")
        return symbolic_det(matrix_M(P, spec), limit)
    if mode != "numeric":
        raise ValueError("mode must be 'numeric' or 'symbolic'")
    A = specialize_AR(P, random_assignment(P, p, seed), p)
    return gf.det_mod(matrix_M(P, spec, A), p)
