import itertools

import numpy as np
import pytest

from jordantype.commutator import (
    DEFAULT_PRIME, AssignmentError, NotNilpotentError, NotSaturatedError, SparseMatrix, basis,
    basis_index, component_monomials, det_M, distinguished_monomial, is_in_UB, jordan_block_matrix,
    jordan_type, matrix_M, ones_assignment, parse_poly, power_entry_via_chains, random_assignment,
    random_UB_element, specialize_AR, symbolic_AR, symbolic_det, ub_dimension, variables_of,
)
from jordantype.commutator import gf
from jordantype.partitions import Partition, all_partitions
from jordantype.poset import Vertex, build_diagram, Alpha, Beta, Z
from jordantype.uchains import maximal_specs, s_uchain, u_sequence

from conftest import P

p = DEFAULT_PRIME
X421 = P("4,2,1")


def named(X=X421):
    """The labels a..g of the basis of (4,2,1) in the global order."""
    return dict(zip("abcdefg", basis(X)))


def image(A, v, X=X421):
    """Nonzero coefficients of A(v) keyed by basis label."""
    idx, names = basis_index(X), {w: c for c, w in named(X).items()}
    row = A.to_dense()[idx[v]]
    return {names[w]: int(row[idx[w]]) for w in basis(X) if row[idx[w]]}


def test_basis_order_matches_labels():
    n = named()
    assert [n[c] for c in "abcdefg"] == [Vertex(1, 4, 1), Vertex(2, 4, 1), Vertex(3, 4, 1), Vertex(4, 4, 1),
                                         Vertex(1, 2, 1), Vertex(2, 2, 1), Vertex(1, 1, 1)]


def test_jordan_block_matrix():
    J, n = jordan_block_matrix(X421), named()
    assert image(J, n["a"]) == {"b": 1} and image(J, n["c"]) == {"d": 1}
    assert image(J, n["d"]) == {} and image(J, n["e"]) == {"f": 1} and image(J, n["g"]) == {}
    for X in all_partitions(8):
        J = jordan_block_matrix(X)
        assert J.rank() == X.n - len(X)
        assert jordan_type(J) == X


def test_jordan_type_basic():
    assert jordan_type(SparseMatrix(3, p)).parts == (1, 1, 1)
    with pytest.raises(NotNilpotentError):
        jordan_type(SparseMatrix(2, p, {(0, 0): 1}))
    with pytest.raises(NotNilpotentError):
        jordan_type(np.eye(2, dtype=np.int64), p)


def all_ones_commutator():
    n, idx = named(), basis_index(X421)
    M = np.zeros((7, 7), dtype=np.int64)
    cyclic = {"a": "be", "e": "cg", "g": "f"}
    J = jordan_block_matrix(X421).to_dense()
    for src, targets in cyclic.items():
        row = np.zeros(7, dtype=np.int64)
        for t in targets:
            row[idx[n[t]]] = 1
        # extend to the B-orbit: A(B^s v) = B^s A(v)
        v = np.zeros(7, dtype=np.int64)
        v[idx[n[src]]] = 1
        while v.any():
            M[np.nonzero(v)[0][0]] = row
            v, row = v @ J, row @ J
    return SparseMatrix.from_dense(M, p, basis(X421))


def test_all_ones_commutator_type_and_membership():
    A = all_ones_commutator()
    assert jordan_type(A).parts == (5, 2)
    assert is_in_UB(A, X421)
    assert not is_in_UB(A.transpose(), X421)
    assert not A.transpose().commutes_with(jordan_block_matrix(X421))
    assert not is_in_UB(SparseMatrix(7, p, {(j, j): 1 for j in range(7)}), X421)
    assert not is_in_UB(SparseMatrix(3, p), X421)


def test_span_characterization_of_jordan_type():
    """Prefix sums of the type equal the largest span of k[A] on i vectors
    (exhaustive over GF(2) for dimension <= 4)."""
    rng = np.random.default_rng(11)
    q = 2
    for n in range(1, 5):
        vectors = [np.array(v) for v in itertools.product(range(q), repeat=n)]
        for _ in range(6):
            N = np.triu(rng.integers(0, q, size=(n, n)), 1)
            while True:
                S = rng.integers(0, q, size=(n, n))
                if gf.det_mod(S, q):
                    break
            Sinv = np.round(np.linalg.inv(S) * round(np.linalg.det(S))).astype(np.int64) % q
            A = gf.matmul_mod(gf.matmul_mod(S, N, q), Sinv, q)
            Q = jordan_type(A, q)
            powers = [np.linalg.matrix_power(A, k) % q for k in range(n)]
            sums = np.cumsum(Q.parts)
            for i in range(1, len(Q) + 1):
                best = max(gf.rank_mod(np.array([v @ Pk % q for v in vs for Pk in powers]), q)
                           for vs in itertools.combinations_with_replacement(vectors, i))
                assert best == sums[i - 1]


def test_span_characterization_large_field():
    """Dimensions 5..7 over GF(p): random i-tuples reach the prefix sums and
    no i-tuple of basis vectors exceeds them."""
    rng = np.random.default_rng(12)
    for n in range(5, 8):
        for _ in range(4):
            N = np.triu(rng.integers(0, 3, size=(n, n)) * (rng.random((n, n)) > 0.4), 1)
            # conjugate by a unipotent lower triangular matrix (exact inverse mod p)
            L = np.tril(rng.integers(0, p, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
            Linv = np.eye(n, dtype=np.int64)
            for _ in range(1, n):
                Linv = (np.eye(n, dtype=np.int64) + gf.matmul_mod(np.eye(n, dtype=np.int64) - L, Linv, p)) % p
            A = gf.matmul_mod(gf.matmul_mod(L, N, p), Linv, p)
            Q = jordan_type(A, p)
            powers = [np.eye(n, dtype=np.int64), *gf.power_stack(A, p, n - 1)]
            sums = np.cumsum(Q.parts)

            def span(vs):
                return gf.rank_mod(np.concatenate([gf.matmul_mod(vs, Pk, p) for Pk in powers]), p)

            for i in range(1, len(Q) + 1):
                assert span(rng.integers(0, p, size=(i, n))) == sums[i - 1]
                eye = np.eye(n, dtype=np.int64)
                assert max(span(eye[list(c)]) for c in itertools.combinations(range(n), i)) <= sums[i - 1]


def test_ub_dimension_matches_centralizer_count():
    # dim C(J_P) = sum of min(p_i, p_j); U_B drops a triangle per block size
    for X in all_partitions(10):
        dim_c = sum(min(a, b) for a in X.parts for b in X.parts)
        assert ub_dimension(X) == dim_c - sum(m * (m + 1) // 2 for m in X.multiplicity.values())
    assert ub_dimension(X421) == 12


def test_random_ub_support_is_the_order():
    for X in all_partitions(9):
        A = random_UB_element(X, p, seed=X.n)
        vs = basis(X)
        assert is_in_UB(A, X)
        assert {(vs[r], vs[c]) for r, c in A.entries} == set(build_diagram(X).comparable_pairs())


def test_random_ub_single_block_is_polynomial_in_b():
    for n in range(1, 6):
        X = Partition((n,))
        J = jordan_block_matrix(X).to_dense()
        for seed in range(3):
            A = random_UB_element(X, p, seed).to_dense()
            poly = sum((int(A[0, k]) * np.linalg.matrix_power(J, k) for k in range(1, n)), np.zeros_like(J))
            assert np.array_equal(A, np.asarray(poly, dtype=np.int64) % p)
            assert A[0, 0] == 0


def test_random_ub_is_deterministic():
    assert random_UB_element(X421, p, 3) == random_UB_element(X421, p, 3)
    assert random_UB_element(X421, p, 3) != random_UB_element(X421, p, 4)


def test_specialize_examples():
    n = named()
    A = specialize_AR(X421, ones_assignment(X421))
    assert A == all_ones_commutator()
    asg = random_assignment(X421, p, 9)
    A = specialize_AR(X421, asg)
    s4, s2, t4, t2, z4 = (asg[v] for v in (Beta(4), Beta(2), Alpha(4), Alpha(2), Z(4)))
    assert image(A, n["a"]) == {"b": z4, "e": s4}
    assert image(A, n["e"]) == {"c": t4, "g": s2}
    assert image(A, n["g"]) == {"f": t2}


def test_specialize_rejects_bad_assignments():
    asg = ones_assignment(X421)
    with pytest.raises(AssignmentError):
        specialize_AR(X421, {**asg, Z(4): 0})
    with pytest.raises(AssignmentError):
        specialize_AR(X421, {k: v for k, v in asg.items() if k != Beta(2)})
    with pytest.raises(AssignmentError):
        specialize_AR(X421, {**asg, Z(4): p})


def test_variables_include_orphan_z():
    # level 1 is an isolated part: z_1 is a variable though it labels no edge
    assert {v.name for v in variables_of(P("3,1"))} == {"s_3", "t_3", "z_3", "z_1"}


def test_specializations_lie_in_ub():
    for X in all_partitions(8):
        A = specialize_AR(X, random_assignment(X, p, 1))
        assert A.commutes_with(jordan_block_matrix(X))
        assert is_in_UB(A, X)


def test_symbolic_ar():
    S, idx, n = symbolic_AR(X421), basis_index(X421), named()
    assert str(S[idx[n["a"]], idx[n["b"]]]) == "z_4"
    assert str(S[idx[n["g"]], idx[n["f"]]]) == "t_2"
    for X in all_partitions(9):
        S = symbolic_AR(X)
        assert len(S.entries) == len(build_diagram(X, True).edges)
        assert S.max_degree() <= 1
    with pytest.raises(ValueError):
        symbolic_AR(Partition((21,)))


def test_power_entries_example():
    X = P("4,2,2,1")
    assert parse_poly("z_4^3").coefficient(parse_poly("z_4^3")) == 1
    assert power_entry_via_chains(X, 3, (1, 4, 1), (4, 4, 1)).coefficient(parse_poly("z_4^3")) == 1
    six = power_entry_via_chains(X, 6, (1, 4, 1), (4, 4, 1))
    assert six.coefficient(parse_poly("s_4*s_2*t_{2,1}^2*t_2*t_4")) >= 1
    one = power_entry_via_chains(X, 1, (1, 2, 1), (1, 2, 2))
    assert str(one) == "t_{2,1}"
    with pytest.raises(ValueError):
        power_entry_via_chains(X, 0, (1, 2, 1), (1, 2, 2))


def test_power_entries_match_matrix_powers_small():
    for X in all_partitions(6):
        S, vs = symbolic_AR(X), basis(X)
        power = S
        for u in range(1, 7):
            for (a, b) in itertools.product(range(X.n), repeat=2):
                assert power[a, b] == power_entry_via_chains(X, u, vs[a], vs[b])
            power = power @ S


def chain_matrix_4_2():
    f = parse_poly
    rows = [
        ["1", "0", "0", "0", "0", "0", "0"],
        ["0", "s_4", "0", "0", "0", "z_4", "0"],
        ["0", "0", "s_2*s_4", "s_4*z_4", "0", "0", "t_4*s_4 + z_4^2"],
        ["0", "0", "0", "t_2*s_2*s_4", "2*s_4*t_4*z_4 + z_4^3", "0", "0"],
        ["0", "0", "0", "0", "t_4*t_2*s_2*s_4", "0", "0"],
        ["0", "0", "0", "0", "0", "1", "0"],
        ["0", "0", "0", "s_4", "0", "0", "z_4"],
    ]
    return [[f(x) for x in row] for row in rows]


def test_matrix_m_for_4_2():
    M = matrix_M(X421, (4, 2))
    n = named()
    assert list(M.col_labels) == [n[c] for c in "aegfdbc"]
    assert [(r.component, r.u) for r in M.row_labels] == [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (2, 0), (2, 1)]
    expected = chain_matrix_4_2()
    assert all(M[r, c] == expected[r][c] for r in range(7) for c in range(7))
    small = matrix_M(X421, (2,))
    assert all(small[r, c] == M[r, c] for r in range(5) for c in range(5))


def test_matrix_m_numeric_is_specialized_symbolic():
    X = P("5,4,3,3,2,1")
    asg = random_assignment(X, p, 2)
    for spec in maximal_specs(X):
        num = matrix_M(X, spec, specialize_AR(X, asg))
        sym = matrix_M(X, spec)
        assert np.array_equal(num, sym.evaluate(asg, p))
        starts = np.cumsum([0] + [len(c) for c in s_uchain(X, spec).components])[:-1]
        for r in starts:
            assert num[r].tolist() == [int(j == r) for j in range(num.shape[1])]


def test_determinants_of_example():
    assert str(det_M(X421, (4, 2), "symbolic")) == "s_4^4*s_2^3*t_2^2*t_4*z_4"
    assert str(det_M(X421, (2,), "symbolic")) == "s_4^4*s_2^3*t_2^2*t_4"
    assert distinguished_monomial(X421, (4, 2)) == det_M(X421, (4, 2), "symbolic")
    assert det_M(X421, (4, 2), "numeric", p, 1) != 0
    with pytest.raises(ValueError):
        det_M(X421, (4, 2), "fast")
    with pytest.raises(ValueError):
        det_M(P("5,4,3,3,2,1"), (4, 2), "symbolic")


def test_numeric_det_is_specialized_symbolic():
    asg = random_assignment(X421, p, 4)
    sym = det_M(X421, (4, 2), "symbolic").evaluate(asg, p)
    num = gf.det_mod(matrix_M(X421, (4, 2), specialize_AR(X421, asg)), p)
    assert sym == num


def test_distinguished_monomials_of_2_chain():
    mu1, mu2 = component_monomials(s_uchain(P("5,4,3,3,2,1"), (4, 2)))
    assert mu2 == parse_poly("s_5^5*s_4^4*t_{3,1}^3*t_4^2*t_5")
    assert mu1 == parse_poly("s_5^10*s_4^9*t_{3,1}^11*s_3^7*s_2^6*t_2^5*t_3^4*t_4^2*t_5")
    assert mu1.degree() == 55


def test_distinguished_monomial_degrees():
    for X in all_partitions(9):
        for spec in maximal_specs(X):
            U = s_uchain(X, spec)
            for comp, mono in zip(U.components, component_monomials(U)):
                assert mono.degree() == len(comp) * (len(comp) - 1) // 2


def test_unsaturated_spec_has_no_distinguished_monomial():
    with pytest.raises(NotSaturatedError):
        distinguished_monomial(P("3,2"), (2,))


def test_symbolic_det_small_matrices():
    from jordantype.commutator import PolyMatrix, SparsePoly
    x, y = SparsePoly.var(Beta(2)), SparsePoly.var(Z(2))
    M = PolyMatrix(2, 2, {(0, 0): x, (0, 1): y, (1, 0): y, (1, 1): x})
    assert symbolic_det(M) == x * x - y * y
    M3 = PolyMatrix(3, 3, {(0, 2): x, (1, 1): x, (2, 0): x})
    assert symbolic_det(M3) == -(x ** 3)
    with pytest.raises(ValueError):
        symbolic_det(PolyMatrix(10, 10, {}))


def test_distinguished_coefficient_is_one():
    count = 0
    for X in all_partitions(9):
        for spec in maximal_specs(X):
            if s_uchain(X, spec).length <= 9:
                det = det_M(X, spec, "symbolic")
                assert det.coefficient(distinguished_monomial(X, spec)) == 1
                count += 1
    assert count > 100


def test_sample_type_prefix_sums_bound_u_sequence():
    for X in all_partitions(10):
        Q = jordan_type(specialize_AR(X, random_assignment(X, p, 0)))
        u = u_sequence(X)
        sums = np.cumsum(Q.parts)
        for s in range(1, len(u)):
            assert (sums[s - 1] if s <= len(sums) else X.n) >= u[s]
