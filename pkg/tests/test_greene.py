import random

import pytest
from hypothesis import given, settings, strategies as st

from jordantype.greene import (
    CyclicGraphError, brute_force_c, brute_force_profile, chain_cover_number,
    chain_cover_profile, greene_lambda,
)
from jordantype.partitions import all_partitions
from jordantype.poset import build_diagram
from jordantype.uchains import lambda_U

from conftest import P


def chain(n):
    return list(range(n)), [(j, j + 1) for j in range(n - 1)]


def antichain(n):
    return list(range(n)), []


def random_dag(rng, n, density):
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[a], order[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    return list(range(n)), edges


def test_total_order_and_antichain():
    assert greene_lambda(*chain(6)).parts == (6,)
    assert greene_lambda(*antichain(4)).parts == (1, 1, 1, 1)
    assert brute_force_c(*chain(5)[:1], 1, chain(5)[1]) == 5
    assert brute_force_c(list(range(4)), 2, []) == 2
    assert chain_cover_number(*antichain(5)) == 5
    assert chain_cover_number(*chain(5)) == 1


def test_diagram_values():
    D = build_diagram(P("4,2,1"))
    assert brute_force_c(D, 1) == 5
    assert brute_force_c(D, 2) == 7
    assert chain_cover_number(D) == 2
    assert greene_lambda(build_diagram(P("4,2,2,1"))).parts == (7, 2)


def test_cycle_rejected():
    with pytest.raises(CyclicGraphError):
        greene_lambda([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        greene_lambda([0, 1], [(0, 5)])


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_profile(*antichain(15))


def test_flow_matches_oracle_on_diagrams():
    for X in all_partitions(10):
        D = build_diagram(X)
        if X.n <= 14:
            assert chain_cover_profile(D) == brute_force_profile(D)
        assert greene_lambda(D) == lambda_U(X)


def test_flow_matches_oracle_on_random_dags():
    rng = random.Random(20261014)
    for _ in range(50):
        n = rng.randint(1, 12)
        nodes, edges = random_dag(rng, n, rng.choice([0.1, 0.25, 0.5]))
        assert chain_cover_profile(nodes, edges) == brute_force_profile(nodes, edges)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.sets(st.tuples(st.integers(0, 9), st.integers(0, 9))))
def test_profile_is_concave_partition(n, pairs):
    edges = [(a, b) for a, b in pairs if a < b < n]
    c = chain_cover_profile(list(range(n)), edges)
    lam = greene_lambda(list(range(n)), edges)
    assert c[0] == 0 and c[-1] == n
    assert all(a < b for a, b in zip(c, c[1:]))
    assert lam.n == n
    assert c == brute_force_profile(list(range(n)), edges)
