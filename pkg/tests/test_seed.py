"""Tests for seed mutation, Laurent verification, and exchange graphs."""

import random

import pytest

from conftest import random_quiver
from clusterkit.errors import FrozenVertexError, InvariantViolation
from clusterkit.exactalg import RationalFn, TrivialSemifield
from clusterkit.quiver import ExchangeMatrix, Quiver
from clusterkit.seed import (
    Seed,
    cluster_monomials,
    exchange_graph,
    is_finite_type,
    verify_laurent,
)

A2_QUIVER = Quiver(2, 0, {(1, 2): 1})


def test_a2_first_mutation():
    seed = Seed.initial_geometric(A2_QUIVER)
    mutated = seed.mutate(1)
    x1, x2 = seed.context.gens()
    assert mutated.cluster[0] == RationalFn(x2 + 1, x1)
    assert mutated.cluster[1] == seed.cluster[1]


def test_a2_pentagon_recurrence():
    # after mutating 1,2,1,2,1 the seed equals the initial one with the
    # two labels swapped
    seed = Seed.initial_geometric(A2_QUIVER)
    final = seed.mutate_path([1, 2, 1, 2, 1])
    assert final.cluster == (seed.cluster[1], seed.cluster[0])
    assert final.canonical_key() == seed.canonical_key()
    assert final != seed


def test_mutation_involution():
    rng = random.Random(21)
    for _ in range(40):
        q = random_quiver(rng, max_mutable=3, max_frozen=2)
        seed = Seed.initial_geometric(q)
        k = rng.randint(1, seed.n)
        assert seed.mutate(k).mutate(k) == seed


def test_frozen_vertex_mutation_rejected():
    seed = Seed.initial_geometric(Quiver(1, 1, {(1, 2): 1}))
    with pytest.raises(FrozenVertexError):
        seed.mutate(2)


def test_frozen_variables_enter_exchange_relation():
    # one mutable vertex with a frozen neighbor: x1' = (x2 + 1)/x1
    seed = Seed.initial_geometric(Quiver(1, 1, {(1, 2): 1}))
    mutated = seed.mutate(1)
    x1, x2 = seed.context.gens()
    assert mutated.cluster[0] == RationalFn(x2 + 1, x1)


# -- general (semifield) mutation --------------------------------------------------


def test_general_tropical_matches_geometric():
    rng = random.Random(33)
    for _ in range(100):
        q = random_quiver(rng, max_mutable=3, max_frozen=2)
        geo = Seed.initial_geometric(q)
        gen = Seed.general_from_extended(q.to_matrix())
        for _ in range(rng.randint(1, 5)):
            k = rng.randint(1, geo.n)
            geo = geo.mutate(k)
            gen = gen.mutate(k)
        assert gen.cluster == geo.cluster
        assert gen.matrix == geo.matrix.principal()
        # frozen rows of the geometric matrix encode the coefficient tuple
        n, m = geo.matrix.n, geo.matrix.m
        for j in range(n):
            assert gen.coeffs[j].exponents == tuple(
                geo.matrix.rows[i][j] for i in range(n, m)
            )


def test_general_y_inverts_at_mutated_index():
    gen = Seed.general_from_extended(Quiver(2, 1, {(1, 2): 1, (3, 1): 1}).to_matrix())
    y1 = gen.coeffs[0]
    mutated = gen.mutate(1)
    assert mutated.coeffs[0].exponents == tuple(-e for e in y1.exponents)


def test_trivial_coefficients_reduce_to_binomial_exchange():
    matrix = A2_QUIVER.to_matrix()
    triv = TrivialSemifield()
    gen = Seed.initial_general(matrix, triv, (1, 1))
    geo = Seed.initial_geometric(matrix)
    for k in (1, 2, 1):
        gen = gen.mutate(k)
        geo = geo.mutate(k)
        assert gen.cluster == geo.cluster


def test_general_mutation_involution():
    gen = Seed.general_from_extended(Quiver(2, 1, {(1, 2): 1, (3, 2): 1}).to_matrix())
    assert gen.mutate(2).mutate(2) == gen


# -- Laurent phenomenon --------------------------------------------------------------


def test_verify_laurent_a2_cycle():
    seed = Seed.initial_geometric(A2_QUIVER)
    report = verify_laurent(seed, [1, 2, 1, 2, 1])
    assert report.checked == 5
    assert report.all_laurent and report.all_positive


def test_verify_laurent_acyclic_rank3():
    rng = random.Random(5)
    seed = Seed.initial_geometric(Quiver(3, 0, {(1, 2): 1, (2, 3): 1}))
    for _ in range(10):
        path = [rng.randint(1, 3) for _ in range(10)]
        report = verify_laurent(seed, path)
        assert report.all_laurent


def test_verify_laurent_empty_path():
    report = verify_laurent(Seed.initial_geometric(A2_QUIVER), [])
    assert report.checked == 0 and report.all_laurent


# -- exchange graphs -------------------------------------------------------------------


def test_exchange_graph_a2_pentagon():
    graph, exceeded = exchange_graph(Seed.initial_geometric(A2_QUIVER))
    assert not exceeded
    assert graph.n_vertices == 5 and graph.n_edges == 5
    assert graph.is_regular(2)


def test_exchange_graph_a3_associahedron():
    q = Quiver(3, 0, {(1, 2): 1, (2, 3): 1})
    graph, exceeded = exchange_graph(Seed.initial_geometric(q))
    assert not exceeded
    assert graph.n_vertices == 14 and graph.n_edges == 21
    assert graph.is_regular(3)


def test_exchange_graph_rank1():
    graph, exceeded = exchange_graph(Seed.initial_geometric(Quiver(1, 0, {})))
    assert not exceeded
    assert graph.n_vertices == 2 and graph.n_edges == 1


def test_exchange_graph_budget():
    q = Quiver(3, 0, {(1, 2): 1, (2, 3): 1})
    graph, exceeded = exchange_graph(Seed.initial_geometric(q), budget=4)
    assert exceeded
    assert graph.n_vertices <= 4


# -- finite type -----------------------------------------------------------------------


def test_finite_type_a2():
    report = is_finite_type(ExchangeMatrix([[0, 1], [-1, 0]]))
    assert report.status == "finite" and report.cartan_type == ("A", 2)


def test_finite_type_rank2_weight4_is_infinite():
    report = is_finite_type(ExchangeMatrix([[0, 2], [-2, 0]]), budget=10)
    assert report.status == "infinite"


def test_finite_type_after_mutation():
    # mutation-equivalent to A3 but not itself a Dynkin orientation
    b = ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    report = is_finite_type(b, budget=50)
    assert report.status == "finite" and report.cartan_type == ("A", 3)


# -- cluster monomials --------------------------------------------------------------------


def test_cluster_monomials_a2_counts():
    graph, _ = exchange_graph(Seed.initial_geometric(A2_QUIVER))
    assert len(cluster_monomials(graph, 0)) == 1
    assert len(cluster_monomials(graph, 1)) == 5
    # 5 squares (each variable sits in two clusters, counted once)
    # plus 5 adjacent products plus the 5 degree-1 variables
    assert len(cluster_monomials(graph, 2)) == 15


def test_cluster_monomials_degree0_is_unit():
    graph, _ = exchange_graph(Seed.initial_geometric(A2_QUIVER))
    (unit,) = cluster_monomials(graph, 0)
    assert unit == 1


# -- serialization --------------------------------------------------------------------------


def test_seed_json_round_trip():
    seed = Seed.initial_geometric(Quiver(2, 1, {(1, 2): 1, (3, 1): 1})).mutate(1)
    data = seed.to_json_dict()
    back = Seed.from_json_dict(data)
    assert back.cluster == seed.cluster
    assert back.matrix == seed.matrix
    assert data["frozen"] == ["x3"]
