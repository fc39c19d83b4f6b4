import pytest

from qccdc import (Circuit, Gate, MappingParams, Strategy, WeightParams,
                   first_level, grid_topology, initial_mapping,
                   interaction_scores, linear_topology, second_level, to_graph)
from qccdc.bench import qft
from qccdc.mapping import dag_layers


def chain_circuit(n):
    gates = tuple(Gate(i, "cx", (i, i + 1)) for i in range(n - 1))
    return Circuit(n, gates)


def test_even_divided_round_robin():
    topo = linear_topology(3, 4)
    c = chain_circuit(7)
    a = first_level(c, topo, MappingParams(strategy=Strategy.EVEN_DIVIDED))
    assert a == {0: 0, 1: 1, 2: 2, 3: 0, 4: 1, 5: 2, 6: 0}


def test_gathering_fills_with_reserve():
    topo = linear_topology(3, 4)
    c = chain_circuit(7)
    a = first_level(c, topo, MappingParams(strategy=Strategy.GATHERING))
    # capacity-1 = 3 qubits per trap, in qubit order
    assert a == {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 2}


def test_gathering_capacity_error():
    topo = linear_topology(2, 3)
    with pytest.raises(ValueError):
        first_level(chain_circuit(5), topo, MappingParams(strategy=Strategy.GATHERING))


def test_sta_groups_interacting_qubits():
    # two independent cliques: {0,1,2} and {3,4,5}; STA must not split them
    gates = []
    for a, b in ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)):
        gates.append(Gate(len(gates), "cx", (a, b)))
    c = Circuit(6, tuple(gates))
    topo = linear_topology(2, 4)
    a = first_level(c, topo, MappingParams(strategy=Strategy.STA))
    groups = {}
    for q, t in a.items():
        groups.setdefault(t, set()).add(q)
    assert set(map(frozenset, groups.values())) == {frozenset({0, 1, 2}),
                                                    frozenset({3, 4, 5})}


def test_dag_layers_oracle():
    # independent oracle: longest path by explicit per-qubit chains
    c = qft(5)
    layers = dag_layers(c)
    last = {}
    expect = []
    for g in c.gates:
        depth = max((expect[last[q]] + 1 for q in g.qubits if q in last), default=0)
        expect.append(depth)
        for q in g.qubits:
            last[q] = g.id
    assert layers == expect


def test_interaction_scores_split_internal_external():
    c = chain_circuit(4)  # gates (0,1), (1,2), (2,3)
    assignment = {0: 0, 1: 0, 2: 1, 3: 1}
    scores = interaction_scores(c, assignment, k=8)
    assert scores[0] == (0, 1)   # only internal partner 1
    assert scores[1] == (1, 1)   # internal 0, external 2
    assert scores[2] == (1, 1)
    assert scores[3] == (0, 1)


def test_mountain_arrangement_shape():
    """l scores rise from the ends to the middle; spaces sit in the center."""
    g = to_graph(linear_topology(2, 7), WeightParams())
    c = chain_circuit(5)
    assignment = {q: 0 for q in range(5)}
    scores = {0: (3, 0), 1: (2, 0), 2: (1, 0), 3: (0, 1), 4: (0, 2)}
    m = second_level(g, assignment, scores, MappingParams())
    pos = {q: g.node_pos[n] for q, n in m.items()}
    # l(q) = -E + I: q0=-3 < q1=-2 < q2=-1 < q3=1 < q4=2
    assert pos == {0: 0, 1: 6, 2: 1, 3: 5, 4: 2}
    spaces = set(range(7)) - set(pos.values())
    assert spaces == {3, 4}  # centered


def test_initial_mapping_is_injective_and_fits():
    c = qft(10)
    g = to_graph(grid_topology(2, 2, 4), WeightParams())
    for strat in Strategy:
        m = initial_mapping(c, g, MappingParams(strategy=strat))
        assert len(m) == 10
        assert len(set(m.values())) == 10
        for q, node in m.items():
            assert 0 <= node < g.n_nodes


def test_even_divided_overflow():
    c = chain_circuit(9)
    with pytest.raises(ValueError):
        first_level(c, linear_topology(2, 4), MappingParams(strategy=Strategy.EVEN_DIVIDED))
