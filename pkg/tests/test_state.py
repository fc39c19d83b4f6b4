import pytest
from hypothesis import given, strategies as st

from qccdc import (EdgeKind, HeatParams, MachineState, WeightParams,
                   linear_topology, to_graph)


def make_state(mapping, n_traps=2, capacity=3, heat=None):
    g = to_graph(linear_topology(n_traps, capacity), WeightParams())
    return MachineState(g, mapping, heat)


def test_swap_exchanges_mapping_without_heat():
    s = make_state({0: 0, 1: 1})
    ev = s.apply_generic_swap(s.graph.edge(0, 1))
    assert s.mapping == {0: 1, 1: 0}
    assert ev.qubits == (0, 1)
    assert all(v == 0.0 for v in s.nbar.values())
    s.check_consistency()


def test_shuttle_heat_arithmetic():
    """Shuttle over 2 segments adds k1 + 2*k2 = 0.12 quanta to the destination."""
    g = to_graph(
        __import__("qccdc").topology_from_json({
            "traps": [{"id": 0, "capacity": 2}, {"id": 1, "capacity": 2}],
            "junctions": [{"id": 0, "degree": 2}],
            "paths": [{"trap_a": 0, "trap_b": 1, "segments": 2, "junctions": [0]}],
        }), WeightParams())
    s = MachineState(g, {0: 0, 1: 1}, HeatParams())
    ev = s.apply_generic_swap(g.edge(1, 2))  # q1 shuttles into trap 1
    assert ev.kind.value == "shuttle"
    assert s.nbar[1] == pytest.approx(0.1 + 0.01 * 2)
    assert s.nbar[0] == pytest.approx(0.0)
    s.check_consistency()


def test_heat_split_fraction():
    g = to_graph(linear_topology(2, 2), WeightParams())
    s = MachineState(g, {0: 0}, HeatParams(dest_fraction=0.5))
    s.apply_generic_swap(g.edge(0, 2))
    assert s.nbar[1] == pytest.approx(0.5 * 0.1 + 0.01)
    assert s.nbar[0] == pytest.approx(0.5 * 0.1)


def test_ion_distance_skips_spaces():
    # trap of 5 slots: q0 _ q1 _ q2  -> 1 ion strictly between q0 and q2
    g = to_graph(linear_topology(2, 5), WeightParams())
    s = MachineState(g, {0: 0, 1: 2, 2: 4})
    assert s.ion_distance(0, 2) == 1
    assert s.ion_distance(0, 1) == 0
    with pytest.raises(ValueError):
        MachineState(g, {0: 0, 1: 5}).ion_distance(0, 1)


def test_invalid_swap_rejected():
    s = make_state({0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 5})  # no spaces at all
    with pytest.raises(ValueError):
        s.apply_generic_swap(s.graph.edge(2, 3))  # shuttle needs a space


def test_space_recorder_tracks_occupancy():
    s = make_state({0: 0, 1: 1})
    assert s.spaces[0] == {2} and s.spaces[1] == {0, 1, 2}
    s.apply_generic_swap(s.graph.edge(1, 2))  # shift q1 to the end slot
    assert s.spaces[0] == {1}
    assert s.traps_without_space == 0
    s.apply_generic_swap(s.graph.edge(2, 3))  # shuttle q1 into trap 1
    assert s.spaces[0] == {1, 2}
    s.check_consistency()


@given(st.lists(st.integers(0, 2), min_size=1, max_size=30))
def test_generic_swap_involution(moves):
    """Applying the same below-threshold edge twice restores placement."""
    s = make_state({0: 0, 1: 1, 2: 3})
    edges = [s.graph.edge(0, 1), s.graph.edge(1, 2), s.graph.edge(3, 4)]
    for idx in moves:
        e = edges[idx]
        if s.classify(e.u, e.v) not in (EdgeKind.QUBIT_SWAP, EdgeKind.SPACE_SHIFT):
            continue
        before = list(s.slot_qubit)
        s.apply_generic_swap(e)
        s.apply_generic_swap(e)
        assert s.slot_qubit == before
        s.check_consistency()


def test_nbar_monotone_under_random_swaps():
    import random
    rng = random.Random(0)
    s = make_state({0: 0, 1: 1, 2: 3}, n_traps=3, capacity=3)
    prev = dict(s.nbar)
    for _ in range(200):
        usable = [e for e in s.graph.edges
                  if s.classify(e.u, e.v) in (EdgeKind.QUBIT_SWAP,
                                              EdgeKind.SPACE_SHIFT, EdgeKind.SHUTTLE)]
        e = rng.choice(usable)
        s.apply_generic_swap(e)
        assert all(s.nbar[t] >= prev[t] for t in s.nbar)
        prev = dict(s.nbar)
    s.check_consistency()
