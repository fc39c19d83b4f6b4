import dataclasses

from qccdc import (EventKind, MappingParams, WeightParams, grid_topology,
                   initial_mapping, replay, schedule, to_graph)
from qccdc.bench import qft
from qccdc.scheduler import Schedule


def make_schedule():
    c = qft(6)
    g = to_graph(grid_topology(2, 2, 3), WeightParams())
    m = initial_mapping(c, g, MappingParams())
    return schedule(c, g, m)


def test_clean_schedule_has_no_violations():
    assert replay(make_schedule()) == []


def test_dropped_gate_detected():
    s = make_schedule()
    events = [e for e in s.events
              if not (e.kind is EventKind.GATE and e.gate_id == 0)]
    bad = Schedule(events, s.circuit, s.graph, s.initial_mapping, s.heat)
    msgs = replay(bad)
    assert any("never executed" in m or "program order" in m for m in msgs)


def test_reordered_gates_detected():
    s = make_schedule()
    gate_idx = [i for i, e in enumerate(s.events) if e.kind is EventKind.GATE]
    events = list(s.events)
    a, b = gate_idx[0], gate_idx[-1]
    events[a], events[b] = events[b], events[a]
    bad = Schedule(events, s.circuit, s.graph, s.initial_mapping, s.heat)
    assert replay(bad)


def test_missing_movement_detected():
    """Dropping a shuttle desynchronizes placement: later events misclassify
    or gates run on separated qubits."""
    s = make_schedule()
    shuttle_idx = next(i for i, e in enumerate(s.events)
                       if e.kind is EventKind.SHUTTLE)
    events = s.events[:shuttle_idx] + s.events[shuttle_idx + 1:]
    bad = Schedule(events, s.circuit, s.graph, s.initial_mapping, s.heat)
    assert replay(bad)


def test_wrong_event_kind_detected():
    s = make_schedule()
    events = list(s.events)
    i = next(i for i, e in enumerate(events) if e.kind is EventKind.SHUTTLE)
    events[i] = dataclasses.replace(events[i], kind=EventKind.SWAP)
    bad = Schedule(events, s.circuit, s.graph, s.initial_mapping, s.heat)
    msgs = replay(bad)
    assert any("classifies as" in m for m in msgs)
