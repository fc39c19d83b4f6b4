import random

import pytest

from qccdc import (BoundMode, Circuit, Gate, Infeasible, OracleLimits,
                   WeightParams, evaluate, exact_schedule, ideal_bounds,
                   linear_topology, random_instance, replay, schedule,
                   to_graph)


def two_trap_setup():
    g = to_graph(linear_topology(2, 3), WeightParams())
    return g


def test_free_circuit_costs_nothing():
    g = two_trap_setup()
    c = Circuit(2, (Gate(0, "cx", (0, 1)),))
    s = exact_schedule(c, g, {0: 0, 1: 1})
    assert s.inserted_weight == 0.0
    assert not replay(s)


def test_single_shuttle_optimum():
    """Separated pair with a space already at the destination end: exactly
    one shuttle (weight 2) is optimal, hand-checked."""
    g = two_trap_setup()
    # trap 0: q0 at slot 0, space at 1, space at 2 (end); trap 1: q1 at end slot 3
    c = Circuit(2, (Gate(0, "cx", (0, 1)),))
    s = exact_schedule(c, g, {0: 0, 1: 3})
    assert s.inserted_weight == pytest.approx(2.0)
    kinds = [e.kind.value for e in s.events]
    assert kinds.count("shuttle") == 1
    assert not replay(s)


def test_shift_then_shuttle_optimum():
    """Only space is mid-trap: one shift (0.001) + one shuttle (2) is optimal."""
    g = two_trap_setup()
    # trap 0 full (q0,q2,q3); trap 1: q1 at 3, space at 4, q4 at 5
    c = Circuit(5, (Gate(0, "cx", (0, 1)),))
    mapping = {0: 0, 2: 1, 3: 2, 1: 3, 4: 5}
    s = exact_schedule(c, g, mapping)
    assert s.inserted_weight == pytest.approx(2.001)
    assert not replay(s)


def test_infeasible_within_depth():
    g = two_trap_setup()
    c = Circuit(5, (Gate(0, "cx", (0, 1)),))
    mapping = {0: 0, 2: 1, 3: 2, 1: 3, 4: 5}
    res = exact_schedule(c, g, mapping, OracleLimits(max_depth=1))
    assert isinstance(res, Infeasible)


def test_limits_enforced():
    g = to_graph(linear_topology(3, 5), WeightParams())
    c = Circuit(2, (Gate(0, "cx", (0, 1)),))
    with pytest.raises(ValueError):
        exact_schedule(c, g, {0: 0, 1: 1})  # 15 slots > max_nodes


def test_oracle_never_beaten_by_heuristic():
    rng = random.Random(7)
    for _ in range(30):
        c, g, m = random_instance(rng)
        res = exact_schedule(c, g, m)
        if isinstance(res, Infeasible):
            continue
        assert not replay(res)
        s = schedule(c, g, m)
        assert s.inserted_weight >= res.inserted_weight - 1e-9


def test_ideal_bounds_match_relax_flags():
    rng = random.Random(1)
    c, g, m = random_instance(rng)
    s = schedule(c, g, m)
    base = evaluate(s)
    for mode, flags in ((BoundMode.PERFECT_SWAP, dict(relax_swap=True)),
                        (BoundMode.PERFECT_SHUTTLE, dict(relax_shuttle=True)),
                        (BoundMode.IDEAL, dict(relax_swap=True, relax_shuttle=True))):
        assert ideal_bounds(s, mode).success_rate == \
               evaluate(s, **flags).success_rate
        assert ideal_bounds(s, mode).success_rate >= base.success_rate
