"""Generic-swap shuttling scheduler.

Outer loop: execute every executable frontier gate; when the frontier is
blocked, score every valid generic swap (SWAP gate, space shift, shuttle)
against a temporary state and apply the cheapest one.  A swap's score is the
best frontier gate's truncated path distance plus a penalty for traps left
without free space, decayed for recently-moved qubits, plus the swap's own
edge weight.

Path distances ignore occupancy (they measure geometry, not immediate
feasibility), so they are precomputed once per graph into a dense table:
min-plus powers give the cheapest path with at most ``m`` intermediate
nodes, with a full shortest-path fallback for pairs out of truncation range.

Because the distance table ignores occupancy, enabling moves (shifting a
space to a trap end so a shuttle becomes legal) never lower any gate's
score, and the candidate loop can cycle through no-op shifts.  Whenever the
best candidate fails to strictly improve the frontier score, the scheduler
falls back to an explicit deterministic routing plan for the lowest-id
blocked gate: free a space in each trap along the route (cascading an
eviction out of full traps when needed), walk the moving qubit to a trap
end, and shuttle it hop by hop.  The plan is emitted one generic swap per
outer iteration, so schedules stay replayable and deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .circuit import Circuit, DepGraph, build_dag
from .device import DeviceGraph, Edge, EdgeKind
from .events import EventKind, EventRecord
from .state import HeatParams, MachineState


@dataclass(frozen=True)
class SchedulerParams:
    delta: float = 0.001
    decay_reset_window: int = 5
    m: int = 2                      # max intermediate path nodes
    iteration_cap_per_gate: int = 10000

    def __post_init__(self):
        if self.delta < 0 or self.m < 1:
            raise ValueError("delta must be >= 0 and m >= 1")


class SchedulerStuck(RuntimeError):
    def __init__(self, frontier, iterations):
        super().__init__(
            f"no progress after {iterations} generic swaps; stuck frontier: {sorted(frontier)}")
        self.frontier = set(frontier)


class DecayTable:
    """Iteration index of the last generic swap touching each qubit."""

    def __init__(self, window: int):
        self.window = window
        self.last_touched: dict[int, int] = {}

    def touch(self, qubits, iteration: int):
        for q in qubits:
            self.last_touched[q] = iteration

    def is_recent(self, qubit: int, iteration: int) -> bool:
        last = self.last_touched.get(qubit)
        if last is None:
            return False
        if iteration - last > self.window:
            del self.last_touched[qubit]  # stale entry, reset to factor 1
            return False
        return True


@dataclass
class Schedule:
    events: list[EventRecord]
    circuit: Circuit
    graph: DeviceGraph
    initial_mapping: dict[int, int]
    heat: HeatParams

    @property
    def metrics(self) -> dict[str, int]:
        counts = {"shuttles": 0, "swap_gates": 0, "space_shifts": 0,
                  "two_qubit_gates": 0, "one_qubit_gates": 0}
        for e in self.events:
            if e.kind is EventKind.SHUTTLE:
                counts["shuttles"] += 1
            elif e.kind is EventKind.SWAP:
                counts["swap_gates"] += 1
            elif e.kind is EventKind.SHIFT:
                counts["space_shifts"] += 1
            elif len(e.qubits) == 2:
                counts["two_qubit_gates"] += 1
            else:
                counts["one_qubit_gates"] += 1
        return counts

    @property
    def inserted_weight(self) -> float:
        return sum(e.weight for e in self.events)


def distance_table(graph: DeviceGraph, m: int, scale: float = 1.0) -> np.ndarray:
    """Dense node-to-node distance: cheapest path with <= m intermediates,
    falling back to the unrestricted shortest path where truncation fails.

    Weights are divided by ``scale`` so callers can work in normalized units
    (the heuristic divides by shuttle_base to keep its arithmetic bit-exact
    when all weights are multiplied by a common factor)."""
    n = graph.n_nodes
    w = np.full((n, n), np.inf)
    np.fill_diagonal(w, 0.0)
    for e in graph.edges:
        w[e.u, e.v] = w[e.v, e.u] = e.weight / scale
    d = w.copy()
    for _ in range(m):  # m min-plus steps on top of w: paths of <= m+1 edges
        d = np.minimum(d, (d[:, :, None] + w[None, :, :]).min(axis=1))
    if np.isinf(d).any():
        finite = np.where(np.isinf(w), 0.0, w)
        full = dijkstra(csr_matrix(finite), directed=False)
        d = np.where(np.isinf(d), full, d)
    return d


def candidates(state: MachineState, graph: DeviceGraph) -> list[tuple[EdgeKind, Edge]]:
    """All edges currently usable as a generic swap, in edge order."""
    out = []
    for e in graph.edges:
        kind = state.classify(e.u, e.v)
        if kind in (EdgeKind.QUBIT_SWAP, EdgeKind.SPACE_SHIFT, EdgeKind.SHUTTLE):
            out.append((kind, e))
    return out


def score_gate(gate_qubits, state: MachineState, dist, pen: float) -> float:
    """Truncated path distance between a gate's slots plus the no-space penalty."""
    s1 = state.mapping[gate_qubits[0]]
    s2 = state.mapping[gate_qubits[1]]
    return dist[s1][s2] + pen


def heuristic_h(edge: Edge, kind: EdgeKind, state: MachineState, frontier_gates,
                dist, params: SchedulerParams, pen_unit: float = 1.0,
                norm: float = 1.0) -> float:
    """Score of applying one candidate swap: min over frontier gates of
    decay * (distance under the post-swap mapping + penalty) + edge weight.

    All terms are divided by ``norm`` (usually shuttle_base) so that scaling
    every device weight by a common factor reproduces the same floats."""
    # temporary mapping: only the moved qubit(s) change slots
    moved: dict[int, int] = {}
    qu, qv = state.slot_qubit[edge.u], state.slot_qubit[edge.v]
    if qu is not None:
        moved[qu] = edge.v
    if qv is not None:
        moved[qv] = edge.u

    pen_count = state.traps_without_space
    if kind is EdgeKind.SHUTTLE:
        src_node = edge.u if qu is not None else edge.v
        dst_node = edge.v if qu is not None else edge.u
        src, dst = state.graph.node_trap[src_node], state.graph.node_trap[dst_node]
        if state.space_count[src] == 0:
            pen_count -= 1
        if state.space_count[dst] == 1:
            pen_count += 1
    pen = pen_count * pen_unit

    best = np.inf
    mapping = state.mapping
    for q1, q2, decay_factor in frontier_gates:
        s1 = moved[q1] if q1 in moved else mapping[q1]
        s2 = moved[q2] if q2 in moved else mapping[q2]
        score = (dist[s1][s2] + pen) * decay_factor
        if score < best:
            best = score
    return best + edge.weight / norm


# ---------------------------------------------------------------------------
# Deterministic enabling-move planner (escape from heuristic plateaus)
# ---------------------------------------------------------------------------

def _trap_adjacency(graph: DeviceGraph) -> dict[int, list[tuple[int, float]]]:
    adj: dict[int, list[tuple[int, float]]] = {t.id: [] for t in graph.topology.traps}
    seen = set()
    for p in graph.topology.paths:
        key = (min(p.trap_a, p.trap_b), max(p.trap_a, p.trap_b))
        w = float(len(p.junctions) + 1)  # relative cost only; scale-free
        if key in seen:
            continue
        seen.add(key)
        adj[p.trap_a].append((p.trap_b, w))
        adj[p.trap_b].append((p.trap_a, w))
    for lst in adj.values():
        lst.sort()
    return adj


def _trap_route(adj, src: int, dst: int) -> tuple[float, list[int]]:
    """Cheapest trap-level route, ties broken by lexicographic trap sequence."""
    best: dict[int, tuple[float, tuple[int, ...]]] = {src: (0.0, (src,))}
    heap = [(0.0, (src,))]
    while heap:
        cost, path = heapq.heappop(heap)
        here = path[-1]
        if best.get(here, (np.inf, ())) < (cost, path):
            continue
        if here == dst:
            return cost, list(path)
        for nb, w in adj[here]:
            cand = (cost + w, path + (nb,))
            if nb not in best or cand < best[nb]:
                best[nb] = cand
                heapq.heappush(heap, cand)
    raise RuntimeError(f"traps {src} and {dst} are disconnected")


class _EscapePlanner:
    """Builds an edge sequence that makes one blocked gate executable.

    Works on a private copy of the occupancy so planning never disturbs the
    live state; the returned edges are applied one per scheduler iteration.
    """

    def __init__(self, state: MachineState, graph: DeviceGraph, trap_adj):
        self.graph = graph
        self.adj = trap_adj
        self.slot_qubit = list(state.slot_qubit)
        self.mapping = dict(state.mapping)
        self.space_count = dict(state.space_count)
        self.plan: list[tuple[int, int]] = []

    def _exchange(self, u: int, v: int):
        g = self.graph
        qu, qv = self.slot_qubit[u], self.slot_qubit[v]
        assert (qu is None) != (qv is None) or (qu is not None and qv is not None)
        self.slot_qubit[u], self.slot_qubit[v] = qv, qu
        if qu is not None:
            self.mapping[qu] = v
        if qv is not None:
            self.mapping[qv] = u
        tu, tv = g.node_trap[u], g.node_trap[v]
        if tu != tv:
            src_trap = tu if qu is not None else tv
            dst_trap = tv if qu is not None else tu
            self.space_count[src_trap] += 1
            self.space_count[dst_trap] -= 1
        self.plan.append((u, v))

    def _spaces_in(self, trap: int) -> list[int]:
        g = self.graph
        return sorted(g.node_pos[n] for n in g.trap_slots[trap]
                      if self.slot_qubit[n] is None)

    def _shift_space_to(self, trap: int, end_pos: int):
        """Walk the space nearest to end_pos out to that end slot."""
        slots = self.graph.trap_slots[trap]
        spaces = self._spaces_in(trap)
        sp = min(spaces, key=lambda p: (abs(p - end_pos), p))
        step = 1 if sp < end_pos else -1
        for p in range(sp, end_pos, step):
            self._exchange(slots[p], slots[p + step])

    def _walk_qubit_to(self, q: int, target_pos: int):
        g = self.graph
        trap = g.node_trap[self.mapping[q]]
        slots = g.trap_slots[trap]
        cur = g.node_pos[self.mapping[q]]
        step = 1 if cur < target_pos else -1
        for p in range(cur, target_pos, step):
            self._exchange(slots[p], slots[p + step])

    def _dest_end(self, trap: int) -> int:
        """End position to receive a shuttle; shifts a space there if needed."""
        cap = len(self.graph.trap_slots[trap])
        spaces = self._spaces_in(trap)
        if 0 in spaces:
            return 0
        if cap - 1 in spaces:
            return cap - 1
        near = min(spaces, key=lambda p: (min(p, cap - 1 - p), p))
        end = 0 if near <= cap - 1 - near else cap - 1
        self._shift_space_to(trap, end)
        return end

    def _make_space_in(self, trap: int, protected: set[int]):
        """Cascade qubits toward the nearest trap with a free space."""
        # BFS by hop count, deterministic by trap id
        prev = {trap: None}
        queue = deque([trap])
        goal = None
        while queue:
            t = queue.popleft()
            if self.space_count[t] > 0:
                goal = t
                break
            for nb, _ in self.adj[t]:
                if nb not in prev:
                    prev[nb] = t
                    queue.append(nb)
        if goal is None:
            raise RuntimeError("no free space anywhere on the device")
        path = []
        t = goal
        while t is not None:
            path.append(t)
            t = prev[t]
        # path runs goal -> ... -> trap; move one end qubit per hop outward
        for recv, give in zip(path, path[1:]):
            dst = self._dest_end(recv)
            slots = self.graph.trap_slots[give]
            ends = [0, len(slots) - 1]
            pick = None
            for e in ends:
                q = self.slot_qubit[slots[e]]
                if q is not None and q not in protected:
                    pick = e
                    break
            if pick is None:
                # a protected qubit sits at each usable end: tuck one inward
                e = ends[0]
                self._exchange(slots[0], slots[1])
                pick = 0 if self.slot_qubit[slots[0]] is not None else None
                if pick is None or self.slot_qubit[slots[0]] in protected:
                    pick = len(slots) - 1
            self._exchange(slots[pick], self.graph.trap_slots[recv][dst])

    def route(self, mover: int, stay: int) -> list[tuple[int, int]]:
        g = self.graph
        route = _trap_route(self.adj, g.node_trap[self.mapping[mover]],
                            g.node_trap[self.mapping[stay]])[1]
        protected = {mover, stay}
        for t_next in route[1:]:
            t_cur = g.node_trap[self.mapping[mover]]
            if self.space_count[t_next] == 0:
                self._make_space_in(t_next, protected)
            dst = self._dest_end(t_next)
            cap = len(g.trap_slots[t_cur])
            pos = g.node_pos[self.mapping[mover]]
            src = 0 if pos <= (cap - 1) / 2 else cap - 1
            self._walk_qubit_to(mover, src)
            self._exchange(g.trap_slots[t_cur][src], g.trap_slots[t_next][dst])
        return self.plan


def plan_escape(state: MachineState, graph: DeviceGraph, trap_adj,
                q1: int, q2: int, remaining_uses) -> list[tuple[int, int]]:
    """Plan both routing directions for a blocked gate and keep the cheaper.

    Ties go to the qubit with fewer remaining two-qubit gates, so the busier
    operand stays near its future partners."""
    norm = graph.params.shuttle_base
    options = []
    for rank, (mover, stay) in enumerate(((q2, q1), (q1, q2))):
        plan = _EscapePlanner(state, graph, trap_adj).route(mover, stay)
        weight = sum(graph.edge(u, v).weight / norm for u, v in plan)
        options.append((weight, remaining_uses[mover], rank, plan))
    options.sort(key=lambda t: t[:3])
    return options[0][3]


# ---------------------------------------------------------------------------
# Main loop
# ---------------------------------------------------------------------------

def schedule(circuit: Circuit, graph: DeviceGraph, initial_mapping: dict[int, int],
             params: SchedulerParams | None = None,
             heat: HeatParams | None = None) -> Schedule:
    """Run the full generic-swap scheduling loop over the circuit DAG."""
    params = params or SchedulerParams()
    heat = heat or HeatParams()
    for q in range(circuit.n_qubits):
        if q not in initial_mapping:
            raise ValueError(f"qubit {q} is not placed by the initial mapping")

    state = MachineState(graph, initial_mapping, heat)
    dag = build_dag(circuit)
    norm = graph.params.shuttle_base
    dist = distance_table(graph, params.m, scale=norm).tolist()
    pen_unit = 1.0  # one normalized shuttle-base unit per spaceless trap
    trap_adj = _trap_adjacency(graph)
    decay = DecayTable(params.decay_reset_window)
    remaining_uses = [0] * circuit.n_qubits
    for g in circuit.gates:
        if g.is_two_qubit:
            for q in g.qubits:
                remaining_uses[q] += 1
    events: list[EventRecord] = []
    iteration = 0
    swaps_since_gate = 0
    prev_edge: tuple[int, int] | None = None
    pending: deque[tuple[int, int]] = deque()
    pending_gate: int | None = None

    def try_execute() -> bool:
        """Execute every currently executable frontier gate; loop to fixpoint."""
        ran_any = False
        progress = True
        while progress:
            progress = False
            for gid in sorted(dag.frontier):
                g = dag.gates[gid]
                if g.is_two_qubit:
                    na, nb = state.mapping[g.qubits[0]], state.mapping[g.qubits[1]]
                    if not graph.has_edge(na, nb) or \
                            state.classify(na, nb, for_gate=True) is not EdgeKind.TWO_QUBIT_GATE_SITE:
                        continue
                    trap = graph.node_trap[na]
                    events.append(EventRecord(
                        EventKind.GATE, qubits=g.qubits, gate_id=gid, label=g.label,
                        slots=(na, nb), traps=(trap,),
                        chain_ions=state.chain_length(trap),
                        ion_dist=state.ion_distance(*g.qubits)))
                    for q in g.qubits:
                        remaining_uses[q] -= 1
                else:
                    node = state.mapping[g.qubits[0]]
                    trap = graph.node_trap[node]
                    events.append(EventRecord(
                        EventKind.GATE, qubits=g.qubits, gate_id=gid, label=g.label,
                        slots=(node,), traps=(trap,),
                        chain_ions=state.chain_length(trap)))
                dag.pop(gid)
                progress = True
                ran_any = True
        return ran_any

    def apply_edge(e: Edge):
        nonlocal iteration, prev_edge, swaps_since_gate
        ev = state.apply_generic_swap(e)
        events.append(ev)
        iteration += 1
        decay.touch(ev.qubits, iteration)
        prev_edge = (e.u, e.v)
        swaps_since_gate += 1
        if swaps_since_gate > params.iteration_cap_per_gate:
            raise SchedulerStuck(dag.frontier, iteration)

    while len(dag):
        if try_execute():
            swaps_since_gate = 0
            if pending_gate is not None and pending_gate not in dag.frontier:
                pending.clear()
                pending_gate = None
            continue
        if not len(dag):
            break

        if pending:
            apply_edge(graph.edge(*pending.popleft()))
            continue
        pending_gate = None

        frontier_gates = []
        for gid in sorted(dag.frontier):
            g = dag.gates[gid]
            q1, q2 = g.qubits
            recent = decay.is_recent(q1, iteration) or decay.is_recent(q2, iteration)
            frontier_gates.append((q1, q2, 1.0 + params.delta if recent else 1.0))

        pen_now = state.traps_without_space * pen_unit
        current_min = min((dist[state.mapping[q1]][state.mapping[q2]] + pen_now) * f
                          for q1, q2, f in frontier_gates)

        best_key = None
        best_edge = None
        for kind, e in candidates(state, graph):
            h = heuristic_h(e, kind, state, frontier_gates, dist, params,
                            pen_unit, norm)
            undo = 1 if prev_edge == (e.u, e.v) else 0
            key = (h, undo, e.u, e.v)
            if best_key is None or key < best_key:
                best_key = key
                best_edge = e

        improving = best_edge is not None and \
            best_key[0] - best_edge.weight / norm < current_min
        if improving:
            apply_edge(best_edge)
            continue

        # plateau: no candidate lowers the frontier score; route the lowest-id
        # blocked gate explicitly
        gid = min(dag.frontier)
        q1, q2 = dag.gates[gid].qubits
        plan = plan_escape(state, graph, trap_adj, q1, q2, remaining_uses)
        if not plan:
            raise SchedulerStuck(dag.frontier, iteration)
        pending = deque(plan)
        pending_gate = gid
        apply_edge(graph.edge(*pending.popleft()))

    return Schedule(events, circuit, graph, dict(initial_mapping), heat)
