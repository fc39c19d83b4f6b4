"""QCCD hardware topologies and their static weighted connectivity graph.

A topology is a multigraph of traps joined by shuttle paths that may cross
junctions.  ``to_graph`` expands it into a slot-level graph: every slot pair
inside a trap gets an intra edge (weight = inner_weight * slot distance),
and the end slots of path-connected traps get shuttle edges
(weight = w * (junctions + 1)).  All intra weights sit below the threshold,
all shuttle weights above it, so a single weight comparison separates
"inside one trap" from "between traps".
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Trap:
    id: int
    capacity: int


@dataclass(frozen=True)
class Junction:
    id: int
    degree: int  # number of channels meeting at this junction


@dataclass(frozen=True)
class Path:
    """A shuttle path between two traps crossing zero or more junctions."""

    trap_a: int
    trap_b: int
    segments: int = 1
    junctions: tuple[int, ...] = ()


@dataclass(frozen=True)
class Topology:
    traps: tuple[Trap, ...]
    paths: tuple[Path, ...]
    junctions: tuple[Junction, ...]

    def __post_init__(self):
        ids = [t.id for t in self.traps]
        if ids != list(range(len(self.traps))):
            raise ValueError("trap ids must be dense 0..n-1")
        for t in self.traps:
            if t.capacity < 2:
                raise ValueError(f"trap {t.id} capacity {t.capacity} < 2")
        jun_ids = {j.id for j in self.junctions}
        for p in self.paths:
            if p.trap_a == p.trap_b:
                raise ValueError("path endpoints must be distinct traps")
            if p.segments < 1:
                raise ValueError("path needs at least one segment")
            for j in p.junctions:
                if j not in jun_ids:
                    raise ValueError(f"path references unknown junction {j}")
        if len(self.traps) > 1:
            self._check_connected()

    def _check_connected(self):
        adj: dict[int, set[int]] = {t.id: set() for t in self.traps}
        for p in self.paths:
            adj[p.trap_a].add(p.trap_b)
            adj[p.trap_b].add(p.trap_a)
        seen = {self.traps[0].id}
        stack = [self.traps[0].id]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(self.traps):
            raise ValueError("topology is not connected")

    def trap(self, trap_id: int) -> Trap:
        return self.traps[trap_id]

    def junction(self, jid: int) -> Junction:
        for j in self.junctions:
            if j.id == jid:
                return j
        raise KeyError(jid)


@dataclass(frozen=True)
class WeightParams:
    inner_weight: float = 0.001
    shuttle_base: float = 1.0
    threshold: float = 0.5

    def validate(self, max_capacity: int):
        if not 0 < self.inner_weight * (max_capacity - 1) <= self.threshold:
            raise ValueError("intra weights must stay at or below the threshold")
        if self.threshold >= self.shuttle_base:
            raise ValueError("threshold must lie below the smallest shuttle weight")


class EdgeKind(enum.Enum):
    TWO_QUBIT_GATE_SITE = "gate"
    QUBIT_SWAP = "swap"
    SPACE_SHIFT = "shift"
    SHUTTLE = "shuttle"
    INVALID = "invalid"


class NodeContent(enum.Enum):
    QUBIT = "qubit"
    SPACE = "space"


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: float
    is_shuttle: bool
    # intra edges: slot distance; shuttle edges: segment count + junction ids
    distance: int = 0
    segments: int = 0
    junctions: tuple[int, ...] = ()


class DeviceGraph:
    """Slot-level weighted graph of a topology (immutable after construction)."""

    def __init__(self, topology: Topology, params: WeightParams):
        params.validate(max(t.capacity for t in topology.traps))
        self.topology = topology
        self.params = params

        self.node_trap: list[int] = []
        self.node_pos: list[int] = []
        self.trap_slots: dict[int, list[int]] = {}
        for trap in topology.traps:
            slots = []
            for pos in range(trap.capacity):
                nid = len(self.node_trap)
                self.node_trap.append(trap.id)
                self.node_pos.append(pos)
                slots.append(nid)
            self.trap_slots[trap.id] = slots
        self.n_nodes = len(self.node_trap)

        self.edges: list[Edge] = []
        self._edge_index: dict[tuple[int, int], Edge] = {}
        for trap in topology.traps:
            slots = self.trap_slots[trap.id]
            for i in range(len(slots)):
                for j in range(i + 1, len(slots)):
                    d = j - i
                    self._add(Edge(slots[i], slots[j], params.inner_weight * d,
                                   is_shuttle=False, distance=d))
        for path in topology.paths:
            w = params.shuttle_base * (len(path.junctions) + 1)
            ends_a = self._end_slots(path.trap_a)
            ends_b = self._end_slots(path.trap_b)
            for u in ends_a:
                for v in ends_b:
                    a, b = (u, v) if u < v else (v, u)
                    self._add(Edge(a, b, w, is_shuttle=True,
                                   segments=path.segments, junctions=path.junctions))

        self.adjacency: list[list[Edge]] = [[] for _ in range(self.n_nodes)]
        for e in self.edges:
            self.adjacency[e.u].append(e)
            self.adjacency[e.v].append(e)

    def _end_slots(self, trap_id: int) -> tuple[int, int]:
        slots = self.trap_slots[trap_id]
        return slots[0], slots[-1]

    def _add(self, edge: Edge):
        self.edges.append(edge)
        self._edge_index[(edge.u, edge.v)] = edge

    def edge(self, u: int, v: int) -> Edge:
        key = (u, v) if u < v else (v, u)
        if key not in self._edge_index:
            raise KeyError(f"no edge between nodes {u} and {v}")
        return self._edge_index[key]

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._edge_index

    def is_end_slot(self, node: int) -> bool:
        cap = self.topology.trap(self.node_trap[node]).capacity
        return self.node_pos[node] in (0, cap - 1)


def to_graph(topology: Topology, params: WeightParams | None = None) -> DeviceGraph:
    return DeviceGraph(topology, params or WeightParams())


def classify_edge(graph: DeviceGraph, u: int, v: int,
                  occupancy: dict[int, NodeContent],
                  for_gate: bool = False) -> EdgeKind:
    """Classify the interchange allowed along edge (u, v) under an occupancy.

    With ``for_gate=True`` a below-threshold qubit/qubit edge reads as a
    two-qubit gate site instead of a SWAP; the two share a precondition and
    differ only in intent.
    """
    edge = graph.edge(u, v)
    cu, cv = occupancy[u], occupancy[v]
    below = edge.weight <= graph.params.threshold
    if below and cu is NodeContent.QUBIT and cv is NodeContent.QUBIT:
        return EdgeKind.TWO_QUBIT_GATE_SITE if for_gate else EdgeKind.QUBIT_SWAP
    if not below and (cu is NodeContent.SPACE) != (cv is NodeContent.SPACE):
        return EdgeKind.SHUTTLE
    if below and (cu is NodeContent.SPACE) != (cv is NodeContent.SPACE):
        if edge.weight == graph.params.inner_weight:
            return EdgeKind.SPACE_SHIFT
        return EdgeKind.INVALID
    return EdgeKind.INVALID


# ---------------------------------------------------------------------------
# Topology families
# ---------------------------------------------------------------------------

def linear_topology(n: int, capacity: int) -> Topology:
    """L-series: a chain of n traps; each hop crosses one 2-way junction."""
    if n < 2:
        raise ValueError("L-series needs n >= 2")
    traps = tuple(Trap(i, capacity) for i in range(n))
    junctions = tuple(Junction(i, 2) for i in range(n - 1))
    paths = tuple(Path(i, i + 1, segments=1, junctions=(i,)) for i in range(n - 1))
    return Topology(traps, paths, junctions)


def grid_topology(rows: int, cols: int, capacity: int) -> Topology:
    """G-series: rows x cols traps; each grid edge crosses one junction whose
    degree is the number of paths meeting at its grid vertex."""
    if rows * cols < 2:
        raise ValueError("G-series needs at least 2 traps")
    traps = tuple(Trap(r * cols + c, capacity) for r in range(rows) for c in range(cols))

    def degree(r, c):
        return sum(0 <= r + dr < rows and 0 <= c + dc < cols
                   for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)))

    junctions = tuple(Junction(r * cols + c, degree(r, c))
                      for r in range(rows) for c in range(cols))
    paths = []
    for r in range(rows):
        for c in range(cols):
            here = r * cols + c
            # each edge routed through the junction at its lower-id endpoint
            if c + 1 < cols:
                paths.append(Path(here, here + 1, segments=1, junctions=(here,)))
            if r + 1 < rows:
                paths.append(Path(here, here + cols, segments=1, junctions=(here,)))
    return Topology(traps, tuple(paths), junctions)


def star_topology(n: int, capacity: int) -> Topology:
    """S-series: n traps fully connected through one central n-way junction."""
    if n < 2:
        raise ValueError("S-series needs n >= 2")
    traps = tuple(Trap(i, capacity) for i in range(n))
    junctions = (Junction(0, n),)
    paths = tuple(Path(a, b, segments=2, junctions=(0,))
                  for a in range(n) for b in range(a + 1, n))
    return Topology(traps, paths, junctions)


def build_topology(family: str, capacity: int, *, n: int | None = None,
                   rows: int | None = None, cols: int | None = None) -> Topology:
    fam = family.upper()
    if fam == "L":
        return linear_topology(n, capacity)
    if fam == "G":
        return grid_topology(rows, cols, capacity)
    if fam == "S":
        return star_topology(n, capacity)
    raise ValueError(f"unknown topology family '{family}'")


def parse_topology_spec(spec: str, default_capacity: int | None = None) -> Topology:
    """Parse a compact spec string: 'L4:22', 'G2x3:17', 'S4' (capacity after ':')."""
    if ":" in spec:
        head, cap_s = spec.split(":", 1)
        capacity = int(cap_s)
    else:
        head, capacity = spec, default_capacity
    if capacity is None:
        raise ValueError(f"topology spec '{spec}' needs a capacity")
    fam = head[0].upper()
    rest = head[1:].lstrip("-")
    if fam == "G":
        rows_s, _, cols_s = rest.partition("x")
        return grid_topology(int(rows_s), int(cols_s), capacity)
    return build_topology(fam, capacity, n=int(rest))


def topology_from_json(data: dict | str) -> Topology:
    """Load a topology from a JSON object (family form or explicit form)."""
    if isinstance(data, str):
        data = json.loads(data)
    if "family" in data:
        fam = data["family"].upper()
        cap = data["capacity"]
        if fam == "G":
            return grid_topology(data["rows"], data["cols"], cap)
        return build_topology(fam, cap, n=data["n"])
    traps = tuple(Trap(t["id"], t["capacity"]) for t in data["traps"])
    junctions = tuple(Junction(j["id"], j["degree"]) for j in data.get("junctions", []))
    paths = tuple(Path(p["trap_a"], p["trap_b"], p.get("segments", 1),
                       tuple(p.get("junctions", ()))) for p in data["paths"])
    return Topology(traps, paths, junctions)
