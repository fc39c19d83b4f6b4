"""Schedule event records shared by the scheduler, cost model, and oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class EventKind(enum.Enum):
    GATE = "gate"          # circuit gate execution (1q or 2q)
    SWAP = "swap"          # inserted SWAP gate inside a trap
    SHIFT = "shift"        # space shift (ion repositioning, not a gate)
    SHUTTLE = "shuttle"    # split / move / merge between traps


@dataclass(frozen=True)
class EventRecord:
    kind: EventKind
    qubits: tuple[int, ...] = ()          # logical qubits involved
    gate_id: int | None = None            # GATE events only
    label: str = ""
    slots: tuple[int, ...] = ()           # graph nodes touched
    traps: tuple[int, ...] = ()           # trap resources used
    segments: int = 0                     # SHUTTLE: path segments
    junction_ids: tuple[int, ...] = ()    # SHUTTLE: junction resources crossed
    junction_degrees: tuple[int, ...] = ()
    weight: float = 0.0                   # inserted-op edge weight (0 for gates)
    chain_ions: int = 0                   # N of the acting trap at event time
    ion_dist: int = 0                     # ions strictly between the operands

    @property
    def is_two_qubit_gate(self) -> bool:
        return self.kind is EventKind.GATE and len(self.qubits) == 2
