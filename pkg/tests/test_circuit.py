import pytest
from hypothesis import given, strategies as st

from qccdc import Circuit, Gate, QasmError, build_dag, parse_qasm, to_qasm


SAMPLE = """
OPENQASM 2.0;
include "qelib1.inc";
qreg q[4];
creg c[4];
h q[0];
cx q[0], q[1];
rz(pi/4) q[2];
cp(pi/2) q[1], q[3];
barrier q;
measure q[0] -> c[0];
"""


def test_parse_basic():
    c = parse_qasm(SAMPLE)
    assert c.n_qubits == 4
    assert [g.label for g in c.gates] == ["h", "cx", "rz", "cp"]
    assert c.gates[1].qubits == (0, 1)
    assert c.gates[2].param == pytest.approx(3.141592653589793 / 4)


def test_swap_expands_to_three_cx():
    c = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nswap q[0], q[1];\n")
    assert [g.label for g in c.gates] == ["cx", "cx", "cx"]
    assert [g.qubits for g in c.gates] == [(0, 1), (1, 0), (0, 1)]


def test_errors_carry_line_numbers():
    with pytest.raises(QasmError) as exc:
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nbogus q[0];\n")
    assert exc.value.line == 3
    with pytest.raises(QasmError):
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[5];\n")
    with pytest.raises(QasmError):
        parse_qasm("OPENQASM 2.0;\nqreg a[2];\nqreg b[2];\n")


def test_roundtrip():
    c = parse_qasm(SAMPLE)
    again = parse_qasm(to_qasm(c))
    assert [(g.label, g.qubits, g.param) for g in again.gates] == \
           [(g.label, g.qubits, g.param) for g in c.gates]


def test_dag_frontier_and_pop():
    gates = (Gate(0, "h", (0,)), Gate(1, "cx", (0, 1)), Gate(2, "cx", (2, 3)),
             Gate(3, "cx", (1, 2)))
    c = Circuit(4, gates)
    dag = build_dag(c)
    assert dag.frontier == {0, 2}
    dag.pop(0)
    assert dag.frontier == {1, 2}
    dag.pop(2)
    dag.pop(1)
    assert dag.frontier == {3}
    dag.pop(3)
    assert len(dag) == 0


def test_dag_pop_requires_frontier_membership():
    c = Circuit(2, (Gate(0, "cx", (0, 1)), Gate(1, "cx", (0, 1))))
    dag = build_dag(c)
    with pytest.raises(ValueError):
        dag.pop(1)


@st.composite
def random_circuits(draw):
    n = draw(st.integers(2, 6))
    n_gates = draw(st.integers(0, 12))
    gates = []
    for i in range(n_gates):
        if draw(st.booleans()):
            q = draw(st.integers(0, n - 1))
            gates.append(Gate(i, "h", (q,)))
        else:
            a = draw(st.integers(0, n - 1))
            b = draw(st.integers(0, n - 1).filter(lambda x, a=a: x != a))
            gates.append(Gate(i, "cx", (a, b)))
    return Circuit(n, tuple(gates))


@given(random_circuits())
def test_dag_respects_per_qubit_order(c):
    """Any full pop order from the frontier is a topological order: per-qubit
    gate sequences come out in circuit order."""
    dag = build_dag(c)
    seen_per_qubit = {q: [] for q in range(c.n_qubits)}
    while len(dag):
        gid = min(dag.frontier)
        for q in c.gates[gid].qubits:
            seen_per_qubit[q].append(gid)
        dag.pop(gid)
    for q, ids in seen_per_qubit.items():
        expected = [g.id for g in c.gates if q in g.qubits]
        assert ids == expected


@given(random_circuits())
def test_qasm_roundtrip_property(c):
    again = parse_qasm(to_qasm(c))
    assert [(g.label, g.qubits) for g in again.gates] == \
           [(g.label, g.qubits) for g in c.gates]
