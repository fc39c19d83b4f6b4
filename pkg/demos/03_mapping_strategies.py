"""Initial-placement strategies and their effect on inserted operations.

Even-divided spreads qubits round-robin, gathering packs traps (one reserved
space each), and the interaction-driven ordering groups qubits that talk to
each other early. Gate-implementation families are compared on the same
schedule at the end.
"""

import qccdc as q


def main():
    circuit = q.gen_benchmark("cuccaro_adder", 8)
    graph = q.to_graph(q.grid_topology(2, 3, 8), q.WeightParams())

    print(f"{circuit.name}: {circuit.n_qubits} qubits, "
          f"{circuit.two_qubit_count} two-qubit gates")
    schedules = {}
    for strat in q.Strategy:
        mapping = q.initial_mapping(circuit, graph,
                                    q.MappingParams(strategy=strat))
        sched = q.schedule(circuit, graph, mapping)
        schedules[strat.value] = sched
        m = q.evaluate(sched, q.CostParams())
        print(f"  {strat.value:6s} shuttles={m.shuttles:3d} swaps={m.swap_gates:3d} "
              f"shifts={m.space_shifts:3d} success={m.success_rate:.4f}")

    print("== gate families on the gathering schedule ==")
    sched = schedules["gather"]
    for fam in q.GateFamily:
        m = q.evaluate(sched, q.CostParams(gate_family=fam))
        print(f"  {fam.value:4s} makespan={m.makespan_us:9.0f}us "
              f"success={m.success_rate:.4f}")


if __name__ == "__main__":
    main()
