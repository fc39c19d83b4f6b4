"""Compare architectures and trap capacities for one workload.

Runs the same circuit over linear / grid / star devices and a range of trap
capacities, reporting how shuttle count, makespan, and success rate respond.
The same experiment is scriptable via `qccdc sweep --axis topology|capacity`.
"""

import qccdc as q


def compile_on(circuit, topo):
    graph = q.to_graph(topo, q.WeightParams())
    mapping = q.initial_mapping(circuit, graph, q.MappingParams())
    sched = q.schedule(circuit, graph, mapping)
    return q.evaluate(sched, q.CostParams())


def main():
    circuit = q.gen_benchmark("qft", 20)

    print("== topology comparison (capacity 8) ==")
    topologies = [("L(4)", q.linear_topology(4, 8)),
                  ("G(2,2)", q.grid_topology(2, 2, 8)),
                  ("S(4)", q.star_topology(4, 8))]
    for name, topo in topologies:
        m = compile_on(circuit, topo)
        print(f"  {name:7s} shuttles={m.shuttles:4d} swaps={m.swap_gates:4d} "
              f"makespan={m.makespan_us:9.0f}us success={m.success_rate:.4f}")

    print("== capacity sweep on G(2,2) ==")
    for cap in (6, 8, 12, 22):
        m = compile_on(circuit, q.grid_topology(2, 2, cap))
        print(f"  cap={cap:2d}  shuttles={m.shuttles:4d} swaps={m.swap_gates:4d} "
              f"makespan={m.makespan_us:9.0f}us success={m.success_rate:.4f}")
    print("larger traps trade shuttles for longer chains (slower, noisier gates)")


if __name__ == "__main__":
    main()
