"""How close does the heuristic get to exact optimal routing?

On tiny instances the optimal schedule is computable by exhaustive search
over generic-swap sequences; this compares the heuristic's inserted weight
against it, and shows the idealized cost bounds (free shuttles / free SWAPs)
on a realistic schedule. The same check is scriptable via
`qccdc oracle-check`.
"""

import random

import qccdc as q


def main():
    rng = random.Random(2024)
    ratios = []
    for _ in range(60):
        circuit, graph, mapping = q.random_instance(rng)
        opt = q.exact_schedule(circuit, graph, mapping)
        if isinstance(opt, q.Infeasible):
            continue
        heur = q.schedule(circuit, graph, mapping)
        h, o = heur.inserted_weight, opt.inserted_weight
        ratios.append(h / o if o > 0 else 1.0)
    optimal = sum(1 for r in ratios if r <= 1.0 + 1e-9)
    print(f"{len(ratios)} feasible instances: mean ratio "
          f"{sum(ratios) / len(ratios):.3f}, max {max(ratios):.2f}, "
          f"optimal on {optimal} ({optimal / len(ratios):.0%})")

    print("== idealized bounds on qft(16) / G(2,2) ==")
    circuit = q.gen_benchmark("qft", 16)
    graph = q.to_graph(q.grid_topology(2, 2, 8), q.WeightParams())
    sched = q.schedule(circuit, graph,
                       q.initial_mapping(circuit, graph, q.MappingParams()))
    base = q.evaluate(sched, q.CostParams())
    print(f"  actual            success={base.success_rate:.4f}")
    for mode in q.BoundMode:
        m = q.ideal_bounds(sched, mode)
        print(f"  {mode.value:17s} success={m.success_rate:.4f}")
    print("the gap to 'ideal' is the price of communication on this device")


if __name__ == "__main__":
    main()
