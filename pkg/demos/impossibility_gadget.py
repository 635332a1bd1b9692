"""Show why classical one-bit pebbles cannot do this job.

A classical pebble is a single bit, so an oblivious agent acts by a fixed
table keyed on (degree, pebble present): 64 tables over the gadget's
observation space. For every one of them there is a six-node gadget
labeling on which every one of the 2^6 pebble placements strands the
agent, so no table works on all graphs. No labeling defeats all tables at
once: the adversary has to pick the graph after seeing the table.
"""

from qpebble import (
    DecisionTable,
    check_impossibility,
    classical_trajectory,
    gen_gpqr,
    gpqr_family,
)


def table_from_key(key: tuple) -> DecisionTable:
    a3p, a3n, a1p, a1n = key
    return DecisionTable(
        {(3, True): a3p, (3, False): a3n, (1, True): a1p, (1, False): a1n}
    )


def describe(action) -> str:
    return "stay" if action is None else f"port {action}"


def main() -> None:
    report = check_impossibility()
    print(f"decision tables examined: {report.tables_total}")
    print(f"tables defeated:          {report.tables_defeated}")
    print(f"longest deciding walk:    {report.max_walk_steps} steps")
    print(f"one graph beats all:      {not report.no_universal_graph}\n")

    key, spec = next(w for w in report.witnesses if w[0] == (1, 0, 0, 0))
    table = table_from_key(key)
    print("zoom in on one busy rule:")
    print(f"  degree 3, pebble:    {describe(key[0])}")
    print(f"  degree 3, no pebble: {describe(key[1])}")
    print(f"  degree 1, pebble:    {describe(key[2])}")
    print(f"  degree 1, no pebble: {describe(key[3])}")
    print(f"witness labeling: pendant ports {spec.pendant_ports}, "
          f"swaps {spec.swaps}\n")

    g = gen_gpqr(spec)
    print(f"gadget: start={g.start}, treasure={g.treasure}, "
          f"degrees {[g.degree(v) for v in range(6)]}")
    print("trajectories on the witness (a repeat means looping forever):")
    samples = [frozenset(), *(frozenset({v}) for v in range(6)),
               frozenset(range(6))]
    for pebbled in samples:
        traj = classical_trajectory(g, pebbled, table)
        tag = "treasure" if traj[-1] == g.treasure else "stuck"
        label = str(sorted(pebbled)) if pebbled else "none"
        print(f"  pebbles {label:<20} walk {traj} -> {tag}")
    fails = sum(
        classical_trajectory(g, frozenset(v for v in range(6) if b >> v & 1),
                             table)[-1] != g.treasure
        for b in range(64)
    )
    print(f"all 2^6 placements checked: {fails}/64 fail\n")

    print("the same rule is fine on a kinder labeling, which is the point:")
    for other_spec, og in gpqr_family():
        traj = classical_trajectory(og, frozenset(), table)
        if traj[-1] == og.treasure:
            print(f"  pendant ports {other_spec.pendant_ports}, swaps "
                  f"{other_spec.swaps}, no pebbles at all: walk {traj}")
            break
    print("so the defeat is per-graph, and the graph is chosen last.")


if __name__ == "__main__":
    main()
