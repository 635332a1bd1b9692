"""Race the agent strategies over the same graph and seed.

Fixed-n buys near-certainty with a large but predictable measurement bill.
The adaptive rule stops a basis as soon as it contradicts itself, cutting
the bill by an order of magnitude at the same success rate. The qudit
encoding reads each port in a single shot, and an aimless random walk
shows what the pebbles are worth.
"""

from qpebble import (
    EncodingScheme,
    ExperimentConfig,
    parse_strategy,
    run_experiment,
)


CASES = [
    ("fixed:auto", "general", "uniform-run rule, n from the target bound"),
    ("fixed:10", "general", "uniform-run rule, deliberately small n"),
    ("adaptive", "general", "eliminate bases on self-contradiction"),
    ("qudit", "qudit", "one measurement per node"),
    ("random", "general", "ignore the pebbles entirely"),
]


def main() -> None:
    source = "path:D=8,delta=4"
    trials, seed = 4000, 13
    print(f"graph {source}, {trials} trials per strategy, seed {seed}\n")
    header = (f"{'strategy':<12} {'success':>8} {'95% ci':>17} "
              f"{'steps':>7} {'meas':>8}  note")
    print(header)
    print("-" * len(header))
    for strategy, scheme, note in CASES:
        cfg = ExperimentConfig(
            graph_source=source,
            scheme=EncodingScheme(scheme),
            strategy=parse_strategy(strategy),
            trials=trials,
            seed=seed,
        )
        summary = run_experiment(cfg, workers=2).summary
        lo, hi = summary.wilson_ci_95
        print(f"{strategy:<12} {summary.success_rate:8.4f} "
              f"[{lo:6.4f}, {hi:6.4f}] {summary.mean_steps:7.2f} "
              f"{summary.mean_measurements:8.1f}  {note}")
    print()
    print("Failure kinds for the small-n run, where ambiguity is common:")
    cfg = ExperimentConfig(
        graph_source=source, strategy=parse_strategy("fixed:10"),
        trials=trials, seed=seed,
    )
    summary = run_experiment(cfg, workers=2).summary
    for kind, count in sorted(summary.failure_breakdown.items()):
        if count and kind != "none":
            print(f"  {kind}: {count}")


if __name__ == "__main__":
    main()
