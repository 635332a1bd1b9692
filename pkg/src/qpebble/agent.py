"""Oblivious walkers: per-node decoding strategies and trial execution.

An agent carries nothing between rounds. Each round it observes exactly
two things about its current node, the degree and whether a pebble is
present, decides (possibly by measuring the pebble's qubits), and moves
through at most one port. The walk loop below enforces that interface
structurally: the only state crossing rounds is the current node id.

Decoding rules:

* fixed-n: sample every family basis n times; commit to a port only if
  exactly one basis came back as a uniform run (all n outcomes one sign).
  Anything else, including zero uniform bases, is an ambiguous failure.
* adaptive: round-robin over the bases still alive, killing a basis the
  first time it contradicts its own previous outcome; decode once a single
  basis survives, give up at the measurement cap.
* qudit one-shot: read the level in one computational-basis measurement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import AbstractSet, Mapping, Union

import numpy as np

from .encoding import (
    EncodingScheme,
    Placement,
    QuantumPebble,
    basis_family,
    decode_outcome,
    decode_qudit,
)
from .graph import PortGraph, neighbor_via_port
from .quantum import MINUS, PLUS, Outcome, QubitState, born_probability
from .rng import RngStream

__all__ = [
    "FailureKind",
    "TrialResult",
    "DecisionTable",
    "FixedN",
    "Adaptive",
    "QuditOneShot",
    "ClassicalTable",
    "RandomWalk",
    "AgentStrategy",
    "measure_node_fixed",
    "decide_fixed",
    "measure_node_adaptive",
    "run_trial",
    "classical_trajectory",
]

_CERTAINTY_TOL = 1e-12


class FailureKind(str, enum.Enum):
    NONE = "none"
    AMBIGUOUS_DECODE = "ambiguous_decode"
    WRONG_PORT_RANGE = "wrong_port_range"
    MISSING_PEBBLE = "missing_pebble"
    STEP_BUDGET_EXHAUSTED = "step_budget_exhausted"
    DECLARED_FAILURE = "declared_failure"


@dataclass(frozen=True)
class TrialResult:
    success: bool
    steps_taken: int
    measurements_total: int
    failure_kind: FailureKind


@dataclass(frozen=True)
class DecisionTable:
    """Deterministic classical rule: (degree, pebble present) -> action.

    An action is an exit port, or None for staying put.
    """

    actions: Mapping[tuple[int, bool], int | None]

    def action(self, degree: int, pebble_present: bool) -> int | None:
        try:
            return self.actions[(degree, pebble_present)]
        except KeyError:
            raise ValueError(f"table has no action for degree={degree}, pebble={pebble_present}") from None


@dataclass(frozen=True)
class FixedN:
    """Fixed-n protocol; n=None means 'resolve via required_n' (harness)."""

    n: int | None = None


@dataclass(frozen=True)
class Adaptive:
    cap: int = 4096


@dataclass(frozen=True)
class QuditOneShot:
    pass


@dataclass(frozen=True)
class ClassicalTable:
    table: DecisionTable


@dataclass(frozen=True)
class RandomWalk:
    pass


AgentStrategy = Union[FixedN, Adaptive, QuditOneShot, ClassicalTable, RandomWalk]


def _emitted(pebble: Union[QuantumPebble, QubitState]) -> QubitState:
    return pebble.emitted_state if isinstance(pebble, QuantumPebble) else pebble


def _snap(p: float) -> float:
    if p >= 1.0 - _CERTAINTY_TOL:
        return 1.0
    if p <= _CERTAINTY_TOL:
        return 0.0
    return p


def measure_node_fixed(
    pebble: Union[QuantumPebble, QubitState],
    delta: int,
    n: int,
    rng: RngStream,
    scheme: EncodingScheme = EncodingScheme.GENERAL,
) -> list[np.ndarray]:
    """n samples in each family basis: a list of sign arrays (+1/-1).

    Draw order is basis 0's n samples, then basis 1's, and so on; exactly
    n * family-size uniforms are consumed regardless of outcomes.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    state = _emitted(pebble)
    bases = basis_family(scheme, delta)
    draws = rng.uniforms(n * len(bases))
    tallies = []
    for i, basis in enumerate(bases):
        p_plus = _snap(born_probability(state, basis.plus_vec))
        block = draws[i * n : (i + 1) * n]
        tallies.append(np.where(block < p_plus, PLUS, MINUS).astype(np.int8))
    return tallies


def decide_fixed(tallies: list[np.ndarray], delta: int) -> int | None:
    """Uniform-run rule: decode iff exactly one basis is single-signed.

    Returns the 1-based port, or None for the ambiguous cases (two or more
    uniform bases, or none at all).
    """
    candidates = []
    for i, signs in enumerate(tallies):
        if len(signs) and (signs == signs[0]).all():
            candidates.append((i, int(signs[0])))
    if len(candidates) != 1:
        return None
    i, sign = candidates[0]
    return decode_outcome(Outcome(i, sign), delta)


def measure_node_adaptive(
    pebble: Union[QuantumPebble, QubitState],
    delta: int,
    cap: int,
    rng: RngStream,
    scheme: EncodingScheme = EncodingScheme.GENERAL,
) -> tuple[int | None, int]:
    """Elimination protocol: (decoded port or None, measurements used).

    Cycles through the live bases in index order; a basis dies the first
    time a sample disagrees with its previous one. When one basis is left
    (and has at least one sample) its sign decodes the port. Hitting the
    cap first returns None. The cursor stays in place on elimination, so
    the successor basis is sampled next.
    """
    state = _emitted(pebble)
    bases = basis_family(scheme, delta)
    if cap < len(bases):
        raise ValueError(f"cap {cap} below family size {len(bases)}")
    p_plus = [_snap(born_probability(state, b.plus_vec)) for b in bases]
    live = list(range(len(bases)))
    last: dict[int, int] = {}
    used = 0
    pos = 0
    while used < cap:
        pos %= len(live)
        b = live[pos]
        u = rng.uniform()
        sign = PLUS if u < p_plus[b] else MINUS
        used += 1
        if b in last and last[b] != sign:
            live.pop(pos)
        else:
            last[b] = sign
            pos += 1
        if len(live) == 1 and live[0] in last:
            survivor = live[0]
            return decode_outcome(Outcome(bases[survivor].index, last[survivor]), delta), used
    return None, used


def _fail(kind: FailureKind, steps: int, meas: int) -> TrialResult:
    return TrialResult(False, steps, meas, kind)


def run_trial(
    g: PortGraph,
    placement: Union[Placement, AbstractSet[int]],
    strategy: AgentStrategy,
    step_budget: int,
    rng: RngStream,
) -> TrialResult:
    """Walk one agent from start until treasure, failure, or budget.

    The budget caps rounds; every round moves through at most one edge, so
    steps_taken <= step_budget (a classical 'stay' burns a round without a
    move, which keeps stay-forever tables finite). Classical strategies may
    receive a bare set of pebbled nodes instead of a full Placement.
    """
    if step_budget < 1:
        raise ValueError(f"step_budget must be >= 1, got {step_budget}")
    quantum = isinstance(strategy, (FixedN, Adaptive, QuditOneShot))
    if quantum:
        if not isinstance(placement, Placement):
            raise ValueError("quantum strategies need a full Placement")
        if isinstance(strategy, QuditOneShot):
            if placement.scheme is not EncodingScheme.QUDIT:
                raise ValueError("QuditOneShot requires the qudit scheme")
        elif placement.scheme not in (EncodingScheme.GENERAL, EncodingScheme.BITSIGN4):
            raise ValueError(f"{type(strategy).__name__} cannot decode scheme {placement.scheme.value}")
        if isinstance(strategy, FixedN) and (strategy.n is None or strategy.n < 1):
            raise ValueError("FixedN.n must be resolved to a positive sample count")
        bad = [v for v in placement.pebbles if not 0 <= v < g.node_count]
        if bad:
            raise ValueError(f"placement references nodes outside the graph: {bad}")
    pebbled = placement.pebbles if isinstance(placement, Placement) else placement

    cur = g.start
    steps = 0
    meas = 0
    for _ in range(step_budget):
        degree = g.degree(cur)
        has_pebble = cur in pebbled
        if isinstance(strategy, (FixedN, Adaptive)):
            if not has_pebble:
                return _fail(FailureKind.MISSING_PEBBLE, steps, meas)
            pebble = placement.pebbles[cur]
            if isinstance(strategy, FixedN):
                tallies = measure_node_fixed(pebble, placement.delta, strategy.n, rng, placement.scheme)
                meas += strategy.n * len(tallies)
                port = decide_fixed(tallies, placement.delta)
                if port is None:
                    return _fail(FailureKind.AMBIGUOUS_DECODE, steps, meas)
            else:
                port, used = measure_node_adaptive(pebble, placement.delta, strategy.cap, rng, placement.scheme)
                meas += used
                if port is None:
                    return _fail(FailureKind.DECLARED_FAILURE, steps, meas)
            internal = port - 1
            if internal >= degree:
                return _fail(FailureKind.WRONG_PORT_RANGE, steps, meas)
        elif isinstance(strategy, QuditOneShot):
            if not has_pebble:
                return _fail(FailureKind.MISSING_PEBBLE, steps, meas)
            level = placement.pebbles[cur].emitted_state
            meas += 1
            internal = decode_qudit(level) - 1
            if internal >= degree:
                return _fail(FailureKind.WRONG_PORT_RANGE, steps, meas)
        elif isinstance(strategy, ClassicalTable):
            action = strategy.table.action(degree, has_pebble)
            if action is None:
                continue  # stay: round spent, no move
            if not 0 <= action < degree:
                return _fail(FailureKind.WRONG_PORT_RANGE, steps, meas)
            internal = action
        elif isinstance(strategy, RandomWalk):
            internal = rng.below(degree)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        cur = g.adjacency[cur][internal][0]
        steps += 1
        if cur == g.treasure:
            return TrialResult(True, steps, meas, FailureKind.NONE)
    return _fail(FailureKind.STEP_BUDGET_EXHAUSTED, steps, meas)


def classical_trajectory(
    g: PortGraph,
    pebbled: AbstractSet[int],
    table: DecisionTable,
) -> list[int]:
    """Node sequence of the deterministic walk, cut at the first repeat.

    The next node is a function of the current node alone (the pebbling is
    static), so revisiting any node means the walk cycles forever; the
    trajectory ends there, or at the treasure, whichever comes first. A
    stay action repeats the current node and therefore ends the walk.
    """
    cur = g.start
    traj = [cur]
    seen = {cur}
    while cur != g.treasure:
        action = table.action(g.degree(cur), cur in pebbled)
        nxt = cur if action is None else neighbor_via_port(g, cur, action)[0]
        traj.append(nxt)
        if nxt in seen:
            break
        seen.add(nxt)
        cur = nxt
    return traj
