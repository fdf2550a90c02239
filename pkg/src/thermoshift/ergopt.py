"""Ergodic optimization: maximal ergodic averages and ground states.

The largest space average of a locally constant potential over invariant
measures equals the maximum mean cycle weight of its edge graph; the
maximizing measures are exactly the invariant measures carried by the
critical subgraph (edges saturating the max-plus Bellman equation that
lie on cycles).  These are computed exactly in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import maxplus
from ._edgegraph import build_edge_graph, graph_order
from .errors import CheckFailedError, MismatchedSystemError, ValidationError
from .potentials import Potential, combine, zero_potential
from .sft import Block, Sft, topological_entropy
from .transfer import integrate, pressure_and_equilibrium


@dataclass(frozen=True)
class MaximizationResult:
    """Outcome of maximizing the ergodic average of a potential.

    ``beta`` is the maximal average; ``witness_cycle`` is one simple
    cycle of the edge graph whose mean weight is exactly ``beta``;
    ``critical_edges`` span the subgraph carrying every maximizing
    measure; ``ground_entropy`` is the topological entropy of that
    subgraph; ``unique_flag`` is True iff the subgraph is a single
    simple cycle, in which case the maximizing measure is unique and
    has zero entropy.
    """

    beta: float
    critical_edges: tuple[tuple[Block, Block], ...]
    witness_cycle: tuple[Block, ...]
    ground_entropy: float
    unique_flag: bool
    states: tuple[Block, ...] = field(repr=False)


def max_ergodic_average(sft: Sft, phi: Potential) -> MaximizationResult:
    """Maximal space average of ``phi`` over invariant measures, with the
    critical subgraph that supports every maximizing measure."""
    if phi.sft != sft:
        raise MismatchedSystemError("potential is defined over a different subshift")
    graph = build_edge_graph(sft, phi)
    data = maxplus.analyze(graph.n_states, graph.edges())
    critical = sorted(data.critical)
    ground = _subgraph_entropy(graph.n_states, critical)
    return MaximizationResult(
        beta=float(data.beta),
        critical_edges=tuple(
            (graph.states[i], graph.states[j]) for i, j in critical
        ),
        witness_cycle=tuple(graph.states[i] for i in data.witness),
        ground_entropy=ground,
        unique_flag=maxplus.is_single_simple_cycle(data.critical),
        states=graph.states,
    )


def _subgraph_entropy(n: int, edge_pairs) -> float:
    """Topological entropy of the subshift spanned by ``edge_pairs``."""
    if maxplus.is_disjoint_simple_cycles(edge_pairs):
        return 0.0
    adjacency = np.zeros((n, n))
    for i, j in edge_pairs:
        adjacency[i, j] = 1.0
    radius = max(abs(np.linalg.eigvals(adjacency)))
    return max(0.0, float(np.log(radius)))


def ground_state_pressure_bound(sft: Sft, psi: Potential, phi: Potential) -> float:
    """A certified upper bound for the ``psi``-pressure of every measure
    maximizing ``phi``: the pressure of ``psi`` restricted to the
    critical subgraph of ``phi``.

    Exact (cycle average of ``psi``) when the critical subgraph splits
    into simple cycles; otherwise the Perron value of the
    ``psi``-weighted critical subgraph.
    """
    if psi.sft != sft or phi.sft != sft:
        raise MismatchedSystemError("potentials must live on the given subshift")
    order = max(graph_order(psi.memory), graph_order(phi.memory))
    phi_graph = build_edge_graph(sft, phi, order)
    psi_graph = build_edge_graph(sft, psi, order)
    data = maxplus.analyze(phi_graph.n_states, phi_graph.edges())

    label = maxplus.strongly_connected_components(phi_graph.n_states, data.critical)
    components: dict[int, list[tuple[int, int]]] = {}
    for i, j in data.critical:
        components.setdefault(label[i], []).append((i, j))

    best = -math.inf
    for edges in components.values():
        if maxplus.is_disjoint_simple_cycles(edges):
            value = math.fsum(psi_graph.logw[i, j] for i, j in edges) / len(edges)
        else:
            vertices = sorted({v for e in edges for v in e})
            pos = {v: k for k, v in enumerate(vertices)}
            shift = max(psi_graph.logw[i, j] for i, j in edges)
            weighted = np.zeros((len(vertices), len(vertices)))
            for i, j in edges:
                weighted[pos[i], pos[j]] = np.exp(psi_graph.logw[i, j] - shift)
            radius = max(abs(np.linalg.eigvals(weighted)))
            value = float(np.log(radius)) + shift
        best = max(best, value)
    return best


@dataclass(frozen=True)
class ZeroTemperatureRow:
    """One row of the cooling diagnostics table."""

    t: float
    phi_average: float
    entropy: float
    defect: float
    bound: float


def zero_temperature_diagnostics(
    sft: Sft, phi: Potential, t_list
) -> list[ZeroTemperatureRow]:
    """Equilibrium averages of ``phi`` along the ray ``t -> t * phi``.

    For each ``t`` the defect ``beta - integral(phi, mu_t)`` is
    nonnegative, bounded by ``h(f) / t`` and non-increasing in ``t``;
    violations beyond round-off signal a numerical fault and raise.
    """
    ts = [float(t) for t in t_list]
    if not ts:
        raise ValidationError("t_list must be nonempty")
    if any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValidationError("t_list must be positive and strictly increasing")

    beta = max_ergodic_average(sft, phi).beta
    h_top = topological_entropy(sft)
    zero = zero_potential(sft)

    rows = []
    previous = None
    for t in ts:
        _, mu = pressure_and_equilibrium(sft, combine(zero, phi, t))
        avg = integrate(mu, phi)
        defect = beta - avg
        bound = h_top / t
        if defect < -1e-12:
            raise CheckFailedError(f"negative defect {defect} at t={t}")
        if defect > bound + 1e-9:
            raise CheckFailedError(
                f"defect {defect} exceeds bound h(f)/t = {bound} at t={t}"
            )
        if previous is not None and avg < previous - 1e-12:
            raise CheckFailedError(f"phi average decreased along the ray at t={t}")
        previous = avg
        rows.append(ZeroTemperatureRow(t, avg, mu.entropy, defect, bound))
    return rows
