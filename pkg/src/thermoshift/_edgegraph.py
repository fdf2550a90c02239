"""Edge-indexed presentation of a potential.

Every memory-k potential becomes an edge weight function on the graph
whose vertices are the admissible ``max(k-1, 1)``-blocks, with an edge
``b -> c`` whenever the blocks overlap and the joined word is
admissible.  All spectral and cycle computations happen on this graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .potentials import Potential
from .sft import Block, Sft, admissible_blocks


@dataclass(frozen=True)
class EdgeGraph:
    """Weighted digraph carrying a potential in edge-indexed form."""

    sft: Sft
    order: int
    states: tuple[Block, ...]
    logw: np.ndarray = field(repr=False)  # -inf on non-edges

    @property
    def n_states(self) -> int:
        return len(self.states)

    def word(self, i: int, j: int) -> Block:
        """The (order+1)-word read along edge ``i -> j``."""
        return self.states[i] + (self.states[j][-1],)

    def edges(self):
        """Iterate (i, j, weight) over admissible edges."""
        ii, jj = np.nonzero(np.isfinite(self.logw))
        for i, j in zip(ii.tolist(), jj.tolist()):
            yield i, j, float(self.logw[i, j])


def graph_order(memory: int) -> int:
    """Vertex block length needed to carry a memory-``memory`` potential
    on edges."""
    return max(memory - 1, 1)


def build_edge_graph(sft: Sft, phi: Potential, order: int | None = None) -> EdgeGraph:
    """Edge-indexed form of ``phi`` at the given (or minimal) vertex order."""
    if order is None:
        order = graph_order(phi.memory)
    if order + 1 < phi.memory:
        raise ValueError(
            f"order {order} cannot carry a memory-{phi.memory} potential"
        )
    states = tuple(admissible_blocks(sft, order))
    index = {b: i for i, b in enumerate(states)}
    n = len(states)
    logw = np.full((n, n), -np.inf)
    for b, i in index.items():
        for s in range(sft.alphabet_size):
            if not sft.is_edge(b[-1], s):
                continue
            j = index[b[1:] + (s,)]
            word = b + (s,)
            logw[i, j] = phi.values[word[: phi.memory]]
    return EdgeGraph(sft, order, states, logw)
