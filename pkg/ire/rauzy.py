"""Rauzy classes of schemes.

A class is the closure of a seed scheme under the elementary steps and
their inverses. Enumeration is breadth first, one level at a time, and
every level is processed in the order of the schemes' canonical text, so
the member list and the edge list only depend on the seed.
"""

import json
import os
import sys
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, FrozenSet, List, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from ire.errors import InternalInvariantViolation
from ire.induction import (
    STEP_KINDS,
    InductionStep,
    applicable_steps,
    apply_step_scheme,
    in_step_image,
    invert_step_scheme,
)
from ire.scheme import Scheme, irreducible_components, twists_total
from ire.state import is_shutdown_requested

Edge = Tuple[str, InductionStep, str]


@dataclass
class RauzyClass:
    """Members and step edges of a Rauzy class.

    Attributes:
        seed: Scheme the enumeration started from
        schemes: Members in discovery order, the seed first
        edges: ``(from, step, to)`` triples keyed by canonical text,
            self-loops included
        truncated: Whether ``max_size`` or an interruption cut enumeration short
        kinds: Step kinds that were followed
        include_inverse: Whether inverse steps were followed too
    """

    seed: Scheme
    schemes: List[Scheme] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    truncated: bool = False
    kinds: Tuple[str, ...] = STEP_KINDS
    include_inverse: bool = True

    def texts(self) -> List[str]:
        return [s.text() for s in self.schemes]

    def non_loop_edges(self) -> List[Edge]:
        return [edge for edge in self.edges if edge[0] != edge[2]]

    def to_graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.texts())
        for source, step, target in self.edges:
            graph.add_edge(source, target, key=str(step), step=str(step))
        return graph

    def summary(self) -> Dict[str, object]:
        return {
            "seed": self.seed.text(),
            "schemes": len(self.schemes),
            "edges": len(self.non_loop_edges()),
            "self_loops": len(self.edges) - len(self.non_loop_edges()),
            "strongly_connected": nx.is_strongly_connected(self.to_graph()),
            "truncated": self.truncated,
        }

    def to_dict(self) -> Dict[str, object]:
        return {
            "seed": self.seed.text(),
            "alphabet": list(self.seed.alphabet),
            "kinds": list(self.kinds),
            "include_inverse": self.include_inverse,
            "truncated": self.truncated,
            "schemes": self.texts(),
            "edges": [
                {"from": source, "step": str(step), "to": target}
                for source, step, target in self.edges
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_dot(self) -> str:
        lines = ["digraph rauzy_class {"]
        for text in self.texts():
            lines.append(f'  "{text}";')
        for source, step, target in self.edges:
            lines.append(f'  "{source}" -> "{target}" [label="{step}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _partition(s: Scheme) -> FrozenSet[FrozenSet[str]]:
    return frozenset(frozenset(part) for part in irreducible_components(s).components)


def _neighbours(
    s: Scheme, kinds: Sequence[str], include_inverse: bool
) -> List[Tuple[Scheme, Edge]]:
    found = []
    for step in applicable_steps(s):
        if step.kind in kinds:
            target = apply_step_scheme(s, step)
            found.append((target, (s.text(), step, target.text())))
    if include_inverse:
        for kind in kinds:
            for alpha, beta in permutations(s.alphabet, 2):
                step = InductionStep(kind, alpha, beta)
                if in_step_image(s, step):
                    source = invert_step_scheme(s, step)
                    found.append((source, (source.text(), step, s.text())))
    return found


def _check_member(seed: Scheme, member: Scheme, reference) -> None:
    observed = (len(member.cycle_indices), _partition(member), twists_total(member))
    if observed != reference:
        raise InternalInvariantViolation(
            f"{member} reached from {seed} has (cycles, components, twists) {observed}, "
            f"expected {reference}"
        )


def rauzy_class(
    seed: Scheme,
    max_size: int,
    kinds: Sequence[str] = STEP_KINDS,
    include_inverse: bool = True,
    progress: bool = False,
) -> RauzyClass:
    """Enumerate the class of ``seed``.

    Args:
        seed: Starting scheme
        max_size: Largest number of members to collect
        kinds: Step kinds to follow
        include_inverse: Whether to follow inverse steps as well
        progress: Show a tqdm bar on stderr

    Returns:
        RauzyClass: ``truncated`` is set when ``max_size`` was reached with
        members still undiscovered, or when a shutdown was requested
    """
    if max_size < 1:
        raise ValueError(f"max_size must be at least 1, got {max_size}")
    kinds = tuple(kind for kind in STEP_KINDS if kind in kinds)
    result = RauzyClass(seed, [seed], kinds=kinds, include_inverse=include_inverse)
    reference = (len(seed.cycle_indices), _partition(seed), twists_total(seed))
    members = {seed}
    seen_edges = set()

    tqdm_file = sys.stderr if progress else open(os.devnull, "w")
    pbar = tqdm(
        total=max_size,
        desc="Enumerating class",
        unit="scheme",
        file=tqdm_file,
        disable=not progress,
        leave=False,
    )
    try:
        pbar.update(1)
        frontier = [seed]
        while frontier:
            level: Dict[str, Scheme] = {}
            for current in frontier:
                if is_shutdown_requested():
                    result.truncated = True
                    break
                for target, edge in _neighbours(current, kinds, include_inverse):
                    if target not in members:
                        if len(members) >= max_size:
                            result.truncated = True
                            continue
                        _check_member(seed, target, reference)
                        members.add(target)
                        level[target.text()] = target
                        pbar.update(1)
                    if edge not in seen_edges:
                        seen_edges.add(edge)
                        result.edges.append(edge)
            frontier = [level[text] for text in sorted(level)]
            result.schemes.extend(frontier)
            if frontier and is_shutdown_requested():
                result.truncated = True
                break
    finally:
        pbar.close()
        if tqdm_file is not sys.stderr:
            tqdm_file.close()
    return result
