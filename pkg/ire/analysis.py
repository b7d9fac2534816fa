"""Combinatorial report on a scheme, as printed by ``ire analyze``."""

from dataclasses import asdict, dataclass
from typing import Dict, List, Tuple

from ire.errors import InternalInvariantViolation
from ire.realdata import endpoint_space_basis, is_positive_scheme, length_space_basis
from ire.scheme import Scheme, dual, genus, irreducible_components, is_iet, turns, twists_total


@dataclass(frozen=True)
class AnalysisReport:
    """Everything ``analyze`` reports about a scheme and its dual.

    Attributes:
        scheme: Canonical text of the scheme
        alphabet: Labels in canonical order
        d: Number of labels
        N: Number of cycles
        P: Number of irreducible components
        components: Label sets of the components
        turns_back: Turn-back sites, as text
        turns_forward: Turn-forward sites, as text
        per_cycle_twists: Twists of each cycle in canonical order
        T: Total twists of the scheme
        dual: Canonical text of the dual scheme
        dual_N: Number of cycles of the dual
        dual_per_cycle_twists: Twists of each dual cycle
        dual_T: Total twists of the dual
        twists_total: T + dual_T
        genus: Genus of the surfaces built from the scheme
        endpoint_dim: Dimension of the allowed endpoints (d + P)
        length_dim: Dimension of the allowed lengths (d + P - N)
        dual_length_dim: Same for the dual scheme
        positive: Whether the scheme admits positive lengths
        dual_positive: Whether the dual does
        is_iet: Whether the scheme is an interval exchange
        dual_is_iet: Whether the dual is
    """

    scheme: str
    alphabet: Tuple[str, ...]
    d: int
    N: int
    P: int
    components: Tuple[Tuple[str, ...], ...]
    turns_back: Tuple[str, ...]
    turns_forward: Tuple[str, ...]
    per_cycle_twists: Tuple[int, ...]
    T: int
    dual: str
    dual_N: int
    dual_per_cycle_twists: Tuple[int, ...]
    dual_T: int
    twists_total: int
    genus: int
    endpoint_dim: int
    length_dim: int
    dual_length_dim: int
    positive: bool
    dual_positive: bool
    is_iet: bool
    dual_is_iet: bool

    def to_dict(self) -> Dict[str, object]:
        data = asdict(self)
        for key, value in data.items():
            if isinstance(value, tuple):
                data[key] = [list(item) if isinstance(item, tuple) else item for item in value]
        return data

    def lines(self) -> List[str]:
        yes_no = {True: "yes", False: "no"}
        return [
            f"Scheme: {self.scheme}",
            f"Labels: {self.d}, cycles: {self.N}, components: {self.P}",
            f"Turns back: {' '.join(self.turns_back) or '-'}",
            f"Turns forward: {' '.join(self.turns_forward) or '-'}",
            f"Twists per cycle: {' '.join(str(t) for t in self.per_cycle_twists)} (T = {self.T})",
            f"Dual: {self.dual}",
            f"Dual twists per cycle: "
            f"{' '.join(str(t) for t in self.dual_per_cycle_twists)} (T = {self.dual_T})",
            f"Twists total: {self.twists_total}, genus: {self.genus}",
            f"Endpoint space: {self.endpoint_dim}, length space: {self.length_dim}, "
            f"dual length space: {self.dual_length_dim}",
            f"Positive: {yes_no[self.positive]}, dual positive: {yes_no[self.dual_positive]}",
            f"Interval exchange: {yes_no[self.is_iet]}, dual: {yes_no[self.dual_is_iet]}",
        ]


def analyze(s: Scheme) -> AnalysisReport:
    """Build the report, checking the twist balance on the way.

    Raises:
        InternalInvariantViolation: If the counts contradict each other
    """
    mirror = dual(s)
    primal_turns, mirror_turns = turns(s), turns(mirror)
    total = twists_total(s)
    N, dual_N = len(s.cycle_indices), len(mirror.cycle_indices)
    if primal_turns.T + mirror_turns.T + N + dual_N != s.d:
        raise InternalInvariantViolation(f"twist balance fails for {s}")
    partition = irreducible_components(s)
    return AnalysisReport(
        scheme=s.text(),
        alphabet=s.alphabet,
        d=s.d,
        N=N,
        P=partition.P,
        components=partition.components,
        turns_back=tuple(str(ext) for ext in primal_turns.turns_back),
        turns_forward=tuple(str(ext) for ext in primal_turns.turns_forward),
        per_cycle_twists=primal_turns.per_cycle_twists,
        T=primal_turns.T,
        dual=mirror.text(),
        dual_N=dual_N,
        dual_per_cycle_twists=mirror_turns.per_cycle_twists,
        dual_T=mirror_turns.T,
        twists_total=total,
        genus=genus(s),
        endpoint_dim=endpoint_space_basis(s).dim,
        length_dim=length_space_basis(s).dim,
        dual_length_dim=length_space_basis(mirror).dim,
        positive=is_positive_scheme(s),
        dual_positive=is_positive_scheme(mirror),
        is_iet=is_iet(s),
        dual_is_iet=is_iet(mirror),
    )
