"""Elementary induction steps on schemes, endpoints and lengths.

Every step crops a pair of intervals meeting at a turn of the scheme:

    rb, re  need a turn back     sigma(alpha.b) = beta.e
    lb, le  need a turn forward  sigma(beta.e) = alpha.b

On the scheme each step removes one element from its cycle and re-inserts it
next to another one:

    rb  beta.e   moves to just before alpha.e
    re  alpha.b  moves to just after  beta.b
    lb  beta.e   moves to just after  alpha.e
    le  alpha.b  moves to just before beta.b

The lengths change by ``v[alpha] -= v[beta]`` for rb and lb and by
``v[beta] -= v[alpha]`` for re and le.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ire.errors import (
    InternalInvariantViolation,
    NotInEndpointSpace,
    NotInImage,
    NotPositive,
    ParseError,
    StepNotApplicable,
    TieDetected,
)
from ire.realdata import Endpoints, Lengths, as_endpoints, as_lengths, lengths_from_endpoints
from ire.scheme import B, E, ExtLabel, Scheme

RB = "rb"
RE = "re"
LB = "lb"
LE = "le"
STEP_KINDS = (RB, RE, LB, LE)
RIGHT_KINDS = (RB, RE)


@dataclass(frozen=True, order=True)
class InductionStep:
    """One elementary step, written ``<kind>:<alpha>,<beta>``."""

    kind: str
    alpha: str
    beta: str

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ParseError(
                f"unknown step kind {self.kind!r}, expected one of {', '.join(STEP_KINDS)}"
            )
        if self.alpha == self.beta:
            raise StepNotApplicable(f"step {self} needs two different labels")

    def __str__(self) -> str:
        return f"{self.kind}:{self.alpha},{self.beta}"

    @property
    def shortens_alpha(self) -> bool:
        """rb and lb shorten alpha; re and le shorten beta."""
        return self.kind in (RB, LB)


def turn_holds(s: Scheme, step: InductionStep) -> bool:
    """Whether the turn a step needs is present in the scheme."""
    alpha_b = s.index(ExtLabel(step.alpha, B))
    beta_e = s.index(ExtLabel(step.beta, E))
    if step.kind in RIGHT_KINDS:
        return s.images[alpha_b] == beta_e
    return s.images[beta_e] == alpha_b


def applicable_steps(s: Scheme) -> List[InductionStep]:
    """All steps whose turn condition holds, sorted by kind then labels."""
    steps = []
    for i, j in enumerate(s.images):
        if i // 2 == j // 2:
            continue
        source, target = s.element(i), s.element(j)
        if source.is_beginning and not target.is_beginning:
            steps.append(InductionStep(RB, source.label, target.label))
            steps.append(InductionStep(RE, source.label, target.label))
        elif not source.is_beginning and target.is_beginning:
            steps.append(InductionStep(LB, target.label, source.label))
            steps.append(InductionStep(LE, target.label, source.label))
    order = {kind: n for n, kind in enumerate(STEP_KINDS)}
    steps.sort(
        key=lambda step: (order[step.kind], s.positions[step.alpha], s.positions[step.beta])
    )
    return steps


def _require_turn(s: Scheme, step: InductionStep) -> None:
    if not turn_holds(s, step):
        if step.kind in RIGHT_KINDS:
            wanted = f"sigma({step.alpha}.b) = {step.beta}.e"
        else:
            wanted = f"sigma({step.beta}.e) = {step.alpha}.b"
        raise StepNotApplicable(f"{step} needs {wanted}")


class _Rewire:
    """Mutable copy of a scheme for remove/insert edits."""

    def __init__(self, s: Scheme):
        self.scheme = s
        self.images = list(s.images)

    def at(self, label: str, marker: str) -> int:
        return self.scheme.index(ExtLabel(label, marker))

    def preimage(self, j: int) -> int:
        return self.images.index(j)

    def remove(self, i: int) -> None:
        p = self.preimage(i)
        self.images[p] = self.images[i]
        self.images[i] = i

    def insert_after(self, i: int, anchor: int) -> None:
        self.images[i] = self.images[anchor]
        self.images[anchor] = i

    def insert_before(self, i: int, anchor: int) -> None:
        p = self.preimage(anchor)
        self.images[p] = i
        self.images[i] = anchor

    def result(self) -> Scheme:
        return Scheme(self.scheme.alphabet, tuple(self.images))


def apply_step_scheme(s: Scheme, step: InductionStep) -> Scheme:
    """Apply a step to a scheme.

    Raises:
        StepNotApplicable: If the turn condition fails
    """
    _require_turn(s, step)
    edit = _Rewire(s)
    a_b, a_e = edit.at(step.alpha, B), edit.at(step.alpha, E)
    b_b, b_e = edit.at(step.beta, B), edit.at(step.beta, E)
    if step.kind == RB:
        edit.remove(b_e)
        edit.insert_before(b_e, a_e)
    elif step.kind == RE:
        edit.remove(a_b)
        edit.insert_after(a_b, b_b)
    elif step.kind == LB:
        edit.remove(b_e)
        edit.insert_after(b_e, a_e)
    else:
        edit.remove(a_b)
        edit.insert_before(a_b, b_b)
    return edit.result()


def in_step_image(s_prime: Scheme, step: InductionStep) -> bool:
    """Whether a scheme can be the result of the given step."""
    image = s_prime.images
    a_b = s_prime.index(ExtLabel(step.alpha, B))
    a_e = s_prime.index(ExtLabel(step.alpha, E))
    b_b = s_prime.index(ExtLabel(step.beta, B))
    b_e = s_prime.index(ExtLabel(step.beta, E))
    if step.kind == RB:
        return image[b_e] == a_e
    if step.kind == RE:
        return image[b_b] == a_b
    if step.kind == LB:
        return image[a_e] == b_e
    return image[a_b] == b_b


def invert_step_scheme(s_prime: Scheme, step: InductionStep) -> Scheme:
    """Pre-image of a scheme under a step.

    Raises:
        NotInImage: If no scheme is sent to s_prime by this step
    """
    if not in_step_image(s_prime, step):
        raise NotInImage(f"{s_prime} is not in the image of {step}")
    edit = _Rewire(s_prime)
    a_b, a_e = edit.at(step.alpha, B), edit.at(step.alpha, E)
    b_b, b_e = edit.at(step.beta, B), edit.at(step.beta, E)
    if step.kind == RB:
        edit.remove(b_e)
        edit.insert_after(b_e, a_b)
    elif step.kind == RE:
        edit.remove(a_b)
        edit.insert_before(a_b, b_e)
    elif step.kind == LB:
        edit.remove(b_e)
        edit.insert_before(b_e, a_b)
    else:
        edit.remove(a_b)
        edit.insert_after(a_b, b_e)
    return edit.result()


def _step_lengths(v: Lengths, step: InductionStep) -> Lengths:
    result = dict(v)
    if step.shortens_alpha:
        result[step.alpha] = v[step.alpha] - v[step.beta]
    else:
        result[step.beta] = v[step.beta] - v[step.alpha]
    return result


def _unstep_lengths(v_prime: Lengths, step: InductionStep) -> Lengths:
    result = dict(v_prime)
    if step.shortens_alpha:
        result[step.alpha] = v_prime[step.alpha] + v_prime[step.beta]
    else:
        result[step.beta] = v_prime[step.beta] + v_prime[step.alpha]
    return result


def apply_step_lengths(s: Scheme, v: Mapping, step: InductionStep) -> Tuple[Scheme, Lengths]:
    """Apply a step to a floating IRE.

    Raises:
        StepNotApplicable: If the turn condition fails
        NotInLengthSpace: If v is missing a label
    """
    v = as_lengths(s, v)
    s_prime = apply_step_scheme(s, step)
    return s_prime, _step_lengths(v, step)


def invert_step_lengths(
    s_prime: Scheme, v_prime: Mapping, step: InductionStep
) -> Tuple[Scheme, Lengths]:
    """Pre-image of a floating IRE under a step.

    Raises:
        NotInImage: If s_prime is outside the image of the step
    """
    v_prime = as_lengths(s_prime, v_prime)
    s = invert_step_scheme(s_prime, step)
    return s, _unstep_lengths(v_prime, step)


def _check_endpoints(s: Scheme, x: Endpoints, step: InductionStep, side: str) -> None:
    try:
        lengths_from_endpoints(s, x, side)
    except NotInEndpointSpace as e:
        raise InternalInvariantViolation(f"{step} left the endpoint space: {e}") from e


def apply_step(
    s: Scheme, x: Mapping, step: InductionStep, side: str = "primal"
) -> Tuple[Scheme, Endpoints]:
    """Apply a step to an IRE, moving two endpoints.

    Raises:
        StepNotApplicable: If the turn condition fails
        NotInEndpointSpace: If x is not an allowed endpoint vector of s
    """
    v = lengths_from_endpoints(s, x, side)
    x = as_endpoints(s, x, side)
    s_prime = apply_step_scheme(s, step)
    a, b = step.alpha, step.beta
    a_b, a_e = ExtLabel(a, B), ExtLabel(a, E)
    b_b, b_e = ExtLabel(b, B), ExtLabel(b, E)
    moved: Dict[ExtLabel, Fraction] = {}
    if step.kind == RB:
        moved[b_e] = x[a_e]
        moved[a_e] = x[a_e] - v[b]
    elif step.kind == RE:
        moved[b_e] = x[a_b]
        moved[a_b] = x[s(b_b)] - v[a]
    elif step.kind == LB:
        moved[a_b] = x[b_e]
        moved[b_e] = x[s(a_e)] + v[b]
    else:
        moved[a_b] = x[b_b]
        moved[b_b] = x[b_b] + v[a]
    x_prime = dict(x)
    x_prime.update(moved)
    _check_endpoints(s_prime, x_prime, step, side)
    return s_prime, x_prime


def invert_step(
    s_prime: Scheme, x_prime: Mapping, step: InductionStep, side: str = "primal"
) -> Tuple[Scheme, Endpoints]:
    """Pre-image of an IRE under a step.

    Raises:
        NotInImage: If s_prime is outside the image of the step
        NotInEndpointSpace: If x_prime is not allowed for s_prime
    """
    v_prime = lengths_from_endpoints(s_prime, x_prime, side)
    x_prime = as_endpoints(s_prime, x_prime, side)
    s = invert_step_scheme(s_prime, step)
    a, b = step.alpha, step.beta
    a_b, a_e = ExtLabel(a, B), ExtLabel(a, E)
    b_b, b_e = ExtLabel(b, B), ExtLabel(b, E)
    restored: Dict[ExtLabel, Fraction] = {}
    if step.kind == RB:
        restored[a_e] = x_prime[b_e]
        restored[b_e] = x_prime[a_b] + v_prime[a] + v_prime[b]
    elif step.kind == RE:
        restored[a_b] = x_prime[b_e]
        restored[b_e] = x_prime[b_e] + v_prime[a]
    elif step.kind == LB:
        restored[b_e] = x_prime[a_b]
        restored[a_b] = x_prime[a_b] - v_prime[b]
    else:
        restored[b_b] = x_prime[a_b]
        restored[a_b] = x_prime[b_e] - (v_prime[b] + v_prime[a])
    x = dict(x_prime)
    x.update(restored)
    _check_endpoints(s, x, step, side)
    return s, x


def _require_positive(v: Lengths, side: str = "primal") -> None:
    bad = sorted(label for label, value in v.items() if value <= 0)
    if bad:
        raise NotPositive(f"lengths of {', '.join(bad)} are not positive", side)


def _positive_verdict(v: Lengths, step: InductionStep) -> Optional[bool]:
    """True if the step keeps lengths positive, False if not, None on a tie."""
    if v[step.alpha] == v[step.beta]:
        return None
    if step.shortens_alpha:
        return v[step.alpha] > v[step.beta]
    return v[step.alpha] < v[step.beta]


@dataclass(frozen=True)
class PositiveOptions:
    """Steps available on positive lengths, and the tied pairs that block others."""

    steps: List[InductionStep]
    ties: List[Tuple[str, str]]


def positive_options(s: Scheme, v: Mapping) -> PositiveOptions:
    """Split the applicable steps into positivity-preserving ones and ties.

    Ties are label pairs at a turn whose lengths are equal, in step order.

    Raises:
        NotPositive: If some length is not positive
    """
    v = as_lengths(s, v)
    _require_positive(v)
    steps: List[InductionStep] = []
    ties: List[Tuple[str, str]] = []
    for step in applicable_steps(s):
        verdict = _positive_verdict(v, step)
        pair = (step.alpha, step.beta)
        if verdict:
            steps.append(step)
        elif verdict is None and pair not in ties:
            ties.append(pair)
    return PositiveOptions(steps, ties)


def applicable_positive_steps(s: Scheme, v: Mapping) -> List[InductionStep]:
    """Applicable steps that keep every length positive.

    Tied pairs are left out; ``positive_options`` returns them alongside.
    """
    return positive_options(s, v).steps


def positive_step_ties(s: Scheme, v: Mapping) -> List[Tuple[str, str]]:
    """Tied label pairs of ``positive_options``."""
    return positive_options(s, v).ties


def apply_positive_step(s: Scheme, v: Mapping, step: InductionStep) -> Tuple[Scheme, Lengths]:
    """Apply a step to positive lengths, refusing to break positivity.

    Raises:
        NotPositive: If the input lengths are not all positive
        StepNotApplicable: If the turn fails or the wrong length is longer
        TieDetected: If the two lengths are equal
    """
    v = as_lengths(s, v)
    _require_positive(v)
    _require_turn(s, step)
    verdict = _positive_verdict(v, step)
    if verdict is None:
        raise TieDetected(
            step.alpha,
            step.beta,
            f"{step}: {step.alpha} and {step.beta} both have length {v[step.alpha]}",
        )
    if not verdict:
        shorter = step.beta if step.shortens_alpha else step.alpha
        raise StepNotApplicable(f"{step} needs {shorter} to be the shorter interval")
    return apply_step_lengths(s, v, step)


@dataclass
class InductionRun:
    """Trajectory of a positive induction run.

    Attributes:
        steps: Steps in the order they were applied
        schemes: Scheme before the first step, then after each step
        lengths: Lengths matching ``schemes``
        stopped: Why the run ended early, or None if it completed
    """

    steps: List[InductionStep] = field(default_factory=list)
    schemes: List[Scheme] = field(default_factory=list)
    lengths: List[Lengths] = field(default_factory=list)
    stopped: Optional[str] = None

    @property
    def final(self) -> Tuple[Scheme, Lengths]:
        return self.schemes[-1], self.lengths[-1]


def run_induction(
    s: Scheme,
    v: Mapping,
    count: int,
    rng: Optional[np.random.Generator] = None,
    right_only: bool = False,
) -> InductionRun:
    """Apply up to ``count`` positivity-preserving steps.

    With an rng the step is drawn uniformly among the available ones,
    otherwise the first available is taken. ``right_only`` restricts the
    choice to rb and re steps.
    """
    v = as_lengths(s, v)
    run = InductionRun(schemes=[s], lengths=[v])
    for _ in range(count):
        available = positive_options(s, v)
        options = available.steps
        if right_only:
            options = [step for step in options if step.kind in RIGHT_KINDS]
        if not options:
            run.stopped = (
                "tie between " + ", ".join(f"{a}/{b}" for a, b in available.ties)
                if available.ties
                else "no step available"
            )
            break
        step = options[int(rng.integers(len(options)))] if rng is not None else options[0]
        s, v = apply_step_lengths(s, v, step)
        run.steps.append(step)
        run.schemes.append(s)
        run.lengths.append(v)
    return run
