"""Natural extensions: an IRE paired with an IRE of the dual scheme.

A step acts on the primal side as usual and on the dual side by the inverse
of its partner step:

    rb:alpha,beta  ->  inverse rb:beta,alpha
    re:alpha,beta  ->  inverse lb:alpha,beta
    lb:alpha,beta  ->  inverse re:alpha,beta
    le:alpha,beta  ->  inverse le:beta,alpha

so the dual scheme of the result is always the dual of the new scheme, and
the area ``sum(v[a] * w[a])`` never changes.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Union

import numpy as np

from ire.errors import InternalInvariantViolation, NotInLengthSpace
from ire.induction import (
    LB,
    LE,
    RB,
    RE,
    InductionStep,
    applicable_positive_steps,
    apply_step,
    apply_step_lengths,
    invert_step,
    invert_step_lengths,
)
from ire.realdata import Endpoints, Lengths, as_lengths, in_length_space, lengths_from_endpoints
from ire.scheme import Scheme, dual

PARTNER_KINDS = {RB: RB, RE: LB, LB: RE, LE: LE}


@dataclass(frozen=True)
class NaturalExtension:
    """Endpoints for a scheme and for its dual.

    Attributes:
        scheme: The primal scheme
        x: Endpoints of the primal scheme
        y: Endpoints of the dual scheme
        v: Primal lengths derived from x
        w: Dual lengths derived from y
    """

    scheme: Scheme
    x: Endpoints
    y: Endpoints
    v: Lengths
    w: Lengths

    @property
    def dual_scheme(self) -> Scheme:
        return dual(self.scheme)

    def floating(self) -> "FloatingExtension":
        return FloatingExtension(self.scheme, dict(self.v), dict(self.w))


@dataclass(frozen=True)
class FloatingExtension:
    scheme: Scheme
    v: Lengths
    w: Lengths

    @property
    def dual_scheme(self) -> Scheme:
        return dual(self.scheme)


def make_extension(s: Scheme, x: Mapping, y: Mapping) -> NaturalExtension:
    """Validate both sides and derive their lengths.

    Raises:
        NotInEndpointSpace: Naming the side, primal or dual, that failed
    """
    v = lengths_from_endpoints(s, x, "primal")
    w = lengths_from_endpoints(dual(s), y, "dual")
    x = {key: Fraction(value) for key, value in x.items()}
    y = {key: Fraction(value) for key, value in y.items()}
    return NaturalExtension(s, x, y, v, w)


def make_floating_extension(s: Scheme, v: Mapping, w: Mapping) -> FloatingExtension:
    """Validate lengths on both sides.

    Raises:
        NotInLengthSpace: If v or w does not close up around some cycle
    """
    v, w = as_lengths(s, v), as_lengths(s, w)
    if not in_length_space(s, v):
        raise NotInLengthSpace("primal lengths do not close up around every cycle")
    if not in_length_space(dual(s), w):
        raise NotInLengthSpace("dual lengths do not close up around every cycle")
    return FloatingExtension(s, v, w)


def partner_step(step: InductionStep) -> InductionStep:
    """The step whose inverse acts on the dual side."""
    kind = PARTNER_KINDS[step.kind]
    if step.kind in (RB, LE):
        return InductionStep(kind, step.beta, step.alpha)
    return InductionStep(kind, step.alpha, step.beta)


def _check_dual(primal: Scheme, mirror: Scheme, step: InductionStep) -> None:
    if mirror != dual(primal):
        raise InternalInvariantViolation(
            f"after {step} the dual side {mirror} is not the dual of {primal}"
        )


def apply_step_extension(e: NaturalExtension, step: InductionStep) -> NaturalExtension:
    """Apply a step to a natural extension.

    Raises:
        StepNotApplicable: If the turn condition fails on the primal scheme
    """
    s_prime, x_prime = apply_step(e.scheme, e.x, step, "primal")
    mirror, y_prime = invert_step(e.dual_scheme, e.y, partner_step(step), "dual")
    _check_dual(s_prime, mirror, step)
    return make_extension(s_prime, x_prime, y_prime)


def invert_step_extension(e_prime: NaturalExtension, step: InductionStep) -> NaturalExtension:
    """Restore the extension a step was applied to.

    Raises:
        NotInImage: If the primal scheme is not in the image of the step
    """
    s, x = invert_step(e_prime.scheme, e_prime.x, step, "primal")
    mirror, y = apply_step(e_prime.dual_scheme, e_prime.y, partner_step(step), "dual")
    _check_dual(s, mirror, step)
    return make_extension(s, x, y)


def apply_step_floating(f: FloatingExtension, step: InductionStep) -> FloatingExtension:
    s_prime, v_prime = apply_step_lengths(f.scheme, f.v, step)
    mirror, w_prime = invert_step_lengths(f.dual_scheme, f.w, partner_step(step))
    _check_dual(s_prime, mirror, step)
    return FloatingExtension(s_prime, v_prime, w_prime)


def invert_step_floating(f_prime: FloatingExtension, step: InductionStep) -> FloatingExtension:
    s, v = invert_step_lengths(f_prime.scheme, f_prime.v, step)
    mirror, w = apply_step_lengths(f_prime.dual_scheme, f_prime.w, partner_step(step))
    _check_dual(s, mirror, step)
    return FloatingExtension(s, v, w)


def area(e: Union[NaturalExtension, FloatingExtension]) -> Fraction:
    """The invariant area ``sum(v[a] * w[a])``."""
    return sum((e.v[label] * e.w[label] for label in e.scheme.alphabet), Fraction(0))


def is_positive_extension(e: Union[NaturalExtension, FloatingExtension]) -> bool:
    return all(e.v[label] > 0 and e.w[label] > 0 for label in e.scheme.alphabet)


def run_floating_induction(
    f: FloatingExtension, count: int, rng: Optional[np.random.Generator] = None
) -> List[FloatingExtension]:
    """Apply up to ``count`` primal-positive steps, returning every extension visited.

    Stops early when only ties or no steps remain.
    """
    trajectory = [f]
    for _ in range(count):
        options = applicable_positive_steps(f.scheme, f.v)
        if not options:
            break
        step = options[int(rng.integers(len(options)))] if rng is not None else options[0]
        f = apply_step_floating(f, step)
        trajectory.append(f)
    return trajectory
