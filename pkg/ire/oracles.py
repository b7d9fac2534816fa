"""Two-row interval exchanges and their classical cropping moves.

These work directly on the two-row notation and never touch schemes, so
they serve as independent oracles for ``ire.induction``:

* ``classical_rv_step`` is the right-hand Rauzy-Veech move on a single
  interval: the longer of the two rightmost subintervals wins and the
  shorter one is cut off its end.
* ``two_row_crop_step`` crops a multi-interval exchange on either side of
  one of its intervals and tracks the left endpoints ``A``.

Scheme steps and crops correspond as follows (alpha is the upper label at
a right turn, the lower label for left crops is the ending one):

    rb:alpha,beta  ->  r+ alpha,beta
    re:alpha,beta  ->  r- alpha,beta
    lb:alpha,beta  ->  l- beta,alpha
    le:alpha,beta  ->  l+ beta,alpha
"""

from collections import deque
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from ire.errors import (
    InternalInvariantViolation,
    MalformedTwoRow,
    NotInLengthSpace,
    NotPositive,
    StepNotApplicable,
    TieDetected,
)
from ire.induction import LB, LE, RB, RE, InductionStep
from ire.realdata import Endpoints
from ire.scheme import B, E, ExtLabel, TwoRowIET, from_two_row

Rows = List[List[str]]

CROP_NAMES = {RB: "r+", RE: "r-", LB: "l-", LE: "l+"}


def crop_for_step(step: InductionStep) -> Tuple[str, str, str]:
    """Name and label order of the crop matching a scheme step."""
    if step.kind in (RB, RE):
        return CROP_NAMES[step.kind], step.alpha, step.beta
    return CROP_NAMES[step.kind], step.beta, step.alpha


def _lengths(t: TwoRowIET, v: Mapping) -> Dict[str, Fraction]:
    labels = t.labels()
    missing = [label for label in labels if label not in v]
    if missing:
        raise NotInLengthSpace(f"no length for {', '.join(missing)}")
    lengths = {label: Fraction(v[label]) for label in labels}
    bad = [label for label in labels if lengths[label] <= 0]
    if bad:
        raise NotPositive(f"lengths of {', '.join(bad)} are not positive")
    for n, (upper, lower) in enumerate(t.brackets):
        top = sum((lengths[label] for label in upper), Fraction(0))
        bottom = sum((lengths[label] for label in lower), Fraction(0))
        if top != bottom:
            raise NotInLengthSpace(
                f"interval {n} has upper length {top} but lower length {bottom}"
            )
    return lengths


def _freeze(upper: Rows, lower: Rows) -> TwoRowIET:
    if any(not row for row in upper) or any(not row for row in lower):
        raise InternalInvariantViolation("a crop emptied a row")
    return TwoRowIET(tuple((tuple(u), tuple(w)) for u, w in zip(upper, lower)))


def _locate(rows: Rows, label: str) -> Tuple[int, int]:
    for n, row in enumerate(rows):
        if label in row:
            return n, row.index(label)
    raise MalformedTwoRow(f"label {label} is missing from the rows")


def classical_rv_step(t: TwoRowIET, v: Mapping) -> Tuple[TwoRowIET, Dict[str, Fraction]]:
    """One right Rauzy-Veech move on a single-interval exchange.

    Raises:
        MalformedTwoRow: If t has more than one bracket
        TieDetected: If the two rightmost subintervals have equal length
    """
    if len(t.brackets) != 1:
        raise MalformedTwoRow("the classical move needs exactly one interval")
    lengths = _lengths(t, v)
    upper, lower = (list(row) for row in t.brackets[0])
    top, bot = upper[-1], lower[-1]
    if lengths[top] == lengths[bot]:
        raise TieDetected(top, bot)
    if lengths[top] > lengths[bot]:
        lower.pop()
        lower.insert(lower.index(top) + 1, bot)
        lengths[top] -= lengths[bot]
    else:
        upper.pop()
        upper.insert(upper.index(bot) + 1, top)
        lengths[bot] -= lengths[top]
    return TwoRowIET(((tuple(upper), tuple(lower)),)), lengths


def _crop_site(upper: Rows, lower: Rows, step: InductionStep) -> int:
    right = step.kind in (RB, RE)
    end = -1 if right else 0
    for n in range(len(upper)):
        if upper[n][end] == step.alpha and lower[n][end] == step.beta:
            return n
    side = "right" if right else "left"
    raise StepNotApplicable(
        f"{step} needs an interval whose {side} ends are {step.alpha} above and {step.beta} below"
    )


def two_row_crop_step(
    t: TwoRowIET, v: Mapping, A: Sequence, step: InductionStep
) -> Tuple[TwoRowIET, Dict[str, Fraction], List[Fraction]]:
    """Crop a multi-interval exchange at one end of an interval.

    ``A`` holds the left endpoint of each interval. Right crops leave it
    alone; left crops move the cropped interval's endpoint right by the
    length of the piece cut off.

    Raises:
        StepNotApplicable: If no interval has alpha and beta at the required
            ends, or the wrong subinterval is the shorter one
        TieDetected: If both subintervals have equal length
    """
    lengths = _lengths(t, v)
    if len(A) != len(t.brackets):
        raise MalformedTwoRow(f"expected {len(t.brackets)} left endpoints, got {len(A)}")
    A = [Fraction(value) for value in A]
    upper = [list(u) for u, _ in t.brackets]
    lower = [list(w) for _, w in t.brackets]
    site = _crop_site(upper, lower, step)
    a, b = step.alpha, step.beta
    if lengths[a] == lengths[b]:
        raise TieDetected(a, b)
    if (lengths[a] > lengths[b]) != step.shortens_alpha:
        shorter = b if step.shortens_alpha else a
        raise StepNotApplicable(f"{step} needs {shorter} to be the shorter subinterval")

    if step.kind == RB:
        lower[site].pop()
        n, k = _locate(lower, a)
        lower[n].insert(k + 1, b)
        lengths[a] -= lengths[b]
    elif step.kind == RE:
        upper[site].pop()
        n, k = _locate(upper, b)
        upper[n].insert(k + 1, a)
        lengths[b] -= lengths[a]
    elif step.kind == LB:
        lower[site].pop(0)
        n, k = _locate(lower, a)
        lower[n].insert(k, b)
        A[site] += lengths[b]
        lengths[a] -= lengths[b]
    else:
        upper[site].pop(0)
        n, k = _locate(upper, b)
        upper[n].insert(k, a)
        A[site] += lengths[a]
        lengths[b] -= lengths[a]
    return _freeze(upper, lower), lengths, A


def two_row_endpoints(t: TwoRowIET, v: Mapping, A: Sequence) -> Endpoints:
    """Endpoints of a multi-interval exchange placed with left ends ``A``.

    Beginning endpoints are left ends of the upper subintervals, ending
    endpoints are right ends of the lower ones.
    """
    lengths = _lengths(t, v)
    if len(A) != len(t.brackets):
        raise MalformedTwoRow(f"expected {len(t.brackets)} left endpoints, got {len(A)}")
    x: Endpoints = {}
    for (upper, lower), start in zip(t.brackets, A):
        position = Fraction(start)
        for label in upper:
            x[ExtLabel(label, B)] = position
            position += lengths[label]
        position = Fraction(start)
        for label in lower:
            position += lengths[label]
            x[ExtLabel(label, E)] = position
    return x


def _classical_moves(t: TwoRowIET) -> List[TwoRowIET]:
    upper, lower = t.brackets[0]
    top, bot = upper[-1], lower[-1]
    moved_lower = list(lower[:-1])
    moved_lower.insert(moved_lower.index(top) + 1, bot)
    moved_upper = list(upper[:-1])
    moved_upper.insert(moved_upper.index(bot) + 1, top)
    return [
        TwoRowIET(((tuple(upper), tuple(moved_lower)),)),
        TwoRowIET(((tuple(moved_upper), tuple(lower)),)),
    ]


def classical_rauzy_class(t: TwoRowIET) -> List[TwoRowIET]:
    """Single-interval permutations reachable by top and bottom moves.

    Returned in breadth-first discovery order.
    """
    if len(t.brackets) != 1:
        raise MalformedTwoRow("the classical class needs exactly one interval")
    from_two_row(t)
    seen = {t}
    order = [t]
    queue = deque([t])
    while queue:
        current = queue.popleft()
        for nxt in _classical_moves(current):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order
