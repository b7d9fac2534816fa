"""Built-in worked dataset.

The four-label scheme ``(a.b b.b g.b d.b a.e b.e g.e d.e)`` is an interval
exchange whose dual carries two twists, so its surfaces have genus two.
``worked_extension`` gives it lengths (2, 3, 5, 11) on the primal side and
(2, 4, 11, 10) on the dual side; gluing the dual tree at 15/2 and 11 gives
nine pairings and two cone points of angle 4*pi. ``square_extension`` puts
unit squares and 1 x 2 rectangles on the same scheme, which glues into a
single cone point of angle 6*pi.
"""

from fractions import Fraction
from typing import Dict

from ire.converters.text import parse_scheme_text
from ire.extension import NaturalExtension, make_extension
from ire.gluing import BranchRule
from ire.scheme import ExtLabel, Scheme
from ire.surface import ZipperedSurface, build_surface

WORKED_SCHEME = "(a.b b.b g.b d.b a.e b.e g.e d.e)"
TORUS_SCHEME = "(a.b b.b a.e b.e)"
SINGLE_LABEL_SCHEME = "(a.b a.e)"

WORKED_DUAL_BRANCH_COORDINATES = (Fraction(15, 2), Fraction(11))


def _endpoints(**values) -> Dict[ExtLabel, Fraction]:
    """``a_b=0, a_e=21`` style keywords to exact endpoints."""
    return {ExtLabel(*key.split("_")): Fraction(value) for key, value in values.items()}


def worked_scheme() -> Scheme:
    return parse_scheme_text(WORKED_SCHEME)


def worked_extension() -> NaturalExtension:
    x = _endpoints(a_b=0, b_b=2, g_b=5, d_b=10, d_e=11, g_e=16, b_e=19, a_e=21)
    y = _endpoints(d_b=0, b_b=7, g_b=8, a_e=9, a_b=10, g_e=11, b_e=12, d_e=19)
    return make_extension(worked_scheme(), x, y)


def worked_dual_rule() -> BranchRule:
    return BranchRule.explicit(*WORKED_DUAL_BRANCH_COORDINATES)


def worked_surface() -> ZipperedSurface:
    return build_surface(worked_extension(), rule_v=worked_dual_rule())


def square_extension() -> NaturalExtension:
    x = _endpoints(a_b=0, b_b=1, g_b=2, d_b=3, d_e=1, g_e=2, b_e=3, a_e=4)
    y = _endpoints(d_b=0, a_b=1, b_e=2, g_b=0, d_e=2, a_e=1, b_b=0, g_e=2)
    return make_extension(worked_scheme(), x, y)
