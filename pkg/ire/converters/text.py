"""Text literals: schemes, two-row exchanges, steps and rationals.

Schemes are written as juxtaposed cycles, ``(a.b b.b a.e b.e)``; two-row
exchanges as brackets, ``[a b g d / d g b a]``; steps as ``rb:d,a``; and
rationals as ``p/q`` strings.
"""

import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ire.errors import ParseError
from ire.induction import InductionStep
from ire.scheme import MARKERS, ExtLabel, Scheme, TwoRowIET, check_alphabet, scheme_from_cycles

_SCHEME_TOKEN = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<ext>[A-Za-z0-9_]+\.[a-z]+))")
_STEP = re.compile(r"^\s*([a-z]+)\s*:\s*([A-Za-z0-9_]+)\s*,\s*([A-Za-z0-9_]+)\s*$")
_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?\d*\.\d+\s*$")


def parse_ext_label(token: str, position: int = 0) -> ExtLabel:
    label, _, marker = token.partition(".")
    if marker not in MARKERS:
        raise ParseError(f"unknown marker in {token!r}, expected .b or .e", position)
    return ExtLabel(label, marker)


def parse_scheme_text(text: str, alphabet: Optional[Sequence[str]] = None) -> Scheme:
    """Parse juxtaposed cycles into a scheme.

    The alphabet defaults to labels in order of first appearance.

    Raises:
        ParseError: On bad syntax or a repeated element, with its position
        NotABijection: If some extended label is never mentioned
    """
    cycle_list: List[List[ExtLabel]] = []
    current: Optional[List[ExtLabel]] = None
    seen: Dict[ExtLabel, int] = {}
    order: List[str] = []
    position = 0
    end = len(text.rstrip())

    while position < end:
        match = _SCHEME_TOKEN.match(text, position)
        if not match:
            position += len(text[position:]) - len(text[position:].lstrip())
            raise ParseError(f"unexpected character {text[position]!r}", position)
        start = match.start(match.lastgroup)
        if match.group("open"):
            if current is not None:
                raise ParseError("nested '(' inside a cycle", start)
            current = []
        elif match.group("close"):
            if current is None:
                raise ParseError("')' without a matching '('", start)
            if not current:
                raise ParseError("empty cycle", start)
            cycle_list.append(current)
            current = None
        else:
            if current is None:
                raise ParseError("extended label outside a cycle", start)
            ext = parse_ext_label(match.group("ext"), start)
            if ext in seen:
                raise ParseError(f"duplicate element {ext}", start)
            seen[ext] = start
            if ext.label not in order:
                order.append(ext.label)
            current.append(ext)
        position = match.end()

    if current is not None:
        raise ParseError("unclosed '('", end)
    if not cycle_list:
        raise ParseError("no cycles found", 0)
    return scheme_from_cycles(check_alphabet(alphabet) if alphabet else order, cycle_list)


def format_scheme(s: Scheme) -> str:
    return s.text()


def parse_two_row(text: str) -> TwoRowIET:
    """Parse ``[upper / lower]`` brackets into a two-row exchange.

    Raises:
        ParseError: If brackets are unbalanced or a bracket has no ``/``
    """
    brackets = []
    for match in re.finditer(r"\[([^\[\]]*)\]", text):
        body = match.group(1)
        if body.count("/") != 1:
            raise ParseError("each bracket needs exactly one '/'", match.start())
        upper, lower = (tuple(part.split()) for part in body.split("/"))
        brackets.append((upper, lower))
    leftover = re.sub(r"\[[^\[\]]*\]", "", text).strip()
    if leftover or not brackets:
        where = text.find(leftover[0]) if leftover else 0
        raise ParseError("expected brackets like [a b / b a]", where)
    return TwoRowIET(tuple(brackets))


def format_two_row(t: TwoRowIET) -> str:
    return str(t)


def parse_step(text: str) -> InductionStep:
    """Parse ``kind:alpha,beta``.

    Raises:
        ParseError: On bad syntax or an unknown kind
        StepNotApplicable: If alpha equals beta
    """
    match = _STEP.match(text)
    if not match:
        raise ParseError(f"bad step {text!r}, expected e.g. rb:d,a", 0)
    return InductionStep(*match.groups())


def parse_rational(text) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are read exactly.

    Raises:
        ParseError: If the text is not a rational number
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    match = _RATIONAL.match(str(text))
    if match:
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ParseError(f"zero denominator in {text!r}", str(text).find("/"))
        return Fraction(int(numerator), int(denominator or 1))
    if _DECIMAL.match(str(text)):
        return Fraction(str(text).strip())
    raise ParseError(f"not a rational number: {text!r}", 0)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_assignments(text: str) -> Dict[str, Fraction]:
    """Parse ``a=2 b=3/2`` (commas or spaces) into a mapping of rationals.

    Raises:
        ParseError: If an item has no ``=`` or its value is not rational
    """
    values: Dict[str, Fraction] = {}
    for match in re.finditer(r"[^\s,]+", text):
        key, sep, value = match.group(0).partition("=")
        if not sep or not key:
            raise ParseError(f"expected name=value, got {match.group(0)!r}", match.start())
        if key in values:
            raise ParseError(f"{key} is assigned twice", match.start())
        try:
            values[key] = parse_rational(value)
        except ParseError as e:
            raise ParseError(
                f"not a rational number: {value!r}", match.start() + len(key) + 1
            ) from e
    return values
