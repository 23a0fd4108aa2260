"""Exact slope data, box heights, and total orders on boxes.

A "general" slope datum is modelled as a rational base plus ordered
infinitesimals: a :class:`LexScalar` is a vector of rationals compared
lexicographically, coordinate 0 being the standard part.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .core import Box

Rational = Union[int, Fraction, str]


def to_fraction(value: Rational) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@total_ordering
class LexScalar:
    """A real number plus ordered infinitesimals, compared lexicographically.

    Coordinates beyond the stored length are zero, so scalars of different
    dimension combine freely.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Rational] = (0,)):
        self.coords = self._trim(tuple(to_fraction(c) for c in coords))

    @staticmethod
    def _trim(coords: tuple) -> tuple:
        # trailing zeros are dropped so equal values hash equally
        end = len(coords)
        while end > 1 and not coords[end - 1]:
            end -= 1
        return coords[:end] if end else (Fraction(0),)

    @classmethod
    def _raw(cls, coords: tuple) -> LexScalar:
        out = cls.__new__(cls)
        out.coords = cls._trim(coords)
        return out

    @classmethod
    def coerce(cls, value: LexScalar | Rational) -> LexScalar:
        return value if isinstance(value, LexScalar) else cls((value,))

    @property
    def base(self) -> Fraction:
        return self.coords[0]

    def coord(self, idx: int) -> Fraction:
        return self.coords[idx] if idx < len(self.coords) else Fraction(0)

    def _combine(self, other: LexScalar, sign: int) -> LexScalar:
        a, b = self.coords, other.coords
        if len(a) < len(b):
            a = a + (0,) * (len(b) - len(a))
        elif len(b) < len(a):
            b = b + (0,) * (len(a) - len(b))
        if sign > 0:
            return LexScalar._raw(tuple(x + y for x, y in zip(a, b)))
        return LexScalar._raw(tuple(x - y for x, y in zip(a, b)))

    def __add__(self, other):
        return self._combine(LexScalar.coerce(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(LexScalar.coerce(other), -1)

    def __rsub__(self, other):
        return LexScalar.coerce(other) - self

    def __neg__(self):
        return LexScalar._raw(tuple(-a for a in self.coords))

    def __mul__(self, scale):
        if isinstance(scale, LexScalar):
            raise TypeError("LexScalar only supports scaling by rationals")
        if not isinstance(scale, int):
            scale = to_fraction(scale)
        return LexScalar._raw(tuple(a * scale for a in self.coords))

    __rmul__ = __mul__

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def is_zero(self) -> bool:
        return self.sign() == 0

    def _cmp(self, other) -> int:
        a, b = self.coords, LexScalar.coerce(other).coords
        for t in range(max(len(a), len(b))):
            x = a[t] if t < len(a) else 0
            y = b[t] if t < len(b) else 0
            if x != y:
                return 1 if x > y else -1
        return 0

    def __eq__(self, other):
        if not isinstance(other, (LexScalar, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (LexScalar, int, Fraction)):
            return NotImplemented
        return self._cmp(other) < 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "LexScalar(" + ", ".join(fraction_str(c) for c in self.coords) + ")"

    def __str__(self):
        if len(self.coords) == 1:
            return fraction_str(self.base)
        terms = [fraction_str(self.base)]
        for t, c in enumerate(self.coords[1:], start=1):
            if c:
                terms.append(f"{fraction_str(c)}e{t}")
        return " + ".join(terms)


class Mode(enum.Enum):
    GENERIC = "generic"
    ROW = "row"
    ROW_PRIME = "row_prime"
    PLAIN = "plain"

    @property
    def perturbed(self) -> bool:
        return self is not Mode.PLAIN


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    TIE = 2  # distinct boxes at equal height, PLAIN mode only


class TieError(RuntimeError):
    """Two distinct boxes share a height under a datum that forbids it."""


@dataclass(frozen=True)
class SlopeDatum:
    omega: LexScalar
    omega_bar: LexScalar
    xi: tuple[LexScalar, ...]
    mode: Mode
    base_values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.xi:
            raise ValueError("a slope datum needs at least one component")
        for name, v in [("omega", self.omega), ("omega_bar", self.omega_bar)] + [
            (f"xi_{k}", x) for k, x in enumerate(self.xi, start=1)
        ]:
            if v.sign() <= 0:
                raise ValueError(f"slope entry {name}={v} must be positive")

    @property
    def ell(self) -> int:
        return len(self.xi)

    @property
    def K(self) -> LexScalar:
        return self.omega + self.omega_bar

    def xi_k(self, k: int) -> LexScalar:
        return self.xi[k - 1]

    def is_integral(self) -> bool:
        return all(q.denominator == 1 for q in self.base_values)

    def base_height(self, b: Box) -> Fraction:
        return height(self, b).base

    def to_dict(self) -> dict:
        omega, omega_bar, *xi = self.base_values
        return {
            "mode": self.mode.value,
            "omega": fraction_str(omega),
            "omega_bar": fraction_str(omega_bar),
            "xi": [fraction_str(x) for x in xi],
        }

    @classmethod
    def from_dict(cls, data: dict) -> SlopeDatum:
        try:
            mode = Mode(data.get("mode", "generic"))
            base = [data["omega"], data["omega_bar"], *data["xi"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed slope datum: {data!r}") from exc
        return make_datum(base, mode)

    def with_mode(self, mode: Mode) -> SlopeDatum:
        return make_datum(self.base_values, mode)

    def __str__(self) -> str:
        omega, omega_bar, *xi = (fraction_str(q) for q in self.base_values)
        return f"{self.mode.value}(omega={omega}, omega_bar={omega_bar}, xi=({', '.join(xi)}))"


def _base_tuple(base: Sequence[Rational]) -> tuple[Fraction, ...]:
    values = tuple(to_fraction(v) for v in base)
    if len(values) < 3:
        raise ValueError("base needs (omega, omega_bar, xi_1, ..., xi_l)")
    for v in values:
        if v <= 0:
            raise ValueError(f"slope entries must be positive, got {fraction_str(v)}")
    return values


def _base_aligned(values: tuple[Fraction, ...]) -> tuple[bool, bool]:
    """(strictly aligned, on the boundary) for the standard parts."""
    omega, omega_bar, *xi = values
    gap = max(xi) - min(xi)
    return gap < omega + omega_bar, gap == omega + omega_bar


def make_datum(base: Sequence[Rational], mode: Mode | str) -> SlopeDatum:
    """Attach the infinitesimal perturbation for ``mode`` to a rational base.

    Coordinate 1 carries the row direction: +1 on omega (ties favour the
    larger row) or -1 for ROW_PRIME (ties favour the smaller row).  Component
    infinitesimals sit in coordinates 2..l+1; ROW/GENERIC put xi_l highest so
    the larger component wins, ROW_PRIME puts xi_1 highest.
    """
    mode = Mode(mode)
    values = _base_tuple(base)
    omega, omega_bar, *xi = values
    ell = len(xi)
    if mode is Mode.PLAIN:
        return SlopeDatum(
            LexScalar((omega,)), LexScalar((omega_bar,)),
            tuple(LexScalar((x,)) for x in xi), mode, values,
        )
    _, boundary = _base_aligned(values)
    if boundary:
        raise ValueError(
            "base sits exactly on the alignment boundary; a perturbation "
            "could flip alignment, so perturbed modes reject it"
        )
    row_sign = -1 if mode is Mode.ROW_PRIME else 1
    width = ell + 2
    lex_xi = []
    for k, x in enumerate(xi, start=1):
        slot = (k + 1) if mode is Mode.ROW_PRIME else (ell - k + 2)
        coords = [x] + [0] * (width - 1)
        coords[slot] = 1
        lex_xi.append(LexScalar(coords))
    return SlopeDatum(
        LexScalar((omega, row_sign)),
        LexScalar((omega_bar,)),
        tuple(lex_xi),
        mode,
        values,
    )


def make_generic(base: Sequence[Rational]) -> SlopeDatum:
    return make_datum(base, Mode.GENERIC)


def make_row(base: Sequence[Rational]) -> SlopeDatum:
    return make_datum(base, Mode.ROW)


def make_row_prime(base: Sequence[Rational]) -> SlopeDatum:
    return make_datum(base, Mode.ROW_PRIME)


def make_plain(base: Sequence[Rational]) -> SlopeDatum:
    return make_datum(base, Mode.PLAIN)


def height(xi: SlopeDatum, b: Box) -> LexScalar:
    k, i, j = b
    if not 1 <= k <= xi.ell:
        raise ValueError(f"box {b} has component outside 1..{xi.ell}")
    return xi.xi[k - 1] + xi.omega * i + xi.omega_bar * j


def is_aligned(xi: SlopeDatum) -> bool:
    bound = xi.K
    return all(abs(a - b) < bound for a, b in itertools.combinations(xi.xi, 2))


def box_compare(xi: SlopeDatum, b: Box, other: Box) -> Order:
    """Compare two boxes by height.

    Raises TieError if a perturbed datum puts distinct boxes at equal height.
    """
    if tuple(b) == tuple(other):
        return Order.EQUAL
    s = (height(xi, b) - height(xi, other)).sign()
    if s > 0:
        return Order.GREATER
    if s < 0:
        return Order.LESS
    if xi.mode is Mode.PLAIN:
        return Order.TIE
    raise TieError(f"boxes {b} and {other} have equal height under {xi}")


def box_less(xi: SlopeDatum, b: Box, other: Box) -> bool:
    return box_compare(xi, b, other) is Order.LESS


def sort_by_height(xi: SlopeDatum, boxes: Iterable[Box], descending: bool = True) -> list[Box]:
    """Sort boxes by height; perturbed data must yield a strict order."""
    keyed = sorted(((height(xi, b), tuple(b)) for b in boxes), reverse=descending)
    if xi.mode.perturbed:
        for (h1, b1), (h2, b2) in zip(keyed, keyed[1:]):
            if h1 == h2:
                raise TieError(f"boxes {b1} and {b2} have equal height under {xi}")
    return [Box(*b) for _, b in keyed]
