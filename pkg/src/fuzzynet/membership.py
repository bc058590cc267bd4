"""Trapezoidal membership functions, interpretation levels, and level profiles.

The universe of truth degrees is [0, 1].  A membership function is encoded by
its four corners [a, b, c, d]: linear rise on [a, b], plateau at 1 on [b, c],
linear fall on [c, d], zero outside [a, d].  Triangles are the b == c case.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import DegenerateInputError, InvalidMembershipError, UnknownLevelError

__all__ = [
    "InterpretationLevel",
    "TrapezoidMF",
    "LevelProfile",
    "DEFAULT_LEVEL_FUNCTIONS",
    "default_levels",
    "defuzzify_profile",
    "quantize_down",
    "round_nearest",
]


class InterpretationLevel(IntEnum):
    """Five truth grades, totally ordered from weakest to strongest.

    Five is the discrimination sweet spot for human raters: fewer levels are
    too coarse, more become indistinguishable.
    """

    NOT_TRUE = 1
    LITTLE_TRUE = 2
    HALF_TRUE = 3
    RATHER_TRUE = 4
    QUITE_TRUE = 5

    @property
    def key(self) -> str:
        """Wire name, e.g. ``"half_true"``."""
        return self.name.lower()

    @classmethod
    def from_key(cls, key: str) -> "InterpretationLevel":
        try:
            return cls[str(key).upper()]
        except KeyError:
            raise UnknownLevelError(
                f"unknown interpretation level {key!r}; expected one of "
                + ", ".join(level.key for level in cls),
                entity=str(key),
            ) from None


@dataclass(frozen=True)
class TrapezoidMF:
    """A trapezoidal membership function on [0, 1], immutable after construction."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidMembershipError(f"corner {name} is not a number: {value!r}")
            object.__setattr__(self, name, float(value))
        if math.isnan(self.a) or math.isnan(self.b) or math.isnan(self.c) or math.isnan(self.d):
            raise InvalidMembershipError(f"corner is NaN in {self.corners}")
        if not (0.0 <= self.a <= self.b <= self.c <= self.d <= 1.0):
            raise InvalidMembershipError(
                f"corner order violated: need 0 <= a <= b <= c <= d <= 1, got {list(self.corners)}"
            )

    @classmethod
    def from_corners(cls, corners: Iterable[float]) -> "TrapezoidMF":
        values = list(corners)
        if len(values) != 4:
            raise InvalidMembershipError(f"expected 4 corners, got {len(values)}: {values!r}")
        return cls(*values)

    @property
    def corners(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def evaluate(self, x: float) -> float:
        """Membership degree of ``x``.

        Zero-width edges behave as inclusive steps: the plateau endpoints
        always evaluate to 1.
        """
        if x < self.a or x > self.d:
            return 0.0
        if self.b <= x <= self.c:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.d - x) / (self.d - self.c)

    __call__ = evaluate

    def centroid(self) -> float:
        """Center of gravity, in closed form.

        Integrates x * mu(x) / integral of mu over the support.  A zero-area
        function (a == b == c == d) collapses to its location ``a`` so that
        degenerate learned shapes stay defuzzifiable.
        """
        a, b, c, d = self.a, self.b, self.c, self.d
        area2 = (c + d) - (a + b)
        if area2 <= 0.0:
            return a
        moment6 = (b - a) * (a + 2.0 * b) + 3.0 * (c * c - b * b) + (d - c) * (d + 2.0 * c)
        return moment6 / (3.0 * area2)

    def blend_toward(self, anchor: "TrapezoidMF", rate: float) -> "TrapezoidMF":
        """Move every corner linearly toward ``anchor`` by ``rate`` in (0, 1].

        The blend of two valid trapezoids is again a valid trapezoid, so the
        result never violates corner order.
        """
        if not 0.0 < rate <= 1.0:
            raise DegenerateInputError(f"blend rate must be in (0, 1], got {rate}")
        keep = 1.0 - rate
        return TrapezoidMF(
            keep * self.a + rate * anchor.a,
            keep * self.b + rate * anchor.b,
            keep * self.c + rate * anchor.c,
            keep * self.d + rate * anchor.d,
        )


@dataclass(frozen=True)
class LevelProfile:
    """Partial map from interpretation levels to membership functions.

    Deliberately partial: a description rarely uses all five levels.  Entries
    are kept sorted by level order.
    """

    entries: tuple[tuple[InterpretationLevel, TrapezoidMF], ...]

    def __post_init__(self):
        if not self.entries:
            raise DegenerateInputError("a level profile needs at least one level")
        levels = [level for level, _ in self.entries]
        if len(set(levels)) != len(levels):
            raise InvalidMembershipError(f"duplicate levels in profile: {levels}")
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: e[0])))

    @classmethod
    def of(
        cls,
        functions: Mapping[InterpretationLevel, TrapezoidMF]
        | Iterable[tuple[InterpretationLevel, TrapezoidMF]],
    ) -> "LevelProfile":
        if isinstance(functions, Mapping):
            pairs = tuple(functions.items())
        else:
            pairs = tuple(functions)
        return cls(pairs)

    @property
    def levels(self) -> tuple[InterpretationLevel, ...]:
        return tuple(level for level, _ in self.entries)

    def __iter__(self) -> Iterator[tuple[InterpretationLevel, TrapezoidMF]]:
        return iter(self.entries)

    def __contains__(self, level: InterpretationLevel) -> bool:
        return any(entry_level == level for entry_level, _ in self.entries)

    def __getitem__(self, level: InterpretationLevel) -> TrapezoidMF:
        for entry_level, mf in self.entries:
            if entry_level == level:
                return mf
        raise KeyError(level)

    def get(self, level: InterpretationLevel) -> TrapezoidMF | None:
        for entry_level, mf in self.entries:
            if entry_level == level:
                return mf
        return None

    def dominant_level(self) -> InterpretationLevel:
        """The strongest level present."""
        return self.entries[-1][0]

    def with_function(self, level: InterpretationLevel, mf: TrapezoidMF) -> "LevelProfile":
        """Copy of this profile with ``level`` set (replaced or inserted)."""
        kept = tuple((lv, f) for lv, f in self.entries if lv != level)
        return LevelProfile(kept + ((level, mf),))


#: Default membership function per level.  The strongest level is a right
#: shoulder; its upper corner is clamped to 1 because the universe of truth
#: degrees ends there and the shoulder never descends inside the domain.
DEFAULT_LEVEL_FUNCTIONS: Mapping[InterpretationLevel, TrapezoidMF] = MappingProxyType(
    {
        InterpretationLevel.NOT_TRUE: TrapezoidMF(0.0, 0.0, 0.2, 0.4),
        InterpretationLevel.LITTLE_TRUE: TrapezoidMF(0.2, 0.4, 0.4, 0.6),
        InterpretationLevel.HALF_TRUE: TrapezoidMF(0.4, 0.6, 0.6, 0.8),
        InterpretationLevel.RATHER_TRUE: TrapezoidMF(0.6, 0.8, 0.8, 1.0),
        InterpretationLevel.QUITE_TRUE: TrapezoidMF(0.8, 1.0, 1.0, 1.0),
    }
)


def default_levels() -> LevelProfile:
    """Profile holding the default function for all five levels."""
    return LevelProfile.of(DEFAULT_LEVEL_FUNCTIONS)


def defuzzify_profile(profile: LevelProfile) -> dict[InterpretationLevel, float]:
    """Per-level centroid map; levels absent from the profile stay absent."""
    return {level: mf.centroid() for level, mf in profile}


def quantize_down(value: float, decimals: int = 2) -> float:
    """Truncate toward zero at ``decimals`` places, ignoring float noise.

    Published centroid tables in this domain truncate rather than round
    (0.8667 prints as 0.86); inclusion and similarity reproduce those tables
    by quantizing centroids this way before combining them.
    """
    scale = 10.0 ** decimals
    return math.floor(round(value * scale, 6)) / scale


def round_nearest(value: float, decimals: int = 2) -> float:
    """Round half-to-even at ``decimals`` places (matches numpy's rint)."""
    scale = 10.0 ** decimals
    return round(value * scale) / scale
