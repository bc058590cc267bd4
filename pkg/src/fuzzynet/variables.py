"""Variables: the values attributes take, keyed by procedure.

Two flavors:

* ``SystemVariable`` — crisp-ish machine knowledge: each related procedure
  gets a single membership degree in [0, 1].
* ``UserVariable`` — linguistic user knowledge: each procedure gets a level
  profile (partial map from interpretation levels to trapezoids).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import DegenerateInputError, InvalidMembershipError
from .membership import InterpretationLevel, LevelProfile, quantize_down
from .sets import DiscreteFuzzySet

__all__ = ["SystemVariable", "UserVariable"]


@dataclass(frozen=True)
class SystemVariable:
    """Degrees per procedure, stored sorted by procedure id."""

    degrees: tuple[tuple[str, float], ...]

    def __post_init__(self):
        seen = set()
        cleaned = []
        for proc, degree in self.degrees:
            if proc in seen:
                raise InvalidMembershipError(f"duplicate procedure {proc!r} in system variable")
            seen.add(proc)
            degree = float(degree)
            if not 0.0 <= degree <= 1.0:
                raise InvalidMembershipError(
                    f"degree for procedure {proc!r} out of [0, 1]: {degree}"
                )
            cleaned.append((str(proc), degree))
        if not cleaned:
            raise DegenerateInputError("a system variable needs at least one procedure")
        object.__setattr__(self, "degrees", tuple(sorted(cleaned)))

    @classmethod
    def of(cls, degrees: Mapping[str, float]) -> "SystemVariable":
        return cls(tuple(degrees.items()))

    @property
    def procedures(self) -> tuple[str, ...]:
        return tuple(proc for proc, _ in self.degrees)

    def degree(self, proc: str) -> float:
        for member, value in self.degrees:
            if member == proc:
                return value
        return 0.0

    def __iter__(self) -> Iterator[tuple[str, float]]:
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def as_fuzzy_set(self) -> DiscreteFuzzySet:
        return DiscreteFuzzySet(self.degrees)


@dataclass(frozen=True)
class UserVariable:
    """Level profiles per procedure, stored sorted by procedure id."""

    profiles: tuple[tuple[str, LevelProfile], ...]

    def __post_init__(self):
        seen = set()
        cleaned = []
        for proc, profile in self.profiles:
            if proc in seen:
                raise InvalidMembershipError(f"duplicate procedure {proc!r} in user variable")
            seen.add(proc)
            if not isinstance(profile, LevelProfile):
                raise InvalidMembershipError(
                    f"profile for procedure {proc!r} is not a level profile: {profile!r}"
                )
            cleaned.append((str(proc), profile))
        if not cleaned:
            raise DegenerateInputError("a user variable needs at least one procedure")
        object.__setattr__(self, "profiles", tuple(sorted(cleaned)))

    @classmethod
    def of(cls, profiles: Mapping[str, LevelProfile]) -> "UserVariable":
        return cls(tuple(profiles.items()))

    @property
    def procedures(self) -> tuple[str, ...]:
        return tuple(proc for proc, _ in self.profiles)

    def profile(self, proc: str) -> LevelProfile | None:
        for member, value in self.profiles:
            if member == proc:
                return value
        return None

    def __iter__(self) -> Iterator[tuple[str, LevelProfile]]:
        return iter(self.profiles)

    def __len__(self) -> int:
        return len(self.profiles)

    def centroids(self, decimals: int | None = 2) -> dict[str, dict[InterpretationLevel, float]]:
        """Centroid per (procedure, level).

        ``decimals`` truncates each centroid the way published score tables
        do; pass ``None`` for full precision.
        """
        out: dict[str, dict[InterpretationLevel, float]] = {}
        for proc, profile in self.profiles:
            row: dict[InterpretationLevel, float] = {}
            for level, mf in profile:
                value = mf.centroid()
                if decimals is not None:
                    value = quantize_down(value, decimals)
                row[level] = value
            out[proc] = row
        return out

    def with_profile(self, proc: str, profile: LevelProfile) -> "UserVariable":
        kept = tuple((p, prof) for p, prof in self.profiles if p != proc)
        return UserVariable(kept + ((str(proc), profile),))
