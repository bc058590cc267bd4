"""Discrete fuzzy sets over arbitrary hashable element ids."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import DegenerateInputError, InvalidMembershipError

__all__ = ["DiscreteFuzzySet", "inclusion_degree"]


@dataclass(frozen=True)
class DiscreteFuzzySet:
    """A fuzzy set stored as sorted (element, degree) pairs.

    Elements with degree 0 are kept if given; sortedness makes iteration
    order (and therefore floating point accumulation order) deterministic.
    """

    members: tuple[tuple[str, float], ...]

    def __post_init__(self):
        seen = set()
        cleaned = []
        for element, degree in self.members:
            if element in seen:
                raise InvalidMembershipError(f"duplicate element {element!r} in fuzzy set")
            seen.add(element)
            degree = float(degree)
            if not 0.0 <= degree <= 1.0:
                raise InvalidMembershipError(
                    f"membership degree for {element!r} out of [0, 1]: {degree}"
                )
            cleaned.append((str(element), degree))
        object.__setattr__(self, "members", tuple(sorted(cleaned)))

    @classmethod
    def of(cls, degrees: Mapping[str, float]) -> "DiscreteFuzzySet":
        return cls(tuple(degrees.items()))

    @property
    def elements(self) -> tuple[str, ...]:
        return tuple(element for element, _ in self.members)

    def degree(self, element: str) -> float:
        """Membership of ``element``; elements outside the support have degree 0."""
        for member, value in self.members:
            if member == element:
                return value
        return 0.0

    def __iter__(self) -> Iterator[tuple[str, float]]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def inclusion_degree(a: DiscreteFuzzySet, b: DiscreteFuzzySet) -> float:
    """Degree to which ``a`` is contained in ``b``.

    Sum of min(a(x), b(x)) over a's support, normalized by the sum of a's
    degrees.  Elements of ``b`` outside a's support are irrelevant; elements
    of ``a`` missing from ``b`` count as 0 in the numerator, which is what
    drags the score below 1.
    """
    if len(a) == 0:
        raise DegenerateInputError("inclusion of an empty fuzzy set is undefined")
    numerator = 0.0
    denominator = 0.0
    for element, degree in a:
        numerator += min(degree, b.degree(element))
        denominator += degree
    if denominator <= 0.0:
        raise DegenerateInputError(
            "inclusion is undefined for a set whose degrees are all zero"
        )
    return numerator / denominator
