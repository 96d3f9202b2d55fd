from __future__ import annotations

from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator


class FacilitySet(BaseModel):
    model_config = ConfigDict(frozen=True)

    open: tuple[NonNegativeInt, ...]

    @model_validator(mode="after")
    def _check_sorted(self) -> FacilitySet:
        if any(a >= b for a, b in zip(self.open, self.open[1:])):
            raise ValueError("facility indices must be sorted and distinct")
        return self

    @classmethod
    def of(cls, facilities: Iterable[int]) -> FacilitySet:
        return cls(open=tuple(sorted(set(facilities))))

    def __len__(self) -> int:
        return len(self.open)

    def __contains__(self, j: object) -> bool:
        return j in self.open


Couple = tuple[int, int]


class Column(BaseModel):
    """Master variable y_S^j: facility j serving the (client, position) couples S."""

    model_config = ConfigDict(frozen=True)

    facility: NonNegativeInt
    couples: tuple[tuple[NonNegativeInt, NonNegativeInt], ...]
    cost: NonNegativeInt

    @model_validator(mode="after")
    def _check_couples(self) -> Column:
        clients = [i for i, _ in self.couples]
        positions = [k for _, k in self.couples]
        if len(set(clients)) != len(clients):
            raise ValueError("couples share a client")
        if any(a >= b for a, b in zip(positions, positions[1:])):
            raise ValueError("couples must be sorted by strictly increasing position")
        return self

    @property
    def key(self) -> tuple[int, tuple[Couple, ...]]:
        return (self.facility, self.couples)
