from __future__ import annotations

from collections.abc import Iterable
from numbers import Integral

from .errors import InvalidFixingError, InvalidPartialSizeError
from .models.grasp import GraspConfig

Triplet = tuple[int, int, int]


def valid_index(value: object, n: int) -> bool:
    return isinstance(value, Integral) and not isinstance(value, bool) and 0 <= int(value) < n


def valid_facility_set(facilities: Iterable[object], n: int, p: int) -> bool:
    items = list(facilities)
    return (
        len(items) == p
        and len(set(items)) == p
        and all(valid_index(j, n) for j in items)
    )


def valid_triplet(triplet: Iterable[object], n: int) -> bool:
    items = tuple(triplet)
    return len(items) == 3 and all(valid_index(v, n) for v in items)


def validate_grasp_config(cfg: GraspConfig, p: int) -> None:
    if cfg.partial_size is not None and not 0 <= cfg.partial_size <= p:
        raise InvalidPartialSizeError()


def validate_fixings(triplets: Iterable[Triplet], n: int) -> list[Triplet]:
    out = []
    for t in triplets:
        if not valid_triplet(t, n):
            raise InvalidFixingError(f"invalid fixing {t!r} for n={n}")
        out.append((t[0], t[1], t[2]))
    return out
