from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from .._random import RandomStream
from ..errors import (
    ERR_BAD_MAGIC,
    DimensionMismatchError,
    InstanceFormatError,
    InvalidCardinalityError,
    InvalidInstanceError,
    NegativeEntryError,
)
from ..models.instance import Instance, RankMatrix, WeightsKind
from ._base import _Service

logger = logging.getLogger(__name__)

MAGIC = "DOMP 1"
SQUARE_SIDE = 400.0


def compute_ranks(inst: Instance) -> RankMatrix:
    """Rank every cost globally; equal costs are ordered by (i, j)."""
    n = inst.n
    flat = sorted(range(n * n), key=lambda f: (inst.costs[f // n][f % n], f))
    ranks = [[0] * n for _ in range(n)]
    for position, f in enumerate(flat, start=1):
        ranks[f // n][f % n] = position
    return RankMatrix(ranks=ranks)


def weights_preset(kind: WeightsKind | str, n: int, k: int | None = None) -> list[int]:
    kind = WeightsKind(kind)
    if kind is WeightsKind.MEDIAN:
        return [1] * n
    if kind is WeightsKind.CENTER:
        return [0] * (n - 1) + [1]
    if kind is WeightsKind.K_CENTRUM:
        k = n if k is None else k
        if not 1 <= k <= n:
            raise InvalidInstanceError(f"k-centrum size must lie in 1..{n}")
        return [0] * (n - k) + [1] * k
    raise InvalidInstanceError(f"weights kind {kind.value} has no preset")


def generate(
    n: int,
    p: int,
    seed: int,
    weights: WeightsKind | str | Sequence[int] = WeightsKind.RANDOM,
) -> Instance:
    """Random instance on points drawn uniformly in [0, 400]^2."""
    if n < 1 or not 1 <= p <= n:
        raise InvalidCardinalityError()
    rng = RandomStream(seed)
    points = [(rng.uniform(0.0, SQUARE_SIDE), rng.uniform(0.0, SQUARE_SIDE)) for _ in range(n)]
    costs = [[0] * n for _ in range(n)]
    for i, (xi, yi) in enumerate(points):
        for j, (xj, yj) in enumerate(points):
            if i != j:
                costs[i][j] = math.floor(math.hypot(xi - xj, yi - yj) + 0.5)
    smallest = min((costs[i][j] for i in range(n) for j in range(n) if i != j), default=0)
    for i in range(n):
        costs[i][i] = smallest

    if isinstance(weights, (str, WeightsKind)):
        kind = WeightsKind(weights)
        if kind is WeightsKind.RANDOM:
            lam = [rng.randint(n // 4, n) for _ in range(n)]
        else:
            lam = weights_preset(kind, n)
    else:
        lam = [int(w) for w in weights]
    return Instance(n=n, p=p, costs=costs, weights=lam)


def _ints(text: str, line: int) -> list[int]:
    try:
        values = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise InstanceFormatError(f"expected integers, got {text.strip()!r}", line=line) from exc
    if any(v < 0 for v in values):
        raise NegativeEntryError(line=line)
    return values


def parse(text: str) -> Instance:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or lines[0].strip() != MAGIC:
        raise InstanceFormatError(ERR_BAD_MAGIC, line=1)
    if len(lines) < 2:
        raise DimensionMismatchError("missing 'n p' line", line=2)
    header = _ints(lines[1], 2)
    if len(header) != 2:
        raise InstanceFormatError("expected 'n p'", line=2)
    n, p = header
    if n < 1 or not 1 <= p <= n:
        raise InvalidCardinalityError()
    body = lines[2:]
    if len(body) != n + 1:
        raise DimensionMismatchError(
            f"expected {n} cost rows and one weight row, found {len(body)} lines",
            line=len(lines),
        )
    costs = []
    for offset, raw in enumerate(body[:n]):
        row = _ints(raw, offset + 3)
        if len(row) != n:
            raise DimensionMismatchError(f"expected {n} costs, found {len(row)}", line=offset + 3)
        costs.append(row)
    weights = _ints(body[n], n + 3)
    if len(weights) != n:
        raise DimensionMismatchError(f"expected {n} weights, found {len(weights)}", line=n + 3)
    try:
        return Instance(n=n, p=p, costs=costs, weights=weights)
    except ValidationError as exc:
        raise InvalidInstanceError(str(exc)) from exc


def dumps(inst: Instance) -> str:
    rows = [MAGIC, f"{inst.n} {inst.p}"]
    rows.extend(" ".join(str(c) for c in row) for row in inst.costs)
    rows.append(" ".join(str(w) for w in inst.weights))
    return "\n".join(rows) + "\n"


class Instances(_Service):
    def generate(
        self,
        n: int,
        p: int,
        seed: int | None = None,
        weights: WeightsKind | str | Sequence[int] = WeightsKind.RANDOM,
    ) -> Instance:
        """Generate a random instance; the seed defaults to the configured one."""
        return generate(n, p, self.cfg.seed if seed is None else seed, weights)

    def load(self, path: str | Path) -> Instance:
        """Read an instance file."""
        inst = parse(Path(path).read_text(encoding="utf-8"))
        logger.debug("loaded instance n=%d p=%d from %s", inst.n, inst.p, path)
        return inst

    def save(self, inst: Instance, path: str | Path) -> None:
        """Write an instance file."""
        Path(path).write_text(dumps(inst), encoding="utf-8")

    def compute_ranks(self, inst: Instance) -> RankMatrix:
        return compute_ranks(inst)
