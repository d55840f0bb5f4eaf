"""Prime-power contexts and module shapes (multisets of cyclic summand lengths)."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

MAX_ORDER = 2**16
MAX_DIM = 64


class ValidationError(ValueError):
    """Raised for inputs outside an operation's contract."""


class CapExceeded(ValidationError):
    """Raised when a computation would exceed a configured size cap."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class PrimePower:
    """The group G = <sigma> of order p**n acting on every module in play."""

    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValidationError(f"p={self.p} is not prime")
        if self.n < 1:
            raise ValidationError(f"n={self.n} must be >= 1")
        if self.p**self.n > MAX_ORDER:
            raise CapExceeded(f"p^n = {self.p}^{self.n} exceeds {MAX_ORDER}")

    @property
    def order(self) -> int:
        return self.p**self.n

    def __str__(self):
        return f"(p={self.p}, n={self.n})"


def ceil_log(i: int, p: int) -> int:
    """Smallest k with p**k >= i (i >= 1)."""
    k, q = 0, 1
    while q < i:
        q *= p
        k += 1
    return k


def floor_log(i: int, p: int) -> int:
    """Largest k with p**k <= i (i >= 1)."""
    k, q = 0, p
    while q <= i:
        q *= p
        k += 1
    return k


def is_p_power(i: int, p: int) -> bool:
    return i >= 1 and p ** ceil_log(i, p) == i


@dataclass(frozen=True)
class ModuleShape:
    """Isomorphism type of a finite F_p[G]-module: length -> multiplicity.

    Stored as a sorted tuple of (length, multiplicity) pairs with positive
    multiplicities, so equal shapes compare and hash equal.
    """

    items: tuple = field(default=())

    @classmethod
    def of(cls, lengths: Iterable[int] | Mapping[int, int]) -> "ModuleShape":
        if isinstance(lengths, Mapping):
            counts = Counter({int(k): int(v) for k, v in lengths.items()})
        else:
            counts = Counter(int(x) for x in lengths)
        for length, mult in counts.items():
            if length < 1:
                raise ValidationError(f"summand length {length} must be >= 1")
            if mult < 0:
                raise ValidationError(f"multiplicity {mult} of length {length} is negative")
        return cls(tuple(sorted((k, v) for k, v in counts.items() if v > 0)))

    @property
    def mult(self) -> dict[int, int]:
        return dict(self.items)

    def d(self, i: int) -> int:
        return self.mult.get(i, 0)

    @property
    def lengths(self) -> tuple[int, ...]:
        """Summand lengths in ascending order, repeated by multiplicity."""
        return tuple(k for k, v in self.items for _ in range(v))

    @property
    def rank(self) -> int:
        return sum(v for _, v in self.items)

    @property
    def dim(self) -> int:
        return sum(k * v for k, v in self.items)

    def max_length(self) -> int:
        return max((k for k, _ in self.items), default=0)

    def validate(self, pp: PrimePower) -> "ModuleShape":
        for k, _ in self.items:
            if k > pp.order:
                raise ValidationError(f"summand length {k} exceeds p^n = {pp.order}")
        return self

    def delta(self, i: int) -> int:
        """dim of the i-th socle filtration piece: sum of d_j over j >= i."""
        return sum(v for k, v in self.items if k >= i)

    def deltas(self, order: int) -> list[int]:
        return [self.delta(i) for i in range(1, order + 1)]

    def stats(self, pp: PrimePower) -> tuple[int, int, int, int]:
        return shape_stats(self, pp)

    def __str__(self):
        return render_shape(self)

    def __len__(self):
        return self.rank


def shape_stats(shape: ModuleShape, pp: PrimePower) -> tuple[int, int, int, int]:
    """(rank, free rank, non-free rank, F_p-dimension)."""
    free = shape.d(pp.order)
    return shape.rank, free, shape.rank - free, shape.dim


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_shape(text: str, pp: PrimePower | None = None) -> ModuleShape:
    """Parse ``"1^2,2,4"`` into {1: 2, 2: 1, 4: 1}.

    The empty string and ``"0"`` denote the zero module.
    """
    cleaned = "".join(text.split())
    if cleaned in ("", "0", "{}"):
        return ModuleShape()
    counts: Counter = Counter()
    for tok in cleaned.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise ValidationError(f"malformed shape token {tok!r}")
        length = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if length == 0:
            raise ValidationError(f"shape token {tok!r}: length must be >= 1")
        if pp is not None and length > pp.order:
            raise ValidationError(f"shape token {tok!r}: length {length} exceeds p^n = {pp.order}")
        counts[length] += mult
    return ModuleShape.of(counts)


def render_shape(shape: ModuleShape) -> str:
    if not shape.items:
        return "0"
    return ",".join(str(k) if v == 1 else f"{k}^{v}" for k, v in shape.items)


def iter_shapes(max_length: int, max_dim: int, min_dim: int = 0) -> Iterator[ModuleShape]:
    """All shapes with lengths in [1, max_length] and dim in [min_dim, max_dim]."""

    def rec(largest: int, remaining: int) -> Iterator[tuple[int, ...]]:
        yield ()
        for k in range(min(largest, remaining), 0, -1):
            for rest in rec(k, remaining - k):
                yield (k,) + rest

    for parts in rec(max_length, max_dim):
        if sum(parts) >= min_dim:
            yield ModuleShape.of(parts)


def valid_mus(shape: ModuleShape, pp: PrimePower) -> list[int]:
    """Non-free summand lengths of the shape, then p^n (the split type)."""
    return sorted({k for k, _ in shape.items if k < pp.order}) + [pp.order]


__all__ = [
    "CapExceeded",
    "ModuleShape",
    "PrimePower",
    "ValidationError",
    "ceil_log",
    "floor_log",
    "is_p_power",
    "iter_shapes",
    "parse_shape",
    "render_shape",
    "shape_stats",
    "valid_mus",
]

