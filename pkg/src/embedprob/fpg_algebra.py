"""Finite modules over F_p[G] for G cyclic of order p^n.

A module is a direct sum of cyclic blocks F_p[G]/(s^L) with s = sigma - 1.
Inside a block of length L the coordinates are taken in the basis
g, s*g, ..., s^(L-1)*g, so multiplication by s moves coordinate k to k+1 and
drops the last one. Elements are flat tuples holding all blocks in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .shapes import MAX_DIM, CapExceeded, ModuleShape, PrimePower, ValidationError, shape_stats


@dataclass(frozen=True)
class RingElement:
    """An element of F_p[G] = F_p[s]/(s^(p^n)), stored by its s-coefficients."""

    pp: PrimePower
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.pp.order:
            raise ValidationError(f"expected {self.pp.order} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(c % self.pp.p for c in self.coeffs))

    @classmethod
    def s_power(cls, pp: PrimePower, k: int) -> "RingElement":
        c = [0] * pp.order
        if k < pp.order:
            c[k] = 1
        return cls(pp, tuple(c))

    @classmethod
    def one(cls, pp: PrimePower) -> "RingElement":
        return cls.s_power(pp, 0)

    @classmethod
    def sigma_power(cls, pp: PrimePower, j: int) -> "RingElement":
        """sigma^j = (1 + s)^j, expanded binomially and truncated."""
        j %= pp.order
        c = [0] * pp.order
        binom = 1
        for k in range(min(j, pp.order - 1) + 1):
            c[k] = binom % pp.p
            binom = binom * (j - k) // (k + 1)
        return cls(pp, tuple(c))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.pp, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        n = self.pp.order
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return RingElement(self.pp, tuple(out))

    def _check(self, other: "RingElement"):
        if other.pp != self.pp:
            raise ValidationError("ring elements from different (p, n) contexts")


class Module:
    """Direct sum of cyclic F_p[G]-blocks with the given lengths."""

    def __init__(self, pp: PrimePower, lengths: Sequence[int]):
        lengths = tuple(int(x) for x in lengths)
        for L in lengths:
            if not 1 <= L <= pp.order:
                raise ValidationError(f"block length {L} outside [1, {pp.order}]")
        if sum(lengths) > MAX_DIM:
            raise CapExceeded(f"module dimension {sum(lengths)} exceeds {MAX_DIM}")
        self.pp = pp
        self.p = pp.p
        self.lengths = lengths
        offs, acc = [], 0
        for L in lengths:
            offs.append(acc)
            acc += L
        self.offsets = tuple(offs)
        self.dim = acc

    @classmethod
    def from_shape(cls, pp: PrimePower, shape: ModuleShape) -> "Module":
        return cls(pp, shape.lengths)

    def __repr__(self):
        return f"Module(p={self.p}, n={self.pp.n}, lengths={self.lengths})"

    def __eq__(self, other):
        return isinstance(other, Module) and other.pp == self.pp and other.lengths == self.lengths

    def __hash__(self):
        return hash((self.pp, self.lengths))

    # -- elements -----------------------------------------------------------

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def basis_vector(self, block: int, k: int = 0) -> tuple:
        """s^k applied to the generator of ``block``."""
        v = [0] * self.dim
        if k < self.lengths[block]:
            v[self.offsets[block] + k] = 1
        return tuple(v)

    def basis_vector_flat(self, k: int) -> tuple:
        """The k-th standard coordinate vector."""
        return tuple(1 if t == k else 0 for t in range(self.dim))

    def generator(self, block: int) -> tuple:
        return self.basis_vector(block, 0)

    def element(self, blocks: Sequence[Sequence[int]]) -> tuple:
        """Assemble an element from per-block coordinate vectors."""
        if len(blocks) != len(self.lengths):
            raise ValidationError(f"expected {len(self.lengths)} blocks, got {len(blocks)}")
        out: list[int] = []
        for L, coords in zip(self.lengths, blocks):
            if len(coords) != L:
                raise ValidationError(f"block of length {L} given {len(coords)} coordinates")
            out.extend(c % self.p for c in coords)
        return tuple(out)

    def split(self, v: Sequence[int]) -> list[tuple]:
        return [tuple(v[o : o + L]) for o, L in zip(self.offsets, self.lengths)]

    def check(self, v: Sequence[int]) -> tuple:
        if len(v) != self.dim:
            raise ValidationError(f"element has {len(v)} coordinates, module has {self.dim}")
        return tuple(v)

    # -- the action ---------------------------------------------------------

    def apply_s(self, v: Sequence[int], k: int = 1) -> tuple:
        """s^k * v: shift every block k places toward its tail."""
        if k == 0:
            return tuple(v)
        out = [0] * self.dim
        for o, L in zip(self.offsets, self.lengths):
            for i in range(L - k):
                out[o + i + k] = v[o + i]
        return tuple(out)

    def poly_apply(self, f: RingElement, v: Sequence[int]) -> tuple:
        if f.pp != self.pp:
            raise ValidationError("ring element and module come from different (p, n) contexts")
        v = self.check(v)
        acc = [0] * self.dim
        cur = v
        for k, c in enumerate(f.coeffs):
            if k:
                cur = self.apply_s(cur)
            if not any(cur):
                break
            if c:
                for i, x in enumerate(cur):
                    if x:
                        acc[i] += c * x
        return tuple(x % self.p for x in acc)

    def sigma(self, v: Sequence[int], j: int = 1) -> tuple:
        return self.poly_apply(RingElement.sigma_power(self.pp, j), v)

    def length(self, v: Sequence[int]) -> int:
        """Smallest l with s^l v = 0; 0 for the identity."""
        best = 0
        for o, L in zip(self.offsets, self.lengths):
            for i in range(L):
                if v[o + i]:
                    best = max(best, L - i)
                    break
        return best

    # -- distinguished subspaces -------------------------------------------

    @cached_property
    def socle(self) -> tuple:
        """Basis of ker s (the G-fixed vectors): the tail coordinate of each block."""
        return linalg.rref([self.basis_vector(b, L - 1) for b, L in enumerate(self.lengths)], self.p)

    def kernel_s_power(self, k: int) -> tuple:
        """Basis of ker s^k: the last k coordinates of each block."""
        rows = []
        for b, L in enumerate(self.lengths):
            for i in range(max(0, L - k), L):
                rows.append(self.basis_vector(b, i))
        return linalg.rref(rows, self.p)

    def whole(self) -> "Submodule":
        return Submodule(self, linalg.rref([self.basis_vector(b, i) for b, L in enumerate(self.lengths) for i in range(L)], self.p))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, ())


@dataclass(frozen=True)
class Submodule:
    """A sigma-stable subspace, identified by its canonical RREF basis."""

    ambient: Module
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.ambient.p

    def contains(self, v: Sequence[int]) -> bool:
        return linalg.in_span(v, self.basis, self.p)

    def image_s(self, k: int) -> tuple:
        """Basis of s^k A (the span of s^k applied to a basis of A)."""
        return linalg.rref([self.ambient.apply_s(b, k) for b in self.basis], self.p)

    def intersect_kernel(self, k: int) -> tuple:
        return linalg.intersect(self.basis, self.ambient.kernel_s_power(k), self.p)

    def is_stable(self) -> bool:
        return all(self.contains(self.ambient.apply_s(b)) for b in self.basis)

    def elements(self):
        return linalg.iter_span(self.basis, self.p, self.ambient.dim)

    @cached_property
    def filtration(self) -> "Filtration":
        return filtration(self)

    @property
    def shape(self) -> ModuleShape:
        return self.filtration.shape

    def __le__(self, other: "Submodule") -> bool:
        return all(other.contains(b) for b in self.basis)


def span(ambient: Module, gens: Iterable[Sequence[int]]) -> Submodule:
    """Smallest submodule containing ``gens``."""
    rows = []
    for g in gens:
        g = ambient.check(g)
        while any(g):
            rows.append(g)
            g = ambient.apply_s(g)
    return Submodule(ambient, linalg.rref(rows, ambient.p) if rows else ())


@dataclass(frozen=True)
class Filtration:
    """The socle pieces V_i = s^(i-1) A meet ker s, for i = 1..p^n."""

    deltas: tuple
    bases: tuple

    def delta(self, i: int) -> int:
        return self.deltas[i - 1] if 1 <= i <= len(self.deltas) else 0

    @property
    def shape(self) -> ModuleShape:
        n = len(self.deltas)
        return ModuleShape.of({i: self.delta(i) - self.delta(i + 1) for i in range(1, n + 1)})


def filtration(A: Submodule) -> Filtration:
    amb = A.ambient
    bases = []
    cur = A.basis
    for i in range(1, amb.pp.order + 1):
        if i > 1:
            cur = linalg.rref([amb.apply_s(b) for b in cur], amb.p)
        bases.append(linalg.intersect(cur, amb.socle, amb.p) if cur else ())
    return Filtration(tuple(len(b) for b in bases), tuple(bases))


def preimage(A: Submodule, x: Sequence[int], k: int) -> tuple | None:
    """Some v in A with s^k v = x, or None."""
    amb = A.ambient
    images = [amb.apply_s(b, k) for b in A.basis]
    coeffs = linalg.solve(images, x, amb.p)
    if coeffs is None:
        return None
    return linalg.combo(coeffs, A.basis, amb.p, amb.dim)


def decompose(A: Submodule) -> tuple[ModuleShape, list[tuple]]:
    """Cyclic generators whose spans sum directly to A.

    For each level i the socle piece V_i is split as V_{i+1} plus a
    complement; every complement vector x is pulled back to v with
    s^(i-1) v = x. Generators come out ordered by ascending length.
    """
    filt = A.filtration
    N = A.ambient.pp.order
    p = A.p
    gens: list[tuple] = []
    for i in range(N, 0, -1):
        upper = filt.bases[i] if i < N else ()
        for x in linalg.complement(upper, filt.bases[i - 1], p):
            v = preimage(A, x, i - 1)
            if v is None:
                raise RuntimeError(f"no preimage at level {i}: submodule invariant broken")
            gens.append(v)
    gens.reverse()
    return filt.shape, gens


__all__ = [
    "Filtration",
    "Module",
    "RingElement",
    "Submodule",
    "decompose",
    "filtration",
    "preimage",
    "shape_stats",
    "span",
]
