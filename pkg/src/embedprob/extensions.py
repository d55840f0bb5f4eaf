"""Extensions of G = Z/p^n by F_p[G]-modules, realized with an explicit cocycle.

An element is a pair (a, j): a in the kernel module A, j in Z/p^n standing for
the j-th power of a fixed lift of sigma. Multiplication is

    (a, j)(b, k) = (a + sigma^j b + [j + k >= p^n] z, (j + k) mod p^n)

where z = sum_i c_i s^(l_i - 1) alpha_i is sigma-fixed, so the lift raised to
the p^n lands on z. Conjugating by the lift acts as sigma on the kernel.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .fpg_algebra import Module
from .shapes import CapExceeded, ModuleShape, PrimePower, ValidationError

GROUP_CAP = 2**20
TABLE_CAP = 2**12


@dataclass(frozen=True)
class ExtensionSpec:
    """The group generated by a lift of sigma and generators alpha_i of A.

    The generators are the cyclic blocks of ``shape`` in ascending length,
    and ``c[i]`` is the coefficient of s^(l_i - 1) alpha_i in the p^n-th power
    of the lift.
    """

    pp: PrimePower
    shape: ModuleShape
    c: tuple

    def __post_init__(self):
        self.shape.validate(self.pp)
        if len(self.c) != self.shape.rank:
            raise ValidationError(f"c has {len(self.c)} entries, shape has rank {self.shape.rank}")
        object.__setattr__(self, "c", tuple(int(x) % self.pp.p for x in self.c))

    @classmethod
    def split(cls, pp: PrimePower, shape: ModuleShape) -> "ExtensionSpec":
        return cls(pp, shape, (0,) * shape.rank)

    @property
    def lengths(self) -> tuple[int, ...]:
        return self.shape.lengths

    @property
    def order(self) -> int:
        return self.pp.order * self.pp.p ** self.shape.dim


@dataclass(frozen=True)
class CanonicalExtension:
    """The normal form: a kernel shape and the length lam carrying the lift relation.

    ``lam == p^n`` encodes the split (semidirect) group.
    """

    pp: PrimePower
    shape: ModuleShape
    lam: int

    def __post_init__(self):
        self.shape.validate(self.pp)
        if not 1 <= self.lam <= self.pp.order:
            raise ValidationError(f"lambda={self.lam} outside [1, {self.pp.order}]")
        if self.lam < self.pp.order and self.shape.d(self.lam) == 0:
            raise ValidationError(f"lambda={self.lam} is not a summand length of {self.shape}")

    @property
    def is_split(self) -> bool:
        return self.lam == self.pp.order

    def to_spec(self) -> ExtensionSpec:
        """A representative spec: c = 0, or the unit vector at the first block of length lam."""
        c = [0] * self.shape.rank
        if not self.is_split:
            c[self.shape.lengths.index(self.lam)] = 1
        return ExtensionSpec(self.pp, self.shape, tuple(c))

    def label(self) -> str:
        return "split" if self.is_split else f"lambda={self.lam}"


class ExtensionGroup:
    """Multiplication context for the extension described by an ExtensionSpec."""

    def __init__(self, spec: ExtensionSpec):
        if spec.order > GROUP_CAP:
            raise CapExceeded(f"group order {spec.order} exceeds {GROUP_CAP}")
        self.spec = spec
        self.pp = spec.pp
        self.p = spec.pp.p
        self.N = spec.pp.order
        self.module = Module(spec.pp, spec.lengths)
        z = [0] * self.module.dim
        for i, (L, ci) in enumerate(zip(spec.lengths, spec.c)):
            z[self.module.offsets[i] + L - 1] = ci
        self.z = tuple(z)
        self.kernel_size = self.p**self.module.dim
        self.order = self.kernel_size * self.N

    # -- scalar operations ------------------------------------------------------

    @property
    def identity(self) -> tuple:
        return (self.module.zero, 0)

    @property
    def lift(self) -> tuple:
        return (self.module.zero, 1)

    def kernel_element(self, a: Sequence[int]) -> tuple:
        return (self.module.check(a), 0)

    def gmul(self, g: tuple, h: tuple) -> tuple:
        (a, j), (b, k) = g, h
        self._check(g)
        self._check(h)
        sb = self.module.sigma(b, j)
        wrap = 1 if j + k >= self.N else 0
        p = self.p
        out = tuple((x + y + wrap * w) % p for x, y, w in zip(a, sb, self.z))
        return (out, (j + k) % self.N)

    def ginv(self, g: tuple) -> tuple:
        a, j = g
        self._check(g)
        k = (-j) % self.N
        wrap = 1 if j else 0
        back = self.module.sigma(a, k)
        p = self.p
        return (tuple((-x - wrap * w) % p for x, w in zip(back, self.z)), k)

    def power(self, g: tuple, e: int) -> tuple:
        out = self.identity
        base = g
        while e:
            if e & 1:
                out = self.gmul(out, base)
            base = self.gmul(base, base)
            e >>= 1
        return out

    def element_order(self, g: tuple) -> int:
        """Order by repeated multiplication."""
        cur, k = g, 1
        ident = self.identity
        while cur != ident:
            cur = self.gmul(cur, g)
            k += 1
        return k

    def _check(self, g: tuple):
        a, j = g
        if len(a) != self.module.dim or not 0 <= j < self.N:
            raise ValidationError(f"{g!r} is not an element of this group")

    def elements(self) -> Iterator[tuple]:
        for j in range(self.N):
            for a in product(range(self.p), repeat=self.module.dim):
                yield (a, j)

    # -- vectorized machinery ---------------------------------------------------

    @cached_property
    def digits(self) -> np.ndarray:
        """All kernel vectors, row r being the base-p digits of r (first coordinate most significant)."""
        d = self.module.dim
        r = np.arange(self.kernel_size, dtype=np.int64)
        out = np.zeros((self.kernel_size, d), dtype=np.int64)
        for k in range(d - 1, -1, -1):
            out[:, k] = r % self.p
            r //= self.p
        return out

    @cached_property
    def weights(self) -> np.ndarray:
        d = self.module.dim
        return np.array([self.p ** (d - 1 - k) for k in range(d)], dtype=np.int64)

    def sigma_matrix(self, j: int) -> np.ndarray:
        """Matrix S with S @ v = sigma^j v (columns are images of unit vectors)."""
        d = self.module.dim
        cols = [self.module.sigma(tuple(1 if t == k else 0 for t in range(d)), j) for k in range(d)]
        return np.array(cols, dtype=np.int64).T.reshape(d, d)

    def index(self, g: tuple) -> int:
        a, j = g
        r = 0
        for x in a:
            r = r * self.p + x
        return j * self.kernel_size + r

    def element_at(self, idx: int) -> tuple:
        j, r = divmod(idx, self.kernel_size)
        return (tuple(int(x) for x in self.digits[r]), j)

    def census(self) -> dict[int, int]:
        """Histogram of element orders, by the closed form for powers.

        (a, j)^m = (sum_{t<m} sigma^(jt) a + floor(jm / p^n) z, jm mod p^n);
        with m the order of j in Z/p^n the result lies in the kernel, so the
        order of (a, j) is m or p*m.
        """
        counts: Counter = Counter()
        D = self.digits
        z = np.array(self.z, dtype=np.int64)
        d = self.module.dim
        for j in range(self.N):
            m = self.N // gcd(j, self.N) if j else 1
            S = self.sigma_matrix(j)
            T = np.zeros((d, d), dtype=np.int64)
            P = np.eye(d, dtype=np.int64)
            for _ in range(m):
                T = (T + P) % self.p
                P = (S @ P) % self.p
            wraps = (j * m) // self.N
            X = (D @ T.T + wraps * z) % self.p if d else np.zeros((1, 0), dtype=np.int64)
            nonzero = int(np.count_nonzero(X.any(axis=1))) if d else 0
            counts[m] += self.kernel_size - nonzero
            if nonzero:
                counts[m * self.p] += nonzero
        return dict(sorted(counts.items()))

    def table(self) -> np.ndarray:
        """Full Cayley table on element indices j * |A| + r."""
        if self.order > TABLE_CAP:
            raise CapExceeded(f"Cayley table for order {self.order} exceeds {TABLE_CAP}")
        K, N = self.kernel_size, self.N
        D = self.digits
        z = np.array(self.z, dtype=np.int64)
        W = self.weights
        tab = np.empty((self.order, self.order), dtype=np.int32)
        rows = np.arange(K)
        for j in range(N):
            SD = (D @ self.sigma_matrix(j).T) % self.p  # sigma^j b for every b
            for k in range(N):
                wrap = 1 if j + k >= N else 0
                summ = (D[:, None, :] + SD[None, :, :] + wrap * z) % self.p
                idx = summ @ W if D.shape[1] else np.zeros((K, K), dtype=np.int64)
                tab[np.ix_(j * K + rows, k * K + rows)] = ((j + k) % N) * K + idx
        return tab


def build_group(spec: ExtensionSpec) -> ExtensionGroup:
    return ExtensionGroup(spec)


def order_census(group: ExtensionGroup) -> dict[int, int]:
    return group.census()


def canonicalize(spec: ExtensionSpec) -> CanonicalExtension:
    """Drop coefficients on free blocks; the smallest remaining length with c != 0 is lam."""
    N = spec.pp.order
    live = [L for L, ci in zip(spec.lengths, spec.c) if ci and L < N]
    return CanonicalExtension(spec.pp, spec.shape, min(live) if live else N)


def iso_types(shape: ModuleShape, pp: PrimePower) -> list[CanonicalExtension]:
    """Split type first, then one type per distinct non-free summand length."""
    shape.validate(pp)
    nonfree = sorted({k for k, _ in shape.items if k < pp.order})
    return [CanonicalExtension(pp, shape, pp.order)] + [CanonicalExtension(pp, shape, k) for k in nonfree]


def iso_type_counts(shape: ModuleShape, pp: PrimePower) -> tuple[int, int]:
    """(distinct non-free lengths + 1, non-free rank + 1)."""
    nonfree = [k for k in shape.lengths if k < pp.order]
    return len(set(nonfree)) + 1, len(nonfree) + 1


def same_embedding_problem(s1: ExtensionSpec, s2: ExtensionSpec) -> bool:
    if s1.pp != s2.pp:
        raise ValidationError("specs come from different (p, n) contexts")
    return s1.shape == s2.shape and canonicalize(s1).lam == canonicalize(s2).lam


# -- isomorphism search ---------------------------------------------------------


def find_isomorphism(g1: ExtensionGroup, g2: ExtensionGroup) -> dict | None:
    """Search for an isomorphism of embedding problems g1 -> g2.

    The map must commute with the projections to G, so the lift goes to some
    (b, 1) and each kernel generator alpha_i goes to a kernel element theta_i.
    Images are chosen by backtracking: b first, then the generators with
    c_i != 0 (after which the lift relation can be tested), then the rest by
    decreasing length. The theta_i must have the right exact lengths and their
    socle vectors must stay independent modulo the deeper socle pieces of the
    target, which is exactly the condition for the kernel map to be bijective.
    Returns {"b": b, "theta": [...]} or None.
    """
    if g1.pp != g2.pp or g1.spec.shape != g2.spec.shape:
        return None
    m1, m2 = g1.module, g2.module
    p, N = g1.p, g1.N
    lengths = g1.spec.lengths
    whole2 = m2.whole()
    filt = whole2.filtration
    deeper = {L: (filt.bases[L] if L < N else ()) for L in set(lengths)}
    by_length: dict[int, list[tuple]] = {L: [] for L in set(lengths)}
    all_vectors = list(product(range(p), repeat=m2.dim))
    for v in all_vectors:
        L = m2.length(v)
        if L in by_length:
            by_length[L].append(v)

    c1 = g1.spec.c
    order = sorted(range(len(lengths)), key=lambda i: (c1[i] == 0, -lengths[i], i))
    n_live = sum(1 for ci in c1 if ci)

    def relation_holds(b: tuple, theta: dict) -> bool:
        lhs = g2.power((b, 1), N)
        target = [0] * m2.dim
        for i, ci in enumerate(c1):
            if ci:
                soc = m2.apply_s(theta[i], lengths[i] - 1)
                for k, x in enumerate(soc):
                    target[k] += ci * x
        return lhs == (tuple(x % p for x in target), 0)

    for b in all_vectors:
        theta: dict[int, tuple] = {}
        socles: dict[int, tuple] = {L: deeper[L] for L in set(lengths)}
        if n_live == 0 and not relation_holds(b, theta):
            continue

        def extend(pos: int) -> bool:
            if pos == len(order):
                return True
            i = order[pos]
            L = lengths[i]
            base = socles[L]
            for v in by_length[L]:
                soc = m2.apply_s(v, L - 1)
                if linalg.in_span(soc, base, p):
                    continue
                theta[i] = v
                socles[L] = linalg.rref(list(base) + [soc], p)
                ok = True
                if pos + 1 == n_live and n_live:
                    ok = relation_holds(b, theta)
                if ok and extend(pos + 1):
                    return True
                socles[L] = base
                del theta[i]
            return False

        if extend(0):
            return {"b": b, "theta": [theta[i] for i in range(len(lengths))]}
    return None


def apply_isomorphism(g1: ExtensionGroup, g2: ExtensionGroup, iso: dict, g: tuple) -> tuple:
    """Image of g = (a, j) under the map built from iso: alpha-part is F_p[G]-linear, lift -> (b, 1)."""
    a, j = g
    m1, m2 = g1.module, g2.module
    img = [0] * m2.dim
    for i, (o, L) in enumerate(zip(m1.offsets, m1.lengths)):
        for k in range(L):
            c = a[o + k]
            if c:
                w = m2.apply_s(iso["theta"][i], k)
                for t, x in enumerate(w):
                    img[t] += c * x
    kernel_part = (tuple(x % g2.p for x in img), 0)
    return g2.gmul(kernel_part, g2.power((iso["b"], 1), j))


def check_isomorphism(g1: ExtensionGroup, g2: ExtensionGroup, iso: dict) -> bool:
    """Verify bijectivity and the homomorphism law on the full Cayley tables."""
    t1, t2 = g1.table(), g2.table()
    phi = np.array([g2.index(apply_isomorphism(g1, g2, iso, g1.element_at(x))) for x in range(g1.order)])
    if len(set(phi.tolist())) != g1.order:
        return False
    return bool(np.array_equal(phi[t1], t2[np.ix_(phi, phi)]))


__all__ = [
    "CanonicalExtension",
    "ExtensionGroup",
    "ExtensionSpec",
    "apply_isomorphism",
    "build_group",
    "canonicalize",
    "check_isomorphism",
    "find_isomorphism",
    "iso_type_counts",
    "iso_types",
    "order_census",
    "same_embedding_problem",
]
