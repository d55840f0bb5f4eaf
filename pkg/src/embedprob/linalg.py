"""Dense linear algebra over F_p on tuples of residues.

Vectors are tuples of ints in ``range(p)``. Subspaces are carried as their
reduced row echelon basis (a tuple of vectors), which doubles as a canonical,
hashable identity.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

Vec = tuple
Basis = tuple


def rref(rows: Iterable[Sequence[int]], p: int) -> Basis:
    """Reduced row echelon form with unit pivots and zero rows dropped."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    ncols = len(work[0])
    out: list[list[int]] = []
    for col in range(ncols):
        piv = None
        for i, r in enumerate(work):
            if r[col]:
                piv = i
                break
        if piv is None:
            continue
        row = work.pop(piv)
        inv = pow(row[col], -1, p)
        if inv != 1:
            row = [(v * inv) % p for v in row]
        for r in work:
            f = r[col]
            if f:
                for k in range(col, ncols):
                    if row[k]:
                        r[k] = (r[k] - f * row[k]) % p
        for r in out:
            f = r[col]
            if f:
                for k in range(col, ncols):
                    if row[k]:
                        r[k] = (r[k] - f * row[k]) % p
        out.append(row)
        if not work:
            break
    return tuple(tuple(r) for r in out)


def pivots(basis: Basis) -> list[int]:
    return [next(i for i, v in enumerate(r) if v) for r in basis]


def reduce(vec: Sequence[int], basis: Basis, p: int) -> Vec:
    """Reduce ``vec`` against an RREF basis; zero iff ``vec`` is in the span."""
    v = list(vec)
    for r, c in zip(basis, pivots(basis)):
        f = v[c]
        if f:
            for k in range(c, len(v)):
                if r[k]:
                    v[k] = (v[k] - f * r[k]) % p
    return tuple(v)


def in_span(vec: Sequence[int], basis: Basis, p: int) -> bool:
    return not any(reduce(vec, basis, p))


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p))


def add(u: Sequence[int], v: Sequence[int], p: int) -> Vec:
    return tuple((a + b) % p for a, b in zip(u, v))


def scale(c: int, v: Sequence[int], p: int) -> Vec:
    return tuple((c * a) % p for a in v)


def combo(coeffs: Sequence[int], vectors: Sequence[Sequence[int]], p: int, dim: int) -> Vec:
    out = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(x % p for x in out)


def solve(vectors: Sequence[Sequence[int]], target: Sequence[int], p: int) -> tuple[int, ...] | None:
    """Coefficients ``c`` with ``sum c_i v_i == target``, or None if unsolvable."""
    m = len(vectors)
    dim = len(target)
    # augmented rows [v_i | e_i]; track combinations through elimination
    rows = [list(v) + [1 if j == i else 0 for j in range(m)] for i, v in enumerate(vectors)]
    t = list(target) + [0] * m
    used = [False] * m
    for col in range(dim):
        piv = None
        for i, r in enumerate(rows):
            if not used[i] and r[col]:
                piv = i
                break
        if piv is None:
            continue
        used[piv] = True
        row = rows[piv]
        inv = pow(row[col], -1, p)
        row = [(v * inv) % p for v in row]
        rows[piv] = row
        for i, r in enumerate(rows):
            if i != piv and r[col]:
                f = r[col]
                rows[i] = [(a - f * b) % p for a, b in zip(r, row)]
        if t[col]:
            f = t[col]
            t = [(a - f * b) % p for a, b in zip(t, row)]
    if any(t[:dim]):
        return None
    # t = target - sum(coeffs * v) expressed in the tracking half as -coeffs
    return tuple((-x) % p for x in t[dim:])


def kernel(rows: Sequence[Sequence[int]], p: int) -> Basis:
    """Basis of the coefficient vectors c with sum c_i rows_i == 0."""
    m = len(rows)
    if not m:
        return ()
    dim = len(rows[0])
    aug = [tuple(r) + tuple(1 if j == i else 0 for j in range(m)) for i, r in enumerate(rows)]
    return rref((r[dim:] for r in rref(aug, p) if not any(r[:dim])), p)


def intersect(a: Basis, b: Basis, p: int) -> Basis:
    """Intersection of two subspaces (Zassenhaus)."""
    if not a or not b:
        return ()
    dim = len(a[0])
    rows = [tuple(u) + tuple(u) for u in a] + [tuple(w) + (0,) * dim for w in b]
    red = rref(rows, p)
    return rref((r[dim:] for r in red if not any(r[:dim])), p)


def sum_space(a: Basis, b: Basis, p: int) -> Basis:
    return rref(list(a) + list(b), p)


def complement(sub: Basis, sup: Basis, p: int) -> list[Vec]:
    """Vectors of ``sup`` extending a basis of ``sub`` to one of ``sup``.

    ``sub`` must be contained in ``sup``. The choice is deterministic.
    """
    cur = sub
    out = []
    for v in sup:
        if not in_span(v, cur, p):
            out.append(tuple(v))
            cur = rref(list(cur) + [v], p)
    return out


def iter_span(vectors: Sequence[Sequence[int]], p: int, dim: int) -> Iterator[Vec]:
    """Every element of the span, once each when ``vectors`` are independent."""
    for coeffs in product(range(p), repeat=len(vectors)):
        yield combo(coeffs, vectors, p, dim)


def iter_rref(dim: int, k: int, p: int) -> Iterator[Basis]:
    """Every k-dimensional subspace of F_p^dim, as its RREF basis."""
    if k == 0:
        yield ()
        return
    if k > dim:
        return
    for piv in combinations(range(dim), k):
        free = [(i, c) for i in range(k) for c in range(piv[i] + 1, dim) if c not in piv]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * dim for _ in range(k)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def gaussian_count(dim: int, k: int, p: int) -> int:
    """Number of k-subspaces of F_p^dim by direct enumeration count of RREF patterns."""
    if k < 0 or k > dim:
        return 0
    total = 0
    for piv in combinations(range(dim), k):
        free = sum(1 for i in range(k) for c in range(piv[i] + 1, dim) if c not in piv)
        total += p ** free
    return total
