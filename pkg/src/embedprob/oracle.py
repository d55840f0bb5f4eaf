"""Brute-force enumeration used to certify the closed forms.

Two enumerators are kept independent on purpose:

* ``enum_submodules`` walks the whole submodule lattice upward from zero,
  adding one line of the preimage s^-1(U) at a time;
* ``enum_solutions`` builds candidates the structured way: choose an
  admissible flag of socle pieces, then lift every flag vector to a generator,
  deduplicating partial modules by their canonical basis.

Neither shares counting logic with ``counting``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .counting import AmbientProfile, check_mu, count_in_ambient
from .environment import Environment, EnvironmentSpec, a0_submodule, build_env, iter_desk_envs, lambda_of
from .extensions import ExtensionGroup, ExtensionSpec, find_isomorphism, check_isomorphism, iso_types
from .fpg_algebra import Module, Submodule
from .shapes import CapExceeded, ModuleShape, PrimePower, ValidationError, iter_shapes, valid_mus

LATTICE_DIM_CAP = 8
LATTICE_COUNT_CAP = 200_000
DEFAULT_BUDGET = 200_000
AXIOM_ORDER_CAP = 512


# -- naive lattice walk -----------------------------------------------------------


def _preimage_space(U: tuple, A: Submodule) -> tuple:
    """Basis of {v in A : s v in U}."""
    amb, p = A.ambient, A.p
    if not A.basis:
        return ()
    reduced = [linalg.reduce(amb.apply_s(b), U, p) for b in A.basis]
    ker = linalg.kernel(reduced, p)
    return linalg.rref([linalg.combo(c, A.basis, p, amb.dim) for c in ker], p) if ker else ()


def enum_submodules(A: Submodule, count_cap: int = LATTICE_COUNT_CAP) -> list[Submodule]:
    """Every sigma-stable subspace of A, in order of dimension then basis."""
    p = A.p
    if A.dim > LATTICE_DIM_CAP and p ** A.dim > 3**LATTICE_DIM_CAP:
        raise CapExceeded(f"lattice walk needs dim <= {LATTICE_DIM_CAP}, got {A.dim}")
    seen = {()}
    layer = [()]
    while layer:
        nxt = set()
        for U in layer:
            P = _preimage_space(U, A)
            Q = linalg.complement(U, P, p)
            # one representative per line of P/U: first nonzero coefficient 1
            for coeffs in product(range(p), repeat=len(Q)):
                nz = next((c for c in coeffs if c), 0)
                if nz != 1:
                    continue
                v = linalg.combo(coeffs, Q, p, A.ambient.dim)
                W = linalg.rref(list(U) + [v], p)
                if W not in seen:
                    seen.add(W)
                    nxt.add(W)
                    if len(seen) > count_cap:
                        raise CapExceeded(f"more than {count_cap} submodules")
        layer = sorted(nxt)
    return [Submodule(A.ambient, b) for b in sorted(seen, key=lambda b: (len(b), b))]


def naive_solutions(env: Environment, A: Submodule, M: ModuleShape, mu: int) -> list[Submodule]:
    check_mu(M, mu, env.pp)
    return [U for U in enum_submodules(A) if U.shape == M and lambda_of(env, U) == mu]


# -- structured flag-then-lift enumeration ---------------------------------------


def _flags(levels: list[tuple], dims: list[int], p: int, avoid: tuple | None, avoid_level: int | None):
    """Descending flags W_i inside levels[i-1] with dim W_i = dims[i-1].

    Yields a list of per-level complements B_i (vectors extending W_{i+1} to
    W_i). ``avoid`` excludes flags whose W at ``avoid_level`` lies inside it.
    """
    N = len(levels)
    out_B: list[list[tuple]] = [[] for _ in range(N)]

    def rec(i: int, upper: tuple) -> Iterator[list[list[tuple]]]:
        if i == 0:
            yield out_B
            return
        S = levels[i - 1]
        if any(not linalg.in_span(v, S, p) for v in upper):
            return
        k = dims[i - 1] - len(upper)
        Q = linalg.complement(upper, S, p)
        if k < 0 or k > len(Q):
            return
        dim = len(S[0]) if S else 0
        for sub in linalg.iter_rref(len(Q), k, p):
            new = [linalg.combo(row, Q, p, dim) for row in sub]
            W = linalg.rref(list(upper) + new, p) if (upper or new) else ()
            if avoid_level == i and all(linalg.in_span(w, avoid, p) for w in W):
                continue
            out_B[i - 1] = new
            yield from rec(i - 1, W)
        out_B[i - 1] = []

    yield from rec(N, ())


def enum_solutions(
    env: Environment,
    A: Submodule,
    M: ModuleShape,
    mu: int,
    budget: int | None = DEFAULT_BUDGET,
    stop_after: int | None = None,
) -> list[Submodule]:
    """All U inside A with U isomorphic to M and lambda(U) = mu.

    ``budget`` caps the number of search nodes (CapExceeded beyond it);
    ``stop_after`` returns early once that many solutions are known.
    """
    pp = env.pp
    check_mu(M, mu, pp)
    N, p = pp.order, pp.p
    amb = A.ambient
    lam = lambda_of(env, A)
    if mu < lam:
        return []
    A0 = a0_submodule(env, A)
    AF, A0F = A.filtration.bases, A0.filtration.bases

    def allowed(i: int) -> tuple:
        if mu == N:
            return A0F[i - 1] if i < N else AF[N - 1]
        return A0F[i - 1] if i < mu else AF[i - 1]

    levels = [allowed(i) for i in range(1, N + 1)]
    dims = [M.delta(i) for i in range(1, N + 1)]
    avoid_level = lam if (mu == lam and lam < N) else None
    avoid = A0F[lam - 1] if avoid_level else None

    not_e = linalg.rref([amb.basis_vector_flat(k) for k in range(1, amb.dim)], p)
    K = {i: A.intersect_kernel(i - 1) if i > 1 else () for i in range(1, N + 1)}
    K0 = {i: linalg.intersect(K[i], not_e, p) if K[i] else () for i in K}

    found: dict[tuple, Submodule] = {}
    nodes = 0

    for B in _flags(levels, dims, p, avoid, avoid_level):
        gens = []  # (level, base lift, candidate space)
        for i in range(N, 0, -1):
            need_e0 = i < mu and i < N
            source = A0 if need_e0 else A
            for x in B[i - 1]:
                base = _lift(source, x, i - 1)
                if base is None:
                    raise RuntimeError("admissible flag vector has no lift: invariant broken")
                gens.append((base, K0[i] if need_e0 else K[i]))
        visited: set = set()
        stack = [(0, ())]
        while stack:
            pos, U = stack.pop()
            if (pos, U) in visited:
                continue
            visited.add((pos, U))
            nodes += 1
            if budget is not None and nodes > budget:
                raise CapExceeded(f"enumeration exceeded {budget} search nodes")
            if pos == len(gens):
                if U not in found:
                    cand = Submodule(amb, U)
                    if cand.shape == M and lambda_of(env, cand) == mu:
                        found[U] = cand
                        if stop_after is not None and len(found) >= stop_after:
                            return list(found.values())
                continue
            base, C = gens[pos]
            inside = linalg.intersect(C, U, p) if (C and U) else ()
            reps = linalg.complement(inside, C, p)
            for coeffs in product(range(p), repeat=len(reps)):
                alpha = linalg.add(base, linalg.combo(coeffs, reps, p, amb.dim), p)
                stack.append((pos + 1, _grow(amb, U, alpha)))
    return sorted(found.values(), key=lambda U: U.basis)


def _lift(S: Submodule, x: Sequence[int], k: int) -> tuple | None:
    amb = S.ambient
    images = [amb.apply_s(b, k) for b in S.basis]
    c = linalg.solve(images, x, amb.p) if images else None
    if c is None:
        return None
    return linalg.combo(c, S.basis, amb.p, amb.dim)


def _grow(amb: Module, U: tuple, alpha: tuple) -> tuple:
    rows = list(U)
    v = alpha
    while any(v):
        rows.append(v)
        v = amb.apply_s(v)
    return linalg.rref(rows, amb.p)


# -- definitional sweeps ------------------------------------------------------------


def lambda_by_sweep(env: Environment, A: Submodule) -> int:
    best = env.N
    amb = A.ambient
    for v in A.elements():
        L = amb.length(v)
        if 0 < L < best and v[0] % env.p:
            best = L
    return best


def a0_dims_by_sweep(env: Environment, A: Submodule) -> list[int]:
    """Delta of the trivial-index part, straight from its definition as a set of elements."""
    amb, p, N = A.ambient, env.p, env.N
    S = [v for v in A.elements() if amb.length(v) < N and v[0] % p == 0]
    fixed = {v for v in S if not any(amb.apply_s(v))}
    out = []
    image = S
    for i in range(1, N + 1):
        if i > 1:
            image = [amb.apply_s(v) for v in image]
        common = fixed.intersection(image)
        size = len(common)
        dim = 0
        while p**dim < size:
            dim += 1
        if p**dim != size:
            raise RuntimeError("fixed part of the image is not a subspace")
        out.append(dim)
    return out


def brute_force_flags(ambient: Sequence[int], target: Sequence[int], p: int) -> int:
    """Count flags by listing subspaces of the coordinate chain V_i = first ambient[i-1] axes."""
    if len(ambient) != len(target):
        raise ValidationError("ambient and target must have the same length")
    dim = ambient[0] if ambient else 0
    n = len(ambient)
    spaces = [linalg.rref([tuple(1 if t == k else 0 for t in range(dim)) for k in range(a)], p) for a in ambient]

    def rec(i: int, upper: tuple) -> int:
        if i < 0:
            return 1
        total = 0
        for W in linalg.iter_rref(dim, target[i], p) if target[i] >= 0 else ():
            if all(linalg.in_span(w, spaces[i], p) for w in W) and all(linalg.in_span(u, W, p) for u in upper):
                total += rec(i - 1, W)
        return total

    return rec(n - 1, ())


# -- verification reports --------------------------------------------------------------


@dataclass
class VerificationReport:
    case: str
    closed_form: object
    enumerated: object
    witnesses: list = field(default_factory=list)
    naive: object = None
    status: str = "match"

    def __post_init__(self):
        self.status = "match" if self.closed_form == self.enumerated else "mismatch"

    @property
    def naive_agrees(self) -> bool | None:
        return None if self.naive is None else self.naive == self.enumerated


def case_label(spec: EnvironmentSpec, M: ModuleShape, mu: int) -> str:
    ikf = "-inf" if spec.i_kf is None else str(spec.i_kf)
    d = "/".join(str(x) for x in spec.d)
    return f"p={spec.pp.p} n={spec.pp.n} i_kf={ikf} d={d} M={M} mu={mu}"


def verify_counts(
    env: Environment,
    A: Submodule,
    M: ModuleShape,
    mu: int,
    closed_form: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
    naive: bool = False,
) -> VerificationReport:
    """Compare the closed form with the structured enumeration (and optionally the lattice walk).

    ``closed_form`` overrides the computed closed form; it exists so the
    harness can be tested against a deliberately wrong value.
    """
    cf = count_in_ambient(AmbientProfile.of(env, A), M, mu, env.pp) if closed_form is None else closed_form
    sols = enum_solutions(env, A, M, mu, budget=budget)
    nv = len(naive_solutions(env, A, M, mu)) if naive else None
    return VerificationReport(case_label(env.spec, M, mu), cf, len(sols), [U.basis for U in sols], nv)


def verify_group_axioms(group: ExtensionGroup | ExtensionSpec) -> bool:
    """Exhaustive check: associativity on all triples, identity, inverses, conjugation."""
    G = group if isinstance(group, ExtensionGroup) else ExtensionGroup(group)
    if G.order > AXIOM_ORDER_CAP:
        raise CapExceeded(f"exhaustive axiom check needs order <= {AXIOM_ORDER_CAP}, got {G.order}")
    T = G.table()
    n = G.order
    ids = np.arange(n)
    if not (np.array_equal(T[0], ids) and np.array_equal(T[:, 0], ids)):
        return False
    inv = np.array([G.index(G.ginv(G.element_at(x))) for x in range(n)])
    if not (np.all(T[ids, inv] == 0) and np.all(T[inv, ids] == 0)):
        return False
    for a in range(n):
        if not np.array_equal(T[T[a]], T[a][T]):
            return False
    K = G.kernel_size
    lift, lift_inv = K, G.index(G.ginv(G.lift))
    S1 = G.sigma_matrix(1)
    moved = (G.digits @ S1.T) % G.p
    expected = moved @ G.weights if G.module.dim else np.zeros(K, dtype=np.int64)
    got = T[T[lift, np.arange(K)], lift_inv]
    return bool(np.array_equal(got, expected))


def distinguish_iso_types(shape: ModuleShape, pp: PrimePower) -> bool:
    """Whether the listed types are pairwise non-isomorphic as embedding problems."""
    types = iso_types(shape, pp)
    groups = [ExtensionGroup(t.to_spec()) for t in types]
    if any(g.order > AXIOM_ORDER_CAP for g in groups):
        raise CapExceeded(f"isomorphism search needs order <= {AXIOM_ORDER_CAP}")
    for i, gi in enumerate(groups):
        for j, gj in enumerate(groups):
            iso = find_isomorphism(gi, gj)
            if i == j:
                if iso is None or not check_isomorphism(gi, gj, iso):
                    return False
            elif iso is not None:
                return False
    return True


# -- the desk matrix --------------------------------------------------------------------


def desk_envs(max_env_dim: int = 10, include_ambient: bool = True) -> list[EnvironmentSpec]:
    envs = list(iter_desk_envs(max_dim=max_env_dim))
    if include_ambient:
        envs += list(iter_desk_envs(pairs=((2, 1),), max_dim=max_env_dim, strict=False))
    return envs


def desk_cases(max_env_dim: int = 10, max_module_dim: int = 6, include_ambient: bool = True):
    """(environment spec, M, mu) over the whole desk matrix."""
    for spec in desk_envs(max_env_dim, include_ambient):
        N = spec.pp.order
        for M in iter_shapes(N, max_module_dim):
            for mu in valid_mus(M, spec.pp):
                yield spec, M, mu


__all__ = [
    "VerificationReport",
    "a0_dims_by_sweep",
    "brute_force_flags",
    "case_label",
    "desk_cases",
    "desk_envs",
    "distinguish_iso_types",
    "enum_solutions",
    "enum_submodules",
    "lambda_by_sweep",
    "naive_solutions",
    "verify_counts",
    "verify_group_axioms",
]
