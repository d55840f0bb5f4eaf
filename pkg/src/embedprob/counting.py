"""Closed-form counts and solvability tests for embedding problems.

Every count is an exact Python int (or INF). Filtration data of the target
module M is always derived from its shape: Delta_M(i) is the number of summands
of length >= i and d_i the number of summands of length exactly i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .environment import INF, Environment, EnvironmentSpec, frak_d, lambda_of
from .extensions import CanonicalExtension
from .fpg_algebra import Submodule
from .shapes import ModuleShape, PrimePower, ValidationError, ceil_log, floor_log, is_p_power


def p_binom(a: int, b: int, p: int) -> int:
    """Number of b-dimensional subspaces of F_p^a; 0 outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    num = den = 1
    for k in range(b):
        num *= p ** (a - k) - 1
        den *= p ** (b - k) - 1
    return num // den


def count_flags(ambient: Sequence[int], target: Sequence[int], p: int) -> int:
    """Flags W_1 >= W_2 >= ... with W_i inside V_i and dim W_i = target[i-1].

    ``ambient[i-1]`` is dim V_i for a descending chain V_1 >= V_2 >= ...
    """
    if len(ambient) != len(target):
        raise ValidationError("ambient and target must have the same length")
    total = 1
    for i in range(len(target)):
        nxt = target[i + 1] if i + 1 < len(target) else 0
        total *= p_binom(ambient[i] - nxt, target[i] - nxt, p)
        if not total:
            return 0
    return total


@dataclass(frozen=True)
class AmbientProfile:
    """Filtration dimensions Delta(A_1..A_{p^n}) of an ambient A, and lambda(A)."""

    deltas: tuple
    lam: int

    def __post_init__(self):
        ds = self.deltas
        if any(ds[i] < ds[i + 1] for i in range(len(ds) - 1)) or any(x < 0 for x in ds):
            raise ValidationError(f"deltas {ds} must be non-negative and weakly decreasing")
        if not 1 <= self.lam <= len(ds):
            raise ValidationError(f"lambda={self.lam} outside [1, {len(ds)}]")

    def delta(self, i: int) -> int:
        return self.deltas[i - 1] if 1 <= i <= len(self.deltas) else 0

    @classmethod
    def of(cls, env: Environment, A: Submodule) -> "AmbientProfile":
        return cls(tuple(A.filtration.deltas), lambda_of(env, A))


def check_mu(M: ModuleShape, mu: int, pp: PrimePower) -> None:
    N = pp.order
    M.validate(pp)
    if mu != N and M.d(mu) == 0:
        raise ValidationError(f"mu={mu} must be p^n={N} or a summand length of {M}")


def _exact(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"closed form produced a non-integer {x}")
    return int(x)


def count_in_ambient(amb: AmbientProfile, M: ModuleShape, mu: int, pp: PrimePower) -> int:
    """Submodules U of A with U isomorphic to M and lambda(U) = mu."""
    check_mu(M, mu, pp)
    N, p, lam = pp.order, pp.p, amb.lam
    if len(amb.deltas) != N:
        raise ValidationError(f"profile has {len(amb.deltas)} deltas, expected {N}")
    if mu < lam:
        return 0
    dA = amb.delta
    dM = M.delta
    d = M.d

    def a0(i: int) -> int:
        # filtration of the trivial-index part, read off the ambient profile
        if i >= N:
            return 0
        return dA(i) - (1 if i == lam else 0)

    overcount = sum(d(i) * sum(dM(j) for j in range(1, i)) for i in range(1, N + 1))

    if mu == N:
        flags = p_binom(dA(N), dM(N), p)
        for i in range(1, N):
            flags *= p_binom(a0(i) - dM(i + 1), d(i), p)
        if not flags:
            return 0
        lifts = dM(N) * sum(dA(j) for j in range(1, N))
        lifts += sum(d(i) * sum(a0(j) for j in range(1, i)) for i in range(1, N))
        return _exact(flags * Fraction(p) ** (lifts - overcount))

    if mu == lam:
        first = p_binom(dA(lam) - dM(lam + 1), d(lam), p) - p_binom(a0(lam) - dM(lam + 1), d(lam), p)
        flags = first
        for i in range(1, N + 1):
            if i != lam:
                flags *= p_binom(dA(i) - dM(i + 1), d(i), p)
        if not flags:
            return 0
        lifts = sum(d(i) * sum(dA(j) for j in range(1, i)) for i in range(1, N + 1))
        return _exact(flags * Fraction(p) ** (lifts - overcount))

    # lam < mu < N
    flags = 1
    for i in range(1, N + 1):
        top = a0(i) if i < mu else dA(i)
        flags *= p_binom(top - dM(i + 1), d(i), p)
    if not flags:
        return 0

    def lift_exp(strict_mu: bool) -> int:
        total = 0
        for i in range(1, N + 1):
            cut = (i < mu) if strict_mu else (i <= mu)
            total += d(i) * (sum(dA(j) for j in range(1, i)) - (1 if lam < i and cut else 0))
        return total

    lifts = Fraction(p) ** lift_exp(True) - Fraction(p) ** lift_exp(False)
    return _exact(flags * lifts / Fraction(p) ** overcount)


def solvable(spec: EnvironmentSpec, M: ModuleShape, mu: int) -> bool:
    """Existence criterion over the environment, in per-index form."""
    pp = spec.pp
    check_mu(M, mu, pp)
    chi = spec.chi_length
    if mu < chi:
        return False
    for i in range(1, pp.order + 1):
        bound = frak_d(spec, i)
        if bound is INF:
            continue
        extra = 1 if (i == chi and chi == mu) else 0
        if M.delta(i) > bound + extra:
            return False
    return True


def solvable_coarse(spec: EnvironmentSpec, M: ModuleShape, mu: int) -> bool:
    """The same criterion checked only at 1 and at the points p^k + 1."""
    pp = spec.pp
    check_mu(M, mu, pp)
    chi = spec.chi_length

    def le(x: int, bound, extra: int) -> bool:
        return bound is INF or x <= bound + extra

    if not le(M.delta(1), frak_d(spec, 1), 1 if (spec.i_kf is None and mu == 1) else 0):
        return False
    for k in range(pp.n):
        extra = 1 if (spec.i_kf == k and chi == mu) else 0
        if not le(M.delta(pp.p**k + 1), frak_d(spec, pp.p ** (k + 1)), extra):
            return False
    return mu >= chi


def count_in_env(env: Environment, M: ModuleShape, mu: int):
    """Solutions over the environment: 0, an exact int, or INF.

    The zero module is the only solution for empty M, even when the
    environment is infinite.
    """
    spec = env.spec
    if not solvable(spec, M, mu):
        return 0
    if M.rank == 0:
        return 1
    if not spec.is_finite:
        return INF
    return count_in_ambient(AmbientProfile.of(env, env.whole()), M, mu, spec.pp)


def headline_count(spec: EnvironmentSpec, M: ModuleShape):
    """The compact headline product for the split problem, evaluated literally.

    Uses frak_d for the dimension invariants. Returns 0 when the split problem
    is unsolvable, INF for infinite environments, and otherwise the exact value
    of the product; a non-integral value is returned as a Fraction so that it
    can be reported rather than hidden.
    """
    pp = spec.pp
    N, p = pp.order, pp.p
    M.validate(pp)
    if any(frak_d(spec, i) is not INF and M.delta(i) > frak_d(spec, i) for i in range(1, N + 1)):
        return 0
    if not spec.is_finite:
        return INF
    chi = spec.chi_length
    D = lambda i: frak_d(spec, i)  # noqa: E731
    total = Fraction(1)
    for i in range(1, N + 1):
        di = M.d(i)
        total *= p_binom(D(i) - M.delta(i + 1) - (1 if i == chi else 0), di, p)
        exp = sum(D(j) - M.delta(j) - (1 if (j == chi and i == N) else 0) for j in range(1, i))
        total *= Fraction(p) ** (di * exp)
    return int(total) if total.denominator == 1 else total


# -- realization operators -----------------------------------------------------


def ceil_shape(S: ModuleShape, pp: PrimePower) -> ModuleShape:
    S.validate(pp)
    return ModuleShape.of(_merge((pp.p ** ceil_log(k, pp.p), v) for k, v in S.items))


def _merge(pairs) -> dict[int, int]:
    out: dict[int, int] = {}
    for k, v in pairs:
        out[k] = out.get(k, 0) + v
    return out


def floor_length(lam: int, p: int) -> int:
    """p^floor(log_p(lam - 1)) + 1, read as 1 when lam = 1."""
    return 1 if lam == 1 else p ** floor_log(lam - 1, p) + 1


def floor_shape(S: ModuleShape, lam: int, pp: PrimePower) -> tuple[ModuleShape, int]:
    """Lower the distinguished lam-summand, round every other summand up to a p-power."""
    S.validate(pp)
    N = pp.order
    if not 1 <= lam <= N:
        raise ValidationError(f"lambda={lam} outside [1, {N}]")
    if S.d(lam) == 0:
        what = "a free summand" if lam == N else f"a summand of length {lam}"
        raise ValidationError(f"shape {S} needs {what} for lambda={lam}")
    new_lam = floor_length(lam, pp.p)
    rest = dict(S.items)
    rest[lam] -= 1
    out = _merge([(pp.p ** ceil_log(k, pp.p), v) for k, v in rest.items() if v] + [(new_lam, 1)])
    return ModuleShape.of(out), new_lam


def auto_realize(S: ModuleShape, lam: int, pp: PrimePower) -> CanonicalExtension:
    if lam == pp.order:
        return CanonicalExtension(pp, ceil_shape(S, pp), pp.order)
    shape, new_lam = floor_shape(S, lam, pp)
    return CanonicalExtension(pp, shape, new_lam)


def is_excluded_form(S: ModuleShape, pp: PrimePower) -> bool:
    """Whether S is one block of length p^j + 1 (j = -inf gives 1) plus p-power blocks."""
    p, n = pp.p, pp.n
    special = {1} | {p**j + 1 for j in range(n)}
    for L in special:
        if S.d(L):
            rest = dict(S.items)
            rest[L] -= 1
            if all(is_p_power(k, p) for k, v in rest.items() if v):
                return True
    return False


def multiplicity_bound(S: ModuleShape, lam: int, k: int, pp: PrimePower, free_rank_reading: bool = False) -> int:
    """Lower bound on the number of solutions from k independent elements.

    Returns 1 when S has the excluded form. With ``free_rank_reading`` the
    exponent is capped at the free rank of S.
    """
    S.validate(pp)
    check_mu(S, lam, pp)
    if k < 0 or k > S.rank:
        raise ValidationError(f"k={k} must lie in [0, rk={S.rank}]")
    if is_excluded_form(S, pp):
        return 1
    if free_rank_reading:
        k = min(k, S.d(pp.order))
    return pp.p**k


__all__ = [
    "AmbientProfile",
    "auto_realize",
    "ceil_shape",
    "check_mu",
    "count_flags",
    "count_in_ambient",
    "count_in_env",
    "floor_length",
    "floor_shape",
    "headline_count",
    "is_excluded_form",
    "multiplicity_bound",
    "p_binom",
    "solvable",
    "solvable_coarse",
]
