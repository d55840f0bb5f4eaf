"""Synthetic parameterizing module with a distinguished element and an index functional.

The module is one block of length p^i + 1 holding the distinguished element
chi (length 1 when i = -inf), followed by d_k blocks of length p^k for each
k = 0..n. The index e of an element is its coordinate on the generator of the
chi block; it is only defined below length p^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

from . import linalg
from .fpg_algebra import Module, Submodule
from .extensions import CanonicalExtension
from .shapes import CapExceeded, MAX_DIM, PrimePower, ValidationError


class _Infinite:
    """Marker for an infinite dimension or an infinite number of solutions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinite, ())

    # ordering against ints: larger than every integer
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinite()


def is_inf(x: Any) -> bool:
    return x is INF


@dataclass(frozen=True)
class EnvironmentSpec:
    """Parameters of a synthetic environment.

    ``i_kf`` is None for -inf. ``d[k]`` is the number of blocks of length p^k
    (an int, or INF). ``strict`` enforces the standing hypothesis that n > 1
    when p = 2; the non-strict form is kept for ambient-only computations.
    """

    pp: PrimePower
    i_kf: int | None
    d: tuple
    char_p: bool = False
    strict: bool = True

    def __post_init__(self):
        p, n = self.pp.p, self.pp.n
        if self.strict and (p, n) == (2, 1):
            raise ValidationError("p = 2 requires n > 1 for an environment")
        if self.i_kf is not None and not 0 <= self.i_kf < n:
            raise ValidationError(f"i_kf={self.i_kf} must be -inf or in [0, {n - 1}]")
        if len(self.d) != n + 1:
            raise ValidationError(f"d must have n + 1 = {n + 1} entries, got {len(self.d)}")
        for x in self.d:
            if not (x is INF or (isinstance(x, int) and x >= 0)):
                raise ValidationError(f"multiplicity {x!r} must be a non-negative integer or inf")
        if self.char_p:
            if self.i_kf is not None:
                raise ValidationError("characteristic-p environments need i_kf = -inf")
            if any(x != 0 for x in self.d[:n]):
                raise ValidationError("characteristic-p environments only have free blocks")

    @property
    def chi_length(self) -> int:
        return 1 if self.i_kf is None else self.pp.p**self.i_kf + 1

    @property
    def is_finite(self) -> bool:
        return all(x is not INF for x in self.d)

    @property
    def dim(self):
        if not self.is_finite:
            return INF
        return self.chi_length + sum(m * self.pp.p**k for k, m in enumerate(self.d))

    def block_lengths(self) -> tuple[int, ...]:
        if not self.is_finite:
            raise ValidationError("infinite environment has no finite module")
        out = [self.chi_length]
        for k, m in enumerate(self.d):
            out += [self.pp.p**k] * m
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "p": self.pp.p,
            "n": self.pp.n,
            "i_kf": "-inf" if self.i_kf is None else self.i_kf,
            "d": ["inf" if x is INF else x for x in self.d],
            **({"char_p": True} if self.char_p else {}),
        }


def parse_env(obj: dict | str, strict: bool = True) -> EnvironmentSpec:
    """Build a spec from the JSON form {"p":3,"n":1,"i_kf":"-inf","d":[1,1]}."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"environment is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ValidationError("environment must be a JSON object")
    for key in ("p", "n", "i_kf", "d"):
        if key not in obj:
            raise ValidationError(f"environment is missing {key!r}")
    pp = PrimePower(int(obj["p"]), int(obj["n"]))
    raw = obj["i_kf"]
    if raw in ("-inf", "-infinity", None):
        i_kf = None
    elif isinstance(raw, int) or (isinstance(raw, str) and raw.lstrip("-").isdigit()):
        i_kf = int(raw)
    else:
        raise ValidationError(f"i_kf {raw!r} must be '-inf' or an integer")
    d = []
    for x in obj["d"]:
        if x in ("inf", "infinity"):
            d.append(INF)
        elif isinstance(x, int):
            d.append(x)
        else:
            raise ValidationError(f"multiplicity {x!r} must be an integer or 'inf'")
    return EnvironmentSpec(pp, i_kf, tuple(d), bool(obj.get("char_p", False)), strict)


class Environment:
    """A built environment: the module J together with its index functional."""

    def __init__(self, spec: EnvironmentSpec):
        self.spec = spec
        self.pp = spec.pp
        self.p = spec.pp.p
        self.N = spec.pp.order
        self._module: Module | None = None
        if spec.is_finite:
            if spec.dim > MAX_DIM:
                raise CapExceeded(f"environment dimension {spec.dim} exceeds {MAX_DIM}")
            self._module = Module(spec.pp, spec.block_lengths())

    @property
    def module(self) -> Module:
        if self._module is None:
            raise ValidationError("infinite environment: no finite module to enumerate or count in")
        return self._module

    @property
    def chi(self) -> tuple:
        return self.module.generator(0)

    @property
    def chi_length(self) -> int:
        return self.spec.chi_length

    def whole(self) -> Submodule:
        return self.module.whole()

    def index_e(self, v: Sequence[int]) -> int:
        if self.module.length(v) >= self.N:
            raise ValidationError("index is undefined for elements of length p^n")
        return v[0] % self.p

    @property
    def e_functional(self) -> tuple:
        """The index as a coordinate functional (valid below length p^n)."""
        return self.module.generator(0)


def build_env(spec: EnvironmentSpec) -> Environment:
    return Environment(spec)


def lambda_of(env: Environment, A: Submodule) -> int:
    """Least length below p^n of an element with nonzero index; p^n if none.

    For each L < p^n the elements of length at most L form A meet ker s^L, and
    some element there has nonzero index iff some basis vector does.
    """
    for L in range(1, env.N):
        for v in A.intersect_kernel(L):
            if v[0] % env.p:
                return L
    return env.N


def a0_submodule(env: Environment, A: Submodule) -> Submodule:
    """Elements of A of length below p^n with zero index.

    This set is closed under s (s clears the chi-generator coordinate), so it
    is a submodule; it is ker s^(p^n - 1) meet ker e meet A.
    """
    amb = A.ambient
    below = A.intersect_kernel(env.N - 1)
    not_e = linalg.rref([amb.basis_vector_flat(k) for k in range(1, amb.dim)], env.p)
    return Submodule(amb, linalg.intersect(below, not_e, env.p))


def a0_dims(env: Environment, A: Submodule) -> list[int]:
    return list(a0_submodule(env, A).filtration.deltas)


def galois_group_of(env: Environment, A: Submodule) -> CanonicalExtension:
    return CanonicalExtension(env.pp, A.shape, lambda_of(env, A))


def frak_d(spec: EnvironmentSpec, i: int):
    """Delta(J_i) minus the indicator of i being the chi length.

    Delta(J_i) counts blocks of length >= i, so this is [chi_length > i] plus
    the multiplicities d_k with p^k >= i; INF when any of those is infinite.
    """
    N = spec.pp.order
    if not 1 <= i <= N:
        raise ValidationError(f"index {i} outside [1, {N}]")
    total = 1 if spec.chi_length > i else 0
    for k, m in enumerate(spec.d):
        if spec.pp.p**k >= i:
            if m is INF:
                return INF
            total += m
    return total


def iter_desk_envs(pairs=((2, 2), (3, 1), (3, 2)), max_dim: int = 10, strict: bool = True):
    """Every finite environment with dim(J) <= max_dim over the given (p, n)."""
    for p, n in pairs:
        pp = PrimePower(p, n)
        for i_kf in [None] + list(range(n)):
            chi = 1 if i_kf is None else p**i_kf + 1
            budget = max_dim - chi
            if budget < 0:
                continue
            sizes = [p**k for k in range(n + 1)]

            def rec(k: int, left: int):
                if k == len(sizes):
                    yield ()
                    return
                for m in range(left // sizes[k] + 1):
                    for rest in rec(k + 1, left - m * sizes[k]):
                        yield (m,) + rest

            for d in rec(0, budget):
                yield EnvironmentSpec(pp, i_kf, d, strict=strict)


__all__ = [
    "INF",
    "Environment",
    "EnvironmentSpec",
    "a0_dims",
    "a0_submodule",
    "build_env",
    "frak_d",
    "galois_group_of",
    "is_inf",
    "iter_desk_envs",
    "lambda_of",
    "parse_env",
]
