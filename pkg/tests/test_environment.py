from __future__ import annotations

import random

import pytest

from embedprob.environment import (
    INF,
    EnvironmentSpec,
    a0_dims,
    build_env,
    frak_d,
    galois_group_of,
    iter_desk_envs,
    lambda_of,
    parse_env,
)
from embedprob.fpg_algebra import span
from embedprob.oracle import a0_dims_by_sweep, lambda_by_sweep
from embedprob.shapes import ModuleShape, PrimePower, ValidationError


def test_construction_examples(env_p3):
    assert env_p3.module.lengths == (1, 1, 3)
    assert lambda_of(env_p3, env_p3.whole()) == 1
    e = build_env(EnvironmentSpec(PrimePower(2, 2), 0, (0, 0, 1)))
    assert e.module.lengths == (2, 4)
    with pytest.raises(ValidationError):
        EnvironmentSpec(PrimePower(2, 1), None, (1, 1))


def test_index_functional(env_p3):
    M = env_p3.module
    assert env_p3.index_e(env_p3.chi) == 1
    assert env_p3.index_e(M.generator(1)) == 0
    assert env_p3.index_e(M.basis_vector(2, 1)) == 0
    with pytest.raises(ValidationError):
        env_p3.index_e(M.generator(2))


def test_lambda_examples(env_p3):
    M = env_p3.module
    assert lambda_of(env_p3, span(M, [env_p3.chi])) == 1
    assert lambda_of(env_p3, span(M, [M.generator(2)])) == 3
    mixed = tuple((a + b) % 3 for a, b in zip(env_p3.chi, M.generator(1)))
    assert lambda_of(env_p3, span(M, [mixed])) == 1


def test_a0_dims_example(env_p3):
    A = env_p3.whole()
    assert A.filtration.deltas == (3, 1, 1)
    assert a0_dims(env_p3, A) == [2, 1, 0]
    free = span(env_p3.module, [env_p3.module.generator(2)])
    assert a0_dims(env_p3, free) == [1, 1, 0]


def test_galois_group_examples(env_p3):
    M = env_p3.module
    t = galois_group_of(env_p3, span(M, [env_p3.chi]))
    assert (t.shape, t.lam) == (ModuleShape.of([1]), 1)
    t = galois_group_of(env_p3, span(M, [M.generator(2)]))
    assert (t.shape, t.lam) == (ModuleShape.of([3]), 3) and t.is_split
    t = galois_group_of(env_p3, span(M, [env_p3.chi, M.generator(2)]))
    assert (t.shape, t.lam) == (ModuleShape.of([1, 3]), 1)


def test_frak_d_examples(env_p3):
    spec = env_p3.spec
    assert [frak_d(spec, i) for i in (1, 2, 3)] == [2, 1, 1]
    assert frak_d(EnvironmentSpec(PrimePower(3, 1), None, (INF, 1)), 1) is INF
    assert frak_d(EnvironmentSpec(PrimePower(3, 1), None, (INF, 1)), 2) == 1


def test_frak_d_constant_on_p_adic_ranges():
    for spec in iter_desk_envs():
        p, n = spec.pp.p, spec.pp.n
        for k in range(n):
            vals = {frak_d(spec, i) for i in range(p**k + 1, p ** (k + 1) + 1)}
            assert len(vals) == 1


def test_parse_env_forms():
    spec = parse_env('{"p":3,"n":1,"i_kf":"-inf","d":[1,"inf"]}')
    assert spec.i_kf is None and spec.d == (1, INF) and not spec.is_finite
    assert parse_env(spec.to_json()) == spec
    for bad in ('{"p":3,"n":1,"i_kf":1,"d":[1,1]}', '{"p":3,"n":1,"d":[1,1]}', "[1]", "{", '{"p":3,"n":1,"i_kf":"x","d":[1,1]}'):
        with pytest.raises(ValidationError):
            parse_env(bad)
    with pytest.raises(ValidationError):
        build_env(spec).module


def test_char_p_validation():
    EnvironmentSpec(PrimePower(3, 1), None, (0, 2), char_p=True)
    with pytest.raises(ValidationError):
        EnvironmentSpec(PrimePower(3, 1), None, (1, 2), char_p=True)


def test_structural_invariants_match_definitional_sweeps():
    rng = random.Random(7)
    envs = [build_env(s) for s in iter_desk_envs(max_dim=7)]
    for _ in range(150):
        env = rng.choice(envs)
        M = env.module
        A = span(M, [tuple(rng.randrange(env.p) for _ in range(M.dim)) for _ in range(2)])
        assert lambda_of(env, A) == lambda_by_sweep(env, A)
        assert a0_dims(env, A) == a0_dims_by_sweep(env, A)


def test_desk_env_count():
    assert len(list(iter_desk_envs())) == 198
    assert all(s.dim <= 10 for s in iter_desk_envs())
