from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from embedprob import linalg
from embedprob.counting import AmbientProfile, count_flags, count_in_ambient
from embedprob.environment import EnvironmentSpec, build_env, iter_desk_envs, lambda_of
from embedprob.fpg_algebra import Module, span
from embedprob.oracle import (
    brute_force_flags,
    enum_solutions,
    enum_submodules,
    naive_solutions,
    verify_counts,
)
from embedprob.shapes import CapExceeded, ModuleShape, PrimePower, iter_shapes, valid_mus

S = ModuleShape.of
P21 = PrimePower(2, 1)


def test_enum_submodules_examples():
    assert [U.basis for U in enum_submodules(Module(P21, ()).whole())] == [()]
    assert len(enum_submodules(Module(P21, (2,)).whole())) == 3
    assert len(enum_submodules(Module(P21, (1, 1)).whole())) == 5


def test_enum_submodules_are_stable_and_distinct():
    subs = enum_submodules(Module(PrimePower(3, 1), (1, 3)).whole())
    assert len({U.basis for U in subs}) == len(subs)
    assert all(U.is_stable() for U in subs)


def test_enum_submodules_cap():
    with pytest.raises(CapExceeded):
        enum_submodules(Module(PrimePower(3, 2), (9, 1)).whole())


def test_enum_solutions_examples(env_p2_ambient):
    A = env_p2_ambient.whole()
    assert A.filtration.deltas == (3, 1)
    assert len(enum_solutions(env_p2_ambient, A, S([2]), 2)) == 4
    lines = enum_solutions(env_p2_ambient, A, S([1]), 1)
    assert len(lines) == 4
    assert all(env_p2_ambient.index_e(U.basis[0]) for U in lines)


def test_mu_below_lambda_gives_nothing(env_p3):
    assert enum_solutions(env_p3, env_p3.whole(), S([1]), 1) != []
    env = build_env(EnvironmentSpec(PrimePower(3, 2), 0, (0, 1, 0)))
    assert lambda_of(env, env.whole()) == 2
    assert enum_solutions(env, env.whole(), S([1]), 1) == []


def test_witnesses_recomputed_from_scratch(env_p3):
    rep = verify_counts(env_p3, env_p3.whole(), S([1, 3]), 1)
    assert rep.status == "match"
    for basis in rep.witnesses:
        U = span(env_p3.module, basis)
        assert U.basis == basis and U.is_stable()
        assert U.shape == S([1, 3]) and lambda_of(env_p3, U) == 1


def test_perturbed_closed_form_is_a_mismatch(env_p3):
    rep = verify_counts(env_p3, env_p3.whole(), S([1]), 3, closed_form=5)
    assert rep.status == "mismatch" and rep.enumerated == 4


def test_empty_module_counts_once(env_p3):
    rep = verify_counts(env_p3, env_p3.whole(), S([]), 3, naive=True)
    assert rep.status == "match" and rep.enumerated == 1 and rep.naive == 1


def test_two_enumerators_agree_on_small_envs():
    envs = [build_env(s) for s in iter_desk_envs(max_dim=5)]
    envs.append(build_env(EnvironmentSpec(P21, 0, (1, 1), strict=False)))
    for env in envs:
        A = env.whole()
        subs = enum_submodules(A)
        for M in iter_shapes(env.N, 4):
            for mu in valid_mus(M, env.pp):
                fast = [U.basis for U in enum_solutions(env, A, M, mu)]
                slow = [U.basis for U in subs if U.shape == M and lambda_of(env, U) == mu]
                assert sorted(fast) == sorted(slow)
                assert len(fast) == count_in_ambient(AmbientProfile.of(env, A), M, mu, env.pp)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_submodule_ambients(seed):
    rng = random.Random(seed)
    envs = list(iter_desk_envs(max_dim=7))
    env = build_env(rng.choice(envs))
    M0 = env.module
    A = span(M0, [tuple(rng.randrange(env.p) for _ in range(M0.dim)) for _ in range(2)])
    prof = AmbientProfile.of(env, A)
    for M in iter_shapes(env.N, 3):
        for mu in valid_mus(M, env.pp):
            assert len(enum_solutions(env, A, M, mu)) == count_in_ambient(prof, M, mu, env.pp)


def test_canonical_basis_dedup_criterion(env_p3):
    """Two generator lists give the same canonical basis iff each lies in the other's span."""
    M = env_p3.module
    rng = random.Random(3)
    for _ in range(100):
        g1 = [tuple(rng.randrange(3) for _ in range(M.dim))]
        g2 = [tuple(rng.randrange(3) for _ in range(M.dim))]
        U1, U2 = span(M, g1), span(M, g2)
        mutual = all(U2.contains(g) for g in g1) and all(U1.contains(g) for g in g2)
        assert (U1.basis == U2.basis) == mutual


def test_brute_force_flags_examples():
    assert brute_force_flags((2, 1), (1, 0), 2) == 3
    assert brute_force_flags((2, 1), (1, 1), 2) == 1
    assert brute_force_flags((2, 1), (2, 2), 2) == 0
    assert brute_force_flags((3, 2, 1), (2, 1, 1), 3) == count_flags((3, 2, 1), (2, 1, 1), 3)


def test_cap_on_enumeration_budget(env_p3):
    with pytest.raises(CapExceeded):
        enum_solutions(env_p3, env_p3.whole(), S([1, 3]), 1, budget=3)
    assert len(enum_solutions(env_p3, env_p3.whole(), S([1, 3]), 1, stop_after=2)) == 2
    assert linalg.rank([(1, 0), (0, 1)], 3) == 2
