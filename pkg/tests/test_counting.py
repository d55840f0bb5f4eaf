from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from embedprob.counting import (
    AmbientProfile,
    auto_realize,
    ceil_shape,
    count_flags,
    count_in_ambient,
    count_in_env,
    floor_shape,
    headline_count,
    is_excluded_form,
    multiplicity_bound,
    p_binom,
    solvable,
    solvable_coarse,
)
from embedprob.environment import INF, EnvironmentSpec, build_env
from embedprob.oracle import enum_solutions
from embedprob.shapes import ModuleShape, PrimePower, ValidationError

P21, P22, P31, P32 = PrimePower(2, 1), PrimePower(2, 2), PrimePower(3, 1), PrimePower(3, 2)
S = ModuleShape.of


def test_p_binom_examples():
    assert p_binom(5, -1, 2) == 0
    assert p_binom(7, 0, 3) == 1
    assert p_binom(2, 1, 2) == 3
    assert p_binom(3, 4, 2) == 0


@given(st.integers(0, 10), st.integers(-2, 12), st.sampled_from([2, 3, 5]))
def test_p_binom_symmetry(a, b, p):
    assert p_binom(a, b, p) == p_binom(a, a - b, p)


def test_count_flags_examples():
    assert count_flags((2, 1), (1, 0), 2) == 3
    assert count_flags((2, 1), (1, 1), 2) == 1
    assert count_flags((2, 1), (2, 2), 2) == 0


def test_count_in_ambient_examples():
    amb = AmbientProfile((3, 1), 1)
    assert count_in_ambient(amb, S([1]), 2, P21) == 3
    assert count_in_ambient(amb, S([1]), 1, P21) == 4
    assert count_in_ambient(amb, S([2]), 2, P21) == 4
    assert count_in_ambient(AmbientProfile((3, 1), 2), S([1]), 1, P21) == 0


def test_spec_examples_agree_with_oracle(env_p2_ambient):
    A = env_p2_ambient.whole()
    assert len(enum_solutions(env_p2_ambient, A, S([2]), 2)) == 4
    assert len(enum_solutions(env_p2_ambient, A, S([1]), 1)) == 4
    assert len(enum_solutions(env_p2_ambient, A, S([1]), 2)) == 3


def test_count_in_env(env_p3):
    assert count_in_env(env_p3, S([1, 1, 1]), 3) == 0
    assert count_in_env(env_p3, S([]), 3) == 1
    assert count_in_env(env_p3, S([1]), 3) == len(enum_solutions(env_p3, env_p3.whole(), S([1]), 3))
    inf_env = build_env(EnvironmentSpec(P31, None, (INF, 1)))
    assert count_in_env(inf_env, S([1]), 3) is INF
    assert count_in_env(inf_env, S([]), 3) == 1


def test_solvable_examples(env_p3):
    spec = env_p3.spec
    assert solvable(spec, S([1, 1]), 3)
    assert not solvable(spec, S([1, 1, 1]), 3)
    spec2 = EnvironmentSpec(P22, 0, (1, 1, 1))
    for M in (S([1]), S([1, 2]), S([1, 4])):
        assert not solvable(spec2, M, 1)
        assert not solvable_coarse(spec2, M, 1)
    for M, mu in ((S([1, 1]), 3), (S([1]), 3), (S([1]), 1)):
        assert solvable(spec, M, mu) == solvable_coarse(spec, M, mu)


def test_mu_validation():
    with pytest.raises(ValidationError):
        count_in_ambient(AmbientProfile((3, 1), 1), S([2]), 1, P21)
    with pytest.raises(ValidationError):
        AmbientProfile((1, 2), 1)


def test_ceil_and_floor_examples():
    assert ceil_shape(S([1, 3]), P31) == S([1, 3])
    assert ceil_shape(S([3]), P22) == S([4])
    assert ceil_shape(S([2, 2, 4]), P32) == S([3, 3, 9])
    assert floor_shape(S([1, 2]), 1, P21) == (S([1, 2]), 1)
    assert floor_shape(S([3, 2]), 3, P22) == (S([2, 3]), 3)
    assert floor_shape(S([5]), 5, P32) == (S([4]), 4)


def test_auto_realize_examples():
    t = auto_realize(S([3]), 4, P22)
    assert t.is_split and t.shape == S([4])
    assert auto_realize(S([1, 3]), 1, P22).lam == 1
    t = auto_realize(S([3]), 3, P22)
    assert (t.shape, t.lam) == (S([3]), 3)


def test_multiplicity_bound_examples():
    assert is_excluded_form(S([2, 3]), P31)
    assert multiplicity_bound(S([2, 3]), 2, 2, P31) == 1
    assert multiplicity_bound(S([2, 2]), 2, 2, P31) == 9
    assert multiplicity_bound(S([2, 2]), 2, 0, P31) == 1
    assert multiplicity_bound(S([2, 2]), 2, 2, P31, free_rank_reading=True) == 1
    with pytest.raises(ValidationError):
        multiplicity_bound(S([2, 2]), 2, 3, P31)


def test_headline_count_is_literal_not_reconciled(env_p3):
    # The headline product subtracts the chi indicator on top of frak_d, so on
    # this environment it undercounts the free cyclic solutions (oracle: 9).
    assert headline_count(env_p3.spec, S([3])) == 1
    assert count_in_env(env_p3, S([3]), 3) == 9 == len(enum_solutions(env_p3, env_p3.whole(), S([3]), 3))
    assert headline_count(env_p3.spec, S([])) == 1
    assert headline_count(env_p3.spec, S([1, 1, 1])) == 0
    assert headline_count(EnvironmentSpec(P31, None, (INF, 0)), S([1])) is INF
