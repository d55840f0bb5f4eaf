from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from embedprob import linalg
from embedprob.fpg_algebra import Module, RingElement, Submodule, decompose, span
from embedprob.shapes import ModuleShape, PrimePower, ValidationError

PP = [PrimePower(2, 1), PrimePower(2, 2), PrimePower(3, 1), PrimePower(3, 2)]


def random_module(rng: random.Random, pp: PrimePower, max_dim: int = 7) -> Module:
    lengths = []
    while True:
        L = rng.randint(1, pp.order)
        if sum(lengths) + L > max_dim:
            break
        lengths.append(L)
    return Module(pp, lengths)


def random_submodule(rng: random.Random, M: Module, gens: int = 2) -> Submodule:
    return span(M, [tuple(rng.randrange(M.p) for _ in range(M.dim)) for _ in range(gens)])


def test_sigma_power_has_order_p_to_the_n():
    for pp in PP:
        sig = RingElement.sigma_power(pp, 1)
        acc = RingElement.one(pp)
        for _ in range(pp.order):
            acc = acc * sig
        assert acc == RingElement.one(pp)
        assert RingElement.sigma_power(pp, pp.order) == RingElement.one(pp)


def test_s_is_nilpotent_of_order_N():
    pp = PrimePower(3, 2)
    assert RingElement.s_power(pp, 8) * RingElement.s_power(pp, 1) == RingElement.s_power(pp, 9)
    assert not any(RingElement.s_power(pp, 9).coeffs)


def test_pp_mismatch_rejected():
    M = Module(PrimePower(2, 2), (4,))
    with pytest.raises(ValidationError):
        M.poly_apply(RingElement.one(PrimePower(3, 1)), M.generator(0))
    with pytest.raises(ValidationError):
        RingElement.one(PrimePower(2, 2)) + RingElement.one(PrimePower(2, 1))


def test_lengths_of_basis_vectors():
    M = Module(PrimePower(2, 2), (1, 2, 4))
    assert M.length(M.zero) == 0
    assert [M.length(M.basis_vector(2, k)) for k in range(4)] == [4, 3, 2, 1]
    assert M.length(M.basis_vector(1, 0)) == 2


def test_filtration_deltas_examples():
    pp = PrimePower(2, 1)
    M = Module(pp, (1, 1, 2))
    assert M.whole().filtration.deltas == (3, 1)
    F = Module(pp, (2,))
    assert F.whole().filtration.deltas == (1, 1)
    assert F.whole().shape == ModuleShape.of([2])


def test_socle_is_fixed_space():
    M = Module(PrimePower(3, 1), (1, 3, 2))
    fixed = [v for v in M.whole().elements() if M.sigma(v) == v]
    assert len(fixed) == 3 ** len(M.socle)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(PP))
def test_decompose_round_trip(seed, pp):
    rng = random.Random(seed)
    M = random_module(rng, pp)
    A = random_submodule(rng, M)
    shape, gens = decompose(A)
    assert span(M, gens).basis == A.basis
    assert tuple(M.length(g) for g in gens) == shape.lengths
    assert shape.dim == A.dim


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(PP))
def test_span_is_sigma_stable(seed, pp):
    rng = random.Random(seed)
    M = random_module(rng, pp)
    A = random_submodule(rng, M, gens=3)
    assert A.is_stable()
    assert all(A.contains(M.sigma(b)) for b in A.basis)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_sigma_is_invertible_of_order_N(seed):
    rng = random.Random(seed)
    pp = rng.choice(PP)
    M = random_module(rng, pp)
    v = tuple(rng.randrange(M.p) for _ in range(M.dim))
    assert M.sigma(v, pp.order) == v
    assert M.sigma(M.sigma(v, 1), pp.order - 1) == v


def test_submodule_order_relation():
    M = Module(PrimePower(2, 2), (4,))
    whole = M.whole()
    small = span(M, [M.basis_vector(0, 2)])
    assert small <= whole and not whole <= small
    assert small.dim == 2
    assert linalg.in_span(M.basis_vector(0, 3), small.basis, 2)
