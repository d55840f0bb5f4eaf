"""The ten acceptance criteria, run at full desk scale.

Every test records a one-line verdict (shown in the terminal summary). Two
checks cannot pass as stated and are marked strict xfail: they run in full,
report FAIL, and would turn the suite red if they ever started passing
without the expectation being revisited.
"""

from __future__ import annotations

import pytest

from embedprob import suites

pytestmark = pytest.mark.slow


def _report(acceptance_report, res, label: str = ""):
    acceptance_report(res.line() + (f" [{label}]" if label else ""))
    for ex in res.examples:
        print("   example:", ex)


@pytest.fixture(scope="module")
def counting():
    return suites.counting_certification()


@pytest.mark.xfail(
    strict=True,
    reason="cases with up to ~1.5e12 solutions cannot be enumerated one by one; they stay uncertified",
)
def test_criterion_1_full_desk_matrix(counting, acceptance_report):
    full, _ = counting
    _report(acceptance_report, full)
    assert full.failures == 0, full.examples
    assert full.passed


def test_criterion_1_enumerable_submatrix(counting, acceptance_report):
    _, sub = counting
    _report(acceptance_report, sub, "enumerable sub-matrix")
    assert sub.passed, sub.examples


def test_criterion_2_flags(acceptance_report):
    res = suites.flag_certification()
    _report(acceptance_report, res)
    assert res.passed, res.examples


def test_criterion_3_trivial_index_filtration(acceptance_report):
    res = suites.a0_identity()
    _report(acceptance_report, res)
    assert res.checked >= 1000
    assert res.passed, res.examples


def test_criterion_4_classification(acceptance_report):
    res = suites.classification()
    _report(acceptance_report, res)
    assert res.passed, res.examples


def test_criterion_5_group_axioms(acceptance_report):
    res = suites.group_axioms()
    _report(acceptance_report, res)
    assert res.passed, res.examples


def test_criterion_6_solvability(acceptance_report):
    res = suites.solvability_coherence()
    _report(acceptance_report, res)
    assert res.passed, res.examples


def test_criterion_7_realization(acceptance_report):
    res = suites.realization_soundness()
    _report(acceptance_report, res)
    assert res.passed, res.examples


@pytest.mark.xfail(strict=True, reason="with k = rk(S) the bound has desk counterexamples, e.g. p=3, S={2:2}")
def test_criterion_8_multiplicity_rank(acceptance_report):
    res = suites.multiplicity_soundness()
    _report(acceptance_report, res)
    assert res.passed, res.examples


def test_criterion_8_multiplicity_free_rank(acceptance_report):
    res = suites.multiplicity_soundness(free_rank_reading=True)
    _report(acceptance_report, res, "free-rank reading")
    assert res.passed, res.examples


def test_criterion_9_p_binomials(acceptance_report):
    res = suites.p_binomial_identities()
    _report(acceptance_report, res)
    assert res.passed, res.examples


def test_criterion_10_headline_cross_check(acceptance_report):
    res = suites.headline_cross_check()
    _report(acceptance_report, res)
    # disagreements of the literal product are reported above, never reconciled
    assert res.notes["headline_disagreements"] >= 0
    assert res.passed, res.examples
