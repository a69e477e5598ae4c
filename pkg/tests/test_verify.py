from __future__ import annotations

import pytest

from charslope.verify import SUITES, verify_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_at_small_scale(name):
    rep = verify_suite(name, seed=7, count=10)
    assert rep.ok, rep.failures
    assert rep.passed > 0


def test_suites_are_deterministic_in_the_seed():
    a = verify_suite("slope-drop", seed=3, count=10)
    b = verify_suite("slope-drop", seed=3, count=10)
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify_suite("no-such-suite")


def test_restriction_reports_out_of_regime_separately():
    rep = verify_suite("restriction", seed=1, count=30)
    assert rep.passed + rep.failed + rep.out_of_regime >= rep.count
