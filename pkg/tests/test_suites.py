import pytest

from primdiv.config import RunConfig
from primdiv.suites import (SUITES, cyclotomic_identity, field_constants, lte_oracle, prop61, run_suite,
                            theta_prop52, yu_bound)

CFG = RunConfig()


def test_registry():
    assert set(SUITES) == {"cyclotomic-identity", "lte-oracle", "theta-prop52", "prop82-rational",
                           "prop82-quadratic", "prop61", "field-constants", "estimates", "zsigmondy", "yu-bound"}
    with pytest.raises(KeyError):
        run_suite("nope")


def test_small_suites_pass():
    for checks in (cyclotomic_identity(CFG, 60), field_constants(CFG), lte_oracle(CFG, 200), prop61(CFG, 40)):
        assert all(c.passed for c in checks if c.hard), [c for c in checks if not c.passed]


def test_yu_suite():
    res = run_suite("yu-bound", CFG)
    assert res.passed and len(res.checks) == 4


def test_theta_suite_soft_check_is_reported_not_fatal():
    checks = theta_prop52(CFG, fields=(-23,), count=4)
    soft = [c for c in checks if not c.hard]
    assert len(soft) == 1 and not soft[0].passed
    assert all(c.passed for c in checks if c.hard)
