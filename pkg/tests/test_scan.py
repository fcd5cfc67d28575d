import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from primdiv.config import Effort, RunConfig
from primdiv.errors import RootOfUnity
from primdiv.quadfield import QuadElement, make_field
from primdiv.scan import scan_quadratic, scan_rational

LIGHT = RunConfig(effort=Effort(ecm_curves=10))


def test_rational_scan_gamma_2():
    rep = scan_rational(2, 1, 30, LIGHT)
    rows = {r.n: r for r in rep.rows}
    assert rows[6].cyclotomic_integer == 3 and not rows[6].has_primitive
    assert rows[21].factorization == [(7, 1), (337, 1)]
    assert rows[21].P == 337
    assert all(r.has_primitive for r in rep.rows if r.n not in (1, 6))
    assert rep.violations == 0
    assert all(r.decomposition_ok and r.direct_check_ok for r in rep.rows if r.n > 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(-30, 30), st.integers(1, 12))
def test_rational_scan_agrees_with_literal_definition(a, b):
    g = Fraction(a, b)
    if g in (0, 1, -1):
        return
    rep = scan_rational(g, 1, 24, LIGHT)
    for r in rep.rows:
        if r.fully_factored:
            assert r.direct_check_ok is not False
            assert r.decomposition_ok
            assert r.violations == 0


def test_rational_scan_rejects_roots_of_unity():
    with pytest.raises(RootOfUnity):
        scan_rational(-1, 1, 5)


def test_quadratic_scan_golden_square():
    fld = make_field(5)
    rep = scan_quadratic(fld, QuadElement(5, 3, 1, 2), 1, 40, LIGHT)
    assert rep.violations == 0
    row5 = next(r for r in rep.rows if r.n == 5)
    assert {(p.p, p.nu) for p in row5.primes} == {(11, 1)} and len(row5.primes) == 2
    assert all(r.decomposition_ok for r in rep.rows if r.fully_factored)


@pytest.mark.parametrize("m,gamma", [(2, (1, 1, 1)), (-5, (1, 1, 1)), (-23, (1, 1, 2)), (10, (3, 1, 1))])
def test_quadratic_scan_other_fields(m, gamma):
    fld = make_field(m)
    rep = scan_quadratic(fld, QuadElement(m, *gamma), 1, 30, LIGHT)
    assert rep.violations == 0
    assert all(r.direct_check_ok is not False for r in rep.rows)


def test_report_serialization_is_deterministic():
    a = scan_rational(Fraction(3, 2), 1, 20, LIGHT)
    b = scan_rational(Fraction(3, 2), 1, 20, LIGHT)
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert set(doc) == {"header", "rows", "suites"} and len(doc["rows"]) == 20
    rows = list(csv.DictReader(io.StringIO(a.to_csv())))
    assert {int(r["n"]) for r in rows} == set(range(1, 21))


def test_rational_scan_examples():
    rows = {r.n: r for r in scan_rational(2, 4, 18, LIGHT).rows}
    r4 = rows[4]
    assert r4.cyclotomic_integer == 5 and r4.primes[0].primitive and 5 % 4 == 1
    r18 = rows[18]
    assert r18.cyclotomic_integer == 57
    recs = {p.p: p for p in r18.primes}
    assert not recs[3].primitive and recs[3].nu == 1
    assert recs[19].primitive and recs[19].p_mod_n == 1


def test_quadratic_scan_small_n_examples():
    fld = make_field(5)
    rows = {r.n: r for r in scan_quadratic(fld, QuadElement(5, 3, 1, 2), 1, 2, LIGHT).rows}
    assert rows[1].primes == [] and rows[1].sigma_p == 0 and rows[1].sigma_np == 0
    assert [(p.p, p.kind) for p in rows[2].primes] == [(5, "ramified")]
