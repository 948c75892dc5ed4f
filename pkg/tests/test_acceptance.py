"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

All criteria run in exact arithmetic on the default grid
{-2, -1, -1/2, 1/2, 1, 2} with 100 seeded random algebras.
"""
import io

import pytest

from acblie.cli import main
from acblie.verify import run_verification


@pytest.fixture(scope="module")
def full_run():
    return run_verification(seeds=100)


def _report(capsys, label, failures):
    status = "PASS" if not failures else f"FAIL ({len(failures)} failing cases; first: {failures[0]})"
    with capsys.disabled():
        print(f"\n[acceptance] {label}: {status}")
    assert not failures, failures[:5]


def test_curvature_tables_per_class(full_run, capsys):
    _report(capsys, "curvature tables per class family", full_run.check("curvature-table").failures)


def test_example_family(full_run, capsys):
    _report(capsys, "two-parameter example family", full_run.check("example-family").failures)


def test_oracle_equivalence(full_run, capsys):
    _report(capsys, "closed-form F equals connection oracle", full_run.check("oracle-equivalence").failures)


def test_decomposition_completeness(full_run, capsys):
    failures = full_run.check("decomposition").failures + full_run.check("f-symmetries").failures
    _report(capsys, "decomposition completeness and membership", failures)


def test_r3_identity(full_run, capsys):
    _report(capsys, "three-dimensional curvature identity", full_run.check("r3-identity").failures)


def test_sign_and_vanishing_predicates(full_run, capsys):
    failures = full_run.check("sign-predicates").failures + full_run.check("parameter-relations").failures
    _report(capsys, "sign and vanishing predicates (items 2-19)", failures)


def test_special_structure_routes(full_run, capsys):
    _report(capsys, "special-structure route agreement", full_run.check("special-structures").failures)


def test_class_templates_and_einstein(full_run, capsys):
    _report(capsys, "per-class curvature forms and Einstein labels", full_run.check("class-templates").failures)


def test_verify_command_exits_zero(capsys):
    out = io.StringIO()
    code = main(["verify", "--seeds", "100"], out=out, err=io.StringIO())
    failures = [] if code == 0 else [f"exit code {code}; " + out.getvalue().strip().splitlines()[-2]]
    _report(capsys, "verify command on default grid with 100 seeds", failures)
