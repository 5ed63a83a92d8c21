"""The thirteen acceptance criteria, one suite each.

Each suite lives in ``frobnc.suites`` so the same checks back ``frobnc verify``.
The one-line verdicts are collected and printed in the terminal summary.
"""
import pytest

from frobnc.suites import SUITES, run_suite

SLOW = {"degree-corridor-q2", "degree-corridor-q3", "separated-variables", "incidence-multiplicities"}

VERDICTS: dict[int, str] = {}


def _param(suite_id):
    marks = [pytest.mark.slow] if suite_id in SLOW else []
    return pytest.param(suite_id, marks=marks, id=f"c{SUITES[suite_id][0]:02d}-{suite_id}")


@pytest.mark.parametrize("suite_id", [_param(s) for s in SUITES])
def test_criterion(suite_id):
    result = run_suite(suite_id)
    VERDICTS[result.criterion] = result.line()
    print(result.line())
    failed = [f"{c.label} [{c.detail}]" for c in result.checks if not c.ok]
    assert result.checks, "suite produced no checks"
    assert result.passed, failed


def test_every_criterion_has_a_suite():
    assert sorted(c for c, _, _ in SUITES.values()) == list(range(1, 14))


if __name__ == "__main__":
    for sid in SUITES:
        print(run_suite(sid).line(), flush=True)
