"""Golden-file fixtures: problem files pin the report format byte for byte.

Regenerate after an intentional schema change with:

    python -c "from padicdyn.cli import main; main(['check', 'tests/golden/<name>.json', '--report', 'tests/golden/<name>.expected.json'])"
"""

import pathlib

import pytest

from padicdyn.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"

CASES = [("diagonal", 1), ("hyperplane", 0), ("exhausted", 2)]


@pytest.mark.parametrize("name,expected_code", CASES)
def test_golden_report(name, expected_code, tmp_path):
    problem = GOLDEN / f"{name}.json"
    out = tmp_path / "report.json"
    assert main(["check", str(problem), "--report", str(out)]) == expected_code
    assert out.read_bytes() == (GOLDEN / f"{name}.expected.json").read_bytes()
