"""The ten acceptance criteria, each run over both fields with master seed 0."""
import pytest

from albert.verify import CRITERIA, FIELDS, run_criterion


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    checks = run_criterion(k, seed=0, fields=FIELDS)
    ok = all(c.passed for c in checks)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}")
    failed = [c.to_json() for c in checks if not c.passed]
    assert ok, failed
