import json
from importlib import resources

import pytest

from albert import serial as js
from albert.cli import run


def corpus():
    root = resources.files("albert") / "golden"
    reqs = root.joinpath("requests.jsonl").read_text(encoding="utf-8").splitlines()
    reps = root.joinpath("reports.jsonl").read_text(encoding="utf-8").splitlines()
    assert len(reqs) == len(reps)
    return [(json.loads(q), json.loads(r)) for q, r in zip(reqs, reps)]


CASES = corpus()


def test_corpus_covers_every_outcome():
    assert len(CASES) > 100
    assert {r["exit"] for _, r in CASES} == {0, 1, 2}


@pytest.mark.parametrize("request_doc,expected", CASES,
                         ids=[f"{i:03d}-{q.get('command')}" for i, (q, _) in enumerate(CASES)])
def test_golden_report(request_doc, expected):
    report, code = run(request_doc)
    assert code == expected["exit"]
    assert js.canonical(report) == js.canonical(expected["report"])
