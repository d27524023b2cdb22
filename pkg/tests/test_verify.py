import json

import pytest

from hikes.errors import GuardViolation
from hikes.graph import Digraph
from hikes.verify import (
    CORRUPTIONS,
    LCG,
    SUITES,
    VerifyReport,
    random_digraph,
    resolve_suites,
    verify,
)


def test_lcg_first_values():
    state, expected = 7, []
    for _ in range(3):
        state = (6364136223846793005 * state + 1442695040888963407) % 2 ** 64
        expected.append(state)
    rng = LCG(7)
    assert [rng.next() for _ in range(3)] == expected
    u = LCG(7).uniform()
    assert u == (expected[0] >> 11) / 2 ** 53 and 0 <= u < 1


def test_random_digraph_is_reproducible():
    a, b = random_digraph(4, 0.5, 11), random_digraph(4, 0.5, 11)
    assert a == b
    rng = LCG(11)
    want = {(i, j) for i in range(1, 5) for j in range(1, 5) if rng.uniform() < 0.5}
    assert set(a.edges) == want
    assert random_digraph(3, 0.0, 1).edges == frozenset()
    assert len(random_digraph(3, 1.0, 1).edges) == 9


def test_resolve_suites():
    assert resolve_suites("all") == list(SUITES)
    assert resolve_suites("theorem2, lemma1") == ["lemma1", "theorem2"]
    with pytest.raises(ValueError):
        resolve_suites("theorem9")


@pytest.mark.parametrize("seed", range(5))
def test_all_suites_pass(seed):
    report = verify(random_digraph(4, 0.5, seed), 5)
    assert report.passed, report.text()
    assert [r.name for r in report.identities] == list(SUITES)
    assert all(r.checked > 0 for r in report.identities)


def test_report_json_round_trip(bowtie):
    report = verify(bowtie, 4, "theorem1,theorem3")
    data = json.loads(report.dumps())
    assert data["passed"] is True
    assert VerifyReport.from_json(data).to_json() == report.to_json()


def test_guards():
    big = Digraph.from_edges(11, [])
    with pytest.raises(GuardViolation):
        verify(big, 2)
    verify(big, 1, "cayley-hamilton", unsafe_large=True)
    with pytest.raises(GuardViolation):
        verify(Digraph.from_edges(2, []), 11)
    dense = Digraph.from_edges(5, [(i, j) for i in range(1, 6) for j in range(1, 6)])
    with pytest.raises(GuardViolation):
        verify(dense, 2)


@pytest.mark.parametrize("corrupt", CORRUPTIONS)
def test_corruptions_are_caught(corrupt, dense3):
    report = verify(dense3, 4, corrupt=corrupt)
    assert not report.passed
    for r in report.failures():
        assert r.counterexample["monomial"].startswith("w[")


def test_text_report(two_cycles):
    text = verify(two_cycles, 3, "theorem2").text()
    assert text.splitlines()[0] == "graph: N=7 |E|=7 max_len=3"
    assert "PASS theorem2" in text and text.endswith("all identities hold")
