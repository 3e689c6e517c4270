import pytest

from fidentity.fuzz import SUITES, FuzzConfig, run_case, run_fuzz


@pytest.mark.parametrize("n,d,m", [(2, 1, 1), (2, 3, 2), (3, 2, 1)])
def test_all_suites_pass(n, d, m):
    report = run_fuzz(FuzzConfig(seed=3, cases=3, n=n, d=d, m=m), list(SUITES))
    bad = [r for r in report["results"] if r["status"] != "pass"]
    assert bad == []


def test_cases_replay_individually():
    cfg = FuzzConfig(seed=11, cases=4, n=2, d=2)
    report = run_fuzz(cfg, ["engel", "l2"])
    for record in report["results"]:
        assert run_case(record["suite"], record["index"], cfg) == record


def test_parallel_run_keeps_case_order():
    cfg = FuzzConfig(seed=5, cases=6, n=2, d=2)
    serial = run_fuzz(cfg, ["ring", "charpoly"])
    parallel = run_fuzz(cfg, ["ring", "charpoly"], workers=3)
    assert serial == parallel


def test_seed_changes_inputs():
    a = run_fuzz(FuzzConfig(seed=1, cases=3, n=2, d=2), ["standard-form"])
    b = run_fuzz(FuzzConfig(seed=2, cases=3, n=2, d=2), ["standard-form"])
    digests = lambda r: [x["input_digest"] for x in r["results"]]
    assert digests(a) != digests(b)
