import pytest

from src import verify
from src.errors import SizeExceeded, UnknownClaim
from src.poset import Verdict
from src.poset_file import load_poset
from src.verify import (
    CLAIMS,
    CLAIMS_BY_ID,
    Check,
    Claim,
    format_report,
    lattice_representatives,
    resolve_claims,
    verify_theorems,
)


def sweep(*args, **kwargs):
    kwargs.setdefault("show_progress", False)
    return verify_theorems(*args, **kwargs)


def test_associativity_over_four_elements():
    report = sweep(4, ["associativity"], jobs=1)
    assert report.ok
    assert report.posets_examined(4) == 219
    assert report.instances[4] == {"not-quasi-lattice": 183, "quasi-lattice": 0, "lattice": 36}
    assert report.instances[3] == {"not-quasi-lattice": 13, "quasi-lattice": 0, "lattice": 6}


def test_single_instance_all_claims():
    report = sweep(1)
    assert report.ok
    assert report.claims == tuple(claim.id for claim in CLAIMS)
    assert all(report.checks[claim.id] >= 1 for claim in CLAIMS)


def test_registry_completeness():
    report = sweep(2)
    for claim in CLAIMS:
        assert report.checks[claim.id] >= 1, claim.id
        assert report.bounds[claim.id] == 2


def test_quotient_and_kernel():
    report = sweep(3, ["quotient", "kernel", "interval_lemma", "partition_lattice"], jobs=1)
    assert report.ok
    assert report.checks["quotient"] > 0
    assert report.checks["kernel"] > 0


@pytest.mark.slow
def test_homomorphism_claims_over_four_elements():
    report = sweep(4, ["quotient", "kernel", "interval_lemma", "intersections"], jobs=2)
    assert report.ok, format_report(report)


@pytest.mark.slow
def test_default_sweep():
    report = sweep(None, jobs=4)
    assert report.ok, format_report(report)
    assert report.posets_examined(5) == 4231


@pytest.mark.parametrize("jobs", [2, 4])
def test_report_independent_of_worker_count(jobs):
    single = sweep(3, jobs=1)
    parallel = sweep(3, jobs=jobs)
    assert format_report(single) == format_report(parallel)
    assert single.instances == parallel.instances
    assert single.checks == parallel.checks


def test_format_report():
    text = format_report(sweep(2, ["identities"]))
    assert text.splitlines() == [
        "sweep n_max=2",
        "claims: identities",
        "n=1: 1 posets (not-quasi-lattice 0, quasi-lattice 0, lattice 1)",
        "n=2: 3 posets (not-quasi-lattice 1, quasi-lattice 0, lattice 2)",
        "checks:",
        "  identities: 3 (n<=2)",
        "counterexamples: 0",
    ]


class TestClaims:
    def test_unknown_claim(self):
        with pytest.raises(UnknownClaim, match="thm23"):
            sweep(2, ["thm23"])

    def test_explicit_claim_beyond_bound(self):
        with pytest.raises(SizeExceeded):
            sweep(5, ["kernel"])

    def test_all_claims_are_capped(self):
        bounds = verify._claim_bounds(CLAIMS, 6, explicit=False)
        assert bounds["kernel"] == 4
        assert bounds["star"] == 5
        assert bounds["associativity"] == 6

    def test_default_bounds(self):
        bounds = verify._claim_bounds(CLAIMS, None, explicit=False)
        assert bounds == {claim.id: claim.default_n for claim in CLAIMS}

    def test_resolve_keeps_registry_order(self):
        assert [c.id for c in resolve_claims(["star", "identities"])] == ["identities", "star"]

    def test_invalid_n(self):
        with pytest.raises(SizeExceeded):
            sweep(0)


def test_lattice_representatives():
    assert len(lattice_representatives(1)) == 1
    assert len(lattice_representatives(3)) == 1
    assert len(lattice_representatives(4)) == 2


def _always_fails(case):
    yield Check("forced", Verdict.fail("forced", case.poset.labels[:1]))


def test_counterexamples_become_fixtures(tmp_path, monkeypatch):
    original = CLAIMS_BY_ID["identities"]
    monkeypatch.setitem(CLAIMS_BY_ID, "identities", Claim(
        original.id, original.description, original.default_n, original.max_n, _always_fails,
    ))
    report = sweep(2, ["identities"], jobs=1, out_dir=tmp_path)

    assert not report.ok
    assert len(report.counterexamples) == 4
    assert [path.name for path in report.fixture_paths] == [
        f"identities_{i:03d}.qlat" for i in range(1, 5)
    ]
    for counterexample, path in zip(report.counterexamples, report.fixture_paths):
        text = path.read_text(encoding="utf-8")
        assert "# claim: identities" in text
        assert "# witness: fails [forced]" in text
        assert load_poset(path) == counterexample.poset
    assert "counterexamples: 4" in format_report(report)
