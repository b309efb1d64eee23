import math

import pytest

from logdup.evaluation import (
    CorpusDriftError,
    GroundTruth,
    TruthEntry,
    dump_ground_truth,
    load_ground_truth,
    precision_recall,
    random_baseline,
    resolve_truth,
    score,
)

from conftest import MANIFEST


def test_score_arithmetic_totals():
    precision, recall = precision_recall(detected=290, correct=35, truth=41)
    assert abs(precision - 12.07) <= 0.05
    assert abs(recall - 85.37) <= 0.05


def test_score_perfect():
    precision, recall = precision_recall(detected=15, correct=15, truth=15)
    assert precision == 100.0 and recall == 100.0


def test_score_undefined_reported_as_none():
    assert precision_recall(0, 0, 0) == (None, None)
    assert precision_recall(0, 0, 5) == (None, 0.0)
    assert precision_recall(5, 0, 0) == (0.0, None)


def test_score_permutation_invariant(corpus_scan):
    truth = load_ground_truth(MANIFEST)
    r = corpus_scan
    fwd = score(r.instances, truth, "IC", r.dup_sets, r.statements_by_id)
    rev = score(list(reversed(r.instances)), truth, "IC", r.dup_sets, r.statements_by_id)
    assert fwd == rev


def test_truth_roundtrip(tmp_path):
    entries = [
        TruthEntry("LM", (("a/B.java", 10), ("a/B.java", 20)), "some text ⟨V⟩"),
        TruthEntry("IC", (("c/D.java", 3),), "tab\ttext"),
    ]
    p = tmp_path / "truth.txt"
    p.write_text(dump_ground_truth(entries), encoding="utf-8")
    loaded = load_ground_truth(str(p))
    assert sorted(loaded.entries) == sorted(entries)


def test_truth_location_tolerance(corpus_scan):
    r = corpus_scan
    truth = load_ground_truth(MANIFEST)
    shifted = GroundTruth(
        entries=[
            TruthEntry(e.pattern, tuple((f, line + 2) for f, line in e.locations), e.static_text)
            for e in truth.entries
        ]
    )
    assert resolve_truth(shifted, r.dup_sets, r.statements_by_id, "IC") == resolve_truth(
        truth, r.dup_sets, r.statements_by_id, "IC"
    )


def test_truth_drift_raises(corpus_scan):
    r = corpus_scan
    bad_text = GroundTruth(entries=[TruthEntry("IC", (("x.java", 1),), "no such message")])
    with pytest.raises(CorpusDriftError):
        resolve_truth(bad_text, r.dup_sets, r.statements_by_id, "IC")
    good = load_ground_truth(MANIFEST)
    ic = next(e for e in good.entries if e.pattern == "IC")
    bad_locs = GroundTruth(
        entries=[TruthEntry("IC", tuple((f, line + 50) for f, line in ic.locations), ic.static_text)]
    )
    with pytest.raises(CorpusDriftError):
        resolve_truth(bad_locs, r.dup_sets, r.statements_by_id, "IC")


# ------------------------------------------------------------------- baseline


def test_baseline_reproducible_per_seed():
    candidates = [f"c{i}" for i in range(200)]
    positives = set(candidates[:20])
    a = random_baseline(candidates, positives, iterations=30, seed=42)
    b = random_baseline(candidates, positives, iterations=30, seed=42)
    c = random_baseline(candidates, positives, iterations=30, seed=43)
    assert a == b
    assert a != c


def test_baseline_zero_positives():
    out = random_baseline([f"c{i}" for i in range(50)], set(), iterations=10, seed=1)
    assert out["mean_precision"] is None
    assert out["mean_recall"] is None


def test_baseline_all_positive_forces_full_precision():
    candidates = [f"c{i}" for i in range(40)]
    out = random_baseline(candidates, set(candidates), iterations=10, seed=1)
    assert out["mean_precision"] == 100.0
    assert out["mean_recall"] == 100.0


def closed_form_sigma(p, n_candidates, n_positive, iterations):
    """Monte-Carlo std of the mean for recall and (approximately) precision.

    recall_i = Binomial(P, p)/P  -> var p(1-p)/P
    precision_i averages about n*p Bernoulli(p) draws -> var <= p(1-p)/(n*p)
    """
    var_recall = p * (1 - p) / n_positive / iterations
    var_precision = (1 - p) / n_candidates / iterations
    return math.sqrt(var_precision), math.sqrt(var_recall)


@pytest.mark.parametrize("p", [0.05, 0.5])
def test_baseline_within_3_sigma_of_closed_form(p):
    n = 400
    iterations = 30
    positives = {f"c{i}" for i in range(int(n * p))}
    candidates = [f"c{i}" for i in range(n)]
    out = random_baseline(candidates, positives, iterations=iterations, seed=7)
    sig_p, sig_r = closed_form_sigma(p, n, len(positives), iterations)
    assert abs(out["mean_recall"] - 100 * p) <= 3 * 100 * sig_r
    assert abs(out["mean_precision"] - 100 * p) <= 3 * 100 * sig_p
