import numpy as np
import pytest

from vallab.core.errors import DegenerateZero, IndeterminateValuation
from vallab.core.exponents import residue_extended
from vallab.experiments import paper
from vallab.experiments.corpora import random_probe_polynomial
from vallab.experiments.paper import PaperExperiment
from vallab.modules.construction.witness import WConstructionParams
from vallab.modules.defectlab.probe import immediate_probe
from vallab.schemas import RunConfig


# ============================================
# CORPUS DE LA SONDA
# ============================================

def test_probe_corpus_values_stay_in_residue_group():
    params = WConstructionParams(p=2, q=3, depth=5)
    group = residue_extended(2)
    rng = np.random.default_rng([0, 2])
    determinate, unresolved = 0, []
    for i in range(100):
        fcoeffs = random_probe_polynomial(rng, params)
        assert len(fcoeffs) == 2
        try:
            result = immediate_probe(fcoeffs, params, prec=6, retries=3)
        except IndeterminateValuation:
            unresolved.append(i)
            continue
        except DegenerateZero:
            continue
        determinate += 1
        assert group.contains(result.value)
        assert result.in_base_group
    assert determinate > 0
    assert len(unresolved) <= 5


def test_probe_corpus_summary():
    summary = PaperExperiment(RunConfig(seed=0)).run_probe_corpus()
    assert summary.samples == 100
    assert summary.all_in_group
    assert summary.within_bound
    assert summary.determinate + len(summary.unresolved) + len(summary.degenerate) == 100


def test_unresolved_probe_samples_fail_the_run(monkeypatch):
    def undetermined(*args, **kwargs):
        raise IndeterminateValuation("not certified")

    monkeypatch.setattr(paper, "immediate_probe", undetermined)
    config = RunConfig(seed=3, depth=4, corpus_size=20, as_corpus_size=5)
    report = PaperExperiment(config).run()
    assert report.probe.unresolved == list(range(20))
    assert not report.probe.within_bound
    assert not report.invariants_ok
    assert any(note.startswith("immediacy probe") for note in report.inconclusive)


@pytest.mark.parametrize("unresolved,within", [(1, True), (2, False)])
def test_unresolved_bound_is_five_percent(monkeypatch, unresolved, within):
    calls = {"n": 0}

    def first_fail(fcoeffs, params, prec, retries):
        calls["n"] += 1
        if calls["n"] <= unresolved:
            raise IndeterminateValuation("not certified")
        return immediate_probe(fcoeffs, params, prec, retries)

    monkeypatch.setattr(paper, "immediate_probe", first_fail)
    summary = PaperExperiment(RunConfig(seed=0, corpus_size=20)).run_probe_corpus()
    assert summary.within_bound is within
