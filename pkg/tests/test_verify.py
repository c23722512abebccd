import json

import pytest

from noeth import verify


def test_every_property_passes_small_run():
    rep = verify.run(verify.RunConfig(seed=3, cases=8, max_points=6, empirical_n=500))
    assert rep.passed, rep.text()
    assert len(rep.results) == len(verify.PROPERTIES)


def test_mutant_is_caught_with_witness(tmp_path):
    cfg = verify.RunConfig(seed=0, cases=30)
    rep = verify.run(cfg, only=["dynamics"], mutant="pushforward-no-closure", witness_dir=tmp_path)
    failed = {r.key for r in rep.results if not r.passed}
    assert "dynamics/pushforward-continuity" in failed
    for r in rep.results:
        if not r.passed:
            w = json.loads(open(r.witness_file).read())
            assert w["property"] == r.key and w["case"] == r.failed_case
            assert "space" in w and "map" in w


def test_same_config_same_report():
    cfg = verify.RunConfig(seed=11, cases=5)
    a = verify.run(cfg, only=["measures", "cofinite"]).structured()
    assert verify.run(cfg, only=["measures", "cofinite"]).structured() == a


def test_bad_selection():
    with pytest.raises(ValueError):
        verify.run(verify.RunConfig(), only=["nope"])
    with pytest.raises(ValueError):
        verify.RunConfig(cases=0)
