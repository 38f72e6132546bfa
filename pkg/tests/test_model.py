"""Model validation, derived rates and JSON schema handling."""

import json

import pytest

from zoo import example1, example2
from priopoll import (Exponential, NonpositiveParameter, PollingModel,
                      QueueSpec, UnstableSystem, ZeroSwitchover, Deterministic,
                      load_model, model_from_config, model_to_config, validate)


def test_example1_derived_rates():
    d = validate(example1())
    assert d.rho_total == pytest.approx(0.8, rel=1e-14)
    assert d.mean_cycle == pytest.approx(10.0, rel=1e-12)
    assert d.rho_queue[0] == pytest.approx(0.6)
    assert d.mean_intervisit[0] == pytest.approx(4.0, rel=1e-12)
    assert d.mean_visit[0] == pytest.approx(6.0, rel=1e-12)


def test_example2_derived_rates():
    d = validate(example2())
    assert d.rho_total == pytest.approx(0.9, rel=1e-14)
    assert d.mean_cycle == pytest.approx(200.0, rel=1e-10)


def test_rate_identities_exact():
    for model in (example1(), example2()):
        d = validate(model)
        s_mean = sum(s.mean for s in model.switchovers)
        assert d.mean_cycle * (1.0 - d.rho_total) == pytest.approx(s_mean, rel=1e-14)
        for i in range(model.n):
            assert d.mean_intervisit[i] + d.mean_visit[i] == pytest.approx(
                d.mean_cycle, rel=1e-14)


def test_unstable_model_rejected():
    m = PollingModel(
        queues=(QueueSpec(0.5, 0.5, Exponential(1.0), Exponential(1.0)),),
        switchovers=(Exponential(1.0),),
    )
    with pytest.raises(UnstableSystem):
        validate(m)


def test_zero_switchover_rejected():
    m = PollingModel(
        queues=(QueueSpec(0.1, 0.1, Exponential(1.0), Exponential(1.0)),),
        switchovers=(Deterministic(0.0),),
    )
    with pytest.raises(ZeroSwitchover):
        validate(m)


def test_queue_needs_positive_rate():
    with pytest.raises(NonpositiveParameter):
        QueueSpec(0.0, 0.0, None, None)
    with pytest.raises(NonpositiveParameter):
        QueueSpec(-0.1, 0.2, Exponential(1.0), Exponential(1.0))
    with pytest.raises(NonpositiveParameter):
        QueueSpec(0.1, 0.0, None, None)  # missing service_high


def test_config_roundtrip():
    for model in (example1(), example2()):
        clone = model_from_config(model_to_config(model))
        assert clone == model


def test_load_model_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(model_to_config(example1())))
    assert load_model(path) == example1()


def test_unknown_keys_rejected():
    cfg = model_to_config(example1())
    cfg["comment"] = "nope"
    with pytest.raises(ValueError):
        model_from_config(cfg)
    cfg = model_to_config(example1())
    cfg["queues"][0]["priority"] = 3
    with pytest.raises(ValueError):
        model_from_config(cfg)


def test_replace_discipline():
    m = example1("gated").replace_discipline(0, "exhaustive")
    assert m.queues[0].discipline == "exhaustive"
    assert m.queues[1].discipline == "gated"
