import json
from fractions import Fraction

import pytest

from vallab.config import Settings, get_settings, resolve_run_config
from vallab.core.errors import ConfigError
from vallab.schemas import RunConfig


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("VALLAB_CONFIG", "VALLAB_P", "VALLAB_Q", "VALLAB_PREC", "VALLAB_FORMAT", "VALLAB_SEED"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = resolve_run_config(settings=Settings())
    assert (config.p, config.q, config.depth) == (2, 3, 5)
    assert config.prec is None
    assert config.format == "text"


def test_environment_prefix(monkeypatch):
    monkeypatch.setenv("VALLAB_P", "3")
    monkeypatch.setenv("VALLAB_Q", "2")
    monkeypatch.setenv("VALLAB_PREC", "80/81")
    settings = get_settings()
    assert settings.P == 3
    config = resolve_run_config()
    assert (config.p, config.q) == (3, 2)
    assert config.prec == Fraction(80, 81)


def test_layers_in_order(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"seed": 11, "depth": 7, "format": "json"}))
    settings = Settings(CONFIG=str(path), SEED=3)
    config = resolve_run_config({"depth": 4, "seed": None}, settings=settings)
    assert config.seed == 11
    assert config.depth == 4
    assert config.format == "json"


@pytest.mark.parametrize("overrides", [{"p": 3, "q": 3}, {"p": 4}, {"depth": 0}, {"prec": "1/0x"}])
def test_invalid_configuration(overrides):
    with pytest.raises(ConfigError):
        resolve_run_config(overrides, settings=Settings())


def test_unreadable_config_file(tmp_path):
    with pytest.raises(ConfigError):
        resolve_run_config(settings=Settings(CONFIG=str(tmp_path / "missing.json")))
    bad = tmp_path / "list.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        resolve_run_config(settings=Settings(CONFIG=str(bad)))


def test_run_config_serializes_prec():
    config = RunConfig(prec="80/81")
    assert config.model_dump(mode="json")["prec"] == "80/81"
