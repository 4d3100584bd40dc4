import pytest

from qwdefect.config import Settings, load_yaml_config
from qwdefect.errors import QwDefectError, TooLargeError


def test_settings_defaults():
    s = Settings(_env_file=None)
    assert s.QWDEFECT_WORKERS == 1
    assert s.QWDEFECT_CONTOUR_RADIUS == 0.5
    assert s.QWDEFECT_ORACLE_NMAX == 16


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("QWDEFECT_WORKERS", "3")
    monkeypatch.setenv("QWDEFECT_LOG_LEVEL", "DEBUG")
    s = Settings(_env_file=None)
    assert s.QWDEFECT_WORKERS == 3
    assert s.QWDEFECT_LOG_LEVEL == "DEBUG"


def test_empty_yaml_is_empty_mapping(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_yaml_config(path) == {}


def test_yaml_must_be_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError):
        load_yaml_config(path)


def test_error_record():
    err = TooLargeError("too many paths", field="n")
    assert isinstance(err, QwDefectError)
    assert err.to_record() == {"error": "TooLargeError", "field": "n", "message": "too many paths"}
