import json
import logging

import pandas as pd
import pytest

from sourcedet_mamba.artifacts import dumps_json, read_json, write_csv, write_json, write_text
from sourcedet_mamba.errors import ArtifactError
from sourcedet_mamba.log import LOG_ENV_VAR, configure_logging, resolve_level


class TestWriters:
    def test_write_text_creates_parents(self, tmp_path):
        path = write_text(tmp_path / "a" / "b.txt", "hello\n")
        assert path.read_text() == "hello\n"

    def test_write_once(self, tmp_path):
        write_text(tmp_path / "x.txt", "1")
        with pytest.raises(ArtifactError):
            write_text(tmp_path / "x.txt", "2")
        assert (tmp_path / "x.txt").read_text() == "1"

    def test_no_temporary_files_left(self, tmp_path):
        write_json(tmp_path / "x.json", {"a": 1})
        assert [p.name for p in tmp_path.iterdir()] == ["x.json"]

    def test_json_is_sorted_and_strict(self, tmp_path):
        write_json(tmp_path / "x.json", {"b": 1, "a": [0.5]})

        assert read_json(tmp_path / "x.json") == {"a": [0.5], "b": 1}
        assert (tmp_path / "x.json").read_text().index('"a"') < (tmp_path / "x.json").read_text().index('"b"')

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            dumps_json({"x": float("nan")})

    def test_csv_keeps_full_precision(self, tmp_path):
        value = 0.1 + 0.2
        write_csv(tmp_path / "x.csv", pd.DataFrame({"v": [value]}))
        assert pd.read_csv(tmp_path / "x.csv")["v"].iloc[0] == value

    def test_json_round_trip_types(self, tmp_path):
        payload = {"ids": [1, 2], "name": "x", "flag": True, "none": None}
        write_json(tmp_path / "p.json", payload)
        assert json.loads((tmp_path / "p.json").read_text()) == payload


class TestLogging:
    @pytest.mark.parametrize("value, expected", [("debug", logging.DEBUG), ("INFO", logging.INFO), ("nope", 30)])
    def test_resolve_level_from_environment(self, monkeypatch, value, expected):
        monkeypatch.setenv(LOG_ENV_VAR, value)
        assert resolve_level() == expected

    def test_default_level(self, monkeypatch):
        monkeypatch.delenv(LOG_ENV_VAR, raising=False)
        assert resolve_level() == logging.WARNING

    def test_single_handler(self):
        logger = configure_logging("INFO")
        configure_logging("DEBUG")

        handlers = [h for h in logger.handlers if getattr(h, "_sdm_handler", False)]
        assert len(handlers) == 1
        assert logger.level == logging.DEBUG
