"""Tests for flag-driven configuration."""

from argparse import Namespace

import pytest

from app.config import settings as settings_module
from app.config.settings import Settings
from main import build_parser


class TestDefaults:
    def test_defaults(self):
        config = Settings()
        assert config.service.log_level == "WARNING"
        assert config.engine.verify_bound == 6
        assert config.engine.chain_bound == 4
        assert config.engine.rank_max == 8
        assert config.engine.executor in ("thread", "process")
        assert config.output.format == "text"
        assert config.output.output_path is None
        assert config.service.environment == "development"

    @pytest.mark.parametrize("cpus,expected", [(1, "thread"), (None, "thread"), (8, "process")])
    def test_executor_follows_cpu_count(self, monkeypatch, cpus, expected):
        monkeypatch.setattr(settings_module.os, "cpu_count", lambda: cpus)
        assert Settings().engine.executor == expected

    def test_explicit_executor_wins(self, monkeypatch):
        monkeypatch.setattr(settings_module.os, "cpu_count", lambda: 8)
        assert Settings(Namespace(executor="thread")).engine.executor == "thread"

    def test_to_dict(self):
        data = Settings().to_dict()
        assert set(data) == {"service", "engine", "output"}
        assert data["service"]["name"] == "spherical-monoid-engine"


class TestFlags:
    def test_verify_flags(self):
        args = build_parser().parse_args([
            "verify", "--max-coeff", "3", "--chain-bound", "2", "--workers", "8",
            "--executor", "process", "--log-level", "DEBUG", "--output", "out.json",
        ])
        config = Settings.from_args(args)
        assert config.engine.verify_bound == 3
        assert config.engine.chain_bound == 2
        assert config.engine.workers == 8
        assert config.engine.executor == "process"
        assert config.output.output_path == "out.json"
        assert config.service.log_level == "DEBUG"

    def test_absent_flags_keep_defaults(self):
        config = Settings.from_args(build_parser().parse_args(["list"]))
        assert config.engine.rank_max == 8
        assert config.output.format == "text"

    @pytest.mark.parametrize("flags", [
        {"log_level": "LOUD"},
        {"max_coeff": 0},
        {"chain_bound": 0},
        {"rank_max": 10},
        {"rank_max": 0},
        {"workers": 0},
        {"executor": "fiber"},
        {"format": "yaml"},
    ])
    def test_invalid_values(self, flags):
        with pytest.raises(ValueError):
            Settings(Namespace(**flags))

    def test_production_environment(self):
        assert Settings(Namespace(environment="production")).service.environment == "production"
