"""
Configuration settings for the spherical monoid engine.

All configuration comes from command-line flags; there are no environment
variables. Settings() gives the defaults, Settings.from_args() applies a
parsed argparse namespace on top of them.
"""

import os
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Any, Dict, Optional


VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
VALID_FORMATS = ["text", "json", "latex"]
VALID_EXECUTORS = ["thread", "process"]
VALID_ENVIRONMENTS = ["development", "staging", "production"]


def default_executor() -> str:
    """Process pool when more than one CPU is available, threads otherwise."""
    return "process" if (os.cpu_count() or 1) > 1 else "thread"


@dataclass
class ServiceConfig:
    """Service-level configuration."""
    service_name: str = "spherical-monoid-engine"
    version: str = "1.0.0"
    environment: str = "development"
    log_level: str = "WARNING"


@dataclass
class EngineConfig:
    """Bounds and parallelism of the engine."""
    verify_bound: int = 6
    chain_bound: int = 4
    rank_max: int = 8
    workers: int = 4
    executor: str = field(default_factory=default_executor)


@dataclass
class OutputConfig:
    """Output format and destination."""
    format: str = "text"
    output_path: Optional[str] = None


class Settings:
    """
    Application settings manager.

    Each section has its own loader taking an optional argparse namespace;
    missing attributes keep their defaults.
    """

    def __init__(self, args: Optional[Namespace] = None):
        self.service = self._load_service_config(args)
        self.engine = self._load_engine_config(args)
        self.output = self._load_output_config(args)

        self._validate_config()

    @classmethod
    def from_args(cls, args: Namespace) -> "Settings":
        return cls(args)

    @staticmethod
    def _flag(args: Optional[Namespace], name: str, default: Any) -> Any:
        value = getattr(args, name, None) if args is not None else None
        return default if value is None else value

    def _load_service_config(self, args: Optional[Namespace]) -> ServiceConfig:
        defaults = ServiceConfig()
        return ServiceConfig(
            log_level=str(self._flag(args, "log_level", defaults.log_level)).upper(),
            environment=self._flag(args, "environment", defaults.environment),
        )

    def _load_engine_config(self, args: Optional[Namespace]) -> EngineConfig:
        defaults = EngineConfig()
        return EngineConfig(
            verify_bound=int(self._flag(args, "max_coeff", defaults.verify_bound)),
            chain_bound=int(self._flag(args, "chain_bound", defaults.chain_bound)),
            rank_max=int(self._flag(args, "rank_max", defaults.rank_max)),
            workers=int(self._flag(args, "workers", defaults.workers)),
            executor=self._flag(args, "executor", defaults.executor),
        )

    def _load_output_config(self, args: Optional[Namespace]) -> OutputConfig:
        return OutputConfig(
            format=self._flag(args, "format", OutputConfig.format),
            output_path=self._flag(args, "output", None),
        )

    def _validate_config(self) -> None:
        """Validate configuration values."""
        if self.service.log_level not in VALID_LOG_LEVELS:
            raise ValueError(f"Invalid log level: {self.service.log_level}")
        if self.service.environment not in VALID_ENVIRONMENTS:
            raise ValueError(f"Unknown environment: {self.service.environment}")

        if self.engine.verify_bound < 1:
            raise ValueError("Verification bound must be at least 1")
        if self.engine.chain_bound < 1:
            raise ValueError("Chain bound must be at least 1")
        if not 1 <= self.engine.rank_max <= 9:
            raise ValueError(f"rank_max must lie in 1..9, got {self.engine.rank_max}")
        if self.engine.workers < 1:
            raise ValueError("Worker count must be positive")
        if self.engine.executor not in VALID_EXECUTORS:
            raise ValueError(f"Unknown executor kind: {self.engine.executor}")

        if self.output.format not in VALID_FORMATS:
            raise ValueError(f"Unknown output format: {self.output.format}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "service": {
                "name": self.service.service_name,
                "version": self.service.version,
                "environment": self.service.environment,
                "log_level": self.service.log_level,
            },
            "engine": {
                "verify_bound": self.engine.verify_bound,
                "chain_bound": self.engine.chain_bound,
                "rank_max": self.engine.rank_max,
                "workers": self.engine.workers,
                "executor": self.engine.executor,
            },
            "output": {
                "format": self.output.format,
                "output_path": self.output.output_path,
            },
        }


# Global settings instance
settings = Settings()
