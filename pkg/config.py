"""
Configuration management for the interpolation toolkit
"""

import logging
import os
import sys
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional

import structlog
import yaml
from dotenv import load_dotenv


@dataclass(frozen=True)
class SolverOpts:
    """Options shared by the dual, primal and operator-norm searches"""
    restarts: int = 16
    tol: float = 1e-8
    max_iter: int = 20000  # per start
    seed: Optional[int] = None
    gap_slack: float = 1e-6
    truncation_tol: float = 1e-10
    workers: int = 1
    degree: int = 60

    def with_overrides(self, **overrides: Any) -> 'SolverOpts':
        """Copy with every non-None override applied"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def require_seed(self) -> int:
        if self.seed is None:
            raise ValueError("a seed is required for stochastic searches (no hidden global randomness)")
        return int(self.seed)

    def validate(self) -> bool:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tol <= 0 or self.truncation_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1 or self.workers < 1:
            raise ValueError("max_iter and workers must be >= 1")
        if self.gap_slack < 0:
            raise ValueError("gap_slack must be >= 0")
        return True


@dataclass
class OutputConfig:
    """Report serialization settings"""
    float_digits: int = 17
    indent: int = 2
    timing: bool = False


@dataclass
class LoggingConfig:
    """structlog settings; logs always go to stderr"""
    level: str = "WARNING"
    json: bool = False


@dataclass
class Config:
    """Main configuration class"""
    solver: SolverOpts = field(default_factory=SolverOpts)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_env(cls) -> 'Config':
        """Create configuration from environment variables (INTERP_*)"""
        load_dotenv()
        seed = os.getenv("INTERP_SEED")
        return cls(
            solver=SolverOpts(
                restarts=int(os.getenv("INTERP_RESTARTS", "16")),
                tol=float(os.getenv("INTERP_TOL", "1e-8")),
                max_iter=int(os.getenv("INTERP_MAX_ITER", "20000")),
                seed=int(seed) if seed else None,
                gap_slack=float(os.getenv("INTERP_GAP_SLACK", "1e-6")),
                truncation_tol=float(os.getenv("INTERP_TRUNCATION_TOL", "1e-10")),
                workers=int(os.getenv("INTERP_WORKERS", "1")),
                degree=int(os.getenv("INTERP_DEGREE", "60")),
            ),
            output=OutputConfig(
                float_digits=int(os.getenv("INTERP_FLOAT_DIGITS", "17")),
                indent=int(os.getenv("INTERP_INDENT", "2")),
                timing=os.getenv("INTERP_TIMING", "false").lower() == "true",
            ),
            logging=LoggingConfig(
                level=os.getenv("INTERP_LOG_LEVEL", "WARNING"),
                json=os.getenv("INTERP_LOG_JSON", "false").lower() == "true",
            ),
        )

    @classmethod
    def from_file(cls, config_path: Optional[str]) -> 'Config':
        """Create configuration from YAML file"""
        if config_path is None or not Path(config_path).exists():
            # Fall back to environment variables
            return cls.from_env()

        with open(config_path, 'r') as f:
            config_data = yaml.safe_load(f) or {}

        return cls(
            solver=SolverOpts(**config_data.get("solver", {})),
            output=OutputConfig(**config_data.get("output", {})),
            logging=LoggingConfig(**config_data.get("logging", {})),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary"""
        return {
            "solver": asdict(self.solver),
            "output": asdict(self.output),
            "logging": asdict(self.logging),
        }

    def validate(self) -> bool:
        """Validate configuration"""
        self.solver.validate()
        if not 1 <= self.output.float_digits <= 17:
            raise ValueError("float_digits must be in [1, 17]")
        if not isinstance(getattr(logging, self.logging.level.upper(), None), int):
            raise ValueError(f"Unknown log level: {self.logging.level}")
        return True


def configure_logging(settings: LoggingConfig) -> None:
    """Route structlog output to stderr with level filtering"""
    level = getattr(logging, settings.level.upper(), logging.WARNING)
    renderer = (structlog.processors.JSONRenderer(sort_keys=True) if settings.json
                else structlog.dev.ConsoleRenderer(colors=False))
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


# Default configuration
DEFAULT_CONFIG = Config()
