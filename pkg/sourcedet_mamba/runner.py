import json
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, TypeVar

from attrs import define, evolve, field

from .artifacts import PathLike, read_json, write_json
from .errors import ConfigError
from .models import RunConfig
from .types import UNSET

logger = logging.getLogger(__name__)

CONFIG_FILE = "config.json"

A = TypeVar("A")
R = TypeVar("R")


def _optional_path(value: Optional[PathLike]) -> Optional[Path]:
    return None if value is None else Path(value)


def load_config(path: Optional[PathLike] = None, overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Merge built-in defaults, the JSON file at ``path`` and ``overrides`` (highest precedence).

    Override values equal to ``UNSET`` or ``None`` are ignored. Keys may be dotted
    (``"model.epochs"``) to reach into a section.

    Raises:
        ConfigError: the file is unreadable JSON, a key is unknown or a value is invalid.
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        try:
            raw = read_json(path)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"Cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"Config {path} must hold a JSON object")

    for key, value in (overrides or {}).items():
        if value is UNSET or value is None:
            continue
        target = raw
        *sections, leaf = key.split(".")
        for section in sections:
            target = target.setdefault(section, {})
        target[leaf] = value

    try:
        return RunConfig.from_dict(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid configuration value: {exc}") from exc


@define
class Runner:
    """Keeps track of the configuration and resources of one command invocation

    The following are accepted as keyword arguments:

        ``config``: the merged (not yet seed-resolved) run configuration.

        ``out``: output directory; defaults to ``config.out``.

    Used as a context manager the runner creates the output directory, writes the resolved
    configuration to ``config.json`` and shuts down its worker pool on exit.
    """

    config: RunConfig = field(factory=RunConfig)
    _out: Optional[Path] = field(default=None, kw_only=True, alias="out", converter=_optional_path)
    _executor: Optional[Executor] = field(default=None, init=False)

    @property
    def resolved(self) -> RunConfig:
        return self.config.resolved()

    @property
    def out_dir(self) -> Path:
        if self._out is not None:
            return self._out
        if self.config.out is None:
            raise ConfigError("no output directory given (use --out or the 'out' config key)")
        return Path(self.config.out)

    def with_overrides(self, **overrides: Any) -> "Runner":
        """Get a new runner matching this one with top-level config fields replaced"""
        changes = {k: v for k, v in overrides.items() if v is not UNSET}
        return evolve(self, config=evolve(self.config, **changes))

    def with_config(self, config: RunConfig) -> "Runner":
        return evolve(self, config=config)

    def with_out(self, out: PathLike) -> "Runner":
        return evolve(self, out=Path(out))

    def set_executor(self, executor: Executor) -> "Runner":
        """Manually set the worker pool

        **NOTE**: the runner shuts it down on exit like one it built itself.
        """
        self._executor = executor
        return self

    def get_executor(self) -> Optional[Executor]:
        """Get the worker pool, constructing one if ``jobs > 1`` and none was set"""
        if self._executor is None and self.config.jobs > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.config.jobs)
        return self._executor

    def map(self, fn: Callable[[A], R], items: Iterable[A]) -> List[R]:
        """Ordered map over ``items``, in worker processes when a pool is available"""
        executor = self.get_executor()
        if executor is None:
            return [fn(item) for item in items]
        return list(executor.map(fn, items))

    def __enter__(self) -> "Runner":
        out = self.out_dir
        out.mkdir(parents=True, exist_ok=True)
        write_json(out / CONFIG_FILE, evolve(self.resolved, out=str(out)).to_dict())
        logger.info("writing outputs to %s", out)
        return self

    def __exit__(self, *args: Any, **kwargs: Any) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None


__all__ = ["CONFIG_FILE", "Runner", "load_config"]
