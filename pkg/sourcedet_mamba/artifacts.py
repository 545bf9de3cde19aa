"""Write-once, atomic artifact writers"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Union

import pandas as pd

from .errors import ArtifactError

logger = logging.getLogger(__name__)

PathLike = Union[str, "os.PathLike[str]"]


def write_text(path: PathLike, text: str) -> Path:
    """Write ``text`` to a temporary sibling and rename it into place.

    Raises:
        ArtifactError: if ``path`` already exists.
    """
    target = Path(path)
    if target.exists():
        raise ArtifactError(str(target))
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug("wrote %s", target)
    return target


def dumps_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path: PathLike, payload: Any) -> Path:
    return write_text(path, dumps_json(payload))


def write_csv(path: PathLike, frame: pd.DataFrame) -> Path:
    return write_text(path, frame.to_csv(index=False, lineterminator="\n", float_format="%.17g"))


def read_json(path: PathLike) -> Any:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


__all__ = ["dumps_json", "read_json", "write_csv", "write_json", "write_text"]
