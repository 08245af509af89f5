from __future__ import annotations

import json
import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator, Union

"""
Output files for runs, matrices and reports.
Every writer stages into `<name>.tmp` beside the target and swaps it in with os.replace,
so an interrupted run leaves either the previous file or none.
"""

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def ensure_dir(p: PathLike) -> Path:
    path = Path(p).expanduser()
    path.mkdir(parents=True, exist_ok=True)
    return path


def ensure_parent(p: PathLike) -> Path:
    path = Path(p).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


@contextmanager
def staged(path: PathLike) -> Iterator[Path]:
    """
    Yield a temp path to write to; on a clean exit it replaces `path`, on error it is
    removed and the exception propagates.
    """
    target = ensure_parent(path)
    tmp = target.with_name(target.name + ".tmp")
    try:
        yield tmp
        os.replace(tmp, target)
    except BaseException:
        if tmp.exists():
            tmp.unlink()
        logger.error("Cannot write %s", target)
        raise


def write_text(path: PathLike, content: str, encoding: str = "utf-8") -> Path:
    with staged(path) as tmp:
        tmp.write_text(content, encoding=encoding)
    return Path(path).expanduser()


def write_lines(path: PathLike, lines: Iterable[str], encoding: str = "utf-8") -> Path:
    """Newline-terminated lines; an empty iterable gives an empty file."""
    return write_text(path, "".join(f"{line}\n" for line in lines), encoding=encoding)


def atomic_write_json(path: PathLike, obj: Any, encoding: str = "utf-8") -> Path:
    """Indented, key-sorted JSON; values json cannot encode (Path, Enum) are written via str()."""
    content = json.dumps(obj, ensure_ascii=False, indent=2, default=str, sort_keys=True)
    return write_text(path, content, encoding=encoding)


def read_text(path: PathLike, encoding: str = "utf-8") -> str:
    return Path(path).expanduser().read_text(encoding=encoding)


def read_json(path: PathLike, encoding: str = "utf-8") -> Any:
    """Raises on missing or malformed files."""
    return json.loads(read_text(path, encoding=encoding))
