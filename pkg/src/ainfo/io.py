"""Channel files.

JSON is the native format::

    {"x_size": 3, "y_size": 3, "rows": [[...], ...], "name": "optional"}

A plain CSV matrix (one input per line, no header) is accepted when the
path ends in ``.csv``.  Rows off by at most 1e-9 from summing to one are
renormalized when converted to a :class:`~ainfo.core.Channel`; the file
object itself keeps the numbers exactly as read, so reading and re-writing
a file reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ainfo.core import Channel, ValidationError

__all__ = ["BUNDLED_CHANNEL", "ChannelFile", "bundled_channel", "channel_json", "read_channel", "write_channel"]

BUNDLED_CHANNEL = "benchmark_3x3.json"


@dataclass(frozen=True)
class ChannelFile:
    x_size: int
    y_size: int
    rows: tuple[tuple[float, ...], ...]
    name: str | None = None

    @classmethod
    def from_channel(cls, ch: Channel, name: str | None = None) -> "ChannelFile":
        rows = tuple(tuple(float(v) for v in r) for r in ch.rows)
        return cls(ch.x_size, ch.y_size, rows, name if name is not None else ch.name)

    def to_channel(self) -> Channel:
        arr = np.array(self.rows, dtype=np.float64)
        if arr.ndim != 2 or arr.shape != (self.x_size, self.y_size):
            raise ValidationError(
                f"declared size {self.x_size}x{self.y_size} does not match rows of shape {arr.shape}"
            )
        return Channel(arr, name=self.name)


def _from_json(text: str) -> ChannelFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"bad channel JSON: {e}") from None
    if not isinstance(obj, dict):
        raise ValidationError("channel JSON must be an object")
    missing = {"x_size", "y_size", "rows"} - obj.keys()
    if missing:
        raise ValidationError(f"channel JSON lacks {sorted(missing)}")
    try:
        rows = tuple(tuple(float(v) for v in r) for r in obj["rows"])
        xs, ys = int(obj["x_size"]), int(obj["y_size"])
    except (TypeError, ValueError) as e:
        raise ValidationError(f"bad channel JSON: {e}") from None
    return ChannelFile(xs, ys, rows, obj.get("name"))


def _from_csv(text: str) -> ChannelFile:
    rows = []
    for line in csv.reader(text.splitlines()):
        if not line or all(not c.strip() for c in line):
            continue
        try:
            rows.append(tuple(float(c) for c in line))
        except ValueError as e:
            raise ValidationError(f"bad channel CSV: {e}") from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise ValidationError("channel CSV must be a non-empty rectangular matrix")
    return ChannelFile(len(rows), len(rows[0]), tuple(rows))


def read_channel(path) -> ChannelFile:
    """Parse a channel file, picking the format from the extension."""
    path = Path(path)
    text = path.read_text()
    cf = _from_csv(text) if path.suffix.lower() == ".csv" else _from_json(text)
    cf.to_channel()  # validate
    return cf


def write_channel(path, cf: ChannelFile) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            for r in cf.rows:
                w.writerow([repr(v) for v in r])
        return
    path.write_text(channel_json(cf))


def channel_json(cf: ChannelFile) -> str:
    obj = {"x_size": cf.x_size, "y_size": cf.y_size, "rows": [list(r) for r in cf.rows]}
    if cf.name is not None:
        obj["name"] = cf.name
    return json.dumps(obj, indent=2) + "\n"


def bundled_channel() -> Channel:
    """The 3x3 benchmark channel shipped with the package."""
    ref = resources.files("ainfo") / "data" / BUNDLED_CHANNEL
    return _from_json(ref.read_text()).to_channel()
