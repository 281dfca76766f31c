"""Result files: atomic CSV and JSON writers, event-file codecs, CSV readers."""
import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional, Tuple, Union

import numpy as np
import orjson
import pandas as pd

from app.models.data_models.EventStream import EventStream
from app.models.enums.Channel import Channel
from app.models.exceptions import ConfigIOError, ConfigSyntaxError
from app.models.units import PS

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

EVENT_DTYPE = np.dtype([("channel", "u1"), ("timestamp_ps", "<i8")])
EVENT_COLUMNS = ["channel", "timestamp_ps"]


@contextmanager
def atomic_path(path: PathLike) -> Iterator[Path]:
    """Yield a temporary sibling path that replaces `path` on success"""
    path = Path(path)
    tmp = path.with_name(f".{path.name}.{os.getpid()}.tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        yield tmp
        os.replace(tmp, path)
    except OSError as exc:
        raise ConfigIOError(f"Cannot write {path}: {exc.strerror or exc}") from exc
    finally:
        if tmp.exists():
            tmp.unlink()


def write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    with atomic_path(path) as tmp:
        frame.to_csv(tmp, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return Path(path)


def write_json(data: Any, path: PathLike) -> Path:
    payload = orjson.dumps(data, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY)
    with atomic_path(path) as tmp:
        tmp.write_bytes(payload + b"\n")
    logger.info(f"Wrote {path}")
    return Path(path)


def read_csv(path: PathLike) -> pd.DataFrame:
    """Read a result or input CSV with exact float round trip"""
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except FileNotFoundError as exc:
        raise ConfigIOError(f"Data file not found: {path}") from exc
    except OSError as exc:
        raise ConfigIOError(f"Cannot read {path}: {exc}") from exc
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ConfigSyntaxError(f"{path}: {exc}") from exc


def merge_streams(signal: EventStream, idler: EventStream) -> Tuple[np.ndarray, np.ndarray]:
    """Channel codes and timestamps of both streams in time order, signal first on ties"""
    codes = np.concatenate([
        np.full(len(signal), Channel.SIGNAL.code, dtype=np.uint8),
        np.full(len(idler), Channel.IDLER.code, dtype=np.uint8),
    ])
    stamps = np.concatenate([signal.timestamps_ps, idler.timestamps_ps])
    order = np.lexsort((codes, stamps))
    return codes[order], stamps[order]


def write_events_text(signal: EventStream, idler: EventStream, path: PathLike) -> Path:
    codes, stamps = merge_streams(signal, idler)
    names = np.where(codes == Channel.SIGNAL.code, Channel.SIGNAL.value, Channel.IDLER.value)
    frame = pd.DataFrame({"channel": names, "timestamp_ps": stamps})
    return write_csv(frame, path)


def write_events_binary(signal: EventStream, idler: EventStream, path: PathLike) -> Path:
    """Packed records: 1 byte channel, 8 byte little-endian picoseconds"""
    codes, stamps = merge_streams(signal, idler)
    records = np.empty(codes.size, dtype=EVENT_DTYPE)
    records["channel"] = codes
    records["timestamp_ps"] = stamps
    with atomic_path(path) as tmp:
        tmp.write_bytes(records.tobytes())
    logger.info(f"Wrote {codes.size} packed events to {path}")
    return Path(path)


def read_events(
    path: PathLike, duration: Optional[float] = None, seed: Optional[int] = None
) -> Tuple[EventStream, EventStream]:
    """Read either event format; the packed one is recognised by the .bin suffix"""
    path = Path(path)
    if path.suffix == ".bin":
        try:
            records = np.fromfile(path, dtype=EVENT_DTYPE)
        except OSError as exc:
            raise ConfigIOError(f"Cannot read {path}: {exc}") from exc
        codes = records["channel"]
        stamps = records["timestamp_ps"].astype(np.int64)
        if np.any(codes > 1):
            raise ConfigSyntaxError(f"{path}: unknown channel code in packed event file")
        is_signal = codes == Channel.SIGNAL.code
    else:
        frame = read_csv(path)
        if list(frame.columns) != EVENT_COLUMNS:
            raise ConfigSyntaxError(f"{path}: expected columns {EVENT_COLUMNS}, got {list(frame.columns)}")
        unknown = set(frame["channel"]) - {Channel.SIGNAL.value, Channel.IDLER.value}
        if unknown:
            raise ConfigSyntaxError(f"{path}: unknown channels {sorted(unknown)}")
        stamps = frame["timestamp_ps"].to_numpy(dtype=np.int64)
        is_signal = (frame["channel"] == Channel.SIGNAL.value).to_numpy()
    if duration is None:
        duration = float(stamps.max()) * PS if stamps.size else 0.0
    return (
        EventStream(channel=Channel.SIGNAL, timestamps_ps=stamps[is_signal], duration=duration, seed=seed),
        EventStream(channel=Channel.IDLER, timestamps_ps=stamps[~is_signal], duration=duration, seed=seed),
    )
