"""
CSV codecs for waveform, trace, report and curve files.

Files start with ``# key=value`` metadata lines, then a header row and one
row per sample. Floats are written with 17 significant digits and read
back with pandas' round-trip parser, so values survive exactly.
"""

import io
import os
import tempfile
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
import pandas as pd

from genfreq.exceptions import DataFormatError
from models.estimator_model import ComparisonReport
from models.signal_model import SampledSignal
from models.trace_model import FrequencyTrace

PathLike = Union[str, Path]
FLOAT_FORMAT = "%.17g"
SPACING_TOL = 1e-9
TRACE_COLUMNS = ("t", "rho", "omega", "valid")
OUTPUT_MODE = 0o644

T = TypeVar("T")


def _render(df: pd.DataFrame, metadata: Dict[str, object]) -> str:
    head = "".join(f"# {key}={value}\n" for key, value in metadata.items())
    body = df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep="nan")
    return head + body


def _split_metadata(text: str) -> Tuple[Dict[str, str], Dict[str, int], int, str]:
    """Metadata values, the line each key came from, the metadata line count and the CSV body."""
    lines = text.split("\n")
    metadata: Dict[str, str] = {}
    meta_lines: Dict[str, int] = {}
    n_meta = 0
    for line in lines:
        if not line.startswith("#"):
            break
        n_meta += 1
        key, sep, value = line[1:].partition("=")
        if sep:
            metadata[key.strip()] = value.strip()
            meta_lines[key.strip()] = n_meta
    return metadata, meta_lines, n_meta, "\n".join(lines[n_meta:])


class Table(NamedTuple):
    metadata: Dict[str, str]
    meta_lines: Dict[str, int]
    n_meta: int
    df: pd.DataFrame

    def metadata_value(self, key: str, convert: Callable[[str], T], kind: str) -> Optional[T]:
        """Converted metadata value, None when absent; a bad value is a format error on its line."""
        if key not in self.metadata:
            return None
        try:
            return convert(self.metadata[key])
        except ValueError as e:
            raise DataFormatError(
                f"metadata {key}={self.metadata[key]!r} is not {kind}", line=self.meta_lines[key]
            ) from e


def _read_table(path: PathLike) -> Table:
    text = Path(path).read_text(encoding="utf-8")
    metadata, meta_lines, n_meta, body = _split_metadata(text)
    try:
        df = pd.read_csv(io.StringIO(body), float_precision="round_trip")
    except pd.errors.EmptyDataError as e:
        raise DataFormatError(f"{path}: no header row", line=n_meta + 1) from e
    except pd.errors.ParserError as e:
        raise DataFormatError(f"{path}: {e} (line counted after {n_meta} metadata lines)") from e
    if df.empty:
        raise DataFormatError(f"{path}: no data rows", line=n_meta + 2)

    # header is line n_meta + 1, data row k is line n_meta + 2 + k
    for column in df.columns:
        if pd.api.types.is_numeric_dtype(df[column]):
            continue
        parsed = pd.to_numeric(df[column], errors="coerce")
        row = int(np.flatnonzero(parsed.isna().to_numpy())[0])
        raise DataFormatError(
            f"column {column!r}: cannot parse {df[column].iloc[row]!r} as a number",
            line=n_meta + 2 + row,
        )
    return Table(metadata, meta_lines, n_meta, df)


def _check_time_base(t: np.ndarray, sample_rate: Optional[float], n_meta: int) -> float:
    steps = np.diff(t)
    bad = np.flatnonzero(~(steps > 0))
    if bad.size:
        raise DataFormatError("time column is not strictly increasing", line=n_meta + 3 + int(bad[0]))
    if sample_rate is None:
        sample_rate = 1.0 / float(np.median(steps))
    ideal = t[0] + np.arange(t.size) / sample_rate
    tol = SPACING_TOL * max(float(np.max(np.abs(t))), 1.0 / sample_rate)
    off = np.flatnonzero(np.abs(t - ideal) > tol)
    if off.size:
        raise DataFormatError(
            f"time column is not uniformly spaced at {sample_rate:g} Hz", line=n_meta + 2 + int(off[0])
        )
    return sample_rate


# -------------------------
# Waveforms
# -------------------------
def _positive_float(text: str) -> float:
    value = float(text)
    if not (np.isfinite(value) and value > 0):
        raise ValueError(f"{value} is not a positive number")
    return value


def render_waveform(sig: SampledSignal, metadata: Optional[Dict[str, object]] = None) -> str:
    meta = {"sample_rate": repr(sig.sample_rate), "t0": repr(sig.t0), "channels": ",".join(sig.channels)}
    meta.update(metadata or {})
    df = pd.DataFrame(sig.samples, columns=list(sig.channels))
    df.insert(0, "t", sig.t)
    return _render(df, meta)


def read_waveform(path: PathLike) -> Tuple[SampledSignal, Dict[str, str]]:
    table = _read_table(path)
    df, n_meta = table.df, table.n_meta
    if df.columns[0] != "t" or df.shape[1] < 2:
        raise DataFormatError(f"{path}: header must be t,<channel>,...", line=n_meta + 1)
    values = df.to_numpy(dtype=np.float64)
    bad_rows = np.flatnonzero(~np.all(np.isfinite(values), axis=1))
    if bad_rows.size:
        raise DataFormatError("non-finite value", line=n_meta + 2 + int(bad_rows[0]))
    if values.shape[0] < 2:
        raise DataFormatError(f"{path}: a waveform needs at least 2 rows")

    declared = table.metadata_value("sample_rate", _positive_float, "a positive sample rate")
    sample_rate = _check_time_base(values[:, 0], declared, n_meta)
    sig = SampledSignal(
        sample_rate=sample_rate,
        t0=float(values[0, 0]),
        channels=tuple(str(c) for c in df.columns[1:]),
        samples=values[:, 1:],
    )
    return sig, table.metadata


# -------------------------
# Traces
# -------------------------
def render_trace(
    trace: FrequencyTrace, metadata: Optional[Dict[str, object]] = None, report_hz: bool = True
) -> str:
    meta = {"method": trace.method, "signal_dim": trace.signal_dim}
    meta.update(metadata or {})
    columns = {"t": trace.t, "rho": trace.rho, "omega": trace.omega_mag}
    if report_hz:
        columns["omega_hz"] = trace.omega_hz
    columns["valid"] = trace.valid.astype(int)
    df = pd.DataFrame(columns)
    if trace.omega_biv is not None:
        for k, label in enumerate(trace.bivector_labels):
            df[label] = trace.omega_biv[:, k]
    return _render(df, meta)


def read_trace(path: PathLike) -> FrequencyTrace:
    """``omega_hz`` is optional on input; it is always recomputed from ``omega``."""
    table = _read_table(path)
    df, n_meta = table.df, table.n_meta
    missing = [c for c in TRACE_COLUMNS if c not in df.columns]
    if missing:
        raise DataFormatError(f"{path}: missing trace columns {missing}", line=n_meta + 1)
    valid = df["valid"].to_numpy()
    bad = np.flatnonzero(~np.isin(valid, (0, 1)))
    if bad.size:
        raise DataFormatError("valid must be 0 or 1", line=n_meta + 2 + int(bad[0]))
    valid = valid.astype(bool)
    omega = df["omega"].to_numpy(dtype=np.float64)
    bad = np.flatnonzero(valid & ~(omega >= 0))
    if bad.size:
        raise DataFormatError("omega must be non-negative on valid rows", line=n_meta + 2 + int(bad[0]))

    signal_dim = table.metadata_value("signal_dim", int, "an integer dimension")
    biv_columns = [c for c in df.columns if str(c).startswith("b_")]
    try:
        return FrequencyTrace(
            method=table.metadata.get("method", "geometric"),
            signal_dim=signal_dim if signal_dim is not None else 1,
            t=df["t"].to_numpy(dtype=np.float64),
            rho=df["rho"].to_numpy(dtype=np.float64),
            omega_mag=omega,
            omega_biv=df[biv_columns].to_numpy(dtype=np.float64) if biv_columns else None,
            valid=valid,
        )
    except ValueError as e:
        raise DataFormatError(f"{path}: {e}") from e


# -------------------------
# Reports and curves
# -------------------------
def render_report(report: ComparisonReport) -> str:
    return _render(pd.DataFrame([report.as_row()]), {})


def render_curve(sig: SampledSignal, trace: FrequencyTrace) -> str:
    """Voltage trajectory with the unit rotation plane per sample."""
    df = pd.DataFrame(sig.samples, columns=list(sig.channels))
    df.insert(0, "t", sig.t)
    if trace.omega_biv is not None:
        mags = np.sqrt(np.sum(trace.omega_biv**2, axis=-1))
        with np.errstate(invalid="ignore", divide="ignore"):
            planes = trace.omega_biv / np.where(mags > 0, mags, np.nan)[:, None]
        for k, label in enumerate(trace.bivector_labels):
            df[f"plane_{label}"] = planes[:, k]
    return _render(df, {"kind": "curve", "method": trace.method})


# -------------------------
# Output
# -------------------------
def write_texts(items: Sequence[Tuple[PathLike, str]]) -> List[Path]:
    """
    Write all files or none. Each text is staged in a temporary file next
    to its target; targets are replaced only once every stage succeeded.
    """
    staged: List[Tuple[Path, Path]] = []
    try:
        for path, text in items:
            path = Path(path)
            fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
            staged.append((Path(tmp), path))
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.chmod(tmp, OUTPUT_MODE)
        for tmp, path in staged:
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
    return [path for _, path in staged]


def write_text(path: PathLike, text: str) -> Path:
    return write_texts([(path, text)])[0]
