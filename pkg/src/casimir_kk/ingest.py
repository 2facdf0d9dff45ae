"""Reading, writing and merging optical-data CSV files.

Three column layouts are accepted, each with a mandatory header row:

    NK         omega_eV,n,k
    EPS        omega_eV,eps1,eps2
    LAMBDA_NK  lambda_um,n,k

Lines starting with ``#`` and blank lines are ignored.  Wavelengths are
converted with omega[eV/hbar] = 1.239841984 / lambda[um].
"""

from __future__ import annotations

import csv
import enum
import math
import warnings
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .constants import HC_EV_UM
from .core import MIN_SAMPLES, OpticalDataset, OpticalDataError, nk_from_eps
from .models import DrudeParams, LorentzOscillator, preset as get_preset, synthetic_dataset


class IngestError(ValueError):
    """A file could not be turned into a valid dataset."""

    def __init__(self, message, path=None, line=None):
        self.path = None if path is None else str(path)
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}" + (f", line {line}" if line is not None else "") + ": "
        super().__init__(where + message)


class MergeWarning(UserWarning):
    """Samples of a later dataset were dropped where an earlier one already has coverage."""


class FileSchema(enum.Enum):
    NK = ("omega_eV", "n", "k")
    EPS = ("omega_eV", "eps1", "eps2")
    LAMBDA_NK = ("lambda_um", "n", "k")

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown schema {name!r}; expected one of {[s.name for s in cls]}") from None


def _rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if row[0].lstrip().startswith("#"):
                continue
            yield lineno, [c.strip() for c in row]


def load_dataset(path, schema=FileSchema.NK, label: Optional[str] = None) -> OpticalDataset:
    schema = FileSchema.parse(schema)
    path = Path(path)
    if not path.is_file():
        raise IngestError("file not found", path)
    rows = _rows(path)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise IngestError("file is empty (header row missing)", path) from None
    if tuple(header) != schema.value:
        raise IngestError(
            f"header {','.join(header)!r} does not match schema {schema.name} ({','.join(schema.value)})",
            path,
            header_line,
        )
    lines, x, a, b = [], [], [], []
    for lineno, row in rows:
        if len(row) != 3:
            raise IngestError(f"expected 3 columns, found {len(row)}", path, lineno)
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise IngestError(f"malformed number in row {row!r}", path, lineno) from None
        if not all(math.isfinite(v) for v in vals):
            raise IngestError("non-finite value", path, lineno)
        if vals[0] <= 0:
            raise IngestError(f"{schema.value[0]} must be positive", path, lineno)
        if schema is FileSchema.EPS:
            if vals[2] < 0:
                raise IngestError("eps2 must be non-negative", path, lineno)
        else:
            if vals[1] <= 0:
                raise IngestError("n must be positive", path, lineno)
            if vals[2] < 0:
                raise IngestError("k must be non-negative", path, lineno)
        lines.append(lineno)
        x.append(vals[0])
        a.append(vals[1])
        b.append(vals[2])
    if len(x) < MIN_SAMPLES:
        raise IngestError(f"found {len(x)} data rows, at least {MIN_SAMPLES} are required", path)
    x = np.array(x)
    a = np.array(a)
    b = np.array(b)
    lines = np.array(lines)
    omega = HC_EV_UM / x if schema is FileSchema.LAMBDA_NK else x
    if schema is FileSchema.EPS:
        n, k = nk_from_eps(a + 1j * b)
        bad = np.flatnonzero(n <= 0)
        if bad.size:
            raise IngestError("permittivity maps to n <= 0", path, int(lines[bad[0]]))
    else:
        n, k = a, b
    order = np.argsort(omega, kind="stable")
    omega, n, k, lines = omega[order], n[order], k[order], lines[order]
    dup = np.flatnonzero(np.diff(omega) == 0)
    if dup.size:
        i = dup[0]
        raise IngestError(
            f"duplicate frequency {omega[i]:g} eV/hbar (also on line {lines[i]})", path, int(lines[i + 1])
        )
    return OpticalDataset(
        omega, n, k,
        label=label if label is not None else path.stem,
        source_meta=f"{path.name} [{schema.name}]",
    )


def write_dataset(data: OpticalDataset, path, schema=FileSchema.NK, comment: Optional[str] = None):
    """Write ``data`` with full round-trip precision."""
    schema = FileSchema.parse(schema)
    if schema is FileSchema.NK:
        cols = (data.omega, data.n, data.k)
    elif schema is FileSchema.EPS:
        cols = (data.omega, data.eps1, data.eps2)
    else:
        cols = (HC_EV_UM / data.omega, data.n, data.k)
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        fh.write(",".join(schema.value) + "\n")
        for row in zip(*cols):
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    return path


def _run_lengths(labels):
    runs = []
    start = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] != labels[start]:
            runs.append(f"{labels[start]}[{start}:{i}]")
            start = i
    return " ".join(runs)


def merge_datasets(sets: Sequence[OpticalDataset], exclusions: Sequence = ()) -> OpticalDataset:
    """Union of several datasets; where coverage overlaps the earlier one wins.

    A sample of a later set is dropped when it falls inside the frequency
    span [omega_min, omega_max] of any set listed before it.  Exclusions are
    half-open intervals [lo, hi) removed afterwards.  ``source_meta`` of the
    result records which set every sample came from, as index runs.
    """
    if not sets:
        raise ValueError("nothing to merge")
    omega, n, k, src = [], [], [], []
    spans = []
    for i, d in enumerate(sets):
        label = d.label or f"set{i}"
        keep = np.ones(len(d), dtype=bool)
        for lo, hi in spans:
            keep &= ~((d.omega >= lo) & (d.omega <= hi))
        dropped = int(np.count_nonzero(~keep))
        if dropped:
            warnings.warn(
                f"{dropped} samples of {label!r} overlap earlier data and were dropped",
                MergeWarning,
                stacklevel=2,
            )
        omega.append(d.omega[keep])
        n.append(d.n[keep])
        k.append(d.k[keep])
        src.extend([label] * int(np.count_nonzero(keep)))
        spans.append((d.omega_min, d.omega_max))
    omega = np.concatenate(omega)
    n = np.concatenate(n)
    k = np.concatenate(k)
    src = np.array(src, dtype=object)
    keep = np.ones(omega.size, dtype=bool)
    for lo, hi in exclusions:
        keep &= ~((omega >= lo) & (omega < hi))
    if not np.any(keep):
        raise ValueError("no samples left after applying exclusions")
    omega, n, k, src = omega[keep], n[keep], k[keep], src[keep]
    order = np.argsort(omega, kind="stable")
    omega, n, k, src = omega[order], n[order], k[order], src[order]
    label = "+".join(d.label or f"set{i}" for i, d in enumerate(sets))
    try:
        return OpticalDataset(omega, n, k, label=label, source_meta=_run_lengths(list(src)))
    except OpticalDataError as exc:
        raise ValueError(f"merged data invalid: {exc}") from exc


def emit_synthetic(
    preset: str,
    grid,
    path,
    omega_p: Optional[float] = None,
    gamma: Optional[float] = None,
    oscillators: Optional[Sequence[LorentzOscillator]] = None,
) -> OpticalDataset:
    """Tabulate a model preset on ``grid`` and write it as an NK file.

    ``preset="custom"`` takes the Drude parameters (and optional oscillators)
    from the keyword arguments; for named presets they override the preset.
    """
    if preset == "custom":
        if omega_p is None or gamma is None:
            raise ValueError("the custom preset needs omega_p and gamma")
        params, oscs = DrudeParams(omega_p, gamma), tuple(oscillators or ())
    else:
        params, oscs = get_preset(preset)
        if omega_p is not None or gamma is not None:
            params = DrudeParams(omega_p or params.omega_p, gamma if gamma is not None else params.gamma)
        if oscillators is not None:
            oscs = tuple(oscillators)
    data = synthetic_dataset(params, oscs, grid, label=preset)
    write_dataset(data, path, comment=f"synthetic {preset}: {data.source_meta}")
    return data

