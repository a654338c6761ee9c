"""Batch scans over the eligible (g, d) region with CSV or JSON output.

Rows are computed by a process pool (``SLOPESTAB_THREADS`` bounds the worker
count) and written by a single writer after sorting on ``(g, d, t)``, so two
runs over the same range produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional, Sequence

from . import family as fm
from . import jflow as jf
from .certificate import main_certificate
from .exactnum import Rational, format_rational, parse_rational
from .slope import destabilizes, mu_c, mu_variety

HEADER = ("g", "d", "t", "mu", "mu_1", "Q", "verdict", "alpha_ample")
APPROX_COLUMN = "approx_mu_1_minus_mu_NONAUTHORITATIVE"
DEFAULT_OFFSETS = tuple(Rational(1, k) for k in (2, 4, 8, 16))
LIMIT_VERDICT = "Limit"
THREADS_ENV = "SLOPESTAB_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    return os.cpu_count() or 1


def t_samples(fam: fm.CurveFamily, offsets: Sequence[Rational], include_t0: bool) -> list[Rational]:
    ts = {fam.s_C + off for off in offsets if off > 0}
    if include_t0:
        cert = main_certificate(fam)
        ts.add(parse_rational(cert["inputs"]["t"]))
    return sorted(ts)


def row_for(fam: fm.CurveFamily, t: Rational) -> dict:
    data = fm.surface_data(fam, t)
    interval = fm.seshadri_interval(fam, t)
    decision = destabilizes(data, interval.lo)
    try:
        mu_1 = format_rational(mu_c(data, 1))
    except ArithmeticError:
        mu_1 = ""
    return {
        "g": format_rational(fam.g),
        "d": format_rational(fam.d),
        "t": format_rational(t),
        "mu": format_rational(mu_variety(data)),
        "mu_1": mu_1,
        "Q": format_rational(fam.Q),
        "verdict": decision.verdict.value,
        "alpha_ample": "true" if jf.alpha_ample(fam, t) else "false",
    }


def limit_row(fam: fm.CurveFamily) -> dict:
    mu, mu_1 = fm.limit_slopes(fam)
    return {
        "g": format_rational(fam.g),
        "d": format_rational(fam.d),
        "t": format_rational(fam.s_C),
        "mu": format_rational(mu),
        "mu_1": format_rational(mu_1),
        "Q": format_rational(fam.Q),
        "verdict": LIMIT_VERDICT,
        "alpha_ample": "",
    }


def family_rows(g: int, d: int, offsets: Sequence[Rational], include_t0: bool, include_limit: bool) -> list[dict]:
    fam = fm.new_family(g, d)
    rows = [row_for(fam, t) for t in t_samples(fam, offsets, include_t0)]
    if include_limit:
        rows.append(limit_row(fam))
    return rows


def _task(args) -> list[dict]:
    g, d, offsets, include_t0, include_limit = args
    return family_rows(g, d, offsets, include_t0, include_limit)


def eligible_region(g_min: int, g_max: int, degrees: Optional[Iterable[int]] = None) -> list[tuple[int, int]]:
    allowed = None if degrees is None else set(degrees)
    cells = []
    for g in range(max(g_min, 2), g_max + 1):
        for d in fm.eligible_degrees(g):
            if allowed is None or d in allowed:
                cells.append((g, d))
    return cells


def _row_key(row: dict):
    return tuple(parse_rational(row[k]) for k in ("g", "d", "t")) + (row["verdict"] == LIMIT_VERDICT,)


def scan(
    g_min: int,
    g_max: int,
    offsets: Sequence[Rational] = DEFAULT_OFFSETS,
    include_t0: bool = True,
    include_limit: bool = True,
    degrees: Optional[Iterable[int]] = None,
    workers: Optional[int] = None,
) -> list[dict]:
    if g_min > g_max:
        raise ValueError(f"empty genus range [{g_min}, {g_max}]")
    cells = eligible_region(g_min, g_max, degrees)
    tasks = [(g, d, tuple(offsets), include_t0, include_limit) for g, d in cells]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(tasks) < 2:
        chunks = [_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=_row_key)
    return rows


def _approx(row: dict) -> str:
    if not row["mu_1"]:
        return ""
    gap = parse_rational(row["mu_1"]) - parse_rational(row["mu"])
    return f"{float(gap):.15g}"


def to_csv(rows: Sequence[dict], approx: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER + ((APPROX_COLUMN,) if approx else ()))
    for row in rows:
        values = [row[k] for k in HEADER]
        if approx:
            values.append(_approx(row))
        writer.writerow(values)
    return buf.getvalue()


def to_json(rows: Sequence[dict], approx: bool = False) -> str:
    out = []
    for row in rows:
        item = dict(row)
        if approx:
            item[APPROX_COLUMN] = _approx(row)
        out.append(item)
    return json.dumps(out, indent=2) + "\n"


def write_rows(path: str, rows: Sequence[dict], fmt: str = "csv", approx: bool = False) -> None:
    text = to_csv(rows, approx) if fmt == "csv" else to_json(rows, approx)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
