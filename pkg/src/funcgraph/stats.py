"""Statistics of the quadratic family X^2 + a over F_p versus random maps.

The per-graph summaries are computed by a vectorised pointer-doubling
kernel over batches of map tables (``engine="kernel"``); the exact same
numbers can be produced through the cycle/tree decomposition of
:mod:`funcgraph.graph` (``engine="decompose"``), which the test suite uses
as a cross-check.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import PreconditionViolated, UnknownFormat
from .field import FieldSpec, largest_odd_divisor
from .graph import FunctionalGraph, graph_stats

GIANT_COMPONENT_FRACTION = 0.75788

METRICS = ("cyclic_points", "components", "largest_component",
           "most_popular_size", "popular_size_multiplicity", "leaves")

_BATCH_ELEMENTS = 1 << 22


def quadratic_base(p: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    return x * x % p


def _batches(p: int, values: Sequence[int]) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    base = quadratic_base(p)
    rows = max(1, _BATCH_ELEMENTS // p)
    values = np.asarray(values, dtype=np.int64)
    for lo in range(0, len(values), rows):
        a = values[lo:lo + rows]
        yield a, (base[None, :] + a[:, None]) % p


def _doubling_steps(n: int) -> int:
    return max(1, (n - 1).bit_length())


def _flatten(tables: np.ndarray) -> np.ndarray:
    # row r, node x -> global node r*n + x, so whole batches are one map
    B, n = tables.shape
    dtype = np.int64 if B * n >= 2 ** 31 else np.int32
    offset = (np.arange(B, dtype=dtype) * n)[:, None]
    return (tables.astype(dtype) + offset).ravel()


def cyclic_counts(tables: np.ndarray) -> np.ndarray:
    """Number of cyclic points of each row's map."""
    B, n = tables.shape
    jump = _flatten(tables)
    for _ in range(_doubling_steps(n)):
        jump = jump[jump]
    # f^(2^K) with 2^K >= n maps every node onto its cycle; its image is
    # exactly the set of cyclic points
    mark = np.zeros(B * n, dtype=bool)
    mark[jump] = True
    return mark.reshape(B, n).sum(axis=1)


def summarize_tables(tables: np.ndarray) -> List[dict]:
    """Per-row graph summaries (same fields as StatRecord)."""
    B, n = tables.shape
    step = _flatten(tables)
    jump = step
    orbit_min = np.arange(B * n, dtype=step.dtype)
    for _ in range(_doubling_steps(n)):
        orbit_min = np.minimum(orbit_min, orbit_min[jump])
        jump = jump[jump]
    # the minimum around a cycle identifies its component
    comp = orbit_min[jump]

    mark = np.zeros(B * n, dtype=bool)
    mark[jump] = True
    cyclic = mark.reshape(B, n).sum(axis=1)

    inner = np.zeros(B * n, dtype=bool)
    inner[step] = True
    leaves = n - inner.reshape(B, n).sum(axis=1)

    sizes = np.bincount(comp, minlength=B * n).reshape(B, n)

    out = []
    for r in range(B):
        row = sizes[r]
        row = row[row > 0]
        ks, cs = np.unique(row, return_counts=True)
        best = int(np.argmax(cs))  # first maximum = smallest size
        out.append(dict(
            cyclic_points=int(cyclic[r]),
            num_components=int(len(row)),
            largest_component=int(ks[-1]),
            num_leaves=int(leaves[r]),
            most_popular_size=int(ks[best]),
            popular_size_multiplicity=int(cs[best]),
            k_star=int(ks[-1]),
            c_star=int(cs.max()),
        ))
    return out


def special_values(p: int) -> set:
    """The excluded shifts a = 0 and a = -2."""
    return {0, (-2) % p}


def family_values(p: int, exclude_special: bool) -> List[int]:
    skip = special_values(p) if exclude_special else set()
    return [a for a in range(p) if a not in skip]


def quadratic_records(p: int, values: Iterable[int], engine: str = "kernel") -> Iterator[Tuple[int, dict]]:
    values = list(values)
    if engine == "kernel":
        for a_batch, tables in _batches(p, values):
            for a, rec in zip(a_batch.tolist(), summarize_tables(tables)):
                yield a, rec
    elif engine == "decompose":
        base = quadratic_base(p).tolist()
        for a in values:
            G = FunctionalGraph([(b + a) % p for b in base], check=False)
            yield a, asdict(graph_stats(G))
    else:
        raise ValueError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# aggregation


@dataclass
class MetricSummary:
    min: int
    max: int
    total: int
    count: int

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else float("nan")

    def add(self, v: int) -> None:
        if self.count == 0:
            self.min = self.max = v
        else:
            self.min = min(self.min, v)
            self.max = max(self.max, v)
        self.total += v
        self.count += 1


_RECORD_FIELD = {
    "cyclic_points": "cyclic_points",
    "components": "num_components",
    "largest_component": "largest_component",
    "most_popular_size": "most_popular_size",
    "popular_size_multiplicity": "popular_size_multiplicity",
    "leaves": "num_leaves",
}


def baselines(p: int) -> Dict[str, Optional[float]]:
    """Random-map predictions for each metric (None where no model exists)."""
    return {
        "cyclic_points": math.sqrt(math.pi * p / 2),
        "components": 0.5 * math.log(p),
        "largest_component": GIANT_COMPONENT_FRACTION * p,
        "most_popular_size": None,
        "popular_size_multiplicity": None,
        "leaves": p / math.e,
    }


@dataclass
class FamilyStats:
    p: int
    exclude_special: bool
    count: int
    metrics: Dict[str, MetricSummary]
    baselines: Dict[str, Optional[float]]
    r: int
    s: int
    C: Optional[int] = None
    C_star: Optional[int] = None

    def mean(self, metric: str) -> float:
        return self.metrics[metric].mean

    def ratio(self, metric: str) -> Optional[float]:
        b = self.baselines[metric]
        return None if b is None else self.mean(metric) / b

    def to_dict(self) -> dict:
        return dict(
            p=self.p, exclude_special=self.exclude_special, count=self.count,
            r=self.r, s=self.s, C=self.C, C_star=self.C_star,
            metrics={k: dict(min=m.min, max=m.max, mean=m.mean,
                             expected=self.baselines[k], ratio=self.ratio(k))
                     for k, m in self.metrics.items()},
        )


def _check_odd_prime(p: int) -> None:
    FieldSpec(p)
    if p == 2:
        raise PreconditionViolated("the quadratic family needs an odd prime")


def family_stats(p: int, exclude_special: bool = False, engine: str = "kernel") -> FamilyStats:
    """Min/max/mean of each graph metric over f = X^2 + a.

    With ``exclude_special`` the two shifts a = 0 and a = -2 are left out.
    Aggregation is streaming and uses exact integer totals, so means do
    not depend on batch boundaries.
    """
    _check_odd_prime(p)
    metrics = {m: MetricSummary(0, 0, 0, 0) for m in METRICS}
    count = 0
    for _, rec in quadratic_records(p, family_values(p, exclude_special), engine):
        count += 1
        for m in METRICS:
            metrics[m].add(rec[_RECORD_FIELD[m]])
    stats = FamilyStats(p, exclude_special, count, metrics, baselines(p),
                        r=largest_odd_divisor(p - 1), s=largest_odd_divisor(p + 1))
    if exclude_special:
        stats.C_star = metrics["cyclic_points"].max
    else:
        stats.C = metrics["cyclic_points"].max
    return stats


def cyclic_points_at(p: int, a: int) -> int:
    tables = ((quadratic_base(p) + a) % p)[None, :]
    return int(cyclic_counts(tables)[0])


@dataclass
class CyclicExtremes:
    p: int
    C: int
    C_star: Optional[int]
    r: int
    s: int
    c_f0: int
    c_fm2: int

    @property
    def f0_identity(self) -> bool:
        return self.c_f0 == self.r + 1

    @property
    def fm2_identity(self) -> bool:
        return self.c_fm2 == (self.r + self.s) // 2

    @property
    def lower_bound_holds(self) -> bool:
        # C(p) >= max(r+1, (r+s)/2) >= (p+3)/4
        return 4 * self.C >= self.p + 3 and self.C >= max(self.r + 1, (self.r + self.s) // 2)

    @property
    def excess_over_3p8(self) -> Optional[float]:
        # reported only; the O(1) constant is unspecified
        return None if self.C_star is None else self.C_star - 3 * self.p / 8


def cyclic_extremes(p: int) -> CyclicExtremes:
    """C(p), C*(p) by a full scan over a, together with r, s and the
    cyclic point counts of X^2 and X^2 - 2."""
    _check_odd_prime(p)
    counts = np.empty(p, dtype=np.int64)
    for a_batch, tables in _batches(p, range(p)):
        counts[a_batch] = cyclic_counts(tables)
    special = special_values(p)
    rest = [int(counts[a]) for a in range(p) if a not in special]
    return CyclicExtremes(
        p=p, C=int(counts.max()), C_star=max(rest) if rest else None,
        r=largest_odd_divisor(p - 1), s=largest_odd_divisor(p + 1),
        c_f0=int(counts[0]), c_fm2=int(counts[(-2) % p]))


# ---------------------------------------------------------------------------
# table rendering

# name -> (metric, show expected, show ratio)
TABLES = {
    "cyclic": ("cyclic_points", True, False),
    "components": ("components", True, True),
    "popular-size": ("most_popular_size", False, False),
    "popular-mult": ("popular_size_multiplicity", False, False),
    "largest": ("largest_component", True, True),
    "leaves": ("leaves", True, True),
}

FORMATS = ("text", "csv", "json")


def _rows(stats: Sequence[FamilyStats], table: str) -> Tuple[List[str], List[list]]:
    metric, show_expected, show_ratio = TABLES[table]
    columns = ["prime", "metric", "min", "max", "mean"]
    if show_expected:
        columns.append("expected")
    if show_ratio:
        columns.append("ratio")
    rows = []
    for st in stats:
        m = st.metrics[metric]
        row = [st.p, metric, m.min, m.max, m.mean]
        if show_expected:
            row.append(st.baselines[metric])
        if show_ratio:
            row.append(st.ratio(metric))
        rows.append(row)
    return columns, rows


def emit_table(stats: Sequence[FamilyStats], table: str = "cyclic", fmt: str = "text") -> str:
    """Render one metric table, one row per prime."""
    if fmt not in FORMATS:
        raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLES)}")
    columns, rows = _rows(stats, table)
    if fmt == "json":
        return json.dumps([dict(zip(columns, r)) for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r])
        return buf.getvalue()

    headers = {"prime": "Prime", "min": "Min", "max": "Max", "mean": "Average",
               "expected": "Expected", "ratio": "Ratio"}
    keep = [i for i, c in enumerate(columns) if c != "metric"]
    cells = [[headers[columns[i]] for i in keep]]
    for r in rows:
        line = []
        for i in keep:
            v = r[i]
            if columns[i] == "ratio":
                line.append(f"{v:.9f}")
            elif isinstance(v, float):
                line.append(f"{v:.7f}")
            else:
                line.append(str(v))
        cells.append(line)
    widths = [max(len(row[j]) for row in cells) for j in range(len(keep))]
    return "".join(" ".join(c.rjust(w) for c, w in zip(row, widths)) + "\n" for row in cells)


def emit_tables(stats: Sequence[FamilyStats], tables: Sequence[str] = tuple(TABLES),
                fmt: str = "text") -> str:
    """Render several tables at once.

    Text output stacks the aligned tables under a title line each. CSV and
    JSON share one row schema with ``metric`` telling tables apart; the
    ``expected`` and ``ratio`` cells are empty where a table has none.
    """
    if fmt not in FORMATS:
        raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if fmt == "text":
        return "\n".join(f"[{t}]\n" + emit_table(stats, t, "text") for t in tables)
    columns = ["prime", "metric", "min", "max", "mean", "expected", "ratio"]
    rows = []
    for t in tables:
        cols, part = _rows(stats, t)
        for r in part:
            d = dict(zip(cols, r))
            rows.append([d.get(c) for c in columns])
    if fmt == "json":
        return json.dumps([dict(zip(columns, r)) for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()
