"""Reproducible verification suites over finite parameter grids.

Each suite runs one family of checks across a grid and reports the number
of checks and any failure with enough parameters to reproduce it. Reports
are deterministic given the grid (wall time is kept out of the canonical
JSON unless asked for).
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Tuple

from . import polyring
from .census import enumerate_normalized, eta_lower_bound, upper_bound
from .field import field

SUITES = ("congruence", "gcd", "notsquare", "notethpower", "bounds-sandwich")

DEFAULT_GRIDS: Dict[str, dict] = {
    "congruence": {"d": [2, 3], "q": [5, 7, 13], "K": 4, "H": 4},
    "gcd": {"d": [2, 3], "q": [5, 7, 13], "K": 6},
    "notsquare": {"q": [5, 13], "M": 5},
    "notethpower": {"d": [3], "q": [7, 13], "J": 3, "samples": 50, "seed": 1},
    "bounds-sandwich": {
        "pairs": [[2, p] for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)]
        + [[3, p] for p in (3, 5, 7, 11, 13)]
        + [[4, p] for p in (3, 5, 7)],
        "J": 3,
    },
}


@dataclass
class VerificationReport:
    suite: str
    grid: dict
    checks: int = 0
    failures: List[dict] = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        out = dict(suite=self.suite, grid=self.grid, checks=self.checks,
                   passed=self.passed, failures=self.failures)
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


# each task returns (checks, failures)
Task = Tuple[str, tuple]


def _lemma(report: polyring.LemmaReport) -> Tuple[int, List[dict]]:
    if report.passed:
        return report.checks, []
    return report.checks, [dict(report.counterexample, lemma=report.name)]


def _congruence(d, q, K, H):
    return _lemma(polyring.verify_congruence_lemma(field(q), d, K, H))


def _gcd(d, q, K):
    return _lemma(polyring.verify_gcd_lemma(field(q), d, K))


def _notsquare(q, M):
    return _lemma(polyring.verify_not_square_lemma(field(q), M))


def _notethpower(d, q, J, samples, seed):
    return _lemma(polyring.verify_not_eth_power_lemma(field(q), d, J, samples, seed))


def _sandwich(d, q, J):
    F = field(q)
    p = q
    N = enumerate_normalized(F, d).N
    upper = upper_bound(d, q, p)
    e = math.gcd(d, p - 1)
    checks: List[Tuple[str, bool, dict]] = [("N <= upper", N <= upper, dict(N=N, upper=upper))]
    if e >= 2:
        eta = eta_lower_bound(F, d, J)
        checks.append(("eta <= N", eta <= N, dict(eta=eta, N=N, J=J)))
    if d >= 3:
        checks.append(("N <= 3 q^(d-1)", N <= 3 * q ** (d - 1), dict(N=N)))
    if d % p and math.gcd(q - 1, d - 1) == 1:
        checks.append(("N <= q^(d-1)", N <= q ** (d - 1), dict(N=N)))
    if d == 2 and q % 2:
        checks.append(("upper == q", upper == q, dict(upper=upper)))
    fails = [dict(info, check=name, d=d, q=q) for name, ok, info in checks if not ok]
    return len(checks), fails


_RUNNERS: Dict[str, Callable] = {
    "congruence": _congruence,
    "gcd": _gcd,
    "notsquare": _notsquare,
    "notethpower": _notethpower,
    "bounds-sandwich": _sandwich,
}


def _tasks(name: str, grid: dict) -> List[tuple]:
    if name == "congruence":
        return [(d, q, grid["K"], grid["H"]) for d in grid["d"] for q in grid["q"]]
    if name == "gcd":
        return [(d, q, grid["K"]) for d in grid["d"] for q in grid["q"]]
    if name == "notsquare":
        return [(q, grid["M"]) for q in grid["q"]]
    if name == "notethpower":
        return [(d, q, grid["J"], grid["samples"], grid["seed"])
                for d in grid["d"] for q in grid["q"]]
    if "pairs" in grid:
        pairs = [tuple(pq) for pq in grid["pairs"]]
    else:
        pairs = [(d, q) for d in grid["d"] for q in grid["q"]]
    return [(d, q, grid.get("J", 3)) for d, q in pairs]


def _call(item):
    name, args = item
    return _RUNNERS[name](*args)


def run_suite(name: str, grid: Optional[dict] = None, jobs: int = 1) -> VerificationReport:
    """Run a named suite over ``grid`` (missing keys take the defaults)."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    full = dict(DEFAULT_GRIDS[name])
    if grid:
        full.update({k: v for k, v in grid.items() if v is not None})
        if "d" in grid and name == "bounds-sandwich" and "pairs" not in grid:
            full.pop("pairs", None)
    if name == "bounds-sandwich" and "pairs" not in full:
        full.setdefault("d", [2])
        full.setdefault("q", [3, 5, 7])
    t0 = time.perf_counter()
    items = [(name, args) for args in _tasks(name, full)]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_call, items))
    else:
        results = [_call(it) for it in items]
    report = VerificationReport(name, full)
    for checks, fails in results:
        report.checks += checks
        report.failures.extend(fails)
    report.wall_time = time.perf_counter() - t0
    return report
