"""Counting non-isomorphic functional graphs of degree-d polynomials.

``enumerate_normalized`` scans one representative family per affine
conjugacy class; ``enumerate_bruteforce`` scans every polynomial of degree d
and serves as its oracle. Both deduplicate by whole-graph canonical label.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Set, Tuple

from .canon import GENERAL, QUADRATIC, GraphLabel, label_graph
from .errors import BadExponent, BudgetExceeded, Unsupported
from .field import FieldSpec, totient
from .graph import FunctionalGraph

BRUTE_FORCE_BUDGET = 10 ** 7

NORMALIZED, BRUTE_FORCE = "normalized", "brute_force"


@dataclass
class CensusResult:
    d: int
    q: int
    N: int
    family_size: int
    mode: str
    label_mode: str
    labels: Optional[List[GraphLabel]] = None
    wall_time: float = 0.0

    def summary(self, timing: bool = False) -> dict:
        out = dict(d=self.d, q=self.q, N=self.N, family_size=self.family_size,
                   mode=self.mode, label_mode=self.label_mode)
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def export_lines(self) -> List[str]:
        """One hex-packed label per distinct graph, sorted."""
        if self.labels is None:
            raise ValueError("census was run without keeping labels")
        return sorted(lab.hex() for lab in self.labels)


def label_mode_for(d: int, p: int) -> str:
    return QUADRATIC if d == 2 and p % 2 == 1 else GENERAL


# ---------------------------------------------------------------------------
# polynomial families, as lists of coefficient "blocks"
#
# A block is (leading options, fixed coefficient slots) describing a product
# set of coefficient vectors; members are addressed by a flat index so the
# scan can be split into contiguous ranges across workers.


@dataclass(frozen=True)
class _Block:
    choices: Tuple[Tuple[int, ...], ...]  # per coefficient a_0..a_d, allowed values

    @property
    def size(self) -> int:
        return math.prod(len(c) for c in self.choices)

    def member(self, i: int) -> List[int]:
        coeffs = []
        for opts in self.choices:
            i, r = divmod(i, len(opts))
            coeffs.append(opts[r])
        return coeffs


def normalized_family(F: FieldSpec, d: int) -> List[_Block]:
    p = F.p
    if d < 2:
        raise ValueError("degree must be >= 2")
    if d == 2 and p == 2:
        raise Unsupported("normalized enumeration excludes d = 2 over characteristic 2")
    m = math.gcd(d - 1, p - 1)
    omega = tuple(F.power_coset_representatives(m))
    free = tuple(range(p))
    nonzero = tuple(range(1, p))
    if d % p:
        # a_{d-1} = 0 after translation
        return [_Block((free,) * (d - 1) + ((0,), omega))]
    # p | d: either a_{d-1} = 0, or a_{d-1} != 0 and a_{d-2} = 0
    return [
        _Block((free,) * (d - 1) + ((0,), omega)),
        _Block((free,) * (d - 2) + ((0,), nonzero, omega)),
    ]


def full_family(F: FieldSpec, d: int) -> List[_Block]:
    p = F.p
    return [_Block((tuple(range(p)),) * d + (tuple(range(1, p)),))]


def _table(coeffs: Sequence[int], p: int, powers: List[List[int]]) -> List[int]:
    # sum_j a_j x^j with precomputed power rows
    out = [0] * p
    for j, a in enumerate(coeffs):
        if a:
            row = powers[j]
            for x in range(p):
                out[x] += a * row[x]
    return [v % p for v in out]


def _scan(args) -> Set[GraphLabel]:
    p, d, blocks, start, stop, mode = args
    powers = [[pow(x, j, p) for x in range(p)] for j in range(d + 1)]
    seen: Set[GraphLabel] = set()
    offset = 0
    for block in blocks:
        lo, hi = max(start - offset, 0), min(stop - offset, block.size)
        for i in range(lo, hi):
            G = FunctionalGraph(_table(block.member(i), p, powers), check=False)
            seen.add(label_graph(G, mode))
        offset += block.size
    return seen


def _run(F: FieldSpec, d: int, blocks: List[_Block], kind: str,
         jobs: int, keep_labels: bool) -> CensusResult:
    t0 = time.perf_counter()
    total = sum(b.size for b in blocks)
    mode = label_mode_for(d, F.p)
    jobs = max(1, int(jobs))
    if jobs == 1 or total < 2 * jobs:
        seen = _scan((F.p, d, blocks, 0, total, mode))
    else:
        step = -(-total // jobs)
        tasks = [(F.p, d, blocks, lo, min(lo + step, total), mode)
                 for lo in range(0, total, step)]
        seen = set()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_scan, tasks):
                seen |= part
    labels = sorted(seen, key=GraphLabel.hex) if keep_labels else None
    return CensusResult(d, F.p, len(seen), total, kind, mode, labels,
                        time.perf_counter() - t0)


def enumerate_normalized(F: FieldSpec, d: int, jobs: int = 1,
                         keep_labels: bool = False) -> CensusResult:
    """N_d(p) from the normalized family A_d X^d + (lower terms), A_d running
    over coset representatives of the (d-1)-th powers."""
    return _run(F, d, normalized_family(F, d), NORMALIZED, jobs, keep_labels)


def enumerate_bruteforce(F: FieldSpec, d: int, jobs: int = 1,
                         keep_labels: bool = False,
                         budget: int = BRUTE_FORCE_BUDGET) -> CensusResult:
    """N_d(p) by labelling all (p-1) p^d polynomials of degree d."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    size = (F.p - 1) * F.p ** d
    if size > budget:
        raise BudgetExceeded(f"brute-force family has {size} graphs (budget {budget})")
    return _run(F, d, full_family(F, d), BRUTE_FORCE, jobs, keep_labels)


def write_census(result: CensusResult, labels_path=None, summary_path=None,
                 timing: bool = False) -> None:
    if labels_path is not None:
        with open(labels_path, "w", encoding="ascii") as fh:
            fh.writelines(line + "\n" for line in result.export_lines())
    if summary_path is not None:
        with open(summary_path, "w", encoding="ascii") as fh:
            json.dump(result.summary(timing), fh, indent=2, sort_keys=True)
            fh.write("\n")


# ---------------------------------------------------------------------------
# bounds


def upper_bound(d: int, q: int, p: int) -> int:
    """Conjugation-orbit upper bound on N_d(q).

    q^(d-1) + (s-1) q^(d-1-phi(d-1)), plus (q-1) q^(d/p-1) when p | d,
    where s = gcd(q-1, d-1).
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    s = math.gcd(q - 1, d - 1)
    phi = totient(d - 1)
    # for s > 1 we have d >= 3, so d-1-phi(d-1) >= 0
    bound = q ** (d - 1) + (s - 1) * q ** max(d - 1 - phi, 0)
    if d % p == 0:
        bound += (q - 1) * q ** (d // p - 1)
    return bound


def rho(d: int, e: int) -> float:
    """Exponent rho_{d,e} = 1 / (2 (e - 1 + log d / log e))."""
    if d < 2 or e < 2:
        raise ValueError("rho needs d >= 2 and e >= 2")
    return 1.0 / (2.0 * (e - 1 + math.log(d) / math.log(e)))


def _eth_power_exponent(F: FieldSpec, d: int) -> int:
    e = math.gcd(d, F.p - 1)
    if e < 2:
        raise BadExponent(f"e = gcd({d}, {F.p - 1}) = {e} < 2")
    return e


def eta_vector(F: FieldSpec, d: int, a: int, J: int, start: int = 1) -> List[int]:
    """Leaf counts among the off-path preimages along the orbit of a.

    Entry j (j = start .. start+J-1) counts gamma in Gamma_e \\ {1} for which
    gamma * f_a^(j)(a) - a is not an e-th power, for f_a = X^d + a.
    """
    p = F.p
    e = _eth_power_exponent(F, d)
    a %= p
    if a == 0:
        raise ValueError("eta vectors are defined for a != 0")
    gammas = [g for g in F.roots_of_unity(e) if g != 1]
    cofactor = (p - 1) // e
    x = a
    for _ in range(start):
        x = (pow(x, d, p) + a) % p
    vec = []
    for _ in range(J):
        count = 0
        for g in gammas:
            y = (g * x - a) % p
            if y and pow(y, cofactor, p) != 1:
                count += 1
        vec.append(count)
        x = (pow(x, d, p) + a) % p
    return vec


def eta_lower_bound(F: FieldSpec, d: int, J: int, start: int = 1) -> int:
    """Number of distinct eta vectors over a in F_p^*; a lower bound on N_d(p)."""
    _eth_power_exponent(F, d)
    return len({tuple(eta_vector(F, d, a, J, start)) for a in range(1, F.p)})


@dataclass
class BoundsReport:
    d: int
    q: int
    p: int
    s: int
    phi: int
    upper: int
    e: int
    rho: Optional[float]
    eta_lower: Optional[int] = None
    eta_depth: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


def bounds_report(F: FieldSpec, d: int, eta_depth: Optional[int] = None) -> BoundsReport:
    p = F.p
    e = math.gcd(d, p - 1)
    report = BoundsReport(
        d=d, q=p, p=p, s=math.gcd(p - 1, d - 1), phi=totient(d - 1),
        upper=upper_bound(d, p, p), e=e, rho=rho(d, e) if e >= 2 else None)
    if eta_depth is not None and e >= 2:
        report.eta_lower = eta_lower_bound(F, d, eta_depth)
        report.eta_depth = eta_depth
    return report
