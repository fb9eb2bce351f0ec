"""Functional graphs and their decomposition into cycles with hanging trees."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence

from .errors import OutOfRange
from .field import FieldSpec
from .polyring import Poly


class FunctionalGraph:
    """Graph of a self-map on ``{0, ..., n-1}``: one edge ``u -> out[u]``."""

    def __init__(self, out: Sequence[int], check: bool = True):
        out = list(out)
        if check:
            n = len(out)
            for i, v in enumerate(out):
                if not 0 <= v < n:
                    raise OutOfRange(i, v, n)
        self.out = out

    @property
    def n(self) -> int:
        return len(self.out)

    @cached_property
    def in_neighbors(self) -> List[List[int]]:
        rev: List[List[int]] = [[] for _ in self.out]
        for u, v in enumerate(self.out):
            rev[v].append(u)
        return rev

    def in_degrees(self) -> List[int]:
        deg = [0] * self.n
        for v in self.out:
            deg[v] += 1
        return deg

    def relabel(self, perm: Sequence[int]) -> "FunctionalGraph":
        """Graph of perm o f o perm^-1, i.e. node u renamed to perm[u]."""
        new = [0] * self.n
        for u, v in enumerate(self.out):
            new[perm[u]] = perm[v]
        return FunctionalGraph(new, check=False)

    def __eq__(self, other):
        return isinstance(other, FunctionalGraph) and self.out == other.out

    def __repr__(self):
        return f"FunctionalGraph(n={self.n})"


def graph_from_poly(F: FieldSpec, f: Poly) -> FunctionalGraph:
    p = F.p
    coeffs = f.coeffs
    if len(coeffs) <= 1:
        c = coeffs[0] if coeffs else 0
        return FunctionalGraph([c] * p, check=False)
    out = []
    top = coeffs[-1]
    rest = coeffs[-2::-1]
    for x in range(p):
        acc = top
        for c in rest:
            acc = (acc * x + c) % p
        out.append(acc)
    return FunctionalGraph(out, check=False)


def graph_from_table(table: Sequence[int]) -> FunctionalGraph:
    return FunctionalGraph(table)


def read_map_file(path: "str | os.PathLike") -> FunctionalGraph:
    """Read a map table: first line ``n``, second line ``n`` integers."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in fh.read().split("\n") if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty map file")
    n = int(lines[0].strip())
    values = [int(tok) for ln in lines[1:] for tok in ln.split()]
    if len(values) != n:
        raise ValueError(f"{path}: expected {n} entries, found {len(values)}")
    return FunctionalGraph(values)


def write_map_file(G: FunctionalGraph, path: "str | os.PathLike") -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{G.n}\n")
        fh.write(" ".join(map(str, G.out)) + "\n")


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Component:
    cycle: List[int]            # cycle nodes in edge direction
    nodes: List[int]            # all nodes, cycle first, then trees in DFS pre-order
    tree_children: List[List[int]]  # shared per-graph table, indexed by node
    order: int = 0              # discovery index

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass
class Decomposition:
    n: int
    components: List[Component]
    tree_children: List[List[int]]
    on_cycle: List[bool]
    component_of: List[int]     # index into ``components``

    @cached_property
    def size_classes(self) -> Dict[int, int]:
        """Map component size k_i -> multiplicity c_i, sorted by size."""
        return dict(sorted(Counter(c.size for c in self.components).items()))

    @property
    def s(self) -> int:
        return len(self.size_classes)

    @property
    def k_star(self) -> int:
        return max(self.size_classes) if self.components else 0

    @property
    def c_star(self) -> int:
        return max(self.size_classes.values()) if self.components else 0

    @property
    def cyclic_points(self) -> int:
        return sum(len(c.cycle) for c in self.components)


def _floyd_meet(out: List[int], v: int) -> int:
    # tortoise and hare; the meeting point lies on the cycle reached from v
    slow = out[v]
    fast = out[out[v]]
    while slow != fast:
        slow = out[slow]
        fast = out[out[fast]]
    return slow


def decompose(G: FunctionalGraph) -> Decomposition:
    """Split G into connected components, each a cycle with rooted trees.

    For every unassigned vertex: Floyd's cycle detection finds a vertex on
    its cycle, the cycle is walked once, and an iterative DFS over the
    reverse adjacency collects the tree hanging at each cycle vertex.
    Components are ordered by (size, discovery order).
    """
    out = G.out
    n = len(out)
    rev = G.in_neighbors
    on_cycle = [False] * n
    comp_id = [-1] * n
    tree_children: List[List[int]] = [[] for _ in range(n)]
    found: List[Component] = []

    for v in range(n):
        if comp_id[v] != -1:
            continue
        start = _floyd_meet(out, v)
        cycle = [start]
        u = out[start]
        while u != start:
            cycle.append(u)
            u = out[u]
        cid = len(found)
        for u in cycle:
            on_cycle[u] = True
            comp_id[u] = cid
        nodes = list(cycle)
        for u in cycle:
            stack = [u]
            while stack:
                w = stack.pop()
                kids = [c for c in rev[w] if not on_cycle[c]]
                tree_children[w] = kids
                for c in kids:
                    comp_id[c] = cid
                    nodes.append(c)
                stack.extend(reversed(kids))
        found.append(Component(cycle, nodes, tree_children, cid))

    ordered = sorted(found, key=lambda c: (c.size, c.order))
    remap = {c.order: i for i, c in enumerate(ordered)}
    component_of = [remap[c] for c in comp_id]
    return Decomposition(n, ordered, tree_children, on_cycle, component_of)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class StatRecord:
    cyclic_points: int
    num_components: int
    largest_component: int
    num_leaves: int
    most_popular_size: int
    popular_size_multiplicity: int
    k_star: int
    c_star: int


def most_popular(size_classes: Dict[int, int]):
    """(size, multiplicity) of the most frequent component size; ties go to
    the smallest size."""
    best_k, best_c = 0, 0
    for k in sorted(size_classes):
        c = size_classes[k]
        if c > best_c:
            best_k, best_c = k, c
    return best_k, best_c


def graph_stats(G: FunctionalGraph, D: "Decomposition | None" = None) -> StatRecord:
    if D is None:
        D = decompose(G)
    indeg = G.in_degrees()
    pop_k, pop_c = most_popular(D.size_classes)
    return StatRecord(
        cyclic_points=D.cyclic_points,
        num_components=len(D.components),
        largest_component=D.k_star,
        num_leaves=sum(1 for x in indeg if x == 0),
        most_popular_size=pop_k,
        popular_size_multiplicity=pop_c,
        k_star=D.k_star,
        c_star=D.c_star,
    )
