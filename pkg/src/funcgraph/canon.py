"""Canonical labels for functional graphs and trie-based isomorphism testing.

Labels are strings over three symbols ordered ONE > ZERO > DUMMY. In memory
DUMMY is stored as ``"."`` so that plain ``str`` comparison already gives
the required order ("." < "0" < "1"); the human-readable form prints it as
``"d"``.

Two labelling modes exist:

``quadratic``
    one symbol per vertex: trees are (almost) full binary trees, internal
    vertices are ONE, leaves ZERO; the single vertex with one preimage gets a
    DUMMY second child.
``general``
    arbitrary branching via a left-child-right-sibling expansion: every
    non-root vertex contributes ONE ... ZERO, so a component of size k>=2
    takes 2k symbols.
"""

from __future__ import annotations

import struct
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import ShapeViolation
from .graph import Component, Decomposition, FunctionalGraph, decompose

ONE, ZERO, DUMMY = "1", "0", "."
QUADRATIC, GENERAL = "quadratic", "general"

_TO_ASCII = str.maketrans({DUMMY: "d"})
_FROM_ASCII = str.maketrans({"d": DUMMY})
_CODE = {DUMMY: 1, ZERO: 2, ONE: 3}
_SYMBOL = {v: k for k, v in _CODE.items()}


def to_ascii(symbols: str) -> str:
    return symbols.translate(_TO_ASCII)


def from_ascii(text: str) -> str:
    symbols = text.translate(_FROM_ASCII)
    if set(symbols) - set(_CODE):
        raise ValueError(f"invalid label symbols in {text!r}")
    return symbols


def pack_symbols(symbols: str) -> bytes:
    """2 bits per symbol (DUMMY=1, ZERO=2, ONE=3), first symbol in the high
    bits, behind a 4-byte big-endian symbol count."""
    body = bytearray((len(symbols) + 3) // 4)
    for i, s in enumerate(symbols):
        body[i >> 2] |= _CODE[s] << (6 - 2 * (i & 3))
    return struct.pack(">I", len(symbols)) + bytes(body)


def unpack_symbols(data: bytes, offset: int = 0) -> Tuple[str, int]:
    """Inverse of :func:`pack_symbols`; returns (symbols, next offset)."""
    (n,) = struct.unpack_from(">I", data, offset)
    offset += 4
    nbytes = (n + 3) // 4
    body = data[offset:offset + nbytes]
    out = [_SYMBOL[(body[i >> 2] >> (6 - 2 * (i & 3))) & 3] for i in range(n)]
    return "".join(out), offset + nbytes


@dataclass(frozen=True)
class CanonLabel:
    symbols: str
    mode: str = GENERAL

    def ascii(self) -> str:
        return to_ascii(self.symbols)

    __str__ = ascii

    def __len__(self):
        return len(self.symbols)

    def __lt__(self, other: "CanonLabel"):
        return self.symbols < other.symbols

    def packed(self) -> bytes:
        return pack_symbols(self.symbols)

    def hex(self) -> str:
        return self.packed().hex()

    @classmethod
    def from_ascii(cls, text: str, mode: str = GENERAL) -> "CanonLabel":
        return cls(from_ascii(text), mode)


# ---------------------------------------------------------------------------
# tree labels


def _children_of(tree_children) -> Callable[[object], Sequence]:
    if isinstance(tree_children, Mapping):
        return lambda v: tree_children.get(v, ())
    return lambda v: tree_children[v]


def _postorder(root, kids) -> List:
    order, stack = [], [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(kids(v))
    order.reverse()
    return order


def _quadratic_tree(root, kids, max_dummies: int = 1) -> str:
    labels = {}
    dummies = 0
    for v in _postorder(root, kids):
        ch = kids(v)
        if not ch:
            labels[v] = ZERO
        elif len(ch) == 2:
            a, b = labels.pop(ch[0]), labels.pop(ch[1])
            labels[v] = ONE + a + b if a >= b else ONE + b + a
        elif len(ch) == 1:
            c = labels.pop(ch[0])
            if v == root:
                labels[v] = ONE + c
            else:
                dummies += 1
                if dummies > max_dummies:
                    raise ShapeViolation(f"second single-child vertex {v!r}")
                labels[v] = ONE + c + DUMMY
        else:
            raise ShapeViolation(f"vertex {v!r} has {len(ch)} tree children")
    return labels[root]


def _general_tree(root, kids) -> str:
    labels = {}
    for v in _postorder(root, kids):
        ch = kids(v)
        if v == root and not ch:
            return ZERO
        parts = sorted((labels.pop(c) for c in ch), reverse=True)
        labels[v] = ONE + "".join(parts) + ZERO
    return labels[root]


def label_tree_quadratic(root, tree_children) -> CanonLabel:
    """Label a rooted (almost) full binary tree.

    ``tree_children`` maps each vertex to its list of children (a list
    indexed by vertex or a mapping). Leaves give ZERO; a vertex with two
    children gives ONE + larger label + smaller label; a non-root vertex with
    a single child gets ONE + child + DUMMY (allowed once); a root with a
    single child gives ONE + child.
    """
    return CanonLabel(_quadratic_tree(root, _children_of(tree_children)), QUADRATIC)


def label_tree_general(root, tree_children) -> CanonLabel:
    """Left-child-right-sibling label of an arbitrary rooted tree.

    Non-root vertices get ONE + (child labels, largest first) + ZERO; the
    root is labelled the same way unless it has no children, in which case
    it is the single symbol ZERO.
    """
    return CanonLabel(_general_tree(root, _children_of(tree_children)), GENERAL)


# ---------------------------------------------------------------------------
# rotations


def max_rotation_start(seq: Sequence) -> int:
    """Smallest start index of the lexicographically maximal rotation, in
    linear time (two-candidate elimination)."""
    n = len(seq)
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a, b = seq[(i + k) % n], seq[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a < b:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    return min(i, j)


def max_rotation_naive(units: Sequence[str]) -> int:
    """Reference implementation: try every rotation."""
    best, best_i = None, 0
    for i in range(len(units)):
        s = "".join(units[i:]) + "".join(units[:i])
        if best is None or s > best:
            best, best_i = s, i
    return best_i


def rotate_max(units: Sequence[str], naive: bool = False) -> str:
    if not units:
        return ""
    if naive:
        i = max_rotation_naive(units)
    else:
        distinct = sorted(set(units))
        rank = {u: r for r, u in enumerate(distinct)}
        i = max_rotation_start([rank[u] for u in units])
    return "".join(units[i:]) + "".join(units[:i])


# ---------------------------------------------------------------------------
# components


def component_units(component: Component, mode: str = GENERAL) -> List[str]:
    """Per-cycle-vertex tree labels, in cycle order."""
    kids = _children_of(component.tree_children)
    if mode == QUADRATIC:
        units = []
        for v in component.cycle:
            if len(kids(v)) > 1:
                raise ShapeViolation(f"cycle vertex {v} has {len(kids(v))} tree children")
            units.append(_quadratic_tree(v, kids))
        if sum(u.count(DUMMY) for u in units) > 1:
            raise ShapeViolation("more than one single-child vertex in component")
        return units
    return [_general_tree(v, kids) for v in component.cycle]


def label_component_quadratic(component: Component, naive: bool = False) -> CanonLabel:
    return CanonLabel(rotate_max(component_units(component, QUADRATIC), naive), QUADRATIC)


def label_component_general(component: Component, naive: bool = False) -> CanonLabel:
    return CanonLabel(rotate_max(component_units(component, GENERAL), naive), GENERAL)


def component_labels(D: Decomposition, mode: str = GENERAL) -> Tuple[str, List[str]]:
    """Labels of every component; returns (mode actually used, labels).

    Quadratic mode falls back to general when the graph has even order or
    fails the binary-tree shape check.
    """
    if mode == QUADRATIC:
        try:
            if D.n % 2 == 0:
                raise ShapeViolation("quadratic mode needs odd order")
            labels = [rotate_max(component_units(c, QUADRATIC)) for c in D.components]
            if sum(s.count(DUMMY) for s in labels) > 1:
                raise ShapeViolation("more than one single-child vertex in graph")
            return QUADRATIC, labels
        except ShapeViolation:
            pass
    elif mode != GENERAL:
        raise ValueError(f"unknown labelling mode {mode!r}")
    return GENERAL, [rotate_max(component_units(c, GENERAL)) for c in D.components]


@dataclass(frozen=True, eq=False)
class GraphLabel:
    """Whole-graph canonical form: component labels sorted descending."""

    mode: str
    components: Tuple[str, ...]
    fallback: bool = False

    def key(self) -> Tuple[str, Tuple[str, ...]]:
        return (self.mode, self.components)

    def __eq__(self, other):
        return isinstance(other, GraphLabel) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return sum(len(c) for c in self.components)

    def ascii_components(self) -> List[str]:
        return [to_ascii(c) for c in self.components]

    def ascii(self) -> str:
        return " ".join(self.ascii_components())

    __str__ = ascii

    def packed(self) -> bytes:
        head = struct.pack(">BI", 1 if self.mode == QUADRATIC else 0, len(self.components))
        return head + b"".join(pack_symbols(c) for c in self.components)

    def hex(self) -> str:
        return self.packed().hex()

    @classmethod
    def from_packed(cls, data: bytes) -> "GraphLabel":
        mode_byte, count = struct.unpack_from(">BI", data, 0)
        offset, comps = 5, []
        for _ in range(count):
            s, offset = unpack_symbols(data, offset)
            comps.append(s)
        return cls(QUADRATIC if mode_byte else GENERAL, tuple(comps))


def label_graph(G: FunctionalGraph, mode: str = GENERAL,
                D: Optional[Decomposition] = None) -> GraphLabel:
    if D is None:
        D = decompose(G)
    used, labels = component_labels(D, mode)
    return GraphLabel(used, tuple(sorted(labels, reverse=True)), fallback=used != mode)


# ---------------------------------------------------------------------------
# trie and isomorphism


class LabelTrie:
    """Prefix tree over label symbols with a counter at every node."""

    def __init__(self):
        self._kids: List[dict] = [{}]
        self._count: List[int] = [0]
        self.total = 0

    def __len__(self):
        return len(self._kids)

    def _walk(self, symbols: str, create: bool, strict: bool = False) -> int:
        node = 0
        for s in symbols:
            if strict and self._count[node]:
                raise ValueError("inserted label extends an existing label")
            nxt = self._kids[node].get(s)
            if nxt is None:
                if not create:
                    return -1
                nxt = len(self._kids)
                self._kids.append({})
                self._count.append(0)
                self._kids[node][s] = nxt
            node = nxt
        if strict and self._kids[node]:
            raise ValueError("inserted label is a prefix of an existing label")
        return node

    def insert(self, symbols: str, strict: bool = False) -> None:
        """Add one occurrence; ``strict`` enforces prefix-freeness."""
        node = self._walk(symbols, create=True, strict=strict)
        self._count[node] += 1
        self.total += 1

    def match(self, symbols: str) -> bool:
        """Remove one occurrence; False if the label is not present."""
        node = self._walk(symbols, create=False)
        if node < 0 or self._count[node] == 0:
            return False
        self._count[node] -= 1
        self.total -= 1
        return True

    def count(self, symbols: str) -> int:
        node = self._walk(symbols, create=False)
        return 0 if node < 0 else self._count[node]

    def all_zero(self) -> bool:
        return not any(self._count)


def is_isomorphic(G: FunctionalGraph, H: FunctionalGraph, mode: str = GENERAL) -> bool:
    if G.n != H.n:
        return False
    DG, DH = decompose(G), decompose(H)
    if DG.size_classes != DH.size_classes:
        return False
    mode_g, labels_g = component_labels(DG, mode)
    mode_h, labels_h = component_labels(DH, mode)
    if mode_g != mode_h:
        # shape is an isomorphism invariant, but relabel both generally anyway
        mode_g, labels_g = component_labels(DG, GENERAL)
        mode_h, labels_h = component_labels(DH, GENERAL)
    trie = LabelTrie()
    for s in labels_g:
        trie.insert(s)
    for s in labels_h:
        if not trie.match(s):
            return False
    return trie.all_zero()
