"""Snapshot graphs: degree profiles and spanning-arborescence counts.

In a graph where every arc points from an older node to a newer one, an
arborescence rooted at the oldest node is obtained by choosing one incoming
arc for every other node, so the count is the product of in-degrees. The
matrix-tree determinant is kept as an independent check of that identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CapacityError, DomainError

#: Exact determinant oracle refuses graphs larger than this.
MATRIX_TREE_MAX_NODES = 20


@dataclass(frozen=True)
class DagSnapshot:
    """Frozen graph: node ids in arrival order and arcs ``(src, dst, kind)``."""

    node_ids: tuple[int, ...]
    arcs: tuple[tuple[int, int, str], ...]
    root: int

    def __post_init__(self):
        ids = tuple(int(v) for v in self.node_ids)
        if list(ids) != sorted(set(ids)):
            raise DomainError("node ids must be distinct and listed in arrival order")
        known = set(ids)
        if self.root not in known:
            raise DomainError(f"root {self.root} is not a node")
        arcs = []
        for src, dst, *kind in self.arcs:
            src, dst = int(src), int(dst)
            if src not in known or dst not in known:
                raise DomainError(f"arc {src}->{dst} references an unknown node")
            if src >= dst:
                raise DomainError(f"arc {src}->{dst} does not point to a later node")
            arcs.append((src, dst, kind[0] if kind else "organic"))
        if any(dst == self.root for _, dst, _ in arcs):
            raise DomainError("root must have in-degree 0")
        object.__setattr__(self, "node_ids", ids)
        object.__setattr__(self, "arcs", tuple(arcs))

    @classmethod
    def from_arcs(cls, arcs, root: int = 0, nodes=()) -> "DagSnapshot":
        ids = {root, *nodes}
        for src, dst, *_ in arcs:
            ids.update((int(src), int(dst)))
        return cls(tuple(sorted(ids)), tuple(tuple(a) for a in arcs), root)

    def in_degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.node_ids, 0)
        for _, dst, _ in self.arcs:
            deg[dst] += 1
        return deg


def degree_profiles(g: DagSnapshot) -> dict[str, np.ndarray]:
    """Out- and in-degree vectors indexed by arrival rank (position in node_ids)."""
    pos = {v: i for i, v in enumerate(g.node_ids)}
    out = np.zeros(len(pos), dtype=np.int64)
    inn = np.zeros(len(pos), dtype=np.int64)
    for src, dst, _ in g.arcs:
        out[pos[src]] += 1
        inn[pos[dst]] += 1
    return {"out_degree_by_rank": out, "in_degree_by_rank": inn}


def count_arborescences_product(g: DagSnapshot) -> float:
    """Natural log of the number of spanning arborescences rooted at ``g.root``.

    Returns ``-inf`` when some node other than the root has no incoming arc.
    """
    if not isinstance(g, DagSnapshot):
        raise DomainError("the product formula only holds for older-to-newer DAG snapshots")
    total = 0.0
    for v, d in g.in_degrees().items():
        if v == g.root:
            continue
        if d == 0:
            return -math.inf
        total += math.log(d)
    return total


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def arborescence_count_exact(nodes, arcs, root: int) -> int:
    """Matrix-tree count of out-arborescences of an arbitrary multigraph."""
    nodes = list(nodes)
    if len(nodes) > MATRIX_TREE_MAX_NODES:
        raise CapacityError(f"exact count limited to {MATRIX_TREE_MAX_NODES} nodes")
    pos = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    lap = [[0] * n for _ in range(n)]
    for src, dst, *_ in arcs:
        if src == dst:
            continue
        lap[pos[dst]][pos[dst]] += 1
        lap[pos[src]][pos[dst]] -= 1
    r = pos[root]
    reduced = [[lap[i][j] for j in range(n) if j != r] for i in range(n) if i != r]
    return _bareiss_det(reduced)


def count_arborescences_matrix_tree(g: DagSnapshot) -> int:
    return arborescence_count_exact(g.node_ids, g.arcs, g.root)


# --- edge-list text format ---------------------------------------------------
#
#   root <id>
#   node <id>            (optional; only for nodes that touch no arc)
#   <src> <dst> <kind>

def dumps_edge_list(g: DagSnapshot) -> str:
    lines = [f"root {g.root}"]
    touched = {g.root}
    for src, dst, _ in g.arcs:
        touched.update((src, dst))
    lines += [f"node {v}" for v in g.node_ids if v not in touched]
    lines += [f"{src} {dst} {kind}" for src, dst, kind in g.arcs]
    return "\n".join(lines) + "\n"


def loads_edge_list(text: str) -> DagSnapshot:
    root = None
    nodes, arcs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        try:
            if parts[0] == "root" and root is None and len(parts) == 2:
                root = int(parts[1])
            elif parts[0] == "node" and len(parts) == 2:
                nodes.append(int(parts[1]))
            elif len(parts) == 3 and root is not None:
                arcs.append((int(parts[0]), int(parts[1]), parts[2]))
            else:
                raise ValueError(raw)
        except ValueError:
            raise DomainError(f"line {lineno}: cannot parse {raw!r}") from None
    if root is None:
        raise DomainError("edge list has no 'root <id>' line")
    return DagSnapshot.from_arcs(arcs, root=root, nodes=nodes)


def write_edge_list(g: DagSnapshot, path) -> None:
    Path(path).write_text(dumps_edge_list(g), encoding="utf-8")


def read_edge_list(path) -> DagSnapshot:
    return loads_edge_list(Path(path).read_text(encoding="utf-8"))
