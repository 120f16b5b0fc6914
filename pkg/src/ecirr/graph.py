"""Functional graph of a rational map on P^1(F_q).

Nodes are the lexicographic indices of F_q (see ``FieldCtx.encode``) plus
one extra node q for infinity.  Each node has the single successor r(x);
every component is a cycle with trees hanging off it.  Tree depths and
leaf heights are governed by the alpha-adic valuation of the Frobenius.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import FieldTooLarge, NodeNotFound, SubfieldMismatch
from .ff import FieldCtx, FieldElem, enum_cap
from .ratmap import INFINITY, RationalMap, eval_values, is_infinity


@dataclass
class FunctionalGraph:
    field: FieldCtx
    succ: np.ndarray
    on_cycle: np.ndarray
    cycle_id: np.ndarray
    height: np.ndarray
    root: np.ndarray
    cycles: list
    pred_ptr: np.ndarray
    pred_idx: np.ndarray

    @property
    def size(self) -> int:
        return len(self.succ)

    @property
    def infinity(self) -> int:
        return self.field.order

    def node_of(self, pt) -> int:
        if is_infinity(pt):
            return self.infinity
        if not isinstance(pt, FieldElem) or pt.ctx != self.field:
            raise NodeNotFound(f"{pt!r} is not a point of P^1 over {self.field!r}")
        return int(self.field.encode(pt.value))

    def point_of(self, node: int):
        if node == self.infinity:
            return INFINITY
        if not 0 <= node < self.infinity:
            raise NodeNotFound(f"no node {node}")
        return FieldElem.from_value(self.field, self.field.decode(node))

    def predecessors(self, node: int) -> np.ndarray:
        return self.pred_idx[self.pred_ptr[node] : self.pred_ptr[node + 1]]

    def in_degree(self) -> np.ndarray:
        return np.diff(self.pred_ptr)

    @property
    def components(self) -> list[tuple[int, list[int]]]:
        """(cycle length, cycle vertices carrying a nonempty tree) per component."""
        has_tree = np.zeros(self.size, dtype=bool)
        has_tree[self.root[~self.on_cycle]] = True
        return [(len(c), [v for v in c if has_tree[v]]) for c in self.cycles]

    def weak_component_count(self) -> int:
        """Connected components of the underlying undirected graph (scipy)."""
        n = self.size
        adj = coo_matrix((np.ones(n, dtype=np.int8), (np.arange(n), self.succ)), shape=(n, n))
        return connected_components(adj, directed=True, connection="weak")[0]


def build_graph(m: RationalMap, field: FieldCtx) -> FunctionalGraph:
    """Evaluate r on every point of P^1(field) and decompose the result."""
    q = field.order
    if q + 1 > enum_cap():
        raise FieldTooLarge(f"graph on {q + 1} nodes exceeds enumeration cap {enum_cap()}")
    mm = m.over(field)
    imgs, pole = eval_values(mm, field.all_values())
    succ = np.empty(q + 1, dtype=np.int64)
    succ[:q] = field.encode(imgs)
    succ[:q][pole] = q
    succ[q] = q

    order = np.argsort(succ, kind="stable")
    pred_ptr = np.searchsorted(succ[order], np.arange(q + 2))
    pred_idx = order

    nxt = succ.tolist()
    state = [0] * (q + 1)
    cycle_id = np.full(q + 1, -1, dtype=np.int64)
    cycles = []
    for s in range(q + 1):
        if state[s]:
            continue
        path = []
        v = s
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = nxt[v]
        if state[v] == 1:
            cyc = path[path.index(v) :]
            cycle_id[cyc] = len(cycles)
            cycles.append(cyc)
        for u in path:
            state[u] = 2
    on_cycle = cycle_id >= 0

    height = np.zeros(q + 1, dtype=np.int64)
    root = np.arange(q + 1, dtype=np.int64)
    h = height.tolist()
    rt = root.tolist()
    onc = on_cycle.tolist()
    ptr = pred_ptr.tolist()
    pidx = pred_idx.tolist()
    queue = deque(v for c in cycles for v in c)
    while queue:
        v = queue.popleft()
        for u in pidx[ptr[v] : ptr[v + 1]]:
            if not onc[u]:
                h[u] = h[v] + 1
                rt[u] = rt[v]
                queue.append(u)
    height[:] = h
    root[:] = rt
    return FunctionalGraph(field, succ, on_cycle, cycle_id, height, root, cycles, pred_ptr, pred_idx)


@dataclass
class TreeProfile:
    root: object
    depth: int
    leaf_heights: dict
    size: int

    @property
    def uniform(self) -> bool:
        """Every leaf sits at the full depth."""
        return set(self.leaf_heights) <= {self.depth}

    def to_json(self) -> dict:
        root = "inf" if is_infinity(self.root) else self.root.to_json()
        return {"root": root, "depth": self.depth, "leaf_heights": self.leaf_heights, "size": self.size}


def subfield_mask(field: FieldCtx, subfield_deg: int) -> np.ndarray:
    """Nodes of P^1(F_{p^subfield_deg}) inside P^1(field), via x^(p^k) = x."""
    if subfield_deg < 1 or field.n % subfield_deg:
        raise SubfieldMismatch(f"F_p^{subfield_deg} is not a subfield of F_p^{field.n}")
    xs = field.all_values()
    fx = field.pow_vec(xs, field.p**subfield_deg)
    same = fx == xs if field.n == 1 else np.all(fx == xs, axis=-1)
    return np.append(same, True)


def tree_profiles(g: FunctionalGraph, subfield_deg: int | None = None) -> list[TreeProfile]:
    """Profiles of the trees on cycle vertices lying in P^1(F_{p^subfield_deg}).

    With ``subfield_deg=None`` every cycle vertex is profiled.
    """
    roots = np.flatnonzero(g.on_cycle)
    if subfield_deg is not None:
        roots = roots[subfield_mask(g.field, subfield_deg)[roots]]
    leaves = (g.in_degree() == 0) & ~g.on_cycle
    tree_nodes = ~g.on_cycle
    size = Counter(g.root[tree_nodes].tolist())
    by_root: dict[int, Counter] = {}
    depth = Counter()
    for r, hgt in zip(g.root[leaves].tolist(), g.height[leaves].tolist()):
        by_root.setdefault(r, Counter())[hgt] += 1
    for r, hgt in zip(g.root[tree_nodes].tolist(), g.height[tree_nodes].tolist()):
        depth[r] = max(depth[r], hgt)
    return [
        TreeProfile(g.point_of(int(r)), depth.get(int(r), 0), dict(by_root.get(int(r), {})), size.get(int(r), 0))
        for r in roots
    ]


def common_depth(profiles: list[TreeProfile]) -> int | None:
    """The shared depth when all trees are uniform with one depth, else None."""
    depths = {p.depth for p in profiles}
    if len(depths) == 1 and all(p.uniform for p in profiles):
        return depths.pop()
    return None


def trajectory(g: FunctionalGraph, start) -> tuple[list, list]:
    """Rho decomposition of the orbit of ``start``: (tail, cycle)."""
    v = g.node_of(start)
    tail = []
    while not g.on_cycle[v]:
        tail.append(g.point_of(v))
        v = int(g.succ[v])
    cyc = g.cycles[g.cycle_id[v]]
    i = cyc.index(v)
    return tail, [g.point_of(u) for u in cyc[i:] + cyc[:i]]


def summary(g: FunctionalGraph, subfield_deg: int | None = None) -> dict:
    lengths = Counter(len(c) for c in g.cycles)
    out = {
        "field": g.field.to_json(),
        "nodes": g.size,
        "cycles": len(g.cycles),
        "weak_components": g.weak_component_count(),
        "cycle_lengths": {str(k): v for k, v in sorted(lengths.items())},
        "max_height": int(g.height.max()),
        "max_in_degree": int(g.in_degree().max()),
    }
    if subfield_deg is not None:
        prof = tree_profiles(g, subfield_deg)
        out["subfield_deg"] = subfield_deg
        out["subfield_roots"] = len(prof)
        out["subfield_depths"] = sorted({p.depth for p in prof})
        out["subfield_uniform"] = all(p.uniform for p in prof)
        out["k0"] = common_depth(prof)
    return out


def to_dot(g: FunctionalGraph) -> str:
    lines = ["digraph G {"]
    for v in range(g.size):
        label = "inf" if v == g.infinity else repr(g.point_of(v))
        attrs = ', shape=doublecircle' if g.on_cycle[v] else ""
        lines.append(f'  n{v} [label="{label}"{attrs}];')
    for v in range(g.size):
        lines.append(f"  n{v} -> n{int(g.succ[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
