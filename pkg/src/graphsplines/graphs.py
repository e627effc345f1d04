"""Simple graphs with edge multiplicities and the graph predicates used downstream.

Vertices are ``1..v``; an edge is stored as ``(i, j)`` with ``i < j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Malformed graph description."""


@dataclass(frozen=True)
class MultiGraph:
    vertex_count: int
    multiplicity: tuple  # sorted ((i, j), m) pairs
    name: str = ""

    def __init__(self, vertex_count: int, edges: Iterable = (), multiplicity=None, name: str = ""):
        if vertex_count < 0:
            raise GraphError("vertex count must be nonnegative")
        mults: dict = {}
        if isinstance(edges, Mapping):
            edges = [(i, j, m) for (i, j), m in edges.items()]
        for item in edges:
            if len(item) == 3:
                i, j, m = item
            else:
                (i, j), m = item, None
            if m is None:
                m = multiplicity(i, j) if callable(multiplicity) else (multiplicity or 1)
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if i > j:
                i, j = j, i
            if not (1 <= i and j <= vertex_count):
                raise GraphError(f"edge {{{i},{j}}} outside vertices 1..{vertex_count}")
            if (i, j) in mults:
                raise GraphError(f"repeated edge {{{i},{j}}}")
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise GraphError(f"multiplicity of edge {{{i},{j}}} must be a positive integer")
            mults[(i, j)] = m
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "multiplicity", tuple(sorted(mults.items())))
        object.__setattr__(self, "name", name)

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_json(cls, data, name: str = "") -> MultiGraph:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "vertices" not in data:
            raise GraphError('graph JSON needs a "vertices" field')
        edges = []
        for e in data.get("edges", []):
            if len(e) not in (2, 3):
                raise GraphError(f"edge entry {e!r} must be [i, j] or [i, j, m]")
            i, j = e[0], e[1]
            m = e[2] if len(e) == 3 else 1
            if i >= j:
                raise GraphError(f"edge entry {e!r} must satisfy i < j")
            edges.append((i, j, m))
        return cls(data["vertices"], edges, name=data.get("name", name))

    def to_json(self) -> dict:
        out = {"vertices": self.vertex_count,
               "edges": [[i, j, m] for (i, j), m in self.multiplicity]}
        if self.name:
            out["name"] = self.name
        return out

    def with_multiplicity(self, multiplicity) -> MultiGraph:
        """Same graph with a constant ``int`` or per-edge mapping/callable multiplicity."""
        if isinstance(multiplicity, int):
            mult = {e: multiplicity for e in self.edges}
        elif callable(multiplicity):
            mult = {e: multiplicity(*e) for e in self.edges}
        else:
            mult = {tuple(sorted(e)): m for e, m in multiplicity.items()}
            missing = set(self.edges) - set(mult)
            if missing:
                raise GraphError(f"no multiplicity given for edges {sorted(missing)}")
        return MultiGraph(self.vertex_count, [(i, j, mult[(i, j)]) for i, j in self.edges],
                          name=self.name)

    def relabel(self, perm: Mapping[int, int]) -> MultiGraph:
        return MultiGraph(self.vertex_count,
                          [(perm[i], perm[j], m) for (i, j), m in self.multiplicity],
                          name=self.name)

    # -- basic queries ------------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @property
    def edges(self) -> list:
        return [e for e, _ in self.multiplicity]

    def mult(self, i: int, j: int) -> int:
        return dict(self.multiplicity)[(min(i, j), max(i, j))]

    def neighbors(self) -> dict:
        nb = {v: set() for v in self.vertices}
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return nb

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in dict(self.multiplicity)

    def is_constant_multiplicity(self) -> int | None:
        ms = {m for _, m in self.multiplicity}
        return ms.pop() if len(ms) == 1 else None

    def induced(self, vertices: Iterable[int]) -> MultiGraph:
        """Union of induced edges on ``vertices``; the vertex set stays ``1..v``."""
        vs = set(vertices)
        return MultiGraph(self.vertex_count,
                          [(i, j, m) for (i, j), m in self.multiplicity if i in vs and j in vs],
                          name=self.name)


@dataclass(frozen=True)
class Partition:
    blocks: tuple

    def __init__(self, blocks: Iterable[Iterable[int]]):
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in blocks))

    def validate(self, vertex_count: int):
        seen = [v for b in self.blocks for v in b]
        if sorted(seen) != list(range(1, vertex_count + 1)):
            raise GraphError("partition blocks must be disjoint and cover 1..v")

    @classmethod
    def singletons(cls, vertex_count: int) -> Partition:
        return cls([[v] for v in range(1, vertex_count + 1)])


def induced_partition_subgraph(g: MultiGraph, p: Partition) -> MultiGraph:
    """Union of the subgraphs induced on the blocks of ``p`` (same ambient vertex set)."""
    p.validate(g.vertex_count)
    block_of = {v: k for k, b in enumerate(p.blocks) for v in b}
    return MultiGraph(g.vertex_count,
                      [(i, j, m) for (i, j), m in g.multiplicity if block_of[i] == block_of[j]],
                      name=g.name)


def connected_components(g: MultiGraph) -> list:
    nb = g.neighbors()
    seen: set = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp, stack = {s}, [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in nb[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def rank(g: MultiGraph) -> int:
    """Rank of the graphic arrangement: ``v - c(G)``."""
    return g.vertex_count - len(connected_components(g))


def blocks(g: MultiGraph) -> list:
    """Biconnected components (Hopcroft-Tarjan low-link).

    Bridges come out as 2-vertex blocks and isolated vertices as singletons.
    """
    nb = {v: sorted(ws) for v, ws in g.neighbors().items()}
    disc: dict = {}
    low: dict = {}
    out = []
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        if not nb[root]:
            disc[root] = timer
            timer += 1
            out.append(frozenset([root]))
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list = []
        stack = [(root, None, iter(nb[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(nb[w])))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    comp = set()
                    while True:
                        a, b = edge_stack.pop()
                        comp.update((a, b))
                        if (a, b) == (parent, u):
                            break
                    out.append(frozenset(comp))
    return out


@dataclass(frozen=True)
class ChordalityCertificate:
    chordal: bool
    elimination_order: tuple = ()   # perfect elimination ordering when chordal
    cycle: tuple = ()               # chordless cycle of length >= 4 otherwise


def maximum_cardinality_search(g: MultiGraph) -> list:
    """Vertices in MCS visiting order (reverse is a PEO iff the graph is chordal)."""
    nb = g.neighbors()
    weight = {v: 0 for v in g.vertices}
    order = []
    left = set(g.vertices)
    while left:
        v = max(sorted(left), key=lambda u: weight[u])
        order.append(v)
        left.discard(v)
        for w in nb[v]:
            if w in left:
                weight[w] += 1
    return order


def is_perfect_elimination_order(g: MultiGraph, order: Sequence[int]) -> bool:
    nb = g.neighbors()
    pos = {v: k for k, v in enumerate(order)}
    for v in order:
        later = [w for w in nb[v] if pos[w] > pos[v]]
        for a, b in combinations(later, 2):
            if b not in nb[a]:
                return False
    return True


def _chordless_cycle(g: MultiGraph) -> tuple:
    nb = g.neighbors()
    for v in g.vertices:
        for u, w in combinations(sorted(nb[v]), 2):
            if w in nb[u]:
                continue
            banned = (nb[v] | {v}) - {u, w}
            prev = {u: None}
            queue = [u]
            for x in queue:
                if x == w:
                    break
                for y in sorted(nb[x]):
                    if y not in prev and y not in banned:
                        prev[y] = x
                        queue.append(y)
            if w in prev:
                path = []
                x = w
                while x is not None:
                    path.append(x)
                    x = prev[x]
                return tuple([v] + path[::-1])
    return ()


def is_chordal(g: MultiGraph) -> ChordalityCertificate:
    """Chordality by maximum cardinality search, with a verifiable certificate."""
    peo = maximum_cardinality_search(g)[::-1]
    if is_perfect_elimination_order(g, peo):
        return ChordalityCertificate(True, elimination_order=tuple(peo))
    return ChordalityCertificate(False, cycle=_chordless_cycle(g))


def is_chordless_cycle(g: MultiGraph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for a in range(k):
        for b in range(a + 1, k):
            adjacent = (b == a + 1) or (a == 0 and b == k - 1)
            if g.has_edge(cycle[a], cycle[b]) != adjacent:
                return False
    return True


def maximal_cliques(g: MultiGraph) -> list:
    """Inclusion-maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    nb = g.neighbors()
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(nb[u] & p))
        for v in sorted(p - nb[pivot]):
            expand(r | {v}, p & nb[v], x & nb[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(g.vertices), set())
    return sorted(out)


def is_clique(g: MultiGraph, vs: Iterable[int]) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(sorted(vs), 2))


def longest_induced_cycle(g: MultiGraph) -> int:
    """Length of a longest chordless cycle (0 for a forest), by subset search."""
    return len(longest_induced_cycle_vertices(g))


def longest_induced_cycle_vertices(g: MultiGraph) -> tuple:
    """Vertex set of some longest chordless cycle; empty for a forest."""
    nb = g.neighbors()
    verts = [v for v in g.vertices if len(nb[v]) >= 2]
    for size in range(len(verts), 2, -1):
        for sub in combinations(verts, size):
            s = set(sub)
            if any(len(nb[v] & s) != 2 for v in sub):
                continue
            # 2-regular: a cycle iff connected
            start = sub[0]
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in nb[u] & s:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                return sub
    return ()


def blocks_are_cliques(g: MultiGraph) -> bool:
    """Every block is complete and the blocks are exactly the maximal cliques."""
    bl = {tuple(sorted(b)) for b in blocks(g)}
    return bl == set(maximal_cliques(g))


# -- named graphs --------------------------------------------------------------

def path_graph(n: int, m=1) -> MultiGraph:
    return MultiGraph(n, [(i, i + 1) for i in range(1, n)], multiplicity=m, name=f"P{n}")


def cycle_graph(n: int, m=1) -> MultiGraph:
    return MultiGraph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)], multiplicity=m,
                      name=f"C{n}")


def complete_graph(n: int, m=1) -> MultiGraph:
    return MultiGraph(n, list(combinations(range(1, n + 1), 2)), multiplicity=m, name=f"K{n}")


def wheel_graph(n: int, m=1) -> MultiGraph:
    """``W_n``: hub 1 joined to the rim cycle ``2..n+1``."""
    rim = [(i, i + 1) for i in range(2, n + 1)] + [(2, n + 1)]
    spokes = [(1, i) for i in range(2, n + 2)]
    return MultiGraph(n + 1, spokes + rim, multiplicity=m, name=f"W{n}")


def prism_graph(m=1) -> MultiGraph:
    """Triangles {1,2,3} and {4,5,6} joined by the rungs 1-4, 2-5, 3-6."""
    edges = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (1, 4), (2, 5), (3, 6)]
    return MultiGraph(6, edges, multiplicity=m, name="prism")


FRITSCH_EDGES = [(1, 2), (2, 3), (1, 3), (1, 4), (3, 4), (1, 5), (4, 5), (1, 7), (5, 7),
                 (2, 7), (7, 9), (2, 9), (3, 6), (6, 9), (3, 9), (6, 8), (8, 9), (4, 6),
                 (4, 8), (5, 8), (7, 8)]


def fritsch_graph(m=1) -> MultiGraph:
    """The 9-vertex planar triangulation with the labeling of its usual drawing."""
    return MultiGraph(9, FRITSCH_EDGES, multiplicity=m, name="fritsch")
