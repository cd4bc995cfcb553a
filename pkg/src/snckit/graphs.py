"""Graphs with an edge involution, paths, homotopy, coverings and circuits.

A graph is a set of vertices, a set of directed edges, a fixed-point-free
involution e -> ebar pairing each directed edge with its reverse, and an
initial-vertex map.  Fundamental groups are handled through spanning-tree
bases: one free generator per co-tree geometric edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class GraphError(Exception):
    """Structural problem with a graph, path or graph map."""


@dataclass(frozen=True)
class StallingsGraph:
    vertices: tuple[str, ...]
    initial: Mapping[str, str]
    involution: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        edges = set(self.initial)
        if set(self.involution) != edges:
            raise GraphError("involution and initial maps disagree on the edge set")
        for e, ebar in self.involution.items():
            if ebar == e:
                raise GraphError(f"involution has fixed point {e!r}")
            if self.involution.get(ebar) != e:
                raise GraphError(f"involution is not an involution at {e!r}")
        for e, v in self.initial.items():
            if v not in vset:
                raise GraphError(f"edge {e!r} starts at unknown vertex {v!r}")

    @classmethod
    def build(cls, vertices: Iterable[str], geometric_edges: Iterable[tuple[str, str, str, str]]) -> StallingsGraph:
        """Build from geometric edges (edge_id, bar_id, from_vertex, to_vertex)."""
        initial: dict[str, str] = {}
        involution: dict[str, str] = {}
        for e, ebar, src, dst in geometric_edges:
            if e == ebar:
                raise GraphError(f"edge {e!r} paired with itself")
            if e in initial or ebar in initial:
                raise GraphError(f"duplicate edge id in {e!r}/{ebar!r}")
            initial[e] = src
            initial[ebar] = dst
            involution[e] = ebar
            involution[ebar] = e
        return cls(tuple(vertices), initial, involution)

    def bar(self, e: str) -> str:
        return self.involution[e]

    def terminal(self, e: str) -> str:
        return self.initial[self.involution[e]]

    def star(self, v: str) -> list[str]:
        return sorted(e for e, src in self.initial.items() if src == v)

    @property
    def directed_edges(self) -> list[str]:
        return sorted(self.initial)

    def geometric_edges(self) -> list[str]:
        """One canonical representative (the smaller id) per {e, ebar} pair."""
        return sorted(e for e in self.initial if e < self.involution[e])

    def connected_components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = []
            queue = deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for e in self.star(u):
                    w = self.terminal(e)
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1


@dataclass(frozen=True)
class Path:
    """A chained edge sequence; the empty path sits at its start vertex."""

    graph: StallingsGraph
    start: str
    edges: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        g = self.graph
        if self.start not in set(g.vertices):
            raise GraphError(f"path starts at unknown vertex {self.start!r}")
        at = self.start
        for e in self.edges:
            if e not in g.initial:
                raise GraphError(f"path uses unknown edge {e!r}")
            if g.initial[e] != at:
                raise GraphError(f"path breaks at edge {e!r}: starts at {g.initial[e]!r}, expected {at!r}")
            at = g.terminal(e)

    @property
    def end(self) -> str:
        if not self.edges:
            return self.start
        return self.graph.terminal(self.edges[-1])

    @property
    def is_circuit(self) -> bool:
        return self.end == self.start

    def reverse(self) -> Path:
        g = self.graph
        return Path(g, self.end, tuple(g.bar(e) for e in reversed(self.edges)))

    def concat(self, other: Path) -> Path:
        if other.graph is not self.graph and other.graph != self.graph:
            raise GraphError("cannot concatenate paths in different graphs")
        if other.start != self.end:
            raise GraphError(f"paths do not chain: {self.end!r} != {other.start!r}")
        return Path(self.graph, self.start, self.edges + other.edges)

    def power(self, m: int) -> Path:
        if m < 1:
            raise GraphError("power must be >= 1")
        if not self.is_circuit:
            raise GraphError("only circuits can be raised to a power")
        return Path(self.graph, self.start, self.edges * m)


def reduce_path(p: Path) -> Path:
    """The unique reduced path homotopic to p (no e followed by ebar)."""
    g = p.graph
    stack: list[str] = []
    for e in p.edges:
        if stack and stack[-1] == g.bar(e):
            stack.pop()
        else:
            stack.append(e)
    return Path(g, p.start, tuple(stack))


@dataclass(frozen=True)
class GraphMap:
    source: StallingsGraph
    target: StallingsGraph
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]

    def __post_init__(self):
        src, dst = self.source, self.target
        if set(self.vertex_map) != set(src.vertices):
            raise GraphError("vertex map is not total on the source")
        if set(self.edge_map) != set(src.initial):
            raise GraphError("edge map is not total on the source")
        dst_vertices = set(dst.vertices)
        for v, fv in self.vertex_map.items():
            if fv not in dst_vertices:
                raise GraphError(f"vertex {v!r} maps to unknown vertex {fv!r}")
        for e, fe in self.edge_map.items():
            if fe not in dst.initial:
                raise GraphError(f"edge {e!r} maps to unknown edge {fe!r}")
            if self.edge_map[src.bar(e)] != dst.bar(fe):
                raise GraphError(f"edge map does not preserve the involution at {e!r}")
            if self.vertex_map[src.initial[e]] != dst.initial[fe]:
                raise GraphError(f"edge map does not preserve initial vertices at {e!r}")

    def apply(self, p: Path) -> Path:
        return Path(self.target, self.vertex_map[p.start], tuple(self.edge_map[e] for e in p.edges))

    def is_surjective(self) -> bool:
        return self.unhit_edge() is None and set(self.vertex_map.values()) == set(self.target.vertices)

    def unhit_edge(self) -> str | None:
        hit = set(self.edge_map.values())
        for e in self.target.directed_edges:
            if e not in hit:
                return e
        return None

    @classmethod
    def identity(cls, g: StallingsGraph) -> GraphMap:
        return cls(g, g, {v: v for v in g.vertices}, {e: e for e in g.initial})


def is_covering(f: GraphMap) -> bool:
    """True iff every star maps bijectively onto the star of the image vertex."""
    for v in f.source.vertices:
        star = f.source.star(v)
        image = [f.edge_map[e] for e in star]
        if len(set(image)) != len(image):
            return False
        if sorted(image) != f.target.star(f.vertex_map[v]):
            return False
    return True


@dataclass(frozen=True)
class Pi1Basis:
    """A spanning-tree basis of the fundamental group at a base vertex."""

    graph: StallingsGraph
    base: str
    tree_edges: frozenset[str]  # canonical representatives of tree geometric edges
    parent_edge: Mapping[str, str]  # vertex -> directed tree edge arriving from its parent
    generators: tuple[str, ...]  # canonical representatives of co-tree geometric edges
    circuits: tuple[Path, ...] = field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def tree_path(self, v: str) -> Path:
        """The tree path from the base vertex to v."""
        edges: list[str] = []
        at = v
        while at != self.base:
            e = self.parent_edge[at]
            edges.append(e)
            at = self.graph.initial[e]
        return Path(self.graph, self.base, tuple(reversed(edges)))

    def express(self, p: Path) -> tuple[tuple[str, int], ...]:
        """Project a circuit at the base to a reduced word in the generators."""
        if not p.is_circuit or p.start != self.base:
            raise GraphError("can only express circuits based at the basis base vertex")
        g = self.graph
        gens = set(self.generators)
        word: list[tuple[str, int]] = []
        for e in reduce_path(p).edges:
            ebar = g.bar(e)
            rep, sign = (e, 1) if e < ebar else (ebar, -1)
            if rep not in gens:
                continue
            if word and word[-1] == (rep, -sign):
                word.pop()
            else:
                word.append((rep, sign))
        return tuple(word)

    def expand(self, word: Iterable[tuple[str, int]]) -> Path:
        """The circuit at the base spelled by a word in the generators."""
        path = Path(self.graph, self.base)
        for gen, sign in word:
            if gen not in set(self.generators):
                raise GraphError(f"unknown generator {gen!r}")
            circuit = self.circuits[self.generators.index(gen)]
            path = path.concat(circuit if sign > 0 else circuit.reverse())
        return path


def pi1_basis(g: StallingsGraph, base: str) -> Pi1Basis:
    """BFS spanning tree from the base with id-ordered tie-breaking."""
    if base not in set(g.vertices):
        raise GraphError(f"unknown base vertex {base!r}")
    comps = g.connected_components()
    if len(comps) > 1:
        raise GraphError(f"graph is disconnected, components: {comps}")
    parent_edge: dict[str, str] = {}
    seen = {base}
    queue = deque([base])
    tree_directed: set[str] = set()
    while queue:
        v = queue.popleft()
        for e in g.star(v):
            w = g.terminal(e)
            if w not in seen:
                seen.add(w)
                parent_edge[w] = e
                tree_directed.add(e)
                tree_directed.add(g.bar(e))
                queue.append(w)
    tree_reps = frozenset(e for e in tree_directed if e < g.bar(e))
    generators = tuple(e for e in g.geometric_edges() if e not in tree_reps)
    basis = Pi1Basis(g, base, tree_reps, parent_edge, generators, ())
    circuits = []
    for e in generators:
        out = basis.tree_path(g.initial[e])
        back = basis.tree_path(g.terminal(e)).reverse()
        circuits.append(out.concat(Path(g, g.initial[e], (e,))).concat(back))
    object.__setattr__(basis, "circuits", tuple(circuits))
    return basis


@dataclass(frozen=True)
class ImageIndex:
    index: int | None  # None means infinite
    bound: int


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> int:
        self.parent.setdefault(x, x)
        return x

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def free_subgroup_index(rank: int, words: Iterable[tuple[tuple[str, int], ...]]) -> int | None:
    """Index of the subgroup generated by `words` in a free group of `rank`.

    Folds the wedge of the generator loops into its Stallings core; the
    subgroup has finite index exactly when the core is a complete cover of
    the rose, and the index is then the number of core vertices.
    """
    if rank == 0:
        return 1
    uf = _UnionFind()
    base = uf.add(0)
    fresh = 1
    arcs: list[tuple[int, str, int]] = []  # (src, generator, dst), positively oriented
    for word in words:
        cur = base
        for i, (gen, sign) in enumerate(word):
            nxt = base if i == len(word) - 1 else uf.add(fresh)
            if nxt != base:
                fresh += 1
            if sign > 0:
                arcs.append((cur, gen, nxt))
            else:
                arcs.append((nxt, gen, cur))
            cur = nxt
    changed = True
    while changed:
        changed = False
        out: dict[tuple[int, str], int] = {}
        inn: dict[tuple[int, str], int] = {}
        for src, gen, dst in arcs:
            s, d = uf.find(src), uf.find(dst)
            if (s, gen) in out and uf.find(out[(s, gen)]) != d:
                uf.union(out[(s, gen)], d)
                changed = True
                break
            out[(s, gen)] = d
            if (d, gen) in inn and uf.find(inn[(d, gen)]) != s:
                uf.union(inn[(d, gen)], s)
                changed = True
                break
            inn[(d, gen)] = s
    states = {uf.find(x) for x in uf.parent}
    out = {}
    inn = {}
    for src, gen, dst in arcs:
        out[(uf.find(src), gen)] = uf.find(dst)
        inn[(uf.find(dst), gen)] = uf.find(src)
    gens = {gen for _, gen, _ in arcs}
    if len(gens) < rank:
        return None  # some generator never constrained: infinite index
    for s in states:
        for gen in gens:
            if (s, gen) not in out or (s, gen) not in inn:
                return None
    return len(states)


def image_index(f: GraphMap, v: str) -> ImageIndex:
    """Index of the pushed-forward fundamental group inside the target's.

    The bound is the size of the vertex fibre through v; for coverings the
    index equals the bound.
    """
    unhit = f.unhit_edge()
    if unhit is not None:
        raise GraphError(f"map is not surjective: edge {unhit!r} is not hit")
    if set(f.vertex_map.values()) != set(f.target.vertices):
        missing = sorted(set(f.target.vertices) - set(f.vertex_map.values()))
        raise GraphError(f"map is not surjective: vertex {missing[0]!r} is not hit")
    if v not in set(f.source.vertices):
        raise GraphError(f"unknown vertex {v!r}")
    fv = f.vertex_map[v]
    bound = sum(1 for w in f.source.vertices if f.vertex_map[w] == fv)
    target_basis = pi1_basis(f.target, fv)
    if target_basis.rank == 0:
        return ImageIndex(index=1, bound=bound)
    source_basis = pi1_basis(f.source, v)
    words = [target_basis.express(f.apply(c)) for c in source_basis.circuits]
    index = free_subgroup_index(target_basis.rank, words)
    return ImageIndex(index=index, bound=bound)


def surjective_circuit(g: StallingsGraph) -> Path:
    """A circuit hitting every geometric edge in at least one orientation.

    Greedy: walk to the nearest unvisited geometric edge, traverse it,
    repeat, and finally walk back to the start.
    """
    if not g.vertices:
        raise GraphError("empty graph has no circuit")
    if not g.is_connected():
        raise GraphError(f"graph is disconnected, components: {g.connected_components()}")
    geo = g.geometric_edges()
    if not geo:
        raise GraphError("graph has no edges")

    def shortest(src: str, dst: str) -> list[str]:
        if src == dst:
            return []
        back: dict[str, str] = {}
        queue = deque([src])
        seen = {src}
        while queue:
            u = queue.popleft()
            for e in g.star(u):
                w = g.terminal(e)
                if w not in seen:
                    seen.add(w)
                    back[w] = e
                    if w == dst:
                        path = []
                        while w != src:
                            path.append(back[w])
                            w = g.initial[back[w]]
                        return list(reversed(path))
                    queue.append(w)
        raise GraphError(f"no path from {src!r} to {dst!r}")

    first = geo[0]
    edges: list[str] = [first]
    covered = {first}
    at = g.terminal(first)
    start = g.initial[first]
    for e in geo[1:]:
        if e in covered:
            continue
        edges.extend(shortest(at, g.initial[e]))
        edges.append(e)
        covered.add(e)
        at = g.terminal(e)
    edges.extend(shortest(at, start))
    return Path(g, start, tuple(edges))


def graph_to_data(g: StallingsGraph) -> dict:
    """Wire format: one row per directed edge, {"id", "bar", "from"}."""
    edges = [{"id": e, "bar": g.bar(e), "from": g.initial[e]} for e in g.directed_edges]
    return {"vertices": list(g.vertices), "edges": edges}


def graph_from_data(data: dict) -> StallingsGraph:
    initial: dict[str, str] = {}
    involution: dict[str, str] = {}
    for entry in data.get("edges", []):
        initial[entry["id"]] = entry["from"]
        involution[entry["id"]] = entry["bar"]
    return StallingsGraph(tuple(data.get("vertices", [])), initial, involution)
