"""Simple undirected graphs: core type, family generators, derived constructions.

Vertices are dense 0-based integers and adjacency is kept as sorted tuples.
Every constructor validates simplicity (no loops, no parallel edges) and
symmetry.  Optional per-vertex labels carry provenance, e.g. the source edge
of a line-graph vertex, so reports can name things in terms of the original
graph.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import BudgetError, ParameterError, PreconditionError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n != len(self.adj):
            raise ParameterError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ParameterError("labels length differs from vertex count")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise ParameterError(f"adjacency of vertex {v} is not sorted and duplicate-free")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise ParameterError(f"neighbor {w} of vertex {v} out of range")
                if w == v:
                    raise ParameterError(f"loop at vertex {v}")
                if v not in self.adj[w]:
                    raise ParameterError(f"edge ({v},{w}) lacks its reverse: adjacency not symmetric")

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adj)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        return [(v, w) for v in range(self.n) for w in self.adj[v] if v < w]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


def from_edges(n: int, edges, labels=None) -> Graph:
    """Build a Graph from an edge iterable, validating simplicity."""
    adj: list[set[int]] = [set() for _ in range(n)]
    seen = set()
    for u, v in edges:
        if u == v:
            raise ParameterError(f"loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParameterError(f"parallel edge {key}")
        seen.add(key)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in adj),
                 tuple(labels) if labels is not None else None)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """A 2-coloring of the vertices, or None if some component is not bipartite."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return (frozenset(v for v in range(g.n) if side[v] == 0),
            frozenset(v for v in range(g.n) if side[v] == 1))


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on the given vertices.

    Returns the subgraph on dense ids together with the vertex map: position i
    of the map is the host id of subgraph vertex i.  The map is sorted, so
    relative vertex order is preserved.
    """
    vmap = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(vmap)}
    adj = tuple(tuple(index[w] for w in g.adj[v] if w in index) for v in vmap)
    labels = tuple(g.label(v) for v in vmap) if g.labels is not None else None
    return Graph(len(vmap), adj, labels), vmap


def edge_subgraph(g: Graph, edges) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph formed by the given edges; isolated vertices are dropped.

    Returns dense-id subgraph plus the vertex map back to host ids.
    """
    edges = [(min(u, v), max(u, v)) for u, v in edges]
    verts = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(verts)}
    sub = from_edges(len(verts), [(index[u], index[v]) for u, v in set(edges)])
    return sub, tuple(verts)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise ParameterError(f"no edge ({u},{v}) to delete")
    adj = tuple(tuple(w for w in g.adj[x] if not (x == u and w == v) and not (x == v and w == u))
                for x in range(g.n))
    return Graph(g.n, adj, g.labels)


# ---------------------------------------------------------------------------
# Graph families
# ---------------------------------------------------------------------------

_FAMILY_ARITY = {
    "cycle": 1,
    "path": 1,
    "clique": 1,
    "complete_bipartite": 2,
    "barbell": 3,
    "theta": 3,
    "prism": 3,
    "star": 1,
}

_FAMILY_RE = re.compile(r"^\s*([a-z_]+)\s*\(\s*([-0-9,\s]*)\s*\)\s*$")


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family instance, e.g. barbell(4,4,0)."""

    family: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"


def parse_family(text: str) -> FamilySpec:
    """Parse the compact family grammar, e.g. "theta(1,3,3)"."""
    m = _FAMILY_RE.match(text)
    if not m:
        raise ParameterError(f"cannot parse family spec {text!r}")
    family = m.group(1)
    if family not in _FAMILY_ARITY:
        raise ParameterError(f"unknown family {family!r}")
    raw = [p for p in m.group(2).split(",") if p.strip()]
    if len(raw) != _FAMILY_ARITY[family]:
        raise ParameterError(f"{family} takes {_FAMILY_ARITY[family]} parameter(s), got {len(raw)}")
    return FamilySpec(family, tuple(int(p) for p in raw))


def generate(spec: FamilySpec) -> Graph:
    """Build the named graph with the documented deterministic numbering.

    Cycles are numbered along the cycle and paths along the path.  For
    composite families:

    * barbell(c1, c2, p): first cycle 0..c1-1; for p = 0 the cycles share
      vertex 0, and the second cycle is 0, c1, c1+1, ..., c1+c2-2; for p >= 1
      the second cycle is c1..c1+c2-1 and a path with p-1 interior vertices
      (numbered from c1+c2) joins vertex 0 to vertex c1.
    * theta(l1, l2, l3): hubs 0 and 1; interior vertices of each path are
      numbered consecutively from 2, path by path, walking from hub 0.
    * prism(p1, p2, p3): triangles {0,1,2} and {3,4,5}; path i joins i-1 to
      i+2 with interior vertices numbered consecutively from 6.
    """
    fam, params = spec.family, spec.params
    if fam == "cycle":
        (k,) = params
        if k < 3:
            raise ParameterError(f"cycle length must be >= 3, got {k}")
        return from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    if fam == "path":
        (k,) = params
        if k < 1:
            raise ParameterError(f"path vertex count must be >= 1, got {k}")
        return from_edges(k, [(i, i + 1) for i in range(k - 1)])
    if fam == "clique":
        (k,) = params
        if k < 1:
            raise ParameterError(f"clique size must be >= 1, got {k}")
        return from_edges(k, itertools.combinations(range(k), 2))
    if fam == "complete_bipartite":
        s, t = params
        if s < 1 or t < 1:
            raise ParameterError(f"complete_bipartite parts must be >= 1, got {s},{t}")
        return from_edges(s + t, [(a, s + b) for a in range(s) for b in range(t)])
    if fam == "star":
        (k,) = params
        if k < 1:
            raise ParameterError(f"star leaf count must be >= 1, got {k}")
        return from_edges(k + 1, [(0, i) for i in range(1, k + 1)])
    if fam == "barbell":
        return _generate_barbell(*params)
    if fam == "theta":
        return _generate_theta(*params)
    if fam == "prism":
        return _generate_prism(*params)
    raise ParameterError(f"unknown family {fam!r}")


def _generate_barbell(c1: int, c2: int, p: int) -> Graph:
    if c1 < 3 or c2 < 3:
        raise ParameterError(f"barbell cycle lengths must be >= 3, got {c1},{c2}")
    if p < 0:
        raise ParameterError(f"barbell path length must be >= 0, got {p}")
    edges = [(i, (i + 1) % c1) for i in range(c1)]
    if p == 0:
        # Short barbell: cycles share vertex 0.
        ring = [0] + list(range(c1, c1 + c2 - 1))
        n = c1 + c2 - 1
    else:
        ring = list(range(c1, c1 + c2))
        n = c1 + c2 + p - 1
    edges += [(ring[i], ring[(i + 1) % c2]) for i in range(c2)]
    if p >= 1:
        chain = [0] + list(range(c1 + c2, c1 + c2 + p - 1)) + [c1]
        edges += [(chain[i], chain[i + 1]) for i in range(p)]
    return from_edges(n, edges)


def _generate_theta(l1: int, l2: int, l3: int) -> Graph:
    lengths = (l1, l2, l3)
    if any(l < 1 for l in lengths):
        raise ParameterError(f"theta path lengths must be >= 1, got {lengths}")
    if sum(1 for l in lengths if l == 1) > 1:
        raise ParameterError(f"theta allows at most one path of length 1, got {lengths}")
    edges = []
    nxt = 2
    for l in lengths:
        chain = [0] + list(range(nxt, nxt + l - 1)) + [1]
        nxt += l - 1
        edges += [(chain[i], chain[i + 1]) for i in range(l)]
    return from_edges(nxt, edges)


def _generate_prism(p1: int, p2: int, p3: int) -> Graph:
    lengths = (p1, p2, p3)
    if any(l < 1 for l in lengths):
        raise ParameterError(f"prism path lengths must be >= 1, got {lengths}")
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    nxt = 6
    for i, l in enumerate(lengths):
        chain = [i] + list(range(nxt, nxt + l - 1)) + [i + 3]
        nxt += l - 1
        edges += [(chain[j], chain[j + 1]) for j in range(l)]
    return from_edges(nxt, edges)


# ---------------------------------------------------------------------------
# Derived constructions
# ---------------------------------------------------------------------------

def line_graph(g: Graph) -> Graph:
    """Line graph: one vertex per edge, adjacent iff source edges share an endpoint.

    Vertices are labeled "u-v" after their source edge, in lexicographic edge
    order.  A vertex for edge vw gets degree d(v)+d(w)-2.
    """
    es = g.edges()
    index = {e: i for i, e in enumerate(es)}
    adj: list[set[int]] = [set() for _ in es]
    for v in range(g.n):
        for a, b in itertools.combinations(g.adj[v], 2):
            ea = index[(min(v, a), max(v, a))]
            eb = index[(min(v, b), max(v, b))]
            adj[ea].add(eb)
            adj[eb].add(ea)
    labels = tuple(f"{u}-{v}" for u, v in es)
    return Graph(len(es), tuple(tuple(sorted(s)) for s in adj), labels)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex (a, b) has id a*g2.n + b and label "(a,b)"."""
    n2 = g2.n
    edges = [(a * n2 + b, a * n2 + c) for a in range(g1.n) for b, c in g2.edges()]
    edges += [(a * n2 + b, c * n2 + b) for b in range(n2) for a, c in g1.edges()]
    labels = tuple(f"({a},{b})" for a in range(g1.n) for b in range(n2))
    return from_edges(g1.n * n2, edges, labels)


# ---------------------------------------------------------------------------
# Isomorphism (small graphs only)
# ---------------------------------------------------------------------------

def _refine_labels(g: Graph) -> tuple[int, ...]:
    """Iterated neighborhood refinement, starting from degrees."""
    labels = list(g.degrees())
    while True:
        sigs = [(labels[v], tuple(sorted(labels[w] for w in g.adj[v]))) for v in range(g.n)]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if new == labels:
            return tuple(new)
        labels = new


def is_isomorphic(g1: Graph, g2: Graph, max_n: int = 12) -> list[int] | None:
    """A vertex bijection g1 -> g2 preserving adjacency, or None.

    Deterministic: vertices of g1 are mapped in ascending id order to the
    least available candidate.  Intended for graphs of at most max_n vertices;
    larger inputs raise a budget error.
    """
    if max(g1.n, g2.n) > max_n:
        raise BudgetError(f"isomorphism size guard exceeded: {max(g1.n, g2.n)} > {max_n}", max_n)
    if g1.n != g2.n or g1.m != g2.m:
        return None
    lab1, lab2 = _refine_labels(g1), _refine_labels(g2)
    if sorted(lab1) != sorted(lab2):
        return None
    mapping = [-1] * g1.n
    used = [False] * g2.n

    def extend(v: int) -> bool:
        if v == g1.n:
            return True
        for w in range(g2.n):
            if used[w] or lab1[v] != lab2[w]:
                continue
            ok = True
            for u in range(v):
                if (u in g1.adj[v]) != (mapping[u] in g2.adj[w]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return list(mapping) if extend(0) else None


# ---------------------------------------------------------------------------
# Gallai trees and degree-choosability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """A block (maximal 2-connected subgraph or bridge) given by its edges."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def is_clique(self) -> bool:
        k = len(self.vertices)
        return len(self.edges) == k * (k - 1) // 2

    def is_odd_cycle(self) -> bool:
        k = len(self.vertices)
        if k % 2 == 0 or len(self.edges) != k:
            return False
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return all(d == 2 for d in deg.values())


@dataclass(frozen=True)
class GallaiReport:
    is_gallai_tree: bool
    blocks: tuple[Block, ...]
    cut_vertices: tuple[int, ...]
    offending_block: int | None


def block_decomposition(g: Graph) -> tuple[tuple[Block, ...], tuple[int, ...]]:
    """Blocks and cut vertices via an iterative lowpoint DFS.

    Each frame remembers the edge-stack size at the moment its tree edge was
    pushed; when a child finishes with low[child] >= disc[parent], the edges
    above that mark are exactly one block.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    cut = [False] * g.n
    stack_edges: list[tuple[int, int]] = []
    blocks: list[Block] = []
    timer = 0

    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # Frame: [vertex, parent, next adjacency index, edge-stack mark].
        frames = [[root, -1, 0, 0]]
        while frames:
            frame = frames[-1]
            v, parent, i, mark = frame
            if i < len(g.adj[v]):
                frame[2] += 1
                w = g.adj[v][i]
                if w == parent:
                    continue
                if disc[w] == -1:
                    m = len(stack_edges)
                    stack_edges.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    frames.append([w, v, 0, m])
                elif disc[w] < disc[v]:
                    stack_edges.append((v, w))
                    low[v] = min(low[v], disc[w])
            else:
                frames.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] >= disc[parent]:
                        if parent != root:
                            cut[parent] = True
                        blocks.append(_make_block(stack_edges[mark:]))
                        del stack_edges[mark:]
        if root_children >= 2:
            cut[root] = True

    blocks.sort(key=lambda b: b.vertices)
    return tuple(blocks), tuple(v for v in range(g.n) if cut[v])


def _make_block(edges) -> Block:
    verts = tuple(sorted({v for e in edges for v in e}))
    norm = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
    return Block(verts, norm)


def is_gallai_tree(g: Graph) -> GallaiReport:
    """True iff every block is a clique or an odd cycle (connected input only)."""
    if not is_connected(g):
        raise PreconditionError("Gallai-tree test requires a connected graph")
    blocks, cuts = block_decomposition(g)
    offending = None
    for i, b in enumerate(blocks):
        if not (b.is_clique() or b.is_odd_cycle()):
            offending = i
            break
    return GallaiReport(offending is None, blocks, cuts, offending)


@dataclass(frozen=True)
class ChoosabilityReport:
    degree_choosable: bool
    exhaustive: bool
    witness: tuple[frozenset[int], ...] | None
    assignments_checked: int


def is_degree_choosable(g: Graph, cap: int | None = None, sample: int | None = None,
                        seed: int = 0, max_assignments: int | None = None) -> ChoosabilityReport:
    """Brute-force degree-choosability verdict.

    Checks that every canonical degree assignment admits an L-coloring.  The
    color universe is capped at max(cap, max degree) so that the standard
    non-colorable assignments of Gallai trees stay inside the search space.
    When ``sample`` is given, or the assignment budget runs out, the verdict
    is flagged as non-exhaustive.
    """
    from .coloring import has_L_coloring
    from .verify import AssignmentStream, enumerate_degree_assignments

    if not is_connected(g):
        raise PreconditionError("degree-choosability test requires a connected graph")
    eff_cap = max(cap if cap is not None else 4, g.max_degree(), 1)
    stream = AssignmentStream(sizes=g.degrees(), cap=eff_cap, sample=sample, seed=seed)
    checked = 0
    exhausted_budget = False
    for lists in enumerate_degree_assignments(stream):
        if max_assignments is not None and checked >= max_assignments:
            exhausted_budget = True
            break
        checked += 1
        if has_L_coloring(g, lists) is None:
            return ChoosabilityReport(False, sample is None, lists, checked)
    return ChoosabilityReport(True, sample is None and not exhausted_budget, None, checked)
