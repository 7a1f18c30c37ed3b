"""Plane embeddings, face tracing, special subgraphs, reducible configurations.

A plane graph is a graph plus a rotation system: the cyclic order of
neighbors around each vertex.  Faces are traced, never stored; tracing uses
the fixed convention that the edge following a directed edge (u, v) is
(v, w) with w the successor of u in the rotation at v.  The Euler check
|V| - |E| + |F| = 1 + #components certifies a genus-0 embedding.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass

from .errors import BudgetError, KempeError, ParameterError, PreconditionError
from .graphs import (
    Graph,
    bipartition,
    connected_components,
    edge_subgraph,
)

DEFAULT_SEARCH_BUDGET = 500_000


@dataclass(frozen=True)
class PlaneGraph:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.graph
        if len(self.rotation) != g.n:
            raise ParameterError(f"rotation has {len(self.rotation)} rows for n={g.n}")
        for v, rot in enumerate(self.rotation):
            if tuple(sorted(rot)) != g.adj[v]:
                raise ParameterError(f"rotation at vertex {v} is not a permutation of its "
                                     f"neighbors")

    def rotation_text(self) -> str:
        return "\n".join(f"{v}: {' '.join(str(w) for w in rot)}"
                         for v, rot in enumerate(self.rotation)) + "\n"


@dataclass(frozen=True)
class FaceWalk:
    """A closed walk of directed edges bounding one face."""

    edges: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def vertices(self) -> tuple[int, ...]:
        """Boundary vertices with multiplicity (one per corner)."""
        return tuple(u for u, _ in self.edges)

    def incidences(self, v: int) -> int:
        return sum(1 for u, _ in self.edges if u == v)


def trace_faces(pg: PlaneGraph) -> tuple[FaceWalk, ...]:
    """All face walks; every directed edge is used exactly once.

    Raises "not a genus-0 embedding" when the Euler count fails.  Faces are
    listed in order of their lexicographically least unused directed edge,
    which makes reports byte-stable.
    """
    g = pg.graph
    succ_index = [{w: i for i, w in enumerate(rot)} for rot in pg.rotation]
    remaining = {(v, w) for v in range(g.n) for w in g.adj[v]}
    faces = []
    while remaining:
        start = min(remaining)
        walk = []
        edge = start
        while True:
            walk.append(edge)
            remaining.discard(edge)
            u, v = edge
            rot = pg.rotation[v]
            edge = (v, rot[(succ_index[v][u] + 1) % len(rot)])
            if edge == start:
                break
            if edge not in remaining:
                raise KempeError("internal: face tracing revisited a used edge")
        faces.append(FaceWalk(tuple(walk)))
    if g.m > 0:
        # Each component is traced independently, so a genus-0 system gives
        # V - E + F = 2 per component with edges (outer walks not merged;
        # isolated vertices sit inside faces and trace nothing).
        live = sum(1 for v in range(g.n) if g.degree(v) > 0)
        components = sum(1 for comp in connected_components(g) if len(comp) > 1)
        if live - g.m + len(faces) != 2 * components:
            raise PreconditionError(
                f"not a genus-0 embedding: V-E+F = {live}-{g.m}+{len(faces)} != "
                f"2*{components} components")
    return tuple(faces)


def plane_graph_from_faces(n: int, faces) -> PlaneGraph:
    """Build a rotation system from consistently oriented face cycles.

    Each face is a vertex cycle; every directed edge must appear in exactly
    one face.  The corner (x, y, z) of a face pins the successor of x after y.
    """
    nxt: list[dict[int, int]] = [{} for _ in range(n)]
    for face in faces:
        k = len(face)
        for i in range(k):
            x, y, z = face[i], face[(i + 1) % k], face[(i + 2) % k]
            if x in nxt[y]:
                raise ParameterError(f"directed edge ({x},{y}) appears in two faces")
            nxt[y][x] = z
    rotation = []
    for v in range(n):
        chain = nxt[v]
        if not chain:
            rotation.append(())
            continue
        start = min(chain)
        rot = [start]
        cur = chain[start]
        while cur != start:
            if cur in rot:
                raise ParameterError(f"rotation at vertex {v} does not close into one cycle")
            rot.append(cur)
            cur = chain[cur]
        if len(rot) != len(chain):
            raise ParameterError(f"rotation at vertex {v} does not cover all neighbors")
        rotation.append(tuple(rot))
    pg = PlaneGraph(_graph_from_rotation(n, rotation), tuple(rotation))
    trace_faces(pg)  # Euler check
    return pg


def _graph_from_rotation(n: int, rotation) -> Graph:
    return Graph(n, tuple(tuple(sorted(rot)) for rot in rotation))


def parse_rotation_system(text: str) -> PlaneGraph:
    """Parse the "v: n1 n2 ... nk" per-line rotation format."""
    rows: dict[int, tuple[int, ...]] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        v = int(head)
        if v in rows:
            raise ParameterError(f"duplicate rotation line for vertex {v}")
        rows[v] = tuple(int(tok) for tok in rest.split())
    if sorted(rows) != list(range(len(rows))):
        raise ParameterError("rotation lines must cover vertices 0..n-1 exactly once")
    rotation = tuple(rows[v] for v in range(len(rows)))
    return PlaneGraph(_graph_from_rotation(len(rows), rotation), rotation)


def delete_edge_planar(pg: PlaneGraph, u: int, v: int) -> PlaneGraph:
    """Remove one edge; the embedding of everything else is unchanged."""
    if not pg.graph.has_edge(u, v):
        raise ParameterError(f"no edge ({u},{v}) to delete")
    rotation = tuple(
        tuple(w for w in rot if not (x == u and w == v) and not (x == v and w == u))
        for x, rot in enumerate(pg.rotation))
    return PlaneGraph(_graph_from_rotation(pg.graph.n, rotation), rotation)


# ---------------------------------------------------------------------------
# Special subgraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecialSubgraph:
    """G3 or G2 of a plane graph, on dense ids with a map back to host ids."""

    kind: str
    graph: Graph
    vertices: tuple[int, ...]
    qualifying: tuple[int, ...]  # host ids of the defining low-degree vertices
    adjacent_qualifying_pair: tuple[int, int] | None
    parts: tuple[frozenset[int], frozenset[int]] | None  # host-id bipartition

    def host_edges(self) -> list[tuple[int, int]]:
        return [(self.vertices[u], self.vertices[v]) for u, v in self.graph.edges()]


def extract_special_subgraph(pg: PlaneGraph, kind: str) -> SpecialSubgraph:
    """Edge-induced subgraph on the defining vertices of the host.

    G3 takes all edges incident to degree-3 vertices; G2 takes all edges
    incident to degree-2 vertices that lie on at least one 3-face.  Isolated
    vertices are dropped.  When no two defining vertices are adjacent the
    subgraph is bipartite with the defining vertices as one part; that split
    is recorded in host ids.
    """
    g = pg.graph
    if kind == "G3":
        qualifying = {v for v in range(g.n) if g.degree(v) == 3}
    elif kind == "G2":
        on_3_face = set()
        for face in trace_faces(pg):
            if face.length == 3:
                on_3_face.update(face.vertices())
        qualifying = {v for v in range(g.n) if g.degree(v) == 2 and v in on_3_face}
    else:
        raise ParameterError(f"kind must be G3 or G2, got {kind!r}")
    edges = [(u, v) for u, v in g.edges() if u in qualifying or v in qualifying]
    if not edges:
        return SpecialSubgraph(kind, Graph(0, ()), (), tuple(sorted(qualifying)), None, None)
    sub, vmap = edge_subgraph(g, edges)
    pair = next(((u, v) for u, v in edges if u in qualifying and v in qualifying), None)
    parts = None
    if pair is None:
        # Every edge then joins a qualifying vertex to a non-qualifying one.
        parts = (frozenset(v for v in vmap if v in qualifying),
                 frozenset(v for v in vmap if v not in qualifying))
        split = bipartition(sub)
        if split is None:
            raise KempeError("internal: subgraph with no adjacent qualifying pair "
                             "must be bipartite")
    return SpecialSubgraph(kind, sub, vmap, tuple(sorted(qualifying)), pair, parts)


# ---------------------------------------------------------------------------
# Cycle and path search (exhaustive; in-scope subgraphs are tiny)
# ---------------------------------------------------------------------------

class _SearchBudget:
    """Mutable step counter shared across one detection call."""

    __slots__ = ("remaining", "limit")

    def __init__(self, limit: int):
        self.remaining = limit
        self.limit = limit

    def spend(self, what: str) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetError(f"{what} exceeded the search budget of {self.limit} steps",
                              self.limit)


def all_cycles(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET,
               counter: _SearchBudget | None = None) -> list[tuple[int, ...]]:
    """Every simple cycle, as a canonical tuple: least vertex first, lesser
    neighbor second, so each cycle appears exactly once."""
    counter = counter if counter is not None else _SearchBudget(budget)
    cycles = []

    def extend(start: int, path: list[int], on_path: set[int]):
        counter.spend("cycle search")
        v = path[-1]
        for w in g.adj[v]:
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                cycles.append(tuple(path))
            elif w > start and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(start, path, on_path)
                on_path.discard(w)
                path.pop()

    for s in range(g.n):
        extend(s, [s], {s})
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def all_paths_between(g: Graph, u: int, v: int, budget: int = DEFAULT_SEARCH_BUDGET,
                      counter: _SearchBudget | None = None) -> list[tuple[int, ...]]:
    """Every simple u,v-path as a vertex tuple from u to v."""
    counter = counter if counter is not None else _SearchBudget(budget)
    paths = []

    def extend(path: list[int], on_path: set[int]):
        counter.spend("path search")
        x = path[-1]
        for w in g.adj[x]:
            if w == v:
                paths.append(tuple(path) + (v,))
            elif w != u and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.discard(w)
                path.pop()

    extend([u], {u})
    paths.sort(key=lambda p: (len(p), p))
    return paths


def _shortest_join(g: Graph, source: set[int], target: set[int]) -> tuple[int, ...] | None:
    """Shortest path from one vertex set to another; interior avoids both."""
    from collections import deque
    parent = {v: None for v in source}
    queue = deque(sorted(source))
    while queue:
        x = queue.popleft()
        for w in sorted(g.adj[x]):
            if w in parent:
                continue
            parent[w] = x
            if w in target:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return tuple(path)
            queue.append(w)
    return None


# ---------------------------------------------------------------------------
# Configuration witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConfigWitness:
    """A concrete occurrence of one of the reducible configurations."""

    kind: str  # "C1-edge" | "C2-barbell" | "C3-theta" | "C3-K24"
    edge: tuple[int, int] | None = None
    degree_sum: int | None = None
    threshold: int | None = None
    cycle1: tuple[int, ...] | None = None
    cycle2: tuple[int, ...] | None = None
    path: tuple[int, ...] | None = None
    hubs: tuple[int, int] | None = None
    paths: tuple[tuple[int, ...], ...] | None = None
    centers: tuple[int, ...] | None = None
    note: str = ""

    def translated(self, vmap) -> "ConfigWitness":
        """Map dense subgraph ids back to host ids."""
        t = lambda x: vmap[x]

        def tt(seq):
            return tuple(t(x) for x in seq) if seq is not None else None

        return ConfigWitness(
            kind=self.kind,
            edge=tt(self.edge), degree_sum=self.degree_sum, threshold=self.threshold,
            cycle1=tt(self.cycle1), cycle2=tt(self.cycle2), path=tt(self.path),
            hubs=tt(self.hubs),
            paths=tuple(tt(p) for p in self.paths) if self.paths is not None else None,
            centers=tt(self.centers), note=self.note)

    def validate(self, g: Graph) -> None:
        """Re-check the witness structurally against the graph it names."""
        if self.kind == "C1-edge":
            u, v = self.edge
            if not g.has_edge(u, v):
                raise KempeError(f"witness edge ({u},{v}) is not an edge")
            if g.degree(u) + g.degree(v) != self.degree_sum:
                raise KempeError("witness degree sum is stale")
            if self.degree_sum > self.threshold:
                raise KempeError("witness edge exceeds the threshold")
        elif self.kind == "C2-barbell":
            for cyc in (self.cycle1, self.cycle2):
                _validate_cycle(g, cyc)
                if len(cyc) % 2:
                    raise KempeError("barbell witness cycle is odd")
            shared = set(self.cycle1) & set(self.cycle2)
            if self.path is None or len(self.path) == 1:
                if len(shared) != 1 or set(self.path or shared) != shared:
                    raise KempeError("short barbell witness must share exactly one vertex")
            else:
                if shared:
                    raise KempeError("barbell witness cycles overlap beyond the join path")
                _validate_path(g, self.path)
                if self.path[0] not in self.cycle1 or self.path[-1] not in self.cycle2:
                    raise KempeError("barbell join path does not end on the cycles")
                interior = set(self.path[1:-1])
                if interior & (set(self.cycle1) | set(self.cycle2)):
                    raise KempeError("barbell join path re-enters a cycle")
        elif self.kind == "C3-theta":
            u, v = self.hubs
            if len(self.paths) != 3:
                raise KempeError("theta witness needs three paths")
            interiors = []
            parities = set()
            for p in self.paths:
                if p[0] != u or p[-1] != v:
                    raise KempeError("theta path does not join the hubs")
                _validate_path(g, p)
                interiors.append(set(p[1:-1]))
                parities.add((len(p) - 1) % 2)
            if len(parities) != 1:
                raise KempeError("theta witness is not bipartite: path parities differ")
            for a, b in itertools.combinations(interiors, 2):
                if a & b:
                    raise KempeError("theta paths are not internally disjoint")
            if sorted(len(p) - 1 for p in self.paths) == [2, 2, 2]:
                raise KempeError("theta witness is K_{2,3}, which is excluded")
        elif self.kind == "C3-K24":
            u, v = self.hubs
            if len(set(self.centers)) != 4:
                raise KempeError("K_{2,4} witness needs four distinct centers")
            for c in self.centers:
                if not (g.has_edge(u, c) and g.has_edge(v, c)):
                    raise KempeError(f"center {c} is not joined to both hubs")
        else:
            raise KempeError(f"unknown witness kind {self.kind!r}")

    def describe(self, labeler=str) -> str:
        if self.kind == "C1-edge":
            u, v = self.edge
            return (f"C1-edge ({labeler(u)},{labeler(v)}) degree sum {self.degree_sum} "
                    f"<= {self.threshold}")
        if self.kind == "C2-barbell":
            join = "shared vertex" if len(self.path) == 1 else "path"
            return (f"C2-barbell cycles {self.cycle1} and {self.cycle2}, "
                    f"{join} {self.path}")
        if self.kind == "C3-theta":
            return f"C3-theta hubs {self.hubs} paths {self.paths}"
        if self.kind == "C3-K24":
            extra = f" [{self.note}]" if self.note else ""
            return f"C3-K24 hubs {self.hubs} centers {self.centers}{extra}"
        return self.kind


def _validate_cycle(g: Graph, cyc) -> None:
    if cyc is None or len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise KempeError(f"not a simple cycle: {cyc}")
    for i, x in enumerate(cyc):
        if not g.has_edge(x, cyc[(i + 1) % len(cyc)]):
            raise KempeError(f"cycle edge ({x},{cyc[(i + 1) % len(cyc)]}) missing")


def _validate_path(g: Graph, path) -> None:
    if len(set(path)) != len(path):
        raise KempeError(f"not a simple path: {path}")
    for x, y in zip(path, path[1:]):
        if not g.has_edge(x, y):
            raise KempeError(f"path edge ({x},{y}) missing")


# ---------------------------------------------------------------------------
# Detection
# ---------------------------------------------------------------------------

def detect_configuration(g: Graph, kind: str, threshold: int | None = None,
                         budget: int = DEFAULT_SEARCH_BUDGET) -> ConfigWitness | None:
    """Search for one configuration; subgraph containment semantics.

    C1 runs on the host graph's degrees with an explicit threshold (never
    inferred here).  C2/C3 variants expect the extracted G3 or G2 on dense
    ids.  Returns the lexicographically least witness, or None only after an
    exhaustive search within budget.
    """
    if kind == "C1":
        if threshold is None:
            raise ParameterError("C1 detection needs an explicit threshold")
        for u, v in g.edges():
            s = g.degree(u) + g.degree(v)
            if s <= threshold:
                return ConfigWitness("C1-edge", edge=(u, v), degree_sum=s,
                                     threshold=threshold)
        return None
    if kind == "C2-barbell":
        return _detect_barbell(g, budget)
    if kind == "C3-theta":
        return _detect_theta(g, budget)
    if kind == "C3-K24":
        return _detect_k24(g)
    raise ParameterError(f"unknown configuration kind {kind!r}")


def _detect_barbell(g: Graph, budget: int) -> ConfigWitness | None:
    """First barbell in ascending total cycle length, ties by enumeration order.

    Cycles come pre-sorted by (length, tuple); pairs are scanned by ascending
    length sum so the reported witness is the smallest one.  Pair checks are
    counted against the budget.
    """
    counter = _SearchBudget(budget)
    even_cycles = [c for c in all_cycles(g, counter=counter) if len(c) % 2 == 0]
    by_len: dict[int, list[int]] = {}
    for idx, c in enumerate(even_cycles):
        by_len.setdefault(len(c), []).append(idx)
    lengths = sorted(by_len)
    vsets = [set(c) for c in even_cycles]
    for total in sorted({a + b for a in lengths for b in lengths if a <= b}):
        for la in lengths:
            lb = total - la
            if lb < la or lb not in by_len:
                continue
            for i in by_len[la]:
                for j in by_len[lb]:
                    if j <= i:
                        continue
                    counter.spend("barbell pair scan")
                    shared = vsets[i] & vsets[j]
                    if len(shared) > 1:
                        continue
                    if len(shared) == 1:
                        path = (min(shared),)
                    else:
                        path = _shortest_join(g, vsets[i], vsets[j])
                        if path is None:
                            continue
                    return ConfigWitness("C2-barbell", cycle1=even_cycles[i],
                                         cycle2=even_cycles[j], path=path)
    return None


def _detect_theta(g: Graph, budget: int) -> ConfigWitness | None:
    """Branch-and-prune over hub pairs and three internally disjoint paths.

    Paths per hub pair are pre-sorted by (length, tuple) and grouped by
    parity (a bipartite theta needs all three lengths congruent mod 2); the
    first qualifying triple in that order is returned.
    """
    counter = _SearchBudget(budget)
    for u, v in itertools.combinations(range(g.n), 2):
        if g.degree(u) < 3 or g.degree(v) < 3:
            continue
        paths = all_paths_between(g, u, v, counter=counter)
        for parity in (0, 1):
            group = [p for p in paths if (len(p) - 1) % 2 == parity]
            interiors = [frozenset(p[1:-1]) for p in group]
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    if interiors[i] & interiors[j]:
                        continue
                    ij = interiors[i] | interiors[j]
                    for k in range(j + 1, len(group)):
                        counter.spend("theta triple scan")
                        if interiors[k] & ij:
                            continue
                        lengths = sorted(len(group[t]) - 1 for t in (i, j, k))
                        if lengths == [2, 2, 2]:
                            continue  # K_{2,3} is excluded
                        trio = tuple(sorted((group[i], group[j], group[k])))
                        return ConfigWitness("C3-theta", hubs=(u, v), paths=trio)
    return None


def _detect_k24(g: Graph) -> ConfigWitness | None:
    for u, v in itertools.combinations(range(g.n), 2):
        common = sorted(set(g.adj[u]) & set(g.adj[v]))
        if len(common) >= 4:
            return ConfigWitness("C3-K24", hubs=(u, v), centers=tuple(common[:4]))
    return None


# ---------------------------------------------------------------------------
# Structural audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AuditReport:
    variant: str
    threshold: int
    witnesses: tuple[ConfigWitness, ...]
    none_found: bool
    complete: bool
    subgraph: SpecialSubgraph
    serialized: str | None
    notes: tuple[str, ...] = ()

    def describe(self) -> str:
        lines = [f"variant={self.variant} threshold={self.threshold} "
                 f"subgraph={self.subgraph.kind} "
                 f"({self.subgraph.graph.n} vertices, {self.subgraph.graph.m} edges)"]
        if self.none_found and self.complete:
            lines.append("NONE-HOLD: no configuration found; detector bug or a genuine "
                         "counterexample; graph serialized below")
            lines.append(self.serialized.rstrip("\n"))
        elif self.none_found:
            lines.append("inconclusive: nothing found but a detector ran out of budget")
        for note in self.notes:
            lines.append("note: " + note)
        for w in self.witnesses:
            lines.append("found " + w.describe())
        return "\n".join(lines) + "\n"


def structural_audit(pg: PlaneGraph, variant: str,
                     budget: int = DEFAULT_SEARCH_BUDGET) -> AuditReport:
    """Evaluate (C1), (C2), (C3) for one lemma variant and report all that hold.

    The structural lemmas promise at least one configuration on every simple
    plane graph with min degree 2; a report finding nothing after complete
    searches is therefore flagged as a detector bug or genuine counterexample
    and carries the serialized rotation system.  A detector that exhausts its
    budget is recorded in the notes instead of failing the audit.
    """
    g = pg.graph
    if g.n and g.min_degree() < 2:
        raise PreconditionError(f"structural audit needs min degree >= 2, got "
                                f"{g.min_degree()}")
    if variant == "lemma1":
        threshold = max(11, g.max_degree() + 2)
        sub_kind = "G3"
    elif variant == "lemma2":
        threshold = 16
        sub_kind = "G2"
    else:
        raise ParameterError(f"variant must be lemma1 or lemma2, got {variant!r}")
    sub = extract_special_subgraph(pg, sub_kind)
    witnesses = []
    notes = []

    def run(kind, graph, translate):
        try:
            found = detect_configuration(graph, kind, threshold=threshold, budget=budget)
        except BudgetError as exc:
            notes.append(f"{kind}: {exc}")
            return None
        if found is not None:
            found.validate(graph)
            found = translate(found)
        return found

    c1 = run("C1", g, lambda w: w)
    if c1 is not None:
        witnesses.append(c1)
    barbell = run("C2-barbell", sub.graph, lambda w: w.translated(sub.vertices))
    if barbell is not None:
        witnesses.append(barbell)
    if variant == "lemma2":
        k24 = run("C3-K24", sub.graph, lambda w: w.translated(sub.vertices))
        if k24 is not None:
            two_side = all(g.degree(c) == 2 for c in k24.centers)
            k24 = dataclasses.replace(
                k24, note="centers are host 2-vertices" if two_side
                else "centers include a non-2-vertex of the host")
            witnesses.append(k24)
    theta = run("C3-theta", sub.graph, lambda w: w.translated(sub.vertices))
    if theta is not None:
        witnesses.append(theta)
    none_found = not witnesses
    complete = not notes
    serialized = pg.rotation_text() if none_found else None
    return AuditReport(variant, threshold, tuple(witnesses), none_found, complete,
                       sub, serialized, tuple(notes))
