"""The Kempe reconfiguration graph over all L-colorings of a graph.

Nodes are L-colorings, edges are L-valid Kempe swaps.  Mixing classes are the
connected components; a graph is L-swappable iff there is at most one class.

The engine encodes a coloring as per-color vertex bitmasks, so finding the
two-colored components and checking list validity of a swap are a handful of
integer operations.  Public results are always plain colorings (tuples of
colors) in the deterministic order produced by enumerate_L_colorings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .coloring import (
    DEFAULT_MAX_COLORINGS,
    Coloring,
    ListAssignment,
    SwapMove,
    check_coloring,
    check_partial,
    classify_swap,
    classify_swap_partial,
    color_universe,
    enumerate_L_colorings,
    kempe_component,
    normalize_move,
    partial_component,
)
from .errors import BudgetError, KempeError, ParameterError, PreconditionError
from .graphs import Graph, induced_subgraph, is_connected, is_gallai_tree


# ---------------------------------------------------------------------------
# Bitmask engine
# ---------------------------------------------------------------------------

class _Engine:
    """Precomputed tables for fast neighbor generation on one (g, L) pair."""

    def __init__(self, g: Graph, lists: ListAssignment):
        self.g = g
        self.universe = color_universe(lists)
        self.cindex = {c: i for i, c in enumerate(self.universe)}
        self.k = len(self.universe)
        self.adjm = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
        self.okm = [0] * self.k
        for v, s in enumerate(lists):
            for c in s:
                self.okm[self.cindex[c]] |= 1 << v

    def to_masks(self, phi: Coloring) -> tuple[int, ...]:
        masks = [0] * self.k
        for v, c in enumerate(phi):
            masks[self.cindex[c]] |= 1 << v
        return tuple(masks)

    def from_masks(self, masks) -> Coloring:
        phi = [0] * self.g.n
        for ci, m in enumerate(masks):
            c = self.universe[ci]
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                phi[v] = c
        return tuple(phi)

    def neighbors(self, masks):
        """Yield (i, j, comp, new_masks) for every L-valid swap from masks."""
        adjm = self.adjm
        okm = self.okm
        for i in range(self.k):
            mi = masks[i]
            for j in range(i + 1, self.k):
                mj = masks[j]
                s = mi | mj
                rem = s
                while rem:
                    comp = rem & -rem
                    frontier = comp
                    while frontier:
                        nxt = 0
                        f = frontier
                        while f:
                            v = (f & -f).bit_length() - 1
                            f &= f - 1
                            nxt |= adjm[v]
                        frontier = nxt & s & ~comp
                        comp |= frontier
                    rem &= ~comp
                    to_j = comp & mi
                    to_i = comp & mj
                    if to_j & ~okm[j] or to_i & ~okm[i]:
                        continue
                    new = list(masks)
                    new[i] = (mi & ~to_j) | to_i
                    new[j] = (mj & ~to_i) | to_j
                    yield i, j, comp, tuple(new)

    def move_of(self, i: int, j: int, comp: int) -> SwapMove:
        anchor = (comp & -comp).bit_length() - 1
        return SwapMove(anchor, (self.universe[i], self.universe[j]))


def _flood_components(engine: _Engine, masks_list) -> tuple[list[int], list[bool]]:
    """Component id per node (by least node index) and a has-valid-move flag."""
    index = {m: i for i, m in enumerate(masks_list)}
    comp_of = [-1] * len(masks_list)
    has_move = [False] * len(masks_list)
    next_comp = 0
    for start in range(len(masks_list)):
        if comp_of[start] >= 0:
            continue
        comp_of[start] = next_comp
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for _, _, _, new in engine.neighbors(masks_list[node]):
                has_move[node] = True
                other = index[new]
                if comp_of[other] < 0:
                    comp_of[other] = next_comp
                    queue.append(other)
        next_comp += 1
    return comp_of, has_move


# ---------------------------------------------------------------------------
# Mixing classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixingReport:
    """Partition of all L-colorings into Kempe-equivalence classes."""

    total: int
    class_count: int
    component_ids: tuple[int, ...]
    representatives: tuple[Coloring, ...]
    frozen: tuple[Coloring, ...]
    colorings: tuple[Coloring, ...]

    @property
    def is_L_swappable(self) -> bool:
        return self.class_count <= 1


def mixing_classes(g: Graph, lists: ListAssignment,
                   max_colorings: int = DEFAULT_MAX_COLORINGS) -> MixingReport:
    """Connected components of the reconfiguration graph.

    Representatives are the lexicographically least coloring of each class;
    frozen colorings are those admitting no valid swap at all.
    """
    colorings = enumerate_L_colorings(g, lists, max_colorings)
    engine = _Engine(g, lists)
    masks_list = [engine.to_masks(phi) for phi in colorings]
    comp_of, has_move = _flood_components(engine, masks_list)
    count = max(comp_of) + 1 if comp_of else 0
    reps = []
    seen = set()
    for node, c in enumerate(comp_of):
        if c not in seen:
            seen.add(c)
            reps.append(colorings[node])
    frozen = tuple(colorings[i] for i in range(len(colorings)) if not has_move[i])
    return MixingReport(len(colorings), count, tuple(comp_of), tuple(reps),
                        frozen, tuple(colorings))


def is_L_swappable(g: Graph, lists: ListAssignment,
                   max_colorings: int = DEFAULT_MAX_COLORINGS) -> bool:
    """Fast connectivity check: flood from the first coloring only."""
    colorings = enumerate_L_colorings(g, lists, max_colorings)
    if len(colorings) <= 1:
        return True
    engine = _Engine(g, lists)
    masks_list = [engine.to_masks(phi) for phi in colorings]
    index = {m: i for i, m in enumerate(masks_list)}
    seen = bytearray(len(masks_list))
    seen[0] = 1
    reached = 1
    queue = deque([0])
    while queue:
        node = queue.popleft()
        for _, _, _, new in engine.neighbors(masks_list[node]):
            other = index[new]
            if not seen[other]:
                seen[other] = 1
                reached += 1
                if reached == len(masks_list):
                    return True
                queue.append(other)
    return reached == len(masks_list)


# ---------------------------------------------------------------------------
# Explicit reconfiguration graph (small instances; DOT export, diagnostics)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReconfigGraph:
    colorings: tuple[Coloring, ...]
    edges: tuple[tuple[int, int, SwapMove], ...]
    component_ids: tuple[int, ...]


def build_reconfig_graph(g: Graph, lists: ListAssignment,
                         max_colorings: int = DEFAULT_MAX_COLORINGS) -> ReconfigGraph:
    """Materialize nodes and normalized edges; meant for small instances."""
    colorings = enumerate_L_colorings(g, lists, max_colorings)
    engine = _Engine(g, lists)
    masks_list = [engine.to_masks(phi) for phi in colorings]
    index = {m: i for i, m in enumerate(masks_list)}
    edges = {}
    for node, masks in enumerate(masks_list):
        for i, j, comp, new in engine.neighbors(masks):
            other = index[new]
            key = (min(node, other), max(node, other))
            if key not in edges:
                edges[key] = engine.move_of(i, j, comp)
    comp_of, _ = _flood_components(engine, masks_list)
    edge_list = tuple((a, b, mv) for (a, b), mv in sorted(edges.items()))
    return ReconfigGraph(tuple(colorings), edge_list, tuple(comp_of))


# ---------------------------------------------------------------------------
# Equivalence paths
# ---------------------------------------------------------------------------

def equivalence_path(g: Graph, lists: ListAssignment, phi1: Coloring, phi2: Coloring,
                     max_colorings: int = DEFAULT_MAX_COLORINGS) -> list[SwapMove] | None:
    """A shortest sequence of L-valid swaps from phi1 to phi2, or None.

    The returned sequence is replayed through classify_swap as a self-check
    before being handed back.
    """
    for phi in (phi1, phi2):
        result = check_coloring(g, lists, phi)
        if not result:
            raise PreconditionError(f"endpoint is not an L-coloring: {result}")
    if phi1 == phi2:
        return []
    engine = _Engine(g, lists)
    start = engine.to_masks(phi1)
    goal = engine.to_masks(phi2)
    prev: dict[tuple, tuple] = {start: None}
    queue = deque([start])
    while queue:
        masks = queue.popleft()
        for i, j, comp, new in engine.neighbors(masks):
            if new in prev:
                continue
            prev[new] = (masks, engine.move_of(i, j, comp))
            if len(prev) > max_colorings:
                raise BudgetError(f"equivalence search exceeded {max_colorings} colorings",
                                  max_colorings)
            if new == goal:
                moves = []
                cur = new
                while prev[cur] is not None:
                    cur, mv = prev[cur]
                    moves.append(mv)
                moves.reverse()
                _replay_check(g, lists, phi1, phi2, moves)
                return moves
            queue.append(new)
    return None


def _replay_check(g, lists, phi1, phi2, moves):
    cur = phi1
    for mv in moves:
        outcome = classify_swap(g, lists, cur, mv)
        if not outcome.valid:
            raise KempeError(f"internal: path replay failed at {mv}: {outcome.reason}")
        cur = outcome.coloring
    if cur != phi2:
        raise KempeError("internal: path replay does not reach the target coloring")


# ---------------------------------------------------------------------------
# Coloring classes and mixing certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassConstraint:
    """A set of colorings in disjunctive normal form.

    Each clause is a conjunction of (vertex, color) atoms; a coloring belongs
    to the class when some clause holds entirely.  The class L_{v,a} of all
    colorings with phi(v) = a is the single-clause constraint fix(v, a).
    """

    clauses: frozenset[frozenset[tuple[int, int]]]

    @staticmethod
    def fix(vertex: int, color: int) -> "ClassConstraint":
        return ClassConstraint(frozenset({frozenset({(vertex, color)})}))

    @staticmethod
    def conjunction(atoms) -> "ClassConstraint":
        return ClassConstraint(frozenset({frozenset(atoms)}))

    @staticmethod
    def everything() -> "ClassConstraint":
        return ClassConstraint(frozenset({frozenset()}))

    def union(self, other: "ClassConstraint") -> "ClassConstraint":
        return ClassConstraint(self.clauses | other.clauses)

    def intersect(self, other: "ClassConstraint") -> "ClassConstraint":
        merged = set()
        for c1 in self.clauses:
            for c2 in other.clauses:
                fixed: dict[int, int] = {}
                ok = True
                for v, c in list(c1) + list(c2):
                    if fixed.setdefault(v, c) != c:
                        ok = False
                        break
                if ok:
                    merged.add(c1 | c2)
        return ClassConstraint(frozenset(merged))

    def satisfied(self, phi: Coloring) -> bool:
        return any(all(phi[v] == c for v, c in clause) for clause in self.clauses)

    def validate(self, g: Graph, lists: ListAssignment) -> None:
        for clause in self.clauses:
            for v, c in clause:
                if not 0 <= v < g.n:
                    raise ParameterError(f"constraint names vertex {v} out of range")
                if c not in lists[v]:
                    raise ParameterError(f"constraint color {c} not in list of vertex {v}")


@dataclass(frozen=True)
class SubsetMixVerdict:
    mixes: bool
    empty: bool
    size: int


def subset_mixes(g: Graph, lists: ListAssignment, constraint: ClassConstraint,
                 max_colorings: int = DEFAULT_MAX_COLORINGS,
                 report: MixingReport | None = None) -> SubsetMixVerdict:
    """Whether all colorings satisfying the constraint are pairwise L-equivalent.

    Mixing is membership in one component of the full reconfiguration graph;
    intermediate colorings may leave the subset.  An empty subset mixes
    vacuously and is flagged.
    """
    constraint.validate(g, lists)
    if report is None:
        report = mixing_classes(g, lists, max_colorings)
    ids = {report.component_ids[i] for i, phi in enumerate(report.colorings)
           if constraint.satisfied(phi)}
    size = sum(1 for phi in report.colorings if constraint.satisfied(phi))
    if not ids:
        return SubsetMixVerdict(True, True, 0)
    return SubsetMixVerdict(len(ids) == 1, False, size)


@dataclass(frozen=True)
class CoverVerdict:
    certified: bool
    failure: str | None
    failing_index: int | None
    class_sizes: tuple[int, ...]
    total: int


def cover_certificate(g: Graph, lists: ListAssignment, classes,
                      max_colorings: int = DEFAULT_MAX_COLORINGS) -> CoverVerdict:
    """Check the mixing-cover proof pattern on explicit coloring classes.

    Conditions, in the order they are reported on failure: (a) every class
    mixes, (b) the union covers all L-colorings, (c) every class after the
    first intersects some earlier one.  All three passing certifies that the
    whole coloring set mixes.
    """
    classes = list(classes)
    report = mixing_classes(g, lists, max_colorings)
    members: list[set[int]] = []
    for idx, constraint in enumerate(classes):
        constraint.validate(g, lists)
        nodes = {i for i, phi in enumerate(report.colorings) if constraint.satisfied(phi)}
        members.append(nodes)
        comps = {report.component_ids[i] for i in nodes}
        if len(comps) > 1:
            return CoverVerdict(False, "class does not mix", idx,
                                tuple(len(m) for m in members), report.total)
    covered = set().union(*members) if members else set()
    if len(covered) != report.total:
        return CoverVerdict(False, "union does not cover all L-colorings", None,
                            tuple(len(m) for m in members), report.total)
    for i in range(1, len(members)):
        if not any(members[i] & members[j] for j in range(i)):
            return CoverVerdict(False, "no earlier class intersects this one", i,
                                tuple(len(m) for m in members), report.total)
    return CoverVerdict(True, None, None, tuple(len(m) for m in members), report.total)


# ---------------------------------------------------------------------------
# Lifting through a vertex (single-vertex reduction)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftResult:
    moves: tuple[SwapMove, ...]
    final: Coloring


def _restrict(phi: Coloring, absent: frozenset[int]):
    return tuple(None if v in absent else phi[v] for v in range(len(phi)))


def _lift_vertex_core(g: Graph, lists: ListAssignment, v: int, start, moves,
                      absent: frozenset[int]):
    """Lift moves on g-absent-v to g-absent (start is a coloring of g-absent).

    Each input swap replays directly when it cannot disturb v; otherwise v is
    first parked on a color unused on its closed neighborhood (one exists
    because |L(v)| exceeds v's degree in g-absent), which is itself a
    single-vertex Kempe swap.  Returns the lifted moves and final coloring of
    g-absent as a partial tuple.
    """
    live_degree = sum(1 for w in g.adj[v] if w not in absent)
    if len(lists[v]) <= live_degree:
        raise PreconditionError(f"need |L({v})| > d({v}) = {live_degree}")
    wider = absent | {v}
    psi = start
    out: list[SwapMove] = []
    for step, mv in enumerate(moves):
        restriction = _restrict(psi, wider)
        outcome = classify_swap_partial(g, lists, restriction, mv, wider)
        if not outcome.valid:
            raise PreconditionError(f"input move {step} ({mv}) is not L-valid on the "
                                    f"reduced graph: {outcome.reason}")
        a, b = mv.colors
        comp = partial_component(g, psi, mv.anchor, (a, b), absent)
        replay_safe = psi[v] not in (a, b) or v not in comp
        if not replay_safe:
            pair_neighbors = sum(1 for w in g.adj[v]
                                 if w not in absent and psi[w] in (a, b))
            replay_safe = a in lists[v] and b in lists[v] and pair_neighbors <= 1
        if not replay_safe:
            used = {psi[w] for w in g.adj[v] if w not in absent} | {psi[v]}
            gamma = min(c for c in lists[v] if c not in used)
            # v sits on an alpha,beta-path, so the other pair color is used
            # on N[v]; gamma is therefore outside the pair.
            if gamma in (a, b):
                raise KempeError("internal: parking color collides with the swap pair")
            park = SwapMove(v, (psi[v], gamma))
            parked = classify_swap_partial(g, lists, psi, park, absent)
            if not parked.valid or parked.component != frozenset({v}):
                raise KempeError("internal: parking recolor is not a singleton Kempe swap")
            psi = parked.coloring
            out.append(park)
        replay = classify_swap_partial(g, lists, psi, mv, absent)
        if not replay.valid:
            raise KempeError(f"internal: lifted replay of step {step} failed: {replay.reason}")
        norm = SwapMove(min(replay.component), mv.colors)
        psi = replay.coloring
        out.append(norm)
        if _restrict(psi, wider) != outcome.coloring:
            raise KempeError(f"internal: lifted step {step} does not restrict correctly")
    return out, psi


def lift_through_vertex(g: Graph, lists: ListAssignment, v: int, start: Coloring,
                        moves, target_color: int | None = None) -> LiftResult:
    """Lift an L-valid swap sequence on g-v to one on g.

    Moves on g-v keep the host vertex ids (their anchors are simply never v).
    Needs |L(v)| > d(v).  If target_color is given and the final coloring
    differs there, one last recoloring of v is appended (the target color must
    then be absent from v's neighborhood).
    """
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range")
    chk = check_coloring(g, lists, start)
    if not chk:
        raise PreconditionError(f"start is not an L-coloring: {chk}")
    out, psi = _lift_vertex_core(g, lists, v, start, moves, frozenset())
    if target_color is not None and psi[v] != target_color:
        if target_color not in lists[v]:
            raise PreconditionError(f"target color {target_color} not in list of vertex {v}")
        if any(psi[w] == target_color for w in g.adj[v]):
            raise PreconditionError(f"target color {target_color} is used on a neighbor of {v}; "
                                    f"not reachable by recoloring v")
        mv = SwapMove(v, (psi[v], target_color))
        outcome = classify_swap(g, lists, psi, mv)
        psi = outcome.coloring
        out.append(mv)
    return LiftResult(tuple(out), psi)


# ---------------------------------------------------------------------------
# Versatile extensions and lifting through a subgraph
# ---------------------------------------------------------------------------

def _pair_components(g: Graph, phi, pair, absent: frozenset[int]) -> list[frozenset[int]]:
    """All components of the two-colored subgraph, ignoring absent vertices."""
    a, b = pair
    todo = {x for x in range(g.n)
            if x not in absent and phi[x] is not None and phi[x] in (a, b)}
    comps = []
    while todo:
        seed = min(todo)
        comp = {seed}
        stack = [seed]
        while stack:
            x = stack.pop()
            for w in g.adj[x]:
                if w in todo and w not in comp:
                    comp.add(w)
                    stack.append(w)
        todo -= comp
        comps.append(frozenset(comp))
    return comps


def find_versatile_extension(g: Graph, h_vertices, lists: ListAssignment, partial,
                             w: int, pair) -> Coloring:
    """Extend a coloring of g-H to g, preserving swap validity at w.

    The extension keeps the alpha,beta-swap at w L-valid and merges no two
    alpha,beta-components of the partial coloring into one.  Found by
    exhaustive search over proper list extensions of H (ascending vertex,
    ascending color), returning the first, hence lexicographically least,
    extension satisfying the contract.
    """
    h = frozenset(h_vertices)
    if not h:
        raise ParameterError("H must be nonempty")
    if any(not 0 <= x < g.n for x in h):
        raise ParameterError("H names vertices out of range")
    if w in h:
        raise ParameterError(f"w = {w} must lie outside H")
    a, b = sorted(pair)
    if a == b:
        raise ParameterError("swap colors must differ")
    sub_h, _ = induced_subgraph(g, h)
    if not is_connected(sub_h):
        raise PreconditionError("H is not connected")
    if is_gallai_tree(sub_h).is_gallai_tree:
        raise PreconditionError("H is a Gallai tree")
    for x in sorted(h):
        if len(lists[x]) < g.degree(x):
            raise PreconditionError(f"|L({x})| = {len(lists[x])} < d_G({x}) = {g.degree(x)}")
    chk = check_partial(g, lists, partial, h)
    if not chk:
        raise PreconditionError(f"partial coloring is not an L-coloring of g-H: {chk}")
    if partial[w] not in (a, b):
        raise PreconditionError(f"not versatile at {w}: its color is outside the pair")
    swap = classify_swap_partial(g, lists, partial, SwapMove(w, (a, b)), h)
    if not swap.valid:
        raise PreconditionError(f"not versatile at {w}: {swap.reason}")
    old_comps = _pair_components(g, partial, (a, b), h)
    hs = sorted(h)
    phi = list(partial)

    def contract_ok(cand: Coloring) -> bool:
        outcome = classify_swap(g, lists, cand, SwapMove(w, (a, b)))
        if not outcome.valid:
            return False
        for comp in _pair_components(g, cand, (a, b), frozenset()):
            if sum(1 for p in old_comps if p <= comp) > 1:
                return False
        return True

    def descend(i: int):
        if i == len(hs):
            cand = tuple(phi)
            return cand if contract_ok(cand) else None
        x = hs[i]
        for c in sorted(lists[x]):
            if all(phi[y] != c for y in g.adj[x] if phi[y] is not None):
                phi[x] = c
                found = descend(i + 1)
                if found is not None:
                    return found
                phi[x] = None
        return None

    result = descend(0)
    if result is None:
        raise KempeError("no versatile extension exists although the hypotheses hold; "
                         "potential counterexample to the extension lemma")
    return result


def lift_through_subgraph(g: Graph, h_vertices, lists: ListAssignment, start: Coloring,
                          moves, target: Coloring | None = None,
                          verify_hypotheses: bool = True, verify_rest: bool = False,
                          cap: int = 4,
                          max_colorings: int = DEFAULT_MAX_COLORINGS) -> LiftResult:
    """Lift an L-valid swap sequence on g-H to one on g.

    Per input step: extend the current g-H coloring to one of g that is
    versatile for the step's swap, bridge the current coloring to that
    extension by Kempe swaps confined to H (found under the reduced list
    assignment that strips colors used just outside H), then replay the step.
    If target is given, a final bridge inside H reaches it.

    With verify_hypotheses, the reduction hypotheses on H are checked first:
    the reduced sizes f'(x) = |L(x)| - (d_G(x) - d_H(x)) must be at least
    d_H(x); with slack somewhere, an elimination order certifies H; otherwise
    H must not be a Gallai tree and a brute-force degree-swappability verdict
    at the given cap must not find a counterexample.  verify_rest additionally
    checks that g-H is swappable under the restriction of this very L.
    """
    from .verify import degree_swappable_verdict, slack_order

    h = frozenset(h_vertices)
    if not h or any(not 0 <= x < g.n for x in h):
        raise ParameterError("H must be a nonempty set of graph vertices")
    sub_h, vmap_h = induced_subgraph(g, h)
    if not is_connected(sub_h):
        raise PreconditionError("H is not connected")
    fp = {x: len(lists[x]) - (g.degree(x) - sub_h.degree(i))
          for i, x in enumerate(vmap_h)}
    for i, x in enumerate(vmap_h):
        if fp[x] < sub_h.degree(i):
            raise PreconditionError(f"f'({x}) = {fp[x]} < d_H({x}) = {sub_h.degree(i)}")
    sizes = tuple(fp[x] for x in vmap_h)
    has_slack = any(fp[x] > sub_h.degree(i) for i, x in enumerate(vmap_h))
    order = slack_order(sub_h, sizes) if has_slack else None
    if has_slack and order is None:
        raise KempeError("internal: no elimination order despite slack in a connected H")
    if verify_hypotheses and not has_slack:
        if is_gallai_tree(sub_h).is_gallai_tree:
            raise PreconditionError("H is a Gallai tree, hence not f'-choosable")
        verdict = degree_swappable_verdict(sub_h, cap=cap, max_colorings=max_colorings)
        if verdict.verdict == "counterexample":
            raise PreconditionError("H is not f'-swappable: counterexample assignment "
                                    f"{verdict.counterexample}")
    chk = check_coloring(g, lists, start)
    if not chk:
        raise PreconditionError(f"start is not an L-coloring: {chk}")
    if verify_rest:
        rest = sorted(set(range(g.n)) - h)
        sub_r, vmap_r = induced_subgraph(g, rest)
        rest_lists = tuple(lists[x] for x in vmap_r)
        if not is_L_swappable(sub_r, rest_lists, max_colorings):
            raise PreconditionError("g-H is not swappable under the restricted assignment")

    expected = _replay_partial(g, lists, _restrict(start, h), moves, h)
    if has_slack:
        # Peel H along the elimination order: inserting the vertices in order
        # keeps every insertion's live degree below its list size, so each
        # stage is a single-vertex lift.
        out: list[SwapMove] = []
        current = list(moves)
        absent = h
        for i in [vmap_h[i] for i in order]:
            absent = absent - {i}
            current, _ = _lift_vertex_core(g, lists, i, _restrict(start, absent),
                                           current, absent)
        psi = start
        for mv in current:
            outcome = classify_swap(g, lists, psi, mv)
            if not outcome.valid:
                raise KempeError(f"internal: slack lift produced invalid move {mv}")
            psi = outcome.coloring
        out = current
    else:
        psi = start
        out = []
        for step, mv in enumerate(moves):
            restriction = _restrict(psi, h)
            outcome = classify_swap_partial(g, lists, restriction, mv, h)
            if not outcome.valid:
                raise PreconditionError(f"input move {step} ({mv}) is not L-valid on g-H: "
                                        f"{outcome.reason}")
            extension = find_versatile_extension(g, h, lists, restriction,
                                                 mv.anchor, mv.colors)
            bridge, psi = _bridge_inside(g, h, vmap_h, lists, psi, extension, max_colorings)
            out.extend(bridge)
            norm = normalize_move(g, psi, mv)
            replay = classify_swap(g, lists, psi, norm)
            if not replay.valid:
                raise KempeError(f"internal: lifted replay of step {step} failed: "
                                 f"{replay.reason}")
            psi = replay.coloring
            out.append(norm)
            if _restrict(psi, h) != outcome.coloring:
                raise KempeError(f"internal: lifted step {step} does not restrict correctly")
    if _restrict(psi, h) != expected:
        raise KempeError("internal: lifted sequence does not realize the input trajectory")
    if target is not None:
        tchk = check_coloring(g, lists, target)
        if not tchk:
            raise ParameterError(f"target is not an L-coloring: {tchk}")
        if _restrict(target, h) != _restrict(psi, h):
            raise ParameterError("target disagrees with the lifted sequence outside H")
        bridge, psi = _bridge_inside(g, h, vmap_h, lists, psi, target, max_colorings)
        out.extend(bridge)
    return LiftResult(tuple(out), psi)


def _replay_partial(g: Graph, lists, partial, moves, absent: frozenset[int]):
    """Final coloring of g-absent after the input moves (validating each)."""
    phi = partial
    for step, mv in enumerate(moves):
        outcome = classify_swap_partial(g, lists, phi, mv, absent)
        if not outcome.valid:
            raise PreconditionError(f"input move {step} ({mv}) is not L-valid on the "
                                    f"reduced graph: {outcome.reason}")
        phi = outcome.coloring
    return phi


def _bridge_inside(g: Graph, h: frozenset[int], vmap_h, lists, psi, phi_goal,
                   max_colorings):
    """Kempe swaps confined to H taking psi to phi_goal (equal outside H)."""
    if psi == phi_goal:
        return [], psi
    sub_h, _ = induced_subgraph(g, h)
    reduced = tuple(
        frozenset(lists[x]) - {psi[y] for y in g.adj[x] if y not in h}
        for x in vmap_h)
    for i, s in enumerate(reduced):
        if not s:
            raise KempeError(f"internal: reduced list of vertex {vmap_h[i]} is empty")
    start_h = tuple(psi[x] for x in vmap_h)
    goal_h = tuple(phi_goal[x] for x in vmap_h)
    path = equivalence_path(sub_h, reduced, start_h, goal_h, max_colorings)
    if path is None:
        raise KempeError("H restrictions are not equivalent under the reduced assignment; "
                         "the f'-swappability hypothesis fails on this instance")
    seq = []
    cur = psi
    for mv in path:
        lifted = normalize_move(g, cur, SwapMove(vmap_h[mv.anchor], mv.colors))
        outcome = classify_swap(g, lists, cur, lifted)
        if not outcome.valid:
            raise KempeError(f"internal: bridge move {lifted} invalid on g: {outcome.reason}")
        if any(x not in h for x in outcome.component):
            raise KempeError(f"internal: bridge move {lifted} escaped H")
        cur = outcome.coloring
        seq.append(lifted)
    if cur != phi_goal:
        raise KempeError("internal: bridge did not reach the goal coloring")
    return seq, cur
