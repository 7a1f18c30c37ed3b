"""Exact-rational discharging ledgers for the two structural-lemma rule systems.

Charges start at d(v)-4 per vertex and len(f)-4 per face, plus one pot with
charge 0 per component of the relevant special subgraph (G3 for the first
rule system, G2 for the second).  For a connected plane graph the initial
total is exactly -8.  Rules move charge through an append-only transfer log;
within one rule all transfers are computed from the state before that rule,
and rules apply in sequence.  Everything is a Fraction; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import KempeError, ParameterError, PreconditionError
from .graphs import Graph, connected_components, is_connected
from .planar import PlaneGraph, extract_special_subgraph, trace_faces

Holder = tuple  # ("v", id) | ("f", index) | ("pot", index)


@dataclass
class Transfer:
    source: Holder
    sink: Holder
    amount: Fraction
    rule: str

    def describe(self) -> str:
        return (f"{self.rule}: {_holder_name(self.source)} -> {_holder_name(self.sink)} "
                f"{self.amount}")


def _holder_name(h: Holder) -> str:
    tag, idx = h
    return {"v": "vertex", "f": "face", "pot": "pot"}[tag] + f" {idx}"


@dataclass
class ChargeLedger:
    """Exact charge per holder plus the full transfer log."""

    vertex: list[Fraction]
    face: list[Fraction]
    pot: list[Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    def charge(self, holder: Holder) -> Fraction:
        tag, idx = holder
        return {"v": self.vertex, "f": self.face, "pot": self.pot}[tag][idx]

    def total(self) -> Fraction:
        return sum(self.vertex, Fraction(0)) + sum(self.face, Fraction(0)) \
            + sum(self.pot, Fraction(0))

    def move(self, source: Holder, sink: Holder, amount: Fraction, rule: str) -> None:
        if amount == 0:
            return
        self.transfers.append(Transfer(source, sink, amount, rule))
        self._bucket(source)[source[1]] -= amount
        self._bucket(sink)[sink[1]] += amount

    def _bucket(self, holder: Holder) -> list[Fraction]:
        return {"v": self.vertex, "f": self.face, "pot": self.pot}[holder[0]]


@dataclass(frozen=True)
class DischargeReport:
    variant: str
    ledger: ChargeLedger
    initial: dict
    pots_vertices: tuple[tuple[int, ...], ...]
    negative: tuple[tuple[Holder, Fraction], ...]
    total: Fraction
    rule_totals: tuple[tuple[str, Fraction], ...]
    multiplicity_events: tuple[str, ...]

    def describe(self) -> str:
        """Holder table (initial, per-rule delta, final) plus pot and flag lines."""
        lines = [f"variant={self.variant} total={self.total} "
                 f"pots={len(self.pots_vertices)}"]
        for i, verts in enumerate(self.pots_vertices):
            lines.append(f"pot {i}: component vertices {list(verts)}")
        rules = [rule for rule, _ in self.rule_totals]
        deltas: dict[Holder, dict[str, Fraction]] = {}
        for t in self.ledger.transfers:
            deltas.setdefault(t.source, {}).setdefault(t.rule, Fraction(0))
            deltas[t.source][t.rule] -= t.amount
            deltas.setdefault(t.sink, {}).setdefault(t.rule, Fraction(0))
            deltas[t.sink][t.rule] += t.amount
        for holder, charge in _all_holders(self.ledger):
            start = self.initial[holder]
            moves = " ".join(f"{rule}:{deltas[holder][rule]:+}" for rule in rules
                             if holder in deltas and rule in deltas[holder]
                             and deltas[holder][rule] != 0)
            parts = [f"{_holder_name(holder)}: initial {start}"]
            if moves:
                parts.append(moves)
            parts.append(f"final {charge}")
            lines.append(" | ".join(parts))
        for (holder, charge) in self.negative:
            lines.append(f"NEGATIVE {_holder_name(holder)}: {charge}")
        if not self.negative:
            lines.append("all holders nonnegative")
        for note in self.multiplicity_events:
            lines.append(f"multiplicity: {note}")
        return "\n".join(lines) + "\n"


def run_discharging(pg: PlaneGraph, variant: str) -> DischargeReport:
    """Apply one rule system and return the audited final ledger.

    The report lists every holder that ends negative; the total is asserted
    to stay exactly -8 after every rule (connected input required).
    """
    g = pg.graph
    if not is_connected(g):
        raise PreconditionError("discharging requires a connected plane graph")
    if g.n and g.min_degree() < 2:
        raise PreconditionError(f"discharging needs min degree >= 2, got {g.min_degree()}")
    if variant not in ("lemma1", "lemma2"):
        raise ParameterError(f"variant must be lemma1 or lemma2, got {variant!r}")
    faces = trace_faces(pg)
    sub = extract_special_subgraph(pg, "G3" if variant == "lemma1" else "G2")
    pot_components = [tuple(sub.vertices[x] for x in comp)
                      for comp in connected_components(sub.graph)]
    pot_of = {v: i for i, comp in enumerate(pot_components) for v in comp}

    ledger = ChargeLedger(
        vertex=[Fraction(g.degree(v) - 4) for v in range(g.n)],
        face=[Fraction(f.length - 4) for f in faces],
        pot=[Fraction(0)] * len(pot_components))
    expected_total = ledger.total()
    if expected_total != -8:
        raise KempeError(f"initial charge total is {expected_total}, not -8; "
                         f"embedding or input is broken")

    # Per-vertex face incidences (with multiplicity: one per corner).
    incidence: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for fi, face in enumerate(faces):
        counts: dict[int, int] = {}
        for v in face.vertices():
            counts[v] = counts.get(v, 0) + 1
        for v, c in counts.items():
            incidence[v].append((fi, c))
    events = []
    for v in range(g.n):
        for fi, c in incidence[v]:
            if c > 1:
                events.append(f"vertex {v} meets face {fi} {c} times")

    rule_totals = []

    def close_rule(rule: str) -> None:
        if ledger.total() != expected_total:
            raise KempeError(f"charge not conserved after {rule}: total {ledger.total()}")
        rule_totals.append((rule, ledger.total()))

    if variant == "lemma1":
        _rules_lemma1(g, sub, pot_of, ledger, incidence, faces, close_rule)
    else:
        _rules_lemma2(g, sub, pot_of, ledger, incidence, faces, close_rule)

    negative = tuple((h, c) for h, c in _all_holders(ledger) if c < 0)
    return DischargeReport(variant, ledger, tuple(pot_components), negative,
                           ledger.total(), tuple(rule_totals), tuple(events))


def _all_holders(ledger: ChargeLedger):
    for i, c in enumerate(ledger.vertex):
        yield ("v", i), c
    for i, c in enumerate(ledger.face):
        yield ("f", i), c
    for i, c in enumerate(ledger.pot):
        yield ("pot", i), c


def _rules_lemma1(g: Graph, sub, pot_of, ledger, incidence, faces, close_rule) -> None:
    delta = g.max_degree()
    three = [v for v in range(g.n) if g.degree(v) == 3]
    # R1. A vertex of degree Delta > 3 with a 3-neighbor pays 1/2 into the pot
    # of its G3 component; every 3-vertex draws 1 from its pot.  A degree-3
    # maximum-degree vertex acts only as a taker.
    for v in range(g.n):
        if g.degree(v) == delta and delta > 3 and any(g.degree(w) == 3 for w in g.adj[v]):
            ledger.move(("v", v), ("pot", pot_of[v]), Fraction(1, 2), "R1")
    for v in three:
        ledger.move(("pot", pot_of[v]), ("v", v), Fraction(1), "R1")
    close_rule("R1")
    _rule_spread_five_plus(g, ledger, incidence, "R2")
    close_rule("R2")
    # R3. A 3-vertex on a 4-cycle of G3 pulls 1/2 from each incident 4+-face
    # and forwards it to its pot.
    sub_index = {v: i for i, v in enumerate(sub.vertices)}
    for v in three:
        si = sub_index.get(v)
        if si is None or not _on_four_cycle(sub.graph, si):
            continue
        for fi, count in incidence[v]:
            if faces[fi].length >= 4:
                amount = Fraction(1, 2) * count
                ledger.move(("f", fi), ("v", v), amount, "R3")
                ledger.move(("v", v), ("pot", pot_of[v]), amount, "R3")
    close_rule("R3")


def _rules_lemma2(g: Graph, sub, pot_of, ledger, incidence, faces, close_rule) -> None:
    in_sub = set(sub.vertices)
    g2_edges = {(min(u, v), max(u, v)) for u, v in sub.host_edges()}
    # R1. A 15+-vertex of G2 (it necessarily has a qualifying 2-neighbor)
    # pays 1 into its pot; every 2-vertex of G2 draws 1 from its pot.
    for v in sorted(in_sub):
        if g.degree(v) >= 15:
            ledger.move(("v", v), ("pot", pot_of[v]), Fraction(1), "R1")
    for v in sorted(in_sub):
        if g.degree(v) == 2:
            ledger.move(("pot", pot_of[v]), ("v", v), Fraction(1), "R1")
    close_rule("R1")
    _rule_spread_five_plus(g, ledger, incidence, "R2")
    close_rule("R2")
    for v in range(g.n):
        if g.degree(v) == 3:
            for fi, count in incidence[v]:
                ledger.move(("f", fi), ("v", v), Fraction(1, 3) * count, "R3")
    close_rule("R3")
    # R4. Per incidence: 1/3 from a 3-face, 2/3 from a 4-face whose boundary
    # is a 2-alternating cycle (a cycle of G2), 1 from any other 4+-face.
    alternating = set()
    for fi, face in enumerate(faces):
        if face.length != 4:
            continue
        verts = face.vertices()
        if len(set(verts)) != 4:
            continue
        if all((min(u, v), max(u, v)) in g2_edges for u, v in face.edges):
            alternating.add(fi)
    for v in range(g.n):
        if g.degree(v) != 2:
            continue
        for fi, count in incidence[v]:
            length = faces[fi].length
            if length == 3:
                amount = Fraction(1, 3)
            elif length == 4 and fi in alternating:
                amount = Fraction(2, 3)
            else:
                amount = Fraction(1)
            ledger.move(("f", fi), ("v", v), amount * count, "R4")
    close_rule("R4")
    # R5. Surplus at a 2-vertex of G2 returns to its pot.
    for v in sorted(in_sub):
        if g.degree(v) == 2 and ledger.vertex[v] > 0:
            ledger.move(("v", v), ("pot", pot_of[v]), ledger.vertex[v], "R5")
    close_rule("R5")


def _rule_spread_five_plus(g: Graph, ledger, incidence, rule: str) -> None:
    """Every 5+-vertex splits its remaining charge equally per face incidence."""
    for v in range(g.n):
        d = g.degree(v)
        if d < 5:
            continue
        remaining = ledger.vertex[v]
        share = remaining / d
        for fi, count in incidence[v]:
            ledger.move(("v", v), ("f", fi), share * count, rule)
        if ledger.vertex[v] != 0:
            raise KempeError(f"internal: {rule} left {ledger.vertex[v]} at vertex {v}")


def _on_four_cycle(sub: Graph, v: int) -> bool:
    """Is v on a 4-cycle of the subgraph?  v-x-z-y with x,y distinct neighbors."""
    for i, x in enumerate(sub.adj[v]):
        for y in sub.adj[v][i + 1:]:
            for z in sub.adj[x]:
                if z != v and z in sub.adj[y]:
                    return True
    return False
