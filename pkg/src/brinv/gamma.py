"""The coloured glueing graph on the boxes of Y over a below-set A.

Vertices are the boxes of Y; there is an edge of colour c between i and j
whenever some one-pair contraction of exactly {i, j} in colour c lies (weakly)
above A.  Components of this graph drive the edge choices of the pushing maps;
star-connected components classify, up to recolouring, as an edge, a square,
an open book or a cube.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .boxes import Box, Pattern, box_key
from .config import DEFAULT_LIMITS, Limits
from .errors import NotBoxWorld, StarSearchBudgetExceeded
from .fragments import (
    BelowSet,
    SimpleContraction,
    leq_contraction,
    locally_maximal,
    simple_contraction,
    up_interval,
    y_as_belowset,
)

Edge = tuple[Box, Box, int]  # endpoints in canonical order, then colour


@dataclass(frozen=True)
class Component:
    vertices: tuple[Box, ...]
    edges: tuple[Edge, ...]


class ColouredGraph:
    __slots__ = ("base", "target", "vertices", "edges", "witnesses")

    def __init__(self, base: BelowSet, target: Pattern, edges, witnesses):
        self.base = base
        self.target = target
        self.vertices = target.boxes
        self.edges = tuple(sorted(edges, key=lambda e: (e[2], box_key(e[0]), box_key(e[1]))))
        self.witnesses = witnesses  # edge -> SimpleContraction

    def __repr__(self):
        return f"Gamma({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


def gamma(A: BelowSet, Y: Pattern) -> ColouredGraph:
    """Build the graph; both contraction orientations are tried as witnesses."""
    edges = []
    witnesses: dict[Edge, SimpleContraction] = {}
    for f in A.frags:
        if len(f.leaves) < 2:
            continue
        for i, j in combinations(sorted(f.leaves, key=box_key), 2):
            for c in range(Y.s):
                for x, y in ((i, j), (j, i)):
                    z = simple_contraction(Y, x, y, c)
                    if leq_contraction(A, z):
                        e = (i, j, c)
                        edges.append(e)
                        witnesses[e] = z
                        break
    return ColouredGraph(A, Y, edges, witnesses)


def components(G: ColouredGraph) -> tuple[Component, ...]:
    parent = {v: v for v in G.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j, _ in G.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[Box, list[Box]] = {}
    for v in G.vertices:
        groups.setdefault(find(v), []).append(v)
    out = []
    for members in groups.values():
        vs = tuple(sorted(members, key=box_key))
        vset = set(vs)
        es = tuple(e for e in G.edges if e[0] in vset)
        out.append(Component(vs, es))
    return tuple(sorted(out, key=lambda c: box_key(c.vertices[0])))


def star_connected(
    A: BelowSet,
    Y: Pattern,
    comp: Component,
    exhaustive: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    budget: int | None = None,
) -> BelowSet | None:
    """A witness C with A <= C < Y making every vertex of the component locally
    maximal, or None.

    The default search checks A and then the one-pair contractions above A:
    local maximality only improves going up, so a witness exists iff one of
    these is a witness.  ``exhaustive`` scans the whole interval instead and is
    used to cross-check that shortcut.
    """
    def is_witness(C: BelowSet) -> bool:
        return all(locally_maximal(C, v) for v in comp.vertices)

    if is_witness(A):
        return A
    if not exhaustive:
        G = gamma(A, Y)  # coatoms above A are exactly the edge witnesses
        for e in G.edges:
            C = G.witnesses[e].result
            if len(C) < len(Y) and is_witness(C):
                return C
        return None
    cap = budget if budget is not None else limits.star_budget
    try:
        states = up_interval(A, (y_as_belowset(Y),), budget=cap)
    except Exception as exc:  # surface the budget loudly, never guess
        raise StarSearchBudgetExceeded(str(exc)) from exc
    for C in states:
        if len(C) == len(Y):
            continue
        if is_witness(C):
            return C
    return None


@dataclass(frozen=True)
class ComponentShape:
    tag: str  # Edge | Square | OpenBook | Cube | Other
    middle_edge: tuple[Box, Box] | None = None
    middle_colour: int | None = None


def _degrees(comp: Component) -> dict[Box, int]:
    deg = {v: 0 for v in comp.vertices}
    for i, j, _ in comp.edges:
        deg[i] += 1
        deg[j] += 1
    return deg


def _colour_classes(comp: Component) -> dict[int, list[Edge]]:
    out: dict[int, list[Edge]] = {}
    for e in comp.edges:
        out.setdefault(e[2], []).append(e)
    return out


def _is_matching(edges) -> bool:
    seen = set()
    for i, j, _ in edges:
        if i in seen or j in seen:
            return False
        seen.add(i)
        seen.add(j)
    return True


def _square_on(vertices, edges) -> bool:
    """Four vertices, four edges in two colours, opposite sides same colour."""
    if len(vertices) != 4 or len(edges) != 4:
        return False
    cls: dict[int, list[Edge]] = {}
    for e in edges:
        cls.setdefault(e[2], []).append(e)
    if len(cls) != 2 or any(len(v) != 2 for v in cls.values()):
        return False
    if any(not _is_matching(v) for v in cls.values()):
        return False
    deg: dict[Box, int] = {}
    for i, j, _ in edges:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    return set(deg) == set(vertices) and all(d == 2 for d in deg.values())


def classify(comp: Component) -> ComponentShape:
    """Shape of a connected component, up to renaming the colours."""
    nv, ne = len(comp.vertices), len(comp.edges)
    if nv == 2 and ne == 1:
        return ComponentShape("Edge")
    if nv == 4 and ne == 4 and _square_on(comp.vertices, comp.edges):
        return ComponentShape("Square")
    if nv == 6 and ne == 7:
        cls = _colour_classes(comp)
        sizes = sorted(len(v) for v in cls.values())
        if sizes == [2, 2, 3]:
            mid_colour = next(c for c, v in cls.items() if len(v) == 3)
            if all(_is_matching(v) for v in cls.values()):
                deg = _degrees(comp)
                spine = [
                    e for e in cls[mid_colour] if deg[e[0]] == 3 and deg[e[1]] == 3
                ]
                if len(spine) == 1:
                    mid = spine[0]
                    ok = True
                    for c, side in cls.items():
                        if c == mid_colour:
                            continue
                        quad = set()
                        for i, j, _ in side:
                            quad.add(i)
                            quad.add(j)
                        sq_edges = [e for e in comp.edges if e[0] in quad and e[1] in quad]
                        if not _square_on(tuple(sorted(quad, key=box_key)), sq_edges):
                            ok = False
                    if ok:
                        return ComponentShape("OpenBook", (mid[0], mid[1]), mid_colour)
    if nv == 8 and ne == 12:
        cls = _colour_classes(comp)
        if len(cls) == 3 and all(len(v) == 4 and _is_matching(v) for v in cls.values()):
            deg = _degrees(comp)
            if all(d == 3 for d in deg.values()):
                # any two colour classes must close into two disjoint squares
                cols = sorted(cls)
                ok = True
                for a in range(3):
                    for b in range(a + 1, 3):
                        es = cls[cols[a]] + cls[cols[b]]
                        adj: dict[Box, list[Box]] = {}
                        for i, j, _ in es:
                            adj.setdefault(i, []).append(j)
                            adj.setdefault(j, []).append(i)
                        if any(len(v) != 2 for v in adj.values()):
                            ok = False
                            continue
                        # walk the cycles: all must have length 4
                        seen: set[Box] = set()
                        for start in adj:
                            if start in seen:
                                continue
                            cyc = [start]
                            prev, cur = None, start
                            while True:
                                nxt = [w for w in adj[cur] if w != prev]
                                if not nxt:
                                    ok = False
                                    break
                                prev, cur = cur, nxt[0]
                                if cur == start:
                                    break
                                cyc.append(cur)
                                if len(cyc) > 4:
                                    break
                            seen |= set(cyc)
                            if len(cyc) != 4:
                                ok = False
                if ok:
                    return ComponentShape("Cube")
    return ComponentShape("Other")


def enveloping_stack(comp: Component, Y: Pattern) -> tuple[Box, ...]:
    """Smallest product of per-colour interval pairs whose union is a box and
    which contains the component; at most 8 boxes for s = 3."""
    if Y.s != 3:
        raise NotBoxWorld("stacks are defined for three colours")
    per_colour: list[list[str]] = []
    for c in range(3):
        addrs = sorted({v[c] for v in comp.vertices})
        if len(addrs) == 1:
            per_colour.append(addrs)
        elif len(addrs) == 2:
            a, b = addrs
            if len(a) != len(b) or not a or a[:-1] != b[:-1]:
                raise NotBoxWorld(f"colour {c} intervals are not siblings: {addrs}")
            per_colour.append(addrs)
        else:
            raise NotBoxWorld(f"colour {c} has {len(addrs)} distinct intervals")
    out = []
    for x in per_colour[0]:
        for y in per_colour[1]:
            for z in per_colour[2]:
                out.append((x, y, z))
    return tuple(sorted(out, key=box_key))
