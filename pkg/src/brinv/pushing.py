"""Order-reversing pushing maps on chains below a fixed pattern.

Every vertex A of a chain gets a designated one-pair contraction M(A) above
it; the chain is pushed to the greatest lower bound of its designated
contractions over the bottom vertex.  The certificates record that the result
stays above the bottom vertex and involves at most max(4t, 2) boxes for two
colours and max(8t, 2) for three, where t is the chain dimension.  Certificate
failures are preserved verbatim, never discarded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boxes import Box, Pattern, box_key
from .config import DEFAULT_LIMITS, Limits
from .errors import CertificateViolation, NoEdge, PreconditionViolated
from .fragments import (
    BelowSet,
    SimpleContraction,
    below_leq,
    glb_above,
    involved,
    involves,
    locally_maximal,
)
from .gamma import Component, classify, components, gamma, star_connected

EdgeKey = tuple[Box, Box, int]


@dataclass(frozen=True)
class Chain:
    """Strictly ascending below-sets, bottom first, all strictly below the base."""

    base: Pattern
    members: tuple[BelowSet, ...]

    def __post_init__(self):
        if not self.members:
            raise PreconditionViolated("a chain needs at least one vertex")
        for W in self.members:
            if W.base != self.base:
                raise PreconditionViolated("chain vertex over a different base")
            if len(W) >= len(self.base):
                raise PreconditionViolated("chain vertices must lie strictly below the base")
        for lower, upper in zip(self.members, self.members[1:]):
            if len(lower) >= len(upper) or not below_leq(lower, upper):
                raise PreconditionViolated("chain is not strictly ascending")

    @property
    def t(self) -> int:
        return len(self.members) - 1

    @property
    def bottom(self) -> BelowSet:
        return self.members[0]

    def subchain(self, positions) -> "Chain":
        return Chain(self.base, tuple(self.members[p] for p in sorted(positions)))


_EDGE_CACHE: dict = {}


def clear_caches():
    _EDGE_CACHE.clear()


def choose_edge_2v(A: BelowSet, Y: Pattern) -> SimpleContraction:
    """Lexicographically least edge of the glueing graph whose endpoints are
    locally maximal with respect to A."""
    if Y.s != 2:
        raise PreconditionViolated("two-colour edge choice needs s = 2")
    key = ("2v", A, Y)
    hit = _EDGE_CACHE.get(key)
    if hit is not None:
        return hit
    G = gamma(A, Y)
    for e in G.edges:
        i, j, _ = e
        if locally_maximal(A, i) and locally_maximal(A, j):
            z = G.witnesses[e]
            _EDGE_CACHE[key] = z
            return z
    raise NoEdge(f"no locally maximal edge above {A!r}")


def _star_data(A: BelowSet, Y: Pattern, limits: Limits):
    """Star-connected components of the glueing graph with their shapes."""
    G = gamma(A, Y)
    data = []
    for comp in components(G):
        if not comp.edges:
            continue
        witness = star_connected(A, Y, comp, limits=limits)
        if witness is None:
            continue
        data.append((comp, classify(comp)))
    return G, data


def _edge_sort(e: EdgeKey):
    return (e[2], box_key(e[0]), box_key(e[1]))


def choose_edge_3v(
    A: BelowSet, Y: Pattern, limits: Limits = DEFAULT_LIMITS
) -> SimpleContraction:
    z, _ = _choose_edge_3v_full(A, Y, limits)
    return z


def _choose_edge_3v_full(A: BelowSet, Y: Pattern, limits: Limits = DEFAULT_LIMITS):
    """Designated edge for three colours: middle edge of an open book of
    smallest middle colour, else a separate star-connected edge of smallest
    colour, else the least edge of any star-connected component."""
    if Y.s != 3:
        raise PreconditionViolated("three-colour edge choice needs s = 3")
    key = ("3v", A, Y)
    hit = _EDGE_CACHE.get(key)
    if hit is not None:
        return hit
    G, data = _star_data(A, Y, limits)
    result = None
    books = [
        (shape.middle_colour, box_key(shape.middle_edge[0]), comp, shape)
        for comp, shape in data
        if shape.tag == "OpenBook"
    ]
    if books:
        books.sort(key=lambda x: x[:2])
        _, _, comp, shape = books[0]
        e = (shape.middle_edge[0], shape.middle_edge[1], shape.middle_colour)
        result = (G.witnesses[e], comp)
    if result is None:
        singles = [comp for comp, shape in data if shape.tag == "Edge"]
        if singles:
            e = min((c.edges[0] for c in singles), key=_edge_sort)
            comp = next(c for c in singles if c.edges[0] == e)
            result = (G.witnesses[e], comp)
    if result is None:
        edges = [(e, comp) for comp, _ in data for e in comp.edges]
        if edges:
            e, comp = min(edges, key=lambda ec: _edge_sort(ec[0]))
            result = (G.witnesses[e], comp)
    if result is None:
        raise NoEdge(f"no star-connected component above {A!r}")
    _EDGE_CACHE[key] = result
    return result


def designated_edge(A: BelowSet, Y: Pattern, limits: Limits = DEFAULT_LIMITS) -> SimpleContraction:
    if Y.s == 2:
        return choose_edge_2v(A, Y)
    return choose_edge_3v(A, Y, limits)


def _edge_key(z: SimpleContraction) -> EdgeKey:
    i, j = sorted(z.pair, key=box_key)
    return (i, j, z.colour)


@dataclass(frozen=True)
class PushPart:
    """One block of the three-colour partition: the base position, the edges
    pushed in that block, and the involvement count of its partial bound."""

    position: int
    edge_keys: tuple[EdgeKey, ...]
    involves: int
    shape: str


@dataclass(frozen=True)
class PushCertificate:
    s: int
    t: int
    involves: int
    bound: int
    ok: bool
    edge_keys: tuple[EdgeKey, ...]
    parts: tuple[PushPart, ...] | None


@dataclass(frozen=True)
class PushResult:
    value: BelowSet
    certificate: PushCertificate


def push_chain(chain: Chain, limits: Limits = DEFAULT_LIMITS) -> PushResult:
    """Push a chain to glb of its designated edges over the bottom vertex and
    certify the cardinality bounds."""
    Y = chain.base
    if Y.s not in (2, 3):
        raise PreconditionViolated("pushing is defined for two and three colours")
    t = chain.t
    bottom = chain.bottom
    edges: list[SimpleContraction] = []
    comps: list[Component | None] = []
    for W in chain.members:
        if Y.s == 2:
            edges.append(choose_edge_2v(W, Y))
            comps.append(None)
        else:
            z, comp = _choose_edge_3v_full(W, Y, limits)
            edges.append(z)
            comps.append(comp)
    M = glb_above(bottom, edges)
    bound = max(4 * t, 2) if Y.s == 2 else max(8 * t, 2)
    inv = involves(M)
    parts = None
    if Y.s == 3:
        parts = _partition_parts(chain, edges, comps, M)
    if not below_leq(bottom, M) or inv > bound:
        raise CertificateViolation(
            f"push certificate failed: involves {inv} > bound {bound}",
            instance={"chain": chain, "edges": tuple(edges), "value": M},
        )
    cert = PushCertificate(
        s=Y.s,
        t=t,
        involves=inv,
        bound=bound,
        ok=True,
        edge_keys=tuple(_edge_key(z) for z in edges),
        parts=parts,
    )
    return PushResult(M, cert)


def _partition_parts(chain, edges, comps, M) -> tuple[PushPart, ...]:
    """Greedy partition of the designated edges: repeatedly take the lowest
    vertex whose edge is unassigned and absorb every edge lying in its
    star-connected component.  Checks that the blocks produce pairwise
    disjoint partial bounds inside their components which recombine to the
    push value."""
    n = len(chain.members)
    keys = [_edge_key(z) for z in edges]
    assigned: set[int] = set()
    taken_edges: set[EdgeKey] = set()
    seen_boxes: set[Box] = set()
    parts = []
    blocks: list[BelowSet] = []
    for p in range(n):
        if p in assigned:
            continue
        comp = comps[p]
        comp_edges = set(comp.edges)
        block = [q for q in range(n) if q not in assigned and keys[q] in comp_edges]
        overlap = {keys[q] for q in block} & taken_edges
        if p not in block or overlap:
            raise CertificateViolation(
                "partition blocks are not disjoint",
                instance={"chain": chain, "edges": tuple(edges)},
            )
        assigned.update(block)
        taken_edges.update(keys[q] for q in block)
        block_edges = {edges[q].result: edges[q] for q in block}
        N = glb_above(chain.members[p], list(block_edges.values()))
        shape = classify(comp).tag
        inv_set = involved(N)
        if not inv_set <= set(comp.vertices) or len(inv_set) > 8:
            raise CertificateViolation(
                f"partial bound leaves its component: {sorted(inv_set)}",
                instance={"chain": chain, "position": p, "value": N},
            )
        if shape == "OpenBook" and len(inv_set) > 6:
            raise CertificateViolation(
                "open book block involves more than 6 boxes",
                instance={"chain": chain, "position": p, "value": N},
            )
        if seen_boxes & inv_set:
            raise CertificateViolation(
                "partial bounds are not pairwise disjoint",
                instance={"chain": chain, "position": p, "value": N},
            )
        seen_boxes |= inv_set
        blocks.append(N)
        parts.append(
            PushPart(p, tuple(sorted({keys[q] for q in block}, key=_edge_sort)), len(inv_set), shape)
        )
    if glb_above(chain.bottom, blocks) != M:
        raise CertificateViolation(
            "partial bounds do not recombine to the push value",
            instance={"chain": chain, "parts": tuple(parts), "value": M},
        )
    return tuple(parts)


def check_order_reversing(sigma: Chain, tau: Chain, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Sub-chains push to larger values."""
    if not set(tau.members) <= set(sigma.members):
        raise PreconditionViolated("second chain is not a sub-chain of the first")
    m_sigma = push_chain(sigma, limits).value
    m_tau = push_chain(tau, limits).value
    return below_leq(m_sigma, m_tau)
