"""Elements and sets lying below a fixed pattern Y in the expansion order.

An element below Y is a *fragment*: a hierarchical partition of a formal unit
s-cube (the frame) whose cells carry pairwise disjoint box labels, each label
tiled hierarchically by the Y-boxes it covers.  Expanding the fragment along
its frame and then along each label recovers exactly its Y-boxes (its leaves).
Contracting two Y-boxes that are not oriented siblings produces an exotic
fragment that is not itself a box; contracting oriented siblings collapses to
the parent box.

Fragments are kept in canonical, fully merged form: whenever two cells are the
c-halves of a common formal box and their labels are the c-halves of a common
box in the same orientation, the pair is replaced by the parent cell carrying
the parent label.  Canonical-form identity is the implemented equality of
elements; the merge laws make it sound, and the ``fragment_canonical`` suite
probes completeness by bounded rewriting.

A *below-set* is a set of fragments whose leaves partition the boxes of Y: the
model of one admissible set strictly below Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .boxes import (
    Box,
    Pattern,
    _hier,
    box_contains,
    box_depth,
    box_key,
    box_split,
    root_box,
    siblings,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import (
    BaseMismatch,
    BudgetExceeded,
    InvariantViolation,
    NonHierarchicalFrame,
    NotDisjoint,
    PreconditionViolated,
)

Cell = Box  # formal addresses share the representation of boxes


class Fragment:
    """One element below Y: canonical cells ``(formal address, box label)`` plus
    the set of Y-boxes it was contracted from."""

    __slots__ = ("cells", "leaves", "_hash", "_key")

    def __init__(self, cells: tuple[tuple[Cell, Box], ...], leaves: frozenset[Box]):
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "leaves", leaves)
        object.__setattr__(
            self, "_key", tuple((box_key(c), box_key(l)) for c, l in cells)
        )
        object.__setattr__(self, "_hash", hash(self._key))

    def __setattr__(self, *a):
        raise AttributeError("Fragment is immutable")

    def __eq__(self, other):
        return isinstance(other, Fragment) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        def fmt(b):
            return ":".join(a or "e" for a in b)

        return "Frag{" + " ".join(f"{fmt(c)}={fmt(l)}" for c, l in self.cells) + "}"

    @property
    def is_box(self) -> bool:
        return len(self.cells) == 1

    @property
    def is_trivial(self) -> bool:
        return len(self.leaves) == 1

    def as_box(self) -> Box | None:
        return self.cells[0][1] if len(self.cells) == 1 else None


def _sorted_cells(cells: dict[Cell, Box]) -> tuple[tuple[Cell, Box], ...]:
    return tuple(sorted(cells.items(), key=lambda cl: box_key(cl[0])))


def merge_cells(cells: dict[Cell, Box], order=None) -> dict[Cell, Box]:
    """Apply the sibling-merge rule to a fixpoint.  ``order`` may reorder the
    candidate scan; the result is the same either way (asserted by tests)."""
    s = len(next(iter(cells)))
    cells = dict(cells)
    while True:
        candidates = sorted(cells, key=box_key)
        if order is not None:
            candidates = order(candidates)
        merged = False
        for u in candidates:
            if u not in cells:
                continue
            lu = cells[u]
            for c in range(s):
                a = u[c]
                if not a or a[-1] != "0":
                    continue
                la = lu[c]
                if not la or la[-1] != "0":
                    continue
                v = u[:c] + (a[:-1] + "1",) + u[c + 1 :]
                lv = cells.get(v)
                if lv is None:
                    continue
                if lv[c] != la[:-1] + "1":
                    continue
                if any(lv[d] != lu[d] for d in range(s) if d != c):
                    continue
                del cells[u]
                del cells[v]
                cells[u[:c] + (a[:-1],) + u[c + 1 :]] = lu[:c] + (la[:-1],) + lu[c + 1 :]
                merged = True
                break
            if merged:
                break
        if not merged:
            return cells


def fragment_from_leaf_cells(cells: dict[Cell, Box], order=None) -> Fragment:
    """Build a fragment from a raw labelling of frame cells by distinct leaf
    boxes, then canonicalize."""
    s = len(next(iter(cells)))
    frame_boxes = tuple(cells.keys())
    if not _frame_ok(frame_boxes, s):
        raise NonHierarchicalFrame(f"cells {frame_boxes} do not form a hierarchical frame")
    labels = list(cells.values())
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            from .boxes import boxes_disjoint

            if not boxes_disjoint(labels[i], labels[j]):
                raise InvariantViolation("fragment labels overlap")
    leaves = frozenset(labels)
    return Fragment(_sorted_cells(merge_cells(cells, order)), leaves)


def _frame_ok(frame_boxes: tuple[Cell, ...], s: int) -> bool:
    depth_max = max(box_depth(b) for b in frame_boxes)
    if sum(1 << (depth_max - box_depth(b)) for b in frame_boxes) != 1 << depth_max:
        return False
    n = len(frame_boxes)
    from .boxes import box_meet

    for i in range(n):
        for j in range(i + 1, n):
            if box_meet(frame_boxes[i], frame_boxes[j]) is not None:
                return False
    return _hier(frame_boxes, root_box(s), s)


def trivial_fragment(box: Box) -> Fragment:
    s = len(box)
    return Fragment(((root_box(s), box),), frozenset((box,)))


def box_fragment(box: Box, leaves: Iterable[Box]) -> Fragment:
    return Fragment(((len(box) * ("",), box),), frozenset(leaves))


def pair_fragment(i: Box, j: Box, colour: int) -> Fragment:
    """Contraction of the ordered pair (i, j) in ``colour``: i goes to the low
    half of the frame.  Collapses to the parent box when i, j are oriented
    siblings."""
    s = len(i)
    lo = root_box(s)[:colour] + ("0",) + root_box(s)[colour + 1 :]
    hi = root_box(s)[:colour] + ("1",) + root_box(s)[colour + 1 :]
    return fragment_from_leaf_cells({lo: i, hi: j})


class BelowSet:
    """A set of fragments whose leaves partition the boxes of the base pattern."""

    __slots__ = ("base", "frags", "_hash", "_by_leaf")

    def __init__(self, base: Pattern, frags: Iterable[Fragment], _trusted=False):
        fr = tuple(sorted(frags, key=lambda f: f._key))
        if not _trusted:
            seen: set[Box] = set()
            for f in fr:
                if seen & f.leaves:
                    raise InvariantViolation("fragment leaf sets overlap")
                seen |= f.leaves
            if seen != set(base.boxes):
                raise InvariantViolation("fragment leaves do not partition the base")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "frags", fr)
        object.__setattr__(self, "_hash", hash((base, fr)))
        object.__setattr__(self, "_by_leaf", None)

    def __setattr__(self, *a):
        raise AttributeError("BelowSet is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BelowSet)
            and self.base == other.base
            and self.frags == other.frags
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.frags)

    def __repr__(self):
        return f"BelowSet[{len(self.frags)} over {len(self.base)}]" + repr(list(self.frags))

    def frag_of_leaf(self, leaf: Box) -> Fragment:
        by = self._by_leaf
        if by is None:
            by = {l: f for f in self.frags for l in f.leaves}
            object.__setattr__(self, "_by_leaf", by)
        return by[leaf]

    def replace(self, old: Sequence[Fragment], new: Sequence[Fragment]) -> "BelowSet":
        rest = [f for f in self.frags if f not in set(old)]
        return BelowSet(self.base, rest + list(new), _trusted=True)

    def key(self):
        return (self.base.key(), tuple(f._key for f in self.frags))


def y_as_belowset(Y: Pattern) -> BelowSet:
    return BelowSet(Y, (trivial_fragment(b) for b in Y.boxes), _trusted=True)


def belowset_from_pattern(Y: Pattern, P: Pattern) -> BelowSet:
    """View a pattern P <= Y as a below-set of box fragments."""
    frags = []
    for m in P.boxes:
        inside = tuple(b for b in Y.boxes if box_contains(m, b))
        if not inside or not _hier(inside, m, Y.s):
            raise PreconditionViolated(f"{m} is not refined hierarchically by the base")
        frags.append(box_fragment(m, inside))
    return BelowSet(Y, frags)


def belowset_to_pattern(W: BelowSet) -> Pattern | None:
    """The underlying pattern when every fragment is a box, else None."""
    boxes = []
    for f in W.frags:
        b = f.as_box()
        if b is None:
            return None
        boxes.append(b)
    return Pattern(W.base.s, boxes, _trusted=True)


@dataclass(frozen=True)
class SimpleContraction:
    """One-step contraction of Y replacing the ordered pair (i, j) by a single
    element; ``result`` has |Y| - 1 fragments."""

    base: Pattern
    pair: tuple[Box, Box]
    colour: int
    result: BelowSet

    @property
    def fragment(self) -> Fragment:
        return self.result.frag_of_leaf(self.pair[0])

    def key(self):
        return (self.colour, box_key(self.pair[0]), box_key(self.pair[1]))


def simple_contraction(Y: Pattern, i: Box, j: Box, colour: int) -> SimpleContraction:
    if i not in Y or j not in Y or i == j:
        raise PreconditionViolated(f"{i}, {j} must be distinct boxes of the base")
    frag = pair_fragment(i, j, colour)
    rest = (trivial_fragment(b) for b in Y.boxes if b != i and b != j)
    result = BelowSet(Y, list(rest) + [frag], _trusted=True)
    assert len(result) == len(Y) - 1
    return SimpleContraction(Y, (i, j), colour, result)


def all_simple_contractions(Y: Pattern) -> list[SimpleContraction]:
    """Every simple contraction of Y: both orders, all colours; deduplicated
    (oriented sibling pairs merge to the same box either way only for distinct
    pairs, so duplicates cannot occur, but we deduplicate defensively)."""
    out = {}
    for i in Y.boxes:
        for j in Y.boxes:
            if i == j:
                continue
            for c in range(Y.s):
                z = simple_contraction(Y, i, j, c)
                out.setdefault(z.result, z)
    return sorted(out.values(), key=lambda z: z.key())


# fragment splitting

_CUTS_MEMO: dict = {}
_SPLIT_MEMO: dict = {}


def free_cuts(f: Fragment) -> list[int]:
    """Colours in which the fragment splits into two halves that stay below
    the base.

    A cell whose address in the cut colour is nonempty falls on one side.  A
    cell spanning the cut must carry a label box that itself splits there:
    every leaf under it extends the label in that colour and both half boxes
    are tiled hierarchically by their leaves (the commutativity of cuts in
    different colours makes slicing through such a label a valid expansion).
    """
    hit = _CUTS_MEMO.get(f)
    if hit is not None:
        return hit
    s = len(f.cells[0][0])
    cuts = []
    for c in range(s):
        ok = True
        for cell, m in f.cells:
            if cell[c]:
                continue
            k = len(m[c])
            under = [l for l in f.leaves if box_contains(m, l)]
            if any(len(l[c]) <= k for l in under):
                ok = False
                break
            lo, hi = box_split(m, c)
            los = tuple(l for l in under if l[c][k] == "0")
            his = tuple(l for l in under if l[c][k] == "1")
            if not (_hier(los, lo, s) and _hier(his, hi, s)):
                ok = False
                break
        if ok:
            cuts.append(c)
    _CUTS_MEMO[f] = cuts
    return cuts


def split_fragment(f: Fragment, colour: int) -> tuple[Fragment, Fragment]:
    """Split at a free cut.  Cells on one side keep their labels with the
    leading bit stripped; spanning cells are sliced through their label box.
    The halves are re-canonicalized (slicing can expose new merges)."""
    key = (f, colour)
    hit = _SPLIT_MEMO.get(key)
    if hit is not None:
        return hit
    locells, hicells = {}, {}
    for cell, label in f.cells:
        a = cell[colour]
        if a:
            stripped = cell[:colour] + (a[1:],) + cell[colour + 1 :]
            (locells if a[0] == "0" else hicells)[stripped] = label
        else:
            lo, hi = box_split(label, colour)
            locells[cell] = lo
            hicells[cell] = hi
    lol = frozenset(
        l for l in f.leaves if any(box_contains(lab, l) for lab in locells.values())
    )
    out = (
        Fragment(_sorted_cells(merge_cells(locells)), lol),
        Fragment(_sorted_cells(merge_cells(hicells)), f.leaves - lol),
    )
    _SPLIT_MEMO[key] = out
    return out


def expansions_of(W: BelowSet) -> list[BelowSet]:
    """All one-step expansions of W that stay below the base pattern."""
    out = []
    for f in W.frags:
        for c in free_cuts(f):
            lo, hi = split_fragment(f, c)
            out.append(W.replace((f,), (lo, hi)))
    uniq = {w: None for w in out}
    return sorted(uniq, key=lambda w: w.key())


# the order

_SPLITS_MEMO: dict = {}
_ISOLATES_MEMO: dict = {}


def clear_caches():
    _SPLITS_MEMO.clear()
    _ISOLATES_MEMO.clear()


def fragment_splits_into(f: Fragment, parts: tuple[Fragment, ...]) -> bool:
    """True iff expanding f can produce exactly the given parts."""
    if len(parts) == 1:
        return f == parts[0]
    key = (f, parts)
    hit = _SPLITS_MEMO.get(key)
    if hit is not None:
        return hit
    res = False
    for c in free_cuts(f):
        lo, hi = split_fragment(f, c)
        plo, phi = [], []
        ok = True
        for p in parts:
            if p.leaves <= lo.leaves:
                plo.append(p)
            elif p.leaves <= hi.leaves:
                phi.append(p)
            else:
                ok = False
                break
        if ok and fragment_splits_into(lo, tuple(plo)) and fragment_splits_into(hi, tuple(phi)):
            res = True
            break
    _SPLITS_MEMO[key] = res
    return res


def fragment_isolates(f: Fragment, g: Fragment) -> bool:
    """True iff f splits into g plus trivial leaves: the workhorse for testing
    whether a one-pair contraction lies above a below-set."""
    if f == g:
        return True
    if not g.leaves < f.leaves:
        return False
    key = (f, g)
    hit = _ISOLATES_MEMO.get(key)
    if hit is not None:
        return hit
    res = False
    for c in free_cuts(f):
        lo, hi = split_fragment(f, c)
        if g.leaves <= lo.leaves:
            res = fragment_isolates(lo, g)
        elif g.leaves <= hi.leaves:
            res = fragment_isolates(hi, g)
        if res:
            break
    _ISOLATES_MEMO[key] = res
    return res


def below_leq(W1: BelowSet, W2: BelowSet) -> bool:
    """The expansion order restricted below the base: W1 <= W2 iff W2 refines W1."""
    if W1.base != W2.base:
        raise BaseMismatch("below-sets over different base patterns")
    if W1 is W2 or W1 == W2:
        return True
    groups: dict[Fragment, list[Fragment]] = {}
    for g in W2.frags:
        f = W1.frag_of_leaf(next(iter(g.leaves)))
        if not g.leaves <= f.leaves:
            return False
        groups.setdefault(f, []).append(g)
    for f, parts in groups.items():
        if len(parts) == 1:
            if parts[0] != f:
                return False
            continue
        if not fragment_splits_into(f, tuple(sorted(parts, key=lambda p: p._key))):
            return False
    return True


def leq_contraction(W: BelowSet, Z: SimpleContraction) -> bool:
    """Fast path for W <= Z when Z is a one-pair contraction of the base."""
    i, j = Z.pair
    f = W.frag_of_leaf(i)
    if j not in f.leaves:
        return False
    g = Z.fragment
    if f.leaves == g.leaves:
        return f == g
    return fragment_isolates(f, g)


# greatest lower bounds above a base

def _as_belowset(x) -> BelowSet:
    return x.result if isinstance(x, SimpleContraction) else x


def glb_above(A: BelowSet, omegas: Iterable, order=None) -> BelowSet:
    """Greedy climb from A to the greatest element below every member of
    ``omegas``.  The result does not depend on the climb order."""
    ws = []
    for B in omegas:
        B = _as_belowset(B)
        if B not in ws:
            ws.append(B)
    if not ws:
        raise PreconditionViolated("glb needs at least one upper bound")
    for B in ws:
        if not below_leq(A, B):
            raise PreconditionViolated("base is not below every upper bound")
    M = A
    while True:
        candidates = expansions_of(M)
        if order is not None:
            candidates = order(candidates)
        for W in candidates:
            if all(below_leq(W, B) for B in ws):
                M = W
                break
        else:
            return M


def up_interval(
    A: BelowSet,
    uppers: Iterable = (),
    limits: Limits = DEFAULT_LIMITS,
    budget: int | None = None,
) -> list[BelowSet]:
    """Everything between A and the given upper bounds: BFS over expansions,
    pruned by the order (which is transitive, so pruning is exact)."""
    ws = [_as_belowset(B) for B in uppers]
    cap = budget if budget is not None else limits.interval_budget
    seen = {A}
    frontier = [A]
    while frontier:
        nxt = []
        for W in frontier:
            for W2 in expansions_of(W):
                if W2 in seen:
                    continue
                if all(below_leq(W2, B) for B in ws):
                    seen.add(W2)
                    nxt.append(W2)
                    if len(seen) > cap:
                        raise BudgetExceeded(
                            f"interval enumeration exceeded {cap}", explored=len(seen)
                        )
        frontier = nxt
    return sorted(seen, key=lambda w: (len(w), w.key()))


def oracle_glb_above(A: BelowSet, omegas: Iterable, limits: Limits = DEFAULT_LIMITS) -> BelowSet:
    """Brute-force greatest lower bound: enumerate the whole interval and take
    its maximum, checking it dominates everything found."""
    states = up_interval(A, omegas, limits)
    top = max(states, key=lambda w: (len(w), w.key()))
    for W in states:
        if not below_leq(W, top):
            raise InvariantViolation("interval has no greatest element")
    return top


def down_closure(
    top: BelowSet,
    box_only: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    budget: int | None = None,
    include_top: bool = True,
) -> list[BelowSet]:
    """Everything below ``top``: BFS over one-pair contractions of fragments.
    With ``box_only`` only oriented sibling merges of box fragments are taken."""
    cap = budget if budget is not None else limits.interval_budget
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for W in frontier:
            for W2 in _contraction_moves(W, box_only):
                if W2 not in seen:
                    seen.add(W2)
                    nxt.append(W2)
                    if len(seen) > cap:
                        raise BudgetExceeded(
                            f"down-closure exceeded {cap}", explored=len(seen)
                        )
        frontier = nxt
    out = sorted(seen, key=lambda w: (len(w), w.key()))
    if not include_top:
        out = [w for w in out if w != top]
    return out


def _contraction_moves(W: BelowSet, box_only: bool):
    s = W.base.s
    n = len(W.frags)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            fa, fb = W.frags[a], W.frags[b]
            if box_only:
                ba, bb = fa.as_box(), fb.as_box()
                if ba is None or bb is None:
                    continue
                for c in range(s):
                    if siblings(ba, bb, c):
                        merged = box_fragment(ba[:c] + (ba[c][:-1],) + ba[c + 1 :], fa.leaves | fb.leaves)
                        yield W.replace((fa, fb), (merged,))
                continue
            for c in range(s):
                yield W.replace((fa, fb), (join_fragments(fa, fb, c),))


def join_fragments(fa: Fragment, fb: Fragment, colour: int) -> Fragment:
    """Contract the ordered pair (fa, fb) in ``colour`` into one fragment."""
    cells: dict[Cell, Box] = {}
    for cell, label in fa.cells:
        cells[cell[:colour] + ("0" + cell[colour],) + cell[colour + 1 :]] = label
    for cell, label in fb.cells:
        cells[cell[:colour] + ("1" + cell[colour],) + cell[colour + 1 :]] = label
    return Fragment(_sorted_cells(merge_cells(cells)), fa.leaves | fb.leaves)


def gglb(Y: Pattern, parts: Iterable) -> BelowSet:
    """Perform pairwise disjoint contractions all at once.  The involved boxes
    of the result are exactly the union of the involved boxes of the parts."""
    ws = [_as_belowset(p) for p in parts]
    taken: set[Box] = set()
    nontrivial: list[Fragment] = []
    total = 0
    for w in ws:
        if w.base != Y:
            raise BaseMismatch("contraction over a different base")
        inv = involved(w)
        if taken & inv:
            raise NotDisjoint("contractions involve a common box")
        taken |= inv
        total += len(inv)
        nontrivial.extend(f for f in w.frags if not f.is_trivial)
    rest = (trivial_fragment(b) for b in Y.boxes if b not in taken)
    out = BelowSet(Y, nontrivial + list(rest), _trusted=True)
    assert involves(out) == total
    for w in ws:
        assert below_leq(out, w)
    return out


# counting and the length calculus

def involved(W: BelowSet) -> frozenset[Box]:
    out: set[Box] = set()
    for f in W.frags:
        if not f.is_trivial:
            out |= f.leaves
    return frozenset(out)


def involves(W: BelowSet) -> int:
    return sum(len(f.leaves) for f in W.frags if not f.is_trivial)


def in_c_r(W: BelowSet, r: int) -> bool:
    return involves(W) <= r


def length(W: BelowSet, leaf: Box) -> int:
    """Number of halvings from the element of W containing ``leaf`` down to it."""
    f = W.frag_of_leaf(leaf)
    for cell, label in f.cells:
        if box_contains(label, leaf):
            return box_depth(cell) + box_depth(leaf) - box_depth(label)
    raise InvariantViolation(f"{leaf} not under any label of its fragment")


def glueable(W: BelowSet, i: Box, j: Box) -> int | None:
    """A colour in which {i, j} admits a one-pair contraction above W, if any."""
    Y = W.base
    for c in range(Y.s):
        for x, y in ((i, j), (j, i)):
            z = simple_contraction(Y, x, y, c)
            if leq_contraction(W, z):
                return c
    return None


def locally_maximal(W: BelowSet, i: Box) -> bool:
    f = W.frag_of_leaf(i)
    li = length(W, i)
    return all(li >= length(W, j) for j in f.leaves)
