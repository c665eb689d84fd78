"""Dyadic boxes and global patterns.

A *box* is one dyadic subparallelepiped of the unit s-cube, written as an
s-tuple of binary addresses, one per colour (= cutting direction).  Address
bit 0 picks the low half, bit 1 the high half; the empty string is the whole
interval.  Box equality is address-tuple equality, which already identifies
words that differ only by reordering cuts of different colours.

A *pattern* is a finite partition of the unit s-cube into boxes.  Patterns
reachable from the single root box by repeatedly halving a box are called
hierarchical; for s <= 2 every dyadic tiling is hierarchical, for s = 3 there
are tilings that are not (see ``is_hierarchical``).

All arithmetic is exact on integers; there is no floating point anywhere.
Values are immutable and safe to share.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    BoxNotInPattern,
    BudgetExceeded,
    DepthCapExceeded,
    NoCommonLowerBound,
    NotATiling,
    NotSiblings,
)

# A Box is a plain tuple of bit strings, one per colour, e.g. ('01', '').
Box = tuple[str, ...]


def root_box(s: int) -> Box:
    return ("",) * s


def box_depth(b: Box) -> int:
    """Total number of halvings needed to cut the box out of the unit cube."""
    return sum(len(a) for a in b)


def box_key(b: Box):
    """Colour-major (length, bits) key; the canonical total order on boxes."""
    return tuple((len(a), a) for a in b)


def box_contains(outer: Box, inner: Box) -> bool:
    return all(i.startswith(o) for o, i in zip(outer, inner))


def boxes_disjoint(a: Box, b: Box) -> bool:
    """Disjoint as regions: in some colour neither address prefixes the other."""
    for x, y in zip(a, b):
        if not (x.startswith(y) or y.startswith(x)):
            return True
    return False


def box_meet(a: Box, b: Box) -> Box | None:
    """Intersection of two boxes: per colour the deeper address, or None if empty."""
    out = []
    for x, y in zip(a, b):
        if x.startswith(y):
            out.append(x)
        elif y.startswith(x):
            out.append(y)
        else:
            return None
    return tuple(out)


def box_child(b: Box, colour: int, bit: str) -> Box:
    return b[:colour] + (b[colour] + bit,) + b[colour + 1 :]


def box_split(b: Box, colour: int) -> tuple[Box, Box]:
    """The low and high halves of ``b`` in the given colour."""
    return box_child(b, colour, "0"), box_child(b, colour, "1")


def box_parent(b: Box, colour: int) -> Box:
    a = b[colour]
    if not a:
        raise ValueError(f"box {b} has no parent in colour {colour}")
    return b[:colour] + (a[:-1],) + b[colour + 1 :]


def siblings(i: Box, j: Box, colour: int) -> bool:
    """True iff i is the low and j the high half of a common box in ``colour``."""
    ai, aj = i[colour], j[colour]
    if not ai or not aj or ai[:-1] != aj[:-1] or ai[-1] != "0" or aj[-1] != "1":
        return False
    return all(i[c] == j[c] for c in range(len(i)) if c != colour)


def relative_address(outer: Box, inner: Box) -> tuple[str, ...]:
    """Per-colour suffixes of ``inner`` relative to ``outer`` (which must contain it)."""
    return tuple(a[len(o) :] for o, a in zip(outer, inner))


def box_append(b: Box, rel: tuple[str, ...]) -> Box:
    return tuple(a + r for a, r in zip(b, rel))


def _check_tiling(s: int, boxes: tuple[Box, ...]) -> None:
    if not boxes:
        raise NotATiling("a pattern must contain at least one box")
    for b in boxes:
        if len(b) != s:
            raise NotATiling(f"box {b} does not have {s} fields")
    n = len(boxes)
    for i in range(n):
        for j in range(i + 1, n):
            if box_meet(boxes[i], boxes[j]) is not None:
                raise NotATiling(f"boxes {boxes[i]} and {boxes[j]} overlap")
    depth_max = max(box_depth(b) for b in boxes)
    total = sum(1 << (depth_max - box_depth(b)) for b in boxes)
    if total != 1 << depth_max:
        raise NotATiling("boxes do not fill the unit cube")


class Pattern:
    """An exact partition of the unit s-cube into boxes.  Immutable value."""

    __slots__ = ("s", "boxes", "_set", "_hash")

    def __init__(self, s: int, boxes: Iterable[Box], _trusted: bool = False):
        bs = tuple(sorted(boxes, key=box_key))
        if not _trusted:
            _check_tiling(s, bs)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "boxes", bs)
        object.__setattr__(self, "_set", frozenset(bs))
        object.__setattr__(self, "_hash", hash((s, bs)))

    def __setattr__(self, *a):
        raise AttributeError("Pattern is immutable")

    def __len__(self) -> int:
        return len(self.boxes)

    def __iter__(self) -> Iterator[Box]:
        return iter(self.boxes)

    def __contains__(self, b: Box) -> bool:
        return b in self._set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Pattern)
            and self.s == other.s
            and self.boxes == other.boxes
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("(" + ":".join(a or "e" for a in b) + ")" for b in self.boxes)
        return f"Pattern(s={self.s}, {{{body}}})"

    def key(self):
        return (self.s, self.boxes)


def root_pattern(s: int) -> Pattern:
    """The one-box pattern, the basis everything is expanded from."""
    if s not in (1, 2, 3):
        raise ValueError("colour count must be 1, 2 or 3")
    return Pattern(s, (root_box(s),), _trusted=True)


def expand(P: Pattern, b: Box, colour: int, limits: Limits = DEFAULT_LIMITS) -> Pattern:
    """Replace box ``b`` by its two halves in ``colour``; grows the pattern by one."""
    if b not in P:
        raise BoxNotInPattern(f"{b} not in pattern")
    if len(b[colour]) >= limits.depth_cap:
        raise DepthCapExceeded(f"depth cap {limits.depth_cap} hit in colour {colour}")
    lo, hi = box_split(b, colour)
    out = Pattern(P.s, [x for x in P.boxes if x != b] + [lo, hi], _trusted=True)
    assert len(out) == len(P) + 1
    return out


def contract(P: Pattern, i: Box, j: Box, colour: int) -> Pattern:
    """Replace the two ``colour``-halves ``i`` (low) and ``j`` (high) of a common
    box by that box; shrinks the pattern by one.  Only the sibling-oriented case
    lives here; the exotic pair contractions live with the fragments."""
    if i not in P or j not in P:
        raise BoxNotInPattern(f"{i} or {j} not in pattern")
    if not siblings(i, j, colour):
        raise NotSiblings(f"{i}, {j} are not oriented siblings in colour {colour}")
    parent = box_parent(i, colour)
    out = Pattern(P.s, [x for x in P.boxes if x != i and x != j] + [parent], _trusted=True)
    assert len(out) == len(P) - 1
    return out


def is_hierarchical(boxes: Iterable[Box], frame: Box) -> bool:
    """Decide whether a tiling of ``frame`` can be produced from it by halvings.

    Recursion on free cuts: a colour whose mid-hyperplane of the frame is not
    straddled by any box splits the tiling into two tiled halves.  A tiling is
    hierarchical iff it is a single box or some colour admits a free cut whose
    halves are recursively hierarchical.
    """
    bs = tuple(boxes)
    s = len(frame)
    for b in bs:
        if not box_contains(frame, b):
            raise NotATiling(f"box {b} is not inside frame {frame}")
    depth_max = max(box_depth(b) for b in bs)
    total = sum(1 << (depth_max - box_depth(b)) for b in bs)
    if total != 1 << (depth_max - box_depth(frame)):
        raise NotATiling("boxes do not fill the frame")
    return _hier(bs, frame, s)


def _hier(bs: tuple[Box, ...], frame: Box, s: int) -> bool:
    if len(bs) == 1:
        return bs[0] == frame
    for c in range(s):
        k = len(frame[c])
        if all(len(b[c]) > k for b in bs):
            lo = tuple(b for b in bs if b[c][k] == "0")
            hi = tuple(b for b in bs if b[c][k] == "1")
            flo, fhi = box_split(frame, c)
            if _hier(lo, flo, s) and _hier(hi, fhi, s):
                return True
    return False


def leq(A: Pattern, B: Pattern) -> bool:
    """The expansion order: A <= B iff B refines A box by box, hierarchically."""
    if A.s != B.s:
        raise ValueError("patterns have different colour counts")
    groups: dict[Box, list[Box]] = {m: [] for m in A.boxes}
    for b in B.boxes:
        for m in A.boxes:
            if box_contains(m, b):
                groups[m].append(b)
                break
        else:
            return False
    for m, inside in groups.items():
        if not _hier(tuple(inside), m, A.s):
            return False
    return True


def lub(P: Pattern, Q: Pattern) -> Pattern:
    """Least upper bound: the common refinement by pairwise box intersection.

    Raises NoCommonLowerBound when the refinement fails to lie above one of the
    inputs, which can only happen without a common ancestor pattern.
    """
    if P.s != Q.s:
        raise ValueError("patterns have different colour counts")
    meets = []
    for p in P.boxes:
        for q in Q.boxes:
            m = box_meet(p, q)
            if m is not None:
                meets.append(m)
    R = Pattern(P.s, meets)
    if not (leq(P, R) and leq(Q, R)):
        raise NoCommonLowerBound("inputs admit no common ancestor pattern")
    return R


def enumerate_patterns(
    s: int, n: int, limits: Limits = DEFAULT_LIMITS
) -> list[Pattern]:
    """All patterns reachable from the root by at most n-1 halvings, i.e. all
    hierarchical patterns with at most n boxes.  Deterministic order."""
    root = root_pattern(s)
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for P in frontier:
            if len(P) >= n:
                continue
            for b in P.boxes:
                for c in range(s):
                    Q = expand(P, b, c, limits)
                    if Q not in seen:
                        seen.add(Q)
                        nxt.append(Q)
                        if len(seen) > limits.pattern_budget:
                            raise BudgetExceeded(
                                f"pattern enumeration exceeded {limits.pattern_budget}",
                                explored=len(seen),
                            )
        frontier = nxt
    return sorted(seen, key=lambda P: (len(P), P.key()))
