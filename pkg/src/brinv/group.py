"""Group elements as pattern pairs with a box bijection.

An element maps the boxes of a hierarchical domain pattern onto the boxes of a
hierarchical range pattern and acts on finer boxes by appending relative
addresses colour by colour.  Composition and equality refine to a common
domain first; elements are stored greedily reduced but nothing relies on the
reduced form being unique.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .boxes import (
    Box,
    Pattern,
    box_append,
    box_contains,
    box_key,
    box_parent,
    is_hierarchical,
    leq,
    lub,
    relative_address,
    root_box,
    root_pattern,
    siblings,
)
from .errors import BoxNotBelowDomain, NotBijective, PreconditionViolated, SizeMismatch


class GroupElement:
    __slots__ = ("s", "dom", "ran", "pairs", "_map", "_hash")

    def __init__(self, dom: Pattern, ran: Pattern, pairs: tuple[tuple[Box, Box], ...]):
        object.__setattr__(self, "s", dom.s)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "ran", ran)
        object.__setattr__(self, "pairs", tuple(sorted(pairs, key=lambda p: box_key(p[0]))))
        object.__setattr__(self, "_map", dict(pairs))
        object.__setattr__(self, "_hash", hash((dom, ran, self.pairs)))

    def __setattr__(self, *a):
        raise AttributeError("GroupElement is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        # structural equality of the stored pair; semantic equality is equal()
        return isinstance(other, GroupElement) and self.pairs == other.pairs

    def __repr__(self):
        def fmt(b):
            return ":".join(a or "e" for a in b)

        body = ", ".join(f"{fmt(d)}->{fmt(r)}" for d, r in self.pairs)
        return f"Element(s={self.s}, {body})"

    def image(self, d: Box) -> Box:
        return self._map[d]


def _reduce(dom: Pattern, ran: Pattern, mapping: dict[Box, Box]):
    """Remove matched caret pairs while both sides stay hierarchical."""
    s = dom.s
    changed = True
    while changed:
        changed = False
        boxes = sorted(mapping, key=box_key)
        for d in boxes:
            r = mapping.get(d)
            if r is None:
                continue
            for c in range(s):
                if not d[c] or d[c][-1] != "0":
                    continue
                d2 = d[:c] + (d[c][:-1] + "1",) + d[c + 1 :]
                r2 = mapping.get(d2)
                if r2 is None or not siblings(r, r2, c):
                    continue
                dp, rp = box_parent(d, c), box_parent(r, c)
                new_dom = [b for b in dom.boxes if b != d and b != d2] + [dp]
                new_ran = [b for b in ran.boxes if b != r and b != r2] + [rp]
                if not (
                    is_hierarchical(new_dom, root_box(s))
                    and is_hierarchical(new_ran, root_box(s))
                ):
                    continue
                del mapping[d], mapping[d2]
                mapping[dp] = rp
                dom = Pattern(s, new_dom, _trusted=True)
                ran = Pattern(s, new_ran, _trusted=True)
                changed = True
                break
            if changed:
                break
    return dom, ran, mapping


def make_element(
    D: Pattern, R: Pattern, pairs: Iterable[tuple[Box, Box]] | Mapping[Box, Box]
) -> GroupElement:
    if isinstance(pairs, Mapping):
        pairs = tuple(pairs.items())
    else:
        pairs = tuple(pairs)
    if D.s != R.s:
        raise SizeMismatch("domain and range have different colour counts")
    if len(D) != len(R) or len(pairs) != len(D):
        raise SizeMismatch(f"|dom| = {len(D)}, |ran| = {len(R)}, {len(pairs)} pairs")
    mapping = dict(pairs)
    if len(mapping) != len(pairs) or set(mapping) != set(D.boxes) or set(
        mapping.values()
    ) != set(R.boxes):
        raise NotBijective("pairs are not a bijection between the patterns")
    for P in (D, R):
        if not is_hierarchical(P.boxes, root_box(P.s)):
            raise PreconditionViolated("pattern pair sides must be hierarchical")
    D, R, mapping = _reduce(D, R, mapping)
    return GroupElement(D, R, tuple(mapping.items()))


def identity(s: int) -> GroupElement:
    r = root_pattern(s)
    return GroupElement(r, r, ((root_box(s), root_box(s)),))


def apply_box(g: GroupElement, b: Box) -> Box:
    """Image of a box lying inside the domain; relative addresses transport."""
    for d in g.dom.boxes:
        if box_contains(d, b):
            return box_append(g.image(d), relative_address(d, b))
    raise BoxNotBelowDomain(f"{b} is not below the domain of {g!r}")


def refine_to(g: GroupElement, T: Pattern) -> GroupElement:
    """The same element presented on the finer domain T >= dom(g)."""
    if not leq(g.dom, T):
        raise PreconditionViolated("refinement target is not above the domain")
    pairs = tuple((t, apply_box(g, t)) for t in T.boxes)
    ran = Pattern(g.s, [r for _, r in pairs], _trusted=True)
    return GroupElement(T, ran, pairs)


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.ran, g.dom, tuple((r, d) for d, r in g.pairs))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Apply g first, then h."""
    if g.s != h.s:
        raise SizeMismatch("elements over different colour counts")
    T = lub(g.ran, h.dom)
    ginv = inverse(g)
    pairs = tuple((apply_box(ginv, t), apply_box(h, t)) for t in T.boxes)
    D = Pattern(g.s, [d for d, _ in pairs], _trusted=True)
    R = Pattern(g.s, [r for _, r in pairs], _trusted=True)
    return make_element(D, R, pairs)


def equal(g: GroupElement, h: GroupElement) -> bool:
    if g.s != h.s:
        return False
    T = lub(g.dom, h.dom)
    return all(apply_box(g, t) == apply_box(h, t) for t in T.boxes)


def transitive_element(Y: Pattern, Z: Pattern, sigma=None) -> GroupElement:
    """An element carrying Y onto Z box by box; sigma defaults to canonical order."""
    if len(Y) != len(Z):
        raise SizeMismatch("patterns of different size")
    if sigma is None:
        pairs = tuple(zip(Y.boxes, Z.boxes))
    elif isinstance(sigma, Mapping):
        pairs = tuple(sigma.items())
    else:
        pairs = tuple(sigma)
    return make_element(Y, Z, pairs)


def stabilizes(g: GroupElement, Y: Pattern) -> bool:
    """True iff the element permutes the boxes of Y."""
    T = lub(g.dom, Y)
    images = {}
    for y in Y.boxes:
        inside = [t for t in T.boxes if box_contains(y, t)]
        t0 = inside[0]
        rel0 = relative_address(y, t0)
        img0 = apply_box(g, t0)
        if any(not img0[c].endswith(rel0[c]) for c in range(Y.s)):
            return False
        target = tuple(
            img0[c][: len(img0[c]) - len(rel0[c])] for c in range(Y.s)
        )
        for t in inside[1:]:
            if apply_box(g, t) != box_append(target, relative_address(y, t)):
                return False
        images[y] = target
    return set(images.values()) == set(Y.boxes)
