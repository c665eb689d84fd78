"""Seeded instance generators for the randomized campaigns.

Everything takes an explicit ``random.Random`` so runs are reproducible from
the seed alone.
"""

from __future__ import annotations

from random import Random

from .boxes import Pattern, expand, root_pattern
from .fragments import BelowSet, _contraction_moves, y_as_belowset
from .group import GroupElement, make_element


def random_pattern(rng: Random, s: int, size: int) -> Pattern:
    """A hierarchical pattern grown by ``size - 1`` uniform halvings."""
    P = root_pattern(s)
    while len(P) < size:
        b = P.boxes[rng.randrange(len(P))]
        P = expand(P, b, rng.randrange(s))
    return P


def random_belowset(rng: Random, Y: Pattern, moves: int) -> BelowSet:
    """Walk ``moves`` random one-pair contractions down from Y itself."""
    W = y_as_belowset(Y)
    for _ in range(moves):
        options = list(_contraction_moves(W, box_only=False))
        if not options:
            break
        W = options[rng.randrange(len(options))]
    return W


def random_chain_vertices(rng: Random, Y: Pattern, t: int) -> list[BelowSet]:
    """Strictly ascending below-sets A_t < ... < A_0, all strictly below Y.

    Built top down: A_0 is a random contraction of Y, each later vertex
    contracts further.  Returns bottom first.  May return fewer than t + 1
    vertices when the walk bottoms out."""
    out: list[BelowSet] = []
    W = y_as_belowset(Y)
    for _ in range(t + 1):
        steps = rng.randrange(1, 3)
        nxt = W
        for _ in range(steps):
            options = list(_contraction_moves(nxt, box_only=False))
            if not options:
                break
            nxt = options[rng.randrange(len(options))]
        if len(nxt) == len(W):
            break
        W = nxt
        out.append(W)
    out.reverse()
    return out


def random_element(rng: Random, s: int, size: int) -> GroupElement:
    D = random_pattern(rng, s, size)
    R = random_pattern(rng, s, size)
    perm = list(R.boxes)
    rng.shuffle(perm)
    return make_element(D, R, tuple(zip(D.boxes, perm)))
