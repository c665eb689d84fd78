"""Independent oracles used by the tests.

Everything here recomputes expected values from first principles (exact
Fraction regions, grid-based tiling search, plain BFS) and deliberately avoids
the library's own data structures wherever it is the library being checked.
"""

from fractions import Fraction
from itertools import count

HALF = Fraction(1, 2)

# regions: a region is a tuple, one entry per colour, of (lo, hi) Fractions.


def unit_region(s):
    return tuple((Fraction(0), Fraction(1)) for _ in range(s))


def split_region(region, colour):
    lo, hi = region[colour]
    mid = (lo + hi) / 2
    a = region[:colour] + ((lo, mid),) + region[colour + 1 :]
    b = region[:colour] + ((mid, hi),) + region[colour + 1 :]
    return a, b


def box_region(box):
    """Region of an address tuple, computed directly from the bits."""
    out = []
    for a in box:
        lo, hi = Fraction(0), Fraction(1)
        for bit in a:
            mid = (lo + hi) / 2
            if bit == "0":
                hi = mid
            else:
                lo = mid
        out.append((lo, hi))
    return tuple(out)


def pattern_regions(P):
    return frozenset(box_region(b) for b in P.boxes)


def reachable_region_patterns(s, max_size):
    """BFS over region partitions reachable from the unit cube by halvings."""
    start = frozenset({unit_region(s)})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for st in frontier:
            if len(st) >= max_size:
                continue
            for region in st:
                for c in range(s):
                    a, b = split_region(region, c)
                    new = frozenset((st - {region}) | {a, b})
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
        frontier = nxt
    return seen


def all_dyadic_tilings_2d(max_pieces):
    """Every tiling of the unit square by dyadic rectangles with <= max_pieces
    pieces, found by corner-first exact cover on a fine grid."""
    depth = max_pieces - 1  # a k-piece tiling has no piece deeper than k-1
    n = 1 << depth
    full = frozenset((x, y) for x in range(n) for y in range(n))

    def rect_cells(x0, y0, w, h):
        return frozenset((x, y) for x in range(x0, x0 + w) for y in range(y0, y0 + h))

    results = set()

    def rec(remaining, pieces, budget):
        if not remaining:
            results.add(frozenset(pieces))
            return
        if budget == 0:
            return
        x0, y0 = min(remaining, key=lambda c: (c[1], c[0]))
        w = 1
        while w <= n:
            if x0 % w == 0:
                h = 1
                while h <= n:
                    if y0 % h == 0:
                        cells = rect_cells(x0, y0, w, h)
                        if cells <= remaining:
                            lo_x = Fraction(x0, n)
                            lo_y = Fraction(y0, n)
                            r = (
                                (lo_x, lo_x + Fraction(w, n)),
                                (lo_y, lo_y + Fraction(h, n)),
                            )
                            rec(remaining - cells, pieces + [r], budget - 1)
                    h *= 2
            w *= 2
        return

    rec(full, [], max_pieces)
    return results


def catalan(n):
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c
