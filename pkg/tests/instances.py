"""Shared concrete instances used across the test modules.

Colour indices: 0 = first axis, 1 = second, 2 = third.  Text formats number
colours from 1.
"""

from brinv.boxes import Pattern
from brinv.fragments import belowset_from_pattern, simple_contraction, y_as_belowset


def boxes(s, *specs):
    return [tuple(f if f != "e" else "" for f in b.split(":")) for b in specs]


def pat(s, *specs):
    return Pattern(s, boxes(s, *specs))


# the seven-leaf instance whose two overlapping contractions force a glb
# involving every leaf; its glueing graph is the open book
OPEN_BOOK_7 = pat(3, "1:1:0", "1:0:0", "0:0:0", "0:0:1", "1:0:1", "1:1:1", "0:1:e")
OB = {
    1: ("1", "1", "0"),
    2: ("1", "0", "0"),
    3: ("0", "0", "0"),
    4: ("0", "0", "1"),
    5: ("1", "0", "1"),
    6: ("1", "1", "1"),
    7: ("0", "1", ""),
}


def ob_contractions(Y=OPEN_BOOK_7, labels=OB):
    """Y0 glues {1,2} in colour b (=1), Y1 glues {2,3} in colour a (=0)."""
    y0 = simple_contraction(Y, labels[2], labels[1], 1)  # 2 is the low b-half
    y1 = simple_contraction(Y, labels[3], labels[2], 0)  # 3 is the low a-half
    return y0, y1


# eight-leaf variant: leaf 7 subdivided in colour a
OPEN_BOOK_8 = pat(
    3, "1:1:0", "1:0:0", "0:0:0", "0:0:1", "1:0:1", "1:1:1", "00:1:e", "01:1:e"
)

# thirteen-leaf variant: each of 1..6 subdivided in colour c, 7 kept
OPEN_BOOK_13 = pat(
    3,
    "1:1:00", "1:1:01",
    "1:0:00", "1:0:01",
    "0:0:00", "0:0:01",
    "0:0:10", "0:0:11",
    "1:0:10", "1:0:11",
    "1:1:10", "1:1:11",
    "0:1:e",
)
OB13 = {k: OB[k][:2] + (OB[k][2] + "0",) for k in range(1, 7)}
OB13[7] = OB[7]


def ob13_contractions():
    y0 = simple_contraction(OPEN_BOOK_13, OB13[2], OB13[1], 1)
    y1 = simple_contraction(OPEN_BOOK_13, OB13[3], OB13[2], 0)
    return y0, y1


# the two-colour length-calculus instance: A with elements a, b, c and its
# descendant Y with leaves 1..6
FIG_A = pat(2, "0:e", "1:1", "1:0")
FIG_Y = pat(2, "00:e", "01:e", "1:1", "10:0", "11:01", "11:00")
FIG = {
    1: ("00", ""),
    2: ("01", ""),
    3: ("1", "1"),
    4: ("10", "0"),
    5: ("11", "01"),
    6: ("11", "00"),
}


def fig_belowset():
    return belowset_from_pattern(FIG_Y, FIG_A)


QUADRANTS = pat(2, "0:0", "0:1", "1:0", "1:1")
HALVES_V = pat(2, "0:e", "1:e")
HALVES_H = pat(2, "e:0", "e:1")
OCTANTS = pat(
    3, "0:0:0", "0:0:1", "0:1:0", "0:1:1", "1:0:0", "1:0:1", "1:1:0", "1:1:1"
)


def root_below(Y):
    """The one-element below-set given by the whole cube."""
    from brinv.boxes import root_pattern

    return belowset_from_pattern(Y, root_pattern(Y.s))


def y_below(Y):
    return y_as_belowset(Y)
