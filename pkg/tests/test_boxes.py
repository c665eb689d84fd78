import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brinv.boxes import (
    Pattern,
    box_key,
    contract,
    enumerate_patterns,
    expand,
    is_hierarchical,
    leq,
    lub,
    root_box,
    root_pattern,
)
from brinv.errors import (
    BoxNotInPattern,
    DepthCapExceeded,
    NotATiling,
    NotSiblings,
)

from helpers import (
    all_dyadic_tilings_2d,
    catalan,
    pattern_regions,
    reachable_region_patterns,
)


def P(s, *boxes):
    return Pattern(s, [tuple(f if f != "e" else "" for f in b.split(":")) for b in boxes])


# the twisted 5-box tiling of the 3-cube: a tiling that no halving sequence produces
Z_TW = P(3, "e:0:0", "0:e:1", "1:1:e", "0:1:0", "1:0:1")


def test_root_patterns():
    assert root_pattern(2).boxes == (("", ""),)
    assert root_pattern(3).boxes == (("", "", ""),)
    assert root_pattern(1).boxes == (("",),)
    with pytest.raises(ValueError):
        root_pattern(4)


def test_expand_basic():
    r = root_pattern(2)
    assert expand(r, ("", ""), 0) == P(2, "0:e", "1:e")
    assert expand(r, ("", ""), 1) == P(2, "e:0", "e:1")


def test_expand_commutation_gives_quadrants():
    r = root_pattern(2)
    a = expand(r, ("", ""), 0)
    a = expand(a, ("0", ""), 1)
    a = expand(a, ("1", ""), 1)
    b = expand(r, ("", ""), 1)
    b = expand(b, ("", "0"), 0)
    b = expand(b, ("", "1"), 0)
    quads = P(2, "0:0", "0:1", "1:0", "1:1")
    assert a == b == quads


def test_expand_region_check():
    got = expand(P(2, "0:e", "1:e"), ("1", ""), 1)
    assert got == P(2, "0:e", "1:0", "1:1")
    # independent region accounting
    assert pattern_regions(got) == pattern_regions(P(2, "0:e", "1:0", "1:1"))


def test_expand_errors():
    r = root_pattern(2)
    with pytest.raises(BoxNotInPattern):
        expand(r, ("0", ""), 0)
    deep = r
    box = ("", "")
    from brinv.config import Limits

    tiny = Limits(depth_cap=2)
    deep = expand(deep, box, 0, tiny)
    deep = expand(deep, ("0", ""), 0, tiny)
    with pytest.raises(DepthCapExceeded):
        expand(deep, ("00", ""), 0, tiny)


def test_contract_basic():
    assert contract(P(2, "0:e", "1:e"), ("0", ""), ("1", ""), 0) == root_pattern(2)
    quads = P(2, "0:0", "0:1", "1:0", "1:1")
    assert contract(quads, ("0", "0"), ("1", "0"), 0) == P(2, "e:0", "0:1", "1:1")


def test_contract_errors():
    two = P(2, "0:e", "1:e")
    with pytest.raises(NotSiblings):
        contract(two, ("0", ""), ("1", ""), 1)  # colour mismatch
    with pytest.raises(NotSiblings):
        contract(two, ("1", ""), ("0", ""), 0)  # wrong orientation
    with pytest.raises(BoxNotInPattern):
        contract(two, ("0", "0"), ("1", ""), 0)


def test_size_law_sequences():
    # k expansions and l contractions from size m land at m + k - l
    q = root_pattern(2)
    q = expand(q, ("", ""), 0)
    q = expand(q, ("0", ""), 1)
    q = expand(q, ("1", ""), 0)
    assert len(q) == 4
    q = contract(q, ("10", ""), ("11", ""), 0)
    assert len(q) == 3


def test_pattern_validation():
    with pytest.raises(NotATiling):
        Pattern(2, [("0", ""), ("1", ""), ("1", "0")])
    with pytest.raises(NotATiling):
        Pattern(2, [("0", "")])
    with pytest.raises(NotATiling):
        Pattern(2, [])


def test_twisted_tiling_is_a_pattern_but_not_hierarchical():
    # valid partition of the cube...
    assert len(Z_TW) == 5
    # ...but absent from the halving-reachable 5-box patterns (independent BFS)
    reach = reachable_region_patterns(3, 5)
    assert pattern_regions(Z_TW) not in reach
    assert not is_hierarchical(Z_TW.boxes, root_box(3))


def test_hierarchical_matches_reachability_s2():
    # every dyadic tiling of the square with <= 5 pieces is reachable, and
    # is_hierarchical agrees with the BFS oracle on all of them
    tilings = all_dyadic_tilings_2d(5)
    reach = reachable_region_patterns(2, 5)
    assert tilings == reach
    for pat in enumerate_patterns(2, 5):
        assert is_hierarchical(pat.boxes, root_box(2))
        assert pattern_regions(pat) in tilings
    assert len(tilings) == len(enumerate_patterns(2, 5))


def test_hierarchical_frame_itself():
    assert is_hierarchical([("01", "1")], ("01", "1"))
    with pytest.raises(NotATiling):
        is_hierarchical([("01", "1")], ("0", "1"))


def test_leq_examples():
    for pat in enumerate_patterns(2, 4):
        assert leq(root_pattern(2), pat)
    assert not leq(root_pattern(3), Z_TW)
    octants = P(3, "0:0:0", "0:0:1", "0:1:0", "0:1:1", "1:0:0", "1:0:1", "1:1:0", "1:1:1")
    assert leq(Z_TW, octants)
    assert leq(Z_TW, Z_TW)


def test_leq_is_a_partial_order_on_samples():
    pats = enumerate_patterns(2, 4)
    for A in pats:
        assert leq(A, A)
    for A in pats:
        for B in pats:
            if leq(A, B) and leq(B, A):
                assert A == B
    import itertools

    for A, B, C in itertools.islice(itertools.product(pats, repeat=3), 0, 6000, 7):
        if leq(A, B) and leq(B, C):
            assert leq(A, C)


def test_lub_examples():
    halves_v = P(2, "0:e", "1:e")
    halves_h = P(2, "e:0", "e:1")
    assert lub(halves_v, halves_h) == P(2, "0:0", "0:1", "1:0", "1:1")
    for pat in enumerate_patterns(2, 4):
        assert lub(pat, pat) == pat
        assert lub(pat, root_pattern(2)) == pat


def test_lub_is_minimal_among_upper_bounds():
    # brute force: enumerate every common upper bound of size <= 6 by BFS and
    # check the computed lub sits below all of them
    pats = enumerate_patterns(2, 3)
    small = enumerate_patterns(2, 6)
    for A in pats:
        for B in pats:
            R = lub(A, B)
            assert leq(A, R) and leq(B, R)
            for S in small:
                if leq(A, S) and leq(B, S):
                    assert leq(R, S)


def test_enumerate_counts_s2():
    assert len(enumerate_patterns(2, 2)) == 3
    by_size = {}
    for pat in enumerate_patterns(2, 3):
        by_size.setdefault(len(pat), []).append(pat)
    assert len(by_size[1]) == 1
    assert len(by_size[2]) == 2
    assert len(by_size[3]) == 8


def test_enumerate_counts_s1_catalan():
    pats = enumerate_patterns(1, 3)
    assert len(pats) == 4
    keys = {frozenset(pat.boxes) for pat in pats}
    assert frozenset({("",)}) in keys
    assert frozenset({("0",), ("1",)}) in keys
    assert frozenset({("00",), ("01",), ("1",)}) in keys
    assert frozenset({("0",), ("10",), ("11",)}) in keys
    # sizes follow the Catalan numbers
    for n in range(1, 6):
        count = sum(1 for pat in enumerate_patterns(1, n) if len(pat) == n)
        assert count == catalan(n - 1)


@st.composite
def expansion_sequences(draw, s=2, max_steps=5):
    steps = draw(st.lists(st.tuples(st.integers(0, 30), st.integers(0, s - 1)), max_size=max_steps))
    pat = root_pattern(s)
    for pick, colour in steps:
        pat = expand(pat, pat.boxes[pick % len(pat)], colour)
    return pat


@settings(max_examples=60, deadline=None)
@given(expansion_sequences(), expansion_sequences())
def test_lub_properties_random(Ppat, Q):
    R = lub(Ppat, Q)
    assert leq(Ppat, R) and leq(Q, R)
    assert lub(Q, Ppat) == R


@settings(max_examples=60, deadline=None)
@given(expansion_sequences(s=3, max_steps=4), st.integers(0, 2), st.integers(0, 2))
def test_expand_commutation_random(pat, ci, cj):
    if ci == cj:
        return
    from brinv.boxes import box_split

    for b in pat.boxes:
        one = expand(pat, b, ci)
        lo, hi = box_split(b, ci)
        a = expand(expand(one, lo, cj), hi, cj)
        other = expand(pat, b, cj)
        lo2, hi2 = box_split(b, cj)
        bb = expand(expand(other, lo2, ci), hi2, ci)
        assert a == bb


def test_canonical_box_order():
    boxes = [("1", ""), ("0", "1"), ("0", "0"), ("", "")]
    assert sorted(boxes, key=box_key) == [("", ""), ("0", "0"), ("0", "1"), ("1", "")]
