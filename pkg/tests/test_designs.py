from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from wsat import (
    CoverDesign,
    FormatError,
    cover_from_text,
    cover_to_text,
    greedy_cover,
    rodl_bound,
    verify_cover,
)


def test_k_equals_t_degenerates_to_all_subsets():
    design = greedy_cover(5, 2, 2)
    assert len(design.blocks) == comb(5, 2)
    assert verify_cover(design)
    design1 = greedy_cover(4, 1, 1)
    assert design1.blocks == ((0,), (1,), (2,), (3,))


def test_greedy_632_regression():
    design = greedy_cover(6, 3, 2)
    assert verify_cover(design)
    assert len(design.blocks) <= 7
    # deterministic greedy output, pinned
    assert design.blocks == ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5),
                             (0, 2, 3), (0, 1, 4), (0, 1, 5))


def test_greedy_732_valid():
    design = greedy_cover(7, 3, 2)
    assert verify_cover(design)


def test_verify_cover_catches_missing():
    design = greedy_cover(7, 3, 2)
    # find a block that uniquely covers some pair
    coverage = {}
    for b in design.blocks:
        for sub in combinations(b, 2):
            coverage.setdefault(sub, []).append(b)
    unique_block = next(bs[0] for bs in coverage.values() if len(bs) == 1)
    pruned = CoverDesign(7, 3, 2, tuple(b for b in design.blocks if b != unique_block))
    assert not verify_cover(pruned)
    # whereas all k-subsets always cover
    every = CoverDesign(6, 3, 2, tuple(combinations(range(6), 3)))
    assert verify_cover(every)


def test_rodl_bound_values():
    assert rodl_bound(6, 3, 2, 0) == 5
    assert rodl_bound(9, 3, 2, 0) == 12
    for n, t in [(6, 2), (7, 3)]:
        assert rodl_bound(n, t, t, 0) == comb(n, t)
    assert rodl_bound(6, 3, 2, Fraction(1, 10)) == Fraction(11, 2)


def test_block_count_never_exceeds_tsets():
    for n_pts in range(2, 9):
        for k in range(1, min(4, n_pts) + 1):
            for t in range(1, k + 1):
                design = greedy_cover(n_pts, k, t)
                assert len(design.blocks) <= comb(n_pts, t)
                assert verify_cover(design)


def test_determinism():
    a = greedy_cover(8, 3, 2)
    b = greedy_cover(8, 3, 2)
    assert a.blocks == b.blocks


def test_sampled_variant(monkeypatch):
    import wsat.designs as designs
    monkeypatch.setattr(designs, "EXHAUSTIVE_CANDIDATE_LIMIT", 10)
    monkeypatch.setattr(designs, "SAMPLE_CANDIDATES_PER_ROUND", 200)
    d1 = designs.greedy_cover(10, 4, 2, seed=0)
    d2 = designs.greedy_cover(10, 4, 2, seed=0)
    assert d1.sampled
    assert verify_cover(d1)
    assert d1.blocks == d2.blocks
    d3 = designs.greedy_cover(10, 4, 2, seed=1)
    assert verify_cover(d3)


def test_parameter_validation():
    with pytest.raises(ValueError):
        greedy_cover(3, 4, 2)
    with pytest.raises(ValueError):
        greedy_cover(5, 2, 3)
    with pytest.raises(ValueError):
        greedy_cover(5, 2, 0)
    with pytest.raises(ValueError):
        CoverDesign(5, 3, 2, ((0, 1),))
    with pytest.raises(ValueError):
        CoverDesign(5, 3, 2, ((0, 1, 9),))


def test_cover_text_roundtrip():
    design = greedy_cover(6, 3, 2)
    text = cover_to_text(design)
    back = cover_from_text(text)
    assert back.blocks == design.blocks
    assert cover_to_text(back) == text
    with pytest.raises(FormatError):
        cover_from_text("6 3\n")
    with pytest.raises(FormatError):
        cover_from_text("")
