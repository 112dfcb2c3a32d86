import pytest

from src.common.errors import (
    IdCollision, MissingBounds, NotGraded, ParameterError, RankMismatch, RankTooSmall, TooLarge,
)
from src.posets.constructors import *
from src.posets.core import from_cover_relations, is_eulerian, is_thin
from src.posets.samples import SIMPLEX_FACETS, TORUS_FACETS, sample_facets
from tests.corpus import br3


def test_boolean_lattice_ids():
    p = boolean_lattice(3)
    assert len(p) == 8
    assert {"∅", "1", "12", "123"} <= set(p.elements)
    assert p.rank["13"] == 2
    assert len(p.covers) == 12


def test_boolean_lattice_bounds():
    assert len(boolean_lattice(0)) == 1
    with pytest.raises(TooLarge):
        boolean_lattice(21)
    with pytest.raises(ParameterError):
        boolean_lattice(-1)


def test_multi_digit_labels_use_a_separator():
    p = boolean_lattice(12)
    assert "1.2" in p and "12" in p
    assert p.rank["12"] == 1
    assert p.rank["1.2"] == 2


def test_bruhat_order():
    p = bruhat_order(3)
    assert len(p) == 6
    assert len(p.covers) == 8
    assert p.bottom == "123" and p.top == "321"
    assert p.by_rank[2] == ("231", "312")
    q = bruhat_order(4)
    assert len(q) == 24
    assert q.rank["4321"] == 6
    assert is_thin(q).ok and is_eulerian(q).ok
    with pytest.raises(TooLarge):
        bruhat_order(7)


def test_inversions():
    assert inversions("321") == 3
    assert inversions([1, 3, 2]) == 1


def test_simplex_face_poset_is_boolean():
    p = face_poset_simplicial(SIMPLEX_FACETS)
    assert p.same_as(boolean_lattice(3))


def test_torus_face_counts():
    p = face_poset_simplicial(TORUS_FACETS, include_empty=False)
    sizes = {k: len(v) for k, v in p.by_rank.items()}
    assert sizes == {0: 7, 1: 21, 2: 14}


def test_face_poset_rejects_empty_facets():
    with pytest.raises(ParameterError):
        face_poset_simplicial([])
    with pytest.raises(ParameterError):
        face_poset_simplicial([[1, 2], []])


def test_polygon_variants():
    full = polygon_face_poset(6)
    assert len(full) == 14
    assert full.bottom == "∅" and full.top == "f"
    boundary = polygon_face_poset(6, include_interior=False)
    assert len(boundary) == 13 and boundary.top is None
    open_disk = polygon_face_poset(4, include_empty=False)
    assert open_disk.rank["v1"] == 0 and open_disk.rank["f"] == 2
    assert ("v1", "e4") in open_disk.covers
    with pytest.raises(ParameterError):
        polygon_face_poset(2)


def test_adjoin_top_and_bottom():
    p = polygon_face_poset(4, include_empty=False, include_interior=False)
    top = adjoin_top(p)
    assert top.top == "TOP" and top.rank["TOP"] == 2
    bottom = adjoin_bottom(p, label="zero")
    assert bottom.bottom == "zero"
    assert bottom.rank["v1"] == 1 and bottom.rank["e1"] == 2
    with pytest.raises(IdCollision):
        adjoin_top(p, label="v1")


def test_adjoin_top_needs_equal_maximal_ranks():
    p = from_cover_relations(["a", "b", "c"], [("a", "b")])
    with pytest.raises(NotGraded):
        adjoin_top(p)


def test_pinch_product_of_bruhat_orders():
    p = pinch_product(br3(), br3())
    assert len(p) == 10
    assert p.bottom == "BOT" and p.top == "TOP"
    assert p.rank["L.213"] == 1 and p.rank["R.231"] == 2
    assert is_thin(p).ok and is_eulerian(p).ok


def test_pinch_product_errors():
    with pytest.raises(RankTooSmall):
        pinch_product(boolean_lattice(2), boolean_lattice(2))
    with pytest.raises(RankMismatch):
        pinch_product(boolean_lattice(3), boolean_lattice(4))
    with pytest.raises(MissingBounds):
        pinch_product(polygon_face_poset(4, include_interior=False), boolean_lattice(3))


def test_disjoint_union_and_small_families():
    u = disjoint_union(chain_poset(2), diamond_poset())
    assert len(u) == 6
    assert ("A.0", "A.1") in u.covers and ("B.a", "B.b") in u.covers
    assert u.bottom is None


def test_subset_ids():
    assert subset_id([3, 1]) == "13"
    assert subset_id([]) == "∅"
    assert subset_id(["10", "2"], sep=".") == "2.10"
    assert label_separator(["1", "2"]) == ""
    assert label_separator(["1", "10"]) == "."


def test_unknown_sample():
    assert len(sample_facets("octahedron")) == 8
    with pytest.raises(ParameterError):
        sample_facets("klein")
