import pytest

from src.common.errors import (
    CycleError, EmptyPoset, IdCollision, NoBottom, NotComparable, NotGraded, NotReduced,
    PosetInputError, UnknownElement,
)
from src.common.laurent import LaurentPoly
from src.posets.constructors import (
    adjoin_top, boolean_lattice, chain_poset, face_poset_simplicial, polygon_face_poset,
)
from src.posets.core import (
    characteristic_polynomial, count_maximal_chains, from_cover_relations, interval, is_eulerian,
    is_thin, is_upper_ideal, lower_ideal, maximal_chains, mobius, mobius_row, restrict, upper_ideal,
)
from src.posets.samples import TORUS_FACETS, sample_facets
from tests.corpus import b3, b4, br3


DIAMOND_COVERS = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]


def test_ranks_from_longest_paths():
    p = from_cover_relations(["a", "b", "c", "d"], DIAMOND_COVERS)
    assert dict(p.rank) == {"a": 0, "b": 1, "c": 1, "d": 2}
    assert p.bottom == "a" and p.top == "d"
    assert p.length == 2
    assert "b" in p and "z" not in p


def test_integer_ids_become_strings():
    p = from_cover_relations([1, 2, 3], [(1, 2), (2, 3)])
    assert p.elements == ("1", "2", "3")
    assert p.leq("1", "3")


def test_empty_poset_rejected():
    with pytest.raises(EmptyPoset):
        from_cover_relations([], [])


def test_duplicate_ids_rejected():
    with pytest.raises(IdCollision):
        from_cover_relations(["a", "a"], [])


def test_unknown_element_rejected():
    with pytest.raises(UnknownElement):
        from_cover_relations(["a"], [("a", "b")])


def test_comma_in_id_rejected():
    with pytest.raises(PosetInputError):
        from_cover_relations(["a,b", "c"], [])


def test_cycle_reported_with_witness():
    with pytest.raises(CycleError) as info:
        from_cover_relations(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    assert len(info.value.witness) == 3


def test_self_loop_is_a_cycle():
    with pytest.raises(CycleError):
        from_cover_relations(["a"], [("a", "a")])


def test_redundant_cover_rejected():
    with pytest.raises(NotReduced) as info:
        from_cover_relations(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert info.value.witness == [("a", "c")]


def test_rank_skip_rejected():
    with pytest.raises(NotGraded):
        from_cover_relations(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("d", "c")])


def test_interval_and_comparability():
    p = b3()
    iv = interval(p, "1", "123")
    assert iv.members == {"1", "12", "13", "123"}
    assert iv.length == 2
    with pytest.raises(NotComparable):
        interval(p, "1", "23")


def test_maximal_chain_counts():
    p = b4()
    chains = maximal_chains(p, "∅", "1234")
    assert len(chains) == 24 == count_maximal_chains(p, "∅", "1234")
    assert chains == sorted(chains)
    assert chains[0].elements == ("∅", "1", "12", "123", "1234")
    assert count_maximal_chains(br3(), "123", "321") == 4


def test_thin_and_not_thin():
    assert is_thin(b3()).ok
    res = is_thin(chain_poset(3))
    assert not res.ok
    assert res.witness == ("0", "2")


def test_eulerian():
    assert is_eulerian(b4()).ok
    assert is_eulerian(br3()).ok
    assert not is_eulerian(chain_poset(3)).ok


def test_face_posets_are_eulerian():
    for k in range(3, 9):
        assert is_eulerian(polygon_face_poset(k)).ok, k
    for name in ("octahedron", "torus"):
        assert is_eulerian(face_poset_simplicial(sample_facets(name))).ok, name


def test_torus_with_top_is_thin_but_not_eulerian():
    p = adjoin_top(face_poset_simplicial(TORUS_FACETS))
    assert len(p) == 1 + 7 + 21 + 14 + 1
    assert is_thin(p).ok
    assert not is_eulerian(p).ok
    assert mobius(p, "∅", "TOP") == -1


def test_mobius_on_boolean_lattice():
    p = b4()
    row = mobius_row(p, "∅")
    assert all(row[x] == (-1) ** p.rank[x] for x in p.elements)
    assert mobius(p, "1", "134") == 1


def test_characteristic_polynomial_of_boolean_lattice():
    # (t - 1)^3
    assert characteristic_polynomial(b3()) == LaurentPoly.from_dict({3: 1, 2: -3, 1: 3, 0: -1})


def test_characteristic_polynomial_needs_bottom():
    p = from_cover_relations(["a", "b", "c"], [("a", "c"), ("b", "c")])
    with pytest.raises(NoBottom):
        characteristic_polynomial(p)


def test_ideals():
    p = b3()
    up = upper_ideal(p, ["12"])
    assert up == {"12", "123"}
    assert is_upper_ideal(p, up)
    assert not is_upper_ideal(p, {"12"})
    assert lower_ideal(p, ["12"]) == {"∅", "1", "2", "12"}


def test_restrict_keeps_ambient_rank():
    p = b3()
    sub = restrict(p, upper_ideal(p, ["1"]))
    assert sub.rank["1"] == 1
    assert sub.bottom == "1"
    assert ("1", "12") in sub.covers
    with pytest.raises(UnknownElement):
        restrict(p, ["9"])


def test_bitset_index_agrees_with_graph_search(monkeypatch):
    p = boolean_lattice(4)
    plain = {x: (p.up_set(x), p.down_set(x)) for x in p.elements}
    pairs = {(x, y): p.leq(x, y) for x in p.elements for y in p.elements}
    monkeypatch.setattr("src.posets.core.INDEX_THRESHOLD", 0)
    assert p.indexed
    assert {x: (p.up_set(x), p.down_set(x)) for x in p.elements} == plain
    assert {(x, y): p.leq(x, y) for x in p.elements for y in p.elements} == pairs
