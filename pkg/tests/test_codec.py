import pytest

from src.cli import codec
from src.common.errors import CodecError, CycleError, DSquaredNonzero, MalformedPD, ShapeMismatch
from src.common.laurent import LaurentPoly
from src.common.linalg import to_lists
from src.homology.complex import assemble, cohomology
from src.homology.functor import constant_functor
from src.homology.khovanov import khovanov_homology, sample_diagram
from src.posets.coloring import Potential, find_balanced_coloring
from src.posets.constructors import diamond_poset
from tests.corpus import b3, graded_diamond_functor


def test_dumps_keeps_unicode_ids():
    text = codec.dumps(codec.build_poset(b3()))
    assert '"∅"' in text
    assert codec.loads(text)["elements"][-1] == "∅"


def test_invalid_json():
    with pytest.raises(CodecError):
        codec.loads("{not json")


def test_poset_payloads():
    p = codec.parse_text(codec.dumps(codec.build_poset(b3())), codec.parse_poset)
    assert p.same_as(b3())
    assert codec.parse_poset({"elements": [1, 2], "covers": [[1, 2]]}).elements == ("1", "2")
    with pytest.raises(CodecError):
        codec.parse_poset({"elements": ["a"]})
    with pytest.raises(CodecError):
        codec.parse_poset({"elements": [True], "covers": []})
    with pytest.raises(CodecError):
        codec.parse_poset({"elements": ["a", "b"], "covers": ["ab"]})
    with pytest.raises(CodecError):
        codec.parse_poset(["a", "b"])
    with pytest.raises(CycleError):
        codec.parse_poset({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]})


def test_cover_keys():
    assert codec.cover_key("12", "123") == "12,123"
    assert codec.split_cover_key("12,123") == ("12", "123")
    with pytest.raises(CodecError):
        codec.split_cover_key("12;123")


def test_coloring_payloads():
    p = diamond_poset()
    c = find_balanced_coloring(p)
    obj = codec.build_coloring(c)
    assert obj["edges"][0] == ["a", "b", -1]
    assert codec.parse_coloring(obj, p) == c
    with pytest.raises(CodecError):
        codec.parse_coloring({"edges": [["a", "b", "+"]]}, p)
    with pytest.raises(CodecError):
        codec.parse_coloring({"edges": [["a", "b", 1], ["a", "b", 1]]}, p)
    with pytest.raises(CodecError):
        codec.parse_coloring({"edges": [["a", "b"]]}, p)


def test_potential_payloads():
    p = diamond_poset()
    f = Potential(p, {"a": 1, "b": -1, "c": 1, "d": -1})
    obj = codec.build_potential(f)
    assert obj == {"values": [["a", 1], ["b", -1], ["c", 1], ["d", -1]]}
    assert codec.parse_potential(obj, p) == f


def test_functor_payloads():
    f = graded_diamond_functor()
    obj = codec.build_functor(f)
    assert obj["maps"]["a,b"] == [[1, 0]]
    assert obj["dims"]["a"] == [1, -1]
    g = codec.parse_functor(obj)
    assert dict(g.dims) == dict(f.dims)
    assert all(to_lists(g.maps[e]) == to_lists(f.maps[e]) for e in f.poset.covers)

    obj["ring"] = "Fp:3"
    assert codec.parse_functor(obj).ring.tag == "Fp:3"


def test_functor_payload_errors():
    obj = codec.build_functor(constant_functor(diamond_poset()))
    bad_key = dict(obj, maps={**obj["maps"], "a;z": [[1]]})
    with pytest.raises(CodecError):
        codec.parse_functor(bad_key)
    unknown = dict(obj, maps={**obj["maps"], "a,z": [[1]]})
    with pytest.raises(CodecError):
        codec.parse_functor(unknown)
    wrong_shape = dict(obj, maps={**obj["maps"], "a,b": [[1, 0]]})
    with pytest.raises(ShapeMismatch):
        codec.parse_functor(wrong_shape)
    with pytest.raises(CodecError):
        codec.parse_functor(dict(obj, dims={"a": "0"}))


def test_complex_payloads():
    f = graded_diamond_functor()
    cx = assemble(f, find_balanced_coloring(f.poset))
    obj = codec.build_complex(cx)
    assert sorted(obj["degrees"]) == ["0", "1", "2"]
    assert obj["blocks"]["1"] == [["b", 0, 1], ["c", 1, 1]]
    back = codec.parse_complex(obj)
    assert back.degree_range == cx.degree_range
    assert cohomology(back) == cohomology(cx)

    obj["differentials"]["1"] = [[1, 0]]
    with pytest.raises(DSquaredNonzero):
        codec.parse_complex(obj)
    with pytest.raises(CodecError):
        codec.parse_complex(dict(obj, degrees={"zero": [0]}))
    with pytest.raises(CodecError):
        codec.parse_complex(dict(obj, direction="sideways"))


def test_laurent_payloads():
    poly = LaurentPoly.from_dict({-3: 1, 1: -1})
    obj = codec.build_laurent(poly)
    assert obj == {"terms": [[-3, 1], [1, -1]], "text": "-q + q^-3"}
    assert codec.parse_laurent(obj) == poly
    assert codec.parse_laurent({"terms": [[1, 2], [1, -2]]}).is_zero()


def test_result_payloads():
    res = khovanov_homology(sample_diagram("trefoil"))
    obj = codec.build_result(res)
    assert obj["betti"] == {"-3": 1, "-2": 1, "-1": 0, "0": 2}
    assert [-3, -9, 1] in obj["graded_betti"]
    assert codec.parse_result(obj) == res
    with pytest.raises(CodecError):
        codec.parse_result(dict(obj, betti={"x": 1}))


def test_pd_payloads():
    assert codec.build_pd(sample_diagram("unknot")) == {"pd": [], "signs": []}
    assert codec.build_pd(sample_diagram("unlink2"))["loops"] == 2
    trefoil = codec.build_pd(sample_diagram("trefoil"))
    assert codec.parse_pd(trefoil) == sample_diagram("trefoil")
    with pytest.raises(MalformedPD):
        codec.parse_pd({"pd": [[1, 2, 3]], "signs": [1]})
    with pytest.raises(CodecError):
        codec.parse_pd({"pd": [[1, 1, 2, 2]], "signs": [True]})
    with pytest.raises(CodecError):
        codec.parse_pd({"pd": [7], "signs": [1]})
