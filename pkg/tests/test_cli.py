import io
import json

from src.cli import codec
from src.cli.main import main
from src.common.constants import EXIT_BAD_PARAMS, EXIT_BAD_POSET, EXIT_INFEASIBLE, EXIT_OK
from src.homology.functor import constant_functor
from src.posets.constructors import chain_poset, diamond_poset
from tests.corpus import b3, br3, br_pinch

DOUBLING = {
    "poset": {"elements": ["0", "1"], "covers": [["0", "1"]]},
    "dims": {"0": [0], "1": [0]},
    "maps": {"0,1": [[2]]},
}


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(codec.dumps(obj), encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if code == EXIT_OK and captured.out else None
    return code, out, captured.err


# -------------------------
# build
# -------------------------
def test_build_families(capsys, tmp_path):
    code, out, _ = _run(capsys, "build", "boolean", "3")
    assert code == EXIT_OK and len(out["elements"]) == 8 and len(out["covers"]) == 12
    _, out, _ = _run(capsys, "build", "bruhat", "3")
    assert "321" in out["elements"]
    _, out, _ = _run(capsys, "build", "simplicial", "torus", "--no-empty")
    assert len(out["elements"]) == 42
    _, out, _ = _run(capsys, "build", "polygon", "5", "--no-interior")
    assert len(out["elements"]) == 11 and "f" not in out["elements"]

    facets = _write(tmp_path, "facets.json", [[1, 2], [2, 3]])
    _, out, _ = _run(capsys, "build", "simplicial", facets)
    assert len(out["elements"]) == 6


def test_build_from_poset_files(capsys, tmp_path):
    br = _write(tmp_path, "br3.json", codec.build_poset(br3()))
    code, out, _ = _run(capsys, "build", "pinch", br, br)
    assert code == EXIT_OK and len(out["elements"]) == 10
    _, out, _ = _run(capsys, "build", "adjoin-top", br, "--label", "T")
    assert "T" in out["elements"]
    _, out, _ = _run(capsys, "build", "adjoin-bottom", br)
    assert "BOT" in out["elements"]


def test_build_bad_parameters(capsys):
    assert _run(capsys, "build", "boolean", "x")[0] == EXIT_BAD_PARAMS
    assert _run(capsys, "build", "boolean", "21")[0] == EXIT_BAD_PARAMS
    assert _run(capsys, "build", "boolean")[0] == EXIT_BAD_PARAMS
    assert _run(capsys, "build", "klein")[0] == EXIT_BAD_PARAMS
    assert _run(capsys, "build", "simplicial", "no-such-file.json")[0] == EXIT_BAD_PARAMS
    assert main(["--help"]) == EXIT_OK
    assert "usage" in capsys.readouterr().out


# -------------------------
# analyze
# -------------------------
def test_analyze_reports(capsys, tmp_path):
    code, out, _ = _run(capsys, "analyze", _write(tmp_path, "b3.json", codec.build_poset(b3())))
    assert code == EXIT_OK
    assert out["thin"] and out["eulerian"] and out["diamond_transitive"] and out["balanced_colorable"]
    assert out["n_elements"] == 8 and out["n_diamonds"] == 6

    _, out, _ = _run(capsys, "analyze", _write(tmp_path, "pinch.json", codec.build_poset(br_pinch())))
    assert out["diamond_transitive"] is False
    assert out["pinch_witness"]["x"] == "BOT" and out["pinch_witness"]["y"] == "TOP"

    _, out, _ = _run(capsys, "analyze", _write(tmp_path, "chain.json", codec.build_poset(chain_poset(3))))
    assert out["thin"] is False and out["balanced_colorable"] is None


def test_analyze_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(codec.dumps(codec.build_poset(diamond_poset()))))
    code, out, _ = _run(capsys, "analyze", "-")
    assert code == EXIT_OK and out["n_diamonds"] == 1


def test_analyze_bad_input(capsys, tmp_path):
    cycle = {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}
    code, _, err = _run(capsys, "analyze", _write(tmp_path, "cycle.json", cycle))
    assert code == EXIT_BAD_POSET and "cycle" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert _run(capsys, "analyze", str(broken))[0] == EXIT_BAD_PARAMS


# -------------------------
# cohomology
# -------------------------
def test_cohomology_of_a_functor(capsys, tmp_path):
    path = _write(tmp_path, "doubling.json", DOUBLING)
    code, out, _ = _run(capsys, "cohomology", path)
    assert code == EXIT_OK
    assert out["result"]["betti"] == {"0": 0, "1": 0}
    assert out["result"]["torsion"] == {"0": [], "1": [2]}
    assert out["alternator_check"] is True
    assert out["euler_characteristic"]["text"] == "0"

    _, out, _ = _run(capsys, "cohomology", path, "--ring", "Fp:2")
    assert out["result"]["betti"] == {"0": 1, "1": 1} and out["result"]["ring"] == "Fp:2"


def test_cohomology_options(capsys, tmp_path):
    path = _write(tmp_path, "b3.json", codec.build_functor(constant_functor(b3())))
    code, out, _ = _run(capsys, "cohomology", path, "--graded", "--complex", "--seed", "3")
    assert code == EXIT_OK
    assert set(out["result"]["betti"].values()) == {0}
    assert "poincare" in out and out["complex"]["degrees"]["0"] == [0]
    assert out["alternator_check"] is True

    _, out, _ = _run(capsys, "cohomology", path, "--direction", "contravariant")
    assert out["result"]["direction"] == "contravariant"
    assert sorted(out["result"]["betti"]) == ["0", "1", "2", "3"]


def test_cohomology_with_a_supplied_coloring(capsys, tmp_path):
    functor = _write(tmp_path, "diamond.json", codec.build_functor(constant_functor(diamond_poset())))
    flat = {"edges": [["a", "b", 1], ["a", "c", 1], ["b", "d", 1], ["c", "d", 1]]}
    code, _, err = _run(capsys, "cohomology", functor, "--coloring", _write(tmp_path, "flat.json", flat))
    assert code == EXIT_INFEASIBLE and "NotBalanced" in err

    good = {"edges": [["a", "b", 1], ["a", "c", 1], ["b", "d", 1], ["c", "d", -1]]}
    code, out, _ = _run(capsys, "cohomology", functor, "--coloring", _write(tmp_path, "good.json", good))
    assert code == EXIT_OK and out["coloring"] == good


def test_cohomology_infeasible(capsys, tmp_path):
    path = _write(tmp_path, "chain.json", codec.build_functor(constant_functor(chain_poset(3))))
    code, _, err = _run(capsys, "cohomology", path)
    assert code == EXIT_INFEASIBLE and "NotThin" in err
    assert _run(capsys, "cohomology", path, "--ring", "R")[0] == EXIT_BAD_PARAMS


def test_khovanov_samples(capsys):
    code, out, _ = _run(capsys, "cohomology", "--khovanov", "trefoil", "--graded")
    assert code == EXIT_OK
    assert out["jones_check"] is True
    assert out["result"]["betti"] == {"-3": 1, "-2": 1, "-1": 0, "0": 2}
    assert out["jones"]["terms"] == [[-9, -1], [-5, 1], [-3, 1], [-1, 1]]
    assert set(out["poincare"]) == {"-3", "-2", "0"}


def test_khovanov_from_a_pd_file(capsys, tmp_path):
    hopf = {"pd": [[4, 1, 3, 2], [2, 3, 1, 4]], "signs": [-1, -1]}
    code, out, _ = _run(capsys, "cohomology", "--khovanov", _write(tmp_path, "hopf.json", hopf))
    assert code == EXIT_OK and out["jones_check"] is True
    assert out["diagram"] == hopf

    bad = {"pd": [[1, 2, 3, 4]], "signs": [1]}
    assert _run(capsys, "cohomology", "--khovanov", _write(tmp_path, "bad.json", bad))[0] == EXIT_BAD_PARAMS


def test_out_file(capsys, tmp_path):
    target = tmp_path / "poset.json"
    code, out, _ = _run(capsys, "--out", str(target), "build", "boolean", "2")
    assert code == EXIT_OK and out is None
    assert len(json.loads(target.read_text(encoding="utf-8"))["elements"]) == 4
