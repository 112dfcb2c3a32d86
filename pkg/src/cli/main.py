# src/cli/main.py
#
# python -m src.cli.main [--out FILE] [--log-level LEVEL] {build,analyze,cohomology} ...
# JSON in (file path or "-" for stdin), JSON out. Exit codes: 0 ok, 2 bad parameters,
# 3 bad poset, 4 mathematically infeasible.

import argparse
import random
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.common.constants import (
    DIRECTION_COVARIANT, EXIT_BAD_PARAMS, EXIT_BAD_POSET, EXIT_INFEASIBLE, EXIT_OK,
    RESERVED_BOTTOM, RESERVED_TOP, SAMPLE_COMPLEXES, SAMPLE_DIAGRAMS, VALID_DIRECTIONS,
)
from src.common.errors import (
    NoBalancedColoring, NotTransitiveNoCleanWitness, ParameterError, PosetInputError, ThinPosetError, require,
)
from src.common.linalg import Ring
from src.common.logging_utils import LOG_LEVEL, get_logger, setup_logging
from src.homology.alternators import functor_alternator
from src.homology.complex import assemble, cohomology, euler_characteristic
from src.homology.functor import FreeFunctor
from src.homology.khovanov import jones_check, khovanov_homology, sample_diagram, unnormalized_jones
from src.posets.coloring import find_balanced_coloring, random_central_coloring
from src.posets.constructors import (
    adjoin_bottom, adjoin_top, boolean_lattice, bruhat_order, face_poset_simplicial, pinch_product,
    polygon_face_poset,
)
from src.posets.core import Poset, is_eulerian
from src.posets.diamonds import diamond_report, pinch_witness
from src.posets.samples import sample_facets

from . import codec

log = get_logger("cli.main")

FAMILIES = ("boolean", "bruhat", "simplicial", "polygon", "pinch", "adjoin-top", "adjoin-bottom")


# -------------------------
# Input / output
# -------------------------
def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ParameterError(f"Cannot read {source}: {e.strerror}") from e


def _emit(obj: Any, out: Optional[str]) -> None:
    text = codec.dumps(obj) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
        log.info(f"Wrote {len(text)} bytes to {out}")
    else:
        sys.stdout.write(text)


def _int_arg(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError as e:
        raise ParameterError(f"{what} must be an integer, got {value!r}") from e


def _expect(args: List[str], n: int, family: str) -> None:
    require(len(args) == n, ParameterError, f"'build {family}' takes {n} argument(s), got {len(args)}")


# -------------------------
# build
# -------------------------
def build(ns: argparse.Namespace) -> Poset:
    family, args = ns.family, ns.args
    if family in ("boolean", "bruhat"):
        _expect(args, 1, family)
        n = _int_arg(args[0], "n")
        return boolean_lattice(n) if family == "boolean" else bruhat_order(n)
    if family == "simplicial":
        _expect(args, 1, family)
        src = args[0]
        facets = sample_facets(src) if src in SAMPLE_COMPLEXES else codec.loads(_read(src))
        require(isinstance(facets, list) and all(isinstance(f, list) for f in facets), ParameterError,
                "Simplicial input must be a JSON list of facet vertex lists")
        return face_poset_simplicial(facets, include_empty=not ns.no_empty)
    if family == "polygon":
        _expect(args, 1, family)
        return polygon_face_poset(_int_arg(args[0], "k"), include_empty=not ns.no_empty,
                                  include_interior=not ns.no_interior)
    if family == "pinch":
        _expect(args, 2, family)
        left, right = (codec.parse_text(_read(a), codec.parse_poset) for a in args)
        return pinch_product(left, right)
    if family == "adjoin-top":
        _expect(args, 1, family)
        return adjoin_top(codec.parse_text(_read(args[0]), codec.parse_poset), ns.label or RESERVED_TOP)
    _expect(args, 1, family)
    return adjoin_bottom(codec.parse_text(_read(args[0]), codec.parse_poset), ns.label or RESERVED_BOTTOM)


# -------------------------
# analyze
# -------------------------
def analyze(p: Poset) -> Dict[str, Any]:
    report: Dict[str, Any] = {"graded": True, "n_elements": len(p)}
    report.update(diamond_report(p))
    report["eulerian"] = is_eulerian(p).ok
    if not report["thin"]:
        report["balanced_colorable"] = None
        return report
    report["balanced_colorable"] = find_balanced_coloring(p) is not None
    if not report["diamond_transitive"]:
        try:
            w = pinch_witness(p)
            report["pinch_witness"] = {"x": w.x, "y": w.y, "ids_a": list(w.ids_a), "ids_b": list(w.ids_b)}
        except NotTransitiveNoCleanWitness:
            report["pinch_witness"] = None
    return report


# -------------------------
# cohomology
# -------------------------
def functor_cohomology(ns: argparse.Namespace) -> Dict[str, Any]:
    f = codec.parse_text(_read(ns.input), codec.parse_functor)
    if ns.ring:
        f = FreeFunctor(f.poset, f.dims, f.maps, Ring.parse(ns.ring))
    p = f.poset
    if ns.coloring:
        c = codec.parse_coloring(codec.loads(_read(ns.coloring)), p)
    else:
        c = find_balanced_coloring(p)
        require(c is not None, NoBalancedColoring, f"No balanced coloring exists on {p!r}")
    if ns.seed is not None:
        c = c * random_central_coloring(p, random.Random(ns.seed))

    cx = assemble(f, c, ns.direction)
    result = cohomology(cx)
    chi = euler_characteristic(cx, result)
    alternator = functor_alternator(f)
    if chi != alternator:
        log.warning(f"Euler characteristic {chi} differs from the rank alternator {alternator}")
    out: Dict[str, Any] = {
        "result": codec.build_result(result),
        "coloring": codec.build_coloring(c),
        "euler_characteristic": codec.build_laurent(chi),
        "rank_alternator": codec.build_laurent(alternator),
        "alternator_check": chi == alternator,
    }
    if ns.graded:
        out["poincare"] = {str(k): codec.build_laurent(v) for k, v in result.poincare_table().items()}
    if ns.complex:
        out["complex"] = codec.build_complex(cx)
    return out


def khovanov_cohomology(ns: argparse.Namespace) -> Dict[str, Any]:
    src = ns.khovanov
    d = sample_diagram(src) if src in SAMPLE_DIAGRAMS else codec.parse_text(_read(src), codec.parse_pd)
    result = khovanov_homology(d, ring=Ring.parse(ns.ring or "Z"))
    out: Dict[str, Any] = {
        "diagram": codec.build_pd(d),
        "result": codec.build_result(result),
        "euler_characteristic": codec.build_laurent(result.euler_characteristic()),
        "jones": codec.build_laurent(unnormalized_jones(d)),
        "jones_check": jones_check(d, result),
    }
    if ns.graded:
        out["poincare"] = {str(k): codec.build_laurent(v) for k, v in result.poincare_table().items()}
    return out


# -------------------------
# Parser
# -------------------------
def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thinposets", description="Thin posets, colorings and cohomology")
    parser.add_argument("--out", default=None, help="Write JSON here instead of stdout")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="DEBUG / INFO / WARNING / ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="Construct a poset and print its JSON")
    b.add_argument("family", choices=FAMILIES)
    b.add_argument("args", nargs="*", help="n / k / facet file or sample name / poset files")
    b.add_argument("--no-empty", action="store_true", help="Omit the empty face (simplicial, polygon)")
    b.add_argument("--no-interior", action="store_true", help="Omit the 2-cell (polygon)")
    b.add_argument("--label", default=None, help="Fresh id for adjoin-top / adjoin-bottom")

    a = sub.add_parser("analyze", help="Report thinness, Eulerianity, diamond transitivity, colorability")
    a.add_argument("input", nargs="?", default="-")

    c = sub.add_parser("cohomology", help="Cohomology of a functor, or Khovanov homology of a diagram")
    c.add_argument("input", nargs="?", default="-", help="Functor JSON")
    c.add_argument("--coloring", default=None, help="Coloring JSON (default: solver's balanced coloring)")
    c.add_argument("--ring", default=None, help="Z, Q or Fp:<prime>")
    c.add_argument("--direction", default=DIRECTION_COVARIANT, choices=sorted(VALID_DIRECTIONS))
    c.add_argument("--graded", action="store_true", help="Include per-degree graded ranks")
    c.add_argument("--complex", action="store_true", help="Include the assembled complex")
    c.add_argument("--seed", type=int, default=None, help="Twist the coloring by a random central coloring")
    c.add_argument("--khovanov", default=None, metavar="PD",
                   help=f"PD JSON file or sample name ({', '.join(SAMPLE_DIAGRAMS)})")
    return parser


def run(ns: argparse.Namespace) -> Any:
    if ns.command == "build":
        return codec.build_poset(build(ns))
    if ns.command == "analyze":
        return analyze(codec.parse_text(_read(ns.input), codec.parse_poset))
    if ns.khovanov:
        return khovanov_cohomology(ns)
    return functor_cohomology(ns)


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_BAD_PARAMS
    setup_logging(ns.log_level)

    try:
        _emit(run(ns), ns.out)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except PosetInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_POSET
    except ThinPosetError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
