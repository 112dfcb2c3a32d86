# src/posets/samples.py
#
# Facet lists for the sample simplicial complexes used by tests and the CLI.

from typing import Dict, List, Tuple

from src.common.errors import ParameterError, require

Facets = List[Tuple[int, ...]]

# 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7 (14 triangles, 21 edges)
TORUS_FACETS: Facets = sorted(
    tuple(sorted({i, (i + a) % 7, (i + 3) % 7})) for i in range(7) for a in (1, 2)
)

# boundary of the octahedron, antipodal pairs (1,2) (3,4) (5,6)
OCTAHEDRON_FACETS: Facets = [(a, b, c) for a in (1, 2) for b in (3, 4) for c in (5, 6)]

# boundary of a hexagon as a 1-dimensional complex
HEXAGON_FACETS: Facets = [(i, i % 6 + 1) for i in range(1, 7)]

TRIANGLE_FACETS: Facets = [(1, 2), (1, 3), (2, 3)]

SIMPLEX_FACETS: Facets = [(1, 2, 3)]

_SAMPLES: Dict[str, Facets] = {
    "torus": TORUS_FACETS,
    "octahedron": OCTAHEDRON_FACETS,
    "hexagon": HEXAGON_FACETS,
    "triangle": TRIANGLE_FACETS,
    "simplex": SIMPLEX_FACETS,
}


def sample_facets(name: str) -> Facets:
    require(name in _SAMPLES, ParameterError, f"Unknown sample complex {name!r}; known: {sorted(_SAMPLES)}")
    return list(_SAMPLES[name])
