# src/common/constants.py

# Practical construction bounds
MAX_BOOLEAN_N = 20
MAX_BRUHAT_N = 6

# Orbit BFS aborts above this many chain-move steps per interval
MAX_MOVE_STEPS = 10**6

# Above this many elements a bitset up-set/down-set index is built
INDEX_THRESHOLD = 10**4

# Reserved element ids
RESERVED_BOTTOM = "BOT"
RESERVED_TOP = "TOP"
EMPTY_FACE = "∅"
PINCH_LEFT_PREFIX = "L."
PINCH_RIGHT_PREFIX = "R."
UNION_LEFT_PREFIX = "A."
UNION_RIGHT_PREFIX = "B."

# Cover keys in functor JSON are "x,y"
COVER_KEY_SEP = ","

# Ring tags accepted by FreeFunctor / CLI
RING_INTEGERS = "Z"
RING_RATIONALS = "Q"
RING_PRIME_PREFIX = "Fp:"

# Complex directions
DIRECTION_COVARIANT = "covariant"
DIRECTION_CONTRAVARIANT = "contravariant"
VALID_DIRECTIONS = {DIRECTION_COVARIANT, DIRECTION_CONTRAVARIANT}

# Edge / potential values
VALID_SIGNS = {1, -1}

# CLI exit codes
EXIT_OK = 0
EXIT_BAD_PARAMS = 2
EXIT_BAD_POSET = 3
EXIT_INFEASIBLE = 4

# Sample data names (CLI `build simplicial <name>`, `cohomology --khovanov <name>`)
SAMPLE_COMPLEXES = ("torus", "octahedron", "hexagon", "triangle", "simplex")
SAMPLE_DIAGRAMS = ("unknot", "unlink2", "hopf", "trefoil", "figure8")
