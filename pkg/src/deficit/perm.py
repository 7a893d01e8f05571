"""Permutations of {0,1,2,3}, indexed 0..23 in lexicographic order of their
image strings ("0123" is 0, "0132" is 1, ..., "3210" is 23)."""
from itertools import permutations

import numpy as np

PERMS = np.array(list(permutations(range(4))), dtype=np.int64)
N_PERMS = 24
IDENTITY = 0

_index = {tuple(int(x) for x in p): i for i, p in enumerate(PERMS)}

INVERSE = np.empty(24, dtype=np.int64)
# COMPOSE[a, b] is the index of x -> a[b[x]]
COMPOSE = np.empty((24, 24), dtype=np.int64)
SIGN = np.empty(24, dtype=np.int64)
for _a in range(24):
    _pa = PERMS[_a]
    _inv = [0] * 4
    for _x in range(4):
        _inv[_pa[_x]] = _x
    INVERSE[_a] = _index[tuple(_inv)]
    for _b in range(24):
        COMPOSE[_a, _b] = _index[tuple(int(_pa[PERMS[_b][_x]]) for _x in range(4))]
    _inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if _pa[i] > _pa[j])
    SIGN[_a] = -1 if _inversions % 2 else 1

# FACE_PERMS[f, g] lists (ascending) the six perms sending vertex f to vertex g,
# i.e. the gluings of face f onto face g.
FACE_PERMS = np.empty((4, 4, 6), dtype=np.int64)
for _f in range(4):
    for _g in range(4):
        FACE_PERMS[_f, _g] = [i for i in range(24) if PERMS[i][_f] == _g]

# local edge numbering; EDGE_INDEX[a, b] is the edge joining vertices a and b
EDGE_VERTS = np.array([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], dtype=np.int64)
EDGE_INDEX = -np.ones((4, 4), dtype=np.int64)
for _e, (_a, _b) in enumerate(EDGE_VERTS):
    EDGE_INDEX[_a, _b] = EDGE_INDEX[_b, _a] = _e


def perm_index(images):
    """Index of the permutation given by its images (sequence or string)."""
    if isinstance(images, str):
        images = [int(c) for c in images]
    try:
        return _index[tuple(int(x) for x in images)]
    except KeyError:
        raise ValueError(f"not a permutation of 0..3: {images!r}") from None


def perm_string(idx):
    return "".join(str(int(x)) for x in PERMS[idx])


def compose(a, b):
    return int(COMPOSE[a, b])


def inverse(a):
    return int(INVERSE[a])


def apply(a, x):
    return int(PERMS[a][x])
