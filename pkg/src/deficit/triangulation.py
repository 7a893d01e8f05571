"""Gluing-table triangulations of closed 3-manifolds.

A triangulation of K tetrahedra is stored as three (K, 4) integer arrays:
for face ``f`` of tetrahedron ``t`` (the face opposite vertex ``f``),
``tet[t, f]`` and ``face[t, f]`` name the face it is glued to and
``perm[t, f]`` is the index (see :mod:`deficit.perm`) of the vertex map from
``t`` to ``tet[t, f]``.  Unglued faces hold -1 and never survive validation.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import perm as P
from .errors import NonInvolution, NotManifold, NotSimplicial, ParseError, UnmatchedFace

STRICT = "strict"
LENIENT = "lenient"
MODES = (STRICT, LENIENT)


class _ParityUnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rel = [0] * n

    def find(self, x):
        par = 0
        root = x
        while self.parent[root] != root:
            par ^= self.rel[root]
            root = self.parent[root]
        # compress
        p = par
        while self.parent[x] != root:
            nxt, r = self.parent[x], self.rel[x]
            self.parent[x], self.rel[x] = root, p
            p ^= r
            x = nxt
        return root, par

    def union(self, a, b, flip=0):
        """Merge a and b with ``parity(a) ^ parity(b) == flip``.

        Returns False when they are already joined with the opposite parity.
        """
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == flip
        self.parent[rb] = ra
        self.rel[rb] = pa ^ pb ^ flip
        return True


@dataclass(frozen=True)
class FVector:
    n0: int
    n1: int
    n2: int
    n3: int

    @property
    def euler_characteristic(self):
        return self.n0 - self.n1 + self.n2 - self.n3

    def as_tuple(self):
        return (self.n0, self.n1, self.n2, self.n3)

    def satisfies_closed_identities(self):
        return (self.euler_characteristic == 0 and self.n2 == 2 * self.n3
                and self.n1 == self.n0 + self.n3)


class Skeleton:
    """Identified vertices, edges and triangles of a closed gluing table."""

    def __init__(self, tet, face, perm):
        K = tet.shape[0]
        self.K = K
        vuf = _ParityUnionFind(4 * K)
        euf = _ParityUnionFind(6 * K)
        tuf = _ParityUnionFind(4 * K)
        self.reversed_edges = False
        for t in range(K):
            for f in range(4):
                u, g, p = int(tet[t, f]), int(face[t, f]), int(perm[t, f])
                if u < 0 or (u, g) < (t, f):
                    continue
                tuf.union(4 * t + f, 4 * u + g)
                img = P.PERMS[p]
                for a in range(4):
                    if a != f:
                        vuf.union(4 * t + a, 4 * u + int(img[a]))
                for a in range(4):
                    for b in range(a + 1, 4):
                        if a == f or b == f:
                            continue
                        ia, ib = int(img[a]), int(img[b])
                        ok = euf.union(6 * t + int(P.EDGE_INDEX[a, b]),
                                       6 * u + int(P.EDGE_INDEX[ia, ib]),
                                       1 if ia > ib else 0)
                        if not ok:
                            self.reversed_edges = True

        def classes(uf, n, with_parity=False):
            ids = {}
            cls = np.empty(n, dtype=np.int64)
            par = np.zeros(n, dtype=np.int64)
            for x in range(n):
                r, pr = uf.find(x)
                cls[x] = ids.setdefault(r, len(ids))
                par[x] = pr
            return (cls, par, len(ids)) if with_parity else (cls, len(ids))

        vcls, self.n0 = classes(vuf, 4 * K)
        ecls, epar, self.n1 = classes(euf, 6 * K, with_parity=True)
        tcls, self.n2 = classes(tuf, 4 * K)
        self.vertex_class = vcls.reshape(K, 4)
        self.edge_class = ecls.reshape(K, 6)
        self.edge_parity = epar.reshape(K, 6)
        self.triangle_class = tcls.reshape(K, 4)

        self.edge_degree = np.bincount(ecls, minlength=self.n1)
        self.vertex_corners = np.bincount(vcls, minlength=self.n0)

        # endpoints of each edge class, in the orientation of its root
        ends = -np.ones((self.n1, 2), dtype=np.int64)
        link_vertices = [set() for _ in range(self.n0)]
        for t in range(K):
            for e in range(6):
                a, b = P.EDGE_VERTS[e]
                c, par = self.edge_class[t, e], self.edge_parity[t, e]
                va, vb = self.vertex_class[t, a], self.vertex_class[t, b]
                ends[c, par] = va
                ends[c, 1 - par] = vb
                link_vertices[va].add((int(c), int(par)))
                link_vertices[vb].add((int(c), int(1 - par)))
        self.edge_ends = ends
        # closed vertex link: V - E + F with E = 3F/2
        self.link_euler = np.array(
            [len(link_vertices[v]) - self.vertex_corners[v] // 2 for v in range(self.n0)],
            dtype=np.int64)

        tri_edges = {}
        for t in range(K):
            for f in range(4):
                c = int(self.triangle_class[t, f])
                if c not in tri_edges:
                    es = [int(self.edge_class[t, P.EDGE_INDEX[a, b]])
                          for a in range(4) for b in range(a + 1, 4) if f not in (a, b)]
                    tri_edges[c] = tuple(sorted(es))
        self.triangle_edges = [tri_edges[c] for c in range(self.n2)]

    @property
    def f_vector(self):
        return FVector(self.n0, self.n1, self.n2, self.K)


def _normalise_entry(entry, K, t, f):
    if entry is None:
        return -1, -1, -1
    if isinstance(entry, str):
        parts = entry.split(":")
        if len(parts) != 3:
            raise ParseError(f"bad gluing entry {entry!r} at ({t},{f})")
        u, g, p = parts
        entry = (int(u), int(g), p)
    try:
        u, g, p = entry
    except (TypeError, ValueError):
        raise ParseError(f"bad gluing entry {entry!r} at ({t},{f})") from None
    u, g = int(u), int(g)
    if isinstance(p, str):
        try:
            p = P.perm_index(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    elif isinstance(p, (tuple, list, np.ndarray)):
        p = P.perm_index(p)
    p = int(p)
    if not (0 <= u < K and 0 <= g < 4 and 0 <= p < 24):
        raise ParseError(f"gluing entry out of range at ({t},{f}): {entry!r}")
    if P.PERMS[p][f] != g:
        raise NonInvolution(
            f"face ({t},{f}) is sent to face {g} but its permutation maps {f} to {P.PERMS[p][f]}")
    return u, g, p


class Triangulation:
    """Validated closed 3-manifold triangulation.  Immutable."""

    __slots__ = ("tet", "face", "perm", "__dict__")

    def __init__(self, tet, face, perm, mode=LENIENT, check=True):
        tet = np.array(tet, dtype=np.int64).reshape(-1, 4)
        face = np.array(face, dtype=np.int64).reshape(-1, 4)
        perm = np.array(perm, dtype=np.int64).reshape(-1, 4)
        for a in (tet, face, perm):
            a.setflags(write=False)
        object.__setattr__(self, "tet", tet)
        object.__setattr__(self, "face", face)
        object.__setattr__(self, "perm", perm)
        if check:
            validate(self, mode)

    def __setattr__(self, name, value):
        raise AttributeError("Triangulation is immutable")

    @property
    def size(self):
        return int(self.tet.shape[0])

    K = size

    @cached_property
    def skeleton(self):
        return Skeleton(self.tet, self.face, self.perm)

    def gluing(self, t, f):
        return int(self.tet[t, f]), int(self.face[t, f]), int(self.perm[t, f])

    def entries(self):
        """Rows of ``(t', f', perm_index)`` tuples."""
        return [[self.gluing(t, f) for f in range(4)] for t in range(self.size)]

    def relabel(self, tet_map, vertex_maps):
        """Isomorphic copy: tetrahedron t becomes ``tet_map[t]`` and its vertex
        v becomes vertex ``PERMS[vertex_maps[t]][v]``."""
        K = self.size
        tet = np.empty((K, 4), dtype=np.int64)
        face = np.empty((K, 4), dtype=np.int64)
        perm = np.empty((K, 4), dtype=np.int64)
        for t in range(K):
            s = vertex_maps[t]
            for f in range(4):
                u, g, p = self.gluing(t, f)
                su = vertex_maps[u]
                nt, nf = tet_map[t], P.apply(s, f)
                tet[nt, nf] = tet_map[u]
                face[nt, nf] = P.apply(su, g)
                perm[nt, nf] = P.compose(su, P.compose(p, P.inverse(s)))
        return Triangulation(tet, face, perm, check=False)

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return (np.array_equal(self.tet, other.tet) and np.array_equal(self.face, other.face)
                and np.array_equal(self.perm, other.perm))

    def __hash__(self):
        return hash((self.tet.tobytes(), self.face.tobytes(), self.perm.tobytes()))

    def __repr__(self):
        return f"<Triangulation K={self.size} f={self.skeleton.f_vector.as_tuple()}>"

    def to_text(self):
        return format_triangulation(self)

    # convenience accessors
    def f_vector(self):
        return f_vector(self)

    def mean_edge_degree(self):
        return mean_edge_degree(self)

    def isomorphism_signature(self):
        from .isosig import isomorphism_signature
        return isomorphism_signature(self)


def build_from_gluings(table, mode=LENIENT):
    """Build and validate a triangulation from K rows of four gluings.

    Each gluing is ``None`` (unglued), a ``"t:f:pppp"`` string or a
    ``(t, f, perm)`` triple where perm is an index or an image string.
    """
    rows = list(table)
    if not rows:
        raise ParseError("a triangulation needs at least one tetrahedron")
    K = len(rows)
    tet = np.empty((K, 4), dtype=np.int64)
    face = np.empty((K, 4), dtype=np.int64)
    perm = np.empty((K, 4), dtype=np.int64)
    for t, row in enumerate(rows):
        row = list(row)
        if len(row) != 4:
            raise ParseError(f"tetrahedron {t} has {len(row)} gluings, expected 4")
        for f, entry in enumerate(row):
            tet[t, f], face[t, f], perm[t, f] = _normalise_entry(entry, K, t, f)
    return Triangulation(tet, face, perm, mode=mode)


def _check_gluings(tet, face, perm):
    K = tet.shape[0]
    for t in range(K):
        for f in range(4):
            u, g, p = int(tet[t, f]), int(face[t, f]), int(perm[t, f])
            if u < 0:
                raise UnmatchedFace(f"face {f} of tetrahedron {t} is not glued")
            if (u, g) == (t, f):
                raise NonInvolution(f"face ({t},{f}) is glued to itself")
            if P.PERMS[p][f] != g:
                raise NonInvolution(f"face ({t},{f}) has a permutation not sending {f} to {g}")
            if tet[u, g] != t or face[u, g] != f or perm[u, g] != P.INVERSE[p]:
                raise NonInvolution(
                    f"face ({t},{f}) -> ({u},{g}) is not matched by the reverse gluing")


def _connected(tet):
    K = tet.shape[0]
    seen = {0}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            u = int(tet[t, f])
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == K


def check_simplicial(sk):
    """Raise NotSimplicial unless the identifications form a simplicial complex
    in the sense used by strict mode."""
    ends = sk.edge_ends
    for c in range(sk.n1):
        if ends[c, 0] == ends[c, 1]:
            raise NotSimplicial(f"edge {c} joins vertex {ends[c, 0]} to itself")
    seen = {}
    for c in range(sk.n1):
        key = tuple(sorted((int(ends[c, 0]), int(ends[c, 1]))))
        if key in seen:
            raise NotSimplicial(f"edges {seen[key]} and {c} share both endpoints {key}")
        seen[key] = c
    seen = {}
    for c, es in enumerate(sk.triangle_edges):
        if es in seen:
            raise NotSimplicial(f"triangles {seen[es]} and {c} share all three edges")
        seen[es] = c


def validate(T, mode=LENIENT):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    _check_gluings(T.tet, T.face, T.perm)
    if not _connected(T.tet):
        raise NotManifold("triangulation is disconnected")
    sk = T.skeleton
    if sk.reversed_edges:
        raise NotManifold("an edge is identified with itself in reverse")
    bad = [v for v in range(sk.n0) if sk.link_euler[v] != 2]
    if bad:
        raise NotManifold(
            f"vertex {bad[0]} has link of Euler characteristic {sk.link_euler[bad[0]]}, not a sphere")
    if mode == STRICT:
        check_simplicial(sk)
    return T


def is_valid(T, mode=LENIENT):
    try:
        validate(T, mode)
    except (NonInvolution, UnmatchedFace, NotManifold, NotSimplicial):
        return False
    return True


def f_vector(T):
    return T.skeleton.f_vector


def edge_degrees(T):
    """Degree of every identified edge (tetrahedra around it, with multiplicity)."""
    return T.skeleton.edge_degree.copy()


def mean_edge_degree(T):
    """Exact mean edge degree 6*n3/n1."""
    sk = T.skeleton
    return Fraction(6 * T.size, sk.n1)


# ---------------------------------------------------------------------------
# text format


def format_triangulation(T):
    lines = [str(T.size)]
    for t in range(T.size):
        row = []
        for f in range(4):
            u, g, p = T.gluing(t, f)
            row.append("-" if u < 0 else f"{u}:{g}:{P.perm_string(p)}")
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"


def _parse_block(lines, mode):
    try:
        K = int(lines[0])
    except ValueError:
        raise ParseError(f"expected tetrahedron count, got {lines[0]!r}") from None
    if K < 1:
        raise ParseError("tetrahedron count must be positive")
    if len(lines) < K + 1:
        raise ParseError(f"expected {K} gluing lines, got {len(lines) - 1}")
    rows = []
    for line in lines[1:K + 1]:
        rows.append([None if tok == "-" else tok for tok in line.split()])
    return build_from_gluings(rows, mode=mode), lines[K + 1:]


def parse_triangulations(text, mode=LENIENT):
    """Parse every triangulation block in ``text``."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    out = []
    while lines:
        T, lines = _parse_block(lines, mode)
        out.append(T)
    if not out:
        raise ParseError("no triangulation found")
    return out


def parse_triangulation(text, mode=LENIENT):
    return parse_triangulations(text, mode)[0]


def read_triangulation(path, mode=LENIENT):
    with open(path, encoding="utf-8") as fh:
        return parse_triangulation(fh.read(), mode)


# ---------------------------------------------------------------------------
# a few standard triangulations


def boundary_4simplex():
    """The boundary of the 4-simplex: tetrahedron i omits vertex i of {0..4}."""
    facets = [[v for v in range(5) if v != i] for i in range(5)]
    return from_facets(facets, mode=STRICT)


def from_facets(facets, mode=LENIENT):
    """Triangulation from a list of vertex 4-tuples, gluing facets sharing a
    triangle.  Local vertex k of tetrahedron t is ``facets[t][k]``."""
    facets = [list(f) for f in facets]
    K = len(facets)
    owners = {}
    for t, verts in enumerate(facets):
        for f in range(4):
            key = tuple(sorted(verts[k] for k in range(4) if k != f))
            owners.setdefault(key, []).append((t, f))
    rows = [[None] * 4 for _ in range(K)]
    for key, occ in owners.items():
        if len(occ) != 2:
            continue
        (t, f), (u, g) = occ
        images = [0] * 4
        where = {v: k for k, v in enumerate(facets[u])}
        for k in range(4):
            images[k] = g if k == f else where[facets[t][k]]
        p = P.perm_index(images)
        rows[t][f] = (u, g, p)
        rows[u][g] = (t, f, P.inverse(p))
    return build_from_gluings(rows, mode=mode)
