"""Pachner moves on gluing tables.

Every move replaces a small ball of tetrahedra by another triangulation of
the same ball with the same boundary pattern.  The region is described by
abstract vertex labels: each old tetrahedron lists the label of each of its
local vertices, each new tetrahedron lists its four labels.  Faces whose label
sets occur twice are interior to the region; the rest form its boundary and
are re-attached to whatever they were glued to before.
"""
from . import perm as P
from .errors import MoveNotApplicable
from .triangulation import LENIENT, build_from_gluings

KINDS = ("2-3", "3-2", "1-4", "4-1")


def _face_key(labels, f):
    return frozenset(labels[k] for k in range(4) if k != f)


def _label_perm(src_labels, dst_labels, src_face, dst_face):
    """Perm sending local vertex k of src to the dst vertex with the same label;
    the vertex opposite ``src_face`` goes to ``dst_face``."""
    where = {lab: k for k, lab in enumerate(dst_labels)}
    img = [0] * 4
    for k in range(4):
        img[k] = dst_face if k == src_face else where[src_labels[k]]
    return P.perm_index(img)


def _retriangulate(T, old_tets, old_labels, new_labels):
    if len(set(old_tets)) != len(old_tets):
        raise MoveNotApplicable("move region uses a tetrahedron twice")
    K = T.size
    region = {t: i for i, t in enumerate(old_tets)}
    keep = [t for t in range(K) if t not in region]
    index = {t: i for i, t in enumerate(keep)}
    base = len(keep)
    rows = [[None] * 4 for _ in range(base + len(new_labels))]
    for t in keep:
        for f in range(4):
            u, g, p = T.gluing(t, f)
            if u in index:
                rows[index[t]][f] = (index[u], g, p)

    old_faces = {}
    for i, labels in enumerate(old_labels):
        for f in range(4):
            old_faces.setdefault(_face_key(labels, f), []).append((i, f))
    new_faces = {}
    for j, labels in enumerate(new_labels):
        for g in range(4):
            new_faces.setdefault(_face_key(labels, g), []).append((j, g))

    boundary_old = {k for k, v in old_faces.items() if len(v) == 1}
    boundary_new = {k for k, v in new_faces.items() if len(v) == 1}
    if boundary_old != boundary_new or any(len(v) > 2 for v in new_faces.values()):
        raise MoveNotApplicable("region boundary does not match")

    for key, occ in old_faces.items():
        if len(occ) == 2:
            (i, f), (i2, f2) = occ
            u, g, p = T.gluing(old_tets[i], f)
            if (u, g) != (old_tets[i2], f2) or p != _label_perm(old_labels[i], old_labels[i2], f, f2):
                raise MoveNotApplicable("region is not glued as the move requires")
        elif len(occ) > 2:
            raise MoveNotApplicable("degenerate move region")

    for key, occ in new_faces.items():
        if len(occ) == 2:
            (j, g), (j2, g2) = occ
            p = _label_perm(new_labels[j], new_labels[j2], g, g2)
            rows[base + j][g] = (base + j2, g2, p)
            rows[base + j2][g2] = (base + j, g, P.inverse(p))

    for key in boundary_new:
        (j, g), = new_faces[key]
        (i, f), = old_faces[key]
        # new local vertex -> old local vertex
        phi = _label_perm(new_labels[j], old_labels[i], g, f)
        u, h, p = T.gluing(old_tets[i], f)
        if u in index:
            q = P.compose(p, phi)
            rows[base + j][g] = (index[u], h, q)
            rows[index[u]][h] = (base + j, g, P.inverse(q))
        else:
            i2 = region[u]
            key2 = _face_key(old_labels[i2], h)
            (j2, g2), = new_faces[key2]
            psi = _label_perm(old_labels[i2], new_labels[j2], h, g2)
            rows[base + j][g] = (base + j2, g2, P.compose(psi, P.compose(p, phi)))
    return build_from_gluings(rows, mode=LENIENT)


# ---------------------------------------------------------------------------
# region builders


def _two_three(T, t, f):
    u, g, p = T.gluing(t, f)
    if u == t:
        raise MoveNotApplicable("2-3 needs two distinct tetrahedra on the face")
    lt = ["x" if k == f else f"v{k}" for k in range(4)]
    lu = [None] * 4
    lu[g] = "y"
    for k in range(4):
        if k != f:
            lu[P.apply(p, k)] = f"v{k}"
    tri = [f"v{k}" for k in range(4) if k != f]
    new = [["x", "y", tri[0], tri[1]], ["x", "y", tri[1], tri[2]], ["x", "y", tri[0], tri[2]]]
    return _retriangulate(T, [t, u], [lt, lu], new)


def edge_embeddings(T, t, e):
    """Walk around the edge (local index ``e`` of tetrahedron ``t``).

    Returns a list of ``(tet, a, b, c, d)`` where ``(a, b)`` are the local
    vertices of the edge, ``c`` the vertex whose opposite face leads on to the
    next tetrahedron and ``d`` the one facing back to the previous.
    """
    a, b = (int(x) for x in P.EDGE_VERTS[e])
    c, d = [k for k in range(4) if k not in (a, b)]
    start = (t, a, b, c, d)
    out = [start]
    limit = 6 * T.size
    cur = start
    while True:
        tt, a, b, c, d = cur
        u, g, p = T.gluing(tt, c)
        na, nb, nc = P.apply(p, a), P.apply(p, b), P.apply(p, d)
        nd = g
        cur = (u, na, nb, nc, nd)
        if cur == start:
            return out
        out.append(cur)
        if len(out) > limit:
            raise MoveNotApplicable("edge walk did not close")


def _three_two(T, t, e):
    emb = edge_embeddings(T, t, e)
    if len(emb) != 3:
        raise MoveNotApplicable(f"3-2 needs an edge of degree 3, this one has degree {len(emb)}")
    tets = [x[0] for x in emb]
    if len(set(tets)) != 3:
        raise MoveNotApplicable("3-2 needs three distinct tetrahedra around the edge")
    labels = []
    for i, (tt, a, b, c, d) in enumerate(emb):
        lab = [None] * 4
        lab[a], lab[b] = "a", "b"
        lab[c] = f"L{i}"
        lab[d] = f"L{(i + 1) % 3}"
        labels.append(lab)
    new = [["a", "L0", "L1", "L2"], ["b", "L0", "L1", "L2"]]
    return _retriangulate(T, tets, labels, new)


def _one_four(T, t):
    lt = [f"v{k}" for k in range(4)]
    new = []
    for k in range(4):
        lab = list(lt)
        lab[k] = "m"
        new.append(lab)
    return _retriangulate(T, [t], [lt], new)


def _four_one(T, t, v):
    sk = T.skeleton
    cls = sk.vertex_class[t, v]
    corners = [(tt, a) for tt in range(T.size) for a in range(4) if sk.vertex_class[tt, a] == cls]
    if len(corners) != 4:
        raise MoveNotApplicable(f"4-1 needs a vertex of degree 4, this one has degree {len(corners)}")
    tets = [c[0] for c in corners]
    if len(set(tets)) != 4:
        raise MoveNotApplicable("4-1 needs four distinct tetrahedra around the vertex")
    labels = []
    names = set()
    for tt, a in corners:
        lab = [None] * 4
        lab[a] = "v"
        for b in range(4):
            if b == a:
                continue
            e = P.EDGE_INDEX[a, b]
            par = int(sk.edge_parity[tt, e])
            end = par if a < b else 1 - par
            lab[b] = ("L", int(sk.edge_class[tt, e]), end)
            names.add(lab[b])
        labels.append(lab)
    if len(names) != 4:
        raise MoveNotApplicable("vertex link is not the boundary of a tetrahedron")
    new = [sorted(names)]
    return _retriangulate(T, tets, labels, new)


def pachner_move(T, location, kind):
    """Apply a Pachner move and return the new triangulation.

    ``location`` is ``(tet, face)`` for 2-3, ``(tet, local_edge)`` for 3-2
    (edge index 0..5, or a vertex pair), ``tet`` for 1-4 and
    ``(tet, vertex)`` for 4-1.
    """
    if kind == "2-3":
        t, f = location
        return _two_three(T, int(t), int(f))
    if kind == "3-2":
        t, e = location
        if isinstance(e, (tuple, list)):
            e = P.EDGE_INDEX[e[0], e[1]]
        return _three_two(T, int(t), int(e))
    if kind == "1-4":
        t = location[0] if isinstance(location, (tuple, list)) else location
        return _one_four(T, int(t))
    if kind == "4-1":
        t, v = location
        return _four_one(T, int(t), int(v))
    raise ValueError(f"unknown move kind {kind!r}; expected one of {KINDS}")


def move_sites(T, kind):
    """One location per candidate site of the given kind (not all need be
    applicable)."""
    sk = T.skeleton
    if kind == "2-3":
        return [(t, f) for t in range(T.size) for f in range(4)
                if (T.tet[t, f], T.face[t, f]) > (t, f)]
    if kind == "3-2":
        seen = {}
        for t in range(T.size):
            for e in range(6):
                c = int(sk.edge_class[t, e])
                if sk.edge_degree[c] == 3:
                    seen.setdefault(c, (t, e))
        return [seen[c] for c in sorted(seen)]
    if kind == "1-4":
        return list(range(T.size))
    if kind == "4-1":
        seen = {}
        for t in range(T.size):
            for a in range(4):
                c = int(sk.vertex_class[t, a])
                if sk.vertex_corners[c] == 4:
                    seen.setdefault(c, (t, a))
        return [seen[c] for c in sorted(seen)]
    raise ValueError(f"unknown move kind {kind!r}")


def neighbours(T, kinds=KINDS):
    """Yield ``(kind, location, result)`` for every applicable move."""
    for kind in kinds:
        for loc in move_sites(T, kind):
            try:
                yield kind, loc, pachner_move(T, loc, kind)
            except MoveNotApplicable:
                continue
