"""Hot loops: canonical labelling and orderly census generation.

All kernels take flat int64 gluing arrays indexed by position ``4*t + f``
(``gt`` partner tetrahedron, ``gf`` partner face, ``gp`` permutation index,
-1 where unglued).  A gluing entry is ordered by its code
``tet * 96 + face * 24 + perm``; the canonical table of a triangulation is the
lexicographically smallest code sequence over all breadth-first relabellings
(start tetrahedron x start vertex permutation), where every tetrahedron
reached for the first time is labelled so that the discovering gluing is the
identity onto the same face number.
"""
import numpy as np

from ._jit import njit
from .perm import COMPOSE, EDGE_INDEX, EDGE_VERTS, FACE_PERMS, INVERSE, PERMS, SIGN

BIG = np.int64(1) << np.int64(62)


@njit
def canonical_codes(gt, gf, gp, K):
    n = 4 * K
    best = np.full(n, BIG, dtype=np.int64)
    cur = np.empty(n, dtype=np.int64)
    label = np.empty(K, dtype=np.int64)
    order = np.empty(K, dtype=np.int64)
    sigma = np.empty(K, dtype=np.int64)
    have_best = False
    for s in range(K):
        for pi in range(24):
            for i in range(K):
                label[i] = -1
            label[s] = 0
            order[0] = s
            sigma[s] = pi
            nlab = 1
            smaller = not have_best
            aborted = False
            for q in range(n):
                t = order[q >> 2]
                st = sigma[t]
                f_old = PERMS[INVERSE[st], q & 3]
                x = 4 * t + f_old
                u = gt[x]
                p = gp[x]
                if label[u] < 0:
                    label[u] = nlab
                    order[nlab] = u
                    sigma[u] = COMPOSE[st, INVERSE[p]]
                    nlab += 1
                su = sigma[u]
                code = label[u] * 96 + PERMS[su, gf[x]] * 24 + COMPOSE[su, COMPOSE[p, INVERSE[st]]]
                if not smaller:
                    if code > best[q]:
                        aborted = True
                        break
                    if code < best[q]:
                        smaller = True
                cur[q] = code
            if smaller and not aborted:
                for q in range(n):
                    best[q] = cur[q]
                have_best = True
    return best


@njit
def automorphism_count(gt, gf, gp, K, ref):
    """Number of relabellings (start tetrahedron, start permutation) whose
    breadth-first table equals ``ref``."""
    n = 4 * K
    label = np.empty(K, dtype=np.int64)
    order = np.empty(K, dtype=np.int64)
    sigma = np.empty(K, dtype=np.int64)
    count = 0
    for s in range(K):
        for pi in range(24):
            for i in range(K):
                label[i] = -1
            label[s] = 0
            order[0] = s
            sigma[s] = pi
            nlab = 1
            same = True
            for q in range(n):
                t = order[q >> 2]
                st = sigma[t]
                x = 4 * t + PERMS[INVERSE[st], q & 3]
                u = gt[x]
                p = gp[x]
                if label[u] < 0:
                    label[u] = nlab
                    order[nlab] = u
                    sigma[u] = COMPOSE[st, INVERSE[p]]
                    nlab += 1
                su = sigma[u]
                code = label[u] * 96 + PERMS[su, gf[x]] * 24 + COMPOSE[su, COMPOSE[p, INVERSE[st]]]
                if code != ref[q]:
                    same = False
                    break
            if same:
                count += 1
    return count


@njit
def _find(parent, rel, x):
    par = 0
    while parent[x] != x:
        par ^= rel[x]
        x = parent[x]
    return x, par


@njit
def partial_ok(gt, gf, gp, ntets, strict):
    """Monotone obstructions on a partial gluing.

    Fails when an edge is identified with itself in reverse, when (strict) an
    edge has both ends at one vertex, or when a vertex whose link is already
    closed has a link that is not a 2-sphere.
    """
    nv = 4 * ntets
    ne = 6 * ntets
    vparent = np.arange(nv)
    vrel = np.zeros(nv, dtype=np.int64)
    eparent = np.arange(ne)
    erel = np.zeros(ne, dtype=np.int64)
    for t in range(ntets):
        for f in range(4):
            x = 4 * t + f
            u = gt[x]
            if u < 0:
                continue
            y = 4 * u + gf[x]
            if y < x:
                continue
            p = gp[x]
            for a in range(4):
                if a == f:
                    continue
                ra, _ = _find(vparent, vrel, 4 * t + a)
                rb, _ = _find(vparent, vrel, 4 * u + PERMS[p, a])
                if ra != rb:
                    vparent[rb] = ra
            for e in range(6):
                a = EDGE_VERTS[e, 0]
                b = EDGE_VERTS[e, 1]
                if a == f or b == f:
                    continue
                ia = PERMS[p, a]
                ib = PERMS[p, b]
                flip = 1 if ia > ib else 0
                rx, px = _find(eparent, erel, 6 * t + e)
                ry, py = _find(eparent, erel, 6 * u + EDGE_INDEX[ia, ib])
                if rx == ry:
                    if (px ^ py) != flip:
                        return False
                else:
                    eparent[ry] = rx
                    erel[ry] = px ^ py ^ flip
    vroot = np.empty(nv, dtype=np.int64)
    for i in range(nv):
        vroot[i], _ = _find(vparent, vrel, i)
    if strict:
        for t in range(ntets):
            for e in range(6):
                if vroot[4 * t + EDGE_VERTS[e, 0]] == vroot[4 * t + EDGE_VERTS[e, 1]]:
                    return False
    incomplete = np.zeros(nv, dtype=np.bool_)
    corners = np.zeros(nv, dtype=np.int64)
    for t in range(ntets):
        for a in range(4):
            corners[vroot[4 * t + a]] += 1
        for f in range(4):
            if gt[4 * t + f] < 0:
                for a in range(4):
                    if a != f:
                        incomplete[vroot[4 * t + a]] = True
    seen = np.zeros(2 * ne, dtype=np.bool_)
    link_vertices = np.zeros(nv, dtype=np.int64)
    for t in range(ntets):
        for e in range(6):
            r, par = _find(eparent, erel, 6 * t + e)
            ea = 2 * r + par
            eb = 2 * r + 1 - par
            if not seen[ea]:
                seen[ea] = True
                link_vertices[vroot[4 * t + EDGE_VERTS[e, 0]]] += 1
            if not seen[eb]:
                seen[eb] = True
                link_vertices[vroot[4 * t + EDGE_VERTS[e, 1]]] += 1
    for v in range(nv):
        if corners[v] > 0 and not incomplete[v]:
            if 2 * link_vertices[v] - corners[v] != 4:
                return False
    return True


@njit
def partial_canonical(gt, gf, gp, ntets, label, order, sigma):
    """False if some relabelling of the partial table is provably smaller on
    its determined prefix (so no completion can be canonical)."""
    for s in range(ntets):
        for pi in range(24):
            if s == 0 and pi == 0:
                continue
            for i in range(ntets):
                label[i] = -1
            label[s] = 0
            order[0] = s
            sigma[s] = pi
            nlab = 1
            for q in range(4 * ntets):
                i_new = q >> 2
                if i_new >= nlab:
                    break
                if gt[q] < 0:
                    break
                t = order[i_new]
                st = sigma[t]
                x = 4 * t + PERMS[INVERSE[st], q & 3]
                u = gt[x]
                if u < 0:
                    break
                p = gp[x]
                if label[u] < 0:
                    label[u] = nlab
                    order[nlab] = u
                    sigma[u] = COMPOSE[st, INVERSE[p]]
                    nlab += 1
                su = sigma[u]
                alt = label[u] * 96 + PERMS[su, gf[x]] * 24 + COMPOSE[su, COMPOSE[p, INVERSE[st]]]
                cur = gt[q] * 96 + gf[q] * 24 + gp[q]
                if alt < cur:
                    return False
                if alt > cur:
                    break
    return True


@njit
def _next_unglued(gt, start, n):
    for q in range(start, n):
        if gt[q] < 0:
            return q
    return -1


@njit
def census_search(K, strict, orientable, gt, gf, gp, orient, ntets, max_depth):
    """Orderly depth-first generation of canonical closed gluing tables.

    Starts from the given partial state (which must itself be canonical).
    Returns ``(leaves, n_leaves, frontier, n_frontier, nodes)``: leaves are
    canonical code rows of complete tables; when ``max_depth > 0`` the search
    stops that many gluings below the start and returns the surviving states
    as frontier rows ``[gt | gf | gp | orient | ntets]``.
    """
    n = 4 * K
    gt = gt.copy()
    gf = gf.copy()
    gp = gp.copy()
    orient = orient.copy()
    label = np.empty(K, dtype=np.int64)
    order = np.empty(K, dtype=np.int64)
    sigma = np.empty(K, dtype=np.int64)

    leaves = np.empty((64, n), dtype=np.int64)
    n_leaves = 0
    width = 3 * n + K + 1
    frontier = np.empty((64, width), dtype=np.int64)
    n_frontier = 0
    nodes = 0

    pos_stack = np.empty(n + 1, dtype=np.int64)
    opt_stack = np.empty(n + 1, dtype=np.int64)
    new_stack = np.zeros(n + 1, dtype=np.bool_)
    applied = np.zeros(n + 1, dtype=np.bool_)

    p0 = _next_unglued(gt, 0, n)
    if p0 < 0:
        if ntets == K:
            for q in range(n):
                leaves[0, q] = gt[q] * 96 + gf[q] * 24 + gp[q]
            n_leaves = 1
        return leaves[:n_leaves], n_leaves, frontier[:0], 0, nodes
    if p0 >= 4 * ntets:
        # disconnected prefix: nothing to extend
        return leaves[:0], 0, frontier[:0], 0, nodes

    depth = 0
    pos_stack[0] = p0
    opt_stack[0] = 0
    applied[0] = False
    nopts = 1 + 6 * n
    while depth >= 0:
        p = pos_stack[depth]
        t = p >> 2
        f = p & 3
        if applied[depth]:
            q = 4 * gt[p] + gf[p]
            gt[q] = -1
            gf[q] = -1
            gp[q] = -1
            gt[p] = -1
            gf[p] = -1
            gp[p] = -1
            if new_stack[depth]:
                ntets -= 1
            applied[depth] = False
        opt = opt_stack[depth]
        found = False
        while opt < nopts:
            o = opt
            opt += 1
            if o == 0:
                if ntets >= K:
                    continue
                u = ntets
                gt[p] = u
                gf[p] = f
                gp[p] = 0
                gt[4 * u + f] = t
                gf[4 * u + f] = f
                gp[4 * u + f] = 0
                orient[u] = -orient[t]
                ntets += 1
                is_new = True
            else:
                k = o - 1
                q = p + 1 + k // 6
                if q >= 4 * ntets:
                    opt = nopts
                    continue
                if gt[q] >= 0:
                    opt = 1 + (k // 6 + 1) * 6
                    continue
                u = q >> 2
                g = q & 3
                pm = FACE_PERMS[f, g, k % 6]
                if orientable and SIGN[pm] != -orient[t] * orient[u]:
                    continue
                gt[p] = u
                gf[p] = g
                gp[p] = pm
                gt[q] = t
                gf[q] = f
                gp[q] = INVERSE[pm]
                is_new = False
            nodes += 1
            ok = partial_ok(gt, gf, gp, ntets, strict)
            if ok:
                ok = partial_canonical(gt, gf, gp, ntets, label, order, sigma)
            if ok:
                found = True
                new_stack[depth] = is_new
                break
            q = 4 * gt[p] + gf[p]
            gt[q] = -1
            gf[q] = -1
            gp[q] = -1
            gt[p] = -1
            gf[p] = -1
            gp[p] = -1
            if is_new:
                ntets -= 1
        opt_stack[depth] = opt
        if not found:
            depth -= 1
            continue
        applied[depth] = True
        nq = _next_unglued(gt, p + 1, n)
        if nq < 0 or nq >= 4 * ntets:
            if nq < 0 and ntets == K:
                if n_leaves == leaves.shape[0]:
                    bigger = np.empty((2 * n_leaves, n), dtype=np.int64)
                    bigger[:n_leaves] = leaves
                    leaves = bigger
                for q in range(n):
                    leaves[n_leaves, q] = gt[q] * 96 + gf[q] * 24 + gp[q]
                n_leaves += 1
            continue
        if max_depth > 0 and depth + 1 >= max_depth:
            if n_frontier == frontier.shape[0]:
                bigger = np.empty((2 * n_frontier, width), dtype=np.int64)
                bigger[:n_frontier] = frontier
                frontier = bigger
            row = frontier[n_frontier]
            row[0:n] = gt
            row[n:2 * n] = gf
            row[2 * n:3 * n] = gp
            row[3 * n:3 * n + K] = orient
            row[3 * n + K] = ntets
            n_frontier += 1
            continue
        depth += 1
        pos_stack[depth] = nq
        opt_stack[depth] = 0
        applied[depth] = False
    return leaves[:n_leaves], n_leaves, frontier[:n_frontier], n_frontier, nodes
