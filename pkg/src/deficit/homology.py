"""Integer homology of a triangulation via Smith normal form."""
from .perm import EDGE_INDEX, PERMS
from .triangulation import _ParityUnionFind


def smith_invariants(matrix):
    """Nonzero invariant factors of an integer matrix (list of rows).

    Plain elimination over Python ints; returns the diagonal of the Smith
    normal form with zeros dropped, each factor dividing the next.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    r = 0
    for c0 in range(n):
        if r >= m:
            break
        while True:
            # smallest nonzero entry in the remaining block
            pivot = None
            for i in range(r, m):
                for j in range(c0, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return _normalise(diag)
            i, j = pivot
            A[r], A[i] = A[i], A[r]
            for row in A:
                row[c0], row[j] = row[j], row[c0]
            p = A[r][c0]
            done = True
            for i in range(r + 1, m):
                q = A[i][c0] // p
                if q:
                    Ai, Ar = A[i], A[r]
                    for j in range(c0, n):
                        Ai[j] -= q * Ar[j]
                if A[i][c0]:
                    done = False
            for j in range(c0 + 1, n):
                q = A[r][j] // p
                if q:
                    for i in range(r, m):
                        A[i][j] -= q * A[i][c0]
                if A[r][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = None
            for i in range(r + 1, m):
                for j in range(c0 + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                Ab, Ar = A[bad], A[r]
                for j in range(c0, n):
                    Ar[j] += Ab[j]
                continue
            diag.append(abs(p))
            r += 1
            break
    return _normalise(diag)


def _normalise(diag):
    return sorted(d for d in diag if d)


def _sorted_face(f):
    return [a for a in range(4) if a != f]


def boundary_matrices(T):
    """Return (d1, d2, d3) as dense integer row lists (rows index the lower
    dimension) for the cellular chain complex of the triangulation."""
    sk = T.skeleton
    K = T.size
    # orientation of each face instance relative to its triangle class
    uf = _ParityUnionFind(4 * K)
    for t in range(K):
        for f in range(4):
            u, g, p = T.gluing(t, f)
            if (u, g) < (t, f):
                continue
            img = [int(PERMS[p][a]) for a in _sorted_face(f)]
            inv = sum(1 for i in range(3) for j in range(i + 1, 3) if img[i] > img[j])
            uf.union(4 * t + f, 4 * u + g, inv & 1)
    tri_sign = {}
    tri_rep = {}
    for t in range(K):
        for f in range(4):
            _, par = uf.find(4 * t + f)
            tri_sign[(t, f)] = -1 if par else 1
            tri_rep.setdefault(int(sk.triangle_class[t, f]), (t, f, par))

    d3 = [[0] * K for _ in range(sk.n2)]
    for t in range(K):
        for f in range(4):
            d3[sk.triangle_class[t, f]][t] += (-1) ** f * tri_sign[(t, f)]

    d2 = [[0] * sk.n2 for _ in range(sk.n1)]
    for c in range(sk.n2):
        t, f, par = tri_rep[c]
        # orient the class like its root: flip the representative if needed
        s = -1 if par else 1
        verts = _sorted_face(f)
        for j in range(3):
            a, b = [verts[k] for k in range(3) if k != j]
            e = EDGE_INDEX[a, b]
            esign = -1 if sk.edge_parity[t, e] else 1
            d2[sk.edge_class[t, e]][c] += s * (-1) ** j * esign

    d1 = [[0] * sk.n1 for _ in range(sk.n0)]
    for c in range(sk.n1):
        a, b = sk.edge_ends[c]
        d1[b][c] += 1
        d1[a][c] -= 1
    return d1, d2, d3


def _rank(factors):
    return len(factors)


def homology(T):
    """Integer homology groups H0..H3 as (betti, torsion) pairs."""
    sk = T.skeleton
    d1, d2, d3 = boundary_matrices(T)
    s1 = smith_invariants(d1)
    s2 = smith_invariants(d2)
    s3 = smith_invariants(d3)
    dims = [sk.n0, sk.n1, sk.n2, T.size]
    ranks = [0, _rank(s1), _rank(s2), _rank(s3), 0]
    invs = [[], s1, s2, s3, []]
    out = []
    for k in range(4):
        betti = dims[k] - ranks[k] - ranks[k + 1]
        torsion = [d for d in invs[k + 1] if d > 1]
        out.append((betti, torsion))
    return out


def first_homology(T):
    return homology(T)[1]


def is_orientable(T):
    K = T.size
    o = [0] * K
    o[0] = 1
    stack = [0]
    from .perm import SIGN
    while stack:
        t = stack.pop()
        for f in range(4):
            u, g, p = T.gluing(t, f)
            want = -o[t] * int(SIGN[p])
            if o[u] == 0:
                o[u] = want
                stack.append(u)
            elif o[u] != want:
                return False
    return True
