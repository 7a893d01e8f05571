import itertools
from fractions import Fraction

import numpy as np
import pytest

from deficit import perm as P
from deficit.errors import NonInvolution, NotManifold, NotSimplicial, ParseError, UnmatchedFace
from deficit.triangulation import (
    LENIENT, STRICT, FVector, Triangulation, boundary_4simplex, build_from_gluings, edge_degrees,
    f_vector, format_triangulation, mean_edge_degree, parse_triangulation, parse_triangulations,
    validate,
)
from oracles import glue_facets

DOUBLED = """2
1:0:0123 1:1:0123 1:2:0123 1:3:0123
0:0:0123 0:1:0123 0:2:0123 0:3:0123
"""


def test_perm_tables_consistent():
    for a in range(24):
        assert P.COMPOSE[a, P.INVERSE[a]] == 0
        for b in range(24):
            for x in range(4):
                assert P.PERMS[P.COMPOSE[a, b]][x] == P.PERMS[a][P.PERMS[b][x]]
            assert P.SIGN[P.COMPOSE[a, b]] == P.SIGN[a] * P.SIGN[b]
    assert P.perm_string(P.perm_index("0132")) == "0132"
    assert [P.perm_string(i) for i in range(24)] == sorted(P.perm_string(i) for i in range(24))


def test_boundary_4simplex_matches_facet_oracle():
    T = boundary_4simplex()
    ref = glue_facets([[k for k in range(5) if k != j] for j in range(5)])
    validate(ref, STRICT)
    assert f_vector(T) == FVector(5, 10, 10, 5)
    assert f_vector(ref) == FVector(5, 10, 10, 5)
    assert T.isomorphism_signature() == ref.isomorphism_signature()
    assert mean_edge_degree(T) == 3
    assert sorted(edge_degrees(T)) == [3] * 10


def test_unmatched_face():
    with pytest.raises(UnmatchedFace):
        build_from_gluings([[None, None, None, None]])


def test_asymmetric_gluing():
    rows = [["1:0:0123", "1:1:0123", "1:2:0123", "1:3:0123"],
            ["0:1:0123", "0:0:0123", "0:2:0123", "0:3:0123"]]
    with pytest.raises(NonInvolution):
        build_from_gluings(rows)


def test_face_glued_to_itself():
    with pytest.raises(NonInvolution):
        build_from_gluings([["0:0:0123", "0:1:0123", "0:2:0123", "0:3:0123"]])


def test_doubled_tetrahedron_modes():
    T = parse_triangulation(DOUBLED, mode=STRICT)
    assert T.f_vector().as_tuple() == (4, 6, 4, 2)
    assert mean_edge_degree(T) == 2


def test_one_tet_never_strict():
    # 1-tetrahedron tables always identify two vertices of some edge or two edges
    from oracles import naive_single_tet
    seen = 0
    for T in naive_single_tet():
        try:
            validate(T, LENIENT)
        except Exception:
            continue
        seen += 1
        with pytest.raises(NotSimplicial):
            validate(T, STRICT)
    assert seen > 0


def test_not_manifold_when_edge_reversed():
    # face 0 glued to face 1 with a transposition that flips an edge onto itself
    rows = [["0:1:1032", "0:0:1032", "0:3:0132", "0:2:0132"]]
    try:
        T = build_from_gluings(rows)
    except NotManifold:
        return
    pytest.fail(f"accepted {T!r}")


def test_text_round_trip(sample_triangulations):
    text = "".join(format_triangulation(T) for T in sample_triangulations[:40])
    back = parse_triangulations("# comment\n\n" + text)
    assert back == sample_triangulations[:40]


@pytest.mark.parametrize("bad", ["", "x", "1\n0:0:0123 - -", "1\n9:0:0123 0:0:0123 - -",
                                 "1\n0:1:01234 0:0:0123 - -"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, UnmatchedFace, NonInvolution)):
        parse_triangulation(bad)


def test_immutable():
    T = boundary_4simplex()
    with pytest.raises(ValueError):
        T.tet[0, 0] = 3
    with pytest.raises(AttributeError):
        T.tet = np.zeros((5, 4))


def test_closed_identities(sample_triangulations):
    for T in sample_triangulations:
        fv = T.f_vector()
        assert fv.euler_characteristic == 0
        assert fv.n2 == 2 * fv.n3
        assert fv.n1 - fv.n0 == fv.n3
        deg = edge_degrees(T)
        assert deg.sum() == 6 * T.size
        assert Fraction(int(deg.sum()), len(deg)) == mean_edge_degree(T)


def test_vertex_links_are_spheres(sample_triangulations):
    for T in sample_triangulations:
        sk = T.skeleton
        assert np.allclose(sk.link_euler, 2)


def test_strict_rules_hold(strict_census):
    for r in strict_census.values():
        for T in r.triangulations:
            sk = T.skeleton
            ends = {tuple(sorted(map(int, e))) for e in sk.edge_ends}
            assert len(ends) == sk.n1
            assert all(a != b for a, b in ends)
            assert len(set(sk.triangle_edges)) == sk.n2


def test_relabel_is_valid(sample_triangulations):
    rng = np.random.default_rng(1)
    for T in sample_triangulations[:50]:
        tm = rng.permutation(T.size)
        vm = rng.integers(0, 24, T.size)
        U = T.relabel(tm, vm)
        validate(U)
        assert U.f_vector() == T.f_vector()


def test_from_facets_pairs_of_equal_sets():
    facets = list(itertools.combinations(range(5), 4))
    assert f_vector(glue_facets([list(f) for f in facets])) == FVector(5, 10, 10, 5)
    assert isinstance(boundary_4simplex(), Triangulation)
