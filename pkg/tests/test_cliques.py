from itertools import permutations

import pytest

from graphsplines.cliques import (LeafOrdering, build_clique_complex, coboundary,
                                  exhaustive_leaf_ordering_exists, incidence_sign, leaf_ordering,
                                  simplicial_cohomology, vertex_separated_leaf_ordering,
                                  verify_leaf_ordering)
from graphsplines.graphs import (MultiGraph, blocks_are_cliques, complete_graph, cycle_graph,
                                 is_chordal, prism_graph, wheel_graph)

from oracles import graphs_up_to, rank_of

SMALL = graphs_up_to(6)

TWO_TRIANGLES_EDGE = MultiGraph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
BOWTIE = MultiGraph(5, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def test_f_vectors():
    assert build_clique_complex(complete_graph(3)).f_vector == (3, 3, 1)
    assert build_clique_complex(cycle_graph(4)).f_vector == (4, 4)
    assert build_clique_complex(wheel_graph(4)).f_vector == (5, 8, 4)
    assert build_clique_complex(prism_graph()).f_vector == (6, 9, 2)


def test_faces_sorted_and_closed():
    c = build_clique_complex(wheel_graph(5))
    for i in range(c.dimension + 1):
        assert list(c.faces(i)) == sorted(c.faces(i))
        for f in c.faces(i):
            assert list(f) == sorted(f)
            if i:
                for k in range(len(f)):
                    assert f[:k] + f[k + 1:] in c.faces(i - 1)


def test_vertex_edge_signs():
    c = build_clique_complex(MultiGraph(2, [(1, 2)]))
    d = coboundary(c, 0).dense()
    assert d == [[1], [-1]]


def test_triangle_signs():
    c = build_clique_complex(complete_graph(3))
    d1 = coboundary(c, 1)
    # rows (1,2), (1,3), (2,3); coboundary of the triangle: +{2,3} - {1,3} + {1,2}
    assert [r[0] for r in d1.dense()] == [1, -1, 1]
    assert incidence_sign((2, 3), (1, 2, 3)) == 1
    assert incidence_sign((1, 3), (1, 2, 3)) == -1


def test_above_top_dimension_is_empty():
    c = build_clique_complex(cycle_graph(4))
    s = coboundary(c, 3)
    assert s.rows == () and s.cols == () and s.entries == {}


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"v{g.vertex_count}e{len(g.edges)}")
def test_complex_invariants(g):
    c = build_clique_complex(g)
    for i in range(c.dimension - 1):
        a, b = coboundary(c, i).dense(), coboundary(c, i + 1).dense()
        # rows = i-faces, columns = (i+1)-faces: compose as columns of b into rows of a
        assert all(x == 0 for row in matmul([list(r) for r in zip(*b)], [list(r) for r in zip(*a)])
                   for x in row)
    betti = simplicial_cohomology(c)
    euler_f = sum((-1) ** i * f for i, f in enumerate(c.f_vector))
    assert euler_f == sum((-1) ** i * b for i, b in enumerate(betti))
    # ranks against an independent rank computation
    for i in range(c.dimension):
        dense = coboundary(c, i).dense()
        prev = rank_of(coboundary(c, i - 1).dense()) if i else 0
        assert betti[i] == c.f_vector[i] - rank_of(dense) - prev


def test_cohomology_examples():
    assert simplicial_cohomology(build_clique_complex(cycle_graph(4))) == [1, 1]
    assert simplicial_cohomology(build_clique_complex(wheel_graph(4))) == [1, 0, 0]
    assert simplicial_cohomology(build_clique_complex(prism_graph())) == [1, 2, 0]


def test_leaf_ordering_examples():
    lo = leaf_ordering(build_clique_complex(TWO_TRIANGLES_EDGE))
    assert lo is not None and verify_leaf_ordering(lo)
    assert leaf_ordering(build_clique_complex(cycle_graph(4))) is None


def test_verify_rejects_bad_certificate():
    facets = ((1, 2), (3, 4), (2, 3))
    assert not verify_leaf_ordering(LeafOrdering(facets, ((), (1, 2), (1, 2))))


def brute_force_leaf_ordering(facets):
    """Every ordering, checked prefix by prefix (no memoization)."""
    for perm in permutations(facets):
        ok = True
        for i in range(1, len(perm)):
            f = set(perm[i])
            prev = perm[:i]
            if not any(all(f & set(g) <= f & set(h) for g in prev) for h in prev):
                ok = False
                break
        if ok:
            return True
    return not facets


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"v{g.vertex_count}e{len(g.edges)}")
def test_leaf_ordering_against_oracles(g):
    c = build_clique_complex(g)
    lo = leaf_ordering(c)
    if lo is not None:
        assert verify_leaf_ordering(lo)
        assert sorted(lo.facets) == sorted(c.facets)
    assert (lo is not None) == exhaustive_leaf_ordering_exists(c.facets)
    if len(c.facets) <= 6:
        assert (lo is not None) == brute_force_leaf_ordering(c.facets)
    # chordal iff quasi-forest
    assert (lo is not None) == is_chordal(g).chordal
    # vertex-separated ordering iff blocks are the maximal cliques
    assert vertex_separated_leaf_ordering(c) == blocks_are_cliques(g)


def test_vertex_separated_examples():
    assert vertex_separated_leaf_ordering(build_clique_complex(BOWTIE))
    assert not vertex_separated_leaf_ordering(build_clique_complex(TWO_TRIANGLES_EDGE))
    assert not vertex_separated_leaf_ordering(build_clique_complex(wheel_graph(4)))
