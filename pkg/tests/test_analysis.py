import json
import random

import pytest

from graphsplines.analysis import (InconsistencyError, Pipeline, analyze, classify_constant_multiplicity,
                                   classify_totally_free, cycle_partition, flat_monotonicity_check,
                                   global_bound, graph_id, hyperhomology_bound, kung_schenck_gap,
                                   multiplicity_label, pdim_and_freeness)
from graphsplines.graphs import (MultiGraph, Partition, complete_graph, cycle_graph, fritsch_graph,
                                 path_graph, prism_graph, wheel_graph)

BOWTIE = MultiGraph(5, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])
TRIANGLE_PENDANT = MultiGraph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])


def test_labels():
    assert graph_id(prism_graph()) == "prism"
    assert graph_id(MultiGraph(2, [(1, 2)])).startswith("v2:")
    assert multiplicity_label(MultiGraph(3)) == "none"
    assert multiplicity_label(complete_graph(3, 2)) == "const:2"
    assert multiplicity_label(MultiGraph(3, [(1, 2, 1), (2, 3, 2)])) == "per-edge"


@pytest.mark.parametrize("g,expected", [
    (MultiGraph(2, [(1, 2)]), (0, True)),
    (complete_graph(3), (0, True)),
    (cycle_graph(4), (1, False)),
    (cycle_graph(5), (2, False)),
    (prism_graph(), (2, False)),
    (wheel_graph(4), (1, False)),
    (complete_graph(4, 2), (0, True)),
])
def test_pdim_and_freeness_examples(g, expected):
    assert pdim_and_freeness(g) == expected


@pytest.mark.parametrize("g,upper", [(cycle_graph(4), 1), (wheel_graph(4), 1), (prism_graph(), 2)],
                         ids=["C4", "W4", "prism"])
def test_hyperhomology_bound_is_tight(g, upper):
    assert hyperhomology_bound(g) == (upper, True)


def test_hyperhomology_bound_free_graph():
    assert hyperhomology_bound(complete_graph(4)) == (0, False)


def test_inconsistency_is_raised(monkeypatch):
    monkeypatch.setattr(Pipeline, "pdim", property(lambda self: 5))
    with pytest.raises(InconsistencyError):
        hyperhomology_bound(cycle_graph(4))
    with pytest.raises(InconsistencyError):
        pdim_and_freeness(complete_graph(3))
    rep = analyze(cycle_graph(4))
    assert not rep.ok
    assert rep.consistency["hyperhomology_bound"] is False
    assert rep.consistency["global_bound"] is False


def test_constant_multiplicity_classifier():
    assert classify_constant_multiplicity(complete_graph(4)).free_for_all_const_m_ge_2
    assert not classify_constant_multiplicity(prism_graph()).free_for_all_const_m_ge_2
    v = classify_constant_multiplicity(BOWTIE)
    assert v.free_for_all_const_m_ge_2 and v.vertex_separated_ordering
    assert v.blocks == ((1, 2, 3), (1, 4, 5))


@pytest.mark.parametrize("g", [complete_graph(4), BOWTIE, wheel_graph(4), TRIANGLE_PENDANT,
                               MultiGraph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])],
                         ids=["K4", "bowtie", "W4", "triangle+pendant", "diamond"])
def test_classifier_matches_computation_for_m2_and_m3(g):
    verdict = classify_constant_multiplicity(g).free_for_all_const_m_ge_2
    for m in (2, 3):
        assert pdim_and_freeness(g.with_multiplicity(m))[1] == verdict


def test_totally_free_shape():
    assert classify_totally_free(path_graph(4))
    assert not classify_totally_free(complete_graph(4))
    assert classify_totally_free(TRIANGLE_PENDANT)
    assert not classify_totally_free(cycle_graph(4))


def test_totally_free_shape_under_random_multiplicities():
    rng = random.Random(11)
    for g in (path_graph(4), TRIANGLE_PENDANT, BOWTIE):
        for _ in range(3):
            h = g.with_multiplicity({e: rng.randint(1, 4) for e in g.edges})
            assert pdim_and_freeness(h)[1]


def test_flat_monotonicity():
    g = prism_graph()
    assert flat_monotonicity_check(g, Partition.singletons(6)).pdim_flat == 0
    c = flat_monotonicity_check(g, Partition([[1, 2, 5, 4], [3], [6]]))
    assert (c.pdim_flat, c.pdim_graph, c.passed) == (1, 2, True)
    whole = flat_monotonicity_check(g, Partition([range(1, 7)]))
    assert whole.pdim_flat == whole.pdim_graph == 2


def test_cycle_partition():
    p = cycle_partition(prism_graph())
    assert len(p.blocks[0]) == 4 and len(p.blocks) == 3
    assert cycle_partition(path_graph(3)).blocks == ((1,), (2,), (3,))


@pytest.mark.parametrize("g,expected", [
    (cycle_graph(5), (2, 2, 0)),
    (prism_graph(), (1, 2, 1)),
    (fritsch_graph(), (2, 2, 0)),
], ids=["C5", "prism", "fritsch"])
def test_kung_schenck_gap(g, expected):
    assert kung_schenck_gap(g) == expected


def test_global_bound():
    assert global_bound(MultiGraph(3, [(1, 2), (2, 3)])) == 0
    assert global_bound(prism_graph()) == 3
    assert global_bound(MultiGraph(1)) == 0


def test_analyze_prism_report():
    rep = analyze(prism_graph())
    assert rep.ok, rep.violations
    assert rep.pdim_derivations == 2 and not rep.is_free
    assert rep.bound_upper == 2 and rep.upper_tight
    assert rep.longest_induced_cycle == 4 and rep.kung_schenck_gap == 1
    h1 = rep.cohomology[1]
    assert (h1.zero, h1.pdim, h1.codim) == (False, 4, 3)
    assert rep.cohomology[2].zero
    assert not rep.chordal and not rep.quasi_forest
    assert all(rep.consistency.values())
    json.dumps(rep.to_json())


def test_analyze_report_json_handles_infinite_codim():
    out = analyze(wheel_graph(4)).to_json()
    assert out["cohomology"][2]["codim"] == "inf"
    assert set(out["codim_check"]) == {"1", "2"}
    assert json.loads(json.dumps(out)) == out
