import json

from graphsplines.corpus import (DEFAULT_SEED, RANDOM_INSTANCES, default_corpus, format_summary,
                                 named_graphs, random_instances, run_corpus, small_graphs)


def test_small_graph_counts():
    assert [len(small_graphs(n)) for n in range(1, 6)] == [1, 3, 7, 18, 52]
    assert all(g.is_constant_multiplicity() in (2, None) for g in small_graphs(4, 2))


def test_corpus_composition():
    items = default_corpus()
    kinds = [it.kind for it in items]
    assert kinds.count("const1") == kinds.count("const2") == 52
    assert kinds.count("random") == RANDOM_INSTANCES
    assert [g.name for g in named_graphs()] == ["W4", "prism", "K4"]
    assert {"W5", "W6", "fritsch"} <= {g.name for g in named_graphs(slow=True)}
    assert len({it.key for it in items}) == len(items)


def test_random_instances_are_seeded():
    a = random_instances(DEFAULT_SEED)
    assert a == random_instances(DEFAULT_SEED)
    assert a != random_instances(7)
    for g in a:
        assert len(g.edges) >= 2 and g.vertex_count <= 5
        assert {m for _, m in g.multiplicity} <= {1, 2, 3}


def small_items():
    return [it for it in default_corpus(max_vertices=4) if it.kind != "named"][:25]


def test_run_is_deterministic_and_ordered():
    items = small_items()
    a = run_corpus(items)
    b = run_corpus(list(reversed(items)))
    assert not a.violations
    assert [it.key for it in a.items] == [it.key for it in items]
    assert a.summary() == b.summary()
    assert json.dumps(a.to_json()) == json.dumps(run_corpus(items).to_json())


def test_workers_do_not_change_output():
    items = small_items()
    one = run_corpus(items, workers=1)
    two = run_corpus(items, workers=2)
    assert json.dumps(one.to_json()) == json.dumps(two.to_json())
    assert format_summary(one) == format_summary(two)


def test_progress_callback_sees_every_item():
    items = small_items()[:5]
    seen = []
    run_corpus(items, progress=lambda key, rep: seen.append(key))
    assert seen == [it.key for it in items]
