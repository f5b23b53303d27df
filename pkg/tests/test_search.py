import itertools
import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectrex.canon import canonical_graph6
from spectrex.errors import CapabilityError, InputError
from spectrex.graph import (
    Graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_union,
    join,
    turan_edges,
    turan_graph,
)
from spectrex.graph6 import graph6_decode, graph6_encode
from spectrex.invariants import ProblemSpec, contains_subgraph, is_family_free, max_disjoint_copies
from spectrex.search import (
    AMONG,
    DIFFERS,
    EQUAL,
    NOT_APPLICABLE,
    AugmentationTree,
    ExtremalCatalog,
    FamilyPruner,
    SearchInterrupted,
    SearchStats,
    construct_candidates,
    edge_extremal,
    enumerate_family_free,
    enumerate_graphs,
    lower_bound_edges,
    measure_excess,
    measured_spec,
    spectral_extremal,
    stanley_bound,
    verify_edge_theorem,
    verify_spectral_theorem,
)
from spectrex.spectral import spectral_radius

K3 = complete_graph(3)
S1 = ProblemSpec(K3, 1, a=0)
S2 = ProblemSpec(K3, 2, a=0)


def naive_classes(n, keep=lambda g: True):
    """Generate all labelled graphs and collapse by networkx isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    reps = []
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if not keep(g):
            continue
        h = nx.Graph(list(g.edges()))
        h.add_nodes_from(range(n))
        if not any(nx.is_isomorphic(h, r) for r in reps if r.number_of_edges() == g.edge_count):
            reps.append(h)
    return len(reps)


# -- enumeration -----------------------------------------------------------------


def test_class_counts_known_sequence():
    assert [sum(1 for _ in enumerate_graphs(n)) for n in range(0, 7)] == [1, 1, 2, 4, 11, 34, 156]


def test_class_counts_naive_oracle():
    for n in range(1, 6):
        assert sum(1 for _ in enumerate_graphs(n)) == naive_classes(n)
    free = lambda g: not contains_subgraph(g, K3)
    for n in range(1, 6):
        assert sum(1 for _ in enumerate_family_free(n, S1)) == naive_classes(n, free)


def test_enumeration_matches_atlas(atlas_by_order):
    for n in range(0, 8):
        ours = {graph6_encode(g) for g in enumerate_graphs(n)}
        assert len(ours) == len(atlas_by_order[n])
        assert ours == {canonical_graph6(g) for g in atlas_by_order[n]}


def test_family_free_examples():
    got = list(enumerate_family_free(3, S1))
    assert len(got) == 3 and all(not contains_subgraph(g, K3) for g in got)
    assert len(list(enumerate_family_free(1, S2))) == 1
    # triangle-free classes: 1, 2, 3, 7, 14, 38, 107, 410
    assert [sum(1 for _ in enumerate_family_free(n, S1)) for n in range(1, 9)] == [1, 2, 3, 7, 14, 38, 107, 410]


def test_family_free_stream_is_complete_for_2k3():
    ours = {graph6_encode(g) for g in enumerate_family_free(7, S2)}
    oracle = {graph6_encode(g) for g in enumerate_graphs(7) if max_disjoint_copies(g, K3, 2) < 2}
    assert ours == oracle


def test_enumeration_cap():
    with pytest.raises(CapabilityError, match="cap"):
        next(enumerate_graphs(12))
    with pytest.raises(CapabilityError):
        edge_extremal(20, S1)
    assert sum(1 for _ in enumerate_graphs(2, cap=2)) == 2


def test_prune_soundness_sampled():
    rnd = random.Random(7)
    pruned = []

    def grab(g, why):
        if why == "family":
            pruned.append(g)

    checked = 0
    for n, spec in [(8, S2), (8, S1), (7, ProblemSpec(cycle_graph(5)))]:
        tree = AugmentationTree(n, FamilyPruner(spec), on_prune=grab)
        for _ in tree:
            pass
        for g in rnd.sample(pruned, min(len(pruned), 400)):
            assert max_disjoint_copies(g, spec.F, spec.k) >= spec.k
            checked += 1
        pruned.clear()
    assert checked >= 1000


def test_max_degree_and_bound_pruning_match_filter():
    full = [g for g in enumerate_graphs(7) if g.max_degree() <= 3 and g.edge_count >= 8]
    got = list(AugmentationTree(7, max_degree=3, min_edges=8))
    assert sorted(map(graph6_encode, got)) == sorted(map(graph6_encode, full))


@settings(max_examples=40)
@given(st.integers(1, 8))
def test_graph6_round_trip_on_enumerated(n):
    for g in enumerate_graphs(min(n, 7)):
        assert graph6_decode(graph6_encode(g)) == g


# -- catalogs ----------------------------------------------------------------------


def test_edge_examples():
    cat = edge_extremal(5, S1)
    assert cat.value == 6 and cat.graphs == [canonical_graph6(turan_graph(5, 2))]
    assert edge_extremal(8, S2).value == 19 == turan_edges(7, 2) + 7


def test_ex_6_2k3_is_12():
    # K3 v (3 isolated vertices): every triangle uses two of the clique vertices
    cat = edge_extremal(6, S2)
    assert cat.value == 12
    assert cat.graphs == [canonical_graph6(join(K3, Graph(3)))]


@pytest.mark.parametrize("n,spec", [(7, S2), (8, S2), (7, S1), (7, ProblemSpec(cycle_graph(5)))])
def test_catalog_invariants(n, spec):
    cat = edge_extremal(n, spec)
    assert cat.graphs == sorted(set(cat.graphs))
    assert len({canonical_graph6(g) for g in cat.decoded()}) == len(cat.graphs)
    for g in cat.decoded():
        assert is_family_free(g, spec) and g.edge_count == cat.value
    # unpruned search gives the same catalog
    plain = edge_extremal(n, spec, prune=False)
    assert plain.value == cat.value and plain.graphs == cat.graphs


def test_pruned_matches_filter_oracle():
    for n in range(3, 8):
        free = [g for g in enumerate_graphs(n) if is_family_free(g, S2)]
        best = max(g.edge_count for g in free)
        assert edge_extremal(n, S2).graphs == sorted(graph6_encode(g) for g in free if g.edge_count == best)


def test_spectral_examples():
    cat = spectral_extremal(5, S1)
    assert cat.graphs == [canonical_graph6(complete_multipartite([3, 2]))]
    assert cat.value == pytest.approx(6**0.5, abs=1e-9)
    cat = spectral_extremal(6, S1)
    assert cat.graphs == [canonical_graph6(complete_multipartite([3, 3]))]
    assert cat.value == pytest.approx(3, abs=1e-9)


@pytest.mark.parametrize("n,spec", [(6, S2), (7, S2), (6, S1)])
def test_spectral_catalog_matches_unpruned_oracle(n, spec):
    cat = spectral_extremal(n, spec)
    rhos = {graph6_encode(g): spectral_radius(g).rho for g in enumerate_graphs(n) if is_family_free(g, spec)}
    top = max(rhos.values())
    assert cat.graphs == sorted(s for s, r in rhos.items() if r > top - 1e-9)
    assert cat.value == pytest.approx(top, abs=1e-9)
    runner = max((r for s, r in rhos.items() if s not in cat.graphs), default=None)
    assert cat.details["runner_up"] >= runner - 1e-9
    for s in cat.graphs:
        res = spectral_radius(graph6_decode(s))
        assert res.rho + res.residual >= cat.value - cat.details["residual"]


def test_spectral_ties_are_listed():
    # for k3-free n=2 the only candidates are the edge and the empty graph
    cat = spectral_extremal(2, S1)
    assert cat.graphs == ["A_"] and not cat.details["ambiguous"]
    # C5-free n=4: K4 minus nothing; disjoint classes tie only if equal radius
    g = spectral_extremal(4, ProblemSpec(cycle_graph(5)))
    assert g.graphs == [canonical_graph6(complete_graph(4))]


def test_stanley_bound():
    for n in range(2, 9):
        assert spectral_radius(complete_graph(n)).rho == pytest.approx(stanley_bound(n * (n - 1) // 2))
    for g in enumerate_graphs(6):
        assert spectral_radius(g).rho <= stanley_bound(g.edge_count) + 1e-9


def test_catalog_json_round_trip(tmp_path):
    cat = edge_extremal(7, S2)
    p = tmp_path / "c.json"
    cat.save(p)
    back = ExtremalCatalog.load(p)
    assert back.to_json(timing=False) == cat.to_json(timing=False)
    d = json.loads(p.read_text())
    assert d["schema_version"] == "1.0"
    assert set(d["stats"]) == {"nodes_visited", "pruned", "wall_time"}
    assert d["family"] == {"F_graph6": "Bw", "k": 2, "r": 2, "a": 0}


def test_serial_parallel_byte_identical():
    for fn in (edge_extremal, spectral_extremal):
        a = fn(8, S2)
        b = fn(8, S2, workers=2, split_depth=4)
        c = fn(8, S2, split_depth=7)
        assert a.to_json(timing=False) == b.to_json(timing=False) == c.to_json(timing=False)


@settings(max_examples=6)
@given(st.integers(1, 9), st.integers(3, 7))
def test_checkpoint_resume_reproduces(tmp_path_factory, step, depth):
    path = tmp_path_factory.mktemp("ck") / "ck.json"
    ref = edge_extremal(8, S2, split_depth=depth)
    stops = 0
    while True:
        try:
            out = edge_extremal(8, S2, split_depth=depth, checkpoint=path, stop_after=step)
            break
        except SearchInterrupted as exc:
            stops += 1
            assert exc.done < exc.total
            assert json.loads(path.read_text())["report"] == "checkpoint"
    assert out.to_json(timing=False) == ref.to_json(timing=False)
    assert not path.exists()


def test_checkpoint_parameter_mismatch(tmp_path):
    path = tmp_path / "ck.json"
    with pytest.raises(SearchInterrupted):
        edge_extremal(8, S2, checkpoint=path, stop_after=1)
    with pytest.raises(InputError, match="different"):
        edge_extremal(9, S2, checkpoint=path)


def test_spectral_checkpoint(tmp_path):
    path = tmp_path / "ck.json"
    ref = spectral_extremal(7, S2)
    with pytest.raises(SearchInterrupted):
        spectral_extremal(7, S2, checkpoint=path, stop_after=2)
    assert spectral_extremal(7, S2, checkpoint=path).to_json(timing=False) == ref.to_json(timing=False)


def test_stats_add():
    s = SearchStats(1, 2)
    s.add(SearchStats(3, 4))
    assert s.to_dict(timing=False) == {"nodes_visited": 4, "pruned": 6}


# -- constructions and verdicts ----------------------------------------------------


def test_construct_examples():
    (g,) = construct_candidates(9, S2)
    assert g.edge_count == 24
    assert canonical_graph6(g) == canonical_graph6(join(complete_graph(1), turan_graph(8, 2)))
    (g,) = construct_candidates(7, S2)
    assert g.edge_count == 15
    for n in range(4, 9):
        (g,) = construct_candidates(n, ProblemSpec(complete_graph(4)))
        assert g == turan_graph(n, 3) or canonical_graph6(g) == canonical_graph6(turan_graph(n, 3))
    with pytest.raises(InputError):
        construct_candidates(3, S2)


def test_lower_bound_examples():
    assert lower_bound_edges(8, S2) == 19
    assert lower_bound_edges(7, S2) == 15
    for n in range(1, 30):
        assert lower_bound_edges(n, S1) == turan_edges(n, 2)
    with pytest.raises(InputError):
        lower_bound_edges(8, ProblemSpec(K3, 2))


def test_measure_excess():
    assert measure_excess(K3, range(3, 8)) == {n: 0 for n in range(3, 8)}
    # C5: ex(n, C5) = e(T(n, 2)) for n >= 6 but K4 beats it at n = 4
    a = measure_excess(cycle_graph(5), range(4, 9))
    assert a[4] == 2 and all(a[n] == 0 for n in range(6, 9))
    assert measured_spec(cycle_graph(5), 2, range(4, 9)).a == 0
    with pytest.raises(InputError):
        measured_spec(cycle_graph(5), 2, [3, 4, 5, 6])


def test_verify_edge_k1_all_equal():
    rep = verify_edge_theorem(range(3, 10), S1)
    assert [r["verdict"] for r in rep.rows] == [EQUAL] * 7
    assert rep.stable_from == 3
    for r in rep.rows:
        assert r["ex"] == r["n"] ** 2 // 4 == r["lower_bound"]


def test_verify_edge_k2_small_orders():
    rep = verify_edge_theorem(range(3, 10), S2)
    verdicts = {r["n"]: r["verdict"] for r in rep.rows}
    assert verdicts[3] == NOT_APPLICABLE
    assert verdicts[6] == DIFFERS
    assert verdicts[7] == AMONG
    assert verdicts[9] == EQUAL
    assert rep.stable_from == 9
    assert rep.row(6)["ex"] == 12 and rep.row(6)["construction_edges"] == 11


def test_verify_spectral_k1():
    rep = verify_spectral_theorem(range(4, 8), S1)
    for r in rep.rows:
        assert r["contained"] and r["gap_certified"] and not r["ambiguous"]
        assert r["spectral_extremal"] == [canonical_graph6(turan_graph(r["n"], 2))]


def test_verify_spectral_k2_records_small_n():
    rep = verify_spectral_theorem([6, 7, 8], S2)
    assert rep.row(6)["contained"] and rep.row(7)["contained"]
    # K3 v 5 isolated vertices has radius 5 but only 18 < 19 edges
    r8 = rep.row(8)
    assert not r8["contained"]
    assert r8["spectral_extremal"] == [canonical_graph6(join(K3, Graph(5)))]
    assert r8["rho_max"] == pytest.approx(5)
    assert rep.stable_from is None
