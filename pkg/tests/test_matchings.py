import random
from fractions import Fraction

import pytest

from cycleramsey.cycles import erdos_gallai_cycle
from cycleramsey.errors import NoQualifyingComponent, PreconditionViolated
from cycleramsey.graphs import Graph, bipartition, complete_graph, components
from cycleramsey.matchings import (
    ClosedWalk,
    MatchingCertificate,
    best_component_matching,
    bipartite_split,
    closed_walk_through_matching,
    matching_along_cycle,
    maximum_matching,
    tutte_partition,
)

from conftest import oracle_deficiency, oracle_matching_size, random_graph


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_matching_examples(petersen):
    assert len(maximum_matching(complete_graph(4)).edges) == 2
    assert len(maximum_matching(cycle_graph(5)).edges) == 2
    m = maximum_matching(petersen)
    assert len(m.edges) == 5 == oracle_matching_size(petersen)
    assert m.check(petersen)


def test_matching_is_canonicalized():
    g = Graph(4, [(2, 3), (0, 1)])
    m = maximum_matching(g)
    assert m.edges == ((0, 1), (2, 3))


def test_matching_oracle_equivalence():
    rng = random.Random(41)
    for _ in range(120):
        g = random_graph(rng, rng.randint(1, 12), rng.uniform(0.05, 0.95))
        m = maximum_matching(g)
        assert m.check(g)
        assert len(m.edges) == oracle_matching_size(g)


def test_berge_duality_spot_check():
    rng = random.Random(42)
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.1, 0.7))
        nu = len(maximum_matching(g).edges)
        assert nu == (g.n - oracle_deficiency(g)) // 2


def test_best_component_matching_examples():
    g = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 3)])
    comp, m = best_component_matching(g, require_nonbipartite=True)
    assert comp == frozenset({0, 1, 2}) and len(m.edges) == 1
    comp, m = best_component_matching(g, require_nonbipartite=False)
    assert comp == frozenset({3, 4, 5, 6}) and len(m.edges) == 2
    with pytest.raises(NoQualifyingComponent):
        best_component_matching(cycle_graph(4), require_nonbipartite=True)


def test_tutte_partition_examples():
    star = Graph(6, [(0, i) for i in range(1, 6)])
    part = tutte_partition(star, 3)
    assert part.S == frozenset({0}) and part.U == frozenset()
    assert part.T == frozenset(range(1, 6))
    assert part.verify(star)

    empty = Graph(6)
    part = tutte_partition(empty, 1)
    assert part.S == frozenset() and part.T == frozenset(range(6))
    assert part.verify(empty)

    tri_iso = Graph(7, [(0, 1), (1, 2), (0, 2)])
    part = tutte_partition(tri_iso, 4)
    assert part.verify(tri_iso)


def test_tutte_partition_precondition():
    with pytest.raises(PreconditionViolated):
        tutte_partition(complete_graph(4), 3)  # perfect matching saturates 4


def test_tutte_partition_random_suite():
    rng = random.Random(13)
    for _ in range(150):
        g = random_graph(rng, rng.randint(2, 22), rng.uniform(0.05, 0.5))
        nu = len(maximum_matching(g).edges)
        n_target = 2 * nu + 1 + rng.randint(0, 3)
        part = tutte_partition(g, n_target)
        assert part.verify(g)


def test_bipartite_split_examples():
    c4c3 = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (4, 6)])
    split = bipartite_split(c4c3, 3, 1)
    assert split.Vprime == frozenset({0, 1, 2, 3})
    assert split.Vdoubleprime == frozenset({4, 5, 6})
    assert split.verify(c4c3)

    all_bip = Graph(6, [(0, 1), (2, 3), (4, 5)])
    split = bipartite_split(all_bip, 1, 2)
    assert split.Vdoubleprime == frozenset()

    with pytest.raises(PreconditionViolated) as err:
        bipartite_split(complete_graph(5), 2, 1)
    comp, match = err.value.witness
    assert match.saturation >= 2 and match.check(complete_graph(5))


def test_bipartite_split_random_suite():
    rng = random.Random(29)
    done = 0
    while done < 80:
        g = random_graph(rng, rng.randint(3, 18), rng.uniform(0.05, 0.4))
        # choose a bound just above the worst non-bipartite component
        worst = 0
        for comp in components(g):
            if bipartition(g.subgraph_on(comp)) is None:
                worst = max(
                    worst, maximum_matching(g, within=comp).saturation
                )
        alpha_n = worst + 1
        split = bipartite_split(g, Fraction(alpha_n), 1)
        assert split.verify(g)
        done += 1


def test_matching_along_cycle():
    cert = erdos_gallai_cycle(complete_graph(5), 5)
    m = matching_along_cycle(cert)
    assert m.check(complete_graph(5))
    assert m.saturation >= cert.length - 1


def test_closed_walk_examples():
    tri = complete_graph(3)
    walk = closed_walk_through_matching(tri, MatchingCertificate(((0, 1),)), "odd")
    assert walk.length == 3  # the triangle itself

    path = Graph(4, [(0, 1), (1, 2), (2, 3)])
    m = MatchingCertificate(((0, 1), (2, 3)))
    walk = closed_walk_through_matching(path, m, "even")
    assert walk.length % 2 == 0
    assert walk.check(path, m, "even")

    c4 = cycle_graph(4)
    with pytest.raises(PreconditionViolated):
        closed_walk_through_matching(
            c4, MatchingCertificate(((0, 1), (2, 3))), "odd"
        )


def test_closed_walk_preconditions():
    two_comps = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionViolated):
        closed_walk_through_matching(
            two_comps, MatchingCertificate(((0, 1), (2, 3))), "even"
        )
    with pytest.raises(PreconditionViolated):
        closed_walk_through_matching(
            complete_graph(3), MatchingCertificate(()), "even"
        )


def test_closed_walk_random_suite():
    rng = random.Random(31)
    done = 0
    while done < 80:
        g = random_graph(rng, rng.randint(3, 14), rng.uniform(0.25, 0.7))
        comps = [c for c in components(g) if len(c) >= 2]
        if not comps:
            continue
        comp = comps[rng.randrange(len(comps))]
        sub = g.subgraph_on(comp)
        m = maximum_matching(g, within=comp)
        if not m.edges:
            continue
        keep = rng.randint(1, len(m.edges))
        m = MatchingCertificate(tuple(rng.sample(list(m.edges), keep)))
        parity = "odd" if bipartition(sub) is None else "even"
        walk = closed_walk_through_matching(g, m, parity)
        assert walk.check(g, m, parity, comp)
        done += 1


def test_walk_predicate_rejects():
    tri = complete_graph(3)
    assert not ClosedWalk((0, 1)).check(tri, parity="odd")  # even length
    assert not ClosedWalk((0, 1, 2)).check(
        tri, matching=MatchingCertificate(((0, 1),)), component=frozenset({0, 1})
    )  # vertex 2 outside the claimed component
    path = Graph(3, [(0, 1)])
    assert not ClosedWalk((0, 1, 2)).check(path)  # missing edges
