import itertools
import random

import pytest

from simplelocal import (
    AugmentedParams,
    GuaranteeNotApplicable,
    InputError,
    SeedTooLargeError,
    UndefinedScoreError,
    conductance,
)
from simplelocal.graph_core import Graph
from simplelocal.oracle import brute_min_quotient
from simplelocal.simple_local import (
    check_quality_guarantee,
    max_admissible_gamma,
    modified_quotient,
    refine,
    relative_quotient,
    simple_local,
)

from helpers import one, path_graph, random_instances


def params(g, r, delta):
    return AugmentedParams.for_seed(g, g.node_set(r), 1.0, delta)


class TestQuotients:
    def test_seed_itself(self, barbell):
        r = one(1, 2)
        assert relative_quotient(barbell, r, r) == pytest.approx(conductance(barbell, r))

    def test_barbell_relative(self, barbell):
        assert relative_quotient(barbell, one(1, 2), one(1, 2, 3)) == pytest.approx(1 / 2.8)

    def test_whole_graph_undefined(self, barbell):
        with pytest.raises(UndefinedScoreError):
            relative_quotient(barbell, one(1, 2), range(6))

    def test_modified(self, barbell):
        r = one(1, 2)
        p = params(barbell, r, 0.6)
        assert p.epsilon == pytest.approx(1.0)
        assert modified_quotient(barbell, r, p, one(1, 2, 3)) == pytest.approx(1.0)
        assert modified_quotient(barbell, r, p, one(1, 2)) == pytest.approx(0.5)

    def test_zero_delta_matches_relative(self):
        for g, r in random_instances(30, seed=2, nmax=8):
            p = params(g, r, 0.0)
            for k in range(1, g.node_count):
                for s in itertools.combinations(range(g.node_count), k):
                    try:
                        a = relative_quotient(g, r, s)
                    except UndefinedScoreError:
                        with pytest.raises(UndefinedScoreError):
                            modified_quotient(g, r, p, s)
                        continue
                    assert modified_quotient(g, r, p, s) == pytest.approx(a)


class TestSimpleLocal:
    def test_barbell_unregularized(self, barbell):
        res = simple_local(barbell, one(1, 2), 0.0)
        assert res.best_set.members == one(1, 2, 3)
        assert res.best_conductance == pytest.approx(1 / 7)
        assert res.alpha_trace == pytest.approx([0.5, 1 / 2.8])

    def test_barbell_conductance_update_trace(self, barbell):
        res = simple_local(barbell, one(1, 2), 0.0, alpha_update="conductance")
        assert res.best_set.members == one(1, 2, 3)
        assert res.alpha_trace == pytest.approx([0.5, 1 / 7])

    def test_barbell_regularized_keeps_seed(self, barbell):
        res = simple_local(barbell, one(1, 2), 0.6)
        assert res.best_set.members == one(1, 2)
        assert res.best_conductance == pytest.approx(0.5)
        assert res.alpha_trace == [0.5]
        assert res.flow_calls == 1

    def test_optimal_seed(self, barbell):
        res = simple_local(barbell, one(1, 2, 3), 0.0)
        assert res.best_set.members == one(1, 2, 3)
        assert res.best_conductance == pytest.approx(1 / 7)

    def test_monotone_regularization_on_barbell(self, barbell):
        lo, hi = simple_local(barbell, one(1, 2), 0.0), simple_local(barbell, one(1, 2), 0.6)
        assert lo.best_conductance <= hi.best_conductance
        assert hi.explored_volume <= lo.explored_volume

    def test_disconnected_seed(self):
        g = Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)])
        res = simple_local(g, {0, 1, 2}, 0.5)
        assert res.best_conductance == 0.0
        assert res.best_set.members == {0, 1, 2}

    def test_bad_input(self, barbell):
        with pytest.raises(InputError):
            simple_local(barbell, set(), 0.0)
        with pytest.raises(SeedTooLargeError):
            simple_local(barbell, one(1, 2, 3, 4), 0.0)
        with pytest.raises(InputError):
            simple_local(barbell, one(1, 2), -0.1)
        with pytest.raises(InputError):
            simple_local(barbell, one(1, 2), 0.1, alpha_update="bisect")

    def test_matches_brute_force(self):
        for i, (g, r) in enumerate(random_instances(150, seed=31, nmax=10, weighted_every=3)):
            for delta in (0.0, 0.1, 0.5, 1.0):
                res = simple_local(g, r, delta)
                p = params(g, r, delta)
                best = brute_min_quotient(g, r, p.epsilon)
                got = modified_quotient(g, r, p, res.best_set)
                assert got == pytest.approx(best.best_value, rel=1e-9), (i, delta)
                trace = res.alpha_trace
                assert all(b < a for a, b in zip(trace, trace[1:]))
                assert len(trace) <= g.node_count
                assert res.best_conductance <= conductance(g, r) + 1e-12
                assert res.best_conductance == pytest.approx(conductance(g, res.best_set))

    def test_conductance_update_is_never_worse_in_conductance(self):
        for g, r in random_instances(60, seed=8, nmax=9):
            for delta in (0.0, 0.5):
                a = simple_local(g, r, delta, alpha_update="conductance")
                assert a.best_conductance <= conductance(g, r) + 1e-12
                assert all(y < x for x, y in zip(a.alpha_trace, a.alpha_trace[1:]))


class TestQualityGuarantee:
    def test_subset_of_seed(self):
        for g, r in random_instances(40, seed=41, nmax=8):
            for delta in (0.0, 0.3, 1.0):
                s = simple_local(g, r, delta).best_set
                for k in range(1, len(r) + 1):
                    for c in itertools.combinations(sorted(r), k):
                        assert check_quality_guarantee(g, r, delta, s, c)

    def test_barbell_gamma(self, barbell):
        r, c = one(1, 2), one(1, 2, 3)
        gamma = max_admissible_gamma(barbell, r, c)
        assert gamma == pytest.approx(0.4)
        s = simple_local(barbell, r, 0.0).best_set
        assert check_quality_guarantee(barbell, r, 0.0, s, c, gamma)

    def test_not_applicable(self, barbell):
        r, c = one(1, 2), one(1, 2, 3)
        s = one(1, 2, 3)
        with pytest.raises(GuaranteeNotApplicable):
            check_quality_guarantee(barbell, r, 0.0, s, c)
        with pytest.raises(GuaranteeNotApplicable):
            check_quality_guarantee(barbell, r, 0.5, s, c, gamma=0.4)
        with pytest.raises(GuaranteeNotApplicable):
            check_quality_guarantee(barbell, r, 0.0, s, c, gamma=0.45)

    def test_random_admissible_gamma(self):
        rng = random.Random(5)
        checked = 0
        for g, r in random_instances(80, seed=43, nmax=8, weighted_every=2):
            n = g.node_count
            for delta in (0.0, 0.1):
                s = simple_local(g, r, delta).best_set
                for _ in range(15):
                    c = set(rng.sample(range(n), rng.randint(1, n - 1)))
                    if c <= r:
                        continue
                    top = max_admissible_gamma(g, r, c)
                    if top <= delta:
                        continue
                    gamma = rng.uniform(delta, top) if rng.random() < 0.5 else top
                    if gamma <= delta:
                        continue
                    assert check_quality_guarantee(g, r, delta, s, c, gamma)
                    checked += 1
        assert checked > 50


class TestRefine:
    def test_barbell(self, barbell):
        res = refine(barbell, one(1, 2), 0.0)
        assert res.seed.members == one(1, 2, 3)
        assert res.best_set.members == one(1, 2, 3)
        assert res.best_conductance == pytest.approx(1 / 7)

    def test_short_path_seed_too_large(self, path4):
        # {1,2,3} has volume 5 against 1 outside
        with pytest.raises(SeedTooLargeError):
            refine(path4, one(2), 0.0)

    def test_longer_path(self):
        g = path_graph(8)
        res = refine(g, {3}, 0.0)
        assert res.seed.members == {2, 3, 4}
        best = brute_min_quotient(g, res.seed.members, params(g, {2, 3, 4}, 0.0).epsilon)
        assert relative_quotient(g, res.seed, res.best_set) == pytest.approx(best.best_value)

    def test_empty_prior(self, barbell):
        with pytest.raises(InputError):
            refine(barbell, set(), 0.0)

    def test_full_component(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        res = refine(g, {0}, 0.0)
        assert res.best_set.members == {0, 1, 2}
        assert res.best_conductance == 0.0
