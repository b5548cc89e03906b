"""Generator determinism and statistics, exact scenario probabilities vs
simulation, tail bounds, neighborhood-bound checkers vs direct evaluation,
and Monte Carlo aggregation."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from matpart.model import (
    BLUE,
    GREEN,
    RED,
    TypeGraph,
    common_neighborhood,
    find_subtype_copy,
    type_is_friendly,
)
from matpart.constructions import rho_obstruction_family
from matpart.randtypes import (
    EXHAUSTIVE_TUPLE_LIMIT,
    LemmaReport,
    MCProperty,
    MembershipScenario,
    RandomSpec,
    chernoff_exponent,
    chernoff_tail_bound,
    check_neighborhood_lemma,
    exact_membership_probability,
    exhaustive_tuple_space,
    monte_carlo,
    parse_experiment_spec,
    plant_subtype,
    run_experiment,
    sample_type,
    splitmix_draw,
)


class TestSampling:
    def test_same_seed_same_type(self):
        for model in ("friendly", "general"):
            spec = RandomSpec(12, model, 424242)
            assert sample_type(spec) == sample_type(spec)

    def test_different_seeds_differ(self):
        a = sample_type(RandomSpec(20, "general", 0))
        b = sample_type(RandomSpec(20, "general", 1))
        assert a != b

    def test_friendly_structure(self):
        for seed in range(20):
            tau = sample_type(RandomSpec(9, "friendly", seed))
            assert type_is_friendly(tau)
            assert len(tau.red_vertices()) == 9
            assert len(tau.blue_vertices()) == 9
            assert tau.red_vertices() == tuple(range(9))

    def test_stream_layout_matches_scalar_reference(self):
        # friendly: pair t gets draw index t; same-class mod 2, cross mod 3
        spec = RandomSpec(4, "friendly", 3141)
        tau = sample_type(spec)
        t = 0
        for i in range(8):
            for j in range(i + 1, 8):
                draw = splitmix_draw(3141, t)
                if (i < 4) == (j < 4):
                    assert tau.edge(i, j) == draw % 2
                else:
                    assert tau.edge(i, j) == draw % 3
                t += 1
        # general: vertex v gets index v, pair t gets index n + t
        spec = RandomSpec(6, "general", 2718)
        tau = sample_type(spec)
        for v in range(6):
            assert tau.vertex_colors[v] == splitmix_draw(2718, v) % 2
        t = 0
        for i in range(6):
            for j in range(i + 1, 6):
                assert tau.edge(i, j) == splitmix_draw(2718, 6 + t) % 3
                t += 1

    def test_general_color_frequencies_within_four_sigma(self):
        counts = {RED: 0, BLUE: 0, GREEN: 0}
        per_type = 100 * 99 // 2
        seeds = 200
        for seed in range(seeds):
            tau = sample_type(RandomSpec(100, "general", seed))
            for c in (RED, BLUE, GREEN):
                counts[c] += sum(1 for e in tau.edge_colors if e == c)
        total = per_type * seeds
        sigma = math.sqrt(total * (1 / 3) * (2 / 3))
        for c in (RED, BLUE, GREEN):
            assert abs(counts[c] - total / 3) <= 4 * sigma


class TestPlanting:
    def test_copy_found_after_planting(self):
        rho = rho_obstruction_family()
        tau = sample_type(RandomSpec(7, "friendly", 5))
        planted = plant_subtype(tau, rho, (0, 1, 2, 7, 8, 9))
        assert find_subtype_copy(planted, rho) is not None

    def test_planting_preserves_friendliness(self):
        rho = rho_obstruction_family()
        for seed in range(20):
            tau = sample_type(RandomSpec(6, "friendly", seed))
            planted = plant_subtype(tau, rho, (1, 3, 5, 6, 8, 10))
            assert type_is_friendly(planted)

    def test_planting_is_idempotent(self):
        rho = rho_obstruction_family()
        tau = sample_type(RandomSpec(7, "friendly", 6))
        once = plant_subtype(tau, rho, (0, 2, 4, 7, 9, 11))
        twice = plant_subtype(once, rho, (0, 2, 4, 7, 9, 11))
        assert once == twice

    def test_color_mismatch_rejected(self):
        rho = rho_obstruction_family()
        tau = sample_type(RandomSpec(7, "friendly", 7))
        with pytest.raises(ValueError, match="color"):
            plant_subtype(tau, rho, (0, 1, 7, 2, 8, 9))  # blue slot gets red vertex

    def test_everything_outside_untouched(self):
        rho = rho_obstruction_family()
        tau = sample_type(RandomSpec(8, "friendly", 8))
        position = (0, 1, 2, 8, 9, 10)
        planted = plant_subtype(tau, rho, position)
        inside = set(position)
        for i in range(16):
            for j in range(i + 1, 16):
                if not (i in inside and j in inside):
                    assert planted.edge(i, j) == tau.edge(i, j)


def generic_pair_scenario(extra_sets=()):
    return MembershipScenario(
        "friendly",
        RED,
        (("r1", RED), ("r2", RED), ("b1", BLUE), ("b2", BLUE)),
        (("r1", "r2"), ("b1", "b2")) + tuple(extra_sets),
    )


class TestExactProbabilities:
    def test_generic_pair_scenario(self):
        assert exact_membership_probability(generic_pair_scenario()).value == Fraction(
            7, 18
        )

    def test_overlapping_third_set(self):
        result = exact_membership_probability(
            generic_pair_scenario(extra_sets=(("r1", "b1"),))
        )
        assert result.value == Fraction(5, 18)

    def test_general_three_set(self):
        scenario = MembershipScenario(
            "general",
            RED,
            (("a", RED), ("b", RED), ("c", BLUE)),
            (("a", "b", "c"),),
        )
        assert exact_membership_probability(scenario).value == Fraction(15, 27)

    def test_monotone_as_sets_are_added(self):
        rng = random.Random(9)
        names = ["v0", "v1", "v2", "v3", "v4"]
        for _ in range(50):
            vertices = tuple((nm, rng.choice((RED, BLUE))) for nm in names)
            model = rng.choice(("friendly", "general"))
            candidate = rng.choice((RED, BLUE))
            sets = []
            last = Fraction(2)
            for _ in range(3):
                size = rng.randint(1, 4)
                sets.append(tuple(rng.sample(names, size)))
                scenario = MembershipScenario(model, candidate, vertices, tuple(sets))
                value = exact_membership_probability(scenario).value
                assert value <= last
                last = value

    def test_inconsistent_pairwise_colors_rejected(self):
        with pytest.raises(ValueError, match="inconsistent"):
            MembershipScenario(
                "friendly",
                RED,
                (("r1", RED), ("r2", RED)),
                (("r1", "r2"),),
                pairwise=(("r1", "r2", GREEN),),
            )

    def empirical_membership(self, n, seeds, tuple_vertices, sets, candidate_color):
        hits = trials = 0
        for seed in range(seeds):
            tau = sample_type(RandomSpec(n, "friendly", seed))
            neighborhoods = [common_neighborhood(tau, s) for s in sets]
            special = set().union(*sets)
            for v in range(2 * n):
                if v in special or tau.vertex_colors[v] != candidate_color:
                    continue
                trials += 1
                hits += all(v in nb for nb in neighborhoods)
        return hits, trials

    def test_exact_matches_simulation_generic(self):
        n = 30
        hits, trials = self.empirical_membership(
            n, 60, None, [(0, 1), (n, n + 1)], RED
        )
        p = 7 / 18
        sigma = math.sqrt(trials * p * (1 - p))
        assert abs(hits - trials * p) <= 4 * sigma

    def test_exact_matches_simulation_overlap(self):
        n = 30
        hits, trials = self.empirical_membership(
            n, 60, None, [(0, 1), (n, n + 1), (0, n)], RED
        )
        p = 5 / 18
        sigma = math.sqrt(trials * p * (1 - p))
        assert abs(hits - trials * p) <= 4 * sigma

    def test_exact_matches_simulation_general_three_set(self):
        hits = trials = 0
        for seed in range(60):
            tau = sample_type(RandomSpec(40, "general", seed))
            nb = common_neighborhood(tau, (0, 1, 2))
            for v in range(3, 40):
                trials += 1
                hits += v in nb
        p = 15 / 27
        sigma = math.sqrt(trials * p * (1 - p))
        assert abs(hits - trials * p) <= 4 * sigma


class TestChernoff:
    def test_reference_value(self):
        bound = chernoff_tail_bound(Fraction(1, 8), 100)
        assert chernoff_exponent(Fraction(1, 8), 100) == Fraction(686, 4608)
        assert math.isclose(bound, math.exp(-686 / 4608), rel_tol=1e-12)
        assert abs(bound - 0.8617) < 5e-4

    def test_strictly_decreasing_in_n(self):
        values = [chernoff_tail_bound(Fraction(1, 8), n) for n in range(10, 200)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_domain_guards(self):
        with pytest.raises(ValueError):
            chernoff_tail_bound(0, 100)
        with pytest.raises(ValueError):
            chernoff_tail_bound(Fraction(3, 2), 100)
        with pytest.raises(ValueError):
            chernoff_tail_bound(Fraction(1, 8), 2)


def brute_force_nsize(tau):
    """Direct evaluation of the pairwise bounds via common_neighborhood."""
    reds, blues = tau.red_vertices(), tau.blue_vertices()
    nv = tau.n
    worst_i, worst_ii = None, None
    for r1, r2 in combinations(reds, 2):
        for b1, b2 in combinations(blues, 2):
            base = common_neighborhood(tau, (r1, r2)) & common_neighborhood(
                tau, (b1, b2)
            )
            worst_i = min(worst_i, len(base)) if worst_i is not None else len(base)
            for v, w in combinations(range(nv), 2):
                if (v, w) in ((r1, r2), (b1, b2)):
                    continue
                size = len(base & common_neighborhood(tau, (v, w)))
                worst_ii = max(worst_ii, size) if worst_ii is not None else size
    return worst_i, worst_ii


class TestLemmaCheckers:
    def test_all_green_cross_toy_fails_part_i(self):
        vc = (RED, RED, BLUE, BLUE)
        ec = (RED, GREEN, GREEN, GREEN, GREEN, RED)
        report = check_neighborhood_lemma(TypeGraph(vc, ec), "nsize")
        assert not report.part_i_holds
        assert report.worst_i_size == 0

    def test_exhaustive_matches_direct_evaluation(self):
        for seed in range(8):
            tau = sample_type(RandomSpec(4, "friendly", seed))
            report = check_neighborhood_lemma(tau, "nsize", mode="exhaustive")
            worst_i, worst_ii = brute_force_nsize(tau)
            assert report.worst_i_size == worst_i
            assert report.worst_ii_size == worst_ii

    def test_witnesses_reproduce_reported_sizes(self):
        for mode, kwargs in (("exhaustive", {}), ("sampled", {"samples": 50})):
            tau = sample_type(RandomSpec(6, "friendly", 3))
            rep = check_neighborhood_lemma(tau, "nsize", mode=mode, **kwargs)
            r1, r2, b1, b2 = rep.worst_i
            base = common_neighborhood(tau, (r1, r2)) & common_neighborhood(
                tau, (b1, b2)
            )
            assert len(base) == rep.worst_i_size
            r1, r2, b1, b2, v, w = rep.worst_ii
            base = common_neighborhood(tau, (r1, r2)) & common_neighborhood(
                tau, (b1, b2)
            )
            assert len(base & common_neighborhood(tau, (v, w))) == rep.worst_ii_size

    def test_sampled_worst_within_exhaustive_range(self):
        tau = sample_type(RandomSpec(5, "friendly", 4))
        full = check_neighborhood_lemma(tau, "nsize", mode="exhaustive")
        sampled = check_neighborhood_lemma(tau, "nsize", mode="sampled", samples=30)
        assert sampled.worst_i_size >= full.worst_i_size
        assert sampled.worst_ii_size <= full.worst_ii_size

    def test_worst_sizes_bounded_by_vertex_count(self):
        for lemma_id, n, model in (
            ("nsize", 5, "friendly"),
            ("nsize2", 7, "friendly"),
            ("nsize3", 9, "general"),
        ):
            tau = sample_type(RandomSpec(n, model, 11))
            rep = check_neighborhood_lemma(tau, lemma_id, mode="sampled", samples=20)
            assert 0 <= rep.worst_i_size <= tau.n
            assert 0 <= rep.worst_ii_size <= tau.n

    def test_nsize2_exhaustive_matches_direct_evaluation(self):
        tau = sample_type(RandomSpec(7, "friendly", 2))
        rep = check_neighborhood_lemma(tau, "nsize2", mode="exhaustive")
        worst_i, worst_ii = None, None
        reds, blues = tau.red_vertices(), tau.blue_vertices()
        for rsel in combinations(reds, 6):
            for bsel in combinations(blues, 3):
                members = rsel + bsel
                size = len(common_neighborhood(tau, members))
                worst_i = min(worst_i, size) if worst_i is not None else size
                for v in range(tau.n):
                    if v in members:
                        continue
                    size2 = len(common_neighborhood(tau, members + (v,)))
                    worst_ii = (
                        max(worst_ii, size2) if worst_ii is not None else size2
                    )
        assert rep.worst_i_size == worst_i
        assert rep.worst_ii_size == worst_ii

    def test_nsize3_exhaustive_matches_direct_evaluation(self):
        tau = sample_type(RandomSpec(8, "general", 1))
        rep = check_neighborhood_lemma(tau, "nsize3", mode="exhaustive")
        sizes_i = []
        sizes_ii = []
        for members in combinations(range(tau.n), 3):
            sizes_i.append(len(common_neighborhood(tau, members)))
            for v in range(tau.n):
                if v not in members:
                    sizes_ii.append(len(common_neighborhood(tau, members + (v,))))
        assert rep.worst_i_size == min(sizes_i)
        assert rep.worst_ii_size == max(sizes_ii)

    def test_exhaustive_guard(self):
        tau = sample_type(RandomSpec(60, "friendly", 0))
        assert exhaustive_tuple_space(tau, "nsize") > EXHAUSTIVE_TUPLE_LIMIT
        with pytest.raises(ValueError, match="sampled"):
            check_neighborhood_lemma(tau, "nsize", mode="exhaustive")

    def test_mean_intersection_size_concentrates(self):
        # per-vertex membership probability 7/18 implies mean ~ (7/18) * 2n
        n = 200
        total = count = 0
        for seed in range(30):
            tau = sample_type(RandomSpec(n, "friendly", seed))
            rng = random.Random(seed)
            for _ in range(20):
                r1, r2 = rng.sample(range(n), 2)
                b1, b2 = rng.sample(range(n, 2 * n), 2)
                base = common_neighborhood(tau, (r1, r2)) & common_neighborhood(
                    tau, (b1, b2)
                )
                total += len(base)
                count += 1
        mean = total / count
        assert abs(mean - (7 / 18) * 2 * n) <= 0.02 * 2 * n


class TestMonteCarlo:
    def test_block_rows_almost_always_distinct(self):
        prop = MCProperty(kind="block_rows", model="friendly")
        (summary,) = monte_carlo(prop, [30], range(50))
        assert summary.fraction >= 0.98
        assert 0 <= summary.fraction <= 1

    def test_deterministic_given_seeds(self):
        prop = MCProperty(kind="lemma", lemma_id="nsize", tuple_samples=30)
        a = monte_carlo(prop, [10, 20], range(10))
        b = monte_carlo(prop, [10, 20], range(10))
        assert a == b

    def test_contains_rho_fraction_in_unit_interval(self):
        prop = MCProperty(kind="contains_rho", model="friendly", rho="thm1")
        (summary,) = monte_carlo(prop, [8], range(10))
        assert 0 <= summary.fraction <= 1

    def test_edge_frequency_mean_near_third(self):
        prop = MCProperty(kind="edge_frequency", model="general", color=GREEN)
        (summary,) = monte_carlo(prop, [100], range(100))
        per_type = 100 * 99 // 2
        sigma_mean = math.sqrt((1 / 3) * (2 / 3) / (per_type * 100))
        assert abs(summary.mean - 1 / 3) <= 4 * sigma_mean
        assert summary.successes == summary.trials


class TestExperimentSpecs:
    SPEC = """
# pairwise neighborhood bound fractions
property=lemma
lemma=nsize
part=i
model=friendly
n=10,15
seeds=0..9
mode=sampled:40
threshold=0.5
"""

    def test_parse_and_run(self):
        spec = parse_experiment_spec(self.SPEC)
        assert spec.n_values == (10, 15)
        assert spec.seeds == tuple(range(10))
        assert spec.threshold == 0.5
        summaries = run_experiment(spec)
        assert len(summaries) == 2
        assert all(s.trials == 10 for s in summaries)
        assert run_experiment(spec) == summaries

    def test_seed_count_form(self):
        spec = parse_experiment_spec("property=block_rows\nn=5\nseeds=7\n")
        assert spec.seeds == tuple(range(7))

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError, match="unknown experiment key"):
            parse_experiment_spec("property=block_rows\nn=5\nseeds=3\nbogus=1\n")

    def test_missing_required_key_rejected(self):
        with pytest.raises(ValueError, match="missing"):
            parse_experiment_spec("property=block_rows\nn=5\n")
