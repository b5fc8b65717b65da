import json

import numpy as np
import pytest

from xenoclass import (RateConfig, fitch_graph, induced_partition,
                       run_experiment, scenario_from_json, simulate_scenario)
from xenoclass.simulate import prune_gene_tree, simulate_gene_tree, \
    simulate_species_tree


class TestSpeciesTree:
    def test_planted_root_and_times(self):
        rng = np.random.default_rng(1)
        for n in (2, 5, 40):
            s = simulate_species_tree(n, rng)
            assert s.time[s.root] == 0.0
            assert len(s.children[s.root]) == 1
            leaves = s.leaves()
            assert len(leaves) == n
            assert all(s.time[v] == 1.0 for v in leaves)
            # child times strictly increase along every branch
            for v in range(len(s.parent)):
                if s.parent[v] >= 0:
                    assert s.time[s.parent[v]] < s.time[v]

    def test_first_split_inside_interval(self):
        rng = np.random.default_rng(2)
        s = simulate_species_tree(2, rng)
        stem = s.children[s.root][0]
        assert 0.0 < s.time[stem] < 1.0
        assert len(s.children[stem]) == 2

    def test_rejects_tiny(self):
        with pytest.raises(ValueError):
            simulate_species_tree(1, np.random.default_rng(0))


class TestGeneTree:
    def test_null_rates_mirror_species_tree(self):
        # no duplication/loss/transfer: one gene per species lineage
        rates = RateConfig(0, 0, 0, species_leaves_min=5,
                           species_leaves_max=30)
        sc = simulate_scenario(rates, 7)
        assert sc is not None
        assert sc.h == frozenset()
        assert len(sc.partition) == 1
        species_leaves = len(sc.species.leaves())
        assert len(sc.tree.leaf_set()) == species_leaves
        # labels s<branch>_1, one per species leaf
        assert all(lab.endswith("_1") for lab in sc.tree.leaf_labels())

    def test_hgt_log_matches_marks(self):
        rates = RateConfig(1, 1, 1)
        sc = None
        seed = 0
        while sc is None or not sc.h:
            sc = simulate_scenario(rates, seed)
            seed += 1
        assert any(e["type"] == "hgt" for e in sc.events)
        for e in sc.events:
            donor, rec = e["donor"], e["recipient"]
            s = sc.species
            # donor and recipient branches coexist at the event time
            for b in (donor, rec):
                assert s.time[s.parent[b]] < e["time"] < s.time[b]
            assert donor != rec

    def test_loss_only_family_is_none(self):
        rates = RateConfig(0, 50, 0, species_leaves_min=10,
                           species_leaves_max=10)
        assert simulate_scenario(rates, 3) is None

    def test_prune_drops_losses(self):
        rng = np.random.default_rng(5)
        rates = RateConfig(1, 1, 1, species_leaves_min=10,
                           species_leaves_max=20)
        species = simulate_species_tree(12, rng)
        verts, _ = simulate_gene_tree(species, rates, rng)
        pruned = prune_gene_tree(verts)
        if pruned is not None:
            tree, h, leaf_species = pruned
            assert len(leaf_species) == len(tree.leaves())
            for v in tree.preorder():
                kids = tree.children[v]
                assert len(kids) != 1


class TestScenario:
    def test_invariants(self):
        rates = RateConfig(1, 1, 1)
        count = 0
        seed = 100
        while count < 15:
            sc = simulate_scenario(rates, seed)
            seed += 1
            if sc is None:
                continue
            count += 1
            assert sc.partition.as_set() == \
                induced_partition(sc.tree, sc.h).as_set()
            assert sc.fitch == fitch_graph(sc.tree, sc.h)
            if not sc.h:
                assert len(sc.partition) == 1

    def test_seeded_determinism(self):
        rates = RateConfig(1, 0.5, 1.5)
        a = simulate_scenario(rates, 42)
        b = simulate_scenario(rates, 42)
        assert a is not None
        assert a.to_json() == b.to_json()

    def test_json_round_trip(self):
        rates = RateConfig(1, 1, 1)
        sc = None
        seed = 0
        while sc is None:
            sc = simulate_scenario(rates, seed)
            seed += 1
        tree, h, partition, rvals = scenario_from_json(sc.to_json())
        assert tree.newick() == sc.tree.newick()
        assert h == sc.h
        assert partition.as_set() == sc.partition.as_set()
        assert rvals == [1, 1, 1]


class TestRunExperiment:
    def test_counts_and_stream(self, tmp_path):
        configs = [RateConfig(1, 1, 0.5), RateConfig(1, 1, 1)]
        path = tmp_path / "corpus.jsonl"
        with open(path, "w") as fh:
            scenarios = list(run_experiment(configs, 5, 99, out=fh))
        assert len(scenarios) == 10
        lines = path.read_text().splitlines()
        assert len(lines) == 10
        assert json.loads(lines[0])["rates"] == [1, 1, 0.5]
        assert json.loads(lines[-1])["rates"] == [1, 1, 1]

    def test_master_seed_determinism(self):
        configs = [RateConfig(1, 1, 1)]
        a = [s.to_json() for s in run_experiment(configs, 4, 7)]
        b = [s.to_json() for s in run_experiment(configs, 4, 7)]
        assert a == b
