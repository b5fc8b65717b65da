"""Gene family history simulation.

A dated binary species tree (Yule process conditioned on the leaf
count, rescaled to unit depth) hosts a gene tree evolving by a
constant-rate birth-death process with duplication, loss, and
horizontal transfer; transfer recipients are drawn uniformly from the
branches coexisting with the donor.  Pruning the loss-only subtrees and
suppressing degree-2 vertices yields an observable scenario
(T, H, P, true Fitch graph) with the transfer marks preserved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

import numpy as np

from .fitch import FitchGraph, fitch_graph
from .partition import Partition
from .separating import induced_partition
from .tree import RootedTree

SPECIATION, DUPLICATION, HGT, LOSS, LEAF = "S", "D", "H", "L", "x"

_MAX_GENE_VERTICES = 500_000


@dataclass(frozen=True)
class RateConfig:
    duplication: float
    loss: float
    hgt: float
    species_leaves_min: int = 10
    species_leaves_max: int = 100

    def __post_init__(self):
        if min(self.duplication, self.loss, self.hgt) < 0:
            raise ValueError("rates must be nonnegative")
        if not 2 <= self.species_leaves_min <= self.species_leaves_max:
            raise ValueError("bad species leaf-count range")

    def key(self) -> str:
        return f"{self.duplication:g},{self.loss:g},{self.hgt:g}"


@dataclass
class DatedTree:
    """Binary species tree with vertex times; the planted root (time 0,
    one child) tops the stem branch, all leaves sit at time 1."""

    parent: list[int]
    children: list[list[int]]
    time: list[float]
    root: int = 0

    def leaves(self) -> list[int]:
        return [v for v in range(len(self.parent)) if not self.children[v]]


@dataclass
class GeneVertex:
    parent: int
    event: str                  # S/D/H/L/x
    time: float
    species: int                # species branch (child vertex key) or vertex
    transfer_in: bool = False   # edge from parent is a transfer edge
    children: list[int] = field(default_factory=list)


@dataclass
class Scenario:
    seed: int
    rates: RateConfig
    species: DatedTree
    tree: RootedTree
    h: frozenset[int]
    partition: Partition
    fitch: FitchGraph
    events: list[dict]

    def to_json(self) -> str:
        return json.dumps({
            "seed": self.seed,
            "rates": [self.rates.duplication, self.rates.loss,
                      self.rates.hgt],
            "newick_T": self.tree.newick(),
            "H": sorted(self.tree.edge_name(v) for v in self.h),
            "partition": sorted(sorted(c) for c in self.partition.classes),
            "events": self.events,
        })


def scenario_from_json(line: str) -> tuple[RootedTree, frozenset[int],
                                           Partition, list[float]]:
    """Decode a corpus line into (T, H, P, rates)."""
    rec = json.loads(line)
    from .tree import parse_newick
    tree = parse_newick(rec["newick_T"])
    h = frozenset(tree.resolve_edge_key(k) for k in rec["H"])
    partition = Partition.from_classes(rec["partition"])
    return tree, h, partition, [float(r) for r in rec["rates"]]


# ---------------------------------------------------------------------- #
# Species tree
# ---------------------------------------------------------------------- #

def simulate_species_tree(n: int, rng: np.random.Generator) -> DatedTree:
    """Yule tree with `n` leaves, unit speciation rate, node times
    rescaled so the planted root sits at 0 and all leaves at 1."""
    if n < 2:
        raise ValueError("species tree needs at least 2 leaves")
    parent = [-1, 0]
    children: list[list[int]] = [[1], []]
    time = [0.0, 0.0]
    alive = [1]
    t = 0.0
    while len(alive) < n:
        t += rng.exponential(1.0 / len(alive))
        v = alive.pop(int(rng.integers(len(alive))))
        time[v] = t
        for _ in range(2):
            parent.append(v)
            children[v].append(len(parent) - 1)
            children.append([])
            time.append(t)
            alive.append(len(parent) - 1)
    horizon = t + rng.exponential(1.0 / n)
    for v in alive:
        time[v] = horizon
    scale = 1.0 / horizon
    time = [x * scale for x in time]
    return DatedTree(parent, children, time)


# ---------------------------------------------------------------------- #
# Gene tree
# ---------------------------------------------------------------------- #

def simulate_gene_tree(species: DatedTree, rates: RateConfig,
                       rng: np.random.Generator,
                       ) -> tuple[list[GeneVertex], list[dict]]:
    """Run the birth-death-transfer process inside the species tree.

    Returns the full event-labeled gene tree (vertex 0 = the ancestral
    lineage entering at the species root) and the transfer event log.
    """
    total = rates.duplication + rates.loss + rates.hgt
    verts: list[GeneVertex] = []
    events: list[dict] = []

    def new_vertex(parent: int, event: str, t: float, species_v: int,
                   transfer: bool = False) -> int:
        if len(verts) > _MAX_GENE_VERTICES:
            raise RuntimeError("gene tree exceeds the vertex safety cap")
        verts.append(GeneVertex(parent, event, t, species_v, transfer))
        if parent >= 0:
            verts[parent].children.append(len(verts) - 1)
        return len(verts) - 1

    def coexisting(t: float, exclude: int) -> list[int]:
        return [v for v in range(len(species.parent))
                if v != exclude and species.parent[v] >= 0
                and species.time[species.parent[v]] < t < species.time[v]]

    root = new_vertex(-1, SPECIATION, 0.0, species.root)
    # (gene parent, species branch = child vertex, current time, transfer)
    stack: list[tuple[int, int, float, bool]] = [
        (root, w, 0.0, False) for w in species.children[species.root]]
    while stack:
        gp, branch, t, transfer = stack.pop()
        end = species.time[branch]
        lost = False
        while True:
            wait = rng.exponential(1.0 / total) if total > 0 else np.inf
            if t + wait >= end:
                break
            t += wait
            u = rng.random() * total
            if u < rates.duplication:
                v = new_vertex(gp, DUPLICATION, t, branch, transfer)
                stack.append((v, branch, t, False))
                gp, transfer = v, False
            elif u < rates.duplication + rates.loss:
                new_vertex(gp, LOSS, t, branch, transfer)
                lost = True
                break
            else:
                recipients = coexisting(t, branch)
                if not recipients:
                    continue
                r = recipients[int(rng.integers(len(recipients)))]
                v = new_vertex(gp, HGT, t, branch, transfer)
                stack.append((v, r, t, True))
                events.append({"type": "hgt", "time": t, "donor": branch,
                               "recipient": r, "gene_vertex": v})
                gp, transfer = v, False
        if lost:
            continue
        # reached the end of the species branch
        kids = species.children[branch]
        if not kids:
            new_vertex(gp, LEAF, end, branch, transfer)
        else:
            v = new_vertex(gp, SPECIATION, end, branch, transfer)
            for w in kids:
                stack.append((v, w, end, False))
    return verts, events


def prune_gene_tree(verts: list[GeneVertex],
                    ) -> tuple[RootedTree, frozenset[int], list[int]] | None:
    """Remove loss-only subtrees and suppress degree-2 vertices.

    Returns (pruned tree, transfer edge set, species leaf per pruned
    leaf vertex), or None if fewer than two leaves survive.  A
    suppressed path keeps a transfer mark iff any constituent edge was
    marked.
    """
    n = len(verts)
    surviving = [False] * n
    for i in range(n - 1, -1, -1):
        v = verts[i]
        if v.event == LEAF:
            surviving[i] = True
        elif any(surviving[c] for c in v.children):
            surviving[i] = True
    if not surviving or not surviving[0]:
        return None

    # top-down: map each surviving vertex to (kept parent slot, OR of
    # transfer marks since that parent)
    parent: list[int] = []
    children: list[list[int]] = []
    labels: list[str | None] = []
    species_of: list[int] = []
    marks: list[bool] = []
    counter: dict[int, int] = {}

    def add(par: int, mark: bool) -> int:
        parent.append(par)
        children.append([])
        labels.append(None)
        species_of.append(-1)
        marks.append(mark)
        v = len(parent) - 1
        if par >= 0:
            children[par].append(v)
        return v

    # find the first vertex with >= 2 surviving children (the pruned
    # root); everything above it is a chain
    def kept_kids(i: int) -> list[int]:
        return [c for c in verts[i].children if surviving[c]]

    i, mark = 0, False
    while True:
        kids = kept_kids(i)
        if verts[i].event == LEAF or len(kids) >= 2:
            break
        i = kids[0]
        mark = False  # marks above the root are unobservable
    if verts[i].event == LEAF:
        return None

    stack = [(i, -1, False)]
    while stack:
        gi, par, mark = stack.pop()
        kids = kept_kids(gi)
        while len(kids) == 1 and verts[gi].event != LEAF:
            gi = kids[0]
            mark = mark or verts[gi].transfer_in
            kids = kept_kids(gi)
        v = add(par, mark)
        if verts[gi].event == LEAF:
            s = verts[gi].species
            counter[s] = counter.get(s, 0) + 1
            labels[v] = f"s{s}_{counter[s]}"
            species_of[v] = s
        else:
            for c in reversed(kids):
                stack.append((c, v, verts[c].transfer_in))

    tree = RootedTree(parent, children, labels)
    h = frozenset(v for v in tree.edges() if marks[v])
    leaf_species = [species_of[v] for v in tree.leaves()]
    return tree, h, leaf_species


def simulate_scenario(rates: RateConfig, seed: int) -> Scenario | None:
    """One reproducible scenario; None when the family goes extinct or
    leaves fewer than two observable genes."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n = int(rng.integers(rates.species_leaves_min,
                         rates.species_leaves_max + 1))
    species = simulate_species_tree(n, rng)
    verts, events = simulate_gene_tree(species, rates, rng)
    pruned = prune_gene_tree(verts)
    if pruned is None:
        return None
    tree, h, _ = pruned
    partition = induced_partition(tree, h)
    graph = fitch_graph(tree, h)
    return Scenario(seed, rates, species, tree, h, partition, graph, events)


def run_experiment(configs: Iterable[RateConfig], count: int,
                   master_seed: int, out: TextIO | None = None,
                   ) -> Iterator[Scenario]:
    """`count` scenarios per rate config, with per-scenario seeds spawned
    from the master seed; extinct runs are skipped (seeds advance)."""
    configs = list(configs)
    ss = np.random.SeedSequence(master_seed)
    streams = iter(ss.generate_state(10 * count * max(1, len(configs)),
                                     dtype=np.uint64).tolist())
    for rates in configs:
        produced = 0
        while produced < count:
            scenario = simulate_scenario(rates, next(streams))
            if scenario is None:
                continue
            produced += 1
            if out is not None:
                out.write(scenario.to_json() + "\n")
            yield scenario
