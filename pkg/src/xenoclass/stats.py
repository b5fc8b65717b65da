"""Fraction tables over scenario corpora.

Each table aggregates per-scenario class fractions by rate
configuration: edge classes (with ambiguous edges split by membership
in the true transfer set) or ordered-pair classes (with ambiguous pairs
split by presence in the true Fitch graph).  Means go into the summary
CSV; the per-scenario distributions can be emitted separately for
plotting.
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classify import PairClass, PairClassifier, RPairClassifier
from .fitch import fitch_graph, quotient
from .partition import Partition
from .separating import EdgeClass, classify_tree_edges
from .tree import RootedTree, contract_edges

EDGE_COLUMNS = ["essential", "ambiguous_in_h", "ambiguous_not_in_h",
                "forbidden"]
PAIR_COLUMNS = ["essential", "forbidden", "ambiguous_present",
                "ambiguous_absent"]


@dataclass(frozen=True)
class ScenarioData:
    """The slice of a scenario the analysis needs."""

    rates: str                  # "d,l,h" key
    tree: RootedTree
    h: frozenset[int]
    partition: Partition


@dataclass
class FractionRow:
    rates: str
    columns: Sequence[str]
    per_scenario: dict[str, list[float]] = field(default_factory=dict)
    included: int = 0
    total: int = 0

    def add(self, fractions: dict[str, float]) -> None:
        self.included += 1
        for col in self.columns:
            self.per_scenario.setdefault(col, []).append(fractions[col])

    def mean(self, col: str) -> float:
        vals = self.per_scenario.get(col, [])
        return float(np.mean(vals)) if vals else 0.0

    def quantiles(self, col: str, qs=(0.25, 0.5, 0.75)) -> list[float]:
        vals = self.per_scenario.get(col, [])
        if not vals:
            return [0.0] * len(qs)
        return [float(q) for q in np.quantile(vals, qs)]

    @property
    def included_pct(self) -> float:
        return 100.0 * self.included / self.total if self.total else 0.0


@dataclass
class FractionTable:
    columns: Sequence[str]
    rows: list[FractionRow]

    def check(self) -> None:
        """Per included scenario the class fractions are exhaustive."""
        for row in self.rows:
            for i in range(row.included):
                s = sum(row.per_scenario[c][i] for c in self.columns)
                if abs(s - 1.0) > 1e-9:
                    raise AssertionError(
                        f"fractions sum to {s} in rates={row.rates}")

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("rates," + ",".join(self.columns) + ",included_pct,n\n")
        for row in self.rows:
            cells = [f"{row.mean(c):.6f}" for c in self.columns]
            out.write(f"\"{row.rates}\"," + ",".join(cells)
                      + f",{row.included_pct:.2f},{row.included}\n")
        return out.getvalue()

    def to_scenario_csv(self) -> str:
        """One line per included scenario (for distribution plots)."""
        out = io.StringIO()
        out.write("rates," + ",".join(self.columns) + "\n")
        for row in self.rows:
            for i in range(row.included):
                cells = [f"{row.per_scenario[c][i]:.6f}"
                         for c in self.columns]
                out.write(f"\"{row.rates}\"," + ",".join(cells) + "\n")
        return out.getvalue()


def _build(columns: Sequence[str],
           scenarios: Iterable[ScenarioData], per_scenario) -> FractionTable:
    rows: dict[str, FractionRow] = {}
    for sc in scenarios:
        row = rows.setdefault(sc.rates, FractionRow(sc.rates, columns))
        row.total += 1
        fractions = per_scenario(sc)
        if fractions is not None:
            row.add(fractions)
    table = FractionTable(columns, list(rows.values()))
    table.check()
    return table


def edge_fraction_table(scenarios: Iterable[ScenarioData]) -> FractionTable:
    """Edge classes against the true transfer set H."""

    def one(sc: ScenarioData) -> dict[str, float] | None:
        classes = classify_tree_edges(sc.tree, sc.partition)
        assert classes is not None  # P is induced by H, hence compatible
        counts = dict.fromkeys(EDGE_COLUMNS, 0)
        for v, cls in classes.items():
            if cls is EdgeClass.ESSENTIAL:
                counts["essential"] += 1
            elif cls is EdgeClass.FORBIDDEN:
                counts["forbidden"] += 1
            elif v in sc.h:
                counts["ambiguous_in_h"] += 1
            else:
                counts["ambiguous_not_in_h"] += 1
        m = len(classes)
        return {k: c / m for k, c in counts.items()} if m else None

    return _build(EDGE_COLUMNS, scenarios, one)


def _pair_fractions(sc: ScenarioData, verdicts, level: str,
                    ) -> dict[str, float] | None:
    if len(sc.partition) < 2:
        return None
    true_arcs = quotient(fitch_graph(sc.tree, sc.h), sc.partition,
                         checked=False)
    sizes = [len(c) for c in sc.partition.classes]
    counts = dict.fromkeys(PAIR_COLUMNS, 0)
    total = 0
    for (a, b), cls in verdicts.items():
        w = sizes[a] * sizes[b] if level == "leaf" else 1
        total += w
        if cls is PairClass.ESSENTIAL:
            counts["essential"] += w
        elif cls is PairClass.FORBIDDEN:
            counts["forbidden"] += w
        elif (a, b) in true_arcs:
            counts["ambiguous_present"] += w
        else:
            counts["ambiguous_absent"] += w
    return {k: c / total for k, c in counts.items()}


def pair_fraction_table(scenarios: Iterable[ScenarioData],
                        level: str = "leaf") -> FractionTable:
    """Ordered cross-class pair classes; `level` weights each class pair
    by its leaf-pair count ("leaf") or uniformly ("quotient")."""
    if level not in ("leaf", "quotient"):
        raise ValueError(f"unknown level {level!r}")

    def one(sc: ScenarioData) -> dict[str, float] | None:
        if len(sc.partition) < 2:
            return None
        verdicts = PairClassifier(sc.tree, sc.partition).all_pairs()
        return _pair_fractions(sc, verdicts, level)

    return _build(PAIR_COLUMNS, scenarios, one)


def contraction_table(scenarios: Iterable[ScenarioData], p: float,
                      seed: int, level: str = "leaf") -> FractionTable:
    """Refinement-aware pair classes after contracting each inner edge
    independently with probability `p` (a stand-in for incompletely
    resolved input trees); ambiguity split against the uncontracted
    scenario's Fitch graph."""
    if not 0 <= p < 1:
        raise ValueError("contraction probability must be in [0, 1)")
    rng = random.Random(seed)

    def one(sc: ScenarioData) -> dict[str, float] | None:
        if len(sc.partition) < 2:
            return None
        doomed = [v for v in sc.tree.inner_edges() if rng.random() < p]
        tree = contract_edges(sc.tree, doomed) if doomed else sc.tree
        # T refines the contracted tree, so the pair stays r-compatible
        verdicts = RPairClassifier(tree, sc.partition).all_pairs()
        return _pair_fractions(sc, verdicts, level)

    return _build(PAIR_COLUMNS, scenarios, one)
