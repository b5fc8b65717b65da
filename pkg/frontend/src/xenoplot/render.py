"""Grouped fraction figures: boxplot/bar panel + mean strip."""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import (CLASS_COLUMNS, SummaryTable, load_scenarios,
                     load_summary)

DEFAULT_COLORS = {
    "essential": "#2a9d8f",
    "forbidden": "#e76f51",
    "ambiguous_in_h": "#e9c46a",
    "ambiguous_not_in_h": "#8ab17d",
    "ambiguous_present": "#e9c46a",
    "ambiguous_absent": "#8ab17d",
}

_LABELS = {
    "ambiguous_in_h": "ambiguous (in H)",
    "ambiguous_not_in_h": "ambiguous (not in H)",
    "ambiguous_present": "ambiguous (present)",
    "ambiguous_absent": "ambiguous (absent)",
}


@dataclass(frozen=True)
class PlotSpec:
    csv_in: str
    kind: str                       # edges | pairs | qpairs | contraction
    image_out: str
    scenario_csv: str | None = None
    colors: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in CLASS_COLUMNS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        bad = set(self.colors) - set(CLASS_COLUMNS[self.kind])
        if bad:
            raise ValueError(f"colors for unknown classes: {sorted(bad)}")

    def color(self, col: str) -> str:
        return self.colors.get(col, DEFAULT_COLORS[col])


def _upper_panel(ax, spec: PlotSpec, table: SummaryTable,
                 distributions) -> None:
    cols = CLASS_COLUMNS[spec.kind]
    k = len(cols)
    width = 0.8 / k
    for gi, row in enumerate(table.rows):
        for ci, col in enumerate(cols):
            x = gi + (ci - (k - 1) / 2) * width
            if distributions is not None and row.rates in distributions:
                ax.boxplot([distributions[row.rates][col]],
                           positions=[x], widths=width * 0.85,
                           patch_artist=True, showfliers=False,
                           boxprops={"facecolor": spec.color(col)},
                           medianprops={"color": "black"})
            else:
                ax.bar(x, row.means[col], width=width * 0.85,
                       color=spec.color(col))
    ax.set_xticks(range(len(table.rows)))
    ax.set_xticklabels([r.rates for r in table.rows])
    ax.set_ylabel("fraction")
    ax.set_xlim(-0.5, len(table.rows) - 0.5)
    handles = [plt.Rectangle((0, 0), 1, 1, color=spec.color(c)) for c in cols]
    ax.legend(handles, [_LABELS.get(c, c) for c in cols],
              fontsize=8, loc="upper right", ncol=2)


def _mean_strip(ax, spec: PlotSpec, table: SummaryTable) -> None:
    cols = CLASS_COLUMNS[spec.kind]
    for gi, row in enumerate(table.rows):
        left = 0.0
        for col in cols:
            ax.barh(gi, row.means[col], left=left, height=0.6,
                    color=spec.color(col))
            left += row.means[col]
        ax.text(1.01, gi, f"{row.included_pct:.0f}% (n={row.n})",
                va="center", fontsize=8, color="gray")
    ax.set_yticks(range(len(table.rows)))
    ax.set_yticklabels([r.rates for r in table.rows])
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.5, len(table.rows) - 0.5)
    ax.invert_yaxis()
    ax.set_xlabel("mean fraction")


def render(spec: PlotSpec) -> None:
    """Write the two-panel figure; pixel-deterministic for a fixed CSV."""
    table = load_summary(spec.csv_in, spec.kind)
    distributions = (load_scenarios(spec.scenario_csv, spec.kind)
                     if spec.scenario_csv else None)

    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(1.8 + 1.6 * len(table.rows), 6),
        gridspec_kw={"height_ratios": [3, 1]})
    _upper_panel(top, spec, table, distributions)
    _mean_strip(bottom, spec, table)
    top.set_title(f"{spec.kind} class fractions by rates (d,l,h)")
    fig.tight_layout()
    # fixed metadata so re-renders are byte-identical
    fig.savefig(spec.image_out, dpi=150,
                metadata={"Software": "xenoplot"})
    plt.close(fig)
