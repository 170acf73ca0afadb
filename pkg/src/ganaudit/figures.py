"""Chart rendering for the report path: PNG files next to the table output.

Only metric-level charts are drawn (group accuracies, pairwise ratios,
comparison deltas); per-image score distributions are deliberately not
plotted here - the numeric exports carry everything needed for that.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .manifest import ClassLabel
from .metrics import AuditResult
from .report import (
    DEFAULT_DP_THRESHOLD,
    GROUP_COLUMNS,
    SettingComparison,
    _individual_cells,
    _pair_columns,
)

_ACCURACY_SERIES = (("Acc", "#4c72b0"), ("Acc_gan", "#dd8452"), ("Acc_real", "#55a868"))
_RATE_SERIES = (("FPR", "#c44e52"), ("FNR", "#8172b3"))


def _bar_group(ax, labels, series, width=0.8):
    n = len(series)
    slot = width / n
    for i, (name, values, color) in enumerate(series):
        offsets = [x - width / 2 + slot * (i + 0.5) for x in range(len(labels))]
        heights = [0.0 if v is None else v for v in values]
        ax.bar(offsets, heights, slot * 0.9, label=name, color=color)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right")


def save_individual_figure(result: AuditResult, path: str | Path) -> Path:
    """Two panels: per-group accuracies (percent) and per-group FPR/FNR."""
    cells = _individual_cells(result)
    fig, (ax_acc, ax_rate) = plt.subplots(2, 1, figsize=(10, 7), sharex=True)

    _bar_group(ax_acc, GROUP_COLUMNS,
               [(name, [cells[name][g] for g in GROUP_COLUMNS], color)
                for name, color in _ACCURACY_SERIES])
    ax_acc.set_ylabel("accuracy (%)")
    ax_acc.set_ylim(0, 105)
    ax_acc.legend(loc="lower right", fontsize=8)
    ax_acc.set_title(f"Group metrics: {result.model_id} / {result.setting}")

    _bar_group(ax_rate, GROUP_COLUMNS,
               [(name, [cells[name][g] for g in GROUP_COLUMNS], color)
                for name, color in _RATE_SERIES])
    ax_rate.set_ylabel("rate")
    ax_rate.legend(loc="upper right", fontsize=8)

    fig.tight_layout()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out


def save_pairwise_figure(result: AuditResult, path: str | Path,
                         dp_threshold: float = DEFAULT_DP_THRESHOLD) -> Path:
    """Per class: DP/EO bars with the flag threshold line, plus ACS bars."""
    pairs = _pair_columns(result)
    labels = [p.name for p in pairs]
    fig, axes = plt.subplots(2, 2, figsize=(13, 7.5))

    for row, c in enumerate((ClassLabel.GAN, ClassLabel.REAL)):
        results = [result.pair_result(p.name, c) for p in pairs]
        ax = axes[row][0]
        _bar_group(ax, labels, [
            ("DP", [pr.dp.value for pr in results], "#4c72b0"),
            ("EO", [pr.eo.value for pr in results], "#dd8452"),
        ])
        ax.axhline(dp_threshold, color="#c44e52", linestyle="--", linewidth=1,
                   label=f"DP threshold {dp_threshold:g}")
        ax.set_ylim(0, 1.05)
        ax.set_ylabel(f"{c.value}: ratio")
        ax.legend(loc="lower right", fontsize=8)

        ax = axes[row][1]
        _bar_group(ax, labels, [
            ("ACS", [pr.acs.value for pr in results], "#55a868"),
        ])
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.set_ylabel(f"{c.value}: ACS")

    axes[0][0].set_title(f"Pairwise measures: {result.model_id} / {result.setting}")
    fig.tight_layout()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out


def save_comparison_figure(sc: SettingComparison, path: str | Path) -> Path:
    """DP movement per pair: baseline vs comparison bars, one panel per class."""
    fig, axes = plt.subplots(2, 1, figsize=(11, 7), sharex=True)
    for row, c in enumerate((ClassLabel.GAN, ClassLabel.REAL)):
        deltas = [pd for pd in sc.pair_deltas if pd.class_label is c]
        labels = [pd.pair.name for pd in deltas]
        ax = axes[row]
        _bar_group(ax, labels, [
            (f"DP ({sc.base_setting})", [pd.base_dp for pd in deltas], "#4c72b0"),
            (f"DP ({sc.comp_setting})", [pd.comp_dp for pd in deltas], "#dd8452"),
        ])
        for i, pd in enumerate(deltas):
            if pd.dp_delta is not None and pd in sc.amplified_pairs:
                ax.annotate("v", (i, max(pd.base_dp or 0, pd.comp_dp or 0) + 0.02),
                            ha="center", color="#c44e52", fontsize=9)
        ax.set_ylim(0, 1.1)
        ax.set_ylabel(f"{c.value}: DP")
        ax.legend(loc="lower right", fontsize=8)
    axes[0].set_title(
        f"DP by setting: {sc.model_id}, {sc.base_setting} vs {sc.comp_setting} "
        "(v = decreased beyond epsilon)"
    )
    fig.tight_layout()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out
