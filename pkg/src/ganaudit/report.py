"""Rendering, bias flagging, and uncompressed-vs-compressed comparison.

Display precision: accuracies as percentages to 2 decimals, FPR/FNR to 3,
pairwise measures to 4, round-half-to-even throughout.  All rounding happens
here; upstream values stay unrounded.  Undefined cells render as an em dash.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ComparisonError
from .manifest import DOMAIN_GROUPS, ClassLabel, PairSpec
from .metrics import AuditResult, PairResult

REPORT_VERSION = 1
UNDEFINED_CELL = "—"

GROUP_COLUMNS = ("F", "M", "D", "L", "Ns", "S", "D+F", "D+M", "L+F", "L+M")
INDIVIDUAL_ROWS = ("Acc", "Acc_gan", "Acc_real", "FPR", "FNR")
PAIR_MEASURE_ROWS = ("ACS", "DP", "EO")

DEFAULT_DP_THRESHOLD = 0.80
DEFAULT_DP_WATCH_MARGIN = 0.01
DEFAULT_AMPLIFICATION_EPSILON = 0.005


def _display(value: float | None, decimals: int, signed: bool = False) -> str | None:
    if value is None:
        return None
    text = f"{value:+.{decimals}f}" if signed else f"{value:.{decimals}f}"
    zero = f"0.{'0' * decimals}"
    if text == f"-{zero}":  # never print negative zero
        text = f"+{zero}" if signed else zero
    return text


def _display_float(value: float | None, decimals: int) -> float | None:
    # One shared path for CSV text and JSON numbers keeps the formats equal.
    text = _display(value, decimals)
    return None if text is None else float(text)


def _individual_cells(result: AuditResult) -> dict[str, dict[str, float | None]]:
    cells: dict[str, dict[str, float | None]] = {row: {} for row in INDIVIDUAL_ROWS}
    for name in GROUP_COLUMNS:
        try:
            entry = result.group_entry(name)
            m = entry.metrics
        except KeyError:
            m = None
        cells["Acc"][name] = None if m is None else m.acc * 100.0
        cells["Acc_gan"][name] = None if m is None or m.acc_gan is None else m.acc_gan * 100.0
        cells["Acc_real"][name] = None if m is None or m.acc_real is None else m.acc_real * 100.0
        cells["FPR"][name] = None if m is None else m.fpr
        cells["FNR"][name] = None if m is None else m.fnr
    return cells


_ROW_DECIMALS = {"Acc": 2, "Acc_gan": 2, "Acc_real": 2, "FPR": 3, "FNR": 3}


def render_individual_table(result: AuditResult, fmt: str = "markdown") -> str:
    """Individual-measures table: five metric rows by ten group columns."""
    cells = _individual_cells(result)
    if fmt == "json":
        doc = {
            "report_version": REPORT_VERSION,
            "model_id": result.model_id,
            "setting": result.setting,
            "table": "individual",
            "columns": list(GROUP_COLUMNS),
            "rows": {
                row: {g: _display_float(cells[row][g], _ROW_DECIMALS[row]) for g in GROUP_COLUMNS}
                for row in INDIVIDUAL_ROWS
            },
        }
        return json.dumps(doc, indent=2) + "\n"

    header = ["Metric", *GROUP_COLUMNS]
    body: list[list[str]] = []
    for row in INDIVIDUAL_ROWS:
        rendered = [
            _display(cells[row][g], _ROW_DECIMALS[row]) or UNDEFINED_CELL for g in GROUP_COLUMNS
        ]
        body.append([row, *rendered])

    if fmt == "csv":
        lines = [",".join(header)] + [",".join(row) for row in body]
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |",
                 "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(row) + " |" for row in body]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _pair_columns(result: AuditResult) -> list[PairSpec]:
    seen: list[PairSpec] = []
    for pr in result.pairs:
        if pr.class_label is ClassLabel.GAN:
            seen.append(pr.pair)
    return seen


def render_pairwise_table(result: AuditResult, fmt: str = "markdown",
                          dp_threshold: float = DEFAULT_DP_THRESHOLD) -> str:
    """Pairwise table: a GAN block and a Real block of ACS/DP/EO rows by pair
    columns. DP cells under the threshold carry a flag marker (bold in
    markdown, a trailing * in CSV, a flag field in JSON)."""
    pairs = _pair_columns(result)

    def measure_value(pr: PairResult, row: str) -> float | None:
        return {"ACS": pr.acs.value, "DP": pr.dp.value, "EO": pr.eo.value}[row]

    if fmt == "json":
        blocks: dict[str, Any] = {}
        for c in (ClassLabel.GAN, ClassLabel.REAL):
            rows: dict[str, Any] = {}
            for row in PAIR_MEASURE_ROWS:
                cells = {}
                for pair in pairs:
                    pr = result.pair_result(pair.name, c)
                    value = _display_float(measure_value(pr, row), 4)
                    cell: dict[str, Any] = {"value": value}
                    if row == "DP" and value is not None and pr.dp.value is not None:
                        cell["flagged"] = pr.dp.value < dp_threshold
                    cells[pair.ascii_name] = cell
                rows[row] = cells
            blocks[c.value] = rows
        doc = {
            "report_version": REPORT_VERSION,
            "model_id": result.model_id,
            "setting": result.setting,
            "table": "pairwise",
            "columns": [p.ascii_name for p in pairs],
            "blocks": blocks,
        }
        return json.dumps(doc, indent=2) + "\n"

    if fmt not in ("markdown", "csv"):
        raise ValueError(f"unknown format {fmt!r}")

    markdown = fmt == "markdown"
    col_names = [p.name if markdown else p.ascii_name for p in pairs]
    lines: list[str] = []
    if markdown:
        lines.append("| Class | Measure | " + " | ".join(col_names) + " |")
        lines.append("|" + "---|" * (len(col_names) + 2))
    else:
        lines.append(",".join(["class", "measure", *col_names]))

    for c in (ClassLabel.GAN, ClassLabel.REAL):
        for row in PAIR_MEASURE_ROWS:
            cells: list[str] = []
            for pair in pairs:
                pr = result.pair_result(pair.name, c)
                value = measure_value(pr, row)
                text = _display(value, 4, signed=(row == "ACS"))
                if text is None:
                    cells.append(UNDEFINED_CELL)
                    continue
                if row == "DP" and value is not None and value < dp_threshold:
                    text = f"**{text}**" if markdown else text + "*"
                cells.append(text)
            if markdown:
                lines.append(f"| {c.value} | {row} | " + " | ".join(cells) + " |")
            else:
                lines.append(",".join([c.value, row, *cells]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Bias flagging

@dataclass(frozen=True)
class BiasFlag:
    pair: PairSpec
    class_label: ClassLabel
    measure: str  # "DP" | "EO" | "ACS"
    value: float
    rule: str
    severity: str  # "flagged" | "watch"

    def to_dict(self) -> dict[str, Any]:
        return {
            "pair": self.pair.ascii_name,
            "class": self.class_label.value,
            "measure": self.measure,
            "value": self.value,
            "rule": self.rule,
            "severity": self.severity,
        }


def flag_bias(result: AuditResult,
              dp_threshold: float = DEFAULT_DP_THRESHOLD,
              dp_watch_margin: float = DEFAULT_DP_WATCH_MARGIN,
              eo_watch_fraction: float = 0.1) -> list[BiasFlag]:
    """Flag biased pairs.

    DP strictly below the threshold is a hard flag (the four-fifths style
    rule); DP at or above it but within dp_watch_margin is a watch entry, so
    near-threshold cells are surfaced rather than silently passed.  EO and ACS
    have no conventional threshold and never hard-flag; the lowest decile of
    defined EO values is emitted as watch entries.
    """
    flags: list[BiasFlag] = []
    for pr in result.pairs:
        if pr.dp.value is None:
            continue
        if pr.dp.value < dp_threshold:
            flags.append(BiasFlag(pr.pair, pr.class_label, "DP", pr.dp.value,
                                  rule=f"DP < {dp_threshold:g}", severity="flagged"))
        elif pr.dp.value < dp_threshold + dp_watch_margin:
            flags.append(BiasFlag(pr.pair, pr.class_label, "DP", pr.dp.value,
                                  rule=f"DP within {dp_watch_margin:g} above {dp_threshold:g}",
                                  severity="watch"))

    eo_entries = [pr for pr in result.pairs if pr.eo.value is not None]
    if eo_entries and eo_watch_fraction > 0:
        k = max(1, math.ceil(len(eo_entries) * eo_watch_fraction))
        for pr in sorted(eo_entries, key=lambda pr: pr.eo.value)[:k]:
            flags.append(BiasFlag(pr.pair, pr.class_label, "EO", pr.eo.value,
                                  rule=f"EO in lowest {eo_watch_fraction:.0%}", severity="watch"))
    return flags


def dp_flags(flags: list[BiasFlag]) -> list[BiasFlag]:
    return [f for f in flags if f.measure == "DP"]


# ---------------------------------------------------------------------------
# Setting comparison

@dataclass(frozen=True)
class GroupDelta:
    name: str
    deltas: dict[str, float | None]  # acc, acc_gan, acc_real, fpr, fnr


@dataclass(frozen=True)
class PairDelta:
    pair: PairSpec
    class_label: ClassLabel
    acs_delta: float | None
    dp_delta: float | None
    eo_delta: float | None
    dp_amplified: bool | None  # value moved away from 1 (decreased)
    eo_amplified: bool | None
    base_dp: float | None
    comp_dp: float | None


@dataclass(frozen=True)
class DomainGapChange:
    domain: str
    metric: str
    base_spread: float | None  # max-min over the domain's groups, percentage points
    comp_spread: float | None
    widened: bool | None


@dataclass
class SettingComparison:
    model_id: str
    base_setting: str
    comp_setting: str
    group_deltas: list[GroupDelta]
    pair_deltas: list[PairDelta]
    amplified_pairs: list[PairDelta]  # DP decreased by more than epsilon
    domain_gaps: list[DomainGapChange]
    epsilon: float = DEFAULT_AMPLIFICATION_EPSILON

    def pair_delta(self, pair_name: str, c: ClassLabel) -> PairDelta:
        for pd in self.pair_deltas:
            if pd.class_label is c and pair_name in (pd.pair.name, pd.pair.ascii_name):
                return pd
        raise KeyError(f"no pair delta for {pair_name!r} / {c.value}")

    def domain_gap(self, domain: str, metric: str) -> DomainGapChange:
        for gap in self.domain_gaps:
            if gap.domain == domain and gap.metric == metric:
                return gap
        raise KeyError(f"no domain gap for {domain!r} / {metric!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "report_version": REPORT_VERSION,
            "model_id": self.model_id,
            "base_setting": self.base_setting,
            "comparison_setting": self.comp_setting,
            "epsilon": self.epsilon,
            "group_deltas": [{"name": g.name, **g.deltas} for g in self.group_deltas],
            "pair_deltas": [
                {
                    "pair": pd.pair.ascii_name,
                    "class": pd.class_label.value,
                    "acs_delta": pd.acs_delta,
                    "dp_delta": pd.dp_delta,
                    "eo_delta": pd.eo_delta,
                    "dp_amplified": pd.dp_amplified,
                    "eo_amplified": pd.eo_amplified,
                    "base_dp": pd.base_dp,
                    "comp_dp": pd.comp_dp,
                }
                for pd in self.pair_deltas
            ],
            "amplified_pairs": [
                {"pair": pd.pair.ascii_name, "class": pd.class_label.value, "dp_delta": pd.dp_delta}
                for pd in self.amplified_pairs
            ],
            "domain_gaps": [
                {
                    "domain": gap.domain,
                    "metric": gap.metric,
                    "base_spread": gap.base_spread,
                    "comparison_spread": gap.comp_spread,
                    "widened": gap.widened,
                }
                for gap in self.domain_gaps
            ],
        }

    def save(self, path: str | Path) -> Path:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")
        return p


def _delta(base: float | None, comp: float | None) -> float | None:
    if base is None or comp is None:
        return None
    return comp - base


def compare_settings(base: AuditResult, comp: AuditResult,
                     epsilon: float = DEFAULT_AMPLIFICATION_EPSILON) -> SettingComparison:
    """Per-cell deltas (comparison minus baseline) over groups and pairs, an
    amplification summary for DP, and per-domain accuracy-gap widening."""
    if base.model_id != comp.model_id:
        raise ComparisonError(
            f"cannot compare different models: {base.model_id!r} vs {comp.model_id!r}"
        )

    group_deltas: list[GroupDelta] = []
    comp_groups = {e.selector.name: e for e in comp.groups}
    for base_entry in base.groups:
        name = base_entry.selector.name
        comp_entry = comp_groups.get(name)
        bm = base_entry.metrics
        cm = comp_entry.metrics if comp_entry is not None else None
        fields: dict[str, float | None] = {}
        for metric in ("acc", "acc_gan", "acc_real", "fpr", "fnr"):
            bv = getattr(bm, metric) if bm is not None else None
            cv = getattr(cm, metric) if cm is not None else None
            fields[metric] = _delta(bv, cv)
        group_deltas.append(GroupDelta(name=name, deltas=fields))

    pair_deltas: list[PairDelta] = []
    comp_pairs = {(pr.pair.name, pr.class_label): pr for pr in comp.pairs}
    for bpr in base.pairs:
        cpr = comp_pairs.get((bpr.pair.name, bpr.class_label))
        if cpr is None:
            pair_deltas.append(PairDelta(bpr.pair, bpr.class_label, None, None, None,
                                         None, None, bpr.dp.value, None))
            continue
        dp_delta = _delta(bpr.dp.value, cpr.dp.value)
        eo_delta = _delta(bpr.eo.value, cpr.eo.value)
        pair_deltas.append(PairDelta(
            pair=bpr.pair, class_label=bpr.class_label,
            acs_delta=_delta(bpr.acs.value, cpr.acs.value),
            dp_delta=dp_delta, eo_delta=eo_delta,
            dp_amplified=None if dp_delta is None else dp_delta < 0,
            eo_amplified=None if eo_delta is None else eo_delta < 0,
            base_dp=bpr.dp.value, comp_dp=cpr.dp.value,
        ))

    amplified = [pd for pd in pair_deltas if pd.dp_delta is not None and pd.dp_delta < -epsilon]

    base_cells = _individual_cells(base)
    comp_cells = _individual_cells(comp)
    domain_gaps: list[DomainGapChange] = []
    for domain, names in DOMAIN_GROUPS.items():
        for metric in ("Acc", "Acc_gan", "Acc_real"):
            def spread(cells: dict[str, dict[str, float | None]]) -> float | None:
                values = [cells[metric][n] for n in names]
                if any(v is None for v in values):
                    return None
                return max(values) - min(values)
            base_spread = spread(base_cells)
            comp_spread = spread(comp_cells)
            widened = None
            if base_spread is not None and comp_spread is not None:
                widened = comp_spread > base_spread
            domain_gaps.append(DomainGapChange(domain, metric, base_spread, comp_spread, widened))

    return SettingComparison(
        model_id=base.model_id, base_setting=base.setting, comp_setting=comp.setting,
        group_deltas=group_deltas, pair_deltas=pair_deltas,
        amplified_pairs=amplified, domain_gaps=domain_gaps, epsilon=epsilon,
    )


def render_comparison(sc: SettingComparison, fmt: str = "markdown") -> str:
    """Comparison document: group-metric deltas, pairwise DP movement with
    amplification markers, and per-domain gap widening."""
    if fmt == "json":
        return json.dumps(sc.to_dict(), indent=2) + "\n"
    if fmt not in ("markdown", "csv"):
        raise ValueError(f"unknown format {fmt!r}")

    def num(value: float | None, decimals: int = 4, signed: bool = True) -> str:
        return _display(value, decimals, signed=signed) or UNDEFINED_CELL

    markdown = fmt == "markdown"
    lines: list[str] = []
    if markdown:
        lines.append(f"## Setting comparison: {sc.base_setting} -> {sc.comp_setting} "
                     f"(model {sc.model_id})")
        lines.append("")
        lines.append("### Group metric deltas (comparison - baseline)")
        lines.append("| Group | acc | acc_gan | acc_real | fpr | fnr |")
        lines.append("|---|---|---|---|---|---|")
        for g in sc.group_deltas:
            lines.append(
                f"| {g.name} | " + " | ".join(
                    num(g.deltas[m]) for m in ("acc", "acc_gan", "acc_real", "fpr", "fnr")
                ) + " |"
            )
        lines.append("")
        lines.append("### Pairwise deltas")
        lines.append("| Pair | Class | dACS | dDP | dEO | DP amplified |")
        lines.append("|---|---|---|---|---|---|")
        for pd in sc.pair_deltas:
            amp = UNDEFINED_CELL if pd.dp_amplified is None else ("yes" if pd.dp_amplified else "no")
            lines.append(f"| {pd.pair.name} | {pd.class_label.value} | {num(pd.acs_delta)} | "
                         f"{num(pd.dp_delta)} | {num(pd.eo_delta)} | {amp} |")
        lines.append("")
        lines.append(f"### Pairs with DP decrease beyond {sc.epsilon:g}")
        if sc.amplified_pairs:
            for pd in sc.amplified_pairs:
                lines.append(f"- {pd.pair.name} ({pd.class_label.value}): "
                             f"{num(pd.base_dp, signed=False)} -> {num(pd.comp_dp, signed=False)} "
                             f"({num(pd.dp_delta)})")
        else:
            lines.append("- none")
        lines.append("")
        lines.append("### Domain accuracy-gap spread (percentage points)")
        lines.append("| Domain | Metric | Baseline | Comparison | Widened |")
        lines.append("|---|---|---|---|---|")
        for gap in sc.domain_gaps:
            widened = UNDEFINED_CELL if gap.widened is None else ("yes" if gap.widened else "no")
            lines.append(f"| {gap.domain} | {gap.metric} | {num(gap.base_spread, 2, signed=False)} | "
                         f"{num(gap.comp_spread, 2, signed=False)} | {widened} |")
        return "\n".join(lines) + "\n"

    lines.append("section,key,class,value1,value2,value3")
    for g in sc.group_deltas:
        for metric in ("acc", "acc_gan", "acc_real", "fpr", "fnr"):
            lines.append(f"group_delta,{g.name}.{metric},,{num(g.deltas[metric])},,")
    for pd in sc.pair_deltas:
        lines.append(f"pair_delta,{pd.pair.ascii_name},{pd.class_label.value},"
                     f"{num(pd.acs_delta)},{num(pd.dp_delta)},{num(pd.eo_delta)}")
    for pd in sc.amplified_pairs:
        lines.append(f"amplified,{pd.pair.ascii_name},{pd.class_label.value},"
                     f"{num(pd.base_dp, signed=False)},{num(pd.comp_dp, signed=False)},{num(pd.dp_delta)}")
    for gap in sc.domain_gaps:
        widened = "" if gap.widened is None else ("yes" if gap.widened else "no")
        lines.append(f"domain_gap,{gap.domain}.{gap.metric},,{num(gap.base_spread, 2, signed=False)},"
                     f"{num(gap.comp_spread, 2, signed=False)},{widened}")
    return "\n".join(lines) + "\n"
