"""Command-line workflow: validate | compress | evaluate | compare | report.

A declarative config file (JSON or YAML) names the manifests and prediction
files per setting; flags override individual values.  All outputs land under
the configured output directory and are byte-reproducible: data files carry
no timestamps (those go to the run.log sidecar only).

Exit codes: 0 success, 1 validation failure, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path


import yaml

from . import compression, figures, report
from .errors import AuditError, ComparisonError, ConfigError
from .manifest import Manifest, load_manifest, save_manifest, validate_manifest
from .metrics import AuditResult, ScoreMode, evaluate_all
from .predictions import join, load_predictions

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

FORMAT_SUFFIX = {"markdown": "md", "csv": "csv", "json": "json"}


@dataclass
class AuditConfig:
    manifests: dict[str, str] = field(default_factory=dict)     # setting -> path
    predictions: dict[str, str] = field(default_factory=dict)   # setting -> path
    quality: int = 90
    subsampling: str = "4:2:0"
    dp_threshold: float = report.DEFAULT_DP_THRESHOLD
    score_mode: str = ScoreMode.TRUTH_CLASS_SCORE.value
    output_dir: str = "out"
    formats: list[str] = field(default_factory=lambda: ["markdown", "csv", "json"])
    render_figures: bool = True
    offline: bool = False
    amplification_epsilon: float = report.DEFAULT_AMPLIFICATION_EPSILON

    def validate(self) -> None:
        if not 0.0 < self.dp_threshold <= 1.0:
            raise ConfigError(f"dp_threshold must be in (0,1], got {self.dp_threshold}")
        try:
            ScoreMode(self.score_mode)
        except ValueError:
            raise ConfigError(f"unknown score_mode {self.score_mode!r}") from None
        for fmt in self.formats:
            if fmt not in FORMAT_SUFFIX:
                raise ConfigError(f"unknown output format {fmt!r}")
        paths = [*self.manifests.values(), *self.predictions.values()]
        if len(paths) != len(set(paths)):
            raise ConfigError("manifest/prediction paths must be distinct")

    @classmethod
    def from_file(cls, path: str | Path) -> "AuditConfig":
        p = Path(path)
        if not p.exists():
            raise FileNotFoundError(f"config not found: {p}")
        text = p.read_text(encoding="utf-8")
        raw = yaml.safe_load(text) if p.suffix.lower() in (".yaml", ".yml") else json.loads(text)
        if not isinstance(raw, dict):
            raise ConfigError(f"config root must be a mapping: {p}")
        cfg = cls()
        cfg.manifests = {str(k): str(v) for k, v in (raw.get("manifests") or {}).items()}
        cfg.predictions = {str(k): str(v) for k, v in (raw.get("predictions") or {}).items()}
        compression_raw = raw.get("compression") or {}
        cfg.quality = int(compression_raw.get("quality", cfg.quality))
        cfg.subsampling = str(compression_raw.get("subsampling", cfg.subsampling))
        cfg.dp_threshold = float(raw.get("dp_threshold", cfg.dp_threshold))
        cfg.score_mode = str(raw.get("score_mode", cfg.score_mode))
        cfg.output_dir = str(raw.get("output_dir", cfg.output_dir))
        cfg.formats = [str(f) for f in raw.get("formats", cfg.formats)]
        cfg.render_figures = bool(raw.get("figures", cfg.render_figures))
        cfg.offline = bool(raw.get("offline", cfg.offline))
        cfg.amplification_epsilon = float(raw.get("amplification_epsilon",
                                                  cfg.amplification_epsilon))
        return cfg


def _apply_overrides(cfg: AuditConfig, args: argparse.Namespace) -> None:
    setting = getattr(args, "setting", None) or "uncompressed"
    if getattr(args, "manifest", None):
        cfg.manifests[setting] = args.manifest
    if getattr(args, "predictions", None):
        cfg.predictions[setting] = args.predictions
    if getattr(args, "quality", None) is not None:
        cfg.quality = args.quality
    if getattr(args, "subsampling", None):
        cfg.subsampling = {"420": "4:2:0", "444": "4:4:4"}.get(args.subsampling, args.subsampling)
    if getattr(args, "dp_threshold", None) is not None:
        cfg.dp_threshold = args.dp_threshold
    if getattr(args, "score_mode", None):
        cfg.score_mode = args.score_mode
    if getattr(args, "out", None):
        cfg.output_dir = args.out
    if getattr(args, "format", None):
        cfg.formats = args.format
    if getattr(args, "offline", False):
        cfg.offline = True


def _load_config(args: argparse.Namespace) -> AuditConfig:
    cfg = AuditConfig.from_file(args.config) if getattr(args, "config", None) else AuditConfig()
    _apply_overrides(cfg, args)
    cfg.validate()
    return cfg


class _Run:
    """Output-directory helper; timestamps go only to the run log."""

    def __init__(self, cfg: AuditConfig):
        self.cfg = cfg
        self.out = Path(cfg.output_dir)
        self.out.mkdir(parents=True, exist_ok=True)

    def log(self, message: str) -> None:
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        with (self.out / "run.log").open("a", encoding="utf-8") as handle:
            handle.write(f"{stamp} {message}\n")
        print(message)

    def write(self, name: str, text: str) -> Path:
        path = self.out / name
        path.write_text(text, encoding="utf-8")
        return path


def _manifest_for(cfg: AuditConfig, setting: str) -> Manifest:
    try:
        path = cfg.manifests[setting]
    except KeyError:
        raise ConfigError(f"no manifest configured for setting {setting!r}") from None
    manifest = load_manifest(path)
    if not manifest.setting:
        manifest = Manifest(records=manifest.records, source=manifest.source,
                            setting=setting, metadata=manifest.metadata)
    return manifest


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    run = _Run(cfg)
    worst = EXIT_OK
    settings = [args.setting] if args.setting else sorted(cfg.manifests)
    if not settings:
        raise ConfigError("no manifests configured")
    for setting in settings:
        manifest = _manifest_for(cfg, setting)
        result = validate_manifest(manifest, offline=cfg.offline)
        run.write(f"validation_{setting}.json",
                  json.dumps(result.to_dict(), indent=2) + "\n")
        status = "ok" if result.ok else "FAILED"
        run.log(f"validate[{setting}]: {status}, {len(result.findings)} finding(s), "
                f"{len(manifest)} record(s)")
        notable = [f for f in result.findings if f.severity in ("error", "warning")]
        for finding in notable[:10]:
            print(f"  {finding.severity}: {finding.message}")
        if len(notable) > 10:
            print(f"  ... and {len(notable) - 10} more (see validation_{setting}.json)")
        if not result.ok:
            worst = EXIT_VALIDATION
    return worst


def cmd_compress(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    run = _Run(cfg)
    source = _manifest_for(cfg, args.setting or "uncompressed")
    comp_cfg = compression.CompressionConfig(quality=cfg.quality,
                                             chroma_subsampling=cfg.subsampling)
    out_images = run.out / f"images_jpeg-q{cfg.quality}"
    derived = compression.compress_corpus(source, comp_cfg, out_images)
    manifest_path = save_manifest(derived, run.out / f"manifest_{derived.setting}.jsonl")
    check = compression.verify_derived(source, derived)
    run.write(f"verify_{derived.setting}.json", json.dumps(check.to_dict(), indent=2) + "\n")
    run.log(f"compress: {len(derived)} image(s) -> {out_images} "
            f"(quality {cfg.quality}, {cfg.subsampling}, {comp_cfg.encoder_id}); "
            f"manifest {manifest_path}; verify {'ok' if check.ok else 'FAILED'}")
    return EXIT_OK if check.ok else EXIT_VALIDATION


def _evaluate(cfg: AuditConfig, run: _Run, setting: str) -> AuditResult:
    manifest = _manifest_for(cfg, setting)
    try:
        pred_path = cfg.predictions[setting]
    except KeyError:
        raise ConfigError(f"no predictions configured for setting {setting!r}") from None
    predictions = load_predictions(pred_path)
    es = join(manifest, predictions)
    result = evaluate_all(es, score_mode=ScoreMode(cfg.score_mode))
    return result


def _write_reports(cfg: AuditConfig, run: _Run, result: AuditResult,
                   tag: str | None = None) -> None:
    tag = tag or result.setting
    for fmt in cfg.formats:
        suffix = FORMAT_SUFFIX[fmt]
        run.write(f"individual_{tag}.{suffix}", report.render_individual_table(result, fmt))
        run.write(f"pairwise_{tag}.{suffix}",
                  report.render_pairwise_table(result, fmt, cfg.dp_threshold))
    flags = report.flag_bias(result, dp_threshold=cfg.dp_threshold)
    run.write(f"flags_{tag}.json", json.dumps(
        {"report_version": report.REPORT_VERSION, "model_id": result.model_id,
         "setting": tag, "dp_threshold": cfg.dp_threshold,
         "flags": [f.to_dict() for f in flags]}, indent=2) + "\n")
    if cfg.render_figures:
        figures.save_individual_figure(result, run.out / f"fig_individual_{tag}.png")
        figures.save_pairwise_figure(result, run.out / f"fig_pairwise_{tag}.png",
                                     dp_threshold=cfg.dp_threshold)


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    run = _Run(cfg)
    setting = args.setting or "uncompressed"
    result = _evaluate(cfg, run, setting)
    result.save(run.out / f"audit_{setting}.json")
    _write_reports(cfg, run, result, tag=setting)
    run.log(f"evaluate[{setting}]: model {result.model_id}, {result.row_count} row(s), "
            f"outputs in {run.out}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    run = _Run(cfg)
    base_setting = args.baseline or "uncompressed"
    comp_setting = args.setting or f"jpeg-q{cfg.quality}"
    base_path = run.out / f"audit_{base_setting}.json"
    comp_path = run.out / f"audit_{comp_setting}.json"
    for path in (base_path, comp_path):
        if not path.exists():
            raise FileNotFoundError(
                f"audit result not found: {path} (run `evaluate --setting ...` first)"
            )
    base = AuditResult.load(base_path)
    comp = AuditResult.load(comp_path)
    sc = report.compare_settings(base, comp, epsilon=cfg.amplification_epsilon)
    sc.save(run.out / f"comparison_{base_setting}_vs_{comp_setting}.json")
    for fmt in cfg.formats:
        if fmt == "json":
            continue
        run.write(f"comparison_{base_setting}_vs_{comp_setting}.{FORMAT_SUFFIX[fmt]}",
                  report.render_comparison(sc, fmt))
    if cfg.render_figures:
        figures.save_comparison_figure(
            sc, run.out / f"fig_comparison_{base_setting}_vs_{comp_setting}.png")
    run.log(f"compare[{base_setting} -> {comp_setting}]: "
            f"{len(sc.amplified_pairs)} pair(s) with DP decrease beyond {sc.epsilon:g}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    run = _Run(cfg)
    if args.audit:
        paths = [Path(args.audit)]
    else:
        paths = sorted(run.out.glob("audit_*.json"))
        if not paths:
            raise FileNotFoundError(f"no audit_*.json found under {run.out}")
    for path in paths:
        result = AuditResult.load(path)
        _write_reports(cfg, run, result)
        run.log(f"report[{result.setting}]: re-rendered from {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ganaudit",
        description="Fairness audit for natural-vs-GAN image detectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_setting: bool = True) -> None:
        p.add_argument("--config", help="JSON or YAML audit config")
        p.add_argument("--manifest", help="manifest path override")
        p.add_argument("--predictions", help="prediction file override")
        if with_setting:
            p.add_argument("--setting", help="evaluation setting tag")
        p.add_argument("--quality", type=int, help="JPEG quality factor (1-100)")
        p.add_argument("--subsampling", choices=["420", "444", "4:2:0", "4:4:4"],
                       help="chroma subsampling")
        p.add_argument("--dp-threshold", dest="dp_threshold", type=float,
                       help="DP bias threshold (default 0.80)")
        p.add_argument("--score-mode", dest="score_mode",
                       choices=[m.value for m in ScoreMode], help="ACS score mode")
        p.add_argument("--format", action="append", choices=sorted(FORMAT_SUFFIX),
                       help="output format (repeatable)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--offline", action="store_true",
                       help="treat unresolved uris as warnings")

    p_validate = sub.add_parser("validate", help="validate manifests and report group sizes")
    common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_compress = sub.add_parser("compress", help="JPEG re-encode a corpus into a derived manifest")
    common(p_compress)
    p_compress.set_defaults(func=cmd_compress)

    p_evaluate = sub.add_parser("evaluate", help="compute the audit for one setting")
    common(p_evaluate)
    p_evaluate.set_defaults(func=cmd_evaluate)

    p_compare = sub.add_parser("compare", help="compare two settings' audit results")
    common(p_compare)
    p_compare.add_argument("--baseline", help="baseline setting tag (default uncompressed)")
    p_compare.set_defaults(func=cmd_compare)

    p_report = sub.add_parser("report", help="re-render tables/figures from audit files")
    common(p_report)
    p_report.add_argument("--audit", help="specific audit JSON to render")
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError,) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ComparisonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except AuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
