"""Corpus data model: image records, demographic groups, and manifest I/O.

A manifest is the unit every audit runs over: one line per evaluation image
with its ground-truth class (GAN or Real) and whichever demographic
attributes were annotated for it.  Groups are defined purely as predicates
over those attributes, so disjoint sub-corpora and fully cross-annotated
corpora both work without special cases.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterator
from urllib.parse import urlparse

from .errors import ManifestError


class ClassLabel(str, Enum):
    GAN = "GAN"
    REAL = "Real"

    @classmethod
    def parse(cls, raw: str) -> "ClassLabel":
        for label in cls:
            if raw == label.value:
                return label
        raise ValueError(f"unknown class label {raw!r} (expected 'GAN' or 'Real')")


GENDER_VALUES = ("F", "M")
SKIN_VALUES = ("D", "L")
AFFECT_VALUES = ("Ns", "S")

ATTRIBUTE_FIELDS = ("gender", "skin", "affect")
_ALLOWED = {"gender": GENDER_VALUES, "skin": SKIN_VALUES, "affect": AFFECT_VALUES}


@dataclass(frozen=True)
class AttributeSet:
    """Demographic annotations for one image; at least one must be present."""

    gender: str | None = None
    skin: str | None = None
    affect: str | None = None

    def __post_init__(self) -> None:
        if self.gender is None and self.skin is None and self.affect is None:
            raise ValueError("record carries no demographic attributes")
        for name in ATTRIBUTE_FIELDS:
            value = getattr(self, name)
            if value is not None and value not in _ALLOWED[name]:
                raise ValueError(
                    f"unknown {name} value {value!r} (allowed: {'/'.join(_ALLOWED[name])})"
                )

    def get(self, name: str) -> str | None:
        return getattr(self, name)


@dataclass(frozen=True)
class ImageRecord:
    image_id: str
    uri: str
    true_class: ClassLabel
    attributes: AttributeSet


@dataclass(frozen=True)
class GroupSelector:
    """A named conjunction of attribute equalities, e.g. D+F = skin=D and gender=F.

    Conjuncts are a tuple of (field, value) pairs; a record matches when every
    conjunct holds.  Contradictory conjuncts are representable and simply
    select nothing.
    """

    name: str
    conjuncts: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if not self.conjuncts:
            raise ValueError("selector needs at least one conjunct")
        for fld, value in self.conjuncts:
            if fld not in ATTRIBUTE_FIELDS:
                raise ValueError(f"unknown attribute field {fld!r}")
            if value not in _ALLOWED[fld]:
                raise ValueError(f"unknown {fld} value {value!r}")

    def matches(self, attrs: AttributeSet) -> bool:
        return all(attrs.get(fld) == value for fld, value in self.conjuncts)


@dataclass(frozen=True)
class PairSpec:
    """An ordered pair of groups compared by the pairwise measures."""

    left: GroupSelector
    right: GroupSelector
    domain_tag: str

    def __post_init__(self) -> None:
        if self.left == self.right:
            raise ValueError(f"pair must name two distinct groups, got {self.left.name!r} twice")

    @property
    def name(self) -> str:
        return f"{self.left.name}×{self.right.name}"

    @property
    def ascii_name(self) -> str:
        return f"{self.left.name}x{self.right.name}"


@dataclass(frozen=True)
class Manifest:
    """Immutable collection of image records plus provenance metadata."""

    records: tuple[ImageRecord, ...]
    source: str = ""
    setting: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ImageRecord]:
        return iter(self.records)

    def ids(self) -> list[str]:
        return [r.image_id for r in self.records]


def _selector(name: str, **conjuncts: str) -> GroupSelector:
    return GroupSelector(name=name, conjuncts=tuple(sorted(conjuncts.items())))


STANDARD_GROUPS: tuple[GroupSelector, ...] = (
    _selector("F", gender="F"),
    _selector("M", gender="M"),
    _selector("D", skin="D"),
    _selector("L", skin="L"),
    _selector("Ns", affect="Ns"),
    _selector("S", affect="S"),
    _selector("D+F", skin="D", gender="F"),
    _selector("D+M", skin="D", gender="M"),
    _selector("L+F", skin="L", gender="F"),
    _selector("L+M", skin="L", gender="M"),
)

_BY_NAME = {g.name: g for g in STANDARD_GROUPS}

_PAIR_LAYOUT = (
    ("F", "M", "gender"),
    ("D", "L", "race"),
    ("Ns", "S", "affect"),
    ("D+F", "D+M", "intersection"),
    ("L+F", "L+M", "intersection"),
    ("D+F", "L+F", "intersection"),
    ("D+M", "L+M", "intersection"),
    ("D+F", "L+M", "intersection"),
    ("L+F", "D+M", "intersection"),
)

STANDARD_PAIRS: tuple[PairSpec, ...] = tuple(
    PairSpec(left=_BY_NAME[a], right=_BY_NAME[b], domain_tag=tag) for a, b, tag in _PAIR_LAYOUT
)

DOMAIN_GROUPS: dict[str, tuple[str, ...]] = {
    "gender": ("F", "M"),
    "race": ("D", "L"),
    "affect": ("Ns", "S"),
    "intersection": ("D+F", "D+M", "L+F", "L+M"),
}


def standard_groups() -> tuple[GroupSelector, ...]:
    """The ten audited groups in fixed column order."""
    return STANDARD_GROUPS


def standard_pairs() -> tuple[PairSpec, ...]:
    """The nine audited group pairs in fixed column order."""
    return STANDARD_PAIRS


def group_by_name(name: str) -> GroupSelector:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"not a standard group: {name!r}") from None


def select_group(manifest: Manifest, selector: GroupSelector) -> list[ImageRecord]:
    """Records matching every conjunct, in manifest order. Pure; may be empty."""
    return [r for r in manifest.records if selector.matches(r.attributes)]


# ---------------------------------------------------------------------------
# Loading

def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def _parse_attrs(raw: dict[str, Any]) -> AttributeSet:
    values: dict[str, str] = {}
    for name in ATTRIBUTE_FIELDS:
        value = raw.get(name)
        if value is None or value == "":
            continue
        values[name] = str(value)
    return AttributeSet(**values)


def _record_from_mapping(raw: dict[str, Any]) -> ImageRecord:
    image_id = raw.get("image_id")
    if not image_id:
        raise ValueError("missing image_id")
    true_class = raw.get("true_class")
    if true_class is None or true_class == "":
        raise ValueError(f"record {image_id!r} has no true_class")
    return ImageRecord(
        image_id=str(image_id),
        uri=str(raw.get("uri", "")),
        true_class=ClassLabel.parse(str(true_class)),
        attributes=_parse_attrs(raw),
    )


def load_manifest(path: str | Path, fmt: str | None = None) -> Manifest:
    """Load a manifest from JSONL or CSV, applying record-level validation.

    fmt is inferred from the suffix when not given. A sidecar
    ``<name>.meta.json`` next to the file, when present, supplies the source
    name and setting tag.
    """
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"manifest not found: {p}")
    if fmt is None:
        fmt = "csv" if p.suffix.lower() == ".csv" else "jsonl"
    if fmt not in ("jsonl", "csv"):
        raise ManifestError(f"unknown manifest format {fmt!r}", path=str(p))

    records: list[ImageRecord] = []
    seen: dict[str, int] = {}

    def add(raw: dict[str, Any], line_no: int) -> None:
        try:
            record = _record_from_mapping(raw)
        except ValueError as exc:
            raise ManifestError(str(exc), path=str(p), line=line_no) from None
        if record.image_id in seen:
            raise ManifestError(
                f"duplicate image_id {record.image_id!r} (first seen on line {seen[record.image_id]})",
                path=str(p), line=line_no,
            )
        seen[record.image_id] = line_no
        records.append(record)

    if fmt == "jsonl":
        with p.open(encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ManifestError(f"invalid JSON: {exc.msg}", path=str(p), line=line_no) from None
                if not isinstance(raw, dict):
                    raise ManifestError("line is not a JSON object", path=str(p), line=line_no)
                add(raw, line_no)
    else:
        with p.open(encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            for line_no, raw in enumerate(reader, start=2):
                add({k: v for k, v in raw.items() if v not in (None, "")}, line_no)

    source, setting, extra = p.stem, "", {}
    meta_path = sidecar_path(p)
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        source = meta.get("source", source)
        setting = meta.get("setting", setting)
        extra = {k: v for k, v in meta.items() if k not in ("source", "setting")}
    return Manifest(records=tuple(records), source=source, setting=setting, metadata=extra)


def save_manifest(manifest: Manifest, path: str | Path) -> Path:
    """Write a manifest as JSONL plus its metadata sidecar."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as handle:
        for r in manifest.records:
            row: dict[str, Any] = {"image_id": r.image_id, "uri": r.uri, "true_class": r.true_class.value}
            for name in ATTRIBUTE_FIELDS:
                value = r.attributes.get(name)
                if value is not None:
                    row[name] = value
            handle.write(json.dumps(row) + "\n")
    meta = {"source": manifest.source, "setting": manifest.setting, **manifest.metadata}
    sidecar_path(p).write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return p


# ---------------------------------------------------------------------------
# Validation

@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning" | "info"
    code: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)
    group_sizes: dict[str, int] = field(default_factory=dict)
    class_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    attribute_coverage: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(f.severity == "error" for f in self.findings)

    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "warning"]

    def add(self, severity: str, code: str, message: str) -> None:
        self.findings.append(Finding(severity=severity, code=code, message=message))

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "findings": [
                {"severity": f.severity, "code": f.code, "message": f.message}
                for f in self.findings
            ],
            "group_sizes": dict(self.group_sizes),
            "class_counts": {g: dict(c) for g, c in self.class_counts.items()},
            "attribute_coverage": dict(self.attribute_coverage),
        }


def _uri_is_remote(uri: str) -> bool:
    return urlparse(uri).scheme in ("http", "https")


def validate_manifest(manifest: Manifest, offline: bool = False) -> ValidationReport:
    """Report group sizes, per-class counts, attribute coverage, and URI issues.

    Never mutates the manifest; every finding is a report entry. Unresolvable
    URIs are warnings when offline is set, errors otherwise; remote URIs are
    never fetched.
    """
    report = ValidationReport()

    for name in ATTRIBUTE_FIELDS:
        report.attribute_coverage[name] = sum(
            1 for r in manifest.records if r.attributes.get(name) is not None
        )

    for selector in STANDARD_GROUPS:
        rows = select_group(manifest, selector)
        report.group_sizes[selector.name] = len(rows)
        gan = sum(1 for r in rows if r.true_class is ClassLabel.GAN)
        real = len(rows) - gan
        report.class_counts[selector.name] = {"GAN": gan, "Real": real}
        if not rows:
            report.add("warning", "empty-group", f"group {selector.name} has no records")
            continue
        if gan == 0:
            report.add("warning", "no-gan-rows",
                       f"metric Acc_gan undefined for group {selector.name} (0 GAN-truth records)")
        if real == 0:
            report.add("warning", "no-real-rows",
                       f"metric Acc_real undefined for group {selector.name} (0 Real-truth records)")

    missing_uri_severity = "warning" if offline else "error"
    for r in manifest.records:
        if not r.uri:
            report.add("error", "missing-uri", f"record {r.image_id!r} has empty uri")
        elif _uri_is_remote(r.uri):
            if offline:
                report.add("info", "uri-unchecked", f"record {r.image_id!r}: remote uri not checked (offline)")
        elif not Path(r.uri).exists():
            report.add(missing_uri_severity, "uri-unresolved",
                       f"record {r.image_id!r}: uri does not resolve: {r.uri}")

    return report


def check_partition(manifest: Manifest) -> dict[str, bool]:
    """Partition sanity per domain: the two groups of a domain split exactly
    the records carrying that domain's attribute."""
    out: dict[str, bool] = {}
    for domain, names in (("gender", ("F", "M")), ("race", ("D", "L")), ("affect", ("Ns", "S"))):
        attr = {"gender": "gender", "race": "skin", "affect": "affect"}[domain]
        carrying = sum(1 for r in manifest.records if r.attributes.get(attr) is not None)
        split = sum(len(select_group(manifest, _BY_NAME[n])) for n in names)
        out[domain] = carrying == split
    return out
