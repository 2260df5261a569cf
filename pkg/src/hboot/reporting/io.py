"""Dataset ingestion and serialisation.

CSV layouts (UTF-8, comma separated, header row required):

h values      ``field_id,researcher_id,h_value``   h_value a non-negative integer
profiles      ``researcher_id,field_id,citations`` citations joined by ``;``, may be empty
index values  ``field_id,researcher_id,value,kind`` real values, kind an IndexKind
norms         ``field_id,chi,c0,n0,journal_h_max`` plus one ``#reference,<field_id>`` row

A ``.json`` path holds a whole dataset (see ``dataset_to_json``).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import DomainError, ValidationError
from ..indices import CitationProfile, FieldNorms, IndexKind, IndexSample, h_index

__all__ = [
    "Dataset",
    "LOAD_KINDS",
    "load_dataset",
    "load_norms",
    "parse_dataset",
    "dataset_to_csv",
    "dataset_to_json",
    "dataset_from_json",
    "write_atomic",
    "fixture_path",
]

LOAD_KINDS = ("h_values", "citation_profiles", "index_values")

_HEADERS = {
    "h_values": ["field_id", "researcher_id", "h_value"],
    "citation_profiles": ["researcher_id", "field_id", "citations"],
    "index_values": ["field_id", "researcher_id", "value", "kind"],
}
_NORMS_HEADER = ["field_id", "chi", "c0", "n0", "journal_h_max"]

_FIXTURES = {
    "hcr": "hcr_synthetic_h.csv",
    "profiles": "synthetic_profiles.csv",
    "norms": "synthetic_norms.csv",
    "profile_norms": "synthetic_profile_norms.csv",
}


def fixture_path(name: str) -> Path:
    """Path of a bundled synthetic fixture: hcr, profiles, norms, profile_norms."""
    try:
        filename = _FIXTURES[name]
    except KeyError:
        raise ValidationError(f"unknown fixture {name!r}; choose from {sorted(_FIXTURES)}") from None
    return Path(str(resources.files("hboot") / "data" / filename))


@dataclass(frozen=True)
class Dataset:
    samples: dict[str, IndexSample]
    norms: dict[str, FieldNorms] | None = None
    profiles: tuple[CitationProfile, ...] | None = None
    reference_field: str | None = field(default=None)

    def __post_init__(self):
        if self.norms:
            known = set(self.samples)
            if self.profiles:
                known |= {p.field_id for p in self.profiles}
            unknown = sorted(set(self.norms) - known)
            if unknown:
                raise ValidationError(f"norms reference unknown field(s): {', '.join(unknown)}")

    @property
    def field_ids(self) -> list[str]:
        return list(self.samples)

    def with_norms(self, norms: dict[str, FieldNorms], reference: str | None) -> "Dataset":
        return Dataset(self.samples, norms, self.profiles, reference)


# -- parsing -------------------------------------------------------------------


def _rows(text: str, expected: list[str], source: str):
    reader = csv.reader(io.StringIO(text))
    rows = [(i, row) for i, row in enumerate(reader, start=1)
            if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ValidationError(f"{source}: file is empty")
    line, header = rows[0]
    if [h.strip().lower() for h in header] != expected:
        raise ValidationError(f"{source}: line {line}: expected header {','.join(expected)!r}, "
                              f"got {','.join(header)!r}")
    if len(rows) == 1:
        raise ValidationError(f"{source}: no data rows")
    return rows[1:]


def _nonneg_int(text: str, what: str, where: str) -> int:
    t = text.strip()
    if not (t.isascii() and t.isdigit()):
        raise ValidationError(f"{where}: {what} {text!r} is not a non-negative integer")
    return int(t)


def _ident(text: str, what: str, where: str) -> str:
    t = text.strip()
    if not t:
        raise ValidationError(f"{where}: empty {what}")
    return t


def _group(triples, kinds=None) -> dict[str, IndexSample]:
    values, ids = defaultdict(list), defaultdict(list)
    for field_id, rid, v in triples:
        values[field_id].append(v)
        ids[field_id].append(rid)
    out = {}
    for field_id in values:
        kind = kinds[field_id] if kinds else IndexKind.RAW_H
        out[field_id] = IndexSample(field_id, tuple(values[field_id]), kind, tuple(ids[field_id]))
    return out


def parse_dataset(text: str, kind: str, source: str = "<input>") -> Dataset:
    if kind not in LOAD_KINDS:
        raise ValidationError(f"unknown input kind {kind!r}; choose from {', '.join(LOAD_KINDS)}")
    rows = _rows(text, _HEADERS[kind], source)
    width = len(_HEADERS[kind])
    triples = []
    profiles = []
    kinds: dict[str, IndexKind] = {}
    for line, row in rows:
        where = f"{source}: line {line}"
        if len(row) != width:
            raise ValidationError(f"{where}: expected {width} columns, got {len(row)}")
        if kind == "h_values":
            field_id = _ident(row[0], "field_id", where)
            rid = _ident(row[1], "researcher_id", where)
            triples.append((field_id, rid, _nonneg_int(row[2], "h_value", where)))
        elif kind == "citation_profiles":
            rid = _ident(row[0], "researcher_id", where)
            field_id = _ident(row[1], "field_id", where)
            cell = row[2].strip()
            cites = [] if not cell else [_nonneg_int(c, "citation count", where)
                                         for c in cell.split(";")]
            profile = CitationProfile(rid, field_id, tuple(cites))
            profiles.append(profile)
            triples.append((field_id, rid, h_index(profile)))
        else:
            field_id = _ident(row[0], "field_id", where)
            rid = _ident(row[1], "researcher_id", where)
            try:
                value = float(row[2])
            except ValueError:
                raise ValidationError(f"{where}: value {row[2]!r} is not a number") from None
            if not (value >= 0 and math.isfinite(value)):
                raise ValidationError(f"{where}: value {row[2]!r} must be finite and non-negative")
            try:
                k = IndexKind(row[3].strip())
            except ValueError:
                raise ValidationError(f"{where}: unknown index kind {row[3]!r}") from None
            if kinds.setdefault(field_id, k) is not k:
                raise ValidationError(f"{where}: field {field_id!r} mixes index kinds")
            triples.append((field_id, rid, value))
    try:
        samples = _group(triples, kinds or None)
    except DomainError as exc:
        raise ValidationError(f"{source}: {exc}") from None
    return Dataset(samples, profiles=tuple(profiles) if kind == "citation_profiles" else None)


def parse_norms(text: str, source: str = "<norms>") -> tuple[dict[str, FieldNorms], str]:
    reader = csv.reader(io.StringIO(text))
    reference = None
    raw = {}
    header_seen = False
    for line, row in enumerate(reader, start=1):
        if not row or not any(c.strip() for c in row):
            continue
        where = f"{source}: line {line}"
        if not header_seen:
            if [h.strip().lower() for h in row] != _NORMS_HEADER:
                raise ValidationError(f"{where}: expected header {','.join(_NORMS_HEADER)!r}")
            header_seen = True
            continue
        if row[0].strip() == "#reference":
            if len(row) < 2 or not row[1].strip():
                raise ValidationError(f"{where}: #reference row needs a field_id")
            if reference is not None:
                raise ValidationError(f"{where}: duplicate #reference row")
            reference = row[1].strip()
            continue
        if len(row) != len(_NORMS_HEADER):
            raise ValidationError(f"{where}: expected {len(_NORMS_HEADER)} columns, got {len(row)}")
        field_id = _ident(row[0], "field_id", where)
        if field_id in raw:
            raise ValidationError(f"{where}: duplicate norms for field {field_id!r}")
        try:
            chi, c0, n0 = (float(x) for x in row[1:4])
        except ValueError:
            raise ValidationError(f"{where}: chi, c0 and n0 must be numbers") from None
        raw[field_id] = (chi, c0, n0, _nonneg_int(row[4], "journal_h_max", where), where)
    if not header_seen:
        raise ValidationError(f"{source}: file is empty")
    if reference is None:
        raise ValidationError(f"{source}: missing '#reference,<field_id>' row")
    if reference not in raw:
        raise ValidationError(f"{source}: reference field {reference!r} has no norms row")
    chi_ref = raw[reference][0]
    norms = {}
    for field_id, (chi, c0, n0, jh, where) in raw.items():
        try:
            norms[field_id] = FieldNorms(field_id, chi, chi_ref, c0, n0, jh)
        except DomainError as exc:
            raise ValidationError(f"{where}: {exc}") from None
    return norms, reference


def _read(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_norms(path) -> tuple[dict[str, FieldNorms], str]:
    return parse_norms(_read(path), str(path))


def load_dataset(path, kind: str = "h_values", norms_path=None) -> Dataset:
    """Read and validate a dataset; ``kind`` is ignored for ``.json`` files."""
    path = Path(path)
    text = _read(path)
    if path.suffix.lower() == ".json":
        ds = dataset_from_json(text, str(path))
    else:
        ds = parse_dataset(text, kind, str(path))
    if norms_path is not None:
        norms, reference = load_norms(norms_path)
        ds = ds.with_norms(norms, reference)
    return ds


# -- serialisation -------------------------------------------------------------


def _number(v: float) -> str:
    return str(int(v)) if v == int(v) and abs(v) < 2 ** 53 else repr(v)


def _sample_rows(sample: IndexSample):
    ids = sample.ids or tuple(f"{sample.field_id}-{i + 1}" for i in range(len(sample)))
    return zip(ids, sample.values)


def dataset_to_csv(ds: Dataset) -> str:
    """Samples as CSV: h-values layout when every sample is raw h, else index values."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    raw = all(s.kind is IndexKind.RAW_H for s in ds.samples.values())
    if raw:
        w.writerow(_HEADERS["h_values"])
        for s in ds.samples.values():
            for rid, v in _sample_rows(s):
                w.writerow([s.field_id, rid, int(v)])
    else:
        w.writerow(_HEADERS["index_values"])
        for s in ds.samples.values():
            for rid, v in _sample_rows(s):
                w.writerow([s.field_id, rid, _number(v), s.kind.value])
    return buf.getvalue()


def dataset_to_json(ds: Dataset) -> str:
    doc = {
        "format": "hboot.dataset",
        "version": 1,
        "samples": [
            {"field_id": s.field_id, "kind": s.kind.value,
             "ids": list(s.ids) if s.ids is not None else None,
             "values": [int(v) if s.kind is IndexKind.RAW_H else v for v in s.values]}
            for s in ds.samples.values()
        ],
    }
    if ds.norms:
        doc["norms"] = {
            "reference": ds.reference_field,
            "fields": [{"field_id": n.field_id, "chi": n.chi, "c0": n.c0, "n0": n.n0,
                        "journal_h_max": int(n.journal_h_max)} for n in ds.norms.values()],
        }
    if ds.profiles is not None:
        doc["profiles"] = [{"researcher_id": p.researcher_id, "field_id": p.field_id,
                            "citations": list(p.citations)} for p in ds.profiles]
    return json.dumps(doc, indent=2) + "\n"


def dataset_from_json(text: str, source: str = "<json>") -> Dataset:
    if not text.strip():
        raise ValidationError(f"{source}: file is empty")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{source}: line {exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or doc.get("format") != "hboot.dataset":
        raise ValidationError(f"{source}: not an hboot dataset document")
    try:
        samples = {}
        for entry in doc["samples"]:
            s = IndexSample(entry["field_id"], tuple(entry["values"]), IndexKind(entry["kind"]),
                            tuple(entry["ids"]) if entry.get("ids") is not None else None)
            samples[s.field_id] = s
        profiles = None
        if "profiles" in doc:
            profiles = tuple(CitationProfile(p["researcher_id"], p["field_id"],
                                             tuple(p["citations"])) for p in doc["profiles"])
        norms, reference = None, None
        if doc.get("norms"):
            reference = doc["norms"]["reference"]
            by_id = {f["field_id"]: f for f in doc["norms"]["fields"]}
            chi_ref = by_id[reference]["chi"]
            norms = {fid: FieldNorms(fid, f["chi"], chi_ref, f["c0"], f["n0"], f["journal_h_max"])
                     for fid, f in by_id.items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{source}: malformed dataset document ({exc})") from None
    if not samples:
        raise ValidationError(f"{source}: dataset has no samples")
    return Dataset(samples, norms, profiles, reference)


def write_atomic(path, data: str | bytes) -> None:
    """Write via a temporary sibling and rename; nothing is left behind on failure."""
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        kwargs = {} if isinstance(data, bytes) else {"encoding": "utf-8", "newline": ""}
        with os.fdopen(fd, mode, **kwargs) as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
