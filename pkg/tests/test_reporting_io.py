import json
import os
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hboot import IndexKind, IndexSample, ValidationError
from hboot._table import Table, fmt
from hboot.reporting import (
    Dataset,
    dataset_from_json,
    dataset_to_csv,
    dataset_to_json,
    load_dataset,
    parse_dataset,
    write_atomic,
)
from hboot.reporting.io import parse_norms

H_HEADER = "field_id,researcher_id,h_value\n"
P_HEADER = "researcher_id,field_id,citations\n"
NORMS = "field_id,chi,c0,n0,journal_h_max\nphysics,10.1,10.1,3.8,330\nmath,3.9,3.9,2.1,190\n#reference,physics\n"


def test_single_h_row():
    ds = parse_dataset(H_HEADER + "mathematics,r1,26\n", "h_values")
    assert list(ds.samples) == ["mathematics"]
    assert ds.samples["mathematics"].values == (26.0,)
    assert ds.samples["mathematics"].ids == ("r1",)


def test_profile_row_becomes_h():
    ds = parse_dataset(P_HEADER + "r1,physics,5;4;3;2;1\nr2,physics,\n", "citation_profiles")
    assert ds.samples["physics"].values == (3.0, 0.0)
    assert ds.profiles[0].citations == (5, 4, 3, 2, 1)
    assert ds.profiles[1].citations == ()


@pytest.mark.parametrize("text, kind, message", [
    ("", "h_values", "empty"),
    ("\n\n", "h_values", "empty"),
    (H_HEADER, "h_values", "no data rows"),
    ("a,b,c\nm,r,1\n", "h_values", "line 1: expected header"),
    (H_HEADER + "m,r1,3\nm,r2,-1\n", "h_values", "line 3: h_value '-1'"),
    (H_HEADER + "m,r1,2.5\n", "h_values", "line 2: h_value"),
    (H_HEADER + "m,r1\n", "h_values", "line 2: expected 3 columns"),
    (H_HEADER + ",r1,3\n", "h_values", "line 2: empty field_id"),
    (P_HEADER + "r1,physics,5;-4\n", "citation_profiles", "line 2: citation count '-4'"),
    (P_HEADER + "r1,physics,5;x\n", "citation_profiles", "line 2: citation count 'x'"),
    ("field_id,researcher_id,value,kind\nm,r,abc,n_index\n", "index_values", "not a number"),
    ("field_id,researcher_id,value,kind\nm,r,1,bogus\n", "index_values", "unknown index kind"),
    ("field_id,researcher_id,value,kind\nm,r,1,n_index\nm,s,2,normalized_h\n", "index_values",
     "line 3: field 'm' mixes"),
    (H_HEADER + "m,r1,3\n", "spreadsheet", "unknown input kind"),
])
def test_parse_errors(text, kind, message):
    with pytest.raises(ValidationError, match=message):
        parse_dataset(text, kind, "in.csv")


def test_norms_parsing():
    norms, ref = parse_norms(NORMS)
    assert ref == "physics"
    assert norms["math"].chi_ref == 10.1 and norms["math"].journal_h_max == 190


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("field_id,chi,c0,n0,journal_h_max\nphysics,10.1,10.1,3.8,330\n", "missing '#reference"),
    (NORMS.replace("#reference,physics", "#reference,bio"), "reference field 'bio'"),
    (NORMS.replace("3.9,3.9", "x,3.9"), "line 3: chi, c0 and n0 must be numbers"),
    (NORMS.replace("3.9,3.9", "-3.9,3.9"), "line 3: chi must be a positive"),
    (NORMS.replace("190", "0"), "journal_h_max"),
    (NORMS + "math,1,1,1,1\n", "duplicate norms"),
])
def test_norms_errors(text, message):
    with pytest.raises(ValidationError, match=message):
        parse_norms(text)


def test_unknown_norms_field_is_referential_error(tmp_path):
    data = tmp_path / "h.csv"
    data.write_text(H_HEADER + "physics,r1,3\n")
    norms = tmp_path / "n.csv"
    norms.write_text(NORMS)
    with pytest.raises(ValidationError, match="unknown field.*math"):
        load_dataset(data, "h_values", norms)


def _roundtrip_csv(ds):
    return parse_dataset(dataset_to_csv(ds), "h_values" if all(
        s.kind is IndexKind.RAW_H for s in ds.samples.values()) else "index_values")


samples_st = st.dictionaries(
    st.text("abcxyz_", min_size=1, max_size=8),
    st.lists(st.integers(0, 300), min_size=1, max_size=20),
    min_size=1, max_size=4,
)


@given(samples_st)
def test_h_values_roundtrip(data):
    ds = Dataset({f: IndexSample(f, tuple(v)) for f, v in data.items()})
    again = _roundtrip_csv(ds)
    assert again.samples == ds.samples
    assert dataset_from_json(dataset_to_json(ds)).samples == ds.samples


@given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=20))
def test_index_values_roundtrip_is_exact(values):
    ds = Dataset({"f": IndexSample("f", tuple(values), IndexKind.N_INDEX)})
    assert _roundtrip_csv(ds).samples == ds.samples
    assert dataset_from_json(dataset_to_json(ds)).samples == ds.samples


def test_full_dataset_json_roundtrip(profiles_ds):
    again = dataset_from_json(dataset_to_json(profiles_ds))
    assert again.samples == profiles_ds.samples
    assert again.profiles == profiles_ds.profiles
    assert again.norms == profiles_ds.norms
    assert again.reference_field == profiles_ds.reference_field
    for s in again.samples.values():
        assert s.ids == profiles_ds.samples[s.field_id].ids


def test_fixture_csv_roundtrip_is_byte_identical(hcr):
    from hboot.reporting import fixture_path
    assert dataset_to_csv(hcr) == fixture_path("hcr").read_text(encoding="utf-8")


def test_json_errors():
    with pytest.raises(ValidationError, match="empty"):
        dataset_from_json("")
    with pytest.raises(ValidationError, match="line 1"):
        dataset_from_json("{")
    with pytest.raises(ValidationError, match="not an hboot"):
        dataset_from_json(json.dumps({"samples": []}))
    with pytest.raises(ValidationError, match="no samples"):
        dataset_from_json(json.dumps({"format": "hboot.dataset", "samples": []}))


def test_load_json_by_suffix(tmp_path, hcr):
    p = tmp_path / "d.json"
    p.write_text(dataset_to_json(hcr))
    assert load_dataset(p).samples == hcr.samples


def test_write_atomic_replaces_and_leaves_nothing_on_failure(tmp_path):
    target = tmp_path / "out.csv"
    write_atomic(target, "a\n")
    write_atomic(target, "b\n")
    assert target.read_text() == "b\n"
    assert oct(os.stat(target).st_mode & 0o777) == "0o644"

    with pytest.raises(TypeError):
        write_atomic(tmp_path / "bad.csv", 123)
    assert sorted(os.listdir(tmp_path)) == ["out.csv"]
    with pytest.raises(OSError):
        write_atomic(tmp_path / "missing" / "x.csv", "a")


def half_away(x, places):
    d = Decimal(x)
    q = Decimal(1).scaleb(-places)
    mag = (abs(d) / q + Decimal("0.5")).to_integral_value(rounding="ROUND_FLOOR") * q
    out = mag if d >= 0 else -mag
    return out if out != 0 else abs(out)


@pytest.mark.parametrize("x, places, text", [
    (0.125, 2, "0.13"), (-0.125, 2, "-0.13"), (2.675, 2, "2.67"), (1.005, 2, "1.00"),
    (0.5, 0, "1"), (-0.5, 0, "-1"), (-0.0001, 2, "0.00"), (-0.0, 1, "0.0"), (87.85, 1, "87.8"),
    (12.25, 1, "12.3"), (95.0, 1, "95.0"),
])
def test_fmt_cases(x, places, text):
    assert fmt(x, places) == text


@given(st.floats(-1e6, 1e6, allow_nan=False), st.integers(0, 3))
def test_fmt_matches_exact_rounding(x, places):
    assert Decimal(fmt(x, places)) == half_away(x, places)


def test_table_csv_quotes():
    t = Table(["a", "b"], [["x,y", "1"]])
    assert t.to_csv() == 'a,b\n"x,y",1\n'
    assert t.records() == [{"a": "x,y", "b": "1"}]
