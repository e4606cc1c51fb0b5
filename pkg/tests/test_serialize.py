import json

import numpy as np
import pytest

from xchan.channels import KrausChannel, choi
from xchan.errors import NotTracePreservingError, SchemaError
from xchan.extremal import sample_extremal
from xchan.linalg import ID2, SY
from xchan.serialize import (
    channel_from_doc,
    channel_to_doc,
    dump_channel,
    dump_state,
    matrix_from_doc,
    matrix_to_doc,
    parse_channel,
    parse_state,
    state_from_doc,
    state_to_doc,
)
from xchan.states import random_density


@pytest.mark.parametrize("n,seed", [(2, 0), (3, 7), (4, 12)])
def test_channel_round_trip_is_exact(n, seed):
    _, ch = sample_extremal(n, seed)
    back = parse_channel(dump_channel(ch))
    assert len(back) == len(ch)
    for a, b in zip(ch.kraus, back.kraus):
        assert np.array_equal(a, b)
    assert np.max(np.abs(choi(ch) - choi(back))) == 0.0


def test_complex_entries_survive_the_round_trip():
    ch = KrausChannel((SY,))
    back = parse_channel(dump_channel(ch))
    assert np.array_equal(back.kraus[0], SY)


def test_serialize_then_parse_twice_is_stable():
    _, ch = sample_extremal(3, 5)
    once = dump_channel(ch)
    twice = dump_channel(parse_channel(once))
    assert once == twice


def test_metadata_passes_through():
    _, ch = sample_extremal(2, 4)
    doc = channel_to_doc(ch, {"n": 2, "seed": 4})
    assert doc["metadata"] == {"n": 2, "seed": 4}
    assert channel_to_doc(ch).get("metadata") is None


def test_state_round_trip_is_exact():
    rho = random_density(3, 9)
    back = parse_state(dump_state(rho))
    assert np.array_equal(back.mat, rho.mat)


def test_matrix_doc_encoding_shape():
    doc = matrix_to_doc(np.array([[1.0, 2.0j]]))
    assert doc == [[[1.0, 0.0], [0.0, 2.0]]]
    assert np.array_equal(
        matrix_from_doc(doc, "m"), np.array([[1.0, 2.0j]])
    )


def test_schema_rejects_shape_mismatch():
    doc = {"dim": 2, "kraus": [matrix_to_doc(np.eye(3))]}
    with pytest.raises(SchemaError) as info:
        channel_from_doc(doc)
    assert "kraus[0]" in str(info.value)


@pytest.mark.parametrize(
    "doc,field",
    [
        ([], "$"),
        ({"kraus": [matrix_to_doc(ID2)]}, "dim"),
        ({"dim": "2", "kraus": [matrix_to_doc(ID2)]}, "dim"),
        ({"dim": True, "kraus": [matrix_to_doc(ID2)]}, "dim"),
        ({"dim": 2}, "kraus"),
        ({"dim": 2, "kraus": []}, "kraus"),
        ({"dim": 2, "kraus": [[[1.0, 0.0]]]}, "kraus[0][0][0]"),
        ({"dim": 2, "kraus": [[[[1.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]}, "kraus[0][0][0]"),
        ({"dim": 2, "kraus": [[[[1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]}, "kraus[0][1]"),
        ({"dim": 2, "kraus": [matrix_to_doc(ID2)], "metadata": 7}, "metadata"),
    ],
)
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError) as info:
        channel_from_doc(doc)
    assert info.value.field == field


def test_schema_rejects_non_finite_entries():
    text = '{"dim": 1, "kraus": [[[[Infinity, 0.0]]]]}'
    with pytest.raises(SchemaError):
        parse_channel(text)


def test_parse_channel_enforces_completeness_by_default():
    doc = {"dim": 2, "kraus": [matrix_to_doc(0.5 * ID2)]}
    with pytest.raises(NotTracePreservingError):
        channel_from_doc(doc)
    ch = channel_from_doc(doc, require_tp=False)
    assert len(ch) == 1


def test_malformed_json_reports_position():
    with pytest.raises(json.JSONDecodeError) as info:
        parse_channel("{not json")
    assert info.value.pos >= 0


def test_state_schema_errors():
    with pytest.raises(SchemaError):
        state_from_doc({"dim": 2})
    with pytest.raises(SchemaError):
        state_from_doc({"dim": 3, "rho": matrix_to_doc(np.eye(2) / 2)})
    with pytest.raises(SchemaError):
        state_from_doc([1, 2])
    doc = state_to_doc(random_density(2, 2))
    assert set(doc) == {"dim", "rho"}
