"""Byte-stable golden files for the serialized result schemas."""

import json
from pathlib import Path

import pytest

from flaghg.mirror import hori_vafa_verify, integral_Id
from flaghg.tableaux import FlagSpec

GOLDEN = Path(__file__).parent / "golden"


def _render(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


@pytest.mark.parametrize("name,spec", [
    ("integral_p1_d1.json", FlagSpec(2, (1,), (1,))),
    ("integral_p1_d2.json", FlagSpec(2, (1,), (2,))),
    ("integral_fl12c3_d11.json", FlagSpec(3, (1, 2), (1, 1))),
])
def test_integral_golden(name, spec):
    got = _render(integral_Id(spec).to_json())
    assert got == (GOLDEN / name).read_text()


def test_hori_vafa_golden():
    got = _render(hori_vafa_verify(3, 2, 1).to_json())
    assert got == (GOLDEN / "hori_vafa_gr2c3_d1.json").read_text()
