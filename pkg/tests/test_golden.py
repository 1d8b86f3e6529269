"""Every parametrization in the golden knot table classifies to its listed fraction."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from chebknots.diagram import classify
from chebknots.twobridge import canonical, equivalent

GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_parametrizations.json").read_text())


@pytest.mark.parametrize("row", GOLDEN, ids=[f"{r['name']}-C({r['a']},{r['b']},{r['c']},{r['phi']})" for r in GOLDEN])
def test_parametrization(row):
    res = classify((row["a"], row["b"], row["c"], Fraction(row["phi"])))
    want = Fraction(row["fraction"])
    # same knot with the same chirality, and the listed name
    assert equivalent(res.schubert, want)
    assert canonical(res.schubert, up_to_mirror=True).name == row["name"]
