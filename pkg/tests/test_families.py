import json

import pytest

from terracini.arith import MERSENNE_61
from terracini.errors import PreconditionError
from terracini.families import (
    FAMILY_NAMES,
    catalog,
    collinear,
    distinguish_components_d8,
    evaluate_family,
    get_family,
    sample,
)
from terracini.fatpoints import PointConfiguration, is_terracini, span_rank, spans

p = MERSENNE_61


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.label)
def test_catalog_samples_have_expected_membership(spec):
    smp = sample(spec, p, seed=3)
    S = smp.points
    assert S.x == spec.x and S.n == spec.n
    assert spans(S)
    ok, rep = is_terracini(S, spec.d)
    assert ok == spec.terracini, rep


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.label)
def test_samples_are_deterministic(spec):
    assert sample(spec, p, seed=4).points == sample(spec, p, seed=4).points


def test_sample_json_round_trip():
    smp = sample(get_family("conic6"), p, seed=5)
    obj = json.loads(json.dumps(smp.to_json()))
    assert PointConfiguration.from_json(obj) == smp.points
    assert obj["witness"]["family"] == "conic6"


def test_collinear_points_lie_on_a_line():
    spec = collinear(3, 6, 9)
    S = sample(spec, p, seed=6).points
    k = 3
    line = PointConfiguration(3, S.points[spec.x - k - 1:], p)
    assert span_rank(line) == 2


@pytest.mark.parametrize("x", range(3, 10))
def test_collinear_plane_cubics_never_terracini(x):
    spec = collinear(2, 3, x)
    assert not spec.terracini
    assert not is_terracini(sample(spec, p, seed=x).points, 3)[0]


def test_collinear_terracini_range():
    assert collinear(2, 4, 4).terracini
    assert collinear(2, 6, 9).terracini
    # beyond (n+1)x <= C(n+d, n) every configuration has h1 > 0, but h0 = 0
    assert not collinear(2, 6, 10).terracini
    with pytest.raises(PreconditionError):
        collinear(2, 6, 3)


def test_get_family_names():
    for name in FAMILY_NAMES:
        if name == "generic":
            spec = get_family(name, 2, 5, 7)
        else:
            spec = get_family(name)
        assert spec.name == name
    with pytest.raises(KeyError):
        get_family("nope")
    with pytest.raises(PreconditionError):
        get_family("generic")


def test_parameter_count_checked():
    spec = get_family("conic6")
    with pytest.raises(PreconditionError):
        evaluate_family(spec, [1, 2, 3], p)


def test_degree_eight_components_are_distinguished():
    out = distinguish_components_d8(p, seed=7, count=4)
    assert all(r["terracini"] for rows in out.values() for r in rows)
    assert all(r["h0_quartics"] == 1 for r in out["quartic14_plus1"])
    assert all(r["h0_quartics"] == 0 for r in out["severi"])
