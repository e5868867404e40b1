import json

import pytest

ZERO = (0, 0, 0, 0)

from quarticfd.field import BiquadraticField, GaloisType

from quarticfd.hull import facet_polytope
from quarticfd.presets import K2_PAIRINGS, PRESETS, get_preset, shintani_vertices
from quarticfd.report import (
    FAIL, NOTE, PASS, combinatorially_equal, lemma_classes, remark_identity, run_preset, unit_from_word,
)


def test_aliases():
    assert get_preset("Shintani(1)").name == "shintani1"
    assert get_preset("shintani:3").name == "shintani3"
    with pytest.raises(KeyError):
        get_preset("nope")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_pass(name):
    rep = run_preset(name)
    assert rep.passed, rep.to_text()
    assert rep.exploratory == PRESETS[name].exploratory
    data = json.loads(rep.to_json())
    assert data["status"] == rep.status and len(data["checks"]) == len(rep.checks)


def test_typos_are_noted():
    statuses = {c.name: c.status for c in run_preset("k1").checks}
    assert NOTE in statuses.values()
    assert FAIL not in statuses.values() and PASS in statuses.values()


def test_failure_is_reported(monkeypatch):
    import quarticfd.report as report

    def broken(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setitem(report._RUNNERS, "lemma1", broken)
    rep = run_preset("lemma1")
    assert not rep.passed and rep.failures and "boom" in rep.to_text()


def test_shintani_closed_form_n1(ctx):
    p, K, L, _ = ctx("shintani1")
    verts = shintani_vertices(1)
    f = facet_polytope(*p.seed, L, K)
    assert set(verts.values()) == set(f.vertices)
    assert set(verts.values()) <= set(p.points.values())


def test_combinatorial_equality(ctx):
    p1, K1, L1, _ = ctx("f15_45")
    p2, K2, L2, _ = ctx("klein9")
    deca = facet_polytope(*p1.seed, L1, K1)
    prism = facet_polytope(*p2.seed, L2, K2)
    assert combinatorially_equal(deca, deca)
    assert not combinatorially_equal(deca, prism)


def test_unit_word(ctx):
    p, K, _, _ = ctx("k2")
    for pairing in K2_PAIRINGS:
        u = unit_from_word(pairing.unit, p.points, K)
        for a, b in pairing.vertex_map:
            assert K.mul(u, p.points[a]) == p.points[b]


def test_remark_identity():
    assert remark_identity(BiquadraticField(5, 5)) == ZERO
    assert remark_identity(BiquadraticField(4, 1)) != ZERO


def test_lemma_classes():
    classes = lemma_classes()
    assert sorted(classes) == list(range(1, 16, 2))
    assert all(kind is not GaloisType.REDUCIBLE for kind in classes.values())
