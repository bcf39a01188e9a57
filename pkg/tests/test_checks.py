import pytest

from chowkit.models import (hilb3_direct_check, incidence_pushforward_check, injectivity_check,
                            normal_bundle_chern_check, point_class_not_in_dh4_check, product_dimension_check,
                            small_diagonal_relation_check, transcendental_separation_check)
from chowkit.models.checks import PASS, SKIPPED

PROCEDURES = [product_dimension_check, injectivity_check, normal_bundle_chern_check,
              incidence_pushforward_check, small_diagonal_relation_check, transcendental_separation_check,
              point_class_not_in_dh4_check]


@pytest.mark.parametrize("proc", PROCEDURES, ids=lambda f: f.__name__)
def test_procedure_passes(proc, cfg):
    rep = proc(cfg)
    assert rep.entries
    assert rep.ok, [(e.id, e.data) for e in rep.failures]
    assert all(e.status == PASS for e in rep.entries)


def test_mutated_chern_class_is_detected(cfg):
    rep = normal_bundle_chern_check(cfg, drop_point_term=True)
    assert not rep.ok
    assert [e.id for e in rep.failures] == ["c2-self-intersection"]


def test_injectivity_entries(cfg):
    ids = {e.id for e in injectivity_check(cfg).entries}
    assert {"curly-dch3"} | {f"hilb-dch{p}" for p in range(5)} <= ids


def test_direct_hilb3_is_skipped(cfg):
    rep = hilb3_direct_check(cfg)
    assert rep.ok and all(e.status == SKIPPED for e in rep.entries)
