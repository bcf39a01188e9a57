"""Acceptance criteria 1 to 13 (14 is non-blocking), one summary line each."""
import json
from fractions import Fraction

import pytest

from chowkit.bb import bogomolov_algebra, gorenstein_check, hyperbolic, weak_splitting_check
from chowkit.cli import main
from chowkit.cli.suites import SuiteSpec, run_suite
from chowkit.gca import (PresentedAlgebra, Subspace, check_commutative_associative, check_relations,
                         integrate, sample_associativity)
from chowkit.geom import (blowup_identities_check, flop_blowup, flop_inner_identity, jouanolou_dimensions,
                          mukai_flop_check, projective_space)
from chowkit.models import (CurveConfig, hilb3_direct_check, incidence_pushforward_check, injectivity_check,
                            k3_blown_at_point, k3_config, k3_model, normal_bundle_chern_check,
                            p3_blown_along_curve, point_class_not_in_dh4_check, product_dimension_check,
                            small_diagonal_relation_check, surface_cube, surface_times_hilbert_square,
                            transcendental_separation_check)
from chowkit.models.checks import PASS, context

from conftest import record

RHOS = (1, 2, 3)


def entry(rep, id):
    return next(e for e in rep.entries if e.id == id)


def suite_ok(name, **kw):
    rep = run_suite(SuiteSpec(name, **kw))
    return rep.ok, rep.summary


# ---------------------------------------------------------------------------
# 1. kernel soundness

def small_algebras():
    out = [("P3", projective_space(3, "l"))]
    for rho in RHOS:
        cfg = k3_config(rho)
        ctx = context(cfg)
        blown = k3_blown_at_point(cfg)
        out += [(f"CH(S) rho={rho}", ctx.surface.chow), (f"H(S) rho={rho}", ctx.surface.coh),
                (f"CH(S^2) rho={rho}", ctx.square.chow), (f"CH(S{{2}}) rho={rho}", ctx.curly.chow),
                (f"CH(S[2]) rho={rho}", ctx.hilb.chow), (f"CH(S^) rho={rho}", blown.chow),
                (f"H(S^) rho={rho}", blown.coh),
                (f"CH(S x S[2]) rho={rho}", surface_times_hilbert_square(cfg, ctx.hilb).chow),
                (f"CH(S x S{{2}}) rho={rho}", ctx.inc.SY),
                (f"CH(S x S^2) rho={rho}", surface_cube(cfg).parts["cube"].chow)]
    M = p3_blown_along_curve(CurveConfig(2, 5))
    out += [("CH(P3^)", M.chow), ("H(P3^)", M.coh)]
    out += [(f"A(V) rank={2 * n} r={r}", bogomolov_algebra(hyperbolic(n), r)) for n, r in ((1, 1), (2, 2), (1, 3))]
    out += [(f"flop r={r}", flop_blowup(r, 1)) for r in (1, 2, 3, 4)]
    return out


def test_criterion_01_small_algebras():
    bad, relations_checked = [], 0
    algebras = small_algebras()
    for name, A in algebras:
        if not check_commutative_associative(A).ok:
            bad.append(name)
        if isinstance(A, PresentedAlgebra):
            relations_checked += 1
            if not check_relations(A).ok:
                bad.append(f"{name} relations")
    ok = not bad and relations_checked >= 4
    record(1, ok, f"{len(algebras)} algebras exhaustive, {relations_checked} presentations reduce relations to 0")
    assert ok, bad


@pytest.mark.slow
@pytest.mark.parametrize("rho", RHOS)
def test_criterion_01_cohomology_rings(rho):
    ctx = context(k3_config(rho))
    names = {"H(S^2)": ctx.square.coh, "H(S{2})": ctx.curly.coh, "H(S[2])": ctx.hilb.coh}
    bad = [n for n, A in names.items() if not check_commutative_associative(A).ok]
    ok = record(1, not bad, f"rho={rho}: exhaustive on H(S^2), H(S{{2}}), H(S[2])")
    assert ok, bad


@pytest.mark.parametrize("rho", RHOS)
def test_criterion_01_kunneth_products(rho):
    cfg = k3_config(rho)
    ctx = context(cfg)
    rings = {"H(S x S[2])": surface_times_hilbert_square(cfg, ctx.hilb).coh, "H(S x S{2})": ctx.inc.HSY,
             "H(S x S^2)": surface_cube(cfg).parts["cube"].coh}
    bad = [n for n, A in rings.items() if not sample_associativity(A, 2000, seed=rho).ok]
    # products multiply factorwise, so the exhaustive factor checks above certify them
    ok = record(1, not bad, f"rho={rho}: Kunneth rings sampled (2000 triples each)")
    assert ok, bad


# ---------------------------------------------------------------------------

@pytest.mark.parametrize("rho", RHOS)
def test_criterion_02_product_dimensions(rho):
    rep = product_dimension_check(k3_config(rho))
    dims = {e.id: e.data["dch_product"] for e in rep.entries}
    ok = record(2, rep.ok and len(rep.entries) == 2, f"rho={rho}: {dims}")
    assert ok


def test_criterion_03_blowup_machinery():
    results = {}
    for rho in RHOS:
        Y = context(k3_config(rho)).curly
        results[f"S{{2}} rho={rho}"] = [blowup_identities_check(Y.chow), blowup_identities_check(Y.coh),
                                        jouanolou_dimensions(Y.coh)]
    M = p3_blown_along_curve(CurveConfig(2, 5))
    results["P3 along (2,5)"] = [blowup_identities_check(M.chow), blowup_identities_check(M.coh),
                                 jouanolou_dimensions(M.coh)]
    bad = [k for k, v in results.items() if not all(o.ok for o in v)]
    ok = record(3, not bad, f"identities and Jouanolou on {len(results)} blow-ups")
    assert ok, bad


def test_criterion_04_counterexamples():
    ok13, _ = suite_ok("example-1-3b")
    ok17, _ = suite_ok("example-1-7a", curve=CurveConfig(2, 5))
    # independent witness check on the curve blow-up
    M = p3_blown_along_curve(CurveConfig(2, 5))
    k, l = M.classes["i_*eta^*KB"], M.classes["i_*eta^*lB"]
    w = 5 * k - 2 * l
    direct = not w.is_zero() and M.cycle.apply(w).is_zero() and \
        Subspace.span([w, M.classes["witness"]]).dim == 1
    pt = k3_blown_at_point(k3_config(1))
    v = pt.classes["[q]"] - pt.classes["eps^*o"]
    direct = direct and not v.is_zero() and pt.cycle.apply(v).is_zero()
    ok = record(4, ok13 and ok17 and direct, "kernel dim 1 with witnesses [q] - eps^*[o] and i_* eta^*(5K_B - 2l_B)")
    assert ok


def test_criterion_05_bogomolov():
    A4, A2 = bogomolov_algebra(hyperbolic(2), 2), bogomolov_algebra(hyperbolic(1), 1)
    direct = A4.dims == (1, 4, 10, 4, 1) and A2.dims == (1, 2, 1) and gorenstein_check(A4).ok \
        and gorenstein_check(A2).ok
    ok_suite, summary = suite_ok("prop-2-2", seed=0)
    ok = record(5, direct and ok_suite, f"dims (1,4,10,4,1), (1,2,1); {summary['pass']} suite checks")
    assert ok


def test_criterion_06_splitting_criteria():
    verdicts = []
    for rho in RHOS:
        cfg = k3_config(rho)
        v = weak_splitting_check(k3_model(cfg), 1)
        verdicts.append(v.criterion_i and v.criterion_ii and v.criterion_iii is True)
        w = weak_splitting_check(context(cfg).hilb, 2)
        verdicts.append(w.criterion_i and w.criterion_ii and w.agree)
    ok_suite, _ = suite_ok("cor-2-3")
    ok = record(6, all(verdicts) and ok_suite, "YES on K3 (r=1) and S[2] (r=2), criteria agree")
    assert ok


def test_criterion_07_flop():
    outs = [mukai_flop_check(r) for r in (1, 2, 3, 4)] + [flop_inner_identity(r) for r in (1, 2, 3, 4)]
    ok = record(7, all(o.ok for o in outs), "E-part vanishes in m and Chern cancellation for r = 1..4")
    assert ok


@pytest.mark.parametrize("rho", RHOS)
def test_criterion_08_injectivity(rho):
    rep = injectivity_check(k3_config(rho))
    ids = {e.id for e in rep.entries}
    ok = rep.ok and {"curly-dch3"} | {f"hilb-dch{p}" for p in range(5)} <= ids
    ok = record(8, ok, f"rho={rho}: injective on DCH^3(S{{2}}) and DCH^p(S[2])")
    assert ok


@pytest.mark.parametrize("rho", RHOS)
def test_criterion_09_normal_bundle(rho):
    rep = normal_bundle_chern_check(k3_config(rho))
    ok = record(9, rep.ok and entry(rep, "c2-in-dch2").status == PASS, f"rho={rho}: c2(N) in DCH^2")
    assert ok


def test_criterion_10_incidence():
    branches, ok = set(), True
    for rho in RHOS:
        cfg = k3_config(rho)
        rep = incidence_pushforward_check(cfg)
        ok = ok and rep.ok
        branches |= set(entry(rep, "point-times-divisor").data["branches"])
        ctx = context(cfg)
        Y, H = ctx.curly, ctx.hilb
        e, eb = Y.classes["[E]"], H.classes["[Ebar]"]
        ok = ok and e ** 3 == -24 * Y.classes["i_*eta^*o"]
        ok = ok and H.classes["i'_*eta^*o"] == Fraction(-1, 96) * eb ** 3
    ok = record(10, ok and branches == {"isotropic", "non-isotropic"},
                f"all identities, branches {sorted(branches)}, constants -1/96 and -24")
    assert ok


def test_criterion_11_small_diagonal():
    ok = True
    for rho in RHOS:
        cfg = k3_config(rho)
        rep = small_diagonal_relation_check(cfg)
        ok = ok and rep.ok
        H = context(cfg).hilb
        S = context(cfg).surface.chow
        io = H.classes["iota(o)"]
        gens = S.basis_elements(1)
        for h in gens + [sum(gens, S.zero(1))]:
            d = integrate(h * h)
            ok = ok and H.maps["iota"].apply(h) ** 4 == 3 * d ** 2 * io * io
    ok = record(11, ok, "relation is zero, membership in DCH^4, iota(h)^4 = 3 d^2 iota(o)^2")
    assert ok


def test_criterion_12_transcendental():
    ok, dims = True, []
    for rho in RHOS:
        cfg = k3_config(rho)
        sep, pt = transcendental_separation_check(cfg), point_class_not_in_dh4_check(cfg)
        rank = entry(sep, "rank").data
        ok = ok and sep.ok and pt.ok and rank["extended_dim"] == rank["dh8_dim"] + 2
        ok = ok and entry(pt, "point-not-in-DH4").status == PASS
        dims.append(f"rho={rho}: {rank['dh8_dim']}+2")
    ok = record(12, ok, ", ".join(dims) + "; iota([o]) not in DH^4")
    assert ok


def test_criterion_13_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = [main(["verify", "all", "--report", "json", "--out", str(p)]) for p in (a, b)]
    same = a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    ok = record(13, same and codes == [0, 0],
                f"byte-identical reports, {data['summary']['pass']} checks pass, exit codes {codes}")
    assert ok


def test_criterion_14_direct_hilbert_cube_is_non_blocking():
    rep = hilb3_direct_check(k3_config(1))
    record(14, "SKIPPED", "non-blocking stretch; " + rep.entries[0].description)
    assert rep.ok
