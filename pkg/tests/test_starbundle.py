import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clutchkit import algebra as alg
from clutchkit import geometry as geo
from clutchkit import maps as M
from clutchkit import starbundle as B
from clutchkit.errors import EquivarianceViolation, MembershipViolation, OutOfChart
from clutchkit.geometry import S7, SpherePoint

CONJ = geo.ACTIONS["conj_s7"]


def const(q):
    q = np.asarray(q, dtype=float)
    return lambda pts: np.broadcast_to(q, (len(pts), 4)).copy()


def family(phi):
    G = B.gm_family(validate=False)
    return B.StarFamily("test", G.cover, {(0, 1): phi})


@pytest.fixture(scope="module")
def gm():
    return B.gm_family(samples=2000, seed=0)


# families

def test_trivial_family_validates():
    r = B.validate_star_family(family(const(alg.ONE)), 1000, 0)
    assert r.cocycle_defect == 0.0 and r.equivariance_defect <= 1e-15 and r.passed(1e-15)


def test_gm_family_validates():
    F = B.gm_family(samples=10_000, seed=1)
    assert F.validated.passed(1e-9)
    assert F.summary()["status"] == "ok"


def test_non_equivariant_transition_rejected():
    q = alg.qnormalize(np.array([0.2, 0.9, -0.3, 0.1]))
    r = B.validate_star_family(family(const(q)), 2000, 0)
    assert r.equivariance_defect > 0.1 and not r.passed(1e-9)


def test_three_chart_family_reports_unsampled():
    G = B.gm_family(validate=False)
    never = lambda pts: np.zeros(len(pts), dtype=bool)
    cover = B.EquivariantCover(CONJ, G.cover.charts + (never,))
    F = B.StarFamily("three", cover, {(0, 1): M.MAPS["ah"], (0, 2): M.MAPS["ah"], (1, 2): const(alg.ONE)})
    r = B.validate_star_family(F, 200, 0)
    assert r.status == "unsampled" and r.cocycle_defect is None and not r.passed(1.0)


def test_cover_is_invariant(gm):
    assert gm.cover.invariance_violations(5000, 0) == 0


def test_gm_transition_examples(gm):
    x = alg.qnormalize(np.array([[0.4, -0.1, 0.7, 0.2]]))
    p = np.concatenate([x, x], axis=-1) / math.sqrt(2)
    assert np.allclose(gm.phi(0, 1)(p), alg.ONE, atol=1e-15)
    pts = gm.cover.sample_overlap((0, 1), 2000, 0)
    assert len(pts) == 2000
    nx, ny = alg.qnorm(pts[:, :4]), alg.qnorm(pts[:, 4:])
    assert np.all(nx * ny > 0)
    assert np.allclose(alg.qmul(gm.phi(0, 1)(pts), gm.phi(1, 0)(pts)), alg.ONE, atol=1e-12)


def test_gm_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        B.gm_family(epsilon=1.5)


# hat maps

def test_hat_eval_identity_and_inverse(gm):
    pts = gm.cover.sample_overlap((0, 1), 2000, 3)
    assert np.array_equal(B.hat_eval(const(alg.ONE), pts), pts)
    back = B.hat_eval(gm.phi(1, 0), B.hat_eval(gm.phi(0, 1), pts))
    assert geo.max_distance(back, pts) <= 1e-12


def test_gm_hat_formula(gm):
    pts = gm.cover.sample_overlap((0, 1), 100, 4)
    x, y = S7.split(pts)
    q = alg.qmul(x, alg.qconj(y)) / (alg.qnorm(x) * alg.qnorm(y))[:, None]
    expected = S7.join([alg.qconjugate_by(q, x), alg.qconjugate_by(q, y)])
    assert geo.max_distance(B.hat_eval(gm.phi(0, 1), pts), expected) <= 1e-15


def test_hat_laws(gm):
    out = B.hat_laws_check(gm, samples=5000, seed=0)
    assert out["semigroup"] <= 1e-12 and out["inverse"] <= 1e-12
    assert B.hat_equivariance_defect(gm, 5000, 0) <= 1e-9
    s3 = geo.ACTIONS["conj_s3"]
    one = const(alg.ONE)
    assert B.hat_laws_check(alpha=one, beta=one, action=s3, samples=100)["product"] == 0.0
    out = B.hat_laws_check(alpha=lambda x: x, beta=alg.qconj, action=s3, samples=5000, seed=1)
    assert out["product"] <= 1e-12


# total space

def test_total_action_identity(gm):
    pts = gm.cover.sample_overlap((0, 1), 50, 0)
    g = gm.action.group.sample(50, np.random.default_rng(0))
    one = np.broadcast_to(alg.ONE, (50, 4))
    p = B.TotalSpacePoint(0, pts, g)
    out = B.star_total_action(gm, one, one, p)
    assert np.array_equal(out.base, pts) and np.allclose(out.fiber, g, atol=1e-15)


def test_total_action_laws(gm):
    out = B.total_action_checks(gm, 10_000, 0)
    assert out["gluing"] <= 1e-9 and out["base"] <= 1e-12 and out["commute"] <= 1e-12


def test_quotient_laws(gm):
    out = B.quotient_checks(gm, 10_000, 0)
    assert out["equivariance"] <= 1e-12 and out["section"] == 0.0 and out["crossing"] <= 1e-9


def test_quotient_projection_is_hat_translate(gm):
    pts = gm.cover.sample_overlap((0, 1), 100, 5)
    g = gm.phi(0, 1)(pts)
    chart, image = B.quotient_projection(gm, B.TotalSpacePoint(0, pts, g))
    assert chart == 0
    assert geo.max_distance(image, B.hat_eval(gm.phi(0, 1), pts)) == 0.0


# pullbacks

def test_pullback_along_identity_is_same_family(gm):
    P = B.pullback_family(gm, lambda p: p, CONJ, 500, 0)
    pts = gm.cover.sample_overlap((0, 1), 500, 1)
    assert np.array_equal(P.phi(0, 1)(pts), gm.phi(0, 1)(pts))
    assert np.array_equal(P.cover.mask((0, 1), pts), gm.cover.mask((0, 1), pts))


def test_e11_family_validates():
    E = B.e11_family(samples=10_000, seed=2)
    assert E.validated.passed(1e-9)


def test_pullback_rejects_constant_map(gm):
    c = np.array([0.3, 0.4, 0, 0, 0, 0.5, 0, 0.707])
    f = lambda p: np.broadcast_to(c / np.linalg.norm(c), (len(p), 8)).copy()
    with pytest.raises(EquivarianceViolation) as exc:
        B.pullback_family(gm, f, geo.ACTIONS["eta8_domain"], 500, 0)
    assert exc.value.defect > 0.1


def test_pullback_compat(gm):
    eta8, dom = M.MAPS["eta8"], geo.ACTIONS["eta8_domain"]
    assert B.pullback_compat_check(gm, eta8, dom, 10_000, 0) <= 1e-9
    assert B.pullback_compat_check(gm, lambda p: p, CONJ, 1000, 0) <= 1e-12
    assert B.pullback_compat_check(family(const(alg.ONE)), eta8, dom, 1000, 0) == 0.0
    out = B.pullback_total_checks(gm, eta8, dom, 5000, 0)
    assert out["closure"] <= 1e-9 and out["charts"] <= 1e-12


# Sp(2)

def test_section_examples():
    Q = B.sp2_section(0, SpherePoint(S7, [1, 0, 0, 0, 0, 0, 0, 0]))
    assert Q.arrays()[3].tolist() == [1, 0, 0, 0]
    assert alg.sp2_membership(Q) <= 1e-15
    assert not np.any(Q.arrays()[2])
    Q = B.sp2_section(1, SpherePoint(S7, [0, 0, 0, 0, 1, 0, 0, 0]))
    assert alg.sp2_membership(Q) <= 1e-12
    with pytest.raises(OutOfChart):
        B.sp2_section(1, SpherePoint(S7, [1, 0, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(OutOfChart):
        B.sp2_section(2, SpherePoint(S7, [1, 0, 0, 0, 0, 0, 0, 0]))


@given(st.integers(0, 2**32))
def test_section_membership(seed):
    assert B.section_membership_defect(100, seed) <= 1e-12


def test_section_convention_frozen():
    winner, defects = B.resolve_section_convention(10_000, 42)
    assert winner == B.SECTION_CONVENTION == "-conj(phi)"
    assert sorted(v for k, v in defects.items() if k != winner)[0] > 1.0
    out = B.section_transition_check(10_000, 42)
    assert out["constancy"] <= 1e-9 and out["transition"] <= 1e-9


def test_random_sp2_members_and_projection():
    Q = B.random_sp2(5000, np.random.default_rng(0))
    assert np.max(B.sp2_defect_array(Q)) <= 1e-12
    # the GM action preserves Sp(2)
    g = geo.GROUPS["S3"].sample(5000, np.random.default_rng(1))
    assert np.max(B.sp2_defect_array(geo.ACTIONS["gm_sp2"](g, Q))) <= 1e-12


def test_f_involution():
    out = B.f_involution_check(10_000, 0)
    assert out["involution"] <= 1e-12 and out["bi_equivariance"] <= 1e-9


def test_disc_chart_identity():
    assert B.disc_chart_check(10_000, 0) <= 1e-6
    assert B.disc_chart_check(1000, 0, delta=0.5) <= 1e-9  # |x| = 1/2 exactly
    assert B.disc_chart_check(1000, 0, swapped=True) > 0.1


def test_diagram_resolve_stable():
    winners = {(B.diagram_resolve(2000, s)["winner"], B.diagram_resolve(2000, s)["sign"]) for s in range(1, 11)}
    assert winners == {((1, 2), -1)}
    out = B.diagram_resolve(2000, 1)
    assert out["candidates"][(1, 1)] > 0.1 and out["candidates"][(2, 2)] > 0.1


def test_diagram_on_identity_matrix():
    ident = np.concatenate([alg.ONE, np.zeros(4), np.zeros(4), alg.ONE])[None, :]
    h = M.MAPS["h"]
    assert np.allclose(-h(ident[:, :8]), h(ident[:, 8:]))


# constraint manifolds

def test_e11_membership_examples():
    E = B.e_constraint_manifold("E11")
    base = np.array([[1.0, 0, 0, 0, 0, 0, 0, 0, 0]])
    assert E.membership(base, np.array([[0, 0, 0, 0, 1.0, 0, 0, 0]]))[0] == 0.0
    bad = B.ConstraintManifoldPoint("E11", base, np.array([[1.0, 0, 0, 0, 0, 0, 0, 0]]))
    assert E.membership(bad.base, bad.fiber)[0] == 1.0
    with pytest.raises(MembershipViolation):
        E.star_act(alg.ONE[None, :], bad)
    with pytest.raises(ValueError):
        B.e_constraint_manifold("E12")


@pytest.mark.parametrize("which", ["E11", "E13"])
def test_constraint_closure(which):
    out = B.e_closure_check(which, 10_000, 0)
    assert out["member"] <= 1e-9 and out["closure"] <= 1e-9 and out["projection"] == 0.0


# S_ij

def test_sij_examples():
    D = B.sij_clutch(0, 0)
    assert D.summary(100)["trivial"]
    Y = geo.sample_sphere_array(S7, 10, 0)
    e = np.broadcast_to(alg.oidentity(), Y.shape)
    X2, Y2 = B.sij_clutch(1, 0).clutch(e, Y)
    assert np.array_equal(X2, e) and np.allclose(Y2, Y, atol=1e-15)


@pytest.mark.parametrize("ij", [(1, 0), (0, 1), (2, 1), (3, -1)])
def test_sij_isometric_and_equivariant(ij):
    D = B.sij_clutch(*ij)
    assert D.isometry_defect(10_000, 0) <= 1e-9
    assert D.equivariance_defect(10_000, 1) <= 1e-9
