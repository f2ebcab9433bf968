import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clutchkit import algebra as alg
from clutchkit import geometry as geo
from clutchkit.errors import SpaceMismatch
from clutchkit.geometry import S4, S6, S7, S8, S10, SP2, SpherePoint

SPHERES = [geo.S3, S4, S6, S7, S8, S10]


@pytest.mark.parametrize("space", SPHERES, ids=lambda s: s.name)
def test_samples_are_unit_and_deterministic(space):
    a = geo.sample_unit_sphere(space, 1, 42)[0]
    b = geo.sample_unit_sphere(space, 1, 42)[0]
    assert np.array_equal(a.coords, b.coords)
    pts = geo.sample_sphere_array(space, 2000, 7)
    assert geo.unit_defect(pts) <= 1e-15
    for f, part in zip(space.factors, space.split(pts)):
        if f == "ImH":
            assert np.all(part[:, 0] == 0.0)


def test_dimensions():
    assert [s.sphere_dim for s in SPHERES] == [3, 4, 6, 7, 8, 10]
    assert SP2.width == 16 and SP2.radius == np.sqrt(2.0)


def test_sampling_rejects_zero_count():
    with pytest.raises(ValueError):
        geo.sample_sphere_array(S7, 0, 1)


def test_samples_roughly_uniform():
    pts = geo.sample_sphere_array(S7, 20_000, 3)
    assert np.max(np.abs(pts.mean(axis=0))) < 0.03
    assert np.allclose(np.mean(pts**2, axis=0), 1 / 8, atol=0.01)


def test_point_width_checked():
    with pytest.raises(SpaceMismatch):
        SpherePoint(S7, np.zeros(5))


def test_action_identity_example():
    p = geo.sample_unit_sphere(S7, 1, 0)[0]
    out = geo.apply_action(geo.ACTIONS["conj_s7"], alg.ONE, p)
    assert np.array_equal(out.coords, p.coords)


def test_eta8_domain_action_example():
    p = SpherePoint(S8, [0, 1, 0, 0, 0, 0, 0, 1, 0])
    out = geo.apply_action(geo.ACTIONS["eta8_domain"], alg.I, p)
    assert np.allclose(out.coords, [0, 0, 1, 0, 0, 0, 0, -1, 0], atol=1e-15)


def test_gm_action_on_identity_matrix():
    q = alg.qnormalize(np.array([0.3, -0.2, 0.9, 0.1]))
    ident = np.concatenate([alg.ONE, np.zeros(4), np.zeros(4), alg.ONE])
    out = geo.apply_action(geo.ACTIONS["gm_sp2"], q, ident)
    assert np.allclose(out, np.concatenate([alg.ONE, np.zeros(4), np.zeros(4), q]), atol=1e-15)


def test_action_space_mismatch():
    p = geo.sample_unit_sphere(S8, 1, 0)[0]
    with pytest.raises(SpaceMismatch):
        geo.apply_action(geo.ACTIONS["conj_s7"], alg.ONE, p)


def test_apply_action_renormalizes_group_element():
    p = geo.sample_unit_sphere(S7, 1, 0)[0]
    a = geo.apply_action(geo.ACTIONS["conj_s7"], 3.0 * alg.J, p)
    b = geo.apply_action(geo.ACTIONS["conj_s7"], alg.J, p)
    assert np.allclose(a.coords, b.coords, atol=1e-15)


@pytest.mark.parametrize("name", sorted(geo.ACTIONS))
def test_action_laws(name):
    a = geo.ACTIONS[name]
    assert geo.isometry_defect(a, 2000, 1) <= 1e-12
    assert geo.group_law_defect(a, 2000, 2) <= 1e-12
    assert geo.identity_law_defect(a, 200, 3) <= 1e-15


def test_literal_circle_action_is_not_an_action():
    # (qyȳ) collapses y to |y|², which is not norm preserving
    a = geo.get_action("s7_circle", literal=True)
    assert a is geo.LITERAL_ACTIONS["s7_circle_literal"]
    assert geo.isometry_defect(a, 2000, 1) > 0.1
    assert geo.get_action("s7_circle") is geo.ACTIONS["s7_circle"]


def test_scaled_action_negative_control():
    broken = geo.scaled_action(geo.ACTIONS["conj_s7"], 2.0)
    assert geo.isometry_defect(broken, 1000, 1) > 0.1


@pytest.mark.parametrize("name", ["conj_s7", "b10_domain", "s10_pair", "eta8_domain"])
def test_equator_invariant(name):
    assert geo.equator_invariance_defect(geo.ACTIONS[name], 2000, 5) <= 1e-15


def test_equator_not_invariant_under_left_action():
    # left multiplication moves the real part of y
    assert geo.equator_invariance_defect(geo.ACTIONS["left_s7"], 2000, 5) > 0.1


def test_equivariance_defect_identity_map_is_zero():
    for a in geo.ACTIONS.values():
        assert geo.equivariance_defect(lambda p: p, a, a, 500, 0) == 0.0


def test_equivariance_defect_constant_non_fixed_point():
    a = geo.ACTIONS["conj_s7"]
    const = np.array([0, 0, 1, 0, 0, 0, 0, 0.0])
    f = lambda p: np.broadcast_to(const, p.shape)
    assert geo.equivariance_defect(f, a, a, 500, 0) > 0.1
    # at g = i the defect is |(j,0) - (iji⁻¹,0)| = |j - (-j)| = 2
    moved = a(alg.I, const)
    assert np.isclose(np.linalg.norm(moved - const), 2.0)


def test_equivariance_requires_common_group():
    with pytest.raises(SpaceMismatch):
        geo.equivariance_defect(lambda p: p, geo.ACTIONS["conj_s7"], geo.ACTIONS["s7_circle"], 10, 0)


@given(st.integers(0, 2**32))
def test_hat_inverse_undoes_hat(seed):
    a = geo.ACTIONS["conj_s3"]
    pts = geo.sample_sphere_array(geo.S3, 50, seed)
    alpha = lambda x: x
    back = geo.hat_inverse(alpha, a)(geo.hat(alpha, a)(pts))
    assert np.allclose(back, pts, atol=1e-12)


def test_sp2_sampling_uses_members():
    rng = np.random.default_rng(0)
    Q = geo.sample_points(SP2, 500, rng)
    assert np.max(alg.sp2_matrix_defect(*SP2.split(Q))) <= 1e-12
