"""Sphere points, seeded sampling, group actions and defect meters.

A point of a structured ambient space such as ``R x H^2`` is stored as one
flat float vector, factor after factor. Pure imaginary factors keep the
quaternion layout with the real slot pinned to zero, so every factor that
holds a quaternion can be fed straight into :mod:`clutchkit.algebra`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import algebra as alg
from .errors import EvaluationFailure, SpaceMismatch

FACTOR_DIM = {"R": 1, "ImH": 3, "H": 4}
FACTOR_WIDTH = {"R": 1, "ImH": 4, "H": 4}


@dataclass(frozen=True)
class AmbientSpace:
    name: str
    factors: tuple
    radius: float = 1.0

    def __post_init__(self):
        for f in self.factors:
            if f not in FACTOR_DIM:
                raise ValueError(f"unknown factor {f!r}")

    @property
    def total_dim(self):
        return sum(FACTOR_DIM[f] for f in self.factors)

    @property
    def sphere_dim(self):
        return self.total_dim - 1

    @property
    def width(self):
        return sum(FACTOR_WIDTH[f] for f in self.factors)

    def slices(self):
        out, start = [], 0
        for f in self.factors:
            w = FACTOR_WIDTH[f]
            out.append(slice(start, start + w))
            start += w
        return out

    def split(self, pts):
        """Per-factor views ``(..., 1)`` / ``(..., 4)`` of a point batch."""
        pts = np.asarray(pts, dtype=float)
        if pts.shape[-1] != self.width:
            raise SpaceMismatch(f"{self.name} expects width {self.width}, got {pts.shape[-1]}")
        return [pts[..., s] for s in self.slices()]

    def join(self, parts):
        return np.concatenate([np.asarray(p, dtype=float) for p in parts], axis=-1)

    def to_dict(self):
        return {"name": self.name, "factors": list(self.factors), "sphere_dim": self.sphere_dim}


S3 = AmbientSpace("S3", ("H",))
S4 = AmbientSpace("S4", ("R", "H"))
S6 = AmbientSpace("S6", ("ImH", "H"))
S7 = AmbientSpace("S7", ("H", "H"))
S8 = AmbientSpace("S8", ("R", "H", "H"))
S10 = AmbientSpace("S10", ("ImH", "H", "H"))
# Sp(2) sits on the sphere of radius sqrt(2) in H^4, columns (a, b), (c, d).
SP2 = AmbientSpace("Sp2", ("H", "H", "H", "H"), radius=math.sqrt(2.0))

SPACES = {s.name: s for s in (S3, S4, S6, S7, S8, S10, SP2)}


@dataclass(frozen=True)
class SpherePoint:
    space: AmbientSpace
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.shape != (self.space.width,):
            raise SpaceMismatch(f"{self.space.name} point needs {self.space.width} coordinates")
        object.__setattr__(self, "coords", c)

    def parts(self):
        return self.space.split(self.coords)

    def norm_defect(self):
        return abs(float(np.linalg.norm(self.coords)) - self.space.radius)

    def imaginary_defect(self):
        vals = [abs(p[0]) for f, p in zip(self.space.factors, self.parts()) if f == "ImH"]
        return max(vals, default=0.0)


def _normalize_rows(pts, radius=1.0):
    return pts * (radius / np.linalg.norm(pts, axis=-1))[..., None]


def sample_sphere_array(space, count, seed):
    """``count`` uniform points of the unit sphere in ``space`` as an array.

    Gaussian components drawn from one sequential stream, then normalized.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, space.total_dim))
    pts = np.zeros((count, space.width))
    src = 0
    for f, s in zip(space.factors, space.slices()):
        d = FACTOR_DIM[f]
        if f == "ImH":
            pts[:, s.start + 1:s.stop] = raw[:, src:src + d]
        else:
            pts[:, s] = raw[:, src:src + d]
        src += d
    return _normalize_rows(pts, space.radius)


def sample_unit_sphere(space, count, seed):
    return [SpherePoint(space, row) for row in sample_sphere_array(space, count, seed)]


def equator_mask(space, pts, tol=1e-12):
    """Membership in the equivariant equator: real part of the last factor is 0."""
    last = space.split(pts)[-1]
    return np.abs(last[..., 0]) <= tol


def sample_equator_array(space, count, seed):
    pts = sample_sphere_array(space, count, seed)
    pts[:, space.slices()[-1].start] = 0.0
    return _normalize_rows(pts, space.radius)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def _s1_sample(rng, n):
    t = rng.uniform(0.0, 2.0 * np.pi, n)
    z = np.zeros((n, 4))
    z[:, 0] = np.cos(t)
    z[:, 1] = np.sin(t)
    return z


def _s3_sample(rng, n):
    return alg.qnormalize(rng.standard_normal((n, 4)))


@dataclass(frozen=True)
class Group:
    """Element layout: one unit quaternion per factor, concatenated."""

    name: str
    factors: tuple

    @property
    def width(self):
        return 4 * len(self.factors)

    def identity(self):
        return np.concatenate([alg.ONE for _ in self.factors])

    def sample(self, count, rng):
        parts = [_s3_sample(rng, count) if f == "S3" else _s1_sample(rng, count) for f in self.factors]
        return np.concatenate(parts, axis=-1)

    def split(self, g):
        g = np.asarray(g, dtype=float)
        return [g[..., 4 * k:4 * k + 4] for k in range(len(self.factors))]

    def mul(self, g, h):
        return np.concatenate([alg.qmul(a, b) for a, b in zip(self.split(g), self.split(h))], axis=-1)

    def inv(self, g):
        return np.concatenate([alg.qconj(a) for a in self.split(g)], axis=-1)

    def normalize(self, g):
        return np.concatenate([alg.qnormalize(a) for a in self.split(g)], axis=-1)


GROUPS = {
    "S3": Group("S3", ("S3",)),
    "S1": Group("S1", ("S1",)),
    "S3xS3": Group("S3xS3", ("S3", "S3")),
    "S3xS1": Group("S3xS1", ("S3", "S1")),
}


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ActionSpec:
    name: str
    group: Group
    space: AmbientSpace
    evaluator: Callable = field(repr=False)
    anchor: str = ""

    def __call__(self, g, pts):
        return self.evaluator(np.asarray(g, dtype=float), np.asarray(pts, dtype=float))


def apply_action(action: ActionSpec, g, p):
    """Act by ``g`` on a :class:`SpherePoint` (or a raw batch array).

    ``g`` is renormalized on entry.
    """
    g = action.group.normalize(np.asarray(g, dtype=float))
    if isinstance(p, SpherePoint):
        if p.space != action.space:
            raise SpaceMismatch(f"action {action.name} lives on {action.space.name}, got {p.space.name}")
        return SpherePoint(p.space, action(g, p.coords))
    pts = np.asarray(p, dtype=float)
    if pts.shape[-1] != action.space.width:
        raise SpaceMismatch(f"action {action.name} expects width {action.space.width}")
    return action(g, pts)


def _conj_s7(g, p):
    x, y = S7.split(p)
    return S7.join([alg.qconjugate_by(g, x), alg.qconjugate_by(g, y)])


def _left_s7(g, p):
    x, y = S7.split(p)
    return S7.join([alg.qmul(g, x), alg.qmul(g, y)])


def _conj_s3(g, p):
    return alg.qconjugate_by(g, p)


def _left_s3(g, p):
    return alg.qmul(g, p)


def _gm_sp2(g, p):
    a, b, c, d = SP2.split(p)
    return SP2.join([alg.qconjugate_by(g, a), alg.qconjugate_by(g, b), alg.qmul(g, c), alg.qmul(g, d)])


def _eta8_domain(g, p):
    lam, x, y = S8.split(p)
    return S8.join([lam, alg.qmul(g, x), alg.qconjugate_by(g, y)])


def _b10_domain(g, p):
    xi, x, y = S10.split(p)
    return S10.join([xi, alg.qmul(g, x), alg.qconjugate_by(g, y)])


def _s6_left(g, p):
    xi, x = S6.split(p)
    return S6.join([xi, alg.qmul(g, x)])


def _s7_circle(g, p):
    q, z = GROUPS["S3xS1"].split(g)
    x, y = S7.split(p)
    return S7.join([alg.qmul(alg.qmul(q, x), alg.qconj(z)), alg.qconjugate_by(q, y)])


def _s7_circle_literal(g, p):
    # as printed: y -> q y conj(y); not norm preserving, kept for comparison
    q, z = GROUPS["S3xS1"].split(g)
    x, y = S7.split(p)
    return S7.join([alg.qmul(alg.qmul(q, x), alg.qconj(z)), alg.qmul(alg.qmul(q, y), alg.qconj(y))])


def _s10_pair(g, p):
    a, q = GROUPS["S3xS3"].split(g)
    xi, x, y = S10.split(p)
    return S10.join([alg.qconjugate_by(a, xi), alg.qmul(alg.qmul(q, x), alg.qconj(a)), alg.qconjugate_by(q, y)])


_S3 = GROUPS["S3"]

ACTIONS = {
    a.name: a
    for a in (
        ActionSpec("conj_s7", _S3, S7, _conj_s7, "q(x,y)=(qx\\bar q,qy\\bar q)"),
        ActionSpec("left_s7", _S3, S7, _left_s7, "(q,1)\\cdot(x,y)=(qx,qy)"),
        ActionSpec("conj_s3", _S3, S3, _conj_s3, "\\phi_{ij}(gx)=g\\phi_{ij}(x)g^{-1}"),
        ActionSpec("left_s3", _S3, S3, _left_s3, "left translation"),
        ActionSpec("gm_sp2", _S3, SP2, _gm_sp2, "\\begin{pmatrix}qa\\bar q&qc\\\\qb\\bar q&qd\\end{pmatrix}"),
        ActionSpec("eta8_domain", _S3, S8, _eta8_domain, "q\\cdot(\\lambda, x,y)&=(\\lambda,qx,qy\\bar q)"),
        ActionSpec("b10_domain", _S3, S10, _b10_domain, "q\\cdot(\\xi,x,y)&=(\\xi,qx,qy\\bar q)"),
        ActionSpec("s6_left", _S3, S6, _s6_left, "b(\\xi, y)=\\exp(\\pi x\\xi \\bar x|x|^{-2})"),
        ActionSpec("s7_circle", GROUPS["S3xS1"], S7, _s7_circle, "(z,q)\\cdot(x,y)=(qx\\bar z,qy\\bar y)"),
        ActionSpec("s10_pair", GROUPS["S3xS3"], S10, _s10_pair,
                   "(p,q)\\cdot(\\xi,x,y)=(p\\xi\\bar p,qx\\bar p,qy\\bar y)"),
    )
}

# Literal reading of the printed S^1 x S^3 action; excluded from the shipped table.
LITERAL_ACTIONS = {
    "s7_circle_literal": ActionSpec("s7_circle_literal", GROUPS["S3xS1"], S7, _s7_circle_literal,
                                    "(z,q)\\cdot(x,y)=(qx\\bar z,qy\\bar y)"),
}


def get_action(name, literal=False):
    if literal and f"{name}_literal" in LITERAL_ACTIONS:
        return LITERAL_ACTIONS[f"{name}_literal"]
    if name in ACTIONS:
        return ACTIONS[name]
    if name in LITERAL_ACTIONS:
        return LITERAL_ACTIONS[name]
    raise KeyError(name)


def sample_points(space, count, rng):
    if space is SP2:
        from .starbundle import random_sp2

        return random_sp2(count, rng)
    seed = int(rng.integers(2**63))
    return sample_sphere_array(space, count, seed)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _evaluate(f, pts, g=None):
    try:
        return np.asarray(f(pts), dtype=float)
    except Exception as exc:
        raise EvaluationFailure(f"map evaluation failed: {exc}", g=g, p=pts) from exc


def equivariance_defect(f, dom: ActionSpec, cod: ActionSpec, samples, seed, points=None):
    """Max over sampled ``(g, p)`` of ``|f(g.p) - g.f(p)|``.

    ``g`` and ``p`` are drawn independently. ``points`` overrides sampling of
    ``p`` (useful on chart overlaps).
    """
    if dom.group.name != cod.group.name:
        raise SpaceMismatch("actions must share a group")
    rng = _rng(seed)
    pts = sample_points(dom.space, samples, rng) if points is None else np.asarray(points, dtype=float)
    g = dom.group.sample(len(pts), rng)
    lhs = _evaluate(f, dom(g, pts), g)
    rhs = cod(g, _evaluate(f, pts, g))
    return float(np.max(np.linalg.norm(lhs - rhs, axis=-1)))


def isometry_defect(action: ActionSpec, samples, seed):
    rng = _rng(seed)
    p = sample_points(action.space, samples, rng)
    p2 = sample_points(action.space, samples, rng)
    g = action.group.sample(samples, rng)
    before = np.linalg.norm(p - p2, axis=-1)
    after = np.linalg.norm(action(g, p) - action(g, p2), axis=-1)
    return float(np.max(np.abs(after - before)))


def group_law_defect(action: ActionSpec, samples, seed):
    """``(g h).p`` versus ``g.(h.p)``."""
    rng = _rng(seed)
    p = sample_points(action.space, samples, rng)
    g = action.group.sample(samples, rng)
    h = action.group.sample(samples, rng)
    lhs = action(action.group.mul(g, h), p)
    rhs = action(g, action(h, p))
    return float(np.max(np.linalg.norm(lhs - rhs, axis=-1)))


def identity_law_defect(action: ActionSpec, samples, seed):
    rng = _rng(seed)
    p = sample_points(action.space, samples, rng)
    e = np.broadcast_to(action.group.identity(), (samples, action.group.width))
    return float(np.max(np.linalg.norm(action(e, p) - p, axis=-1)))


def equator_invariance_defect(action: ActionSpec, samples, seed):
    """Largest real part of the last factor after acting on equator points."""
    rng = _rng(seed)
    pts = sample_equator_array(action.space, samples, int(rng.integers(2**63)))
    g = action.group.sample(samples, rng)
    last = action.space.split(action(g, pts))[-1]
    return float(np.max(np.abs(last[..., 0])))


def max_distance(a, b):
    return float(np.max(np.linalg.norm(np.asarray(a) - np.asarray(b), axis=-1)))


def unit_defect(pts, radius=1.0):
    return float(np.max(np.abs(np.linalg.norm(pts, axis=-1) - radius)))


def scaled_action(action: ActionSpec, factor=2.0) -> ActionSpec:
    """A deliberately non-isometric copy of ``action`` (negative control)."""
    return ActionSpec(f"{action.name}_scaled", action.group, action.space,
                      lambda g, p: factor * action.evaluator(g, p))


def as_points(space: AmbientSpace, rows: Sequence) -> list:
    return [SpherePoint(space, r) for r in np.asarray(rows, dtype=float)]


def hat(alpha, action: ActionSpec):
    """The self-map ``x -> alpha(x) . x`` induced by ``alpha: M -> G``."""

    def evaluator(pts):
        pts = np.asarray(pts, dtype=float)
        return action(alpha(pts), pts)

    return evaluator


def hat_inverse(alpha, action: ActionSpec):
    """``x -> alpha(x)^-1 . x``; inverse of :func:`hat` when ``alpha`` is equivariant."""

    def evaluator(pts):
        pts = np.asarray(pts, dtype=float)
        return action(action.group.inv(alpha(pts)), pts)

    return evaluator
