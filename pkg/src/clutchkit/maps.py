"""Named maps between spheres, homotopies and gluing maps.

Every evaluator takes a batch array in its domain layout (see
:mod:`clutchkit.geometry`) and returns a batch array in its codomain layout.
Maps with a singular locus are extended by their radial limit there; the
extension values are certified in the test suite by evaluating along
shrinking rays.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import algebra as alg
from . import geometry as geo
from .errors import DegenerateHomotopy
from .geometry import S3, S4, S6, S7, S8, S10


@dataclass(frozen=True)
class NamedMap:
    name: str
    domain: geo.AmbientSpace
    codomain: geo.AmbientSpace
    evaluator: Callable = field(repr=False)
    singular_locus: str = ""
    extension: str = ""
    anchor: str = ""

    def __call__(self, pts):
        return self.evaluator(np.asarray(pts, dtype=float))

    def at(self, p: geo.SpherePoint) -> geo.SpherePoint:
        if p.space != self.domain:
            raise geo.SpaceMismatch(f"{self.name} is defined on {self.domain.name}")
        return geo.SpherePoint(self.codomain, self(p.coords))

    def manifest(self):
        return {
            "name": self.name,
            "domain": self.domain.to_dict(),
            "codomain": self.codomain.to_dict(),
            "singular_locus": self.singular_locus or None,
            "extension": self.extension or None,
            "anchor": self.anchor,
        }


def _safe_div(num, den):
    """``num / den`` with rows where ``den == 0`` set to zero."""
    den = np.asarray(den, dtype=float)
    ok = den > 0.0
    return np.where(ok[..., None], num / np.where(ok, den, 1.0)[..., None], 0.0)


# ---------------------------------------------------------------------------
# quadratic and Hopf-type maps
# ---------------------------------------------------------------------------

def _h(pts):
    x, y = S7.split(pts)
    lam = alg.qnorm(x) ** 2 - alg.qnorm(y) ** 2
    return S4.join([lam[..., None], 2.0 * alg.qmul(x, alg.qconj(y))])


def _a(pts):
    _, x = S4.split(pts)
    return _safe_div(x, alg.qnorm(x))


def _ah(pts):
    """``x conj(y) / |x y|``, defined where ``x`` and ``y`` are nonzero."""
    x, y = S7.split(pts)
    return _safe_div(alg.qmul(x, alg.qconj(y)), alg.qnorm(x) * alg.qnorm(y))


def _eta4(pts):
    lam, x = S4.split(pts)
    xix = alg.qmul(alg.qmul(x, alg.I), alg.qconj(x))
    out = _safe_div(xix, alg.qnorm(x))
    out[..., 0] += lam[..., 0]
    return out


def _eta8(pts):
    lam, x, y = S8.split(pts)
    first = _eta4(S4.join([lam, x]))
    return S7.join([first, y])


def _eta_norm(pts):
    lam, x, y = S8.split(pts)
    first = alg.qmul(alg.qmul(x, alg.I), alg.qconj(x))
    first[..., 0] += lam[..., 0]
    den = np.sqrt(lam[..., 0] ** 2 + alg.qnorm(x) ** 4 + alg.qnorm(y) ** 2)
    return S7.join([first, y]) / den[..., None]


def _b6(pts):
    """``exp(pi x xi conj(x) / |x|^2)``; -1 on ``x = 0``."""
    xi, x = S6.split(pts)
    nx2 = alg.qnorm(x) ** 2
    expo = alg.qmul(alg.qmul(x, xi), alg.qconj(x))
    expo = np.pi * _safe_div(expo, nx2)
    val = alg.qexp(alg.qimag(expo))
    return np.where((nx2 > 0.0)[..., None], val, -alg.ONE)


def _b10_tilde(pts):
    xi, x, y = S10.split(pts)
    r = np.sqrt(alg.qnorm(xi) ** 2 + alg.qnorm(x) ** 2)
    inner = _safe_div(S6.join([xi, x]), r)
    first = _b6(inner) * r[..., None]
    first = np.where((r > 0.0)[..., None], first, 0.0)
    return S7.join([first, y])


def _b10_printed(pts):
    """``exp((x/|x|) pi xi (conj(x)/|x|))`` rescaled to length ``sqrt(1-|y|^2)``.

    Unlike :func:`_b10_tilde` the exponent is not normalized by ``|(xi, x)|``,
    so this map is discontinuous on ``{x = 0}``; there it takes the value of
    ``b10_tilde``.
    """
    xi, x, y = S10.split(pts)
    r = np.sqrt(alg.qnorm(xi) ** 2 + alg.qnorm(x) ** 2)
    nx2 = alg.qnorm(x) ** 2
    expo = np.pi * _safe_div(alg.qmul(alg.qmul(x, xi), alg.qconj(x)), nx2)
    first = alg.qexp(alg.qimag(expo)) * r[..., None]
    first = np.where((nx2 > 0.0)[..., None], first, -alg.ONE * r[..., None])
    return S7.join([first, y])


MAPS = {
    m.name: m
    for m in (
        NamedMap("h", S7, S4, _h, anchor="h(x,y)=(|x|^2-|y|^2,2x\\bar y)"),
        NamedMap("a", S4, S3, _a, "x = 0", "undefined (0 returned); only used on the overlap",
                 "a(\\lambda,x)=x/|x|"),
        NamedMap("ah", S7, S3, _ah, "x = 0 or y = 0", "undefined (0 returned); only used on the overlap",
                 "f_{a h}(x,y,g)=(x,y,gx\\bar y/|xy|)"),
        NamedMap("eta4", S4, S3, _eta4, "x = 0", "lambda (radial limit)",
                 "\\eta_4(\\lambda y)&=(\\lambda+xi\\bar x|x|^{-1})"),
        NamedMap("eta8", S8, S7, _eta8, "x = 0", "(lambda, y) (radial limit)",
                 "\\eta_8(\\lambda,x,y)&=(\\lambda+xi\\bar x|x|^{-1},y)"),
        NamedMap("eta_norm", S8, S7, _eta_norm, "", "",
                 "\\eta(\\lambda,x,y)&=\\frac{\\lambda+xi\\bar x}{\\sqrt{\\lambda^2+|x|^4+|y|^2}}"),
        NamedMap("b6", S6, S3, _b6, "x = 0", "-1 (radial limit)",
                 "b(\\xi, y)&=\\exp(\\pi x\\xi \\bar x|x|^{-2})"),
        NamedMap("b10_tilde", S10, S7, _b10_tilde, "xi = 0 and x = 0", "(0, y); x = 0 alone gives (-|xi|, y)",
                 "\\tilde b_{10}(\\xi,x,y)"),
        NamedMap("b10", S10, S7, _b10_printed, "x = 0", "(-|xi|, y); discontinuous there",
                 "b_{10}(\\xi,x,y)=&\\exp\\left(\\frac{x}{|x|}\\pi\\xi\\frac{\\bar x}{|x|},y\\right)"),
    )
}


def get_map(name) -> NamedMap:
    return MAPS[name]


def map_h(p: geo.SpherePoint) -> geo.SpherePoint:
    return MAPS["h"].at(p)


def map_eta(variant, p: geo.SpherePoint) -> geo.SpherePoint:
    names = {"eta4": "eta4", "eta8": "eta8", "eta_norm": "eta_norm"}
    return MAPS[names[variant]].at(p)


def map_b(variant, p: geo.SpherePoint) -> geo.SpherePoint:
    names = {"b6": "b6", "b10_tilde": "b10_tilde", "b10": "b10"}
    return MAPS[names[variant]].at(p)


def radial_limit(f, base, direction, eps=(1e-1, 1e-2, 1e-3, 1e-4, 1e-5)):
    """Evaluate ``f`` along the ray ``base + eps * direction`` (renormalized).

    Returns ``(values, distances, rate)``: ``distances[k]`` is
    ``|f(p_eps_k) - f(base)|`` and ``rate`` its fitted log-log slope in eps.
    """
    base = np.asarray(base, dtype=float)
    direction = np.asarray(direction, dtype=float)
    eps = np.asarray(eps, dtype=float)
    pts = base[None, :] + eps[:, None] * direction[None, :]
    pts /= np.linalg.norm(pts, axis=-1)[:, None]
    vals = f(pts)
    at_base = f(base[None, :])[0]
    dist = np.linalg.norm(vals - at_base[None, :], axis=-1)
    with np.errstate(divide="ignore"):
        rate = float(np.polyfit(np.log(eps), np.log(np.maximum(dist, 1e-300)), 1)[0])
    return vals, dist, rate


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------

def _unit(q):
    q = np.asarray(q, dtype=float)
    n = float(alg.qnorm(q))
    if abs(n - 1.0) > 1e-12:
        warnings.warn(f"renormalizing non-unit quaternion (|q| = {n:.6g})", stacklevel=3)
        q = q / n
    return q


def tau_matrix(q):
    """Matrix of ``v -> q v conj(q)`` on ``Im H`` (basis i, j, k)."""
    q = _unit(q)
    basis = np.eye(4)[1:]
    images = alg.qconjugate_by(q, basis)
    return images[:, 1:].T


def u_matrix(q):
    """Matrix of ``v -> v conj(q)`` on ``H``."""
    q = _unit(q)
    images = alg.qmul(np.eye(4), alg.qconj(q))
    return images.T


def s_k(A, k):
    """Block ``diag(I_k, A)``: identity on the upper left corner."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    A = np.asarray(A, dtype=float)
    m = A.shape[0]
    out = np.eye(m + k)
    out[k:, k:] = A
    return out


def map_linear(variant, *args):
    if variant == "tau":
        return tau_matrix(*args)
    if variant == "u":
        return u_matrix(*args)
    if variant == "s_k":
        return s_k(*args)
    raise ValueError(f"unknown linear map {variant!r}")


def orthogonality_defect(A):
    A = np.asarray(A, dtype=float)
    eye = np.eye(A.shape[-1])
    return float(np.max(np.abs(np.swapaxes(A, -1, -2) @ A - eye)))


def fij_apply(i, j, X, Y, convention=alg.DEFAULT_CONVENTION, bracket="left"):
    """``X^i Y X^j``; ``bracket`` picks ``(X^i Y) X^j`` or ``X^i (Y X^j)``."""
    Xi = alg.opow(X, i, convention)
    Xj = alg.opow(X, j, convention)
    if bracket == "left":
        return alg.omul(alg.omul(Xi, Y, convention), Xj, convention)
    return alg.omul(Xi, alg.omul(Y, Xj, convention), convention)


def map_fij(i, j, X, convention=alg.DEFAULT_CONVENTION):
    """8x8 matrix of ``Y -> X^i Y X^j`` (columns are images of the basis)."""
    X = np.asarray(X, dtype=float)
    basis = np.eye(8)
    Xs = np.broadcast_to(X, (8, 8))
    return fij_apply(i, j, Xs, basis, convention).T


def g2_element(q):
    """The octonion automorphism ``(x, y) -> (q x, q y conj(q))`` on ``H^2``."""

    def act(Z):
        x, y = S7.split(Z)
        return S7.join([alg.qmul(q, x), alg.qconjugate_by(q, y)])

    return act


def g2_compat_defect(samples, seed, convention=alg.DEFAULT_CONVENTION, rule=alg.DEFAULT_RULE):
    """Max of ``|g(XY) - g(X) g(Y)|`` for ``g`` from the ``S^3`` inside ``G_2``."""
    rng = np.random.default_rng(seed)
    q = alg.qnormalize(rng.standard_normal((samples, 4)))
    X = geo.sample_sphere_array(S7, samples, int(rng.integers(2**63)))
    Y = geo.sample_sphere_array(S7, samples, int(rng.integers(2**63)))
    g = g2_element(q)
    lhs = g(alg.omul(X, Y, convention, rule))
    rhs = alg.omul(g(X), g(Y), convention, rule)
    return geo.max_distance(lhs, rhs)


# ---------------------------------------------------------------------------
# homotopies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Homotopy:
    """Normalized straight-line homotopy between two maps with equal ends."""

    start: NamedMap
    end: NamedMap
    eps_min: float = 1e-6
    construction: str = "NormalizedLinear"

    def raw(self, t, pts):
        t = float(t)
        return (1.0 - t) * self.start(pts) + t * self.end(pts)

    def __call__(self, t, pts):
        if not 0.0 <= float(t) <= 1.0:
            raise ValueError("t must lie in [0, 1]")
        v = self.raw(t, pts)
        n = np.linalg.norm(v, axis=-1)
        if np.any(n < self.eps_min):
            raise DegenerateHomotopy(f"interpolant norm {np.min(n):.3g} at t={t}")
        return v / n[..., None]

    def min_raw_norm(self, ts, pts):
        return float(min(np.min(np.linalg.norm(self.raw(t, pts), axis=-1)) for t in ts))


HOMOTOPIES = {
    "eta": Homotopy(MAPS["eta_norm"], MAPS["eta8"]),
    "b": Homotopy(MAPS["b10"], MAPS["b10_tilde"]),
}


def homotopy_eta(t, p, variant="eta"):
    """Point of the homotopy from ``eta_norm`` (t=0) to ``eta8`` (t=1).

    ``variant="b"`` gives the homotopy from ``b10`` to ``b10_tilde`` on S^10.
    """
    H = HOMOTOPIES[variant]
    if isinstance(p, geo.SpherePoint):
        return geo.SpherePoint(H.end.codomain, H(t, p.coords))
    return H(t, p)


# ---------------------------------------------------------------------------
# gluing maps on products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GluingMap:
    """A self-map of a product with an explicit inverse.

    Both callables take and return a pair ``(x, y)`` of batch arrays.
    """

    name: str
    domain: tuple
    forward: Callable = field(repr=False)
    inverse: Callable = field(repr=False)

    def __call__(self, x, y):
        return self.forward(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def sample(self, samples, seed):
        rng = np.random.default_rng(seed)
        return tuple(geo.sample_sphere_array(s, samples, int(rng.integers(2**63))) for s in self.domain)

    def round_trip_defect(self, samples, seed):
        x, y = self.sample(samples, seed)
        u, v = self.forward(x, y)
        x2, y2 = self.inverse(u, v)
        return max(geo.max_distance(x, x2), geo.max_distance(y, y2))


def _f_a():
    def fwd(x, y):
        return x, alg.qmul3(x, y, alg.qconj(x))

    def inv(x, y):
        return x, alg.qmul3(alg.qconj(x), y, x)

    return GluingMap("f_a", (S3, S3), fwd, inv)


def _g_a():
    def fwd(x, y):
        return alg.qmul3(y, x, alg.qconj(y)), y

    def inv(x, y):
        return alg.qmul3(alg.qconj(y), x, y), y

    return GluingMap("g_a", (S3, S3), fwd, inv)


def _f_alpha(alpha, action: geo.ActionSpec, k_space=S3):
    """``(x, y) -> (x, alpha(x) . y)``."""

    def fwd(x, y):
        return x, action(alpha(x), y)

    def inv(x, y):
        return x, action(action.group.inv(alpha(x)), y)

    return GluingMap("f_alpha", (k_space, action.space), fwd, inv)


def _g_beta(beta, action: geo.ActionSpec, l_space=S3):
    """``(x, y) -> (beta(y) . x, y)``."""

    def fwd(x, y):
        return action(beta(y), x), y

    def inv(x, y):
        return action(action.group.inv(beta(y)), x), y

    return GluingMap("g_beta", (action.space, l_space), fwd, inv)


def _oinv(X, convention):
    return alg.oconj(X, convention) / (alg.onorm(X) ** 2)[..., None]


def _F_minus(convention=alg.DEFAULT_CONVENTION):
    """``(X, Y) -> (X Y, X)`` on octonions."""

    def fwd(X, Y):
        return alg.omul(X, Y, convention), X

    def inv(U, V):
        return V, alg.omul(_oinv(V, convention), U, convention)

    return GluingMap("F_minus", (S7, S7), fwd, inv)


def _oct_f_beta(convention=alg.DEFAULT_CONVENTION):
    def fwd(X, Y):
        return X, alg.omul(X, Y, convention)

    def inv(X, Y):
        return X, alg.omul(_oinv(X, convention), Y, convention)

    return GluingMap("oct_f_beta", (S7, S7), fwd, inv)


def _oct_g_beta(convention=alg.DEFAULT_CONVENTION):
    def fwd(X, Y):
        return alg.omul(X, Y, convention), Y

    def inv(U, Y):
        return alg.omul(U, _oinv(Y, convention), convention), Y

    return GluingMap("oct_g_beta", (S7, S7), fwd, inv)


def _f_theta(theta):
    """``(X, Y) -> (X, Delta(theta(X)) Y)`` with ``Delta`` the S^3 in G_2."""

    def fwd(X, Y):
        return X, g2_element(theta(X))(Y)

    def inv(X, Y):
        return X, g2_element(alg.qconj(theta(X)))(Y)

    return GluingMap("f_theta", (S7, S7), fwd, inv)


def gluing_maps(variant, *args, **kwargs) -> GluingMap:
    builders = {
        "f_a": _f_a,
        "g_a": _g_a,
        "f_alpha": _f_alpha,
        "g_beta": _g_beta,
        "F_minus": _F_minus,
        "oct_f_beta": _oct_f_beta,
        "oct_g_beta": _oct_g_beta,
        "f_theta": _f_theta,
    }
    if variant not in builders:
        raise ValueError(f"unknown gluing map {variant!r}")
    return builders[variant](*args, **kwargs)


# ---------------------------------------------------------------------------
# identities used in the clutching arguments
# ---------------------------------------------------------------------------

def conj_identity_check(alpha, phi, action: geo.ActionSpec, samples, seed, k_space=S3,
                        beta=None, k_action: Optional[geo.ActionSpec] = None):
    """Defects of the two conjugation identities.

    ``f_side``: ``f_alpha^-1 (id x phi) f_alpha (x, y)`` against ``(x, phi(y))``
    where ``f_alpha(x, y) = (x, alpha(x) . y)`` and ``.`` is ``action``.

    ``g_side`` (when ``beta`` and ``k_action`` are given):
    ``g_beta^-1 (hat(alpha) x id) g_beta`` against ``hat(alpha) x id``.
    """
    rng = np.random.default_rng(seed)
    x = geo.sample_points(k_space, samples, rng)
    y = geo.sample_points(action.space, samples, rng)
    f = _f_alpha(alpha, action, k_space)
    u, v = f(x, y)
    u, v = f.inverse(u, phi(v))
    f_side = max(geo.max_distance(u, x), geo.max_distance(v, phi(y)))
    out = {"f_side": f_side, "g_side": None}
    if beta is not None and k_action is not None:
        g = _g_beta(beta, k_action, action.space)
        ahat = geo.hat(alpha, k_action)
        u, v = g(x, y)
        u, v = g.inverse(ahat(u), v)
        out["g_side"] = max(geo.max_distance(u, ahat(x)), geo.max_distance(v, y))
    return out


def hat_r_factorization_check(alpha, beta, k_action: geo.ActionSpec, l_action: geo.ActionSpec,
                              samples, seed):
    """``hat(r) = g_beta^-1 (hat(alpha) x hat(beta)^-1) f_alpha`` with
    ``r(x, y) = alpha(x) beta(y)^-1`` acting diagonally."""
    rng = np.random.default_rng(seed)
    x = geo.sample_points(k_action.space, samples, rng)
    y = geo.sample_points(l_action.space, samples, rng)
    G = k_action.group
    r = G.mul(alpha(x), G.inv(beta(y)))
    lhs = (k_action(r, x), l_action(r, y))

    f = _f_alpha(alpha, l_action, k_action.space)
    g = _g_beta(beta, k_action, l_action.space)
    u, v = f(x, y)
    u, v = geo.hat(alpha, k_action)(u), geo.hat_inverse(beta, l_action)(v)
    rhs = g.inverse(u, v)
    return max(geo.max_distance(lhs[0], rhs[0]), geo.max_distance(lhs[1], rhs[1]))


def catalogue():
    """JSON-ready manifest of every shipped named map."""
    return [m.manifest() for m in MAPS.values()]

