"""Quaternion and octonion arithmetic.

The kernel works on numpy arrays whose trailing axis holds the components,
so every routine accepts a single element or a whole batch:

* quaternions: shape ``(..., 4)`` ordered ``(w, x, y, z)`` over ``1, i, j, k``
* octonions:   shape ``(..., 8)`` holding the quaternion pair ``(a, b)``

The small dataclasses at the bottom (:class:`Quaternion`, :class:`Octonion`,
:class:`Sp2Matrix`) wrap single elements for interactive use.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConventionMismatch, InversionOfZero, NotPureImaginary

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])


# ---------------------------------------------------------------------------
# quaternions (batched)
# ---------------------------------------------------------------------------

def qmul(p, q):
    """Hamilton product of two (batched) quaternions."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    w1, x1, y1, z1 = np.moveaxis(p, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )


def qmul3(p, q, r):
    return qmul(qmul(p, q), r)


def qconj(q):
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q):
    return np.linalg.norm(np.asarray(q, dtype=float), axis=-1)


def qinv(q):
    """Multiplicative inverse ``conj(q) / |q|^2``.

    Raises InversionOfZero if any element of the batch has zero norm.
    """
    q = np.asarray(q, dtype=float)
    n2 = np.sum(q * q, axis=-1)
    if np.any(n2 == 0.0):
        raise InversionOfZero("cannot invert the zero quaternion")
    return qconj(q) / n2[..., None]


def qnormalize(q):
    q = np.asarray(q, dtype=float)
    return q / qnorm(q)[..., None]


def qconjugate_by(g, v):
    """``g v g^-1`` for unit ``g`` (uses ``conj(g)`` as the inverse)."""
    return qmul(qmul(g, v), qconj(g))


def qreal(q):
    return np.asarray(q, dtype=float)[..., 0]


def qimag(q):
    q = np.array(q, dtype=float)
    q[..., 0] = 0.0
    return q


def qexp(v, require_pure=False, tol=1e-12):
    """Quaternion exponential.

    For a pure imaginary ``v`` this is ``cos|v| + sin|v| v/|v|``, a unit
    quaternion. A real part ``w`` contributes the scalar factor ``e^w``.
    """
    v = np.asarray(v, dtype=float)
    w = v[..., 0]
    if require_pure and np.any(np.abs(w) > tol):
        raise NotPureImaginary(f"real part {np.max(np.abs(w)):.3g} exceeds {tol:g}")
    im = qimag(v)
    theta = qnorm(im)
    # sin(t)/t, finite at 0
    sinc = np.sinc(theta / np.pi)
    out = im * sinc[..., None]
    out[..., 0] = np.cos(theta)
    if not require_pure:
        out = out * np.exp(w)[..., None]
    return out


# ---------------------------------------------------------------------------
# octonions
# ---------------------------------------------------------------------------

class Convention(str, Enum):
    """Product convention carried by an octonion.

    ``StandardCD`` multiplies quaternion pairs with the Cayley-Dickson
    doubling formula directly. ``XiTwisted`` transports that product to
    ``H^2`` through ``Xi(x, y) = (y, conj(x))``, i.e.
    ``X * Y = Xi^-1(Xi(X) Xi(Y))``.
    """

    STANDARD_CD = "StandardCD"
    XI_TWISTED = "XiTwisted"


class DoublingRule(str, Enum):
    """The two mirror Cayley-Dickson doubling formulas.

    ``LEFT``:   (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
    ``MIRROR``: (a,b)(c,d) = (ac - d conj(b), conj(a) d + c b)
    """

    LEFT = "left"
    MIRROR = "mirror"


# Frozen by the automorphism oracle (``convention_oracle``); see tests.
DEFAULT_RULE = DoublingRule.LEFT
DEFAULT_CONVENTION = Convention.XI_TWISTED


def _split(X):
    X = np.asarray(X, dtype=float)
    return X[..., :4], X[..., 4:]


def _join(a, b):
    return np.concatenate([a, b], axis=-1)


def cd_mul(X, Y, rule=DEFAULT_RULE):
    """Cayley-Dickson product of quaternion pairs under ``rule``."""
    a, b = _split(X)
    c, d = _split(Y)
    if DoublingRule(rule) is DoublingRule.LEFT:
        return _join(qmul(a, c) - qmul(qconj(d), b), qmul(d, a) + qmul(b, qconj(c)))
    return _join(qmul(a, c) - qmul(d, qconj(b)), qmul(qconj(a), d) + qmul(c, b))


def xi(X):
    """The isometry ``Xi(x, y) = (y, conj(x))`` of ``H^2``."""
    x, y = _split(X)
    return _join(y, qconj(x))


def xi_inv(X):
    a, b = _split(X)
    return _join(qconj(b), a)


def omul(X, Y, convention=DEFAULT_CONVENTION, rule=DEFAULT_RULE):
    """Batched octonion product in the given convention."""
    if Convention(convention) is Convention.STANDARD_CD:
        return cd_mul(X, Y, rule)
    return xi_inv(cd_mul(xi(X), xi(Y), rule))


def oconj(X, convention=DEFAULT_CONVENTION):
    """Octonion conjugate: the involution with ``X conj(X) = |X|^2 e``."""
    if Convention(convention) is Convention.STANDARD_CD:
        a, b = _split(X)
        return _join(qconj(a), -b)
    return xi_inv(oconj(xi(X), Convention.STANDARD_CD))


def onorm(X):
    return np.linalg.norm(np.asarray(X, dtype=float), axis=-1)


def oidentity(convention=DEFAULT_CONVENTION):
    e = _join(ONE, np.zeros(4))
    if Convention(convention) is Convention.STANDARD_CD:
        return e
    return xi_inv(e)


def opow(X, n, convention=DEFAULT_CONVENTION, rule=DEFAULT_RULE, fold="left"):
    """``X^n`` for integer ``n``; negative powers go through the conjugate.

    ``fold`` picks the bracketing: ``left`` computes ``((X X) X)...`` and
    ``right`` computes ``X (X (X ...))``. Power associativity makes them agree.
    """
    X = np.asarray(X, dtype=float)
    n = int(n)
    if n < 0:
        inv = oconj(X, convention) / (onorm(X) ** 2)[..., None]
        return opow(inv, -n, convention, rule, fold)
    out = np.broadcast_to(oidentity(convention), X.shape).copy()
    for _ in range(n):
        if fold == "left":
            out = omul(out, X, convention, rule)
        else:
            out = omul(X, out, convention, rule)
    return out


def convention_oracle(samples=1000, seed=0):
    """Automorphism defect of the action ``q.(x, y) = (qx, q y conj(q))``
    on the ``XiTwisted`` algebra built from each doubling rule.

    Returns ``{rule: defect}``; the shipped ``DEFAULT_RULE`` is the one with
    (numerically) zero defect.
    """
    rng = np.random.default_rng(seed)
    q = qnormalize(rng.standard_normal((samples, 4)))
    X = rng.standard_normal((samples, 8))
    Y = rng.standard_normal((samples, 8))
    X /= onorm(X)[:, None]
    Y /= onorm(Y)[:, None]

    def act(Z):
        x, y = _split(Z)
        return _join(qmul(q, x), qconjugate_by(q, y))

    out = {}
    for rule in DoublingRule:
        lhs = act(omul(X, Y, Convention.XI_TWISTED, rule))
        rhs = omul(act(X), act(Y), Convention.XI_TWISTED, rule)
        out[rule] = float(np.max(onorm(lhs - rhs)))
    return out


# ---------------------------------------------------------------------------
# hermitian form and Sp(2)
# ---------------------------------------------------------------------------

def hermitian_inner(u, v):
    """``<(u1,u2),(v1,v2)> = conj(u1) v1 + conj(u2) v2``.

    Conjugate-linear in the first slot: ``<u s, v> = conj(s) <u, v>`` and
    ``<q u, q v> = <u, v>`` for unit ``q`` acting on the left.
    """
    u1, u2 = _split(u)
    v1, v2 = _split(v)
    return qmul(qconj(u1), v1) + qmul(qconj(u2), v2)


def sp2_gram(a, b, c, d):
    """Entries of ``conj(Q)^T Q`` for ``Q = [[a, c], [b, d]]``."""
    c1 = _join(a, b)
    c2 = _join(c, d)
    return (
        hermitian_inner(c1, c1),
        hermitian_inner(c1, c2),
        hermitian_inner(c2, c1),
        hermitian_inner(c2, c2),
    )


def sp2_matrix_defect(a, b, c, d):
    g11, g12, g21, g22 = sp2_gram(a, b, c, d)
    return np.max(
        np.stack([qnorm(g11 - ONE), qnorm(g12), qnorm(g21), qnorm(g22 - ONE)]), axis=0
    )


def sp2_column_defect(a, b, c, d):
    """Unit columns and hermitian orthogonality, measured separately."""
    c1 = _join(a, b)
    c2 = _join(c, d)
    return np.max(
        np.stack(
            [
                np.abs(onorm(c1) ** 2 - 1.0),
                np.abs(onorm(c2) ** 2 - 1.0),
                qnorm(hermitian_inner(c1, c2)),
            ]
        ),
        axis=0,
    )


# ---------------------------------------------------------------------------
# single-element wrappers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, arr):
        w, x, y, z = (float(t) for t in np.asarray(arr, dtype=float))
        return cls(w, x, y, z)

    def to_array(self):
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def is_pure(self):
        return abs(self.w) <= 1e-12

    def __add__(self, other):
        return Quaternion.from_array(self.to_array() + other.to_array())

    def __sub__(self, other):
        return Quaternion.from_array(self.to_array() - other.to_array())

    def __neg__(self):
        return Quaternion.from_array(-self.to_array())

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        return Quaternion.from_array(self.to_array() * float(other))

    __rmul__ = __mul__

    def conj(self):
        return Quaternion.from_array(qconj(self.to_array()))

    def norm(self):
        return float(qnorm(self.to_array()))

    def inv(self):
        return quat_conj_inv(self)[2]

    def isclose(self, other, tol=1e-12):
        return float(qnorm(self.to_array() - other.to_array())) <= tol


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qmul(p.to_array(), q.to_array()))


def quat_conj_inv(q: Quaternion):
    """Return ``(conj, norm, inv)`` of ``q``."""
    arr = q.to_array()
    return Quaternion.from_array(qconj(arr)), float(qnorm(arr)), Quaternion.from_array(qinv(arr))


def quat_exp(v: Quaternion, require_pure=False) -> Quaternion:
    return Quaternion.from_array(qexp(v.to_array(), require_pure=require_pure))


@dataclass(frozen=True)
class Octonion:
    a: Quaternion
    b: Quaternion
    convention: Convention = DEFAULT_CONVENTION

    @classmethod
    def from_array(cls, arr, convention=DEFAULT_CONVENTION):
        arr = np.asarray(arr, dtype=float)
        return cls(Quaternion.from_array(arr[:4]), Quaternion.from_array(arr[4:]), Convention(convention))

    @classmethod
    def identity(cls, convention=DEFAULT_CONVENTION):
        return cls.from_array(oidentity(convention), convention)

    def to_array(self):
        return _join(self.a.to_array(), self.b.to_array())

    def norm(self):
        return float(onorm(self.to_array()))

    def conj(self):
        return Octonion.from_array(oconj(self.to_array(), self.convention), self.convention)

    def __mul__(self, other):
        return oct_mul(self, other)

    def isclose(self, other, tol=1e-12):
        return float(onorm(self.to_array() - other.to_array())) <= tol


def oct_mul(X: Octonion, Y: Octonion, convention=None, rule=DEFAULT_RULE) -> Octonion:
    if X.convention is not Y.convention:
        raise ConventionMismatch(f"{X.convention.value} * {Y.convention.value}")
    conv = X.convention if convention is None else Convention(convention)
    if conv is not X.convention:
        raise ConventionMismatch(f"operands are {X.convention.value}, requested {conv.value}")
    return Octonion.from_array(omul(X.to_array(), Y.to_array(), conv, rule), conv)


def oct_pow(X: Octonion, n: int) -> Octonion:
    if n < 0:
        raise ValueError("oct_pow takes a nonnegative exponent")
    return Octonion.from_array(opow(X.to_array(), n, X.convention), X.convention)


@dataclass(frozen=True)
class Sp2Matrix:
    """``Q = [[a, c], [b, d]]``: columns ``(a, b)`` and ``(c, d)``."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    @classmethod
    def identity(cls):
        one, zero = Quaternion(1.0), Quaternion()
        return cls(one, zero, zero, one)

    @classmethod
    def from_columns(cls, col1, col2):
        col1 = np.asarray(col1, dtype=float)
        col2 = np.asarray(col2, dtype=float)
        return cls(*(Quaternion.from_array(t) for t in (col1[:4], col1[4:], col2[:4], col2[4:])))

    def columns(self):
        return (
            _join(self.a.to_array(), self.b.to_array()),
            _join(self.c.to_array(), self.d.to_array()),
        )

    def arrays(self):
        return tuple(t.to_array() for t in (self.a, self.b, self.c, self.d))


def sp2_membership(Q: Sp2Matrix, tol=1e-12) -> float:
    """Max entry norm of ``conj(Q)^T Q - id``.

    The column characterization is evaluated alongside and must give the
    same verdict at ``tol``.
    """
    arrs = Q.arrays()
    defect = float(sp2_matrix_defect(*arrs))
    col = float(sp2_column_defect(*arrs))
    if (defect <= tol) != (col <= tol):
        raise AssertionError(f"Sp(2) criteria disagree: matrix {defect:.3g}, columns {col:.3g}")
    return defect
