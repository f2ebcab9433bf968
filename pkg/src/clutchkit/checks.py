"""Registry of numerical identity checks run by the harness.

Each check is a function ``(samples, seed) -> max_defect``. The tolerance
class decides which threshold applies:

* ``strict``  -- 1e-12, fixed (algebraic identities with a few operations)
* ``exact``   -- 0.0, fixed (identities that hold bit for bit by formula)
* ``shallow`` -- configurable, default 1e-9
* ``deep``    -- configurable, default 1e-6 (long chains, chart round trips)
* ``gap``     -- 0.5, fixed; used by the homotopy non-degeneracy check whose
  defect is ``1 - min |interpolant|``
* ``limit``   -- 1e-2, fixed; distance from the radial-limit value for points
  within 1e-3 of a singular locus
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as alg
from . import geometry as geo
from . import maps as M
from . import starbundle as B
from .geometry import S3, S4, S6, S7, S8, S10

SUITES = ("algebra", "actions", "maps", "star-families", "bundles")
FIXED_TOL = {"strict": 1e-12, "exact": 0.0, "gap": 0.5, "limit": 1e-2}


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    anchor: str
    tol_class: str
    fn: Callable

    def tol(self, tol_shallow=1e-9, tol_deep=1e-6):
        if self.tol_class == "shallow":
            return tol_shallow
        if self.tol_class == "deep":
            return tol_deep
        return FIXED_TOL[self.tol_class]


REGISTRY: dict = {}


def register(id, suite, anchor, tol_class="shallow"):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id}")
        REGISTRY[id] = Check(id, suite, anchor, tol_class, fn)
        return fn

    return deco


def _rng(seed):
    return np.random.default_rng(seed)


def _unit_rows(rng, n, width):
    v = rng.standard_normal((n, width))
    return v / np.linalg.norm(v, axis=-1)[:, None]


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

@register("algebra.quaternion.associativity", "algebra", "Hamilton product (pq)r = p(qr)", "strict")
def _quat_assoc(samples, seed):
    rng = _rng(seed)
    p, q, r = (_unit_rows(rng, samples, 4) for _ in range(3))
    return geo.max_distance(alg.qmul(alg.qmul(p, q), r), alg.qmul(p, alg.qmul(q, r)))


@register("algebra.quaternion.norm_multiplicative", "algebra", "|pq| = |p||q|", "strict")
def _quat_norm(samples, seed):
    rng = _rng(seed)
    p, q = rng.standard_normal((2, samples, 4))
    n = alg.qnorm(p) * alg.qnorm(q)
    return float(np.max(np.abs(alg.qnorm(alg.qmul(p, q)) - n) / n))


def _oct_norm(conv):
    def fn(samples, seed):
        rng = _rng(seed)
        X, Y = rng.standard_normal((2, samples, 8))
        n = alg.onorm(X) * alg.onorm(Y)
        return float(np.max(np.abs(alg.onorm(alg.omul(X, Y, conv)) - n) / n))

    return fn


def _oct_alt(conv):
    def fn(samples, seed):
        rng = _rng(seed)
        X, Y = (_unit_rows(rng, samples, 8) for _ in range(2))
        left = geo.max_distance(alg.omul(alg.omul(X, X, conv), Y, conv), alg.omul(X, alg.omul(X, Y, conv), conv))
        right = geo.max_distance(alg.omul(alg.omul(Y, X, conv), X, conv), alg.omul(Y, alg.omul(X, X, conv), conv))
        return max(left, right)

    return fn


for _conv in alg.Convention:
    register(f"algebra.octonion.norm_multiplicative.{_conv.value}", "algebra", "|XY| = |X||Y|",
             "strict")(_oct_norm(_conv))
    register(f"algebra.octonion.alternative.{_conv.value}", "algebra", "(XX)Y = X(XY), (YX)X = Y(XX)",
             "strict")(_oct_alt(_conv))


@register("algebra.octonion.power_associativity", "algebra", "f_{ij}(X)Y=X^iYX^j", "strict")
def _oct_pow(samples, seed):
    rng = _rng(seed)
    X = _unit_rows(rng, samples, 8)
    worst = 0.0
    for n in (2, 3, 5):
        worst = max(worst, geo.max_distance(alg.opow(X, n, fold="left"), alg.opow(X, n, fold="right")))
    return worst


@register("algebra.octonion.xi_identity", "algebra", "Ξ(x,y)=(y,x̄)", "exact")
def _xi_identity(samples, seed):
    rng = _rng(seed)
    X = rng.standard_normal((samples, 8))
    e = alg.oidentity(alg.Convention.XI_TWISTED)
    roundtrip = float(np.max(np.abs(alg.xi_inv(alg.xi(X)) - X)))
    iso = float(np.max(np.abs(alg.onorm(alg.xi(X)) - alg.onorm(X))))
    ident = float(np.max(np.abs(e - alg.xi_inv(alg.oidentity(alg.Convention.STANDARD_CD)))))
    return max(roundtrip, iso, ident)


@register("algebra.octonion.convention_oracle", "algebra", "g(XY)=g(X)g(Y)")
def _convention(samples, seed):
    defects = alg.convention_oracle(samples, seed)
    winner = min(defects, key=defects.get)
    if winner is not alg.DEFAULT_RULE:
        raise RuntimeError(f"oracle selects {winner.value}, default is {alg.DEFAULT_RULE.value}")
    losers = [v for k, v in defects.items() if k is not winner]
    if min(losers) <= 1e-2:
        raise RuntimeError(f"convention oracle not decisive: {defects}")
    return defects[winner]


@register("algebra.sp2.criteria_agree", "algebra", "Sp(2)={(x,y)∈S⁷×S⁷ | ⟨x,y⟩_ℍ=0}", "exact")
def _sp2_agree(samples, seed):
    rng = _rng(seed)
    members = B.random_sp2(samples, rng)
    others = rng.standard_normal((samples, 16))
    others /= np.linalg.norm(others, axis=-1)[:, None] / np.sqrt(2.0)
    disagreements = 0
    for Q, expect in ((members, True), (others, False)):
        parts = geo.SP2.split(Q)
        m = alg.sp2_matrix_defect(*parts) <= 1e-12
        c = alg.sp2_column_defect(*parts) <= 1e-12
        disagreements += int(np.count_nonzero(m != c)) + int(np.count_nonzero(m != expect))
    return float(disagreements)


@register("algebra.octonion.g2_compatibility", "algebra", "g(XY)=g(X)g(Y)")
def _g2(samples, seed):
    return M.g2_compat_defect(samples, seed)


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def _register_action(action):
    register(f"actions.{action.name}.isometry", "actions", action.anchor, "strict")(
        lambda samples, seed: geo.isometry_defect(action, samples, seed))
    register(f"actions.{action.name}.group_law", "actions", action.anchor, "strict")(
        lambda samples, seed: geo.group_law_defect(action, samples, seed))
    register(f"actions.{action.name}.identity", "actions", action.anchor, "strict")(
        lambda samples, seed: geo.identity_law_defect(action, samples, seed))


for _a in geo.ACTIONS.values():
    _register_action(_a)

for _name in ("conj_s7", "b10_domain", "s10_pair"):
    register(f"actions.{_name}.equator", "actions", "any equivariant equator", "strict")(
        (lambda a: lambda samples, seed: geo.equator_invariance_defect(a, samples, seed))(geo.ACTIONS[_name]))


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

for _m in M.MAPS.values():
    register(f"maps.{_m.name}.unit", "maps", _m.anchor)(
        (lambda m: lambda samples, seed: geo.unit_defect(m(geo.sample_sphere_array(m.domain, samples, seed))))(_m))

EQUIVARIANCE_TABLE = (
    ("eta8", "eta8_domain", "conj_s7", "η₈, b̃₁₀ are equivariant by the S³-actions"),
    ("eta_norm", "eta8_domain", "conj_s7", "η₈, b̃₁₀ are equivariant by the S³-actions"),
    ("b10_tilde", "b10_domain", "conj_s7", "η₈, b̃₁₀ are equivariant by the S³-actions"),
    ("b10", "b10_domain", "conj_s7", "η₈, b̃₁₀ are equivariant by the S³-actions"),
    ("ah", "conj_s7", "conj_s3", "ah(g(x,y))=g ah(x,y)g⁻¹"),
    ("b6", "s6_left", "conj_s3", "b(ξ,x)=exp(πxξx̄|x|⁻²)"),
)

for _m, _dom, _cod, _anchor in EQUIVARIANCE_TABLE:
    register(f"maps.{_m}.equivariance", "maps", _anchor)(
        (lambda m, d, c: lambda samples, seed: geo.equivariance_defect(
            M.MAPS[m], geo.ACTIONS[d], geo.ACTIONS[c], samples, seed))(_m, _dom, _cod))


def _near_locus(space, samples, seed, slot, eps):
    """Points at distance ``eps`` from the locus ``{slot = 0}`` and their radial feet."""
    pts = geo.sample_sphere_array(space, samples, seed)
    s = space.slices()[slot]
    foot = pts.copy()
    foot[:, s] = 0.0
    foot /= np.linalg.norm(foot, axis=-1)[:, None]
    d = pts[:, s] / np.linalg.norm(pts[:, s], axis=-1)[:, None]
    near = foot * np.sqrt(1.0 - eps**2)
    near[:, s] = eps * d
    return near, foot


def _radial(name, space, slot):
    def fn(samples, seed):
        m = M.MAPS[name]
        worst = 0.0
        for eps in (1e-3, 1e-4, 1e-5):
            near, foot = _near_locus(space, samples, seed, slot, eps)
            worst = max(worst, geo.max_distance(m(near), m(foot)), geo.unit_defect(m(near)))
        return worst

    return fn


register("maps.eta8.radial_limit", "maps", "η₈(λ,x,y)=(λ+xix̄|x|⁻¹,y)", "limit")(_radial("eta8", S8, 1))
register("maps.eta4.radial_limit", "maps", "η₄(λ,x)=λ+xix̄|x|⁻¹", "limit")(_radial("eta4", S4, 1))
register("maps.b6.radial_limit", "maps", "b(ξ,x)=exp(πxξx̄|x|⁻²)", "limit")(_radial("b6", S6, 1))


@register("maps.b10_tilde.radial_limit", "maps", "b̃₁₀(ξ,x,y)", "limit")
def _b10_radial(samples, seed):
    m = M.MAPS["b10_tilde"]
    pts = geo.sample_sphere_array(S10, samples, seed)
    worst = 0.0
    for eps in (1e-3, 1e-4, 1e-5):
        near = pts.copy()
        near[:, :8] *= eps / np.linalg.norm(near[:, :8], axis=-1)[:, None]
        y = pts[:, 8:] / np.linalg.norm(pts[:, 8:], axis=-1)[:, None]
        near[:, 8:] = np.sqrt(1.0 - eps**2) * y
        foot = np.concatenate([np.zeros((samples, 8)), y], axis=-1)
        worst = max(worst, geo.max_distance(m(near), m(foot)), geo.unit_defect(m(near)))
    return worst


def _homotopy_checks(variant, dom, anchor):
    H = M.HOMOTOPIES[variant]
    space = H.start.domain

    def gap(samples, seed):
        pts = geo.sample_sphere_array(space, samples, seed)
        return 1.0 - H.min_raw_norm(np.linspace(0.0, 1.0, 101), pts)

    def endpoints(samples, seed):
        pts = geo.sample_sphere_array(space, samples, seed)
        return max(geo.max_distance(H(0.0, pts), H.start(pts)), geo.max_distance(H(1.0, pts), H.end(pts)))

    def equivariance(samples, seed):
        worst = 0.0
        for k, t in enumerate(np.linspace(0.0, 1.0, 11)):
            worst = max(worst, geo.equivariance_defect(
                lambda p: H(t, p), geo.ACTIONS[dom], geo.ACTIONS["conj_s7"], samples, seed + k))
        return worst

    register(f"maps.homotopy.{variant}.nondegeneracy", "maps", anchor, "gap")(gap)
    register(f"maps.homotopy.{variant}.endpoints", "maps", anchor, "strict")(endpoints)
    register(f"maps.homotopy.{variant}.equivariance", "maps", anchor)(equivariance)


_homotopy_checks("eta", "eta8_domain", "η and b₁₀ are equivariantly homotopic to η₈ and b̃₁₀")
_homotopy_checks("b", "b10_domain", "η and b₁₀ are equivariantly homotopic to η₈ and b̃₁₀")


@register("maps.linear.orthogonality", "maps", "τ(q)=(x↦qxq̄); u(q)v=vq̄; s_k", "strict")
def _linear(samples, seed):
    rng = _rng(seed)
    worst = 0.0
    for q in _unit_rows(rng, min(samples, 200), 4):
        T, U = M.tau_matrix(q), M.u_matrix(q)
        worst = max(worst, M.orthogonality_defect(T), M.orthogonality_defect(U),
                    M.orthogonality_defect(M.s_k(U, 1)), M.orthogonality_defect(M.s_k(T, 4)))
    return worst


FIJ_PAIRS = ((0, 0), (1, 0), (0, 1), (2, 1), (3, -1))


@register("maps.fij.orthogonality", "maps", "f_{ij}(X)Y=X^iYX^j")
def _fij_orth(samples, seed):
    rng = _rng(seed)
    X = geo.sample_sphere_array(S7, min(samples, 500), int(rng.integers(2**63)))
    worst = 0.0
    for i, j in FIJ_PAIRS:
        for x in X:
            worst = max(worst, M.orthogonality_defect(M.map_fij(i, j, x)))
    return worst


@register("maps.fij.bracketing", "maps", "f_{ij}(X)Y=X^iYX^j")
def _fij_bracket(samples, seed):
    rng = _rng(seed)
    X, Y = (geo.sample_sphere_array(S7, samples, int(rng.integers(2**63))) for _ in range(2))
    return max(geo.max_distance(M.fij_apply(i, j, X, Y, bracket="left"), M.fij_apply(i, j, X, Y, bracket="right"))
               for i, j in FIJ_PAIRS)


def _theta(X):
    return alg.qnormalize(S7.split(X)[0] + 1e-300)


GLUING_INSTANCES = {
    "f_a": lambda: M.gluing_maps("f_a"),
    "g_a": lambda: M.gluing_maps("g_a"),
    "f_alpha": lambda: M.gluing_maps("f_alpha", M.MAPS["ah"], geo.ACTIONS["conj_s3"], S7),
    "g_beta": lambda: M.gluing_maps("g_beta", M.MAPS["ah"], geo.ACTIONS["conj_s3"], S7),
    "F_minus": lambda: M.gluing_maps("F_minus"),
    "oct_f_beta": lambda: M.gluing_maps("oct_f_beta"),
    "oct_g_beta": lambda: M.gluing_maps("oct_g_beta"),
    "f_theta": lambda: M.gluing_maps("f_theta", _theta),
}

for _g, _build in GLUING_INSTANCES.items():
    register(f"maps.gluing.{_g}.round_trip", "maps", "f_a(x,y)=(x,xyx̄), g_a(x,y)=(yxȳ,y), F₋(X,Y)=(XY,X)",
             "strict")((lambda b: lambda samples, seed: b().round_trip_defect(samples, seed))(_build))


def _identity_alpha(pts):
    return np.asarray(pts, dtype=float)


def _right_translation(q0):
    return lambda y: alg.qmul(y, alg.qconj(q0))


@register("maps.conj_identity.translation", "maps", "f_α⁻¹(id×φ)f_α = id×φ")
def _conj_translation(samples, seed):
    q0 = _unit_rows(_rng(seed), 1, 4)[0]
    res = M.conj_identity_check(_identity_alpha, _right_translation(q0), geo.ACTIONS["left_s3"], samples, seed,
                                k_space=S3)
    return res["f_side"]


@register("maps.conj_identity.hat_pair", "maps", "f_α⁻¹(id×β̂⁻¹)f_α(x,y)=(x,β̂⁻¹(y))")
def _conj_hat_pair(samples, seed):
    conj = geo.ACTIONS["conj_s7"]
    ah = M.MAPS["ah"]
    res = M.conj_identity_check(ah, geo.hat_inverse(ah, conj), conj, samples, seed, k_space=S7,
                                beta=ah, k_action=conj)
    return max(res["f_side"], res["g_side"])


@register("maps.hat_r.factorization.identity", "maps", "r̂ = g_β⁻¹(α̂×β̂⁻¹)f_α")
def _hat_r_s3(samples, seed):
    conj = geo.ACTIONS["conj_s3"]
    return M.hat_r_factorization_check(_identity_alpha, _identity_alpha, conj, conj, samples, seed)


@register("maps.hat_r.factorization.gm", "maps", "r̂ = g_β⁻¹(α̂×β̂⁻¹)f_α")
def _hat_r_gm(samples, seed):
    conj = geo.ACTIONS["conj_s7"]
    return M.hat_r_factorization_check(M.MAPS["ah"], M.MAPS["ah"], conj, conj, samples, seed)


@register("maps.hat_r.factorization.trivial_beta", "maps", "r̂ = g_β⁻¹(α̂×β̂⁻¹)f_α")
def _hat_r_trivial(samples, seed):
    conj = geo.ACTIONS["conj_s7"]

    def one(pts):
        return np.broadcast_to(alg.ONE, (len(pts), 4)).copy()

    return M.hat_r_factorization_check(M.MAPS["ah"], one, conj, geo.ACTIONS["conj_s3"], samples, seed)


# ---------------------------------------------------------------------------
# star families
# ---------------------------------------------------------------------------

def _families(samples, seed):
    F = B.gm_family(samples=samples, seed=seed)
    P = B.pullback_family(F, M.MAPS["eta8"], geo.ACTIONS["eta8_domain"], samples, seed + 1, name="E11")
    return {"gm": F, "e11": P}


for _fam in ("gm", "e11"):
    register(f"star.{_fam}.cocycle", "star-families", "φ_ik(x)=φ_ij(x)φ_jk(x)")(
        (lambda f: lambda samples, seed: _families(samples, seed)[f].validated.cocycle_defect)(_fam))
    register(f"star.{_fam}.equivariance", "star-families", "φ_ij(gx)=gφ_ij(x)g⁻¹")(
        (lambda f: lambda samples, seed: _families(samples, seed)[f].validated.equivariance_defect)(_fam))
    register(f"star.{_fam}.semigroup", "star-families", "φ̂_jk φ̂_ij(x)=φ̂_ik(x)")(
        (lambda f: lambda samples, seed: max(
            v for v in B.hat_laws_check(_families(samples, seed)[f], samples=samples, seed=seed + 7).values()
            if v is not None))(_fam))
    register(f"star.{_fam}.hat_equivariance", "star-families", "φ̂_ij(x)=φ_ij(x)x")(
        (lambda f: lambda samples, seed: B.hat_equivariance_defect(_families(samples, seed)[f], samples,
                                                                    seed + 9))(_fam))


@register("star.cover.invariance", "star-families", "{U_i} a G-invariant open cover", "exact")
def _cover_inv(samples, seed):
    fams = _families(min(samples, 1000), seed)
    return float(sum(f.cover.invariance_violations(samples, seed + k) for k, f in enumerate(fams.values())))


@register("star.product_law.s3", "star-families", "(αβ)^ = β̂α̂")
def _product_s3(samples, seed):
    conj = geo.ACTIONS["conj_s3"]
    res = B.hat_laws_check(alpha=_identity_alpha, beta=alg.qconj, action=conj, samples=samples, seed=seed)
    return res["product"]


@register("star.product_law.s7", "star-families", "(αβ)^ = β̂α̂")
def _product_s7(samples, seed):
    ah = M.MAPS["ah"]
    conj = geo.ACTIONS["conj_s7"]
    cover = B.gm_family(validate=False).cover

    def beta(pts):
        return alg.qmul(ah(pts), ah(pts))

    rng = _rng(seed)
    pts = cover.sample_overlap((0, 1), samples, rng)
    lhs = geo.hat(lambda p: alg.qmul(ah(p), beta(p)), conj)(pts)
    rhs = geo.hat(beta, conj)(geo.hat(ah, conj)(pts))
    return geo.max_distance(lhs, rhs)


for _key, _anchor, _cls in (
    ("gluing", "(q,r)·(x,g)=(qx,rgq⁻¹)", "strict"),
    ("base", "π((q,r)·(x,g))=q·π(x,g)", "strict"),
    ("commute", "★- and •-actions commute", "strict"),
):
    register(f"star.gm.total_action.{_key}", "star-families", _anchor, _cls)(
        (lambda k: lambda samples, seed: B.total_action_checks(B.gm_family(validate=False), samples, seed)[k])(_key))

for _key, _anchor in (
    ("equivariance", "π′(pr⁻¹)=rπ′(p)"),
    ("section", "U_i×{1}⊂P are sections for both bundles"),
    ("crossing", "M′=∪_{φ̂_ij} U_i"),
):
    register(f"star.gm.quotient.{_key}", "star-families", _anchor, "strict")(
        (lambda k: lambda samples, seed: B.quotient_checks(B.gm_family(validate=False), samples, seed)[k])(_key))


@register("star.pullback.compatibility", "star-families", "there exists a G-equivariant map f′:N′→M′")
def _pb_compat(samples, seed):
    return B.pullback_compat_check(B.gm_family(validate=False), M.MAPS["eta8"], geo.ACTIONS["eta8_domain"],
                                   samples, seed)


@register("star.pullback.total_space", "star-families", "f*P={(x,y)∈N×P | f(x)=π(y)}, q(x,y)=(qx,qy)")
def _pb_total(samples, seed):
    res = B.pullback_total_checks(B.gm_family(validate=False), M.MAPS["eta8"], geo.ACTIONS["eta8_domain"],
                                  samples, seed)
    return max(res.values())


# ---------------------------------------------------------------------------
# bundles
# ---------------------------------------------------------------------------

@register("bundles.f_eps.involution", "bundles", "(x,y,g)↦(g(x,y),g⁻¹) is an involution", "strict")
def _f_inv(samples, seed):
    return B.f_involution_check(samples, seed)["involution"]


@register("bundles.f_eps.bi_equivariance", "bundles", "F_ε(q(x,y,g)r⁻¹)=r(F_ε(x,y,g))q⁻¹")
def _f_bi(samples, seed):
    return B.f_involution_check(samples, seed)["bi_equivariance"]


@register("bundles.disc_chart.identity", "bundles", "Φ⁻¹ ĥat(νh) Ψ = g_a⁻¹f_a", "deep")
def _disc_chart(samples, seed):
    return B.disc_chart_check(samples, seed)


@register("bundles.diagram.resolve", "bundles", "pr_i is the projection to the i-th column")
def _diagram(samples, seed):
    return B.diagram_resolve(samples, seed)["defect"]


for _which, _anchor in (("E11", "⟨η(x),y⟩_ℍ=0"), ("E13", "⟨b₁₀(x),y⟩_ℍ=0")):
    register(f"bundles.{_which}.closure", "bundles", _anchor)(
        (lambda w: lambda samples, seed: B.e_closure_check(w, samples, seed)["closure"])(_which))
    register(f"bundles.{_which}.projection", "bundles", "q★(λ; x, c; y, d)=(λ; qx, qc; qyq̄, qd)", "exact")(
        (lambda w: lambda samples, seed: B.e_closure_check(w, samples, seed)["projection"])(_which))


@register("bundles.sp2_section.membership", "bundles", "Q̄ᵀQ = id", "strict")
def _sec_member(samples, seed):
    return B.section_membership_defect(samples, seed)


@register("bundles.sp2_section.ratio_constancy", "bundles", "f_{ah}(x,y,g)=(x,y,gxȳ/|xy|)")
def _sec_const(samples, seed):
    return B.section_transition_check(samples, seed)["constancy"]


@register("bundles.sp2_section.transition", "bundles", "f_{ah}(x,y,g)=(x,y,gxȳ/|xy|)")
def _sec_trans(samples, seed):
    return B.section_transition_check(samples, seed)["transition"]


for _i, _j in FIJ_PAIRS:
    register(f"bundles.S_{_i}_{_j}.isometry", "bundles", "S_{ij}=D⁸×S⁷∪D⁸×S⁷")(
        (lambda i, j: lambda samples, seed: B.sij_clutch(i, j).isometry_defect(samples, seed))(_i, _j))
    register(f"bundles.S_{_i}_{_j}.equivariance", "bundles", "g·(X,Y)=(gX,gY)")(
        (lambda i, j: lambda samples, seed: B.sij_clutch(i, j).equivariance_defect(samples, seed))(_i, _j))


def checks_for(suite):
    if suite == "all":
        return list(REGISTRY.values())
    return [c for c in REGISTRY.values() if c.suite == suite]

