"""Curvature-level analysis of the structures: the eta-Einstein condition,
the chain of equivalent commutation properties of the Ricci operator, and
sectional curvatures of the distinguished planes.

The eta-Einstein test runs two routes: the direct residual
rho - a g - b eta (x) eta with a = -b = f_xx / 2, and the coordinate
characterization (xi3 = 0, xi2 = +-1, xi1 = -xi2 f_xy / f_xx, degenerate
Ricci discriminant, f_xx nonvanishing). Flat metrics satisfy the residual
identity trivially with a = b = 0; they are reported as not eta-Einstein,
matching the coordinate route, which demands f_xx != 0.

A partially vanishing f_xx is a genuine obstruction for the coordinate
route (its defining quotient f_xy / f_xx stops making sense), so that case
raises DegenerateInputError with a witness instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import named_classes
from .errors import DegenerateInputError
from .expressions import Expr, ONE, ZERO, diff, evaluate_with_scale
from .sampling import (
    SamplingConfig, ZeroVerdict, is_identically_zero, nonvanishing,
    zero_verdict_from_samples,
)
from .structure import ApctStructure
from .walker import (
    FlatnessVerdict, SegreVerdict, curvature_at, flatness, ricci_at,
    segre_type,
)

_PLANE_TOL = 1e-8


def _f_hessian(f: Expr) -> dict[str, Expr]:
    fx, fy = diff(f, "x"), diff(f, "y")
    return {
        "fx": fx, "fy": fy,
        "fxx": diff(fx, "x"), "fxy": diff(fx, "y"), "fyy": diff(fy, "y"),
    }


def ricci_residual_fields(S: ApctStructure) -> tuple[Expr, ...]:
    """Symbolic components of rho - a g - b eta (x) eta with
    a = -b = f_xx / 2, upper triangle in row-major order."""
    f = S.manifold.f
    h = _f_hessian(f)
    a = h["fxx"] / 2
    rho = {
        (0, 0): ZERO, (0, 1): ZERO, (0, 2): h["fxx"] / 2,
        (1, 1): ZERO, (1, 2): h["fxy"] / 2,
        (2, 2): (f * h["fxx"] - h["fyy"]) / 2,
    }
    g_sym = {
        (0, 0): ZERO, (0, 1): ZERO, (0, 2): ONE,
        (1, 1): ONE, (1, 2): ZERO, (2, 2): f,
    }
    eta = S.eta
    return tuple(
        rho[i, j] - a * g_sym[i, j] + a * eta[i] * eta[j]
        for i, j in ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
    )


@dataclass(frozen=True)
class EtaEinsteinVerdict:
    """Outcome of the eta-Einstein test.

    When the structure is eta-Einstein, a and b are the constant
    coefficients of g and eta (x) eta (a = -b = f_xx / 2), segre describes
    the Ricci operator at a representative point, and xi_matches_N records
    whether the Reeb field is plus or minus the null Ricci eigenvector.
    """

    is_eta_einstein: bool
    a: float | None
    b: float | None
    segre: SegreVerdict | None
    xi_matches_N: int | None
    residual_conditions: tuple[ZeroVerdict, ...]
    fxx_nonzero: bool
    coordinate_route: bool
    coordinate_detail: str
    routes_agree: bool

    def __bool__(self) -> bool:
        return self.is_eta_einstein


def eta_einstein_check(S: ApctStructure,
                       cfg: SamplingConfig | None = None) -> EtaEinsteinVerdict:
    cfg = cfg or S.config
    M = S.manifold
    h = _f_hessian(M.f)
    fxx = h["fxx"]

    residuals = tuple(
        is_identically_zero(e, S.domain, cfg)
        for e in ricci_residual_fields(S)
    )
    fxx_zero = is_identically_zero(fxx, S.domain, cfg)
    direct = all(v.is_zero for v in residuals) and not fxx_zero.is_zero

    coordinate, detail = _coordinate_eta_einstein(S, cfg, h, fxx_zero)

    a = b = None
    segre = None
    xi_match = None
    if direct:
        pts = S.sample_points(cfg)
        values, _ = evaluate_with_scale(fxx, pts)
        a = float(values.mean()) / 2.0
        b = -a
        point = tuple(float(c) for c in pts[0])
        segre = segre_type(M, point, cfg)
        xi_match = _xi_versus_null_eigenvector(S, point, cfg.tol)

    return EtaEinsteinVerdict(
        direct, a, b, segre, xi_match, residuals,
        not fxx_zero.is_zero, coordinate, detail,
        direct == coordinate,
    )


def _coordinate_eta_einstein(S: ApctStructure, cfg: SamplingConfig,
                             h: dict[str, Expr],
                             fxx_zero: ZeroVerdict) -> tuple[bool, str]:
    """Coordinate characterization: Reeb shape (xi1, +-1, 0) with xi1 the
    matched quotient, degenerate discriminant, f_xx nonvanishing."""
    xi1, xi2, xi3 = S.xi
    if not is_identically_zero(xi3, S.domain, cfg).is_zero:
        return False, "xi3 does not vanish identically"
    sign = None
    for s in (1, -1):
        if is_identically_zero(xi2 - s, S.domain, cfg).is_zero:
            sign = s
            break
    if sign is None:
        return False, "xi2 is not identically +1 or -1"

    if fxx_zero.is_zero:
        return False, "f_xx vanishes identically, so the Ricci operator " \
                      "has no nonzero eigenvalue"
    fxx_nv = nonvanishing(h["fxx"], S.domain, cfg)
    if not fxx_nv.everywhere:
        raise DegenerateInputError(
            "f_xx vanishes at a sampled point but not identically, so the "
            "eigenvector quotient f_xy / f_xx is undefined there and the "
            "coordinate eta-Einstein characterization cannot be evaluated",
            witness=fxx_nv.vanishing_point,
        )

    disc = is_identically_zero(
        h["fxy"] ** 2 - h["fxx"] * h["fyy"], S.domain, cfg
    )
    if not disc.is_zero:
        return False, "the Ricci discriminant f_xy^2 - f_xx f_yy is not zero"
    aligned = is_identically_zero(
        xi1 + sign * h["fxy"] / h["fxx"], S.domain, cfg
    )
    if not aligned.is_zero:
        return False, "xi1 does not match -xi2 f_xy / f_xx"
    return True, "coordinate conditions hold"


def _xi_versus_null_eigenvector(S: ApctStructure, point,
                                tol: float) -> int | None:
    """Compare the Reeb field with the null Ricci eigenvector at a point;
    returns the matching sign or None."""
    verdict = segre_type(S.manifold, point, SamplingConfig(tol=tol))
    if verdict.n_vector is None:
        return None
    frame = S.frame(point, order=0)
    n = np.asarray(verdict.n_vector, dtype=float)
    xi = frame.xi_vec
    scale = 1.0 + float(np.abs(n).max()) + float(np.abs(xi).max())
    for sign in (1, -1):
        if float(np.abs(xi - sign * n).max()) <= tol * scale:
            return sign
    return None


# --- the equivalence chain ---------------------------------------------------

_EQUIVALENCE_NAMES = (
    "ricci_operator_commutes_with_phi",
    "flat_or_eta_einstein",
    "curvature_commutes_with_phi",
    "ricci_anti_invariant_under_phi",
    "curvature_annihilates_reeb",
)


@dataclass(frozen=True)
class EquivalenceReport:
    """Five mutually equivalent curvature statements, decided separately.

    flags carries one boolean per statement; all_agree asserts the chain.
    mixed marks the honest in-between case for the second flag: every
    sampled point is flat or eta-Einstein pointwise, but neither holds on
    the whole sampled domain; the flag counts that as satisfied.
    """

    flags: dict[str, bool]
    verdicts: dict[str, ZeroVerdict]
    flat: FlatnessVerdict
    eta_einstein: EtaEinsteinVerdict
    mixed: bool
    all_agree: bool


def curvature_equivalences(S: ApctStructure,
                           cfg: SamplingConfig | None = None
                           ) -> EquivalenceReport:
    cfg = cfg or S.config
    M = S.manifold
    pts = S.sample_points(cfg)
    n = pts.shape[0]

    commute = np.zeros(n)
    curv_commute = np.zeros(n)
    anti = np.zeros(n)
    annihilate = np.zeros(n)
    scales = np.zeros(n)
    flat_pt = np.zeros(n, dtype=bool)
    eta_pt = np.zeros(n, dtype=bool)

    for k in range(n):
        p = tuple(float(c) for c in pts[k])
        frame = S.frame(p, order=0)
        R = curvature_at(M, p).components
        rho, q, fxx = ricci_at(M, p)
        rho, q = rho.components, q.components
        phi, xi, g, eta = frame.phi_mat, frame.xi_vec, frame.g, frame.eta_vec

        scale = 1.0 + frame.scale + max(
            float(np.abs(R).max()), float(np.abs(rho).max())
        )
        scales[k] = scale - 1.0

        commute[k] = float(np.abs(q @ phi - phi @ q).max())
        t1 = np.einsum("mk,ijml->ijkl", phi, R)
        t2 = np.einsum("ijkm,lm->ijkl", R, phi)
        curv_commute[k] = float(np.abs(t1 - t2).max())
        anti[k] = float(
            np.abs(np.einsum("ai,bj,ab->ij", phi, phi, rho) + rho).max()
        )
        annihilate[k] = float(np.abs(np.einsum("ijkl,k->ijl", R, xi)).max())

        allowed = cfg.tol * scale
        flat_pt[k] = float(np.abs(R).max()) <= allowed
        resid = rho - 0.5 * fxx * (g - np.outer(eta, eta))
        eta_pt[k] = (
            float(np.abs(resid).max()) <= allowed and abs(fxx) > allowed
        )

    verdicts = {
        "ricci_operator_commutes_with_phi":
            zero_verdict_from_samples(commute, scales, pts, cfg.tol),
        "curvature_commutes_with_phi":
            zero_verdict_from_samples(curv_commute, scales, pts, cfg.tol),
        "ricci_anti_invariant_under_phi":
            zero_verdict_from_samples(anti, scales, pts, cfg.tol),
        "curvature_annihilates_reeb":
            zero_verdict_from_samples(annihilate, scales, pts, cfg.tol),
    }

    flat = flatness(M, cfg)
    eta_verdict = eta_einstein_check(S, cfg)
    mixed = bool(
        np.all(flat_pt | eta_pt)
        and not flat.flat and not eta_verdict.is_eta_einstein
    )
    flags = {
        "ricci_operator_commutes_with_phi":
            verdicts["ricci_operator_commutes_with_phi"].is_zero,
        "flat_or_eta_einstein":
            flat.flat or eta_verdict.is_eta_einstein or mixed,
        "curvature_commutes_with_phi":
            verdicts["curvature_commutes_with_phi"].is_zero,
        "ricci_anti_invariant_under_phi":
            verdicts["ricci_anti_invariant_under_phi"].is_zero,
        "curvature_annihilates_reeb":
            verdicts["curvature_annihilates_reeb"].is_zero,
    }
    values = set(flags.values())
    return EquivalenceReport(
        flags, verdicts, flat, eta_verdict, mixed, len(values) == 1
    )


# --- sectional curvatures ----------------------------------------------------

@dataclass(frozen=True)
class SectionalReport:
    """Sectional curvatures of the Reeb plane span(X, xi) and the phi-plane
    span(X, phi X) at a point, for X projected onto the kernel of eta.

    A plane whose induced metric is degenerate (relative to _PLANE_TOL) has
    no sectional curvature; its value is None and the flag is set.
    """

    point: tuple[float, float, float]
    K_xi: float | None
    K_phi: float | None
    scal: float
    xi_plane_degenerate: bool
    phi_plane_degenerate: bool


def sectional_curvatures(S: ApctStructure, X, point) -> SectionalReport:
    frame = S.frame(point, order=0)
    M = S.manifold
    R = curvature_at(M, point).components
    g, xi, eta = frame.g, frame.xi_vec, frame.eta_vec
    scal = ricci_at(M, point)[2]

    X = np.asarray(X, dtype=float)
    Xh = X - (eta @ X) * xi

    def pair(u, v):
        # R(u, v, v, u) with all indices fed through the curvature layout
        return float(
            np.einsum("i,j,k,ijkl,lm,m->", u, v, v, R, g, u)
        )

    def plane(u, v):
        guu = float(u @ g @ u)
        gvv = float(v @ g @ v)
        guv = float(u @ g @ v)
        den = guu * gvv - guv * guv
        degenerate = abs(den) <= _PLANE_TOL * (abs(guu * gvv) + guv * guv + 1e-300)
        if degenerate or den == 0.0:
            return None, True
        return pair(u, v) / den, False

    K_xi, xi_deg = plane(Xh, xi)
    phi_X = frame.phi_mat @ Xh
    K_phi, phi_deg = plane(Xh, phi_X)
    return SectionalReport(frame.point, K_xi, K_phi, scal, xi_deg, phi_deg)


# --- the eta-Einstein curvature profile --------------------------------------

@dataclass(frozen=True)
class EtaEinsteinProfile:
    """Aggregate curvature behavior of an eta-Einstein structure: constant
    nonzero scalar curvature C, Ricci coefficients a = -b = C / 2, zero
    Reeb-plane sectional curvature, constant phi-plane sectional curvature
    -C / 2, and membership in exactly one of the two cosymplectic-type
    classes, decided by the closed discriminant
    2 f_xyz + f_x f_xy - f_xx f_y.

    applicable is False for structures that are not eta-Einstein; all
    other fields are then None.
    """

    applicable: bool
    verdict: EtaEinsteinVerdict
    scal_constant: bool | None = None
    scal_value: float | None = None
    a: float | None = None
    b: float | None = None
    k_xi_max: float | None = None
    k_phi_value: float | None = None
    k_phi_variance: float | None = None
    paracosymplectic: bool | None = None
    discriminant: ZeroVerdict | None = None
    matches_named_classes: bool | None = None


def eta_einstein_report(S: ApctStructure,
                        cfg: SamplingConfig | None = None,
                        directions: int = 50) -> EtaEinsteinProfile:
    cfg = cfg or S.config
    verdict = eta_einstein_check(S, cfg)
    if not verdict.is_eta_einstein:
        return EtaEinsteinProfile(False, verdict)

    f = S.manifold.f
    fxx = diff(diff(f, "x"), "x")
    scal_constant = all(
        is_identically_zero(diff(fxx, axis), S.domain, cfg).is_zero
        for axis in ("x", "y", "z")
    )
    pts = S.sample_points(cfg)
    values, _ = evaluate_with_scale(fxx, pts)
    C = float(values.mean())

    rng = np.random.default_rng(cfg.seed + 1)
    k_xi_max = 0.0
    k_phi: list[float] = []
    probe_points = pts[: min(5, pts.shape[0])]
    for p in probe_points:
        point = tuple(float(c) for c in p)
        for _ in range(directions):
            X = rng.uniform(-1.0, 1.0, size=3)
            report = sectional_curvatures(S, X, point)
            if report.K_xi is not None:
                k_xi_max = max(k_xi_max, abs(report.K_xi))
            if report.K_phi is not None:
                k_phi.append(report.K_phi)

    k_phi_arr = np.asarray(k_phi)
    k_phi_value = float(k_phi_arr.mean()) if k_phi else None
    k_phi_variance = float(k_phi_arr.var()) if k_phi else None

    fx, fy = diff(f, "x"), diff(f, "y")
    fxy = diff(fx, "y")
    disc_field = 2 * diff(fxy, "z") + fx * fxy - fxx * fy
    disc = is_identically_zero(disc_field, S.domain, cfg)

    nv = named_classes(S, cfg)
    matches = (
        nv.named["paracosymplectic"].value == disc.is_zero
        and nv.named["almost_paracosymplectic"].value == (not disc.is_zero)
    )

    return EtaEinsteinProfile(
        True, verdict,
        scal_constant=scal_constant,
        scal_value=C,
        a=C / 2.0,
        b=-C / 2.0,
        k_xi_max=k_xi_max,
        k_phi_value=k_phi_value,
        k_phi_variance=k_phi_variance,
        paracosymplectic=disc.is_zero,
        discriminant=disc,
        matches_named_classes=matches,
    )
