"""Structure tensor of the almost paracontact metric structure.

The central object is the covariant derivative of the fundamental 2-form,

    F(X, Y, Z) = g((nabla_X phi) Y, Z),

antisymmetric in its last two slots. On a Walker 3-manifold it collapses to
nine independent coefficient fields built from first derivatives of
(f, xi); that closed coordinate formula is the primary route here, and the
literal connection route (differentiate phi, correct with Christoffel
symbols, lower an index) is computed alongside as a cross-check. Every
value object records the normalized discrepancy between its routes.

Derived objects, each again by two independent routes:

  * the trace forms theta(X) = g^{ij} F(e_i, e_j, X) and
    theta*(X) = g^{ij} F(e_i, phi e_j, X), evaluated on the Reeb field:
    numeric contraction vs. expanded first-derivative formulas;
  * d(eta), the Lie derivative of g along the Reeb field, and nabla(eta):
    coordinate exterior/derivative formulas vs. contractions of F;
  * d(fundamental 2-form): cyclic sum of F vs. the coordinate exterior
    derivative;
  * the Nijenhuis torsion of phi on coordinate fields, and the normality
    defect N - 2 d(eta) (x) xi.

The pointwise split of F into its four admissible components (the only
basic-class components a 3-dimensional structure can carry) uses the
defining shapes of the two trace-form components and the Reeb-square
component, leaving the fourth as remainder; the remainder is then audited
against the shape identities it must satisfy, so a tensor outside the
modeled direct sum is detected rather than silently projected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expressions import Expr, diff, evaluate_with_scale
from .structure import ApctStructure, Frame

_AXES = ("x", "y", "z")


def coefficient_fields(S: ApctStructure) -> tuple[tuple[int, int, int, Expr], ...]:
    """The nine symbolic coefficients of the structure tensor.

    Each entry (a, b, c, field) places F(d_a, d_b, d_c) = field, with the
    antisymmetric partner F(d_a, d_c, d_b) = -field; slots not covered are
    identically zero.
    """
    f = S.manifold.f
    fx, fy, fz = (diff(f, v) for v in _AXES)
    xi1, xi2, xi3 = S.xi

    def d(e: Expr, axis: int) -> Expr:
        return diff(e, _AXES[axis])

    return (
        (0, 0, 1, d(xi3, 0)),
        (0, 0, 2, -d(xi2, 0)),
        (0, 1, 2, d(xi1, 0) + xi3 * fx / 2),
        (1, 0, 1, d(xi3, 1)),
        (1, 0, 2, -d(xi2, 1)),
        (1, 1, 2, d(xi1, 1) + xi3 * fy / 2),
        (2, 0, 1, d(xi3, 2) - xi3 * fx / 2),
        (2, 0, 2, -d(xi2, 2) + xi3 * fy / 2),
        (2, 1, 2, d(xi1, 2) + (xi1 * fx + xi2 * fy + xi3 * fz + xi3 * f * fx) / 2),
    )


def theta_xi_field(S: ApctStructure) -> Expr:
    """theta evaluated on the Reeb field, as a symbolic field.

    Expanded first-derivative formula; the numeric contraction route lives
    in theta_forms.
    """
    f = S.manifold.f
    fx, fy = diff(f, "x"), diff(f, "y")
    xi1, xi2, xi3 = S.xi
    return (
        xi1 * (diff(xi2, "x") - diff(xi3, "y"))
        - xi2 * (f * diff(xi3, "x") + diff(xi1, "x") + xi3 * fx - diff(xi3, "z"))
        + xi3 * (f * diff(xi2, "x") + diff(xi1, "y") + xi3 * fy - diff(xi2, "z"))
    )


def theta_star_xi_field(S: ApctStructure) -> Expr:
    """theta* evaluated on the Reeb field, as a symbolic field."""
    f = S.manifold.f
    fx, fy, fz = (diff(f, v) for v in _AXES)
    xi1, xi2, xi3 = S.xi
    u = f * xi3 + xi1
    return (
        xi1 * (u * diff(xi3, "x") + xi2 * diff(xi2, "x") - xi3 * diff(xi2, "y")
               - xi3 * (diff(xi3, "z") - xi3 * fx / 2))
        + xi2 * (u * diff(xi3, "y") - xi2 * diff(xi1, "x") - xi2 * diff(xi3, "z")
                 + xi3 * (diff(xi1, "y") + xi3 * fy / 2))
        + xi3 * (-u * (diff(xi1, "x") + diff(xi2, "y")) + xi2 * diff(xi2, "z")
                 + xi3 * (diff(xi1, "z") + xi3 * fz / 2))
    )


def _coordinate_route(frame: Frame) -> np.ndarray:
    """Structure tensor from the nine-coefficient coordinate formula."""
    f = frame.f
    fx = f.derivative((1, 0, 0))
    fy = f.derivative((0, 1, 0))
    fz = f.derivative((0, 0, 1))
    fv = f.value
    xi1, xi2, xi3 = frame.xi_vec
    d = frame.xi_d  # d[a, k] = d_a xi_{k+1}
    coeffs = (
        (0, 0, 1, d[0, 2]),
        (0, 0, 2, -d[0, 1]),
        (0, 1, 2, d[0, 0] + 0.5 * xi3 * fx),
        (1, 0, 1, d[1, 2]),
        (1, 0, 2, -d[1, 1]),
        (1, 1, 2, d[1, 0] + 0.5 * xi3 * fy),
        (2, 0, 1, d[2, 2] - 0.5 * xi3 * fx),
        (2, 0, 2, -d[2, 1] + 0.5 * xi3 * fy),
        (2, 1, 2, d[2, 0] + 0.5 * (xi1 * fx + xi2 * fy + xi3 * fz + xi3 * fv * fx)),
    )
    F = np.zeros((3, 3, 3))
    for a, b, c, value in coeffs:
        F[a, b, c] = value
        F[a, c, b] = -value
    return F


def _connection_route(frame: Frame) -> np.ndarray:
    """Structure tensor assembled literally from nabla phi.

    (nabla_{d_a} phi) d_b has components d_a phi^l_b
    + Gamma^l_{am} phi^m_b - phi^l_m Gamma^m_{ab}; lowering the free index
    with g gives F(d_a, d_b, d_c).
    """
    nabla_phi = (
        frame.phi_d
        + np.einsum("lam,mb->alb", frame.gamma, frame.phi_mat)
        - np.einsum("lm,mab->alb", frame.phi_mat, frame.gamma)
    )
    return np.einsum("alb,lc->abc", nabla_phi, frame.g)


@dataclass(frozen=True)
class FTensorValue:
    """Numeric structure tensor at a point.

    components[a, b, c] = F(d_a, d_b, d_c) by the coordinate formula;
    route_discrepancy is the largest difference against the connection
    route, normalized by (1 + frame scale). theta_xi and theta_star_xi are
    the trace forms evaluated on the Reeb field, reeb_square the covector
    F(xi, xi, .); all three recur in the component shapes, so they are
    cached here.
    """

    point: tuple[float, float, float]
    components: np.ndarray
    theta_xi: float
    theta_star_xi: float
    reeb_square: np.ndarray
    route_discrepancy: float

    def __post_init__(self):
        self.components.setflags(write=False)
        self.reeb_square.setflags(write=False)


def f_tensor_at(S: ApctStructure, point) -> FTensorValue:
    frame = S.frame(point, order=1)
    coord = _coordinate_route(frame)
    conn = _connection_route(frame)
    discrepancy = float(np.max(np.abs(coord - conn))) / (1.0 + frame.scale)
    theta = np.einsum("ij,ijc->c", frame.ginv, coord)
    mixed = np.einsum("ij,mj->im", frame.ginv, frame.phi_mat)
    theta_star = np.einsum("im,imc->c", mixed, coord)
    reeb_square = np.einsum("i,j,ijc->c", frame.xi_vec, frame.xi_vec, coord)
    return FTensorValue(
        frame.point, coord,
        float(theta @ frame.xi_vec), float(theta_star @ frame.xi_vec),
        reeb_square, discrepancy,
    )


@dataclass(frozen=True)
class TraceForms:
    """theta and theta* at a point, on coordinate fields and on the Reeb
    field, with the discrepancy between contraction and expanded-formula
    routes."""

    point: tuple[float, float, float]
    theta: np.ndarray
    theta_star: np.ndarray
    theta_xi: float
    theta_star_xi: float
    route_discrepancy: float


def theta_forms(S: ApctStructure, point,
                tensor: FTensorValue | None = None) -> TraceForms:
    frame = S.frame(point, order=1)
    F = (tensor or f_tensor_at(S, point)).components
    theta = np.einsum("ij,ijc->c", frame.ginv, F)
    mixed = np.einsum("ij,mj->im", frame.ginv, frame.phi_mat)
    theta_star = np.einsum("im,imc->c", mixed, F)
    theta_xi = float(theta @ frame.xi_vec)
    theta_star_xi = float(theta_star @ frame.xi_vec)
    p = np.asarray(frame.point)
    closed = float(evaluate_with_scale(theta_xi_field(S), p)[0])
    closed_star = float(evaluate_with_scale(theta_star_xi_field(S), p)[0])
    discrepancy = max(abs(theta_xi - closed), abs(theta_star_xi - closed_star))
    return TraceForms(
        frame.point, theta, theta_star, theta_xi, theta_star_xi,
        discrepancy / (1.0 + frame.scale),
    )


def fundamental_form(frame: Frame) -> np.ndarray:
    """The 2-form g(phi ., .) as an antisymmetric matrix."""
    return frame.phi_mat.T @ frame.g


def eta_wedge_fundamental(frame: Frame) -> np.ndarray:
    """Cyclic wedge of eta with the fundamental 2-form:
    (eta ^ fund)(X, Y, Z) = eta(X) fund(Y, Z) + eta(Y) fund(Z, X)
    + eta(Z) fund(X, Y)."""
    ew = fundamental_form(frame)
    eta = frame.eta_vec
    return (
        np.einsum("i,jk->ijk", eta, ew)
        + np.einsum("j,ki->ijk", eta, ew)
        + np.einsum("k,ij->ijk", eta, ew)
    )


@dataclass(frozen=True)
class ExteriorData:
    """d(eta), d(fundamental), Lie_xi g, and nabla(eta) at a point.

    Primary components come from the coordinate routes (exterior derivative
    of the 1-form eta, exterior derivative of the fundamental 2-form, and
    the covariant formula for nabla eta); route_discrepancy is the largest
    normalized difference against the structure-tensor contractions of the
    same objects.
    """

    point: tuple[float, float, float]
    d_eta: np.ndarray
    d_fundamental: np.ndarray
    lie_g: np.ndarray
    nabla_eta: np.ndarray
    route_discrepancy: float


def exterior_data_at(S: ApctStructure, point,
                     tensor: FTensorValue | None = None) -> ExteriorData:
    frame = S.frame(point, order=1)
    F = (tensor or f_tensor_at(S, point)).components

    # d(eta)(d_i, d_j) = (d_i eta_j - d_j eta_i) / 2 for coordinate fields
    d_eta = 0.5 * (frame.eta_d - frame.eta_d.T)

    # nabla eta as a matrix: (nabla_{d_i} eta)(d_j) = g(nabla_{d_i} xi, d_j)
    nabla_eta = frame.nabla_xi_matrix() @ frame.g
    lie_g = nabla_eta + nabla_eta.T

    # d of the fundamental 2-form w: (dw)_ijk = d_i w_jk - d_j w_ik + d_k w_ij.
    # Only g_33 varies, so d_a w_jk picks up phi^3_j f_a on k = 3.
    dw = np.einsum("alj,lk->ajk", frame.phi_d, frame.g)
    f_d = np.array([frame.f.derivative(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    dw[:, :, 2] += np.einsum("j,a->aj", frame.phi_mat[2], f_d)
    d_fund = (
        dw
        - np.einsum("ajk->jak", dw)
        + np.einsum("ajk->jka", dw)
    )

    # structure-tensor routes for the same three objects
    contracted = np.einsum("imc,mj,c->ij", F, frame.phi_mat, frame.xi_vec)
    d_eta_f = 0.5 * (contracted.T - contracted)
    lie_g_f = -contracted - contracted.T
    nabla_eta_f = -contracted
    d_fund_f = F + np.transpose(F, (1, 2, 0)) + np.transpose(F, (2, 0, 1))

    discrepancy = max(
        float(np.max(np.abs(d_eta - d_eta_f))),
        float(np.max(np.abs(lie_g - lie_g_f))),
        float(np.max(np.abs(nabla_eta - nabla_eta_f))),
        float(np.max(np.abs(d_fund - d_fund_f))),
    ) / (1.0 + frame.scale)
    return ExteriorData(frame.point, d_eta, d_fund, lie_g, nabla_eta, discrepancy)


@dataclass(frozen=True)
class NormalityData:
    """Nijenhuis torsion of phi on coordinate fields and the normality
    defect; the structure is normal exactly when the defect vanishes.

    nijenhuis[i, j, k] is the k-th component of N(d_i, d_j); the defect is
    N(X, Y) - 2 d(eta)(X, Y) xi on the same index layout.
    """

    point: tuple[float, float, float]
    nijenhuis: np.ndarray
    defect: np.ndarray


def normality_data_at(S: ApctStructure, point,
                      exterior: ExteriorData | None = None) -> NormalityData:
    frame = S.frame(point, order=1)
    phi, pd = frame.phi_mat, frame.phi_d
    # [phi d_i, phi d_j]^k, using [U, V]^k = u^m d_m v^k - v^m d_m u^k;
    # the phi^2 [d_i, d_j] term of the torsion drops for coordinate fields.
    bracket = (
        np.einsum("mi,mkj->ijk", phi, pd)
        - np.einsum("mj,mki->ijk", phi, pd)
    )
    # -phi [phi d_i, d_j] - phi [d_i, phi d_j]
    correction = (
        np.einsum("km,jmi->ijk", phi, pd)
        - np.einsum("km,imj->ijk", phi, pd)
    )
    nijenhuis_t = bracket + correction
    d_eta_mat = (exterior or exterior_data_at(S, point)).d_eta
    defect = nijenhuis_t - 2.0 * np.einsum("ij,k->ijk", d_eta_mat, frame.xi_vec)
    return NormalityData(frame.point, nijenhuis_t, defect)


def d_eta(S: ApctStructure, point,
          tensor: FTensorValue | None = None) -> np.ndarray:
    """Exterior derivative of eta at a point, as an antisymmetric matrix."""
    return exterior_data_at(S, point, tensor).d_eta


def d_phi(S: ApctStructure, point,
          tensor: FTensorValue | None = None) -> np.ndarray:
    """Exterior derivative of the fundamental 2-form at a point."""
    return exterior_data_at(S, point, tensor).d_fundamental


def lie_xi_g(S: ApctStructure, point,
             tensor: FTensorValue | None = None) -> np.ndarray:
    """Lie derivative of the metric along the Reeb field at a point."""
    return exterior_data_at(S, point, tensor).lie_g


def nijenhuis(S: ApctStructure, point, X, Y) -> np.ndarray:
    """Nijenhuis torsion of phi on vectors X, Y at a point, as a vector."""
    data = normality_data_at(S, point)
    return np.einsum(
        "i,j,ijk->k",
        np.asarray(X, dtype=float), np.asarray(Y, dtype=float),
        data.nijenhuis,
    )


# --- pointwise component split ---------------------------------------------

def _component_arrays(F, xi, eta, phi, g, ginv):
    """Vectorized split of F into its four admissible components.

    All inputs may carry leading batch axes. Returns (parts, theta_xi,
    theta_star_xi, model_defect) where parts maps the component labels to
    arrays shaped like F, summing to F exactly, and model_defect is the
    largest violation of the remainder-shape identities (not yet
    normalized).
    """
    theta_form = np.einsum("...ij,...ijc->...c", ginv, F)
    mixed = np.einsum("...ij,...mj->...im", ginv, phi)
    theta_star_form = np.einsum("...im,...imc->...c", mixed, F)
    theta_xi = np.einsum("...c,...c->...", theta_form, xi)
    theta_star_xi = np.einsum("...c,...c->...", theta_star_form, xi)

    gphiphi = np.einsum("...ai,...ab,...bj->...ij", phi, g, phi)
    gphi = np.einsum("...ab,...bj->...aj", g, phi)
    f5 = 0.5 * (
        np.einsum("...,...j,...ik->...ijk", theta_xi, eta, gphiphi)
        - np.einsum("...,...k,...ij->...ijk", theta_xi, eta, gphiphi)
    )
    f6 = -0.5 * (
        np.einsum("...,...j,...ik->...ijk", theta_star_xi, eta, gphi)
        - np.einsum("...,...k,...ij->...ijk", theta_star_xi, eta, gphi)
    )
    reeb_square = np.einsum("...i,...j,...ijc->...c", xi, xi, F)
    f12 = (
        np.einsum("...i,...j,...k->...ijk", eta, eta, reeb_square)
        - np.einsum("...i,...k,...j->...ijk", eta, eta, reeb_square)
    )
    f10 = F - f5 - f6 - f12

    # Remainder audit: the fourth component is characterized by
    # F(X, Y, Z) = -eta(Y) T(X, Z) + eta(Z) T(X, Y) with T = F(., ., xi)
    # symmetric and invariant under (X, Y) -> (phi X, phi Y).
    t = np.einsum("...ijc,...c->...ij", f10, xi)
    recon = (
        -np.einsum("...j,...ik->...ijk", eta, t)
        + np.einsum("...k,...ij->...ijk", eta, t)
    )
    axes = tuple(range(-3, 0))
    d_recon = np.abs(f10 - recon).max(axis=axes)
    d_sym = np.abs(t - np.swapaxes(t, -1, -2)).max(axis=(-1, -2))
    t_phiphi = np.einsum("...ai,...bj,...ab->...ij", phi, phi, t)
    d_inv = np.abs(t - t_phiphi).max(axis=(-1, -2))
    model_defect = np.maximum(d_recon, np.maximum(d_sym, d_inv))
    parts = {"G5": f5, "G6": f6, "G10": f10, "G12": f12}
    return parts, theta_xi, theta_star_xi, model_defect


@dataclass(frozen=True)
class ProjectionBundle:
    """Split of the structure tensor at one point into the component shapes
    a 3-dimensional structure can carry.

    F5 + F6 + F10 + F12 recovers the input tensor up to the stored residual
    (zero up to rounding, by construction of F10 as the remainder). The
    split is meaningful only when within_model holds, i.e. the remainder
    part satisfies its shape identities up to model_defect <= tol. A
    failure there means the tensor falls outside the modeled direct sum.
    """

    point: tuple[float, float, float]
    F5: np.ndarray
    F6: np.ndarray
    F10: np.ndarray
    F12: np.ndarray
    residual: np.ndarray
    theta_xi: float
    theta_star_xi: float
    model_defect: float
    within_model: bool

    @property
    def parts(self) -> dict[str, np.ndarray]:
        return {"G5": self.F5, "G6": self.F6, "G10": self.F10,
                "G12": self.F12}


def project_components(S: ApctStructure, point,
                       tensor: FTensorValue | None = None,
                       tol: float = 1e-9) -> ProjectionBundle:
    frame = S.frame(point, order=1)
    F = (tensor or f_tensor_at(S, point)).components
    parts, th, ths, defect = _component_arrays(
        F, frame.xi_vec, frame.eta_vec, frame.phi_mat, frame.g, frame.ginv
    )
    residual = F - parts["G5"] - parts["G6"] - parts["G10"] - parts["G12"]
    normalized = float(defect) / (1.0 + frame.scale + float(np.abs(F).max()))
    return ProjectionBundle(
        frame.point, parts["G5"], parts["G6"], parts["G10"], parts["G12"],
        residual, float(th), float(ths), normalized, normalized <= tol,
    )


# --- vectorized evaluation over many points ---------------------------------

@dataclass(frozen=True)
class FrameBatch:
    """Numeric frame data over an (n, 3) array of points."""

    points: np.ndarray
    f: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    phi: np.ndarray
    g: np.ndarray
    ginv: np.ndarray
    scale: np.ndarray


def frame_batch(S: ApctStructure, pts) -> FrameBatch:
    pts = np.asarray(pts, dtype=float)
    n = pts.shape[0]
    scale = np.zeros(n)

    def ev(e: Expr) -> np.ndarray:
        nonlocal scale
        values, scales = evaluate_with_scale(e, pts)
        scale = np.maximum(scale, scales)
        return np.broadcast_to(np.asarray(values, dtype=float), (n,)).copy()

    f = ev(S.manifold.f)
    xi = np.stack([ev(c) for c in S.xi], axis=1)
    eta = np.stack([ev(c) for c in S.eta], axis=1)
    phi = np.stack(
        [np.stack([ev(e) for e in row], axis=1) for row in S.phi], axis=1
    )
    g = np.zeros((n, 3, 3))
    g[:, 0, 2] = g[:, 2, 0] = 1.0
    g[:, 1, 1] = 1.0
    g[:, 2, 2] = f
    ginv = np.zeros((n, 3, 3))
    ginv[:, 0, 2] = ginv[:, 2, 0] = 1.0
    ginv[:, 1, 1] = 1.0
    ginv[:, 0, 0] = -f
    return FrameBatch(pts, f, xi, eta, phi, g, ginv, scale)


def structure_tensor_batch(S: ApctStructure, pts) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate-formula structure tensor over (n, 3) points.

    Returns (F, scale) with F shaped (n, 3, 3, 3) and scale the per-point
    magnitude reference accumulated from every coefficient evaluation.
    """
    pts = np.asarray(pts, dtype=float)
    n = pts.shape[0]
    F = np.zeros((n, 3, 3, 3))
    scale = np.zeros(n)
    for a, b, c, field in coefficient_fields(S):
        values, scales = evaluate_with_scale(field, pts)
        values = np.broadcast_to(np.asarray(values, dtype=float), (n,))
        F[:, a, b, c] = values
        F[:, a, c, b] = -values
        scale = np.maximum(scale, scales)
    return F, scale


@dataclass(frozen=True)
class ComponentBatch:
    """Component split and associated data over a batch of points."""

    frames: FrameBatch
    tensor: np.ndarray
    tensor_scale: np.ndarray
    parts: dict[str, np.ndarray]
    theta_xi: np.ndarray
    theta_star_xi: np.ndarray
    model_defect: np.ndarray

    @property
    def scale(self) -> np.ndarray:
        return np.maximum(self.frames.scale, self.tensor_scale)


def split_components_batch(S: ApctStructure, pts) -> ComponentBatch:
    fb = frame_batch(S, pts)
    F, fscale = structure_tensor_batch(S, pts)
    parts, th, ths, defect = _component_arrays(
        F, fb.xi, fb.eta, fb.phi, fb.g, fb.ginv
    )
    flat = np.abs(F).reshape(F.shape[0], -1).max(axis=1)
    defect = defect / (1.0 + np.maximum(fb.scale, fscale) + flat)
    return ComponentBatch(fb, F, fscale, parts, th, ths, defect)


def _contract_phi_xi(batch: ComponentBatch) -> np.ndarray:
    """F(d_i, phi d_j, xi) over a batch; the common core of the d(eta),
    Lie-derivative, and nabla(eta) contractions."""
    return np.einsum(
        "nimc,nmj,nc->nij", batch.tensor, batch.frames.phi, batch.frames.xi
    )


def d_eta_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """d(eta) over a batch, contracted out of the structure tensor."""
    contracted = _contract_phi_xi(batch)
    return 0.5 * (np.transpose(contracted, (0, 2, 1)) - contracted)


def lie_g_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """Lie derivative of g along the Reeb field over a batch."""
    contracted = _contract_phi_xi(batch)
    return -contracted - np.transpose(contracted, (0, 2, 1))


def d_fundamental_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """d of the fundamental 2-form over a batch (cyclic sum of F)."""
    F = batch.tensor
    return F + np.transpose(F, (0, 2, 3, 1)) + np.transpose(F, (0, 3, 1, 2))


def fundamental_form_batch(batch: ComponentBatch) -> np.ndarray:
    """g(phi ., .) over a batch."""
    return np.einsum("nlj,nlk->njk", batch.frames.phi, batch.frames.g)


def eta_wedge_fundamental_batch(batch: ComponentBatch) -> np.ndarray:
    """Cyclic wedge of eta with the fundamental 2-form over a batch."""
    ew = fundamental_form_batch(batch)
    eta = batch.frames.eta
    return (
        np.einsum("ni,njk->nijk", eta, ew)
        + np.einsum("nj,nki->nijk", eta, ew)
        + np.einsum("nk,nij->nijk", eta, ew)
    )


def phi_derivative_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """First partials of the phi entries over a batch: out[n, a, i, j] is
    d_a phi^i_j at the n-th point."""
    pts = batch.frames.points
    out = np.zeros((pts.shape[0], 3, 3, 3))
    for i in range(3):
        for j in range(3):
            entry = S.phi[i][j]
            for a, axis in enumerate(_AXES):
                partial = diff(entry, axis)
                out[:, a, i, j] = evaluate_with_scale(partial, pts)[0]
    return out


def nijenhuis_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """Nijenhuis torsion of phi on coordinate fields over a batch;
    out[n, i, j, k] is the k-th component of N(d_i, d_j)."""
    phi = batch.frames.phi
    pd = phi_derivative_batch(S, batch)
    bracket = (
        np.einsum("nmi,nmkj->nijk", phi, pd)
        - np.einsum("nmj,nmki->nijk", phi, pd)
    )
    correction = (
        np.einsum("nkm,njmi->nijk", phi, pd)
        - np.einsum("nkm,nimj->nijk", phi, pd)
    )
    return bracket + correction


def d_eta_coordinate_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """d(eta) over a batch by the coordinate route (antisymmetrized partials
    of the symbolic eta entries), independent of the structure tensor."""
    pts = batch.frames.points
    eta_d = np.zeros((pts.shape[0], 3, 3))
    for j in range(3):
        for a, axis in enumerate(_AXES):
            partial = diff(S.eta[j], axis)
            eta_d[:, a, j] = evaluate_with_scale(partial, pts)[0]
    return 0.5 * (eta_d - np.transpose(eta_d, (0, 2, 1)))


def normality_defect_batch(S: ApctStructure, batch: ComponentBatch) -> np.ndarray:
    """N - 2 d(eta) (x) xi over a batch; zero exactly when normal.

    Both ingredients come from coordinate routes (partials of phi and eta),
    so this stays independent of the structure-tensor pipeline.
    """
    nij = nijenhuis_batch(S, batch)
    de = d_eta_coordinate_batch(S, batch)
    return nij - 2.0 * np.einsum("nij,nk->nijk", de, batch.frames.xi)
