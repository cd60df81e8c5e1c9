"""Almost paracontact metric structures on Walker 3-manifolds.

Given the metric function f (with eps = +1) and a candidate Reeb field
xi = (xi1, xi2, xi3) satisfying the unit constraint

    xi2^2 + f xi3^2 + 2 xi1 xi3 = 1,

the compatible structure is determined up to a sign choice: the contact form
is eta = xi3 dx + xi2 dy + (xi1 + f xi3) dz and the (1,1) field is

    phi = [[-xi2, xi1 + f xi3, -f xi2],
           [ xi3,           0,   -xi1],
           [   0,        -xi3,    xi2]]

(the (+) sign branch; the other branch is -phi). For eps = -1 no compatible
structure exists at all, so construction is rejected up front.

Every axiom is still validated numerically after construction: the defining
identities phi^2 = Id - eta (x) xi, eta(xi) = 1, phi xi = 0,
g(phi X, phi Y) = -g(X, Y) + eta(X) eta(Y), eta = g(xi, .),
g(phi X, Y) = -g(X, phi Y), g(xi, xi) = 1, plus the derived ones
(eta o phi = 0, phi^3 = phi, trace(phi) = 0).

A Frame bundles jets of f, xi, eta, and phi at one point, with the numeric
arrays every tensor operation needs; frames are cached per structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonexistentStructureError, UnitConstraintError
from .expressions import Expr, ZERO, as_expr, to_source
from .jets import Jet3, eval_jet
from .sampling import Domain, SamplingConfig, is_identically_zero
from .walker import WalkerManifold, christoffel_at

_E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class Frame:
    """Jets and numeric arrays of one structure at one point.

    Derivative arrays (xi_d, eta_d, phi_d, gamma) require order >= 1; the
    layout puts the differentiation axis first: xi_d[a, k] = d_a xi^k,
    phi_d[a, i, j] = d_a phi^i_j, gamma[k, i, j] = Gamma^k_ij.
    """

    __slots__ = (
        "point", "order", "f", "xi", "eta", "phi",
        "xi_vec", "eta_vec", "phi_mat", "g", "ginv", "scale",
        "xi_d", "eta_d", "phi_d", "gamma",
    )

    def __init__(self, structure: "ApctStructure", point, order: int):
        M = structure.manifold
        self.point = tuple(float(c) for c in point)
        self.order = order
        self.f = M.f_jet(point, order)
        self.xi = tuple(eval_jet(e, point, order) for e in structure.xi)
        xi1, xi2, xi3 = self.xi
        f = self.f
        self.eta = (xi3, xi2, xi1 + f * xi3)
        if structure.canonical_phi:
            zero = Jet3.constant(0.0, order)
            self.phi = (
                (-xi2, self.eta[2], -(f * xi2)),
                (xi3, zero, -xi1),
                (zero, -xi3, xi2),
            )
        else:
            # overridden entries (negative controls) are evaluated as given
            self.phi = tuple(
                tuple(eval_jet(e, point, order) for e in row)
                for row in structure.phi
            )
        self.xi_vec = np.array([j.value for j in self.xi])
        self.eta_vec = np.array([j.value for j in self.eta])
        self.phi_mat = np.array([[e.value for e in row] for row in self.phi])
        fv = f.value
        self.g = np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, fv]])
        self.ginv = np.array([[-fv, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
        self.scale = max(
            max(abs(c) for c in f.coeffs.values()),
            max(abs(c) for jet in self.xi for c in jet.coeffs.values()),
        )
        if order >= 1:
            self.xi_d = np.array(
                [[self.xi[k].derivative(_E[a]) for k in range(3)] for a in range(3)]
            )
            self.eta_d = np.array(
                [[self.eta[k].derivative(_E[a]) for k in range(3)] for a in range(3)]
            )
            self.phi_d = np.array(
                [
                    [[self.phi[i][j].derivative(_E[a]) for j in range(3)]
                     for i in range(3)]
                    for a in range(3)
                ]
            )
            self.gamma = christoffel_at(M, point).components
        else:
            self.xi_d = self.eta_d = self.phi_d = self.gamma = None

    def nabla_xi_matrix(self) -> np.ndarray:
        """nab[i, k] = k-th component of nabla_{d_i} xi."""
        return self.xi_d + np.einsum("kim,m->ik", self.gamma, self.xi_vec)


class ApctStructure:
    """Immutable bundle (manifold, xi, eta, phi) plus frame/sample caches."""

    def __init__(self, manifold: WalkerManifold, xi, config: SamplingConfig,
                 phi_entries=None):
        self.manifold = manifold
        self.xi = tuple(as_expr(c) for c in xi)
        self.config = config
        xi1, xi2, xi3 = self.xi
        f = manifold.f
        self.eta = (xi3, xi2, xi1 + f * xi3)
        self.canonical_phi = phi_entries is None
        if phi_entries is None:
            self.phi = (
                (-xi2, xi1 + f * xi3, -(f * xi2)),
                (xi3, ZERO, -xi1),
                (ZERO, -xi3, xi2),
            )
        else:
            self.phi = tuple(tuple(as_expr(e) for e in row) for row in phi_entries)
        self._frames: dict[tuple, Frame] = {}

    def __repr__(self) -> str:
        xi = ", ".join(to_source(c) for c in self.xi)
        return f"ApctStructure(f={to_source(self.manifold.f)!r}, xi=({xi}))"

    @property
    def domain(self) -> Domain:
        return self.manifold.domain

    def frame(self, point, order: int = 1) -> Frame:
        key = (float(point[0]), float(point[1]), float(point[2]), order)
        frame = self._frames.get(key)
        if frame is None:
            frame = Frame(self, point, order)
            self._frames[key] = frame
        return frame

    def sample_points(self, cfg: SamplingConfig | None = None) -> np.ndarray:
        return self.domain.sample(cfg or self.config)

    def with_phi(self, phi_entries) -> "ApctStructure":
        """Copy with explicit phi entries (for negative-control validation)."""
        return ApctStructure(
            self.manifold, self.xi, self.config, phi_entries=phi_entries
        )


def unit_constraint_field(manifold: WalkerManifold, xi) -> Expr:
    """Residual of the unit-Reeb constraint as a symbolic field."""
    xi1, xi2, xi3 = (as_expr(c) for c in xi)
    return xi2**2 + manifold.f * xi3**2 + 2 * xi1 * xi3 - 1


def build_structure(manifold: WalkerManifold, xi,
                    cfg: SamplingConfig | None = None) -> ApctStructure:
    """Construct the almost paracontact metric structure determined by xi.

    Rejects eps = -1 outright (no compatible structure exists for a
    time-like complementary direction) and rejects candidate Reeb fields
    violating the unit constraint, with a witness point.
    """
    cfg = cfg or SamplingConfig()
    if manifold.epsilon != 1:
        raise NonexistentStructureError(
            "no almost paracontact metric structure exists on a Walker "
            "3-manifold with a time-like complementary direction "
            "(epsilon = -1); only epsilon = +1 admits a unit space-like "
            "Reeb field compatible with the metric"
        )
    residual = unit_constraint_field(manifold, xi)
    verdict = is_identically_zero(residual, manifold.domain, cfg)
    if not verdict.is_zero:
        raise UnitConstraintError(verdict.witness, verdict.witness_value)
    return ApctStructure(manifold, xi, cfg)


def nabla_xi(S: ApctStructure, direction, point) -> np.ndarray:
    """Components of nabla_X xi at a point, X given by constant components."""
    frame = S.frame(point, order=1)
    return np.asarray(direction, dtype=float) @ frame.nabla_xi_matrix()


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    max_residual: float
    witness: tuple[float, float, float] | None


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def validate_axioms(S: ApctStructure, cfg: SamplingConfig | None = None,
                    tol: float = 1e-10) -> AxiomReport:
    """Verify every defining and derived structure identity numerically.

    Residuals are matrix norms divided by (1 + scale) at each sampled point;
    each check reports its worst point as witness when it fails.
    """
    cfg = cfg or S.config
    pts = S.sample_points(cfg)
    identity = np.eye(3)
    worst: dict[str, tuple[float, tuple]] = {}

    def record(name: str, residual_matrix, frame: Frame):
        residual = float(np.max(np.abs(residual_matrix))) / (1.0 + frame.scale)
        if name not in worst or residual > worst[name][0]:
            worst[name] = (residual, frame.point)

    for p in pts:
        fr = S.frame(p, order=0)
        phi, g, xi, eta = fr.phi_mat, fr.g, fr.xi_vec, fr.eta_vec
        phi2 = phi @ phi
        record("phi_squared_is_id_minus_eta_xi", phi2 - (identity - np.outer(xi, eta)), fr)
        record("eta_of_reeb_is_one", np.array([eta @ xi - 1.0]), fr)
        record("phi_kills_reeb", phi @ xi, fr)
        record("phi_compatibility", phi.T @ g @ phi - (-g + np.outer(eta, eta)), fr)
        record("eta_is_metric_dual_of_reeb", eta - g @ xi, fr)
        gphi = g @ phi
        record("phi_skew_adjoint", gphi + gphi.T, fr)
        record("reeb_is_unit_spacelike", np.array([xi @ g @ xi - 1.0]), fr)
        record("eta_after_phi_vanishes", eta @ phi, fr)
        record("phi_cubed_is_phi", phi2 @ phi - phi, fr)
        record("phi_trace_free", np.array([np.trace(phi)]), fr)

    checks = tuple(
        AxiomCheck(
            name=name,
            passed=residual <= tol,
            max_residual=residual,
            witness=None if residual <= tol else point,
        )
        for name, (residual, point) in worst.items()
    )
    return AxiomReport(checks)
