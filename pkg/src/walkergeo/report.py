"""Deterministic classification reports.

A report is one tree of dicts, lists, numbers, strings and booleans, built
once per analysis run. `to_json` serializes that tree with sorted keys;
`render_text` walks the very same tree, so the two renderings always carry
identical data. For a fixed manifest and seed both outputs are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .classify import ClassVerdict, NAMED_CLASSES, named_classes
from .curvature import curvature_equivalences, sectional_curvatures
from .expressions import diff, evaluate_with_scale, to_source
from .ftensor import exterior_data_at, f_tensor_at, project_components, theta_forms
from .sampling import SamplingConfig, is_identically_zero
from .structure import ApctStructure, unit_constraint_field, validate_axioms
from .walker import flatness, is_strict_walker, scalar_curvature_field, segre_type

__all__ = ["ClassificationReport", "build_report"]


def _plain(obj: Any) -> Any:
    """Rebuild a value out of JSON-native types only."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"value of type {type(obj).__name__} cannot enter a report")


def _point(p) -> list[float] | None:
    if p is None:
        return None
    return [float(c) for c in p]


@dataclass(frozen=True)
class ClassificationReport:
    """Full analysis of one structure, as a JSON-ready tree.

    failures holds every internal-consistency violation found during the
    run, each entry a dict with keys check, witness, magnitude. A nonempty
    list means the run is not trustworthy and maps to exit status 3.
    """

    name: str
    sampling: dict
    structure_validity: dict
    basic_classes: dict
    named_classes: dict
    curvature: dict
    route_agreement: dict
    failures: tuple[dict, ...]

    @property
    def exit_status(self) -> int:
        return 3 if self.failures else 0

    def as_tree(self) -> dict:
        return _plain({
            "name": self.name,
            "sampling": self.sampling,
            "structure_validity": self.structure_validity,
            "basic_classes": self.basic_classes,
            "named_classes": self.named_classes,
            "curvature": self.curvature,
            "route_agreement": self.route_agreement,
            "failures": list(self.failures),
        })

    def to_json(self) -> str:
        return json.dumps(self.as_tree(), sort_keys=True, indent=2) + "\n"

    def render_text(self) -> str:
        lines: list[str] = []
        _render_into(self.as_tree(), 0, lines)
        return "\n".join(lines) + "\n"


def _leaf(value: Any) -> str:
    return json.dumps(value, sort_keys=True)


def _render_into(node: dict, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    for key, value in node.items():
        if isinstance(value, dict):
            if value:
                lines.append(f"{pad}{key}:")
                _render_into(value, depth + 1, lines)
            else:
                lines.append(f"{pad}{key}: {{}}")
        elif isinstance(value, list) and value and all(
                isinstance(item, dict) for item in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                first = True
                inner: list[str] = []
                _render_into(item, depth + 2, inner)
                for line in inner:
                    if first:
                        lines.append(f"{pad}  -" + line[len(pad) + 3:])
                        first = False
                    else:
                        lines.append(line)
        else:
            lines.append(f"{pad}{key}: {_leaf(value)}")


def _pick_direction(S: ApctStructure, point):
    """First coordinate direction spanning nondegenerate planes with the
    Reeb field and with its own phi image; falls back to the last try."""
    candidates = (
        ("d_z", np.array([0.0, 0.0, 1.0])),
        ("d_y", np.array([0.0, 1.0, 0.0])),
        ("d_x", np.array([1.0, 0.0, 0.0])),
        ("d_x + d_y + d_z", np.array([1.0, 1.0, 1.0])),
    )
    last = None
    for label, X in candidates:
        sec = sectional_curvatures(S, X, point)
        last = (label, X, sec)
        if not sec.xi_plane_degenerate and not sec.phi_plane_degenerate:
            return last
    return last


def build_report(S: ApctStructure,
                 cfg: SamplingConfig | None = None,
                 name: str = "structure") -> ClassificationReport:
    cfg = cfg or S.config
    pts = S.sample_points(cfg)
    rep_point = tuple(float(c) for c in pts[0])
    failures: list[dict] = []

    def fail(check: str, witness, magnitude) -> None:
        failures.append({
            "check": check,
            "witness": _point(witness if witness is not None else rep_point),
            "magnitude": float(magnitude),
        })

    # structure validity
    axioms = validate_axioms(S, cfg)
    unit = is_identically_zero(
        unit_constraint_field(S.manifold, S.xi), S.domain, cfg)
    strict = is_strict_walker(S.manifold, cfg)
    structure_validity = {
        "epsilon": S.manifold.epsilon,
        "unit_constraint_max_residual": unit.max_residual,
        "strict_walker": strict.is_zero,
        "axioms_all_hold": axioms.all_passed,
        "axioms": {
            c.name: {"holds": c.passed, "max_residual": c.max_residual}
            for c in axioms.checks
        },
    }
    for c in axioms.checks:
        if not c.passed:
            fail(f"axiom:{c.name}", c.witness, c.max_residual)
    if not unit.is_zero:
        fail("unit_constraint", unit.witness, unit.max_residual)

    # classification
    verdict: ClassVerdict = named_classes(S, cfg)
    basic = verdict.basic
    basic_classes = {
        "display": basic.display(),
        "members": sorted(basic.members),
        "g5bar": basic.g5bar,
        "components": {
            label: {
                "present": label in basic.members,
                "max_residual": basic.component_verdicts[label].max_residual,
            }
            for label in sorted(basic.component_verdicts)
        },
        "within_model": basic.within_model,
        "model_defect": basic.model_defect,
    }
    if not basic.within_model:
        fail("component_model", basic.model_witness, basic.model_defect)

    named_section = {
        "classes": {n: verdict.named[n].value for n in NAMED_CLASSES},
        "paracontact": {
            "holds": verdict.paracontact.is_paracontact,
            "shortcut": verdict.paracontact.shortcut,
            "routes_agree": verdict.paracontact.routes_agree,
        },
        "normality": {
            "holds": verdict.normality.is_normal,
            "routes_agree": verdict.normality.routes_agree,
        },
        "theta_star_constant": verdict.theta_star_constant,
        "alpha": None if verdict.alpha is None else {
            "constant": verdict.alpha.constant,
            "value": verdict.alpha.value,
            "sample_range": list(verdict.alpha.sample_range),
        },
    }
    if not verdict.paracontact.routes_agree:
        fail("paracontact_routes", verdict.paracontact.numeric_witness,
             verdict.paracontact.numeric_residual)
    if not verdict.normality.routes_agree:
        fail("normality_routes", verdict.normality.torsion_verdict.witness,
             verdict.normality.torsion_verdict.max_residual)
    for d in verdict.disagreements:
        fail(f"classification:{d.check}", None, 1.0)

    # curvature
    scal_field = scalar_curvature_field(S.manifold)
    scal_partials = [
        is_identically_zero(diff(scal_field, v), S.domain, cfg)
        for v in ("x", "y", "z")
    ]
    scal_constant = all(v.is_zero for v in scal_partials)
    scal_values, _ = evaluate_with_scale(scal_field, pts)
    scal = {
        "expression": to_source(scal_field),
        "constant": scal_constant,
        "value": float(scal_values[0]) if scal_constant else None,
        "sample_range": [float(scal_values.min()), float(scal_values.max())],
    }

    flat = flatness(S.manifold, cfg)
    segre = segre_type(S.manifold, rep_point, cfg)
    equiv = curvature_equivalences(S, cfg)
    ee = equiv.eta_einstein
    direction_label, _, sec = _pick_direction(S, rep_point)

    curvature = {
        "scal": scal,
        "flat": flat.flat,
        "flatness_conditions": {
            k: v.max_residual for k, v in flat.conditions.items()
        },
        "flatness_note": flat.note,
        "segre": {
            "kind": segre.kind,
            "eigenvalues": None if segre.eigenvalues is None
            else list(segre.eigenvalues),
            "at": _point(rep_point),
        },
        "eta_einstein": {
            "holds": ee.is_eta_einstein,
            "a": ee.a,
            "b": ee.b,
            "detail": ee.coordinate_detail,
            "routes_agree": ee.routes_agree,
        },
        "equivalences": {
            "flags": dict(equiv.flags),
            "all_agree": equiv.all_agree,
            "mixed": equiv.mixed,
        },
        "sectional": {
            "at": _point(rep_point),
            "direction": direction_label,
            "K_xi": sec.K_xi,
            "K_phi": sec.K_phi,
            "xi_plane_degenerate": sec.xi_plane_degenerate,
            "phi_plane_degenerate": sec.phi_plane_degenerate,
        },
    }
    if not ee.routes_agree:
        fail("eta_einstein_routes", None, 1.0)
    if not equiv.all_agree:
        fail("curvature_equivalences", None, 1.0)

    # route agreement over every sample point
    tensor_max = trace_max = exterior_max = 0.0
    proj_resid_max = proj_defect_max = 0.0
    tensor_arg = trace_arg = exterior_arg = proj_arg = rep_point
    for row in pts:
        pt = tuple(float(c) for c in row)
        t = f_tensor_at(S, pt)
        tf = theta_forms(S, pt, tensor=t)
        ex = exterior_data_at(S, pt, tensor=t)
        pr = project_components(S, pt, tensor=t, tol=cfg.tol)
        if t.route_discrepancy > tensor_max:
            tensor_max, tensor_arg = t.route_discrepancy, pt
        if tf.route_discrepancy > trace_max:
            trace_max, trace_arg = tf.route_discrepancy, pt
        if ex.route_discrepancy > exterior_max:
            exterior_max, exterior_arg = ex.route_discrepancy, pt
        resid = float(np.abs(pr.residual).max())
        if resid > proj_resid_max:
            proj_resid_max, proj_arg = resid, pt
        proj_defect_max = max(proj_defect_max, pr.model_defect)

    for check, value, arg in (
            ("structure_tensor_routes", tensor_max, tensor_arg),
            ("trace_form_routes", trace_max, trace_arg),
            ("exterior_derivative_routes", exterior_max, exterior_arg),
            ("component_split_residual", proj_resid_max, proj_arg)):
        if value > cfg.tol:
            fail(check, arg, value)

    route_agreement = {
        "structure_tensor_max_discrepancy": tensor_max,
        "trace_form_max_discrepancy": trace_max,
        "exterior_max_discrepancy": exterior_max,
        "component_split_max_residual": proj_resid_max,
        "component_model_max_defect": proj_defect_max,
        "classification_routes_agree": verdict.routes_agree,
        "disagreements": [
            {"check": d.check, "primary": d.primary, "cross": d.cross,
             "detail": d.detail}
            for d in verdict.disagreements
        ],
        "agree": verdict.routes_agree and not failures,
    }

    return ClassificationReport(
        name=name,
        sampling={"samples": cfg.samples, "seed": cfg.seed, "tol": cfg.tol},
        structure_validity=structure_validity,
        basic_classes=basic_classes,
        named_classes=named_section,
        curvature=curvature,
        route_agreement=route_agreement,
        failures=tuple(failures),
    )
