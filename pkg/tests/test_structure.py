import numpy as np
import pytest

from geometry_oracles import christoffel_oracle, fd_partial, metric_fn, vector_fn
from walkergeo.errors import NonexistentStructureError, UnitConstraintError
from walkergeo.expressions import evaluate_with_scale, parse, to_source
from walkergeo.sampling import Domain, Interval, SamplingConfig, is_identically_zero
from walkergeo.structure import (
    build_structure,
    nabla_xi,
    unit_constraint_field,
    validate_axioms,
)
from walkergeo.walker import WalkerManifold

BOX = Domain((Interval(0.5, 2.0), Interval(0.5, 2.0), Interval(0.5, 2.0)))
CFG = SamplingConfig(samples=32, seed=9)

# (f, xi) pairs covering the Reeb shapes the classifier cares about
STRUCTURES = [
    ("x^2", ("0", "1", "0")),
    ("x^2/y^2", ("x/y", "1", "0")),
    ("x/z", ("0", "0", "1/sqrt(x/z)")),
    ("2*x", ("(1 - 2*x*exp(2*z - 4*y))/(2*exp(z - 2*y))", "0", "exp(z - 2*y)")),
    ("x + z", ("exp(z/2)", "-1", "0")),  # xi2 = -1 branch
]


def build(f, xi, cfg=CFG):
    M = WalkerManifold(parse(f), 1, BOX)
    return build_structure(M, tuple(parse(c) for c in xi), cfg)


@pytest.mark.parametrize("f,xi", STRUCTURES, ids=[s[0] for s in STRUCTURES])
def test_all_axioms_hold(f, xi):
    S = build(f, xi)
    report = validate_axioms(S, CFG)
    for check in report.checks:
        assert check.passed, f"{check.name}: residual {check.max_residual}"
    assert report.all_passed
    names = {c.name for c in report.checks}
    assert len(report.checks) == 10
    assert "phi_squared_is_id_minus_eta_xi" in names
    assert "phi_compatibility" in names


def test_unit_constraint_field_source():
    M = WalkerManifold(parse("x^2"), 1, BOX)
    field = unit_constraint_field(M, (parse("0"), parse("1"), parse("0")))
    assert is_identically_zero(field, BOX, CFG)


def test_phi_closed_form_unit_y():
    # xi = d_y forces phi = [[-1, 0, -f], [0, 0, 0], [0, 0, 1]], eta = dy
    S = build("x^2", ("0", "1", "0"))
    fr = S.frame((1.3, 0.8, 1.1))
    f = 1.3 ** 2
    assert np.allclose(fr.phi_mat,
                       [[-1, 0, -f], [0, 0, 0], [0, 0, 1]], atol=1e-14)
    assert np.allclose(fr.eta_vec, [0, 1, 0], atol=1e-14)


def test_phi_closed_form_null_scaled():
    # xi = (0, 0, 1/sqrt(f)) forces phi = [[0, sqrt(f), 0],
    # [1/sqrt(f), 0, 0], [0, -1/sqrt(f), 0]], eta = (dx + f dz)/sqrt(f)
    S = build("x/z", ("0", "0", "1/sqrt(x/z)"))
    p = (1.2, 0.9, 0.6)
    fr = S.frame(p)
    r = np.sqrt(1.2 / 0.6)
    assert np.allclose(fr.phi_mat,
                       [[0, r, 0], [1 / r, 0, 0], [0, -1 / r, 0]], atol=1e-12)
    assert np.allclose(fr.eta_vec, [1 / r, 0, r], atol=1e-12)


@pytest.mark.parametrize("f,xi", STRUCTURES, ids=[s[0] for s in STRUCTURES])
def test_eta_is_metric_dual(f, xi):
    S = build(f, xi)
    for p in S.sample_points(CFG)[:8]:
        fr = S.frame(tuple(p))
        assert np.abs(fr.eta_vec - fr.g @ fr.xi_vec).max() <= 1e-12 * (1 + fr.scale)
        assert abs(fr.eta_vec @ fr.xi_vec - 1.0) <= 1e-12 * (1 + fr.scale)


def test_frame_cache_returns_same_object():
    S = build("x^2", ("0", "1", "0"))
    assert S.frame((1.0, 1.0, 1.0)) is S.frame((1.0, 1.0, 1.0))
    assert S.frame((1.0, 1.0, 1.0), order=2) is not S.frame((1.0, 1.0, 1.0))


@pytest.mark.parametrize("f,xi", STRUCTURES[:4], ids=[s[0] for s in STRUCTURES[:4]])
def test_nabla_xi_against_oracle(f, xi):
    S = build(f, xi)
    g_fn = metric_fn(S.manifold.f)
    xi_fn = vector_fn(S.xi)
    for p in S.sample_points(CFG)[:4]:
        p = tuple(float(c) for c in p)
        gamma = christoffel_oracle(g_fn, p)
        for a in range(3):
            direction = np.zeros(3)
            direction[a] = 1.0
            got = nabla_xi(S, direction, p)
            want = fd_partial(xi_fn, p, a) + gamma[:, a, :] @ xi_fn(p)
            assert np.abs(got - want).max() <= 1e-6 * (1 + np.abs(want).max())


def test_corrupted_phi_fails_validation():
    S = build("x^2", ("0", "1", "0"))
    entries = [[to_source(e) for e in row] for row in S.phi]
    # flip the sign of phi^2_3; compatibility and skew-adjointness both break
    entries[1][2] = to_source(-S.phi[1][2] + parse("1"))
    bad = S.with_phi(tuple(tuple(parse(e) for e in row) for row in entries))
    report = validate_axioms(bad, CFG)
    assert not report.all_passed
    failed = {c.name for c in report.checks if not c.passed}
    assert failed, "corruption must trip at least one axiom"
    for c in report.checks:
        if not c.passed:
            assert c.witness is not None


def test_unit_constraint_violation_rejected():
    M = WalkerManifold(parse("x^2"), 1, BOX)
    with pytest.raises(UnitConstraintError) as info:
        build_structure(M, (parse("0"), parse("2"), parse("0")), CFG)
    assert "(" in str(info.value)  # witness point is part of the message


def test_timelike_complement_rejected():
    M = WalkerManifold(parse("x^2"), -1, BOX)
    with pytest.raises(NonexistentStructureError):
        build_structure(M, (parse("0"), parse("1"), parse("0")), CFG)


def test_eta_symbolic_components():
    S = build("x/z", ("0", "0", "1/sqrt(x/z)"))
    # eta = (xi3, xi2, xi1 + f*xi3) as symbolic fields
    eta3 = S.eta[2]
    v, _ = evaluate_with_scale(eta3, np.array([1.2, 0.9, 0.6]))
    assert abs(v - np.sqrt(2.0)) <= 1e-12
